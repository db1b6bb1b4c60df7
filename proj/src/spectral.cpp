#include "rholab/spectral.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

namespace rholab {

namespace {

int ceil_log2(u64 p) {
  // p odd >= 3 is never a power of two, so 2^{n-1} < p < 2^n.
  return std::bit_width(p - 1);
}

constexpr u64 kDenseCap = 512;

void require_desk_scale(u64 p, const char* what) {
  if (p > kDenseCap)
    throw InvalidArgumentError(std::string(what) + " supports p <= 512, got " +
                               std::to_string(p));
}

}  // namespace

std::vector<PathEdge> canonical_path(u64 x, u64 y, const OddModulus& p) {
  const u64 m = p.value();
  if (x >= m || y >= m) throw InvalidArgumentError("path endpoints must lie in [0, p)");
  const int n = ceil_log2(m);
  // Residue of sum_i 2^{n-i} c_i: the representative in [0, p) is also the
  // smaller of the at most two candidates below 2^n.
  const u64 residue = (mul_mod(mod_pow(2, n, m), x, m) + m - y) % m;
  std::vector<PathEdge> edges;
  edges.reserve(n);
  u64 cur = x;
  for (int i = 1; i <= n; ++i) {
    const int c = static_cast<int>((residue >> (n - i)) & 1);
    const u64 next = (mul_mod(cur, 2, m) + m - static_cast<u64>(c)) % m;
    edges.push_back(PathEdge{cur, next, c});
    cur = next;
  }
  return edges;
}

double congestion(const OddModulus& p) {
  const u64 m = p.value();
  require_desk_scale(m, "congestion");
  const int n = ceil_log2(m);
  // Path-traversal counts per doubling-walk edge, keyed by (source, c).
  std::vector<u64> count(2 * m, 0);
  for (u64 x = 0; x < m; ++x) {
    for (u64 y = 0; y < m; ++y) {
      if (x == y) continue;  // the congestion sum ranges over distinct pairs
      for (const PathEdge& e : canonical_path(x, y, p)) {
        ++count[2 * e.from + static_cast<u64>(e.c)];
      }
    }
  }
  u64 worst = 0;
  for (u64 c : count) worst = std::max(worst, c);
  // load/capacity = (count/p^2 * n) / (1/p * 1/2) = 2 n count / p.
  return 2.0 * static_cast<double>(n) * static_cast<double>(worst) /
         static_cast<double>(m);
}

GapBounds gap_bounds(const OddModulus& p) {
  const double n = static_cast<double>(ceil_log2(p.value()));
  const double lambda_k = 1.0 / (2.0 * n * n);
  return GapBounds{lambda_k, lambda_k * 2.0 / 81.0};
}

u64 fill_bound(double lambda, double pi_min, double epsilon) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw InvalidArgumentError("lambda must lie in (0, 1]");
  if (!(pi_min > 0.0 && pi_min <= 1.0))
    throw InvalidArgumentError("pi_min must lie in (0, 1]");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidArgumentError("epsilon must lie in (0, 1)");
  return static_cast<u64>(std::ceil(std::log(1.0 / (epsilon * pi_min)) / lambda));
}

std::vector<double> transition_matrix(WalkKind kind, const WalkParams& params) {
  const u64 p = params.p.value();
  require_desk_scale(p, "transition_matrix");
  std::vector<double> P(p * p, 0.0);
  auto row_targets = [&](u64 i) {
    return std::array<u64, 3>{(i + 1) % p, (i + params.k) % p, (2 * i) % p};
  };
  switch (kind) {
    case WalkKind::Doubling:
      for (u64 i = 0; i < p; ++i) {
        P[i * p + (2 * i) % p] += 0.5;
        P[i * p + (2 * i + p - 1) % p] += 0.5;
      }
      break;
    case WalkKind::Rho:
      for (u64 i = 0; i < p; ++i) {
        for (u64 j : row_targets(i)) P[i * p + j] += 1.0 / 3.0;
      }
      break;
    case WalkKind::RhoSquared:
      for (u64 i = 0; i < p; ++i) {
        for (u64 mid : row_targets(i)) {
          for (u64 j : row_targets(mid)) P[i * p + j] += 1.0 / 9.0;
        }
      }
      break;
  }
  return P;
}

namespace {

// Second-largest eigenvalue of a symmetric doubly stochastic matrix with
// spectrum in [-1, 1], by power iteration on (A+I)/2 with deflation against
// the flat top eigenvector.
double second_largest_eigenvalue(const std::vector<double>& A, u64 n, double tol,
                                 u64 cap) {
  std::vector<double> v(n), w(n);
  for (u64 i = 0; i < n; ++i)
    v[i] = static_cast<double>(mix64(i + 1) >> 11) * 0x1.0p-53 - 0.5;

  auto deflate = [&](std::vector<double>& u) {
    double mean = 0;
    for (double x : u) mean += x;
    mean /= static_cast<double>(n);
    for (double& x : u) x -= mean;
  };
  auto normalize = [&](std::vector<double>& u) {
    double norm = 0;
    for (double x : u) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0) throw InternalCheckError("PowerIteration", "deflated vector vanished");
    for (double& x : u) x /= norm;
    return norm;
  };

  deflate(v);
  normalize(v);
  double mu = 0;
  double residual = 1;
  for (u64 iter = 0; iter < cap; ++iter) {
    // w = (A+I)/2 v
    for (u64 i = 0; i < n; ++i) {
      double acc = 0;
      const double* row = A.data() + i * n;
      for (u64 j = 0; j < n; ++j) acc += row[j] * v[j];
      w[i] = 0.5 * (acc + v[i]);
    }
    deflate(w);
    mu = 0;
    for (u64 i = 0; i < n; ++i) mu += v[i] * w[i];
    residual = 0;
    for (u64 i = 0; i < n; ++i) {
      const double r = w[i] - mu * v[i];
      residual += r * r;
    }
    residual = std::sqrt(residual);
    if (residual <= tol) return 2.0 * mu - 1.0;
    v = w;
    normalize(v);
  }
  throw NoConvergenceError(cap, residual);
}

}  // namespace

double exact_gap(WalkKind kind, const WalkParams& params, GapMode mode, double tol,
                 u64 iteration_cap) {
  const u64 p = params.p.value();
  require_desk_scale(p, "exact_gap");
  const std::vector<double> P = transition_matrix(kind, params);
  std::vector<double> A(p * p, 0.0);
  if (mode == GapMode::Dirichlet) {
    for (u64 i = 0; i < p; ++i)
      for (u64 j = 0; j < p; ++j) A[i * p + j] = 0.5 * (P[i * p + j] + P[j * p + i]);
  } else {
    // A = P P^T; rows are sparse but dense accumulation is fine at p <= 512.
    for (u64 i = 0; i < p; ++i) {
      for (u64 j = 0; j < p; ++j) {
        double acc = 0;
        for (u64 l = 0; l < p; ++l) acc += P[i * p + l] * P[j * p + l];
        A[i * p + j] = acc;
      }
    }
  }
  return 1.0 - second_largest_eigenvalue(A, p, tol, iteration_cap);
}

}  // namespace rholab
