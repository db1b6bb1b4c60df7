#include "rholab/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rholab/errors.hpp"

namespace rholab {

namespace {

class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0;
  double c_ = 0;
};

void require_length(const ProbVector& v, u64 p, const char* what) {
  if (v.size() != p)
    throw InvalidArgumentError(std::string(what) + ": expected length " +
                               std::to_string(p) + ", got " + std::to_string(v.size()));
}

}  // namespace

bool is_distribution(std::span<const double> v, double tol) {
  KahanSum s;
  for (double x : v) {
    if (x < 0) return false;
    s.add(x);
  }
  return std::abs(s.value() - 1.0) <= tol;
}

ProbVector point_mass(u64 p, u64 at) {
  ProbVector v(p, 0.0);
  v.at(at) = 1.0;
  return v;
}

ProbVector uniform_vector(u64 p) { return ProbVector(p, 1.0 / static_cast<double>(p)); }

ProbVector pushforward_rho(const ProbVector& v, const WalkParams& params) {
  const u64 p = params.p.value();
  require_length(v, p, "pushforward_rho");
  ProbVector out(p, 0.0);
  for (u64 i = 0; i < p; ++i) {
    const double w = v[i] / 3.0;
    if (w == 0.0) continue;
    out[(i + 1) % p] += w;
    out[(i + params.k) % p] += w;
    out[(2 * i) % p] += w;
  }
  return out;
}

ProbVector pushforward_block(const ProbVector& v, const ProbVector& mu) {
  const u64 p = v.size();
  require_length(mu, p, "pushforward_block increment law");
  ProbVector out(p, 0.0);
  // out[(2j + c) mod p] += v[j] mu[c]; accumulate per output cell with
  // compensation since each cell receives p contributions.
  for (u64 t = 0; t < p; ++t) {
    KahanSum cell;
    for (u64 j = 0; j < p; ++j) {
      const u64 c = (t + 2 * p - 2 * j % p) % p;
      cell.add(v[j] * mu[c]);
    }
    out[t] = cell.value();
  }
  return out;
}

Distances distances(const ProbVector& v) {
  const u64 p = v.size();
  if (p == 0) throw InvalidArgumentError("distances: empty vector");
  const double u = 1.0 / static_cast<double>(p);
  double min_mass = v[0];
  KahanSum dev;
  for (double x : v) {
    min_mass = std::min(min_mass, x);
    dev.add(std::abs(x - u));
  }
  return {1.0 - static_cast<double>(p) * min_mass, 0.5 * dev.value()};
}

namespace {

// First step count at which the separation from `start` drops to epsilon.
// When `curve` is non-null the per-step separation is recorded.
template <typename Step>
u64 first_passage(u64 p, u64 start, double epsilon, u64 max_steps, Step step,
                  std::vector<double>* curve) {
  ProbVector v = point_mass(p, start);
  for (u64 t = 0;; ++t) {
    const double sep = distances(v).sep;
    if (curve) curve->push_back(sep);
    if (sep <= epsilon) return t;
    if (t == max_steps) throw NotMixedWithinBudgetError(max_steps);
    v = step(v);
  }
}

}  // namespace

namespace {

void require_exact_scale(u64 p) {
  if (p > 4096)
    throw InvalidArgumentError("exact mixing supports p <= 4096, got " +
                               std::to_string(p));
}

}  // namespace

MixingReport tau_s(const WalkParams& params, double epsilon, u64 max_steps) {
  if (!(epsilon > 0))
    throw InvalidArgumentError("epsilon must be positive");
  const u64 p = params.p.value();
  require_exact_scale(p);
  auto step = [&](const ProbVector& v) { return pushforward_rho(v, params); };

  MixingReport report;
  report.p = p;
  report.k = params.k;
  report.epsilon = epsilon;
  report.per_start_tau.resize(p);
  u64 worst_start = 0;
  for (u64 x = 0; x < p; ++x) {
    report.per_start_tau[x] = first_passage(p, x, epsilon, max_steps, step, nullptr);
    if (report.per_start_tau[x] > report.per_start_tau[worst_start]) worst_start = x;
  }
  report.tau = report.per_start_tau[worst_start];
  first_passage(p, worst_start, epsilon, max_steps, step, &report.sep_curve);
  return report;
}

u64 tau_s_block(const OddModulus& p, double epsilon, u64 max_blocks) {
  if (!(epsilon > 0))
    throw InvalidArgumentError("epsilon must be positive");
  const u64 n = p.value();
  const ProbVector mu = block_increment_law(p);
  auto step = [&](const ProbVector& v) { return pushforward_block(v, mu); };
  u64 tau = 0;
  for (u64 x = 0; x < n; ++x) {
    tau = std::max(tau, first_passage(n, x, epsilon, max_blocks, step, nullptr));
  }
  return tau;
}

ProbVector block_increment_law(const OddModulus& p) {
  const u64 n = p.value();
  const double q = (3.0 - std::sqrt(5.0)) / 2.0;
  const double scale = 1.0 / std::sqrt(5.0);
  const double qp = std::pow(q, static_cast<double>(n));
  const double denom = 1.0 - qp;
  ProbVector mu(n);
  mu[0] = scale * (1.0 + qp) / denom;
  for (u64 j = 1; j < n; ++j) {
    mu[j] = scale *
            (std::pow(q, static_cast<double>(j)) + std::pow(q, static_cast<double>(n - j))) /
            denom;
  }
  return mu;
}

std::vector<double> increment_coefficients(double tol) {
  const double q = (3.0 - std::sqrt(5.0)) / 2.0;
  std::vector<double> a;
  double value = 1.0 / std::sqrt(5.0);
  while (value >= tol) {
    a.push_back(value);
    value *= q;
  }
  return a;
}

}  // namespace rholab
