#include "rholab/fourier.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

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

std::vector<std::complex<double>> unit_roots(u64 p) {
  std::vector<std::complex<double>> w(p);
  for (u64 t = 0; t < p; ++t) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) /
                         static_cast<double>(p);
    w[t] = {std::cos(angle), std::sin(angle)};
  }
  return w;
}

}  // namespace

double xi_constant() {
  static const double xi =
      static_cast<double>(1.0L - (4.0L - std::sqrt(10.0L)) / 9.0L);
  return xi;
}

FourierContext::FourierContext(OddModulus p_in)
    : p(p_in), m(std::bit_width(p_in.value())) {
  // p odd >= 3 is never a power of two, so 2^{m-1} < p < 2^m holds.
}

double l2_bound(u64 s, int m) {
  if (s < 1) throw InvalidArgumentError("s must be >= 1");
  if (m < 2) throw InvalidArgumentError("m must be >= 2");
  const double decay = std::pow(xi_constant(), 2.0 * static_cast<double>(s / m));
  return 2.0 * (std::pow(1.0 + decay, m - 1) - 1.0);
}

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> f) {
  const u64 p = f.size();
  if (p == 0) throw InvalidArgumentError("dft: empty input");
  const auto w = unit_roots(p);
  std::vector<std::complex<double>> out(p);
  for (u64 ell = 0; ell < p; ++ell) {
    std::complex<double> acc{0.0, 0.0};
    for (u64 j = 0; j < p; ++j) acc += w[(ell * j) % p] * f[j];
    out[ell] = acc;
  }
  // Plancherel self-check: p sum |f|^2 = sum |fhat|^2.
  double lhs = 0, rhs = 0;
  for (u64 j = 0; j < p; ++j) lhs += std::norm(f[j]);
  lhs *= static_cast<double>(p);
  for (u64 j = 0; j < p; ++j) rhs += std::norm(out[j]);
  const double scale = std::max({lhs, rhs, 1.0});
  if (std::abs(lhs - rhs) > 1e-9 * scale)
    throw InternalCheckError("PlancherelMismatch",
                             "residual " + std::to_string(std::abs(lhs - rhs) / scale));
  return out;
}

std::vector<std::complex<double>> dft_real(std::span<const double> f) {
  std::vector<std::complex<double>> c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) c[i] = {f[i], 0.0};
  return dft(c);
}

double exact_l2(const OddModulus& p, u64 s) {
  const u64 n = p.value();
  if (n > 1023) throw InvalidArgumentError("exact_l2 supports p <= 1023");
  const ProbVector mu = block_increment_law(p);
  ProbVector v = point_mass(n, 0);
  for (u64 i = 0; i < s; ++i) v = pushforward_block(v, mu);

  const double u = 1.0 / static_cast<double>(n);
  KahanSum direct;
  for (double x : v) direct.add((x - u) * (x - u));
  const double value = static_cast<double>(n) * direct.value();

  const auto vhat = dft_real(v);
  KahanSum plancherel;
  for (u64 ell = 1; ell < n; ++ell) plancherel.add(std::norm(vhat[ell]));
  if (std::abs(value - plancherel.value()) > 1e-9)
    throw InternalCheckError(
        "PlancherelMismatch",
        "direct " + std::to_string(value) + " vs transform " +
            std::to_string(plancherel.value()));
  return value;
}

int phi_s(u64 ell, u64 s, const FourierContext& ctx) {
  const u64 p = ctx.p.value();
  if (ell < 1 || ell >= p) throw InvalidArgumentError("ell must lie in [1, p-1]");
  int count = 0;
  u64 freq = ell;
  for (u64 j = 0; j < s; ++j) {
    if (4 * freq >= p && 4 * freq <= 3 * p) ++count;
    freq = (2 * freq) % p;
  }
  return count;
}

std::vector<int> binary_digits(u64 ell, const OddModulus& p, int count) {
  const u64 m = p.value();
  if (ell >= m) throw InvalidArgumentError("ell must lie in [0, p)");
  std::vector<int> digits;
  digits.reserve(count);
  u64 rem = ell;
  for (int i = 0; i < count; ++i) {
    rem *= 2;
    if (rem >= m) {
      digits.push_back(1);
      rem -= m;
    } else {
      digits.push_back(0);
    }
  }
  return digits;
}

int alternations(std::span<const int> bits) {
  int count = 0;
  for (std::size_t i = 1; i < bits.size(); ++i) {
    if (bits[i] != bits[i - 1]) ++count;
  }
  return count;
}

AlternationBound alternation_lower(u64 ell, u64 s, const FourierContext& ctx) {
  const u64 p = ctx.p.value();
  if (ell < 1 || ell >= p) throw InvalidArgumentError("ell must lie in [1, p-1]");
  const int m = ctx.m;
  AlternationBound bound{0, 0};
  // Window r looks at digits rm+1 .. rm+m of ell/p, which are the first m
  // digits of sigma_r(ell)/p with sigma_r(ell) = 2^{rm} ell mod p.
  const u64 windows = s / static_cast<u64>(m);
  for (u64 r = 0; r < windows; ++r) {
    const u64 sigma = mul_mod(mod_pow(2, r * static_cast<u64>(m), p), ell, p);
    const auto digits = binary_digits(sigma, ctx.p, m);
    bound.block_sum += alternations(digits);
  }
  const auto digits = binary_digits(ell, ctx.p, static_cast<int>(s) + 1);
  bound.single_window = alternations(digits);
  return bound;
}

std::vector<u64> alternation_census(int m) {
  if (m < 1 || m > 24) throw InvalidArgumentError("census supports m in [1, 24]");
  std::vector<u64> counts(m, 0);
  for (u64 word = 0; word < (u64{1} << m); ++word) {
    const u64 diffs = (word ^ (word >> 1)) & ((u64{1} << (m - 1)) - 1);
    ++counts[std::popcount(diffs)];
  }
  return counts;
}

double g_transform(double x) {
  const double q = (3.0 - std::sqrt(5.0)) / 2.0;
  const double numerator = 1.0 - q * q;
  const double denominator = 1.0 + q * q - (3.0 - std::sqrt(5.0)) * std::cos(2.0 * std::numbers::pi * x);
  return numerator / denominator / std::sqrt(5.0);
}

double pi_product(int j, int t) {
  if (t < 2 || t > 62) throw InvalidArgumentError("t must lie in [2, 62]");
  if (j < 0 || j >= t) throw InvalidArgumentError("j must lie in [0, t-1]");
  const u64 p = (u64{1} << t) - 1;
  const u64 base = (u64{1} << j) - 1;
  double product = 1.0;
  for (int a = 0; a < t; ++a) {
    const u64 freq = mul_mod(mod_pow(2, a, p), base % p, p);
    product *= g_transform(static_cast<double>(freq) / static_cast<double>(p));
  }
  return product;
}

SeparatingStats separating_stats(int t, int r) {
  if (t < 2 || t > 10) throw InvalidArgumentError("t must lie in [2, 10] so p <= 1023");
  if (r < 1) throw InvalidArgumentError("r must be >= 1");
  const u64 p = (u64{1} << t) - 1;
  const OddModulus modulus(p);
  const int n = r * t;

  const ProbVector mu = block_increment_law(modulus);
  ProbVector law = point_mass(p, 0);
  for (int i = 0; i < n; ++i) law = pushforward_block(law, mu);

  const auto w = unit_roots(p);
  std::vector<std::complex<double>> f(p);
  for (u64 j = 0; j < p; ++j) {
    std::complex<double> acc{0.0, 0.0};
    for (int a = 0; a < t; ++a) acc += w[mul_mod(j, mod_pow(2, a, p), p)];
    f[j] = acc;
  }

  SeparatingStats stats;
  stats.t = t;
  stats.r = r;
  std::complex<double> mean{0.0, 0.0};
  KahanSum second;
  for (u64 j = 0; j < p; ++j) {
    mean += law[j] * f[j];
    second.add(law[j] * std::norm(f[j]));
  }
  stats.mean_direct = mean;
  stats.second_direct = second.value();

  const double pi1 = pi_product(1, t);
  stats.mean_closed = static_cast<double>(t) * std::pow(pi1, r);
  KahanSum closed;
  for (int j = 0; j < t; ++j) closed.add(std::pow(pi_product(j, t), r));
  stats.second_closed = static_cast<double>(t) * closed.value();
  stats.variance_closed = stats.second_closed - stats.mean_closed * stats.mean_closed;

  if (std::abs(stats.mean_direct - std::complex<double>{stats.mean_closed, 0.0}) > 1e-6 ||
      std::abs(stats.second_direct - stats.second_closed) > 1e-6)
    throw InternalCheckError("SeparatingStatsMismatch",
                             "direct and closed-form moments disagree");
  return stats;
}

}  // namespace rholab
