#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rholab/mixing.hpp"
#include "rholab/modmath.hpp"

namespace rholab {

/// Decay factor of a non-doubling block-increment transform at a frequency
/// whose cosine is nonpositive.
double xi_constant();

/// Frequency-domain context on Z_p with the dyadic exponent m satisfying
/// 2^{m-1} < p < 2^m (every odd p >= 3 has one).
struct FourierContext {
  explicit FourierContext(OddModulus p);
  OddModulus p;
  int m;
};

/// 2 ((1 + xi^{2 floor(s/m)})^{m-1} - 1): upper bound on the scaled L2
/// distance of the s-block distribution from uniform.
double l2_bound(u64 s, int m);

/// p * sum_j (nu_s(j) - 1/p)^2 for the exact s-block distribution started at
/// 0 (increment law = block_increment_law). Recomputed via the transform and
/// cross-checked against the direct sum before returning. Keep p <= 1023.
double exact_l2(const OddModulus& p, u64 s);

/// Naive O(p^2) transform, fhat(l) = sum_j omega^{lj} f(j) with
/// omega = e^{2 pi i / p}. Self-checks the Plancherel identity
/// p sum |f|^2 = sum |fhat|^2 on every call.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> f);
std::vector<std::complex<double>> dft_real(std::span<const double> f);

/// Number of j in [0, s) with cos(2 pi l 2^j / p) <= 0. The sign test is
/// exact integer arithmetic: cos <= 0 iff p <= 4*(l 2^j mod p) <= 3p, and
/// ties cannot occur for odd p.
int phi_s(u64 ell, u64 s, const FourierContext& ctx);

struct AlternationBound {
  int block_sum;      // sum over windows of alternations in the first m digits
  int single_window;  // alternations in digits 1..s+1 of ell/p
};

/// Lower bounds on phi_s from the binary expansion of ell/p. The window
/// permutations sigma_r(ell) = 2^{rm} ell mod p shift the expansion by rm
/// digits.
AlternationBound alternation_lower(u64 ell, u64 s, const FourierContext& ctx);

/// First `count` binary digits of ell/p (radix algorithm).
std::vector<int> binary_digits(u64 ell, const OddModulus& p, int count);

/// Number of adjacent unequal pairs.
int alternations(std::span<const int> bits);

/// Census of m-bit strings by alternation count; H[z] = 2 * C(m-1, z).
std::vector<u64> alternation_census(int m);

/// Transform of the two-sided geometric increment law at frequency x:
/// G(x) = (1/sqrt5) (1 - q^2) / (1 + q^2 - (3 - sqrt5) cos(2 pi x)),
/// q = (3 - sqrt5)/2. G(0) = 1 and G is real, even and positive.
double g_transform(double x);

/// Product Pi_j = prod_{a=0}^{t-1} G(2^a (2^j - 1) / p) on p = 2^t - 1:
/// the transform of the exact t-block distribution at frequency 2^j - 1.
double pi_product(int j, int t);

struct SeparatingStats {
  int t = 0;
  int r = 0;
  std::complex<double> mean_direct;  // E[f] under the exact rt-block law
  double second_direct = 0;          // E[f conj f], same law
  double mean_closed = 0;            // t * Pi_1^r
  double second_closed = 0;          // t * sum_j Pi_j^r
  double variance_closed = 0;        // second_closed - mean_closed^2
};

/// Moments of the separating function f(j) = sum_a omega^{j 2^a} under the
/// exact r*t-block distribution, computed directly and by the closed forms;
/// the two routes are cross-checked to 1e-6 before returning.
SeparatingStats separating_stats(int t, int r);

}  // namespace rholab
