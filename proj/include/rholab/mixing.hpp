#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rholab/rho_walk.hpp"

namespace rholab {

/// Exact distribution over Z_p: nonnegative entries summing to 1.
using ProbVector = std::vector<double>;

bool is_distribution(std::span<const double> v, double tol = 1e-12);
ProbVector point_mass(u64 p, u64 at);
ProbVector uniform_vector(u64 p);

/// One exact step of the exponent walk applied to a distribution; O(p).
ProbVector pushforward_rho(const ProbVector& v, const WalkParams& params);

/// One exact step of the block walk X -> 2X + b with increment law mu; O(p^2).
ProbVector pushforward_block(const ProbVector& v, const ProbVector& mu);

struct Distances {
  double sep;  // max_y 1 - p*v[y]
  double tv;   // (1/2) sum |v[y] - 1/p|
};
Distances distances(const ProbVector& v);

struct MixingReport {
  u64 p = 0;
  u64 k = 0;
  double epsilon = 0;
  u64 tau = 0;                      // worst start's first passage below epsilon
  std::vector<u64> per_start_tau;   // first passage per start state
  std::vector<double> sep_curve;    // separation per step for the worst start
};

/// Exact separation mixing time of the exponent walk: evolves a point mass
/// from every start (the walk is not translation invariant, so no start can
/// be skipped) and reports the worst first passage below epsilon.
MixingReport tau_s(const WalkParams& params, double epsilon, u64 max_steps = 100000);

/// Same construction for the block walk with the closed-form increment law.
u64 tau_s_block(const OddModulus& p, double epsilon, u64 max_blocks = 100000);

/// Law on Z_p of the signed ground covered between doublings when the two
/// non-doubling moves are +1 and -1 (the k = p-1 regime): the two-sided
/// geometric a_j = (1/sqrt5) ((3-sqrt5)/2)^|j| folded onto the cycle.
ProbVector block_increment_law(const OddModulus& p);

/// Unfolded coefficients a_0, a_1, ... truncated where a_j < tol.
std::vector<double> increment_coefficients(double tol = 1e-15);

}  // namespace rholab
