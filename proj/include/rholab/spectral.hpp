#pragma once

#include <cstdint>
#include <vector>

#include "rholab/rho_walk.hpp"

namespace rholab {

/// Edge of the doubling walk: to = 2*from - c (mod p) with c in {0,1}.
struct PathEdge {
  u64 from;
  u64 to;
  int c;
};

/// Canonical path from x to y along doubling-walk edges, length exactly
/// ceil(log2 p). The residue 2^n x - y mod p is written in binary and read
/// off as the edge choices; when two representatives exist the smaller is
/// taken so congestion is reproducible.
std::vector<PathEdge> canonical_path(u64 x, u64 y, const OddModulus& p);

/// Worst-edge congestion of the canonical path system under the uniform
/// distribution; 1/congestion lower-bounds the doubling walk's spectral gap.
/// Enumerates all p^2 paths: keep p <= 512.
double congestion(const OddModulus& p);

struct GapBounds {
  double lambda_k_bound;   // 1 / (2 ceil(log2 p)^2)
  double lambda_r2_bound;  // (2/81) * lambda_k_bound
};
GapBounds gap_bounds(const OddModulus& p);

/// Separation mixing bound from a spectral gap:
/// ceil((1/lambda) * ln(1/(epsilon*pi_min))).
u64 fill_bound(double lambda, double pi_min, double epsilon);

enum class WalkKind { Rho, RhoSquared, Doubling };
enum class GapMode { Dirichlet, PPStar };

/// Dense row-major transition matrix; k is ignored for the doubling walk.
std::vector<double> transition_matrix(WalkKind kind, const WalkParams& params);

/// Numerical spectral gap for p <= 512.
/// Dirichlet mode: 1 - lambda_2((P + P^T)/2) -- the Dirichlet form only sees
/// the additive symmetrization when pi is uniform. PPStar mode:
/// 1 - lambda_2(P P^T). Power iteration with deflation against the all-ones
/// vector; the operator is shifted to (A+I)/2 so the dominant deflated
/// eigenvalue is the second-largest algebraic one, not a negative extreme.
double exact_gap(WalkKind kind, const WalkParams& params, GapMode mode,
                 double tol = 1e-10, u64 iteration_cap = 1000000);

}  // namespace rholab
