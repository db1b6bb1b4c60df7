#pragma once

#include <cstdint>
#include <vector>

#include "rholab/rho_walk.hpp"

namespace rholab {

/// First revisit of the walk: the repeated state with the exponent tags of
/// both visits.
struct CollisionEvent {
  u64 first_index;   // step count of the first visit
  u64 second_index;  // step count of the revisit; first_index < second_index
  u64 state;
  u64 first_a, first_b;    // (a, b) at the first visit
  u64 second_a, second_b;  // (alpha, beta) at the revisit
};

/// Runs the exponent walk from `start` storing every visited position with
/// its (a, b) tag until the first revisit. With a LazyRandom oracle the walk
/// is a genuine Markov chain up to that moment.
CollisionEvent find_collision(const WalkParams& params, PartitionOracle& oracle,
                              ExponentState start, u64 max_steps);

/// k = (a - alpha) * (beta - b)^{-1} mod p.
/// Throws DegenerateCollisionError when beta = b (mod p).
u64 extract_dlog(u64 a, u64 b, u64 alpha, u64 beta, const OddModulus& p);

struct SolveResult {
  u64 k;
  int attempts;  // number of walks run, including the successful one
};

/// Full solver: walk the group elements under the iterating function,
/// extract k from the first collision, restart with a fresh partition seed
/// on a degenerate collision, and verify x^k = y before returning.
SolveResult solve(const GroupInstance& inst, u64 seed, int max_attempts = 64);

/// Steps after which a collision occurs with probability >= 1 - e^{-c}:
/// ceil(1 + tau_half + 2 sqrt(2 c |G| tau_half)).
u64 collision_bound(u64 tau_half, u64 group_size, double c);

struct BlockCollisionBound {
  u64 t;                     // 4 * (1 + tau_block + 2 sqrt(2 c |G| tau_block)), rounded up
  double probability_floor;  // 1 - e^{-c} - 32/t; may be vacuous (negative)
};
BlockCollisionBound block_collision_bound(u64 tau_block, u64 group_size, double c);

struct CollisionStats {
  u64 trials = 0;
  std::vector<u64> steps_to_collision;
  u64 bound_used = 0;
  double fraction_within_bound = 0;
  double proposition_floor = 0;  // 1 - e^{-c} - 3 sigma, sigma binomial
  bool meets_floor = false;
};

/// Monte Carlo check of the collision-time bound: computes the exact
/// tau_s(1/2) for the instance, runs `trials` independent LazyRandom walks
/// from position 0, and reports the fraction colliding within the bound.
CollisionStats collision_experiment(const WalkParams& params, double c, u64 trials,
                                    u64 seed);

}  // namespace rholab
