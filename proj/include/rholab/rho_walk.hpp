#pragma once

#include <cstdint>
#include <unordered_map>

#include "rholab/modmath.hpp"
#include "rholab/rng.hpp"

namespace rholab {

/// Instance of the exponent walk on Z_p: moves +1, +k and *2, each with
/// probability 1/3.
struct WalkParams {
  WalkParams(OddModulus p, u64 k);
  OddModulus p;
  u64 k;  // in [1, p-1]
};

enum class PartitionMode { Hashed, LazyRandom };

/// A fixed three-way partition of the state space. Hashed mode derives the
/// class from a bit mix of (seed, state), modelling a hash-function
/// partition. LazyRandom mode draws each state's class uniformly on first
/// query and memoizes it, which is the idealization where the walk is a
/// genuine Markov chain until its first revisit.
class PartitionOracle {
 public:
  PartitionOracle(PartitionMode mode, u64 seed);

  /// Move type in {1, 2, 3} for this state; stable per (seed, state).
  int assign(u64 state);

  PartitionMode mode() const noexcept { return mode_; }
  u64 seed() const noexcept { return seed_; }

 private:
  PartitionMode mode_;
  u64 seed_;
  Rng rng_;
  std::unordered_map<u64, std::uint8_t> memo_;
};

inline int assign_partition(u64 state, PartitionOracle& oracle) {
  return oracle.assign(state);
}

/// One step of the exponent walk: move 1 -> i+1, move 2 -> i+k, move 3 -> 2i.
u64 step_rho(u64 i, int move, const WalkParams& params);

/// One step of the comparison walk on the odd cycle: choice 0 -> 2i,
/// choice 1 -> 2i-1.
u64 step_doubling(u64 i, int choice, const OddModulus& p);

/// Walk position together with its exponent bookkeeping:
/// position = a + k*b (mod p) at all times.
struct ExponentState {
  ExponentState(u64 a, u64 b, const WalkParams& params);

  void apply(int move, const WalkParams& params);

  u64 a;
  u64 b;
  u64 position;
};

/// Group-element walk state for the solver: g = x^a * y^b.
struct GroupWalkState {
  u64 g;
  u64 a;
  u64 b;
};

/// The iterating function on group elements with exponent tracking.
/// Set 1 -> g*x (a+1), set 2 -> g^2 (a,b doubled), set 3 -> g*y (b+1);
/// exponent updates are mod p.
GroupWalkState apply_f_move(const GroupWalkState& st, const GroupInstance& inst,
                            int set_index);

inline GroupWalkState iterate_F(const GroupWalkState& st, const GroupInstance& inst,
                                PartitionOracle& oracle) {
  return apply_f_move(st, inst, oracle.assign(st.g));
}

}  // namespace rholab
