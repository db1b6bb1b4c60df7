#include "rholab/rho_solver.hpp"

#include <cmath>
#include <unordered_map>

#include "rholab/mixing.hpp"

namespace rholab {

CollisionEvent find_collision(const WalkParams& params, PartitionOracle& oracle,
                              ExponentState start, u64 max_steps) {
  if (max_steps < 1) throw InvalidArgumentError("max_steps must be >= 1");
  struct Visit {
    u64 index, a, b;
  };
  std::unordered_map<u64, Visit> seen;
  seen.reserve(std::min<u64>(max_steps + 1, params.p.value()) * 2);
  seen.emplace(start.position, Visit{0, start.a, start.b});
  ExponentState st = start;
  for (u64 t = 1; t <= max_steps; ++t) {
    st.apply(oracle.assign(st.position), params);
    auto [it, fresh] = seen.emplace(st.position, Visit{t, st.a, st.b});
    if (!fresh) {
      const Visit& first = it->second;
      return CollisionEvent{first.index, t, st.position, first.a, first.b, st.a, st.b};
    }
  }
  throw NoCollisionWithinBudgetError(max_steps);
}

u64 extract_dlog(u64 a, u64 b, u64 alpha, u64 beta, const OddModulus& p) {
  const u64 m = p.value();
  a %= m;
  b %= m;
  alpha %= m;
  beta %= m;
  if (beta == b) throw DegenerateCollisionError();
  const u64 numerator = (a + m - alpha) % m;
  const u64 denominator = (beta + m - b) % m;
  return mul_mod(numerator, mod_inverse(denominator, m), m);
}

SolveResult solve(const GroupInstance& inst, u64 seed, int max_attempts) {
  validate_group(inst);
  const OddModulus order(inst.p);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    PartitionOracle oracle(PartitionMode::LazyRandom,
                           stream_seed(seed, static_cast<u64>(attempt)));
    struct Visit {
      u64 a, b;
    };
    std::unordered_map<u64, Visit> seen;
    seen.reserve(2 * inst.p);
    GroupWalkState st{inst.x, 1, 0};
    seen.emplace(st.g, Visit{st.a, st.b});
    // The walk stays inside the order-p subgroup, so a revisit arrives
    // within p+1 steps by pigeonhole.
    for (u64 t = 1; t <= inst.p + 1; ++t) {
      st = iterate_F(st, inst, oracle);
      auto [it, fresh] = seen.emplace(st.g, Visit{st.a, st.b});
      if (fresh) continue;
      try {
        const u64 k = extract_dlog(it->second.a, it->second.b, st.a, st.b, order);
        if (mod_pow(inst.x, k, inst.q) == inst.y) return SolveResult{k, attempt + 1};
      } catch (const DegenerateCollisionError&) {
        // fall through to a fresh partition seed
      }
      break;
    }
  }
  throw ExhaustedAttemptsError(max_attempts);
}

u64 collision_bound(u64 tau_half, u64 group_size, double c) {
  if (tau_half < 1) throw InvalidArgumentError("tau_half must be >= 1");
  if (group_size < 2) throw InvalidArgumentError("group_size must be >= 2");
  if (!(c > 0)) throw InvalidArgumentError("c must be positive");
  const double radical = 2.0 * std::sqrt(2.0 * c * static_cast<double>(group_size) *
                                         static_cast<double>(tau_half));
  return static_cast<u64>(std::ceil(1.0 + static_cast<double>(tau_half) + radical));
}

BlockCollisionBound block_collision_bound(u64 tau_block, u64 group_size, double c) {
  if (tau_block < 1) throw InvalidArgumentError("tau_block must be >= 1");
  if (group_size < 2) throw InvalidArgumentError("group_size must be >= 2");
  if (!(c > 0)) throw InvalidArgumentError("c must be positive");
  const double inner = 1.0 + static_cast<double>(tau_block) +
                       2.0 * std::sqrt(2.0 * c * static_cast<double>(group_size) *
                                       static_cast<double>(tau_block));
  const u64 t = static_cast<u64>(std::ceil(4.0 * inner));
  const double floor = 1.0 - std::exp(-c) - 32.0 / static_cast<double>(t);
  return BlockCollisionBound{t, floor};
}

CollisionStats collision_experiment(const WalkParams& params, double c, u64 trials,
                                    u64 seed) {
  if (trials < 1) throw InvalidArgumentError("trials must be >= 1");
  const u64 p = params.p.value();
  const MixingReport mixing = tau_s(params, 0.5);
  const u64 bound = collision_bound(mixing.tau, p, c);

  CollisionStats stats;
  stats.trials = trials;
  stats.bound_used = bound;
  stats.steps_to_collision.reserve(trials);
  // Walks always get at least the pigeonhole budget so the event "collides
  // within the bound" is measured rather than truncated.
  const u64 budget = std::max(bound, p + 1);
  u64 within = 0;
  for (u64 trial = 0; trial < trials; ++trial) {
    PartitionOracle oracle(PartitionMode::LazyRandom, stream_seed(seed, trial));
    ExponentState start(0, 0, params);
    const CollisionEvent event = find_collision(params, oracle, start, budget);
    stats.steps_to_collision.push_back(event.second_index);
    if (event.second_index <= bound) ++within;
  }
  stats.fraction_within_bound =
      static_cast<double>(within) / static_cast<double>(trials);
  const double miss = std::exp(-c);
  const double sigma = std::sqrt(miss * (1.0 - miss) / static_cast<double>(trials));
  stats.proposition_floor = 1.0 - miss - 3.0 * sigma;
  stats.meets_floor = stats.fraction_within_bound >= stats.proposition_floor;
  return stats;
}

}  // namespace rholab
