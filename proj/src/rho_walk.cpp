#include "rholab/rho_walk.hpp"

#include <string>

namespace rholab {

WalkParams::WalkParams(OddModulus p_in, u64 k_in) : p(p_in), k(k_in) {
  if (k < 1 || k >= p.value())
    throw InvalidArgumentError("k must lie in [1, p-1], got " + std::to_string(k));
}

PartitionOracle::PartitionOracle(PartitionMode mode, u64 seed)
    : mode_(mode), seed_(seed), rng_(stream_seed(seed, 0)) {}

int PartitionOracle::assign(u64 state) {
  if (mode_ == PartitionMode::Hashed) {
    return 1 + static_cast<int>(mix64(seed_ ^ state) % 3);
  }
  auto it = memo_.find(state);
  if (it != memo_.end()) return it->second;
  auto type = static_cast<std::uint8_t>(1 + rng_.below(3));
  memo_.emplace(state, type);
  return type;
}

u64 step_rho(u64 i, int move, const WalkParams& params) {
  const u64 p = params.p.value();
  switch (move) {
    case 1:
      return (i + 1) % p;
    case 2:
      return (i + params.k) % p;
    case 3:
      return mul_mod(i, 2, p);
    default:
      throw InvalidArgumentError("move must be 1, 2 or 3");
  }
}

u64 step_doubling(u64 i, int choice, const OddModulus& p) {
  const u64 m = p.value();
  const u64 doubled = mul_mod(i, 2, m);
  switch (choice) {
    case 0:
      return doubled;
    case 1:
      return (doubled + m - 1) % m;
    default:
      throw InvalidArgumentError("choice must be 0 or 1");
  }
}

ExponentState::ExponentState(u64 a_in, u64 b_in, const WalkParams& params)
    : a(a_in % params.p.value()), b(b_in % params.p.value()) {
  const u64 p = params.p.value();
  position = (a + mul_mod(params.k, b, p)) % p;
}

void ExponentState::apply(int move, const WalkParams& params) {
  const u64 p = params.p.value();
  switch (move) {
    case 1:
      a = (a + 1) % p;
      break;
    case 2:
      b = (b + 1) % p;
      break;
    case 3:
      a = mul_mod(a, 2, p);
      b = mul_mod(b, 2, p);
      break;
    default:
      throw InvalidArgumentError("move must be 1, 2 or 3");
  }
  position = step_rho(position, move, params);
}

GroupWalkState apply_f_move(const GroupWalkState& st, const GroupInstance& inst,
                            int set_index) {
  const u64 q = inst.q;
  const u64 p = inst.p;
  switch (set_index) {
    case 1:
      return {mul_mod(st.g, inst.x, q), (st.a + 1) % p, st.b};
    case 2:
      return {mul_mod(st.g, st.g, q), mul_mod(st.a, 2, p), mul_mod(st.b, 2, p)};
    case 3:
      return {mul_mod(st.g, inst.y, q), st.a, (st.b + 1) % p};
    default:
      throw InvalidArgumentError("partition class must be 1, 2 or 3");
  }
}

}  // namespace rholab
