#pragma once

#include <cstdint>

#include "rholab/errors.hpp"

namespace rholab {

using u64 = std::uint64_t;

/// Odd modulus >= 3. Word-sized: everything above 2^62 is rejected since the
/// lab is exact desk-scale arithmetic, not big-number crypto.
class OddModulus {
 public:
  explicit OddModulus(u64 p);
  u64 value() const noexcept { return value_; }

 private:
  u64 value_;
};

u64 mul_mod(u64 a, u64 b, u64 m);

/// base^exp mod modulus by square-and-multiply; modulus = 1 yields 0.
u64 mod_pow(u64 base, u64 exp, u64 modulus);

/// Multiplicative inverse of a mod p via extended Euclid.
/// Throws NotInvertibleError when gcd(a mod p, p) != 1, which is how a
/// degenerate collision (beta = b) surfaces structurally.
u64 mod_inverse(u64 a, u64 p);

/// Deterministic trial division. Intended for inputs up to 2^32.
bool is_prime(u64 n);

/// Concrete group for the solver: subgroup of order p inside the
/// multiplicative group mod q, generated by x, with target y = x^k.
struct GroupInstance {
  u64 q;  // prime ambient modulus
  u64 p;  // prime subgroup order, p | q-1
  u64 x;  // generator of the order-p subgroup
  u64 y;  // target element
};

/// Verifies all GroupInstance invariants; returns the instance unchanged or
/// throws GroupValidationError whose kind() names the first failed check:
/// QNotPrime, PNotPrime, OrderDoesNotDivide, GeneratorTrivial,
/// GeneratorOutOfRange, GeneratorNotInSubgroup, TargetOutOfRange,
/// TargetNotInSubgroup.
GroupInstance validate_group(const GroupInstance& inst);

}  // namespace rholab
