#include "rholab/modmath.hpp"

#include <string>

namespace rholab {

namespace {

constexpr u64 kModulusCap = u64{1} << 62;
constexpr u64 kPrimalityCap = u64{1} << 32;

}  // namespace

OddModulus::OddModulus(u64 p) : value_(p) {
  if (p < 3) throw InvalidArgumentError("modulus must be >= 3, got " + std::to_string(p));
  if (p % 2 == 0) throw InvalidArgumentError("modulus must be odd, got " + std::to_string(p));
  if (p > kModulusCap)
    throw InvalidArgumentError("modulus above 2^62 not supported: " + std::to_string(p));
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 mod_pow(u64 base, u64 exp, u64 modulus) {
  if (modulus == 0) throw InvalidArgumentError("modulus must be >= 1");
  if (modulus == 1) return 0;
  u64 result = 1;
  u64 acc = base % modulus;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, acc, modulus);
    acc = mul_mod(acc, acc, modulus);
    exp >>= 1;
  }
  return result;
}

u64 mod_inverse(u64 a, u64 p) {
  if (p < 2) throw InvalidArgumentError("modulus must be >= 2");
  a %= p;
  if (a == 0) throw NotInvertibleError(a, p);
  // Extended Euclid on (a, p); track only the coefficient of a.
  std::int64_t t = 0, new_t = 1;
  u64 r = p, new_r = a;
  while (new_r != 0) {
    u64 q = r / new_r;
    std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    u64 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw NotInvertibleError(a, p);
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<u64>(t);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

GroupInstance validate_group(const GroupInstance& inst) {
  if (inst.q > kPrimalityCap)
    throw InvalidArgumentError("q above 2^32 not supported: " + std::to_string(inst.q));
  if (!is_prime(inst.q))
    throw GroupValidationError("QNotPrime", std::to_string(inst.q) + " is composite");
  if (!is_prime(inst.p))
    throw GroupValidationError("PNotPrime", std::to_string(inst.p) + " is composite");
  if (inst.p == 0 || (inst.q - 1) % inst.p != 0)
    throw GroupValidationError("OrderDoesNotDivide", std::to_string(inst.p) +
                                                         " does not divide q-1 = " +
                                                         std::to_string(inst.q - 1));
  if (inst.x >= inst.q)
    throw GroupValidationError("GeneratorOutOfRange",
                               "x = " + std::to_string(inst.x) + " not in (1, q)");
  if (inst.x <= 1)
    throw GroupValidationError("GeneratorTrivial", "x must differ from 0 and 1");
  if (mod_pow(inst.x, inst.p, inst.q) != 1)
    throw GroupValidationError("GeneratorNotInSubgroup",
                               "x^p != 1 mod q for x = " + std::to_string(inst.x));
  if (inst.y == 0 || inst.y >= inst.q)
    throw GroupValidationError("TargetOutOfRange",
                               "y = " + std::to_string(inst.y) + " not in [1, q)");
  if (mod_pow(inst.y, inst.p, inst.q) != 1)
    throw GroupValidationError("TargetNotInSubgroup",
                               "y^p != 1 mod q for y = " + std::to_string(inst.y));
  return inst;
}

}  // namespace rholab
