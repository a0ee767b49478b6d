#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ropit {

// Minimal arbitrary-precision unsigned integer.  Only the handful of
// operations the curve machinery needs: the substitution base B can exceed
// 64 bits, so it is carried exactly and only ever used as an exponent mod p
// or printed in decimal.
class BigUint {
public:
  BigUint() = default;                 // zero
  explicit BigUint(std::uint64_t v);

  static BigUint pow_u64(std::uint64_t base, std::uint64_t exp);  // base^exp

  BigUint& mul_u64(std::uint64_t m);
  BigUint& mul(const BigUint& other);
  BigUint& add_u64(std::uint64_t a);
  BigUint& add(const BigUint& other);

  // Divides in place by d (d != 0), returns the remainder.
  std::uint64_t divmod_u64(std::uint64_t d);

  bool is_zero() const { return limbs_.empty(); }
  bool fits_u64() const { return limbs_.size() <= 1; }
  std::uint64_t to_u64() const;        // requires fits_u64()

  // -1 / 0 / +1 comparison.
  int cmp(const BigUint& other) const;
  int cmp_u64(std::uint64_t v) const;

  std::string to_string() const;       // decimal

  // Little-endian 64-bit limbs; empty means zero.
  const std::vector<std::uint64_t>& limbs() const { return limbs_; }

private:
  void trim();
  std::vector<std::uint64_t> limbs_;
};

}  // namespace ropit
