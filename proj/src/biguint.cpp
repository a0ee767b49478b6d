#include "biguint.hpp"

#include <algorithm>

#include "errors.hpp"

namespace ropit {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

BigUint::BigUint(u64 v) {
  if (v) limbs_.push_back(v);
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint BigUint::pow_u64(u64 base, u64 exp) {
  BigUint r(1);
  for (u64 i = 0; i < exp; ++i) r.mul_u64(base);
  return r;
}

BigUint& BigUint::mul_u64(u64 m) {
  if (m == 0 || limbs_.empty()) {
    limbs_.clear();
    return *this;
  }
  u64 carry = 0;
  for (auto& limb : limbs_) {
    u128 t = (u128)limb * m + carry;
    limb = (u64)t;
    carry = (u64)(t >> 64);
  }
  if (carry) limbs_.push_back(carry);
  return *this;
}

BigUint& BigUint::mul(const BigUint& other) {
  if (limbs_.empty() || other.limbs_.empty()) {
    limbs_.clear();
    return *this;
  }
  std::vector<u64> out(limbs_.size() + other.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    u64 carry = 0;
    for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
      u128 t = (u128)limbs_[i] * other.limbs_[j] + out[i + j] + carry;
      out[i + j] = (u64)t;
      carry = (u64)(t >> 64);
    }
    out[i + other.limbs_.size()] += carry;
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

BigUint& BigUint::add_u64(u64 a) {
  u64 carry = a;
  for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
    u64 old = limbs_[i];
    limbs_[i] = old + carry;
    carry = (limbs_[i] < old) ? 1 : 0;
  }
  if (carry) limbs_.push_back(carry);
  return *this;
}

BigUint& BigUint::add(const BigUint& other) {
  if (other.limbs_.size() > limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
  u64 carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    u64 b = i < other.limbs_.size() ? other.limbs_[i] : 0;
    u64 s1 = limbs_[i] + b;
    u64 c1 = (s1 < limbs_[i]) ? 1 : 0;
    u64 s2 = s1 + carry;
    u64 c2 = (s2 < s1) ? 1 : 0;
    limbs_[i] = s2;
    carry = c1 + c2;
  }
  if (carry) limbs_.push_back(carry);
  return *this;
}

u64 BigUint::divmod_u64(u64 d) {
  require_internal(d != 0, "BigUint division by zero");
  u128 rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    u128 cur = (rem << 64) | limbs_[i];
    limbs_[i] = (u64)(cur / d);
    rem = cur % d;
  }
  trim();
  return (u64)rem;
}

u64 BigUint::to_u64() const {
  require_internal(fits_u64(), "BigUint does not fit in 64 bits");
  return limbs_.empty() ? 0 : limbs_[0];
}

int BigUint::cmp(const BigUint& other) const {
  if (limbs_.size() != other.limbs_.size())
    return limbs_.size() < other.limbs_.size() ? -1 : 1;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i] ? -1 : 1;
  }
  return 0;
}

int BigUint::cmp_u64(u64 v) const { return cmp(BigUint(v)); }

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  BigUint tmp = *this;
  std::string digits;
  while (!tmp.is_zero()) {
    u64 rem = tmp.divmod_u64(10);
    digits.push_back(char('0' + rem));
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace ropit
