#include "fp.hpp"

#include <string>

namespace ropit {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return (u64)((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit integers.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 next_prime_at_least(u64 n) {
  if (n <= 2) return 2;
  u64 c = n | 1;  // first odd >= n
  while (true) {
    if (is_prime_u64(c)) return c;
    if (c > ~u64{0} - 2) fail(errc::threshold_overflow, "prime search exceeded 64 bits");
    c += 2;
  }
}

u64 find_prime_with_root(u64 r, u64 floor_p) {
  if (r < 2) fail(errc::invalid_params, "order r must be at least 2");
  u64 k = floor_p <= 1 ? 1 : (floor_p - 2) / r + 1;  // smallest k with k*r+1 >= floor_p
  while (true) {
    u128 cand = (u128)k * r + 1;
    if (cand >> kMaxModulusBits)
      fail(errc::threshold_overflow, "no prime p = k*r+1 within the supported modulus range");
    u64 p = (u64)cand;
    if (p >= floor_p && p != r && is_prime_u64(p)) return p;
    ++k;
  }
}

Fp::Fp(u64 p) : p_(p) {
  if (p < 2 || (p >> kMaxModulusBits) != 0 || !is_prime_u64(p))
    fail(errc::invalid_params, "modulus must be a prime below 2^61, got " + std::to_string(p));
}

u64 Fp::inv(u64 a) const {
  a %= p_;
  if (a == 0) fail(errc::zero_inverse, "inverse of zero in F_" + std::to_string(p_));
  // Extended Euclid on (a, p).
  long long t = 0, new_t = 1;
  long long r = (long long)p_, new_r = (long long)a;
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  require_internal(r == 1, "inverse gcd != 1 for prime modulus");
  if (t < 0) t += (long long)p_;
  return (u64)t;
}

u64 Fp::pow(u64 a, u64 e) const { return powmod(a % p_, e, p_); }

u64 Fp::pow(u64 a, u128 e) const {
  u64 r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 Fp::pow(u64 a, const BigUint& e) const {
  // Process limbs little-endian: a^(sum limb_i 2^(64 i)).
  u64 result = 1 % p_;
  u64 cur = a % p_;
  const auto& limbs = e.limbs();
  for (std::size_t i = 0; i < limbs.size(); ++i) {
    u64 limb = limbs[i];
    u64 base = cur;
    for (int b = 0; b < 64 && limb; ++b) {
      if (limb & 1) result = mul(result, base);
      base = mul(base, base);
      limb >>= 1;
    }
    if (i + 1 < limbs.size()) {
      // cur <- cur^(2^64)
      for (int b = 0; b < 64; ++b) cur = mul(cur, cur);
    }
  }
  return result;
}

namespace {
void check_same_modulus(FpElem a, FpElem b) {
  if (a.p != b.p)
    fail(errc::modulus_mismatch,
         "operands live in F_" + std::to_string(a.p) + " and F_" + std::to_string(b.p));
}
}  // namespace

FpElem fp_make(u64 v, u64 p) {
  Fp f(p);
  return FpElem{f.reduce(v), p};
}
FpElem fp_add(FpElem a, FpElem b) {
  check_same_modulus(a, b);
  return FpElem{Fp(a.p).add(a.v, b.v), a.p};
}
FpElem fp_sub(FpElem a, FpElem b) {
  check_same_modulus(a, b);
  return FpElem{Fp(a.p).sub(a.v, b.v), a.p};
}
FpElem fp_mul(FpElem a, FpElem b) {
  check_same_modulus(a, b);
  return FpElem{Fp(a.p).mul(a.v, b.v), a.p};
}
FpElem fp_inv(FpElem a) { return FpElem{Fp(a.p).inv(a.v), a.p}; }
FpElem fp_neg(FpElem a) { return FpElem{Fp(a.p).neg(a.v), a.p}; }
FpElem fp_pow(FpElem a, u128 e) { return FpElem{Fp(a.p).pow(a.v, e), a.p}; }

u64 rnd_below(std::mt19937_64& gen, u64 m) {
  require_internal(m > 0, "rnd_below needs m > 0");
  if (m == 1) return 0;
  u64 threshold = ~u64{0} - ~u64{0} % m;  // multiple of m
  while (true) {
    u64 x = gen();
    if (x < threshold) return x % m;
  }
}

}  // namespace ropit
