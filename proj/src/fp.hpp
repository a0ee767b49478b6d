#pragma once

#include <cstdint>
#include <random>

#include "biguint.hpp"
#include "errors.hpp"

namespace ropit {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Largest supported modulus: primes up to 2^61 keep a+b < 2^62 and a*b inside
// the 128-bit multiply-reduce.
inline constexpr u64 kMaxModulusBits = 61;
inline constexpr u64 kDefaultPrime = (u64(1) << 61) - 1;

bool is_prime_u64(u64 n);           // deterministic Miller-Rabin, any 64-bit n
u64 next_prime_at_least(u64 n);     // smallest prime >= n (throws on overflow)

// Smallest prime p = k*r + 1 with p >= floor_p: F_p then contains a primitive
// r-th root of unity, enabling the pointwise (transform) cyclic-ring path.
u64 find_prime_with_root(u64 r, u64 floor_p);

// Prime-field context: canonical residues in [0, p).
class Fp {
public:
  explicit Fp(u64 p);
  u64 modulus() const { return p_; }

  u64 reduce(u64 a) const { return a % p_; }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a ? p_ - a : 0; }
  u64 mul(u64 a, u64 b) const { return (u64)((u128)a * b % p_); }
  u64 inv(u64 a) const;             // throws ZeroInverse on a == 0
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }
  u64 pow(u64 a, u64 e) const;
  u64 pow(u64 a, u128 e) const;
  u64 pow(u64 a, const BigUint& e) const;

private:
  u64 p_;
};

// Field element carrying its modulus; mixed-modulus arithmetic is rejected.
struct FpElem {
  u64 v = 0;
  u64 p = 0;
};

FpElem fp_make(u64 v, u64 p);
FpElem fp_add(FpElem a, FpElem b);
FpElem fp_sub(FpElem a, FpElem b);
FpElem fp_mul(FpElem a, FpElem b);
FpElem fp_inv(FpElem a);
FpElem fp_neg(FpElem a);
FpElem fp_pow(FpElem a, u128 e);
inline bool operator==(FpElem a, FpElem b) { return a.v == b.v && a.p == b.p; }

// Deterministic uniform draw in [0, m); rejection sampling on mt19937_64 so
// results are identical across platforms.
u64 rnd_below(std::mt19937_64& gen, u64 m);

}  // namespace ropit
