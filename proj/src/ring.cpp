#include "ring.hpp"

#include <algorithm>

namespace ropit {

CyclicRing::CyclicRing(u64 r, u64 p) : r_(r), p_(p) {
  if (!is_prime_u64(r)) fail(errc::invalid_params, "ring order r must be prime, got " + std::to_string(r));
  Fp f(p);  // validates p
  if (r == p)
    fail(errc::invalid_params, "ring order r must be coprime to the characteristic (r == p)");
  if ((p - 1) % r == 0) {
    has_transform_ = true;
    // omega = h^((p-1)/r) for the first h that gives omega != 1; r prime makes
    // any such omega a primitive r-th root.
    u64 exp = (p - 1) / r;
    u64 omega = 1;
    for (u64 h = 2; h < p; ++h) {
      omega = f.pow(h, exp);
      if (omega != 1) break;
    }
    require_internal(omega != 1 && f.pow(omega, r) == 1, "failed to find a primitive r-th root");
    root_pow_.resize(r);
    root_pow_inv_.resize(r);
    root_pow_[0] = 1;
    for (u64 k = 1; k < r; ++k) root_pow_[k] = f.mul(root_pow_[k - 1], omega);
    for (u64 k = 0; k < r; ++k) root_pow_inv_[k] = root_pow_[(r - k) % r];
  }
}

u64 CyclicRing::root_of_unity() const {
  require_internal(has_transform_, "ring has no r-th root of unity in F_p");
  return root_pow_[1];
}

u64 CyclicRing::root_power(u64 k) const {
  require_internal(has_transform_, "ring has no r-th root of unity in F_p");
  return root_pow_[k % r_];
}

void CyclicRing::check(const Elem& a) const {
  if (a.r != r_ || a.p != p_ || a.c.size() != r_)
    fail(errc::ring_mismatch, "element of R_" + std::to_string(a.r) + " over F_" +
                                  std::to_string(a.p) + " used in R_" + std::to_string(r_) +
                                  " over F_" + std::to_string(p_));
}

CyclicRing::Elem CyclicRing::zero() const { return Elem{r_, p_, std::vector<u64>(r_, 0)}; }

CyclicRing::Elem CyclicRing::one() const { return monomial(0); }

CyclicRing::Elem CyclicRing::monomial(u64 k, u64 coeff) const {
  Elem e = zero();
  e.c[k % r_] = coeff % p_;
  return e;
}

CyclicRing::Elem CyclicRing::from_coeffs(std::vector<u64> coeffs) const {
  if (coeffs.size() > r_) fail(errc::invalid_params, "coefficient vector longer than ring order");
  Elem e = zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) e.c[i] = coeffs[i] % p_;
  return e;
}

CyclicRing::Elem CyclicRing::add(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  Fp f(p_);
  Elem out = a;
  for (u64 i = 0; i < r_; ++i) out.c[i] = f.add(a.c[i], b.c[i]);
  return out;
}

CyclicRing::Elem CyclicRing::sub(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  Fp f(p_);
  Elem out = a;
  for (u64 i = 0; i < r_; ++i) out.c[i] = f.sub(a.c[i], b.c[i]);
  return out;
}

CyclicRing::Elem CyclicRing::neg(const Elem& a) const {
  check(a);
  Fp f(p_);
  Elem out = a;
  for (auto& x : out.c) x = f.neg(x);
  return out;
}

CyclicRing::Elem CyclicRing::scale(const Elem& a, u64 s) const {
  check(a);
  Fp f(p_);
  s = f.reduce(s);
  Elem out = a;
  for (auto& x : out.c) x = f.mul(x, s);
  return out;
}

std::size_t CyclicRing::nonzero_count(const Elem& a, std::size_t cap) const {
  std::size_t n = 0;
  for (u64 i = 0; i < r_ && n <= cap; ++i)
    if (a.c[i]) ++n;
  return n;
}

CyclicRing::Elem CyclicRing::mul_naive(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  Fp f(p_);
  Elem out = zero();
  // Accumulate shifted copies of the denser operand, driven by the sparser
  // one: cost O(nnz(sparse) * r).  Monomials cost a single rotation.
  const Elem* sparse = &a;
  const Elem* dense = &b;
  if (nonzero_count(b, 16) < nonzero_count(a, 16)) std::swap(sparse, dense);
  for (u64 i = 0; i < r_; ++i) {
    u64 s = sparse->c[i];
    if (s == 0) continue;
    for (u64 j = 0; j < r_; ++j) {
      u64 d = dense->c[j];
      if (d == 0) continue;
      u64 k = i + j;
      if (k >= r_) k -= r_;
      out.c[k] = f.add(out.c[k], f.mul(s, d));
    }
  }
  return out;
}

CyclicRing::Elem CyclicRing::mul_transform(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  require_internal(has_transform_, "transform multiplication requested without r | p-1");
  Fp f(p_);
  // lambda^r - 1 splits completely, so evaluation at the r roots of unity is a
  // ring isomorphism onto F_p^r: evaluate, multiply pointwise, interpolate.
  std::vector<u64> va(r_), vb(r_);
  for (u64 j = 0; j < r_; ++j) {
    va[j] = eval_at_root(a, j);
    vb[j] = eval_at_root(b, j);
  }
  Elem out = zero();
  u64 rinv = f.inv(f.reduce(r_));
  for (u64 k = 0; k < r_; ++k) {
    u64 acc = 0;
    for (u64 j = 0; j < r_; ++j) {
      u64 prod = f.mul(va[j], vb[j]);
      acc = f.add(acc, f.mul(prod, root_pow_inv_[(u64)((u128)j * k % r_)]));
    }
    out.c[k] = f.mul(acc, rinv);
  }
  return out;
}

CyclicRing::Elem CyclicRing::mul(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  std::size_t sparsity = std::min(nonzero_count(a, 16), nonzero_count(b, 16));
  if (!has_transform_ || sparsity <= 16 || r_ < 64) return mul_naive(a, b);
  return mul_transform(a, b);
}

bool CyclicRing::is_zero(const Elem& a) const {
  check(a);
  return std::all_of(a.c.begin(), a.c.end(), [](u64 x) { return x == 0; });
}

bool CyclicRing::equal(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  return a.c == b.c;
}

u64 CyclicRing::eval_at_root(const Elem& a, u64 j) const {
  check(a);
  require_internal(has_transform_, "evaluation at roots needs r | p-1");
  Fp f(p_);
  j %= r_;
  // Horner at x = omega^j.
  u64 x = root_pow_[j];
  u64 acc = 0;
  for (u64 k = r_; k-- > 0;) acc = f.add(f.mul(acc, x), a.c[k]);
  return acc;
}

std::string CyclicRing::to_string(const Elem& a, const std::string& var) const {
  check(a);
  std::string out;
  for (u64 k = 0; k < r_; ++k) {
    if (a.c[k] == 0) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += std::to_string(a.c[k]);
    } else {
      if (a.c[k] != 1) out += std::to_string(a.c[k]) + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace ropit
