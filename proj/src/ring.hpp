#pragma once

#include <string>
#include <vector>

#include "fp.hpp"

namespace ropit {

// Element of F_p[lambda]/(lambda^r - 1): dense coefficient vector of length r,
// tagged with (r, p) so mixed-ring arithmetic is rejected.
struct RingElem {
  u64 r = 0, p = 0;
  std::vector<u64> c;
};

// The cyclic quotient ring R_r = F_p[lambda]/(lambda^r - 1) with r prime and
// r != p (so gcd(r, p) = 1 and lambda^r - 1 is squarefree).
class CyclicRing {
public:
  CyclicRing(u64 r, u64 p);

  u64 order() const { return r_; }
  u64 modulus() const { return p_; }

  // True iff r | p-1, i.e. F_p contains a primitive r-th root of unity and
  // the evaluation (transform) representation is available.
  bool has_transform() const { return has_transform_; }
  u64 root_of_unity() const;
  // omega^(k mod r) from the cached power table (requires has_transform()).
  u64 root_power(u64 k) const;

  using Elem = RingElem;

  Elem zero() const;
  Elem one() const;
  // c * lambda^(k mod r)
  Elem monomial(u64 k, u64 coeff = 1) const;
  Elem from_coeffs(std::vector<u64> coeffs) const;  // length must be <= r; reduced mod p

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem scale(const Elem& a, u64 s) const;
  Elem mul(const Elem& a, const Elem& b) const;            // dispatches on sparsity/transform
  Elem mul_naive(const Elem& a, const Elem& b) const;      // cyclic convolution
  Elem mul_transform(const Elem& a, const Elem& b) const;  // evaluate/pointwise/interpolate
  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const;

  // Evaluation at lambda = omega^j (a ring homomorphism R_r -> F_p).
  u64 eval_at_root(const Elem& a, u64 j) const;

  std::string to_string(const Elem& a, const std::string& var = "lambda") const;

private:
  void check(const Elem& a) const;
  std::size_t nonzero_count(const Elem& a, std::size_t cap) const;

  u64 r_, p_;
  bool has_transform_ = false;
  std::vector<u64> root_pow_;      // omega^0 .. omega^{r-1}
  std::vector<u64> root_pow_inv_;  // omega^{-0} .. omega^{-(r-1)}
};

// Scalar field viewed through the same ring interface, so program evaluation
// is generic over F_p and R_r.
class FieldRing {
public:
  explicit FieldRing(u64 p) : f_(p) {}
  u64 modulus() const { return f_.modulus(); }

  using Elem = u64;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return f_.add(a, b); }
  Elem sub(Elem a, Elem b) const { return f_.sub(a, b); }
  Elem neg(Elem a) const { return f_.neg(a); }
  Elem scale(Elem a, u64 s) const { return f_.mul(a, s); }
  Elem mul(Elem a, Elem b) const { return f_.mul(a, b); }
  bool is_zero(Elem a) const { return a == 0; }

private:
  Fp f_;
};

}  // namespace ropit
