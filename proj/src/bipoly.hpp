#pragma once

#include <string>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"

namespace ropit {

// Polynomial in an elimination variable mu whose coefficients live in
// F_p[lambda].  Canonical form: no trailing zero mu-coefficients.
class MuPoly {
public:
  explicit MuPoly(u64 p) : p_(p) {}
  MuPoly(u64 p, std::vector<Poly> coeffs);

  static MuPoly zero(u64 p) { return MuPoly(p); }
  static MuPoly from_poly(const Poly& c);          // mu-degree 0
  static MuPoly mu_monomial(u64 p, std::size_t k);  // mu^k

  u64 modulus() const { return p_; }
  int deg_mu() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  Poly coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Poly::zero(p_); }
  int max_lambda_deg() const;

  bool operator==(const MuPoly& o) const;
  std::string to_string() const;

private:
  void trim();
  u64 p_;
  std::vector<Poly> c_;

  friend MuPoly mu_add(const MuPoly&, const MuPoly&);
  friend MuPoly mu_sub(const MuPoly&, const MuPoly&);
  friend MuPoly mu_mul(const MuPoly&, const MuPoly&);
  friend MuPoly mu_scale(const MuPoly&, const Poly&);
};

MuPoly mu_add(const MuPoly& a, const MuPoly& b);
MuPoly mu_sub(const MuPoly& a, const MuPoly& b);
MuPoly mu_mul(const MuPoly& a, const MuPoly& b);
MuPoly mu_scale(const MuPoly& a, const Poly& s);
MuPoly mu_derivative(const MuPoly& a);
// Evaluate mu -> value, leaving a polynomial in lambda.
Poly mu_eval(const MuPoly& a, u64 mu);
// Evaluate both variables.
u64 mu_eval2(const MuPoly& a, u64 mu, u64 lambda);

// Resultant Res_mu(f, g) as a polynomial in lambda: the Sylvester determinant
// computed by fraction-free (Bareiss) elimination over F_p[lambda], so no
// rational-function arithmetic appears.  Errors: DegreeZeroInput when both
// inputs are mu-constant.
Poly sylvester_resultant(const MuPoly& f, const MuPoly& g);

// Disc_mu(f) = (-1)^{d(d-1)/2} Res_mu(f, df/dmu) / lc_mu(f).
// Errors: DegreeTooLow when deg_mu(f) < 2.
Poly discriminant_mu(const MuPoly& f);

// Square matrix with entries in F_p[lambda] (an affine or general pencil).
class PolyMat {
public:
  PolyMat(u64 p, std::size_t n) : p_(p), n_(n), e_(n * n, Poly::zero(p)) {}
  static PolyMat identity(u64 p, std::size_t n);
  // X0 + lambda*X1 from two scalar matrices.
  static PolyMat affine(const Mat& x0, const Mat& x1);

  u64 modulus() const { return p_; }
  std::size_t size() const { return n_; }
  Poly& at(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

  PolyMat leading_principal(std::size_t r) const;
  Mat eval(u64 lambda) const;
  int max_entry_deg() const;

private:
  u64 p_;
  std::size_t n_;
  std::vector<Poly> e_;
};

PolyMat pm_mul(const PolyMat& a, const PolyMat& b);
Poly pm_trace(const PolyMat& a);
// Determinant over F_p[lambda] by Bareiss elimination.
Poly pm_det(const PolyMat& a);

// Characteristic polynomial det(mu I - X) and the resolvent adjugate
// adj(mu I - X) = sum_k mu^{w-1-k} B_k, both exact over F_p[lambda].
// Requires p > size (integer divisions up to w).
struct PencilCharData {
  MuPoly charpoly;
  std::vector<PolyMat> adj_terms;  // B_0 = I, ..., B_{w-1}
};
PencilCharData pencil_char_adj(const PolyMat& x);

// Entry (i, j) of adj(mu I - X) as a MuPoly.
MuPoly pencil_adj_entry(const PencilCharData& data, std::size_t i, std::size_t j);

}  // namespace ropit
