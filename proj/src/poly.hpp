#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fp.hpp"

namespace ropit {

// Dense univariate polynomial over F_p, canonical form (no trailing zeros).
// deg(0) == -1 by convention.
class Poly {
public:
  explicit Poly(u64 p) : p_(p) {}
  Poly(u64 p, std::vector<u64> coeffs);

  static Poly zero(u64 p) { return Poly(p); }
  static Poly one(u64 p) { return Poly(p, {1}); }
  static Poly constant(u64 p, u64 c) { return Poly(p, {c}); }
  static Poly monomial(u64 p, std::size_t k, u64 c = 1);
  // (x - root)
  static Poly linear_root(u64 p, u64 root);

  u64 modulus() const { return p_; }
  int deg() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  u64 coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  u64 lc() const;  // leading coefficient; requires nonzero
  const std::vector<u64>& coeffs() const { return c_; }

  bool operator==(const Poly& o) const { return p_ == o.p_ && c_ == o.c_; }

  std::string to_string(const std::string& var = "t") const;

private:
  void trim();
  u64 p_;
  std::vector<u64> c_;

  friend Poly poly_add(const Poly&, const Poly&);
  friend Poly poly_sub(const Poly&, const Poly&);
  friend Poly poly_neg(const Poly&);
  friend Poly poly_scale(const Poly&, u64);
  friend Poly poly_mul(const Poly&, const Poly&);
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_neg(const Poly& a);
Poly poly_scale(const Poly& a, u64 s);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& a);
Poly poly_derivative(const Poly& a);
u64 poly_eval(const Poly& a, u64 x);

// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
// Exact division: remainder must vanish (internal error otherwise).
Poly poly_div_exact(const Poly& a, const Poly& b);

// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

struct Bezout {
  Poly g, a, b;  // g = gcd (monic), g == a*f + b*h
};
Bezout poly_gcd_bezout(const Poly& f, const Poly& h);

// a^e mod m (binary exponentiation with reduction each step).
Poly poly_powmod(const Poly& a, u64 e, const Poly& m);

// Yun's squarefree decomposition: pairwise-coprime monic squarefree factors
// with multiplicities, product (times lc) reconstructing the input.
// Requires deg f >= 1 and characteristic p > deg f (CharacteristicTooSmall).
std::vector<std::pair<Poly, int>> poly_squarefree(const Poly& f);

// Number of distinct roots of f in F_p, via gcd(x^p - x, f).
int poly_rational_root_count(const Poly& f);

// Smallest root of f in {0, ..., min(p-1, budget)}; nullopt when the scan
// finds none.  When require_simple is set, roots with f'(root) == 0 are
// skipped.
std::optional<u64> poly_smallest_root(const Poly& f, u64 budget, bool require_simple = false);

}  // namespace ropit
