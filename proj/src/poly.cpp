#include "poly.hpp"

#include <algorithm>

namespace ropit {

Poly::Poly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
  Fp f(p_);
  for (auto& c : c_) c = f.reduce(c);
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(u64 p, std::size_t k, u64 c) {
  std::vector<u64> v(k + 1, 0);
  v[k] = c;
  return Poly(p, std::move(v));
}

Poly Poly::linear_root(u64 p, u64 root) { return Poly(p, {Fp(p).neg(root % p), 1}); }

u64 Poly::lc() const {
  require_internal(!c_.empty(), "leading coefficient of zero polynomial");
  return c_.back();
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += std::to_string(c_[k]);
    } else {
      if (c_[k] != 1) out += std::to_string(c_[k]) + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

namespace {
void check_same_modulus(const Poly& a, const Poly& b) {
  if (a.modulus() != b.modulus())
    fail(errc::modulus_mismatch, "polynomials over F_" + std::to_string(a.modulus()) + " and F_" +
                                     std::to_string(b.modulus()));
}
}  // namespace

Poly poly_add(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  Fp f(a.modulus());
  std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
  return Poly(a.modulus(), std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  Fp f(a.modulus());
  std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
  return Poly(a.modulus(), std::move(c));
}

Poly poly_neg(const Poly& a) {
  Fp f(a.modulus());
  std::vector<u64> c(a.c_);
  for (auto& x : c) x = f.neg(x);
  return Poly(a.modulus(), std::move(c));
}

Poly poly_scale(const Poly& a, u64 s) {
  Fp f(a.modulus());
  s = f.reduce(s);
  std::vector<u64> c(a.c_);
  for (auto& x : c) x = f.mul(x, s);
  return Poly(a.modulus(), std::move(c));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.modulus());
  Fp f(a.modulus());
  std::vector<u64> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] = f.add(c[i + j], f.mul(a.c_[i], b.c_[j]));
  }
  return Poly(a.modulus(), std::move(c));
}

Poly poly_monic(const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(a, Fp(a.modulus()).inv(a.lc()));
}

Poly poly_derivative(const Poly& a) {
  if (a.deg() <= 0) return Poly::zero(a.modulus());
  Fp f(a.modulus());
  std::vector<u64> c(a.deg());
  for (int k = 1; k <= a.deg(); ++k) c[k - 1] = f.mul(a.coeff(k), f.reduce((u64)k));
  return Poly(a.modulus(), std::move(c));
}

u64 poly_eval(const Poly& a, u64 x) {
  Fp f(a.modulus());
  x = f.reduce(x);
  u64 r = 0;
  for (std::size_t k = a.coeffs().size(); k-- > 0;) r = f.add(f.mul(r, x), a.coeff(k));
  return r;
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  if (b.is_zero()) fail(errc::zero_inverse, "polynomial division by zero");
  if (a.deg() < b.deg()) return {Poly::zero(a.modulus()), a};
  Fp f(a.modulus());
  std::vector<u64> rem(a.coeffs());
  std::vector<u64> quot(a.deg() - b.deg() + 1, 0);
  u64 binv = f.inv(b.lc());
  for (int k = a.deg(); k >= b.deg(); --k) {
    u64 c = f.mul(rem[k], binv);
    if (c == 0) continue;
    quot[k - b.deg()] = c;
    for (int j = 0; j <= b.deg(); ++j)
      rem[k - b.deg() + j] = f.sub(rem[k - b.deg() + j], f.mul(c, b.coeff(j)));
  }
  return {Poly(a.modulus(), std::move(quot)), Poly(a.modulus(), std::move(rem))};
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(a, b);
  require_internal(r.is_zero(), "inexact polynomial division where exactness was guaranteed");
  return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  check_same_modulus(a, b);
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = poly_divmod(x, y).second;
    x = y;
    y = r;
  }
  return poly_monic(x);
}

Bezout poly_gcd_bezout(const Poly& f, const Poly& h) {
  check_same_modulus(f, h);
  u64 p = f.modulus();
  Poly r0 = f, r1 = h;
  Poly s0 = Poly::one(p), s1 = Poly::zero(p);
  Poly t0 = Poly::zero(p), t1 = Poly::one(p);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = r1;
    r1 = r;
    Poly s = poly_sub(s0, poly_mul(q, s1));
    s0 = s1;
    s1 = s;
    Poly t = poly_sub(t0, poly_mul(q, t1));
    t0 = t1;
    t1 = t;
  }
  if (r0.is_zero()) return {r0, s0, t0};  // gcd(0,0) = 0 with trivial certificate
  u64 scale = Fp(p).inv(r0.lc());
  return {poly_scale(r0, scale), poly_scale(s0, scale), poly_scale(t0, scale)};
}

Poly poly_powmod(const Poly& a, u64 e, const Poly& m) {
  require_internal(m.deg() >= 1, "poly_powmod needs deg(m) >= 1");
  Poly base = poly_divmod(a, m).second;
  Poly result = Poly::one(a.modulus());
  while (e) {
    if (e & 1) result = poly_divmod(poly_mul(result, base), m).second;
    base = poly_divmod(poly_mul(base, base), m).second;
    e >>= 1;
  }
  return result;
}

std::vector<std::pair<Poly, int>> poly_squarefree(const Poly& f) {
  if (f.deg() < 1) fail(errc::degree_too_low, "squarefree decomposition needs deg >= 1");
  if (f.modulus() <= (u64)f.deg())
    fail(errc::characteristic_too_small,
         "characteristic " + std::to_string(f.modulus()) + " <= degree " + std::to_string(f.deg()));
  // Yun's algorithm (valid since p > deg f, so no derivative collapse).
  Poly fm = poly_monic(f);
  Poly df = poly_derivative(fm);
  Poly u = poly_gcd(fm, df);
  Poly v = poly_div_exact(fm, u);
  Poly w = poly_div_exact(df, u);
  std::vector<std::pair<Poly, int>> out;
  int i = 1;
  while (v.deg() > 0) {
    Poly diff = poly_sub(w, poly_derivative(v));
    Poly h = poly_gcd(v, diff);
    if (h.deg() > 0) out.emplace_back(h, i);
    v = poly_div_exact(v, h);
    w = poly_div_exact(diff, h);
    ++i;
  }
  return out;
}

int poly_rational_root_count(const Poly& f) {
  if (f.is_zero()) fail(errc::degree_zero_input, "root count of the zero polynomial");
  if (f.deg() == 0) return 0;
  u64 p = f.modulus();
  // gcd(x^p - x, f) is the product of the distinct linear factors of f.
  Poly xp = poly_powmod(Poly::monomial(p, 1), p, f);
  Poly xpmx = poly_sub(xp, poly_divmod(Poly::monomial(p, 1), f).second);
  Poly g = poly_gcd(xpmx, f);
  return g.deg() < 0 ? 0 : g.deg();
}

std::optional<u64> poly_smallest_root(const Poly& f, u64 budget, bool require_simple) {
  if (f.is_zero()) fail(errc::degree_zero_input, "root scan of the zero polynomial");
  if (f.deg() == 0) return std::nullopt;
  u64 p = f.modulus();
  // Cheap existence pre-check saves the scan when there is nothing to find.
  if (poly_rational_root_count(f) == 0) return std::nullopt;
  Poly df = poly_derivative(f);
  u64 limit = std::min(p - 1, budget);
  for (u64 x = 0; x <= limit; ++x) {
    if (poly_eval(f, x) != 0) continue;
    if (require_simple && poly_eval(df, x) == 0) continue;
    return x;
  }
  return std::nullopt;
}

}  // namespace ropit
