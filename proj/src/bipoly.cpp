#include "bipoly.hpp"

#include <algorithm>

namespace ropit {

MuPoly::MuPoly(u64 p, std::vector<Poly> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.modulus() != p_) fail(errc::modulus_mismatch, "mixed moduli in MuPoly coefficients");
  trim();
}

void MuPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

MuPoly MuPoly::from_poly(const Poly& c) { return MuPoly(c.modulus(), {c}); }

MuPoly MuPoly::mu_monomial(u64 p, std::size_t k) {
  std::vector<Poly> c(k + 1, Poly::zero(p));
  c[k] = Poly::one(p);
  return MuPoly(p, std::move(c));
}

int MuPoly::max_lambda_deg() const {
  int d = -1;
  for (const auto& c : c_) d = std::max(d, c.deg());
  return d;
}

bool MuPoly::operator==(const MuPoly& o) const {
  if (p_ != o.p_ || c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

std::string MuPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += "(" + c_[k].to_string("lambda") + ")";
    } else {
      out += "(" + c_[k].to_string("lambda") + ")*mu";
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

namespace {
void check_same(const MuPoly& a, const MuPoly& b) {
  if (a.modulus() != b.modulus()) fail(errc::modulus_mismatch, "MuPoly modulus mismatch");
}
}  // namespace

MuPoly mu_add(const MuPoly& a, const MuPoly& b) {
  check_same(a, b);
  std::vector<Poly> c;
  std::size_t n = std::max(a.c_.size(), b.c_.size());
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(poly_add(a.coeff(i), b.coeff(i)));
  return MuPoly(a.modulus(), std::move(c));
}

MuPoly mu_sub(const MuPoly& a, const MuPoly& b) {
  check_same(a, b);
  std::vector<Poly> c;
  std::size_t n = std::max(a.c_.size(), b.c_.size());
  c.reserve(n);
  for (std::size_t i = 0; i < n; ++i) c.push_back(poly_sub(a.coeff(i), b.coeff(i)));
  return MuPoly(a.modulus(), std::move(c));
}

MuPoly mu_mul(const MuPoly& a, const MuPoly& b) {
  check_same(a, b);
  if (a.is_zero() || b.is_zero()) return MuPoly::zero(a.modulus());
  std::vector<Poly> c(a.c_.size() + b.c_.size() - 1, Poly::zero(a.modulus()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] = poly_add(c[i + j], poly_mul(a.c_[i], b.c_[j]));
  }
  return MuPoly(a.modulus(), std::move(c));
}

MuPoly mu_scale(const MuPoly& a, const Poly& s) {
  std::vector<Poly> c;
  c.reserve(a.c_.size());
  for (const auto& x : a.c_) c.push_back(poly_mul(x, s));
  return MuPoly(a.modulus(), std::move(c));
}

MuPoly mu_derivative(const MuPoly& a) {
  if (a.deg_mu() <= 0) return MuPoly::zero(a.modulus());
  std::vector<Poly> c;
  c.reserve(a.deg_mu());
  for (int k = 1; k <= a.deg_mu(); ++k) c.push_back(poly_scale(a.coeff(k), (u64)k));
  return MuPoly(a.modulus(), std::move(c));
}

Poly mu_eval(const MuPoly& a, u64 mu) {
  Poly r = Poly::zero(a.modulus());
  Fp f(a.modulus());
  mu = f.reduce(mu);
  for (int k = a.deg_mu(); k >= 0; --k) r = poly_add(poly_scale(r, mu), a.coeff(k));
  return r;
}

u64 mu_eval2(const MuPoly& a, u64 mu, u64 lambda) { return poly_eval(mu_eval(a, mu), lambda); }

namespace {

// Determinant of a square matrix of Poly entries by fraction-free Bareiss
// elimination with row pivoting.  All divisions are exact.
Poly bareiss_det(std::vector<std::vector<Poly>>& m, u64 p) {
  std::size_t n = m.size();
  if (n == 0) return Poly::one(p);
  bool negate = false;
  Poly prev = Poly::one(p);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return Poly::zero(p);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = poly_sub(poly_mul(m[k][k], m[i][j]), poly_mul(m[i][k], m[k][j]));
        m[i][j] = poly_div_exact(num, prev);
      }
      m[i][k] = Poly::zero(p);
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  return negate ? poly_neg(det) : det;
}

}  // namespace

Poly sylvester_resultant(const MuPoly& f, const MuPoly& g) {
  check_same(f, g);
  u64 p = f.modulus();
  if (f.is_zero() || g.is_zero()) return Poly::zero(p);
  int m = f.deg_mu(), n = g.deg_mu();
  if (m == 0 && n == 0)
    fail(errc::degree_zero_input, "resultant of two mu-constant polynomials");
  // Res(f, c) = c^deg(f) for a mu-constant c.
  if (n == 0) {
    Poly r = Poly::one(p);
    for (int i = 0; i < m; ++i) r = poly_mul(r, g.coeff(0));
    return r;
  }
  if (m == 0) {
    Poly r = Poly::one(p);
    for (int i = 0; i < n; ++i) r = poly_mul(r, f.coeff(0));
    return r;
  }
  std::size_t size = (std::size_t)(m + n);
  std::vector<std::vector<Poly>> s(size, std::vector<Poly>(size, Poly::zero(p)));
  // n rows of f coefficients (descending), then m rows of g coefficients.
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) s[row][row + k] = f.coeff((std::size_t)(m - k));
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k) s[n + row][row + k] = g.coeff((std::size_t)(n - k));
  return bareiss_det(s, p);
}

Poly discriminant_mu(const MuPoly& f) {
  if (f.deg_mu() < 2) fail(errc::degree_too_low, "discriminant needs mu-degree >= 2");
  Poly res = sylvester_resultant(f, mu_derivative(f));
  Poly lc = f.coeff((std::size_t)f.deg_mu());
  Poly disc = poly_div_exact(res, lc);
  int d = f.deg_mu();
  if ((d * (d - 1) / 2) % 2 == 1) disc = poly_neg(disc);
  return disc;
}

PolyMat PolyMat::identity(u64 p, std::size_t n) {
  PolyMat m(p, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::one(p);
  return m;
}

PolyMat PolyMat::affine(const Mat& x0, const Mat& x1) {
  if (x0.modulus() != x1.modulus()) fail(errc::modulus_mismatch, "affine pencil modulus mismatch");
  if (!x0.square() || x0.rows() != x1.rows() || x0.cols() != x1.cols())
    fail(errc::invalid_params, "affine pencil needs equal square matrices");
  PolyMat m(x0.modulus(), x0.rows());
  for (std::size_t i = 0; i < x0.rows(); ++i)
    for (std::size_t j = 0; j < x0.cols(); ++j)
      m.at(i, j) = Poly(x0.modulus(), {x0.at(i, j), x1.at(i, j)});
  return m;
}

PolyMat PolyMat::leading_principal(std::size_t r) const {
  require_internal(r <= n_, "leading principal size exceeds matrix");
  PolyMat m(p_, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m.at(i, j) = at(i, j);
  return m;
}

Mat PolyMat::eval(u64 lambda) const {
  Mat m(p_, n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m.at(i, j) = poly_eval(at(i, j), lambda);
  return m;
}

int PolyMat::max_entry_deg() const {
  int d = -1;
  for (const auto& e : e_) d = std::max(d, e.deg());
  return d;
}

PolyMat pm_mul(const PolyMat& a, const PolyMat& b) {
  if (a.modulus() != b.modulus()) fail(errc::modulus_mismatch, "PolyMat modulus mismatch");
  if (a.size() != b.size()) fail(errc::invalid_params, "PolyMat size mismatch");
  PolyMat r(a.modulus(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) = poly_add(r.at(i, j), poly_mul(a.at(i, k), b.at(k, j)));
      }
    }
  return r;
}

Poly pm_trace(const PolyMat& a) {
  Poly t = Poly::zero(a.modulus());
  for (std::size_t i = 0; i < a.size(); ++i) t = poly_add(t, a.at(i, i));
  return t;
}

Poly pm_det(const PolyMat& a) {
  std::vector<std::vector<Poly>> m(a.size(), std::vector<Poly>(a.size(), Poly::zero(a.modulus())));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[i][j] = a.at(i, j);
  return bareiss_det(m, a.modulus());
}

PencilCharData pencil_char_adj(const PolyMat& x) {
  u64 p = x.modulus();
  std::size_t w = x.size();
  if (w == 0) fail(errc::invalid_params, "empty pencil");
  if (p <= w)
    fail(errc::characteristic_too_small,
         "characteristic must exceed the matrix size for the Leverrier recursion");
  Fp f(p);
  // Faddeev-LeVerrier over the commutative ring F_p[lambda]:
  //   B_0 = I;  c_0 = 1
  //   M_k = X B_{k-1};  c_k = -tr(M_k)/k;  B_k = M_k + c_k I
  // charpoly(mu) = sum_k c_k mu^{w-k};  adj(mu I - X) = sum_k mu^{w-1-k} B_k.
  PencilCharData out{MuPoly::zero(p), {}};
  std::vector<Poly> c(w + 1, Poly::zero(p));
  c[0] = Poly::one(p);
  PolyMat b = PolyMat::identity(p, w);
  out.adj_terms.push_back(b);
  for (std::size_t k = 1; k <= w; ++k) {
    PolyMat mk = pm_mul(x, b);
    Poly ck = poly_scale(poly_neg(pm_trace(mk)), f.inv(f.reduce((u64)k)));
    c[k] = ck;
    b = mk;
    for (std::size_t i = 0; i < w; ++i) b.at(i, i) = poly_add(b.at(i, i), ck);
    if (k < w) out.adj_terms.push_back(b);
  }
  // The recursion must terminate with B_w = M_w + c_w I = 0 (Cayley-Hamilton).
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j)
      require_internal(b.at(i, j).is_zero(), "Leverrier recursion did not terminate at zero");
  std::vector<Poly> mu_coeffs(w + 1, Poly::zero(p));
  for (std::size_t k = 0; k <= w; ++k) mu_coeffs[w - k] = c[k];
  out.charpoly = MuPoly(p, std::move(mu_coeffs));
  return out;
}

MuPoly pencil_adj_entry(const PencilCharData& data, std::size_t i, std::size_t j) {
  u64 p = data.charpoly.modulus();
  std::size_t w = data.adj_terms.size();
  std::vector<Poly> c(w, Poly::zero(p));
  for (std::size_t k = 0; k < w; ++k) c[w - 1 - k] = data.adj_terms[k].at(i, j);
  return MuPoly(p, std::move(c));
}

}  // namespace ropit
