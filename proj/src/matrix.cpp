#include "matrix.hpp"

#include <algorithm>

namespace ropit {

namespace {
void check_same(const Mat& a, const Mat& b, bool need_same_shape) {
  if (a.modulus() != b.modulus())
    fail(errc::modulus_mismatch, "matrices over F_" + std::to_string(a.modulus()) + " and F_" +
                                     std::to_string(b.modulus()));
  if (need_same_shape && (a.rows() != b.rows() || a.cols() != b.cols()))
    fail(errc::invalid_params, "matrix shape mismatch");
}

void check_square(const Mat& a, const char* op) {
  if (!a.square()) fail(errc::non_square, std::string(op) + " needs a square matrix");
}
}  // namespace

Mat Mat::identity(u64 p, std::size_t n) {
  Mat m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::unit(u64 p, std::size_t n, std::size_t i, std::size_t j) {
  Mat m(p, n, n);
  m.at(i, j) = 1;
  return m;
}

Mat Mat::from_rows(u64 p, const std::vector<std::vector<u64>>& rows) {
  require_internal(!rows.empty(), "from_rows needs at least one row");
  Mat m(p, rows.size(), rows[0].size());
  Fp f(p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_internal(rows[i].size() == rows[0].size(), "ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = f.reduce(rows[i][j]);
  }
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](u64 x) { return x == 0; });
}

std::string Mat::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += " ";
      out += std::to_string(at(i, j));
    }
    out += "]";
    if (i + 1 < rows_) out += "\n";
  }
  return out;
}

Mat mat_add(const Mat& a, const Mat& b) {
  check_same(a, b, true);
  Fp f(a.modulus());
  Mat r = a;
  for (std::size_t k = 0; k < r.flat().size(); ++k) r.flat()[k] = f.add(a.flat()[k], b.flat()[k]);
  return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  check_same(a, b, true);
  Fp f(a.modulus());
  Mat r = a;
  for (std::size_t k = 0; k < r.flat().size(); ++k) r.flat()[k] = f.sub(a.flat()[k], b.flat()[k]);
  return r;
}

Mat mat_neg(const Mat& a) {
  Fp f(a.modulus());
  Mat r = a;
  for (auto& x : r.flat()) x = f.neg(x);
  return r;
}

Mat mat_scale(const Mat& a, u64 s) {
  Fp f(a.modulus());
  s = f.reduce(s);
  Mat r = a;
  for (auto& x : r.flat()) x = f.mul(x, s);
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  check_same(a, b, false);
  if (a.cols() != b.rows()) fail(errc::invalid_params, "inner dimensions differ");
  Fp f(a.modulus());
  Mat r(a.modulus(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      u64 aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(aik, b.at(k, j)));
    }
  return r;
}

Mat mat_pow(const Mat& a, u64 e) {
  check_square(a, "matrix power");
  Mat base = a;
  Mat r = Mat::identity(a.modulus(), a.rows());
  while (e) {
    if (e & 1) r = mat_mul(r, base);
    base = mat_mul(base, base);
    e >>= 1;
  }
  return r;
}

Mat mat_transpose(const Mat& a) {
  Mat r(a.modulus(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
  return r;
}

u64 mat_trace(const Mat& a) {
  check_square(a, "trace");
  Fp f(a.modulus());
  u64 t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) t = f.add(t, a.at(i, i));
  return t;
}

std::vector<u64> mat_apply(const Mat& a, const std::vector<u64>& v) {
  if (v.size() != a.cols()) fail(errc::invalid_params, "vector length mismatch");
  Fp f(a.modulus());
  std::vector<u64> r(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    u64 acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a.at(i, j), f.reduce(v[j])));
    r[i] = acc;
  }
  return r;
}

std::vector<u64> mat_apply_left(const std::vector<u64>& v, const Mat& a) {
  if (v.size() != a.rows()) fail(errc::invalid_params, "vector length mismatch");
  Fp f(a.modulus());
  std::vector<u64> r(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    u64 vi = f.reduce(v[i]);
    if (vi == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = f.add(r[j], f.mul(vi, a.at(i, j)));
  }
  return r;
}

namespace {

// Row-reduce in place; returns (rank, pivot column per pivot row).  When
// track_det is non-null, accumulates the determinant of the eliminated
// square matrix.
std::pair<std::size_t, std::vector<std::size_t>> row_reduce(Mat& m, u64* track_det) {
  Fp f(m.modulus());
  u64 det = 1;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rank, j));
      det = f.neg(det);
    }
    u64 pv = m.at(rank, col);
    det = f.mul(det, pv);
    u64 pinv = f.inv(pv);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) = f.mul(m.at(rank, j), pinv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || m.at(i, col) == 0) continue;
      u64 factor = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(rank, j)));
    }
    pivots.push_back(col);
    ++rank;
  }
  if (track_det) *track_det = det;
  return {rank, pivots};
}

}  // namespace

std::size_t mat_rank(const Mat& a) {
  Mat m = a;
  return row_reduce(m, nullptr).first;
}

u64 mat_det(const Mat& a) {
  check_square(a, "determinant");
  Mat m = a;
  u64 det = 0;
  auto [rank, pivots] = row_reduce(m, &det);
  (void)pivots;
  return rank == a.rows() ? det : 0;
}

std::optional<Mat> mat_inverse(const Mat& a) {
  check_square(a, "inverse");
  std::size_t n = a.rows();
  Mat aug(a.modulus(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto [rank, pivots] = row_reduce(aug, nullptr);
  // The identity block keeps [A | I] at full row rank regardless of A, so
  // invertibility is read off the pivot columns: A is invertible exactly when
  // all n pivots land inside the left block (then that block reduced to I).
  for (std::size_t i = 0; i < n; ++i)
    if (i >= rank || pivots[i] != i) return std::nullopt;
  Mat inv(a.modulus(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::optional<std::vector<u64>> mat_solve(const Mat& a, const std::vector<u64>& b) {
  if (b.size() != a.rows()) fail(errc::invalid_params, "rhs length mismatch");
  Mat aug(a.modulus(), a.rows(), a.cols() + 1);
  Fp f(a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = f.reduce(b[i]);
  }
  auto [rank, pivots] = row_reduce(aug, nullptr);
  for (std::size_t r = 0; r < rank; ++r) {
    if (pivots[r] == a.cols()) return std::nullopt;  // pivot in the rhs column
  }
  std::vector<u64> x(a.cols(), 0);
  for (std::size_t r = 0; r < rank; ++r) x[pivots[r]] = aug.at(r, a.cols());
  return x;
}

std::vector<std::vector<u64>> mat_kernel(const Mat& a) {
  Mat m = a;
  auto [rank, pivots] = row_reduce(m, nullptr);
  Fp f(a.modulus());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<u64> v(a.cols(), 0);
    v[free_col] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = f.neg(m.at(r, free_col));
    basis.push_back(std::move(v));
  }
  return basis;
}

Poly mat_charpoly(const Mat& m) {
  check_square(m, "characteristic polynomial");
  u64 p = m.modulus();
  std::size_t n = m.rows();
  if (n == 0) return Poly::one(p);
  Fp f(p);
  // Reduce to upper Hessenberg form by similarity transforms.
  Mat h = m;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::size_t piv = k + 1;
    while (piv < n && h.at(piv, k) == 0) ++piv;
    if (piv == n) continue;
    if (piv != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h.at(piv, j), h.at(k + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h.at(i, piv), h.at(i, k + 1));
    }
    u64 inv = f.inv(h.at(k + 1, k));
    for (std::size_t i = k + 2; i < n; ++i) {
      u64 factor = f.mul(h.at(i, k), inv);
      if (factor == 0) continue;
      // row_i -= factor * row_{k+1}; col_{k+1} += factor * col_i  (similarity)
      for (std::size_t j = 0; j < n; ++j) h.at(i, j) = f.sub(h.at(i, j), f.mul(factor, h.at(k + 1, j)));
      for (std::size_t i2 = 0; i2 < n; ++i2)
        h.at(i2, k + 1) = f.add(h.at(i2, k + 1), f.mul(factor, h.at(i2, i)));
    }
  }
  // Leading-principal charpoly recurrence for Hessenberg matrices.
  std::vector<Poly> cp;
  cp.push_back(Poly::one(p));
  for (std::size_t k = 1; k <= n; ++k) {
    Poly t_minus = Poly(p, {f.neg(h.at(k - 1, k - 1)), 1});
    Poly pk = poly_mul(t_minus, cp[k - 1]);
    u64 subprod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      subprod = f.mul(subprod, h.at(i + 1, i));
      if (subprod == 0) break;
      u64 coeff = f.mul(h.at(i, k - 1), subprod);
      if (coeff == 0) continue;
      pk = poly_sub(pk, poly_scale(cp[i], coeff));
    }
    cp.push_back(pk);
  }
  return cp[n];
}

namespace {

// Monic annihilator of v under M: the smallest-degree monic q with q(M)v = 0.
Poly krylov_annihilator(const Mat& m, const std::vector<u64>& v0) {
  u64 p = m.modulus();
  std::size_t n = m.rows();
  Fp f(p);
  // Reduced basis rows with pivot positions; each row carries the polynomial
  // expressing it as q(M) v0.
  std::vector<std::vector<u64>> rows;
  std::vector<std::size_t> pivot_of_row;
  std::vector<Poly> poly_of_row;
  std::vector<u64> cur = v0;
  for (std::size_t step = 0; step <= n; ++step) {
    std::vector<u64> red = cur;
    Poly q = Poly::monomial(p, step);
    for (std::size_t rix = 0; rix < rows.size(); ++rix) {
      u64 c = red[pivot_of_row[rix]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) red[j] = f.sub(red[j], f.mul(c, rows[rix][j]));
      q = poly_sub(q, poly_scale(poly_of_row[rix], c));
    }
    std::size_t piv = 0;
    while (piv < n && red[piv] == 0) ++piv;
    if (piv == n) return q;  // dependence found: q(M) v0 = 0, q monic of degree `step`
    u64 inv = f.inv(red[piv]);
    for (auto& x : red) x = f.mul(x, inv);
    rows.push_back(std::move(red));
    pivot_of_row.push_back(piv);
    poly_of_row.push_back(poly_scale(q, inv));
    cur = mat_apply(m, cur);
  }
  fail(errc::internal_error, "krylov annihilator not found within n+1 steps");
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.modulus());
  Poly g = poly_gcd(a, b);
  return poly_monic(poly_div_exact(poly_mul(a, b), g));
}

}  // namespace

Poly mat_minpoly(const Mat& m) {
  check_square(m, "minimal polynomial");
  u64 p = m.modulus();
  std::size_t n = m.rows();
  Poly acc = Poly::one(p);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<u64> e(n, 0);
    e[i] = 1;
    acc = poly_lcm(acc, krylov_annihilator(m, e));
    if ((std::size_t)acc.deg() == n) break;  // cannot grow past the charpoly degree
  }
  return acc;
}

Mat mat_poly_eval(const Poly& q, const Mat& m) {
  check_square(m, "polynomial evaluation");
  std::size_t n = m.rows();
  Mat acc(m.modulus(), n, n);
  for (std::size_t k = q.coeffs().size(); k-- > 0;) {
    acc = mat_mul(acc, m);
    if (q.coeff(k) != 0)
      acc = mat_add(acc, mat_scale(Mat::identity(m.modulus(), n), q.coeff(k)));
  }
  return acc;
}

std::pair<Poly, Poly> mat_min_char_poly(const Mat& m) {
  Poly mp = mat_minpoly(m);
  Poly cp = mat_charpoly(m);
  require_internal(mat_poly_eval(mp, m).is_zero(), "minimal polynomial does not annihilate");
  require_internal(mat_poly_eval(cp, m).is_zero(), "characteristic polynomial does not annihilate");
  require_internal(poly_divmod(cp, mp).second.is_zero(), "minpoly does not divide charpoly");
  return {mp, cp};
}

Mat mat_adjugate(const Mat& m) {
  check_square(m, "adjugate");
  u64 p = m.modulus();
  std::size_t n = m.rows();
  if (n == 0) fail(errc::invalid_params, "adjugate of an empty matrix");
  if (n == 1) return Mat::identity(p, 1);
  // charpoly(t) = t^n + c_{n-1} t^{n-1} + ... + c_0;
  // adj(M) = (-1)^{n-1} (M^{n-1} + c_{n-1} M^{n-2} + ... + c_1 I).
  Poly cp = mat_charpoly(m);
  Fp f(p);
  Mat acc(p, n, n);
  for (std::size_t k = n; k >= 1; --k) {
    acc = mat_mul(acc, m);
    u64 ck = cp.coeff(k);
    if (ck != 0) acc = mat_add(acc, mat_scale(Mat::identity(p, n), ck));
    if (k == 1) break;
  }
  if ((n - 1) % 2 == 1) acc = mat_neg(acc);
  return acc;
}

}  // namespace ropit
