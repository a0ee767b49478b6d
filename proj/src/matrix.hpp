#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"

namespace ropit {

// Dense row-major matrix over F_p.
class Mat {
public:
  Mat(u64 p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Mat identity(u64 p, std::size_t n);
  // Unit matrix e_i e_j^T.
  static Mat unit(u64 p, std::size_t n, std::size_t i, std::size_t j);
  static Mat from_rows(u64 p, const std::vector<std::vector<u64>>& rows);

  u64 modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  u64& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  u64 at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<u64>& flat() const { return a_; }
  std::vector<u64>& flat() { return a_; }

  bool is_zero() const;
  bool operator==(const Mat& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  std::string to_string() const;

private:
  u64 p_;
  std::size_t rows_, cols_;
  std::vector<u64> a_;
};

Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_neg(const Mat& a);
Mat mat_scale(const Mat& a, u64 s);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_pow(const Mat& a, u64 e);
Mat mat_transpose(const Mat& a);
u64 mat_trace(const Mat& a);

std::vector<u64> mat_apply(const Mat& a, const std::vector<u64>& v);        // A v
std::vector<u64> mat_apply_left(const std::vector<u64>& v, const Mat& a);   // v^T A

std::size_t mat_rank(const Mat& a);
u64 mat_det(const Mat& a);
std::optional<Mat> mat_inverse(const Mat& a);

// One solution x of A x = b (free variables set to zero); nullopt when
// inconsistent.
std::optional<std::vector<u64>> mat_solve(const Mat& a, const std::vector<u64>& b);

// Basis of the right kernel {x : A x = 0}.
std::vector<std::vector<u64>> mat_kernel(const Mat& a);

// Characteristic polynomial det(tI - M), monic, via Hessenberg reduction.
Poly mat_charpoly(const Mat& m);
// Minimal polynomial via Krylov annihilators on the standard basis.
Poly mat_minpoly(const Mat& m);
// Both at once, with the postcondition m(M) = 0 = c(M) checked.
std::pair<Poly, Poly> mat_min_char_poly(const Mat& m);

// Evaluate q(M).
Mat mat_poly_eval(const Poly& q, const Mat& m);

// Adjugate: adj(M) with M adj(M) = det(M) I, valid for singular M too
// (computed from the characteristic polynomial, a polynomial identity).
Mat mat_adjugate(const Mat& m);

}  // namespace ropit
