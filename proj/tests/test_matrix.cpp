// Dense matrices over F_p: rank/det/inverse/solve consistency, minimal and
// characteristic polynomials with annihilation checks, and the adjugate
// identity including singular and rank-one inputs.

#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "matrix.hpp"

using namespace ropit;

namespace {

Mat random_mat(std::mt19937_64& gen, u64 p, std::size_t n) {
  Mat m(p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rnd_below(gen, p);
  return m;
}

Mat diag(u64 p, const std::vector<u64>& entries) {
  Mat m(p, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i] % p;
  return m;
}

}  // namespace

TEST_CASE("constructors and elementwise operations") {
  Mat i3 = Mat::identity(101, 3);
  CHECK(mat_trace(i3) == 3);
  CHECK(mat_det(i3) == 1);
  CHECK(Mat::unit(101, 3, 0, 2).at(0, 2) == 1);
  CHECK(Mat::unit(101, 3, 0, 2).flat() == std::vector<u64>({0, 0, 1, 0, 0, 0, 0, 0, 0}));

  Mat a = Mat::from_rows(7, {{1, 2}, {3, 4}});
  CHECK(mat_add(a, mat_neg(a)).is_zero());
  CHECK(mat_sub(a, a).is_zero());
  CHECK(mat_scale(a, 2) == Mat::from_rows(7, {{2, 4}, {6, 1}}));
  CHECK(mat_transpose(a) == Mat::from_rows(7, {{1, 3}, {2, 4}}));
}

TEST_CASE("multiplication, powers, and vector application") {
  Mat a = Mat::from_rows(7, {{1, 2}, {3, 4}});
  Mat b = Mat::from_rows(7, {{0, 1}, {1, 0}});
  CHECK(mat_mul(a, b) == Mat::from_rows(7, {{2, 1}, {4, 3}}));
  CHECK(mat_pow(a, 0) == Mat::identity(7, 2));
  CHECK(mat_pow(a, 1) == a);
  CHECK(mat_pow(a, 5) == mat_mul(a, mat_mul(a, mat_mul(a, mat_mul(a, a)))));

  std::vector<u64> v{1, 1};
  CHECK(mat_apply(a, v) == std::vector<u64>({3, 0}));        // (1+2, 3+4) mod 7
  CHECK(mat_apply_left(v, a) == std::vector<u64>({4, 6}));   // (1+3, 2+4)
}

TEST_CASE("rank, determinant, inverse, solve, kernel agree") {
  std::mt19937_64 gen(31337);
  for (int round = 0; round < 200; ++round) {
    u64 p = (round % 2) ? 101 : 9973;
    std::size_t n = 1 + rnd_below(gen, 5);
    Mat a = random_mat(gen, p, n);
    u64 det = mat_det(a);
    std::size_t rank = mat_rank(a);
    auto inv = mat_inverse(a);
    CHECK((det != 0) == (rank == n));
    CHECK((det != 0) == inv.has_value());
    if (inv) {
      CHECK(mat_mul(a, *inv) == Mat::identity(p, n));
      CHECK(mat_mul(*inv, a) == Mat::identity(p, n));
    }
    // Solve against a known image point.
    std::vector<u64> x(n);
    for (auto& v : x) v = rnd_below(gen, p);
    std::vector<u64> b = mat_apply(a, x);
    auto sol = mat_solve(a, b);
    REQUIRE(sol.has_value());
    CHECK(mat_apply(a, *sol) == b);
    // Kernel vectors annihilate; kernel dimension complements the rank.
    auto kernel = mat_kernel(a);
    CHECK(kernel.size() == n - rank);
    for (auto& k : kernel) {
      bool nonzero = false;
      for (u64 v : k) nonzero = nonzero || v != 0;
      CHECK(nonzero);
      for (u64 v : mat_apply(a, k)) CHECK(v == 0);
    }
  }
}

TEST_CASE("inconsistent systems are detected") {
  // x + y = 1, x + y = 2 has no solution.
  Mat a = Mat::from_rows(101, {{1, 1}, {1, 1}});
  CHECK_FALSE(mat_solve(a, {1, 2}).has_value());
  CHECK(mat_solve(a, {1, 1}).has_value());
}

TEST_CASE("minimal and characteristic polynomial oracles") {
  u64 p = 101;
  SUBCASE("diag(1,1,2)") {
    auto [minp, charp] = mat_min_char_poly(diag(p, {1, 1, 2}));
    Poly t1 = Poly::linear_root(p, 1), t2 = Poly::linear_root(p, 2);
    CHECK(minp == poly_mul(t1, t2));
    CHECK(charp == poly_mul(poly_mul(t1, t1), t2));
  }
  SUBCASE("identity") {
    auto [minp, charp] = mat_min_char_poly(Mat::identity(p, 3));
    CHECK(minp == Poly::linear_root(p, 1));
    CHECK(charp == poly_mul(Poly::linear_root(p, 1),
                            poly_mul(Poly::linear_root(p, 1), Poly::linear_root(p, 1))));
  }
  SUBCASE("nilpotent Jordan block") {
    Mat j(p, 3, 3);
    j.at(0, 1) = 1;
    j.at(1, 2) = 1;
    auto [minp, charp] = mat_min_char_poly(j);
    CHECK(minp == Poly::monomial(p, 3));
    CHECK(charp == Poly::monomial(p, 3));
  }
}

TEST_CASE("annihilation and divisibility on random matrices") {
  std::mt19937_64 gen(777);
  for (int round = 0; round < 500; ++round) {
    u64 p = (round % 3 == 0) ? 101 : 9973;
    std::size_t n = 1 + rnd_below(gen, 6);
    Mat m = random_mat(gen, p, n);
    auto [minp, charp] = mat_min_char_poly(m);
    CHECK(charp.deg() == (int)n);
    CHECK(charp.lc() == 1);
    CHECK(minp.lc() == 1);
    CHECK(mat_poly_eval(minp, m).is_zero());
    CHECK(mat_poly_eval(charp, m).is_zero());
    CHECK(poly_divmod(charp, minp).second.is_zero());  // minpoly divides charpoly
  }
}

TEST_CASE("adjugate identity and pinned values") {
  u64 p = 101;
  SUBCASE("2x2 diagonal swaps entries") {
    CHECK(mat_adjugate(diag(p, {0, p - 1})) == diag(p, {p - 1, 0}));
    CHECK(mat_adjugate(diag(p, {3, 5})) == diag(p, {5, 3}));
  }
  SUBCASE("identity is self-adjugate") { CHECK(mat_adjugate(Mat::identity(p, 3)) == Mat::identity(p, 3)); }
  SUBCASE("rank-one 3x3 has zero adjugate") {
    Mat m(p, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = (u64)((i + 1) * (j + 2) % p);
    REQUIRE(mat_rank(m) == 1);
    CHECK(mat_adjugate(m).is_zero());
  }
  SUBCASE("M adj(M) = det(M) I on random matrices") {
    std::mt19937_64 gen(5150);
    for (int round = 0; round < 200; ++round) {
      std::size_t n = 1 + rnd_below(gen, 5);
      Mat m = random_mat(gen, p, n);
      Mat expect = mat_scale(Mat::identity(p, n), mat_det(m));
      CHECK(mat_mul(m, mat_adjugate(m)) == expect);
      CHECK(mat_mul(mat_adjugate(m), m) == expect);
    }
  }
  SUBCASE("adjugate of the resolvent at a simple eigenvalue has rank one") {
    Mat m = diag(p, {1, 2, 3});
    Mat shifted = mat_sub(mat_scale(Mat::identity(p, 3), 2), m);  // 2I - M
    Mat adj = mat_adjugate(shifted);
    CHECK(mat_rank(adj) == 1);
    CHECK(adj == diag(p, {0, p - 1, 0}));  // (2-2 slot carries (2-1)(2-3) = -1)
  }
}

TEST_CASE("non-square inputs are rejected where squareness matters") {
  Mat rect(7, 2, 3);
  CHECK_THROWS_AS((void)mat_det(rect), Error);
  CHECK_THROWS_AS((void)mat_minpoly(rect), Error);
  CHECK_THROWS_AS((void)mat_adjugate(rect), Error);
  try {
    (void)mat_det(rect);
  } catch (const Error& e) {
    CHECK(e.code() == errc::non_square);
  }
}
