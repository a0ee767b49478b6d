// Two-variable elimination machinery: resultants and discriminants computed
// fraction-free over F_p[lambda], polynomial matrices, and the pencil
// characteristic/adjugate pair with its defining identities.

#include <random>
#include <vector>

#include "doctest.h"
#include "bipoly.hpp"

using namespace ropit;

namespace {

// mu - c for a scalar c.
MuPoly mu_linear(u64 p, u64 c) {
  return MuPoly(p, {Poly::constant(p, (p - c % p) % p), Poly::one(p)});
}

// mu - f(lambda).
MuPoly mu_minus(const Poly& f) {
  return MuPoly(f.modulus(), {poly_neg(f), Poly::one(f.modulus())});
}

Mat random_mat(std::mt19937_64& gen, u64 p, std::size_t n) {
  Mat m(p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rnd_below(gen, p);
  return m;
}

}  // namespace

TEST_CASE("mu-polynomial arithmetic and evaluation") {
  u64 p = 7;
  MuPoly f = mu_mul(mu_linear(p, 2), mu_linear(p, 3));  // (mu-2)(mu-3) = mu^2 - 5mu + 6
  CHECK(f.deg_mu() == 2);
  CHECK(f.coeff(0) == Poly::constant(p, 6));
  CHECK(f.coeff(1) == Poly::constant(p, 2));  // -5 = 2 mod 7
  CHECK(f.coeff(2) == Poly::one(p));
  CHECK(mu_eval(f, 2).is_zero());
  CHECK(mu_eval2(f, 1, 0) == 2);  // (1-2)(1-3) = 2
  CHECK(mu_derivative(f) == MuPoly(p, {Poly::constant(p, 2), Poly::constant(p, 2)}));
  CHECK(mu_sub(f, f).is_zero());
  CHECK(MuPoly::mu_monomial(p, 2).deg_mu() == 2);
  CHECK(mu_eval(MuPoly::from_poly(Poly::monomial(p, 3)), 5) == Poly::monomial(p, 3));
}

TEST_CASE("resultant oracles for linear pairs") {
  u64 p = 7;
  // Res(mu - 2, mu - 3) = 2 - 3 = -1 = 6 mod 7.
  CHECK(sylvester_resultant(mu_linear(p, 2), mu_linear(p, 3)) == Poly::constant(p, 6));
  // Equal roots: resultant vanishes.
  CHECK(sylvester_resultant(mu_linear(p, 4), mu_linear(p, 4)).is_zero());
  // Res(mu - lambda, mu - (2 lambda + 1)) = lambda - (2 lambda + 1) = -lambda - 1.
  Poly lam = Poly::monomial(p, 1);
  Poly two_lam_1 = Poly(p, {1, 2});
  Poly want(p, {p - 1, p - 1});  // -1 - lambda
  CHECK(sylvester_resultant(mu_minus(lam), mu_minus(two_lam_1)) == want);
}

TEST_CASE("resultant equals the product of evaluations at split roots") {
  u64 p = 101;
  std::mt19937_64 gen(11);
  for (int round = 0; round < 100; ++round) {
    // f = prod (mu - a_i) with scalar roots; g arbitrary with scalar coeffs.
    std::size_t k = 1 + rnd_below(gen, 3);
    std::vector<u64> roots(k);
    MuPoly f = MuPoly::from_poly(Poly::one(p));
    for (auto& a : roots) {
      a = rnd_below(gen, p);
      f = mu_mul(f, mu_linear(p, a));
    }
    std::size_t dg = 1 + rnd_below(gen, 3);
    std::vector<Poly> gc;
    for (std::size_t i = 0; i <= dg; ++i) gc.push_back(Poly::constant(p, rnd_below(gen, p)));
    gc.back() = Poly::one(p);
    MuPoly g(p, gc);
    Fp field(p);
    u64 expect = 1;
    for (u64 a : roots) expect = field.mul(expect, poly_eval(mu_eval(g, a), 0));
    Poly res = sylvester_resultant(f, g);
    CHECK(res == Poly::constant(p, expect));
  }
}

TEST_CASE("resultant vanishes exactly on common-root parameters") {
  u64 p = 101;
  // f = mu - lambda, g = mu - 5: common root iff lambda = 5.
  Poly res = sylvester_resultant(mu_minus(Poly::monomial(p, 1)), mu_linear(p, 5));
  CHECK(res.deg() == 1);
  CHECK(poly_eval(res, 5) == 0);
  for (u64 l = 0; l < 20; ++l)
    if (l != 5) CHECK(poly_eval(res, l) != 0);
}

TEST_CASE("discriminant oracles") {
  u64 p = 101;
  // Disc(mu^2 - 1) = 4.
  MuPoly f = mu_mul(mu_linear(p, 1), mu_linear(p, p - 1));
  CHECK(discriminant_mu(f) == Poly::constant(p, 4));
  // Disc((mu - lambda)(mu - 2 lambda - 1)) = (lambda + 1)^2.
  MuPoly g = mu_mul(mu_minus(Poly::monomial(p, 1)), mu_minus(Poly(p, {1, 2})));
  CHECK(discriminant_mu(g) == Poly(p, {1, 2, 1}));
  // Repeated root: discriminant is identically zero.
  MuPoly h = mu_mul(mu_linear(p, 1), mu_linear(p, 1));
  CHECK(discriminant_mu(h).is_zero());
}

TEST_CASE("degenerate elimination inputs are rejected") {
  u64 p = 7;
  MuPoly scalar = MuPoly::from_poly(Poly::constant(p, 3));
  CHECK_THROWS_AS((void)sylvester_resultant(scalar, scalar), Error);
  try {
    (void)sylvester_resultant(scalar, scalar);
  } catch (const Error& e) {
    CHECK(e.code() == errc::degree_zero_input);
  }
  CHECK_THROWS_AS((void)discriminant_mu(mu_linear(p, 1)), Error);
  try {
    (void)discriminant_mu(mu_linear(p, 1));
  } catch (const Error& e) {
    CHECK(e.code() == errc::degree_too_low);
  }
}

TEST_CASE("polynomial matrices evaluate and multiply consistently") {
  u64 p = 101;
  std::mt19937_64 gen(313);
  for (int round = 0; round < 100; ++round) {
    std::size_t n = 1 + rnd_below(gen, 4);
    PolyMat x = PolyMat::affine(random_mat(gen, p, n), random_mat(gen, p, n));
    PolyMat y = PolyMat::affine(random_mat(gen, p, n), random_mat(gen, p, n));
    u64 l = rnd_below(gen, p);
    CHECK(pm_mul(x, y).eval(l) == mat_mul(x.eval(l), y.eval(l)));
    CHECK(poly_eval(pm_trace(x), l) == mat_trace(x.eval(l)));
    CHECK(poly_eval(pm_det(x), l) == mat_det(x.eval(l)));
  }
}

TEST_CASE("leading principal corners truncate consistently") {
  u64 p = 101;
  std::mt19937_64 gen(555);
  PolyMat x = PolyMat::affine(random_mat(gen, p, 4), random_mat(gen, p, 4));
  PolyMat c = x.leading_principal(2);
  CHECK(c.size() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(c.at(i, j) == x.at(i, j));
}

TEST_CASE("pencil characteristic data satisfies its defining identities") {
  u64 p = 9973;
  std::mt19937_64 gen(17);
  for (int round = 0; round < 60; ++round) {
    std::size_t w = 1 + rnd_below(gen, 4);
    PolyMat x = PolyMat::affine(random_mat(gen, p, w), random_mat(gen, p, w));
    PencilCharData data = pencil_char_adj(x);
    CHECK(data.charpoly.deg_mu() == (int)w);
    CHECK(data.charpoly.coeff(w) == Poly::one(p));  // monic in mu
    REQUIRE(data.adj_terms.size() == w);

    // At any scalar (mu0, lambda0): adj(mu0 I - X(l0)) from the terms equals
    // the matrix adjugate, and (mu0 I - X) adj = charpoly * I.
    for (int probe = 0; probe < 3; ++probe) {
      u64 mu0 = rnd_below(gen, p), l0 = rnd_below(gen, p);
      Mat xl = x.eval(l0);
      Mat shifted = mat_sub(mat_scale(Mat::identity(p, w), mu0), xl);
      Fp field(p);
      Mat adj(p, w, w);
      u64 mu_pow = 1;
      // adj = sum_k mu0^{w-1-k} B_k evaluated at lambda0.
      for (std::size_t k = 0; k < w; ++k) {
        Mat bk = data.adj_terms[w - 1 - k].eval(l0);
        adj = mat_add(adj, mat_scale(bk, mu_pow));
        mu_pow = field.mul(mu_pow, mu0);
      }
      CHECK(adj == mat_adjugate(shifted));
      u64 chi = mu_eval2(data.charpoly, mu0, l0);
      CHECK(mat_mul(shifted, adj) == mat_scale(Mat::identity(p, w), chi));
    }

    // Entry extraction matches the stored terms.
    MuPoly entry = pencil_adj_entry(data, 0, 0);
    CHECK(entry.deg_mu() <= (int)w - 1);
    u64 mu0 = rnd_below(gen, p), l0 = rnd_below(gen, p);
    Mat shifted = mat_sub(mat_scale(Mat::identity(p, w), mu0), x.eval(l0));
    CHECK(mu_eval2(entry, mu0, l0) == mat_adjugate(shifted).at(0, 0));
  }
}

TEST_CASE("charpoly from the pencil matches the scalar charpoly on slices") {
  u64 p = 9973;
  std::mt19937_64 gen(23);
  for (int round = 0; round < 50; ++round) {
    std::size_t w = 1 + rnd_below(gen, 4);
    PolyMat x = PolyMat::affine(random_mat(gen, p, w), random_mat(gen, p, w));
    PencilCharData data = pencil_char_adj(x);
    u64 l0 = rnd_below(gen, p);
    Poly slice = mat_charpoly(x.eval(l0));
    for (std::size_t k = 0; k <= w; ++k) CHECK(poly_eval(data.charpoly.coeff(k), l0) == slice.coeff(k));
  }
}

TEST_CASE("pencil machinery requires p above the matrix size") {
  PolyMat tiny = PolyMat::identity(2, 3);  // p = 2 <= w = 3
  CHECK_THROWS_AS((void)pencil_char_adj(tiny), Error);
}
