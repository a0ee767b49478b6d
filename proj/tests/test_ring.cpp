// The cyclic quotient F_p[lambda]/(lambda^r - 1): monomial arithmetic oracles,
// ring axioms on random elements, agreement of the convolution and transform
// multiplication paths, and evaluation at roots of unity as a homomorphism.

#include <random>
#include <vector>

#include "doctest.h"
#include "ring.hpp"

using namespace ropit;

namespace {

RingElem random_elem(std::mt19937_64& gen, const CyclicRing& ring) {
  std::vector<u64> c(ring.order());
  for (auto& v : c) v = rnd_below(gen, ring.modulus());
  return ring.from_coeffs(std::move(c));
}

}  // namespace

TEST_CASE("monomial exponents reduce modulo the ring order") {
  CyclicRing r7(7, 29);
  CHECK(r7.equal(r7.monomial(9), r7.monomial(2)));  // lambda^9 = lambda^2
  CHECK(r7.equal(r7.monomial(0), r7.one()));

  CyclicRing r5(5, 29);
  // 2^64 - 1 = 5 * 3689348814741910323, so the wrapped -1 reduces to 0.
  CHECK(r5.equal(r5.monomial((u64)-1), r5.one()));
  CHECK(r5.equal(r5.monomial(u64(1) << 63), r5.monomial(3)));  // 2^63 mod 5 = 3
  CHECK(r5.monomial(3, 2).c == std::vector<u64>({0, 0, 0, 2, 0}));
}

TEST_CASE("monomial products add exponents") {
  CyclicRing r5(5, 29);
  CHECK(r5.equal(r5.mul(r5.monomial(3), r5.monomial(4)), r5.monomial(2)));  // 3+4 = 7 = 2 mod 5

  CyclicRing r11(11, 23);
  for (u64 j = 0; j < 11; ++j)
    for (u64 k = 0; k < 11; ++k)
      CHECK(r11.equal(r11.mul(r11.monomial(j), r11.monomial(k)), r11.monomial(j + k)));
}

TEST_CASE("binomial square over a tiny order") {
  CyclicRing r3(3, 7);
  RingElem one_plus = r3.add(r3.one(), r3.monomial(1));
  RingElem sq = r3.mul(one_plus, one_plus);
  CHECK(sq.c == std::vector<u64>({1, 2, 1}));  // 1 + 2 lambda + lambda^2
}

TEST_CASE("lambda^r - 1 vanishes in the quotient") {
  for (u64 r : {3ull, 5ull, 7ull, 11ull}) {
    CyclicRing ring(r, 29);
    RingElem power = ring.one();
    for (u64 i = 0; i < r; ++i) power = ring.mul(power, ring.monomial(1));
    CHECK(ring.equal(power, ring.one()));
    CHECK(ring.is_zero(ring.sub(power, ring.one())));
  }
}

TEST_CASE("ring axioms hold on random triples") {
  CyclicRing ring(11, 101);
  std::mt19937_64 gen(404);
  for (int round = 0; round < 1000; ++round) {
    RingElem a = random_elem(gen, ring), b = random_elem(gen, ring), c = random_elem(gen, ring);
    CHECK(ring.equal(ring.mul(a, b), ring.mul(b, a)));
    CHECK(ring.equal(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c))));
    CHECK(ring.equal(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c))));
    CHECK(ring.equal(ring.mul(a, ring.one()), a));
    CHECK(ring.is_zero(ring.mul(a, ring.zero())));
    CHECK(ring.is_zero(ring.add(a, ring.neg(a))));
    CHECK(ring.equal(ring.scale(a, 3),
                     ring.add(a, ring.add(a, a))));
  }
}

TEST_CASE("transform path agrees with naive convolution when r divides p-1") {
  // 29 = 4*7 + 1 and 11 = 2*5 + 1.
  for (auto [r, p] : {std::pair<u64, u64>{7, 29}, {5, 11}, {7, 1009}}) {
    CyclicRing ring(r, p);
    REQUIRE(ring.has_transform());
    std::mt19937_64 gen(r * 1000 + p);
    for (int round = 0; round < 1000; ++round) {
      RingElem a = random_elem(gen, ring), b = random_elem(gen, ring);
      RingElem naive = ring.mul_naive(a, b);
      RingElem fast = ring.mul_transform(a, b);
      CHECK(ring.equal(naive, fast));
      CHECK(ring.equal(ring.mul(a, b), naive));  // dispatcher agrees too
    }
  }
}

TEST_CASE("transform availability tracks the arithmetic progression") {
  CHECK(CyclicRing(7, 29).has_transform());   // 7 | 28
  CHECK_FALSE(CyclicRing(7, 31).has_transform());  // 7 does not divide 30
  CHECK_FALSE(CyclicRing(5, 7).has_transform());
  CHECK_THROWS_AS((void)CyclicRing(7, 31).root_of_unity(), Error);
}

TEST_CASE("root of unity powers behave as a primitive r-th root") {
  CyclicRing ring(7, 29);
  u64 omega = ring.root_of_unity();
  Fp field(29);
  CHECK(field.pow(omega, u64(7)) == 1);
  for (u64 k = 1; k < 7; ++k) CHECK(field.pow(omega, k) != 1);  // primitive
  for (u64 k = 0; k < 20; ++k) CHECK(ring.root_power(k) == field.pow(omega, k % 7));
}

TEST_CASE("evaluation at a root of unity is a ring homomorphism") {
  CyclicRing ring(7, 29);
  std::mt19937_64 gen(2718);
  for (int round = 0; round < 300; ++round) {
    RingElem a = random_elem(gen, ring), b = random_elem(gen, ring);
    u64 j = rnd_below(gen, 7);
    Fp field(29);
    u64 va = ring.eval_at_root(a, j), vb = ring.eval_at_root(b, j);
    CHECK(ring.eval_at_root(ring.add(a, b), j) == field.add(va, vb));
    CHECK(ring.eval_at_root(ring.mul(a, b), j) == field.mul(va, vb));
  }
  // Monomials evaluate to root powers.
  for (u64 k = 0; k < 7; ++k)
    for (u64 j = 0; j < 7; ++j) CHECK(ring.eval_at_root(ring.monomial(k), j) == ring.root_power(k * j));
}

TEST_CASE("an element vanishing at every root is zero (and conversely)") {
  CyclicRing ring(7, 29);
  std::mt19937_64 gen(99);
  for (int round = 0; round < 200; ++round) {
    RingElem a = random_elem(gen, ring);
    bool all_zero = true;
    for (u64 j = 0; j < 7; ++j) all_zero = all_zero && ring.eval_at_root(a, j) == 0;
    CHECK(all_zero == ring.is_zero(a));  // the r-point evaluation is injective
  }
}

TEST_CASE("construction and mixing guards") {
  CHECK_THROWS_AS((void)CyclicRing(6, 29), Error);   // order must be prime
  CHECK_THROWS_AS((void)CyclicRing(7, 7), Error);    // r = p collapses the quotient
  CHECK_THROWS_AS((void)CyclicRing(7, 10), Error);   // p must be prime

  CyclicRing a(7, 29), b(5, 29), c(7, 43);
  CHECK_THROWS_AS((void)a.add(a.one(), b.one()), Error);
  CHECK_THROWS_AS((void)a.mul(a.one(), c.one()), Error);
  try {
    (void)a.add(a.one(), b.one());
  } catch (const Error& e) {
    CHECK(e.code() == errc::ring_mismatch);
  }
  CHECK_THROWS_AS((void)a.from_coeffs({1, 2, 3, 4, 5, 6, 7, 8}), Error);  // length > r
}

TEST_CASE("printing names the variable and skips zero terms") {
  CyclicRing ring(5, 29);
  CHECK(ring.to_string(ring.zero()) == "0");
  CHECK(ring.to_string(ring.one()) == "1");
  CHECK(ring.to_string(ring.monomial(2)) == "lambda^2");
  CHECK(ring.to_string(ring.monomial(2), "w") == "w^2");
}
