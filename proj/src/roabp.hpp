#pragma once

#include <map>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "ring.hpp"

namespace ropit {

// Width-w read-once oblivious branching program in variable order x_1..x_n:
//   C(x_1..x_n) = e_s^T (prod_i A_i(x_i)) e_t,
//   A_i(x_i) = sum_{j=0}^{d} layers[i][j] * x_i^j.
// Selectors are coordinate vectors, stored as 0-based indices.
struct Roabp {
  u64 p = 0;
  std::size_t w = 0, n = 0, d = 0;
  std::size_t s_index = 0, t_index = 0;
  // layers[i][j] is the w x w coefficient matrix of x_{i+1}^j.
  std::vector<std::vector<Mat>> layers;
};

// Shape/value sanity; throws InvalidParams on violations.
void roabp_validate(const Roabp& prog);

// Evaluate with x_i drawn from an arbitrary commutative ring containing F_p.
// The vector-chain never materializes a matrix product: cost per layer is
// (d+1) w^2 ring scalings plus (d+1) w ring multiplications.
template <class Ring>
typename Ring::Elem roabp_eval(const Roabp& prog, const Ring& ring,
                               const std::vector<typename Ring::Elem>& xs) {
  if (xs.size() != prog.n)
    fail(errc::arity_mismatch, "assignment length " + std::to_string(xs.size()) +
                                   " for a program on " + std::to_string(prog.n) + " variables");
  if (ring.modulus() != prog.p)
    fail(errc::ring_mismatch, "ring over F_" + std::to_string(ring.modulus()) +
                                  " used with a program over F_" + std::to_string(prog.p));
  using Elem = typename Ring::Elem;
  std::size_t w = prog.w;
  std::vector<Elem> row(w, ring.zero());
  row[prog.s_index] = ring.one();
  std::vector<Elem> powers;
  std::vector<Elem> combo(w, ring.zero());
  std::vector<Elem> next(w, ring.zero());
  for (std::size_t i = 0; i < prog.n; ++i) {
    powers.assign(1, ring.one());
    for (std::size_t c = 1; c <= prog.d; ++c) powers.push_back(ring.mul(powers.back(), xs[i]));
    for (std::size_t k = 0; k < w; ++k) next[k] = ring.zero();
    for (std::size_t c = 0; c <= prog.d; ++c) {
      const Mat& a = prog.layers[i][c];
      for (std::size_t k = 0; k < w; ++k) combo[k] = ring.zero();
      for (std::size_t j = 0; j < w; ++j) {
        if (ring.is_zero(row[j])) continue;
        for (std::size_t k = 0; k < w; ++k) {
          u64 coeff = a.at(j, k);
          if (coeff == 0) continue;
          combo[k] = ring.add(combo[k], ring.scale(row[j], coeff));
        }
      }
      if (c == 0) {
        for (std::size_t k = 0; k < w; ++k) next[k] = ring.add(next[k], combo[k]);
      } else {
        for (std::size_t k = 0; k < w; ++k) {
          if (ring.is_zero(combo[k])) continue;
          next[k] = ring.add(next[k], ring.mul(combo[k], powers[c]));
        }
      }
    }
    row.swap(next);
  }
  return row[prog.t_index];
}

// Exponent vector (length n, entries <= d per variable as produced by the
// expansion; products in tests may exceed d) -> nonzero coefficient.
using MonomialMap = std::map<std::vector<std::uint32_t>, u64>;

// Exact expansion by dynamic programming over exponent prefixes.  The number
// of candidate monomials (d+1)^n must stay within `budget` (BudgetExceeded).
MonomialMap roabp_expand(const Roabp& prog, u64 budget = 1000000);

// Map-level helpers used by oracle tests.
MonomialMap monomial_map_add(const MonomialMap& a, const MonomialMap& b, u64 p);
MonomialMap monomial_map_mul(const MonomialMap& a, const MonomialMap& b, u64 p);
u64 monomial_map_eval(const MonomialMap& m, u64 p, const std::vector<u64>& point);

enum class Family {
  random_dense,
  diagonal,
  upper_triangular,
  path_controlled,
  zero_difference,
  two_monomial,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct GenerateParams {
  Family family = Family::random_dense;
  u64 seed = 0;
  u64 p = kDefaultPrime;
  std::size_t w = 2, n = 2, d = 1;
};

// Deterministic: same params -> same program, bit for bit.
Roabp roabp_generate(const GenerateParams& params);

// C = prod_{i in S} x_i - prod_{i in S'} x_i as a width-2 program (masks are
// bitmask subsets of {1..n}, bit i-1 for variable i; masks must differ).
Roabp two_monomial_program(u64 p, std::size_t n, u64 s_mask, u64 s_prime_mask);

// Canonical text format (see README): header lines `p/w/n/d/s/t <value>` with
// 1-based selectors, then blocks "layer i, coeff j:" each followed by w rows
// of w residues.  Layers ascend, coefficient indices ascend.
std::string roabp_serialize(const Roabp& prog);
// Strict parser: diagnostics carry line numbers; residues >= p are rejected.
Roabp roabp_parse(const std::string& text);

Roabp roabp_read_file(const std::string& path);
void roabp_write_file(const Roabp& prog, const std::string& path);

}  // namespace ropit
