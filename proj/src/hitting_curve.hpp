#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biguint.hpp"
#include "bipoly.hpp"
#include "poly.hpp"
#include "roabp.hpp"
#include "word_algebra.hpp"

namespace ropit {

// Univariate substitution curve: variable x_i is replaced by the shifted
// power (lambda + alpha_i)^B of a single curve parameter lambda.  Because the
// shifts are distinct and B exceeds every relevant degree, the substitution
// is injective on the exponent boxes the programs can produce, and a nonzero
// program stays nonzero as a univariate polynomial in lambda.  The base B can
// exceed 64 bits, so it is carried exactly and only used as an exponent
// mod p or printed.
struct CurveConfig {
  u64 p = 0;
  std::vector<u64> alphas;  // alphas[i] shifts x_{i+1}; pairwise distinct
  BigUint base;             // B
  std::vector<u64> wa;      // row weight schedule a_1 < a_2 < ... < a_w
  std::vector<u64> wb;      // column weight schedule b_1 < ... < b_w
};

// Canonical configuration: alpha_i = i - 1, a_k = k, b_l = w * l, and
// B = select_base(w, d, n, deg_c, k_const).  deg_c == 0 means "use the
// generic total-degree bound n * d".
// Errors: InvalidParams when n > p (shifts would collide) or k_const < 8.
CurveConfig make_curve_config(u64 p, std::size_t w, std::size_t d, std::size_t n,
                              u64 deg_c = 0, u64 k_const = 8);

// Prefix coefficient spaces.  For a cut after layer k, the space V_k is the
// span of the matrix coefficients of the partial product
// A_1(x_1) * ... * A_k(x_k), viewed as a polynomial with w x w matrix
// coefficients.  The spaces obey the linear recurrence
//   V_k = span{ M * A_{k,c} : M in V_{k-1}, 0 <= c <= d },   V_0 = span{I},
// so they can be computed layer by layer without expanding any monomials.
// The effective count m = dim span(V_0 + V_1 + ... + V_n) never exceeds w^2
// and drives how much of the width the curve actually has to separate.
struct ReductionMap {
  std::size_t m = 0;                    // dimension of the saturated span
  std::size_t saturation_level = 0;     // first cut k attaining dimension m
  std::vector<Mat> basis;               // saturated basis, first-seen order (I first)
  std::vector<std::size_t> level_dims;  // dim span(V_0 + ... + V_k) for k = 1..n
  // Expansion of each product basis_j * A_{k,c} of the level bases in the
  // next level basis; recorded so the reduction is replayable and checkable.
  struct Expansion {
    std::size_t layer = 0;        // k (1-based)
    std::size_t basis_index = 0;  // j into the level-(k-1) basis
    std::size_t coeff = 0;        // c
    std::vector<u64> coords;      // coordinates in the level-k basis
  };
  std::vector<Expansion> expansions;
};

// White-box prefix-space reduction: reads the layer coefficient matrices
// directly and sieves the recurrence above.  The probe grid is part of the
// interface for a black-box variant that would recover the coefficient
// action by interpolation from |grid| >= d + 1 evaluations; this version
// only validates it (empty means "use 0..d").  Every product is verified to
// recombine exactly from the recorded basis (zero residual).
// Errors: InvalidParams when the grid is too small for the degree.
ReductionMap prefix_space_reduce(const Roabp& prog, const std::vector<u64>& probe_grid = {});

// Kronecker index of an exponent vector: phi(e) = sum_j e_j * B^{j-1}.
// Injective on the box 0 <= e_j <= d exactly when B > d.
// Errors: BaseTooSmall when B <= d.
BigUint kronecker_phi(const std::vector<u64>& e, std::size_t d, const BigUint& base);

// Substitution base B = 2 * (K * w^3 * d + deg_c + 1) * (d+1)^{w^2} + 1.
// deg_c == 0 means "use n * d".  The factor (d+1)^{w^2} dominates and makes
// B safely larger than any exponent the transfer spaces can produce; the
// leading 2 and trailing +1 keep B odd and clear of the degree bound itself.
// Errors: InvalidParams when w, d or n is zero or k_const < 8.
BigUint select_base(std::size_t w, std::size_t d, std::size_t n,
                    u64 deg_c = 0, u64 k_const = 8);

// Point on the curve: x_i = (lambda_star + alpha_i)^B mod p for every i.
std::vector<u64> curve_assign(const CurveConfig& config, u64 lambda_star);

// Size bound for the curve parameter grid: M = 9 w^4 + 2 d^2 w^8 + 1.
// Errors: InvalidParams when the value would not fit in 61 bits.
u64 hitting_grid_bound(std::size_t w, std::size_t d);

// The grid L = {0, 1, ..., M}.  Errors: FieldTooSmall when p <= |L|,
// BudgetExceeded when L is too large to materialize.
std::vector<u64> build_hitting_set(u64 p, std::size_t w, std::size_t d);

// One avoidance constraint: a named univariate polynomial in lambda that a
// good curve parameter must keep nonzero, together with its degree budget.
// A factor that collapses to the zero polynomial carries no information
// (degenerate); it is reported but excluded from products.
struct ConstraintFactor {
  std::string name;
  Poly poly = Poly::zero(2);
  u64 budget = 0;
  bool degenerate = false;
};

// Constraints attached to one candidate rank r of an affine pencil
// X(lambda) = X0 + lambda * X1 (all on the leading principal r x r corner
// unless noted):
//   disc  Disc_mu of the corner characteristic polynomial - parameters where
//         the corner spectrum stays simple (trivially 1 when r = 1);
//   proj  Res_mu of the corner charpoly against the (r-1) corner charpoly -
//         keeps consecutive corners spectrally disjoint;
//   pair  Res_mu of the corner charpoly against the (s, t) entry of
//         adj(mu I - corner) - keeps the selector pairing nondegenerate;
//   tri   determinant of the r x r weighted moment matrix
//         H_{k,l} = m_{(k-1) + w(l-1)},  m_j(lambda) = e_s^T X(lambda)^j e_t,
//         over the full pencil - keeps the selector moment sequence at
//         Hankel rank >= r.
// Degree budgets: disc, proj <= 2 w^2; pair, tri <= 2 w^3; product <= 8 w^3
// with w the ambient pencil size.  Exceeding a budget is a hard error, not a
// warning: it means a structural degree bound failed.
struct ConstraintSet {
  std::size_t rank = 0;
  std::vector<ConstraintFactor> factors;
  Poly product = Poly::zero(2);  // product of the non-degenerate factors
  u64 product_budget = 0;        // 8 w^3
};
// Errors: InvalidParams (rank out of range, selectors out of range, pencil
// not affine), DegreeBudgetExceeded (a factor or the product violates its
// budget), CharacteristicTooSmall (p <= pencil size).
ConstraintSet constraint_polys(const PolyMat& pencil, std::size_t rank,
                               std::size_t s_index, std::size_t t_index);

// Product of the per-rank products over all ranks 1..w.  Optionally hands
// back the individual sets.
Poly universal_constraint(const PolyMat& pencil, std::size_t s_index, std::size_t t_index,
                          std::vector<ConstraintSet>* details = nullptr);

// Smallest-index grid point where f (resp. every factor) is nonzero.
// Errors: AllRoots when no grid point avoids all factors (in particular when
// a factor is the zero polynomial), InvalidParams on an empty grid.
u64 finite_avoid(const Poly& f, const std::vector<u64>& grid);
u64 finite_avoid(const std::vector<Poly>& factors, const std::vector<u64>& grid);

// Decorated transfer witness.  With matrix units U_k, V_l split off a
// rank-one projector Pi = u v^T of the full word algebra, the witness matrix
// at a curve point lambda is
//   H_{k,l}(lambda) =
//     e_s^T U_k Q(lambda)^{a_k - a_1} Pi P(lambda) Q(lambda)^{b_l - b_1} V_l e_t,
// where P(lambda) is the full layer product on the curve and Q = P carries
// the weight decoration.  For w = 1 this collapses to the program itself on
// the curve, so the witness is exact there.  For w >= 2 every H factors
// through the rank-one Pi, hence det H vanishes identically - the report
// flags this structural collapse instead of claiming a nonzero determinant.
struct TriWitnessReport {
  std::size_t w = 0;
  bool rank_one_factoring = false;   // w >= 2: H = (column) * (row)
  std::vector<u64> delta_values;     // det H(lambda) at each sample point
  bool delta_zero_on_samples = false;
  // Degree of det H recovered by interpolation: -1 when identically zero,
  // -2 when interpolation was skipped (bound above the expansion cap).
  int observed_degree = -2;
  u64 structural_bound = 0;          // 2 d^2 w^8, reported and compared only
  bool within_structural_bound = false;
  std::string note;
};
// Errors: InvalidParams (pi not rank one, shape mismatches), NotFullAlgebra /
// DegenerateSelector propagated from the matrix-unit construction.
TriWitnessReport tri_witness(const Roabp& prog, const WordAlgebraBasis& algebra,
                             const Projector& pi, const CurveConfig& config,
                             const std::vector<u64>& sample_points);

// Black-box identity test along the curve: evaluate the program at the point
// induced by every lambda in L, ascending.  The first nonzero evaluation is
// an unconditional nonzeroness witness; exhausting L certifies zero.
struct CurveVerdict {
  bool nonzero = false;
  u64 lambda_star = 0;      // witness parameter when nonzero
  u64 points_tested = 0;
  u64 grid_bound = 0;       // M
  std::size_t effective_m = 0;  // prefix-space dimension count (reported)
  double wall_ms = 0.0;
};
// Errors: BudgetExceeded when (d+1)^{w^2} > eval_budget (the regime where
// the base and grid sizes are meaningful), FieldTooSmall when p <= |L|.
// Nonzero w_override / d_override size the curve for a larger shape than the
// program's own (they must dominate it; the base and grid only grow, so the
// test stays sound).
CurveVerdict hitting_pit(const Roabp& prog, u64 k_const = 8, u64 eval_budget = 1000000,
                         std::size_t w_override = 0, std::size_t d_override = 0);

// Text export of the full hitting set for shape (w, d, n) over F_p: a
// commented header recording p, w, d, n, B, M and the shift / weight
// schedules, then one line per member
//   <lambda>, <x_1>, ..., <x_n>
// with all values as decimal residues.
std::string hitting_set_text(u64 p, std::size_t w, std::size_t d, std::size_t n,
                             u64 k_const = 8);

}  // namespace ropit
