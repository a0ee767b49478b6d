#include "hitting_curve.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "errors.hpp"
#include "ring.hpp"
#include "span_sieve.hpp"

namespace ropit {

namespace {

// Degree above which det H is not reconstructed by interpolation.
constexpr u64 kInterpolationCap = 4096;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

u64 checked_scalar(u128 v, const char* what) {
  if (v >> 61) fail(errc::invalid_params, std::string(what) + " does not fit in 61 bits");
  return (u64)v;
}

// Evaluate one layer at a scalar point: sum_j A_{i,j} x^j by Horner.
Mat layer_at(const std::vector<Mat>& layer, u64 x, const Fp& f) {
  Mat acc = layer.back();
  for (std::size_t j = layer.size() - 1; j-- > 0;)
    acc = mat_add(mat_scale(acc, f.reduce(x)), layer[j]);
  return acc;
}

// Full layer product at a curve point.
Mat curve_product(const Roabp& prog, const std::vector<u64>& xs) {
  Fp f(prog.p);
  Mat acc = layer_at(prog.layers[0], xs[0], f);
  for (std::size_t i = 1; i < prog.n; ++i)
    acc = mat_mul(acc, layer_at(prog.layers[i], xs[i], f));
  return acc;
}

}  // namespace

CurveConfig make_curve_config(u64 p, std::size_t w, std::size_t d, std::size_t n,
                              u64 deg_c, u64 k_const) {
  Fp field(p);
  if (n > p) fail(errc::invalid_params, "more variables than field elements: shifts collide");
  CurveConfig config;
  config.p = p;
  config.base = select_base(w, d, n, deg_c, k_const);
  config.alphas.resize(n);
  for (std::size_t i = 0; i < n; ++i) config.alphas[i] = i;
  config.wa.resize(w);
  config.wb.resize(w);
  for (std::size_t k = 0; k < w; ++k) {
    config.wa[k] = k + 1;
    config.wb[k] = (u64)w * (k + 1);
  }
  return config;
}

ReductionMap prefix_space_reduce(const Roabp& prog, const std::vector<u64>& probe_grid) {
  roabp_validate(prog);
  if (!probe_grid.empty() && probe_grid.size() < prog.d + 1)
    fail(errc::invalid_params, "probe grid smaller than degree + 1");

  Fp field(prog.p);
  std::size_t w = prog.w;
  ReductionMap map;
  map.level_dims.reserve(prog.n);

  // Union sieve accumulates span(V_0 + ... + V_k); the level list carries a
  // basis of the current V_k for the recurrence V_{k+1} = span{ M * A_{k+1,c} }.
  SpanSieve saturated(prog.p, w * w);
  std::vector<Mat> level = {Mat::identity(prog.p, w)};
  saturated.insert(level[0].flat());
  map.basis = level;
  map.m = 1;
  bool record = (u128)prog.n * w * w * (prog.d + 1) <= (u128)1 << 24;
  for (std::size_t k = 0; k < prog.n; ++k) {
    SpanSieve level_sieve(prog.p, w * w);
    std::vector<Mat> next;
    struct Product {
      std::size_t basis_index, coeff;
      Mat value;
    };
    std::vector<Product> products;
    for (std::size_t j = 0; j < level.size(); ++j) {
      for (std::size_t c = 0; c <= prog.d; ++c) {
        Mat prod = mat_mul(level[j], prog.layers[k][c]);
        if (level_sieve.insert(prod.flat())) {
          if (saturated.insert(prod.flat())) {
            map.basis.push_back(prod);
            map.m = saturated.rank();
            map.saturation_level = k + 1;
          }
          next.push_back(prod);
        }
        if (record) products.push_back({j, c, std::move(prod)});
      }
    }
    // Expansion data: every product must recombine exactly from the level
    // basis (zero residual), which doubles as the correctness check.
    if (record && !next.empty()) {
      Mat cols(prog.p, w * w, next.size());
      for (std::size_t b = 0; b < next.size(); ++b) {
        const auto& flat = next[b].flat();
        for (std::size_t i = 0; i < w * w; ++i) cols.at(i, b) = flat[i];
      }
      for (auto& prod : products) {
        auto coords = mat_solve(cols, prod.value.flat());
        require_internal(coords.has_value(), "prefix product escaped its level span");
        Mat recomb(prog.p, w, w);
        for (std::size_t b = 0; b < next.size(); ++b)
          if ((*coords)[b]) recomb = mat_add(recomb, mat_scale(next[b], (*coords)[b]));
        require_internal(recomb == prod.value, "prefix expansion residual is nonzero");
        map.expansions.push_back({k + 1, prod.basis_index, prod.coeff, std::move(*coords)});
      }
    }
    map.level_dims.push_back(saturated.rank());
    level = std::move(next);
    if (level.empty()) break;  // all later prefixes are zero as well
  }
  while (map.level_dims.size() < prog.n) map.level_dims.push_back(saturated.rank());
  require_internal(map.m <= w * w, "prefix space exceeded the ambient dimension");
  require_internal(map.m == saturated.rank(), "saturated basis out of sync");
  return map;
}

BigUint kronecker_phi(const std::vector<u64>& e, std::size_t d, const BigUint& base) {
  if (base.cmp_u64(d) <= 0)
    fail(errc::base_too_small, "base " + base.to_string() + " does not exceed the degree bound");
  for (u64 ej : e)
    if (ej > d) fail(errc::invalid_params, "exponent entry exceeds the degree bound");
  BigUint acc;
  for (std::size_t j = e.size(); j-- > 0;) {
    acc.mul(base);
    acc.add_u64(e[j]);
  }
  return acc;
}

BigUint select_base(std::size_t w, std::size_t d, std::size_t n, u64 deg_c, u64 k_const) {
  if (w == 0 || d == 0 || n == 0) fail(errc::invalid_params, "width, degree and arity must be positive");
  if (k_const < 8) fail(errc::invalid_params, "base constant must be at least 8");
  if (w > 64) fail(errc::budget_exceeded, "base exponent w^2 beyond supported scale");
  if (deg_c == 0) deg_c = checked_scalar((u128)n * d, "total degree bound");
  u128 scalar = (u128)k_const * w * w * w * d + deg_c + 1;
  u64 doubled = checked_scalar(2 * scalar, "base scale factor");
  BigUint base = BigUint::pow_u64(d + 1, (u64)w * w);
  base.mul_u64(doubled);
  base.add_u64(1);
  return base;
}

std::vector<u64> curve_assign(const CurveConfig& config, u64 lambda_star) {
  Fp f(config.p);
  std::vector<u64> xs(config.alphas.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = f.pow(f.add(f.reduce(lambda_star), f.reduce(config.alphas[i])), config.base);
  return xs;
}

u64 hitting_grid_bound(std::size_t w, std::size_t d) {
  if (w == 0 || d == 0) fail(errc::invalid_params, "width and degree must be positive");
  u128 w4 = (u128)w * w * w * w;
  u128 w8 = w4 * w4;
  if (w8 >> 64) fail(errc::invalid_params, "grid bound does not fit in 61 bits");
  return checked_scalar(9 * w4 + 2 * (u128)d * d * w8 + 1, "grid bound");
}

std::vector<u64> build_hitting_set(u64 p, std::size_t w, std::size_t d) {
  u64 m = hitting_grid_bound(w, d);
  if (p <= m + 1) fail(errc::field_too_small, "field has at most as many points as the grid");
  if (m + 1 > (u64(1) << 24)) fail(errc::budget_exceeded, "grid too large to materialize");
  std::vector<u64> grid(m + 1);
  for (u64 i = 0; i <= m; ++i) grid[i] = i;
  return grid;
}

ConstraintSet constraint_polys(const PolyMat& pencil, std::size_t rank,
                               std::size_t s_index, std::size_t t_index) {
  std::size_t w = pencil.size();
  u64 p = pencil.modulus();
  if (rank < 1 || rank > w) fail(errc::invalid_params, "rank out of range");
  if (s_index >= w || t_index >= w) fail(errc::invalid_params, "selector index out of range");
  if (pencil.max_entry_deg() > 1) fail(errc::invalid_params, "pencil is not affine in lambda");
  if (p <= w) fail(errc::characteristic_too_small, "characteristic must exceed the pencil size");

  ConstraintSet set;
  set.rank = rank;
  u64 quad = 2 * (u64)w * w;
  u64 cubic = 2 * (u64)w * w * w;
  set.product_budget = 8 * (u64)w * w * w;

  PolyMat corner = pencil.leading_principal(rank);
  PencilCharData data = pencil_char_adj(corner);

  auto push = [&](const std::string& name, Poly f, u64 budget) {
    ConstraintFactor factor;
    factor.name = name;
    factor.budget = budget;
    factor.degenerate = f.is_zero();
    if (!factor.degenerate && (u64)f.deg() > budget)
      fail(errc::degree_budget_exceeded,
           "constraint " + name + " has degree " + std::to_string(f.deg()) +
               " over budget " + std::to_string(budget));
    factor.poly = std::move(f);
    set.factors.push_back(std::move(factor));
  };

  // disc: simple corner spectrum.  A 1x1 corner is trivially simple.
  push("disc", rank >= 2 ? discriminant_mu(data.charpoly) : Poly::one(p), quad);

  // proj: consecutive corners spectrally disjoint.  The empty corner has
  // characteristic polynomial 1, so the rank-1 resultant is 1.
  if (rank >= 2) {
    PencilCharData prev = pencil_char_adj(pencil.leading_principal(rank - 1));
    push("proj", sylvester_resultant(data.charpoly, prev.charpoly), quad);
  } else {
    push("proj", Poly::one(p), quad);
  }

  // pair: selector entry of the corner resolvent adjugate stays clear of the
  // corner spectrum.  Selectors outside the corner are clamped onto it.
  {
    MuPoly entry = pencil_adj_entry(data, std::min(s_index, rank - 1), std::min(t_index, rank - 1));
    Poly f = Poly::zero(p);
    if (!entry.is_zero()) {
      if (entry.deg_mu() <= 0) {
        // Res_mu(chi, c(lambda)) = c(lambda)^{deg chi} for a mu-constant.
        f = Poly::one(p);
        for (int i = 0; i < data.charpoly.deg_mu(); ++i) f = poly_mul(f, entry.coeff(0));
      } else {
        f = sylvester_resultant(data.charpoly, entry);
      }
    }
    push("pair", std::move(f), cubic);
  }

  // tri: weighted moment matrix of the selector pair over the full pencil.
  {
    std::size_t jmax = (rank - 1) + (u64)w * (rank - 1);
    std::vector<Poly> moments;
    moments.reserve(jmax + 1);
    std::vector<Poly> col(w, Poly::zero(p));
    col[t_index] = Poly::one(p);
    for (std::size_t j = 0; j <= jmax; ++j) {
      moments.push_back(col[s_index]);
      if (j == jmax) break;
      std::vector<Poly> next(w, Poly::zero(p));
      for (std::size_t a = 0; a < w; ++a)
        for (std::size_t b = 0; b < w; ++b)
          next[a] = poly_add(next[a], poly_mul(pencil.at(a, b), col[b]));
      col = std::move(next);
    }
    PolyMat h(p, rank);
    for (std::size_t k = 0; k < rank; ++k)
      for (std::size_t l = 0; l < rank; ++l) h.at(k, l) = moments[k + w * l];
    push("tri", pm_det(h), cubic);
  }

  set.product = Poly::one(p);
  for (const auto& factor : set.factors)
    if (!factor.degenerate) set.product = poly_mul(set.product, factor.poly);
  if ((u64)set.product.deg() > set.product_budget)
    fail(errc::degree_budget_exceeded, "per-rank constraint product over budget");
  return set;
}

Poly universal_constraint(const PolyMat& pencil, std::size_t s_index, std::size_t t_index,
                          std::vector<ConstraintSet>* details) {
  Poly product = Poly::one(pencil.modulus());
  for (std::size_t rank = 1; rank <= pencil.size(); ++rank) {
    ConstraintSet set = constraint_polys(pencil, rank, s_index, t_index);
    product = poly_mul(product, set.product);
    if (details) details->push_back(std::move(set));
  }
  return product;
}

u64 finite_avoid(const Poly& f, const std::vector<u64>& grid) {
  return finite_avoid(std::vector<Poly>{f}, grid);
}

u64 finite_avoid(const std::vector<Poly>& factors, const std::vector<u64>& grid) {
  if (grid.empty()) fail(errc::invalid_params, "empty avoidance grid");
  for (const Poly& f : factors)
    if (f.is_zero()) fail(errc::all_roots, "a constraint factor is identically zero");
  for (u64 point : grid) {
    bool clear = true;
    for (const Poly& f : factors) {
      if (poly_eval(f, point) == 0) {
        clear = false;
        break;
      }
    }
    if (clear) return point;
  }
  fail(errc::all_roots, "every grid point is a root of some constraint factor");
}

TriWitnessReport tri_witness(const Roabp& prog, const WordAlgebraBasis& algebra,
                             const Projector& pi, const CurveConfig& config,
                             const std::vector<u64>& sample_points) {
  roabp_validate(prog);
  if (algebra.p != prog.p || config.p != prog.p)
    fail(errc::modulus_mismatch, "program, algebra and curve moduli differ");
  if (algebra.w != prog.w) fail(errc::invalid_params, "algebra width differs from program width");
  if (pi.rank != 1 || pi.matrix.rows() != prog.w)
    fail(errc::invalid_params, "need a rank-one projector of the program width");
  if (config.alphas.size() != prog.n) fail(errc::arity_mismatch, "curve arity differs from program");
  if (config.wa.size() != prog.w || config.wb.size() != prog.w)
    fail(errc::invalid_params, "weight schedules must have one entry per width index");
  if (sample_points.empty()) fail(errc::invalid_params, "need at least one sample point");

  Fp f(prog.p);
  std::size_t w = prog.w;
  MatrixUnits units = matrix_units(algebra, pi, prog.s_index, prog.t_index);

  // det H at one curve parameter.
  auto delta_at = [&](u64 lambda) {
    std::vector<u64> xs = curve_assign(config, lambda);
    Mat prod = curve_product(prog, xs);  // P(lambda); Q = P carries the weights
    Mat mid = mat_mul(pi.matrix, prod);
    Mat h(prog.p, w, w);
    for (std::size_t k = 0; k < w; ++k) {
      Mat left = mat_mul(units.left[k], mat_pow(prod, config.wa[k] - config.wa[0]));
      std::vector<u64> row(w, 0);
      for (std::size_t c = 0; c < w; ++c) row[c] = left.at(prog.s_index, c);
      std::vector<u64> rowmid = mat_apply_left(row, mid);
      for (std::size_t l = 0; l < w; ++l) {
        Mat right = mat_mul(mat_pow(prod, config.wb[l] - config.wb[0]), units.right[l]);
        u64 acc = 0;
        for (std::size_t c = 0; c < w; ++c)
          acc = f.add(acc, f.mul(rowmid[c], right.at(c, prog.t_index)));
        h.at(k, l) = acc;
      }
    }
    return mat_det(h);
  };

  TriWitnessReport report;
  report.w = w;
  report.rank_one_factoring = (w >= 2);
  report.structural_bound = checked_scalar(
      2 * (u128)prog.d * prog.d * ((u128)w * w * w * w) * ((u128)w * w * w * w),
      "structural degree bound");

  report.delta_values.reserve(sample_points.size());
  for (u64 lambda : sample_points) report.delta_values.push_back(delta_at(lambda));
  report.delta_zero_on_samples = std::all_of(report.delta_values.begin(),
                                             report.delta_values.end(),
                                             [](u64 v) { return v == 0; });

  if (w >= 2) {
    // H_{k,l} = (row_k . u)(v . col_l) is an outer product, so det H is the
    // zero polynomial; the transfer data lives in the individual entries.
    report.observed_degree = -1;
    report.within_structural_bound = true;
    report.note =
        "det H factors through the rank-one projector and vanishes identically; "
        "the witness information sits in the individual entries H_{k,l}";
    return report;
  }

  // Width 1: H is the program on the curve, delta(lambda) = C((lambda+alpha_1)^B, ...).
  // Recover its degree by interpolation when the bound is affordable.
  u64 degree_bound = 0;
  bool boundable = config.base.fits_u64();
  if (boundable) {
    u128 bound = (u128)config.base.to_u64() * prog.n * prog.d;
    boundable = bound <= kInterpolationCap && bound + 1 < prog.p;
    if (boundable) degree_bound = (u64)bound;
  }
  if (!boundable) {
    report.observed_degree = -2;
    report.note = "degree bound exceeds the expansion cap; determinant left uninterpolated";
    return report;
  }
  // Divided differences on nodes 0..D: the leading nonzero coefficient marks
  // the degree.  Node gaps at level k are exactly k, so one inverse per level.
  std::vector<u64> dd(degree_bound + 1);
  for (u64 i = 0; i <= degree_bound; ++i) dd[i] = delta_at(i);
  int degree = -1;
  for (u64 i = 0; i <= degree_bound; ++i)
    if (dd[i]) degree = 0;
  for (u64 k = 1; k <= degree_bound; ++k) {
    u64 invk = f.inv(f.reduce(k));
    for (u64 i = degree_bound; i >= k; --i) dd[i] = f.mul(f.sub(dd[i], dd[i - 1]), invk);
    if (dd[k]) degree = (int)k;
  }
  report.observed_degree = degree;
  report.within_structural_bound = degree < 0 || (u64)degree <= report.structural_bound;
  if (!report.within_structural_bound)
    report.note =
        "measured degree tracks the substitution base (about B*n*d) and exceeds the "
        "static bound 2*d^2*w^8, which carries no base factor";
  return report;
}

CurveVerdict hitting_pit(const Roabp& prog, u64 k_const, u64 eval_budget,
                         std::size_t w_override, std::size_t d_override) {
  auto start = std::chrono::steady_clock::now();
  roabp_validate(prog);
  std::size_t w = w_override ? w_override : prog.w;
  std::size_t d = d_override ? d_override : prog.d;
  if (w < prog.w || d < prog.d)
    fail(errc::invalid_params, "curve sizing must dominate the program shape");

  // The curve regime is only meaningful while (d+1)^{w^2} stays affordable.
  u128 cells = 1;
  for (std::size_t i = 0; i < w * w; ++i) {
    cells *= (d + 1);
    if (cells > eval_budget)
      fail(errc::budget_exceeded, "(d+1)^(w^2) exceeds the evaluation budget");
  }

  CurveVerdict verdict;
  verdict.grid_bound = hitting_grid_bound(w, d);
  if (prog.p <= verdict.grid_bound + 1)
    fail(errc::field_too_small, "field has at most as many points as the grid");
  verdict.effective_m = prefix_space_reduce(prog).m;

  CurveConfig config = make_curve_config(prog.p, w, d, prog.n, 0, k_const);
  FieldRing ring(prog.p);
  for (u64 lambda = 0; lambda <= verdict.grid_bound; ++lambda) {
    ++verdict.points_tested;
    if (!ring.is_zero(roabp_eval(prog, ring, curve_assign(config, lambda)))) {
      verdict.nonzero = true;
      verdict.lambda_star = lambda;
      break;
    }
  }
  verdict.wall_ms = elapsed_ms(start);
  return verdict;
}

std::string hitting_set_text(u64 p, std::size_t w, std::size_t d, std::size_t n, u64 k_const) {
  CurveConfig config = make_curve_config(p, w, d, n, 0, k_const);
  std::vector<u64> grid = build_hitting_set(p, w, d);
  std::ostringstream out;
  out << "# hitting set for oblivious width-" << w << " programs, individual degree " << d
      << ", " << n << " variables\n";
  out << "# p " << p << "\n";
  out << "# w " << w << "\n";
  out << "# d " << d << "\n";
  out << "# n " << n << "\n";
  out << "# B " << config.base.to_string() << "\n";
  out << "# M " << grid.back() << "\n";
  out << "# alpha";
  for (u64 a : config.alphas) out << ' ' << a;
  out << "\n# weights_a";
  for (u64 a : config.wa) out << ' ' << a;
  out << "\n# weights_b";
  for (u64 b : config.wb) out << ' ' << b;
  out << "\n";
  for (u64 lambda : grid) {
    out << lambda;
    for (u64 x : curve_assign(config, lambda)) out << ", " << x;
    out << "\n";
  }
  return out.str();
}

}  // namespace ropit
