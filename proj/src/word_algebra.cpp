#include "word_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "span_sieve.hpp"

namespace ropit {

namespace {

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t(1) << k) < n) ++k;
  return k;
}

void check_algebra(const WordAlgebraBasis& algebra) {
  if (algebra.basis.empty() || algebra.w == 0)
    fail(errc::invalid_params, "empty word-algebra basis");
}

// Columns are the vectorized elements of `mats`; solving against a vectorized
// target expresses it in the span.
Mat vectorized_columns(u64 p, std::size_t w, const std::vector<Mat>& mats) {
  Mat cols(p, w * w, mats.size());
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const auto& flat = mats[k].flat();
    for (std::size_t i = 0; i < w * w; ++i) cols.at(i, k) = flat[i];
  }
  return cols;
}

Mat combine(const std::vector<Mat>& mats, const std::vector<u64>& coeffs, u64 p,
            std::size_t w) {
  Mat acc(p, w, w);
  for (std::size_t k = 0; k < mats.size(); ++k)
    if (coeffs[k]) acc = mat_add(acc, mat_scale(mats[k], coeffs[k]));
  return acc;
}

}  // namespace

WordAlgebraBasis span_closure(const std::vector<Mat>& generators) {
  if (generators.empty()) fail(errc::invalid_params, "need at least one generator");
  u64 p = generators[0].modulus();
  std::size_t w = generators[0].rows();
  Fp field(p);  // validates the modulus
  for (const Mat& g : generators)
    if (!g.square() || g.rows() != w || g.modulus() != p)
      fail(errc::invalid_params, "generators must share one square shape and modulus");

  WordAlgebraBasis alg;
  alg.p = p;
  alg.w = w;
  alg.generators.reserve(generators.size() + 1);
  alg.generators.push_back(Mat::identity(p, w));
  for (const Mat& g : generators) alg.generators.push_back(g);

  SpanSieve sieve(p, w * w);
  auto try_add = [&](const Mat& m, std::vector<std::size_t> word) {
    if (alg.dim() == w * w) return;
    if (!sieve.insert(m.flat())) return;
    alg.basis.push_back(m);
    alg.words.push_back(std::move(word));
  };
  try_add(alg.generators[0], {});
  for (std::size_t g = 1; g < alg.generators.size(); ++g) try_add(alg.generators[g], {g});
  // Right-extending every basis element by every generator reaches all words;
  // products that fall inside the current span cannot enlarge it.
  for (std::size_t b = 0; b < alg.basis.size() && alg.dim() < w * w; ++b) {
    for (std::size_t g = 1; g < alg.generators.size(); ++g) {
      std::vector<std::size_t> word = alg.words[b];
      word.push_back(g);
      try_add(mat_mul(alg.basis[b], alg.generators[g]), std::move(word));
    }
  }
  // Postcondition: the span is multiplicatively closed.
  for (const Mat& x : alg.basis)
    for (const Mat& y : alg.basis)
      require_internal(sieve.contains(mat_mul(x, y).flat()),
                       "span closure is not multiplicatively closed");
  return alg;
}

Mat word_value(const WordAlgebraBasis& algebra, const std::vector<std::size_t>& word) {
  check_algebra(algebra);
  Mat acc = Mat::identity(algebra.p, algebra.w);
  for (std::size_t g : word) {
    if (g == 0 || g >= algebra.generators.size())
      fail(errc::invalid_params, "word references generator " + std::to_string(g));
    acc = mat_mul(acc, algebra.generators[g]);
  }
  return acc;
}

std::string word_to_string(const std::vector<std::size_t>& word) {
  if (word.empty()) return "1";
  std::ostringstream out;
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (k) out << '*';
    out << 'g' << word[k];
  }
  return out.str();
}

std::optional<std::vector<u64>> algebra_coordinates(const WordAlgebraBasis& algebra,
                                                    const Mat& m) {
  check_algebra(algebra);
  if (!m.square() || m.rows() != algebra.w || m.modulus() != algebra.p)
    fail(errc::invalid_params, "matrix shape or modulus differs from the algebra");
  return mat_solve(vectorized_columns(algebra.p, algebra.w, algebra.basis), m.flat());
}

std::vector<Mat> radical_trace_form(const WordAlgebraBasis& algebra) {
  check_algebra(algebra);
  if (algebra.p <= algebra.w)
    fail(errc::characteristic_too_small,
         "trace-form radical needs p > w, got p = " + std::to_string(algebra.p) +
             ", w = " + std::to_string(algebra.w));
  std::size_t dim = algebra.dim();
  Mat gram(algebra.p, dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j; k < dim; ++k)
      gram.at(j, k) = gram.at(k, j) = mat_trace(mat_mul(algebra.basis[j], algebra.basis[k]));
  std::vector<Mat> radical;
  for (const auto& coeffs : mat_kernel(gram))
    radical.push_back(combine(algebra.basis, coeffs, algebra.p, algebra.w));
  // Verification: nilpotency of each element, and vanishing of length-w
  // products (all tuples when the radical is small, sliding windows when
  // exhaustion would blow up).
  for (const Mat& x : radical)
    require_internal(mat_pow(x, algebra.w).is_zero(), "radical element is not nilpotent");
  if (!radical.empty()) {
    std::size_t jd = radical.size();
    auto product_vanishes = [&](auto&& index_of) {
      Mat acc = radical[index_of(std::size_t(0))];
      for (std::size_t k = 1; k < algebra.w; ++k) acc = mat_mul(acc, radical[index_of(k)]);
      return acc.is_zero();
    };
    if (jd <= 3) {
      std::vector<std::size_t> tuple(algebra.w, 0);
      bool done = false;
      while (!done) {
        require_internal(product_vanishes([&](std::size_t k) { return tuple[k]; }),
                         "length-w radical product is nonzero");
        std::size_t k = 0;
        while (k < algebra.w && ++tuple[k] == jd) tuple[k++] = 0;
        done = (k == algebra.w);
      }
    } else {
      for (std::size_t start = 0; start < jd; ++start)
        require_internal(product_vanishes([&](std::size_t k) { return (start + k) % jd; }),
                         "length-w radical product is nonzero");
    }
  }
  return radical;
}

FullnessWitness fullness_witness(const WordAlgebraBasis& algebra,
                                 const std::vector<Mat>& left_words,
                                 const std::vector<Mat>& right_words, std::size_t s_index,
                                 std::size_t t_index) {
  check_algebra(algebra);
  std::size_t w = algebra.w, need = w * w;
  if (left_words.size() != need || right_words.size() != need)
    fail(errc::word_count_mismatch,
         "need exactly w^2 = " + std::to_string(need) + " left and right words, got " +
             std::to_string(left_words.size()) + " and " + std::to_string(right_words.size()));
  if (s_index >= w || t_index >= w) fail(errc::invalid_params, "selector index out of range");
  for (const Mat& m : left_words)
    if (!m.square() || m.rows() != w || m.modulus() != algebra.p)
      fail(errc::invalid_params, "left word has wrong shape or modulus");
  for (const Mat& m : right_words)
    if (!m.square() || m.rows() != w || m.modulus() != algebra.p)
      fail(errc::invalid_params, "right word has wrong shape or modulus");
  Fp field(algebra.p);
  Mat gram(algebra.p, need, need);
  for (std::size_t a = 0; a < need; ++a)
    for (std::size_t b = 0; b < need; ++b) {
      // e_s^T L_a R_b e_t = (row s of L_a) . (column t of R_b)
      u64 acc = 0;
      for (std::size_t k = 0; k < w; ++k)
        acc = field.add(acc, field.mul(left_words[a].at(s_index, k), right_words[b].at(k, t_index)));
      gram.at(a, b) = acc;
    }
  return FullnessWitness{gram, mat_det(gram)};
}

Projector ch_idempotent(const Mat& m) {
  if (!m.square() || m.rows() == 0) fail(errc::non_square, "ch_idempotent needs a square matrix");
  u64 p = m.modulus();
  Fp field(p);
  Poly minpoly = mat_minpoly(m);
  auto root = poly_smallest_root(minpoly, kEigenScanBudget);
  if (!root)
    fail(errc::non_split_spectrum,
         "minimal polynomial " + minpoly.to_string() + " has no rational root in the scan range");
  u64 c = *root;
  Poly lin = Poly::linear_root(p, c);
  Poly cofactor = minpoly;
  int mult = 0;
  for (;;) {
    auto [q, r] = poly_divmod(cofactor, lin);
    if (!r.is_zero()) break;
    cofactor = q;
    ++mult;
  }
  require_internal(mult >= 1, "root multiplicity must be positive");
  std::ostringstream trace;
  trace << "minpoly " << minpoly.to_string() << "; smallest rational eigenvalue " << c
        << " (multiplicity " << mult << ")";
  if (cofactor.deg() == 0) {
    // Single primary component: the spectral projector is the identity.
    trace << "; single primary component, E = I";
    Mat e = Mat::identity(p, m.rows());
    return Projector{e, m.rows(), trace.str()};
  }
  Poly primary = Poly::one(p);
  for (int k = 0; k < mult; ++k) primary = poly_mul(primary, lin);
  Bezout bez = poly_gcd_bezout(primary, cofactor);
  require_internal(bez.g.is_one(), "primary factor and cofactor must be coprime");
  // E = (b * cofactor)(m), reduced mod the minimal polynomial so the recipe
  // degree stays below deg(minpoly).
  Poly recipe = poly_divmod(poly_mul(bez.b, cofactor), minpoly).second;
  Mat e = mat_poly_eval(recipe, m);
  require_internal(mat_mul(e, e) == e, "Bezout projector is not idempotent");
  std::size_t rank = mat_rank(e);
  require_internal(rank >= 1, "Bezout projector vanished");
  trace << "; E = p(M) with p = " << recipe.to_string();
  return Projector{e, rank, trace.str()};
}

Projector newton_lift(const Mat& e, const WordAlgebraBasis& algebra) {
  check_algebra(algebra);
  if (!e.square() || e.rows() != algebra.w || e.modulus() != algebra.p)
    fail(errc::invalid_params, "matrix shape or modulus differs from the algebra");
  u64 p = algebra.p;
  std::vector<Mat> radical = radical_trace_form(algebra);
  auto in_radical_span = [&](const Mat& x) {
    if (x.is_zero()) return true;
    if (radical.empty()) return false;
    return mat_solve(vectorized_columns(p, algebra.w, radical), x.flat()).has_value();
  };
  Mat defect = mat_sub(mat_mul(e, e), e);
  if (!in_radical_span(defect))
    fail(errc::not_idempotent_mod_radical, "E^2 - E does not lie in the radical span");
  if (in_radical_span(e))
    fail(errc::zero_idempotent,
         "E lies in the radical span; the only idempotent congruent to it is zero");
  Mat x = e;
  Mat two_i = mat_scale(Mat::identity(p, algebra.w), 2 % p);
  std::size_t iters = ceil_log2(algebra.w);
  std::size_t used = 0;
  for (std::size_t k = 0; k < iters; ++k) {
    if (mat_mul(x, x) == x) break;
    x = mat_mul(x, mat_sub(two_i, x));
    ++used;
  }
  if (!(mat_mul(x, x) == x))
    fail(errc::not_idempotent_mod_radical,
         "lifting stalled: the defect has a component on the kernel side of E, which "
         "X(2I - X) cannot remove");
  std::size_t rank = mat_rank(x);
  if (rank == 0) fail(errc::zero_idempotent, "lift converged to the zero matrix");
  return Projector{x, rank,
                   "newton lift: " + std::to_string(used) + " iteration(s) of X(2I - X)"};
}

namespace {

// Image-basis representation of the corner algebra E Mat_w E: columns of U
// are the first independent columns of E, and M is the unique solution of
// U M = E; then M U = I_r, and X -> M X U identifies corner elements EXE
// with r x r matrices.
std::pair<Mat, Mat> corner_representation(const Mat& e, std::size_t r) {
  u64 p = e.modulus();
  std::size_t w = e.rows();
  SpanSieve sieve(p, w);
  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < w && picked.size() < r; ++j) {
    std::vector<u64> col(w);
    for (std::size_t i = 0; i < w; ++i) col[i] = e.at(i, j);
    if (sieve.insert(std::move(col))) picked.push_back(j);
  }
  require_internal(picked.size() == r, "column space extraction lost rank");
  Mat u(p, w, r);
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t i = 0; i < w; ++i) u.at(i, k) = e.at(i, picked[k]);
  Mat m(p, r, w);
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<u64> col(w);
    for (std::size_t i = 0; i < w; ++i) col[i] = e.at(i, j);
    auto x = mat_solve(u, col);
    require_internal(x.has_value(), "column of E escaped its own column space");
    for (std::size_t k = 0; k < r; ++k) m.at(k, j) = (*x)[k];
  }
  require_internal(mat_mul(u, m) == e, "U M = E failed");
  require_internal(mat_mul(m, u) == Mat::identity(p, r), "M U = I failed");
  return {u, m};
}

}  // namespace

Projector corner_rank_descent(const Projector& e, const Mat& a, const Mat& b,
                              const std::vector<u64>& grid) {
  const Mat& em = e.matrix;
  if (!em.square() || em.rows() == 0) fail(errc::invalid_params, "projector matrix not square");
  u64 p = em.modulus();
  std::size_t w = em.rows();
  Fp field(p);
  if (!a.square() || a.rows() != w || a.modulus() != p || !b.square() || b.rows() != w ||
      b.modulus() != p)
    fail(errc::invalid_params, "pencil matrices must match the projector shape");
  if (!(mat_mul(em, em) == em)) fail(errc::invalid_params, "input is not an idempotent");
  std::size_t r = mat_rank(em);
  require_internal(r == e.rank, "projector rank field is stale");
  if (r <= 1) return e;  // no-op signal: nothing left to descend
  if (grid.size() < 4 * w * w - 4 * w + 1)
    fail(errc::invalid_params, "grid needs more than 4w^2 - 4w points");
  auto [u, m] = corner_representation(em, r);
  Mat ta = mat_mul(mat_mul(m, a), u);
  Mat tb = mat_mul(mat_mul(m, b), u);
  bool saw_rational = false;
  for (u64 lambda : grid) {
    Mat t = mat_add(ta, mat_scale(tb, lambda % p));
    Poly chi = mat_charpoly(t);
    if (poly_rational_root_count(chi) == 0) continue;
    saw_rational = true;
    auto mu = poly_smallest_root(chi, kEigenScanBudget, /*require_simple=*/true);
    if (!mu) continue;
    Mat shifted = mat_sub(mat_scale(Mat::identity(p, r), *mu), t);
    Mat adj = mat_adjugate(shifted);
    if (adj.is_zero()) continue;
    // At a simple eigenvalue the adjugate is rank one and its trace equals
    // chi'(mu) != 0, so dividing by the trace forces exact idempotence.
    u64 tr = mat_trace(adj);
    if (tr == 0) continue;
    Mat q = mat_scale(adj, field.inv(tr));
    require_internal(mat_mul(q, q) == q, "normalized corner adjugate is not idempotent");
    Mat lifted = mat_mul(mat_mul(u, q), m);
    require_internal(mat_mul(lifted, lifted) == lifted, "lifted corner projector not idempotent");
    require_internal(mat_rank(lifted) == 1, "lifted corner projector is not rank one");
    std::ostringstream trace;
    trace << "corner descent: lambda = " << lambda << ", simple eigenvalue mu = " << *mu
          << ", E' = U adj(mu I - T)/tr M";
    return Projector{lifted, 1, trace.str()};
  }
  if (!saw_rational)
    fail(errc::non_split_spectrum, "no rational corner eigenvalue at any grid point");
  fail(errc::grid_exhausted, "no grid point gave a simple rational corner eigenvalue");
}

std::vector<u64> default_grid(u64 p, std::size_t w) {
  u64 need = std::max<u64>(4 * u64(w) * w - 4 * w, w + 1) + 1;
  if (p < need)
    fail(errc::invalid_params,
         "field has fewer than " + std::to_string(need) + " residues for the descent grid");
  std::vector<u64> grid(need);
  for (u64 i = 0; i < need; ++i) grid[i] = i;
  return grid;
}

RankOneResult rank_one_projector(const WordAlgebraBasis& algebra, const std::vector<u64>& grid) {
  check_algebra(algebra);
  std::size_t w = algebra.w, dim = algebra.dim();
  if (dim != w * w)
    fail(errc::not_full_algebra, "closure dimension " + std::to_string(dim) + " is below w^2 = " +
                                     std::to_string(w * w));
  RankOneResult res;
  if (w == 1) {
    res.pi = Projector{Mat::identity(algebra.p, 1), 1, "w = 1: Pi = [1]"};
    res.log.push_back("w = 1: the scalar algebra's identity is already rank one");
    return res;
  }
  if (grid.size() < w + 2) fail(errc::invalid_params, "grid too small for the candidate scan");

  // Step 2-4 for one invertible candidate; nullopt when every pencil pair is
  // exhausted without reaching rank one.
  auto run_candidate = [&](const Mat& cand, const std::string& desc) -> std::optional<RankOneResult> {
    RankOneResult attempt;
    attempt.log = res.log;
    Projector current;
    try {
      current = ch_idempotent(cand);
    } catch (const Error& err) {
      if (err.code() == errc::non_split_spectrum) {
        res.log.push_back("candidate " + desc + ": non-split spectrum, skipped");
        return std::nullopt;
      }
      throw;
    }
    attempt.log.push_back("candidate " + desc + ": " + current.trace + "; rank " +
                          std::to_string(current.rank));
    while (current.rank > 1) {
      bool advanced = false;
      for (std::size_t ai = 0; ai < dim && !advanced; ++ai) {
        for (std::size_t bi = 0; bi < dim && !advanced; ++bi) {
          if (ai == bi) continue;
          try {
            Projector next = corner_rank_descent(current, algebra.basis[ai], algebra.basis[bi], grid);
            require_internal(next.rank < current.rank, "descent did not reduce rank");
            attempt.log.push_back("pencil (B" + std::to_string(ai) + ", B" + std::to_string(bi) +
                                  "): " + next.trace);
            current = next;
            ++attempt.descents;
            advanced = true;
          } catch (const Error& err) {
            if (err.code() == errc::grid_exhausted || err.code() == errc::non_split_spectrum)
              continue;
            throw;
          }
        }
      }
      if (!advanced) {
        res.log.push_back("candidate " + desc + ": every pencil pair exhausted at rank " +
                          std::to_string(current.rank));
        return std::nullopt;
      }
      require_internal(attempt.descents <= w - 1, "descent exceeded w - 1 steps");
    }
    attempt.pi = current;
    return attempt;
  };

  // Singles first (basis[0] = I is always invertible), then grid-weighted
  // pairs, in lexicographic order.
  for (std::size_t i = 0; i < dim; ++i) {
    const Mat& cand = algebra.basis[i];
    if (mat_det(cand) == 0) continue;
    if (auto done = run_candidate(cand, "B" + std::to_string(i))) return *done;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      for (u64 gamma : grid) {
        if (gamma == 0) continue;  // duplicates the singles scan
        Mat cand = mat_add(algebra.basis[i], mat_scale(algebra.basis[j], gamma % algebra.p));
        if (mat_det(cand) == 0) continue;
        std::string desc =
            "B" + std::to_string(i) + " + " + std::to_string(gamma) + "*B" + std::to_string(j);
        if (auto done = run_candidate(cand, desc)) return *done;
      }
    }
  }
  fail(errc::extraction_failed, "candidate schedule exhausted without a rank-one projector");
}

RankOneResult rank_one_projector(const WordAlgebraBasis& algebra) {
  return rank_one_projector(algebra, default_grid(algebra.p, algebra.w));
}

MatrixUnits matrix_units(const WordAlgebraBasis& algebra, const Projector& pi,
                         std::size_t s_index, std::size_t t_index) {
  check_algebra(algebra);
  std::size_t w = algebra.w, dim = algebra.dim();
  u64 p = algebra.p;
  Fp field(p);
  if (dim != w * w)
    fail(errc::not_full_algebra, "matrix units need the full w^2-dimensional algebra");
  if (s_index >= w || t_index >= w) fail(errc::invalid_params, "selector index out of range");
  const Mat& pm = pi.matrix;
  if (!pm.square() || pm.rows() != w || pm.modulus() != p)
    fail(errc::invalid_params, "projector shape or modulus differs from the algebra");
  if (!(mat_mul(pm, pm) == pm) || mat_rank(pm) != 1)
    fail(errc::invalid_params, "matrix units need a rank-one idempotent");

  // Factor pi = u v^T; idempotence forces v^T u = tr(pi) = 1.
  std::size_t col = w, row = w;
  for (std::size_t j = 0; j < w && col == w; ++j)
    for (std::size_t i = 0; i < w; ++i)
      if (pm.at(i, j) != 0) { col = j; break; }
  require_internal(col < w, "rank-one projector has no nonzero column");
  std::vector<u64> u(w), v(w);
  for (std::size_t i = 0; i < w; ++i) u[i] = pm.at(i, col);
  for (std::size_t i = 0; i < w && row == w; ++i)
    if (u[i] != 0) row = i;
  u64 scale = field.inv(u[row]);
  for (std::size_t j = 0; j < w; ++j) v[j] = field.mul(pm.at(row, j), scale);
  u64 pairing = 0;
  for (std::size_t i = 0; i < w; ++i) pairing = field.add(pairing, field.mul(v[i], u[i]));
  require_internal(pairing == 1, "rank-one idempotent must have trace 1");
  if (u[s_index] == 0)
    fail(errc::degenerate_selector,
         "s^T u = 0: the projector is blind to the source selector; retry with another projector");
  if (v[t_index] == 0)
    fail(errc::degenerate_selector,
         "v^T t = 0: the projector is blind to the sink selector; retry with another projector");

  // Solve, in basis coordinates, U_i u = e_i and v^T V_j = e_j^T.
  Mat left_cols(p, w, dim), right_cols(p, w, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<u64> bu = mat_apply(algebra.basis[k], u);
    std::vector<u64> vb = mat_apply_left(v, algebra.basis[k]);
    for (std::size_t i = 0; i < w; ++i) {
      left_cols.at(i, k) = bu[i];
      right_cols.at(i, k) = vb[i];
    }
  }
  MatrixUnits out;
  out.u = u;
  out.v = v;
  out.left.reserve(w);
  out.right.reserve(w);
  for (std::size_t i = 0; i < w; ++i) {
    std::vector<u64> ei(w, 0);
    ei[i] = 1;
    auto alpha = mat_solve(left_cols, ei);
    auto beta = mat_solve(right_cols, ei);
    require_internal(alpha.has_value() && beta.has_value(),
                     "matrix-unit systems must be solvable in a full algebra");
    out.left.push_back(combine(algebra.basis, *alpha, p, w));
    out.right.push_back(combine(algebra.basis, *beta, p, w));
  }
  out.units.reserve(w);
  for (std::size_t i = 0; i < w; ++i) {
    std::vector<Mat> rowv;
    rowv.reserve(w);
    for (std::size_t j = 0; j < w; ++j) {
      Mat wij = mat_mul(mat_mul(out.left[i], pm), out.right[j]);
      require_internal(wij == Mat::unit(p, w, i, j), "matrix unit W_ij != e_i e_j^T");
      rowv.push_back(std::move(wij));
    }
    out.units.push_back(std::move(rowv));
  }
  return out;
}

}  // namespace ropit
