#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace ropit {

// Eigenvalue scans walk mu = 0, 1, 2, ... and stop after this many residues
// (or at p-1, whichever is first), so scans terminate on large fields.
inline constexpr u64 kEigenScanBudget = 1000000;

// Unital matrix algebra generated by a list of w x w matrices, presented by a
// linearly independent basis.  basis[0] is the identity; every basis element
// carries the product of generators ("word") that produced it.
struct WordAlgebraBasis {
  u64 p = 0;
  std::size_t w = 0;
  std::vector<Mat> generators;                  // [0] = I, inputs follow
  std::vector<Mat> basis;                       // basis[0] = I
  std::vector<std::vector<std::size_t>> words;  // indices >= 1 into generators
  std::size_t dim() const { return basis.size(); }
};

// Closure of span{words in the generators} under multiplication, computed by
// breadth-first right-extension with an incremental row-echelon membership
// sieve.  Dimension is capped by w^2; pairwise products of the returned basis
// are verified to stay inside the span.
WordAlgebraBasis span_closure(const std::vector<Mat>& generators);

// Product of generators named by `word` (empty word = identity).
Mat word_value(const WordAlgebraBasis& algebra, const std::vector<std::size_t>& word);
std::string word_to_string(const std::vector<std::size_t>& word);

// Coordinates of m in the algebra basis, or nullopt when m lies outside.
std::optional<std::vector<u64>> algebra_coordinates(const WordAlgebraBasis& algebra,
                                                    const Mat& m);

// Basis of the radical {X in A : Trace(X B) = 0 for all B in A}, via the
// kernel of the trace Gram matrix.  Valid for p > w (CharacteristicTooSmall
// otherwise); every returned element is verified nilpotent and length-w
// products of radical basis elements are verified to vanish.
std::vector<Mat> radical_trace_form(const WordAlgebraBasis& algebra);

struct FullnessWitness {
  Mat gram;   // gram[a][b] = e_s^T L_a R_b e_t, a w^2 x w^2 matrix
  u64 delta;  // det(gram); delta != 0 certifies the algebra is all of Mat_w
};

// Sound direction only: delta != 0 proves the w^2 left words are linearly
// independent, hence the closure is full; delta == 0 decides nothing.
FullnessWitness fullness_witness(const WordAlgebraBasis& algebra,
                                 const std::vector<Mat>& left_words,
                                 const std::vector<Mat>& right_words, std::size_t s_index,
                                 std::size_t t_index);

// An exact idempotent (P^2 = P) with its rank and the recipe that built it.
struct Projector {
  Mat matrix = Mat(0, 0, 0);
  std::size_t rank = 0;
  std::string trace;
};

// Spectral projector of m onto the primary component of its smallest rational
// eigenvalue c: with minpoly = (t-c)^e * g, gcd((t-c)^e, g) = 1, the Bezout
// identity a(t-c)^e + bg = 1 makes E = (bg)(m) an exact idempotent (identity
// on the generalized c-eigenspace, zero on the rest).  When the minimal
// polynomial has a single primary factor the projector is the identity.
// NonSplitSpectrum when no rational eigenvalue exists within the scan budget.
Projector ch_idempotent(const Mat& m);

// Lift an approximate idempotent (defect e^2 - e inside the radical span,
// checked; NotIdempotentModRadical otherwise) to an exact one by iterating
// X <- X(2I - X) at most ceil(log2 w) times.  Each step squares the defect on
// the image side of e; a defect component on the kernel side cannot be
// removed by this iteration and is reported as NotIdempotentModRadical.  An
// input lying inside the radical lifts to zero: ZeroIdempotent.
Projector newton_lift(const Mat& e, const WordAlgebraBasis& algebra);

// One corner descent step: writes the compression of A + lambda*B to the
// corner algebra e Mat_w e in an image-basis representation, scans the grid
// for lambda whose corner characteristic polynomial has a simple rational
// root mu, and returns the trace-normalized corner adjugate of (mu I - T)
// lifted back to w x w — an exact idempotent of rank 1 below e.  Rank-one
// input is returned unchanged (no-op signal).  Grid must have more than
// 4w^2 - 4w points.  NonSplitSpectrum when no grid point produced a rational
// corner eigenvalue at all, GridExhausted when roots existed but none simple.
Projector corner_rank_descent(const Projector& e, const Mat& a, const Mat& b,
                              const std::vector<u64>& grid);

// {0, 1, ..., max(4w^2-4w, w+1)}: large enough for both the invertibility
// scan and the corner descent precondition.  InvalidParams when p is too
// small to supply that many distinct residues.
std::vector<u64> default_grid(u64 p, std::size_t w);

struct RankOneResult {
  Projector pi;
  std::size_t descents = 0;         // corner steps taken (0 when ch_idempotent
                                    // already produced rank one)
  std::vector<std::string> log;     // full construction trace
};

// Full pipeline on a w^2-dimensional algebra (NotFullAlgebra otherwise):
// scan basis singles then grid-weighted pairs for an invertible candidate,
// take its spectral idempotent, and corner-descend with basis pairs until the
// rank reaches one.  Deterministic schedules throughout; ExtractionFailed
// when every candidate is exhausted.
RankOneResult rank_one_projector(const WordAlgebraBasis& algebra, const std::vector<u64>& grid);
RankOneResult rank_one_projector(const WordAlgebraBasis& algebra);

struct MatrixUnits {
  std::vector<std::vector<Mat>> units;  // units[i][j] = e_i e_j^T, exact
  std::vector<Mat> left;                // U_i in the algebra, U_i u = e_i
  std::vector<Mat> right;               // V_j in the algebra, v^T V_j = e_j^T
  std::vector<u64> u, v;                // pi = u v^T with v^T u = 1
};

// Transport a rank-one idempotent pi = u v^T into a complete system of matrix
// units by solving, in basis coordinates, U_i u = e_i and v^T V_j = e_j^T;
// then U_i pi V_j = e_i e_j^T exactly (verified).  The program selectors must
// be visible to pi: u[s] != 0 and v[t] != 0, else DegenerateSelector.
MatrixUnits matrix_units(const WordAlgebraBasis& algebra, const Projector& pi,
                         std::size_t s_index, std::size_t t_index);

}  // namespace ropit
