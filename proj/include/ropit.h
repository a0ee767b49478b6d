/* ropit - exact identity testing for read-once oblivious algebraic
 * branching programs.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * and heap strings released through ropit_string_free.  Every function
 * returns ROPIT_OK on success; on failure the returned status identifies the
 * error class and ropit_last_error() carries a human-readable message for
 * the calling thread.
 */
#ifndef ROPIT_H
#define ROPIT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes.  Nonzero values are the library's failure taxonomy in
 * declaration order, offset by one so that 0 stays "ok". */
typedef enum ropit_status {
  ROPIT_OK = 0,
  ROPIT_E_ZERO_INVERSE,
  ROPIT_E_MODULUS_MISMATCH,
  ROPIT_E_CHARACTERISTIC_TOO_SMALL,
  ROPIT_E_DEGREE_ZERO_INPUT,
  ROPIT_E_DEGREE_TOO_LOW,
  ROPIT_E_NON_SQUARE,
  ROPIT_E_RING_MISMATCH,
  ROPIT_E_ARITY_MISMATCH,
  ROPIT_E_BUDGET_EXCEEDED,
  ROPIT_E_INVALID_PARAMS,
  ROPIT_E_PARSE_ERROR,
  ROPIT_E_NON_SPLIT_SPECTRUM,
  ROPIT_E_NOT_IDEMPOTENT_MOD_RADICAL,
  ROPIT_E_ZERO_IDEMPOTENT,
  ROPIT_E_GRID_EXHAUSTED,
  ROPIT_E_NOT_FULL_ALGEBRA,
  ROPIT_E_EXTRACTION_FAILED,
  ROPIT_E_DEGENERATE_SELECTOR,
  ROPIT_E_WORD_COUNT_MISMATCH,
  ROPIT_E_THRESHOLD_OVERFLOW,
  ROPIT_E_NO_COLLISION_FOUND,
  ROPIT_E_BASE_TOO_SMALL,
  ROPIT_E_FIELD_TOO_SMALL,
  ROPIT_E_ALL_ROOTS,
  ROPIT_E_DEGREE_BUDGET_EXCEEDED,
  ROPIT_E_IO_ERROR,
  ROPIT_E_INTERNAL_ERROR
} ropit_status;

/* Stable name of a status code ("ok", "ParseError", ...). */
const char* ropit_status_name(int status);

/* Message of the calling thread's most recent failure; empty string when the
 * last call succeeded.  The pointer stays valid until the thread's next
 * library call. */
const char* ropit_last_error(void);

/* Library version string. */
const char* ropit_version(void);

/* Frees a string returned through a char** out parameter. */
void ropit_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Programs                                                            */

typedef struct ropit_program ropit_program;

/* Parse the text format (see README: header fields p/w/n/d/s/t, then one
 * "layer i, coeff j:" block per coefficient matrix). */
ropit_status ropit_program_parse(const char* text, ropit_program** out);
ropit_status ropit_program_read(const char* path, ropit_program** out);

/* Deterministic generator.  Families: "random", "diagonal",
 * "upper_triangular", "path_controlled", "zero_difference", "two_monomial". */
ropit_status ropit_program_generate(const char* family, uint64_t seed, uint64_t p,
                                    uint64_t w, uint64_t n, uint64_t d,
                                    ropit_program** out);

/* Difference of two monomials x^S - x^S' induced by the exponent map
 * x_i -> g^i mod r; the masks select S and S'.  The resulting program
 * vanishes under that substitution while staying nonzero as a polynomial. */
ropit_status ropit_collision_program(uint64_t r, uint64_t g, uint64_t n, uint64_t p,
                                     uint64_t* s_mask, uint64_t* s_prime_mask,
                                     ropit_program** out);

ropit_status ropit_program_text(const ropit_program* prog, char** out);
ropit_status ropit_program_write(const ropit_program* prog, const char* path);
void ropit_program_free(ropit_program* prog);

uint64_t ropit_program_p(const ropit_program* prog);
uint64_t ropit_program_w(const ropit_program* prog);
uint64_t ropit_program_n(const ropit_program* prog);
uint64_t ropit_program_d(const ropit_program* prog);

/* ------------------------------------------------------------------ */
/* Identity testing through a cyclic substitution                      */

typedef struct ropit_pit_options {
  uint64_t modulus;         /* explicit prime r; 0 = derive from the power   */
  uint64_t threshold_power; /* c in "smallest prime r > (w*d)^c"; 0 = 2      */
  uint64_t first_k;         /* only test g = 1..first_k; 0 = full schedule   */
  int force_naive;          /* nonzero: skip the evaluation fast path        */
} ropit_pit_options;

typedef struct ropit_pit_verdict {
  int nonzero;              /* 1: some substitution image was nonzero        */
  uint64_t witness_g;       /* smallest witnessing parameter when nonzero    */
  int conditional;          /* 1: the zero verdict rests on the full sweep   */
  uint64_t params_tested;
  uint64_t modulus;         /* the prime r actually used                     */
  double wall_ms;
} ropit_pit_verdict;

/* opts == NULL means all defaults. */
ropit_status ropit_pit_modular(const ropit_program* prog, const ropit_pit_options* opts,
                               ropit_pit_verdict* out);

/* ------------------------------------------------------------------ */
/* Identity testing along the univariate curve                         */

typedef struct ropit_curve_verdict {
  int nonzero;
  uint64_t lambda_star;     /* witness curve parameter when nonzero          */
  uint64_t points_tested;
  uint64_t grid_bound;      /* largest curve parameter in the grid           */
  uint64_t effective_m;     /* prefix coefficient-space dimension count      */
  double wall_ms;
} ropit_curve_verdict;

ropit_status ropit_pit_curve(const ropit_program* prog, ropit_curve_verdict* out);

/* Same test with the curve sized for shape (w, d); each value must dominate
 * the program's own (0 keeps the program's value).  A larger shape only
 * enlarges the base and the grid, so the verdict stays sound. */
ropit_status ropit_pit_curve_sized(const ropit_program* prog, uint64_t w, uint64_t d,
                                   ropit_curve_verdict* out);

/* Full hitting set for shape (w, d, n) over F_p as text: a commented header
 * followed by one "lambda, x_1, ..., x_n" line per member.  p == 0 selects
 * the default 61-bit prime. */
ropit_status ropit_hitting_set_text(uint64_t p, uint64_t w, uint64_t d, uint64_t n,
                                    char** out);

/* ------------------------------------------------------------------ */
/* Bad-parameter scans                                                 */

/* Sweeps g = 1..min(r-1, g_budget) (g_budget 0 = none), lists the parameters
 * whose substitution image vanishes, re-verifies each one on the exact
 * convolution path, and renders the result as CSV and/or JSON.  Either out
 * pointer may be NULL.  r == 0 derives the modulus from the program shape
 * with the default threshold rule.  workers 0 = serial (or ROPIT_WORKERS).
 * epsilon <= 0 defaults to 0.1; the report compares the bad count against
 * r^(1-epsilon).  instance_id is an optional label copied into the report
 * (NULL = none). */
ropit_status ropit_scan_run(const ropit_program* prog, uint64_t r, uint64_t g_budget,
                            double epsilon, uint64_t workers, const char* instance_id,
                            char** out_csv, char** out_json);

/* ------------------------------------------------------------------ */
/* Structure reports                                                   */

/* Multi-line text report on the word algebra generated by the program's
 * layer coefficient matrices: dimension, radical, rank-one projector
 * extraction, matrix units, and the prefix coefficient-space profile. */
ropit_status ropit_algebra_report(const ropit_program* prog, char** out);

/* ------------------------------------------------------------------ */
/* Worked example                                                      */

/* The two-variable product program C(x1, x2) = x1 * x2 over F_29 whose
 * substitution image at hashing modulus 7 is lambda^((g + g^2) mod 7). */
ropit_status ropit_demo_program(ropit_program** out);

/* Deterministic demo report: exponent table (each image verified
 * coefficient-exactly), bad-parameter scan, verdict line, and the note on
 * the g = 6 exponent. */
ropit_status ropit_demo_text(char** out);

#ifdef __cplusplus
}
#endif

#endif /* ROPIT_H */
