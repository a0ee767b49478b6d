#pragma once

#include <string>
#include <vector>

#include "ring.hpp"
#include "roabp.hpp"

namespace ropit {

// The substitution x_i |-> lambda^{v_i} into R_r, with v_i = g^i mod r.
struct SubstitutionParams {
  u64 r = 0, g = 0;
  std::vector<u64> v;  // v[i-1] = g^i mod r, i = 1..n
};

SubstitutionParams make_substitution(u64 r, u64 g, std::size_t n);

// Either an explicit modulus, or the smallest prime at or above (w*d)^c.
struct ModulusPolicy {
  u64 threshold_power = 2;  // c; the conjectured safe regime uses c = 7
  u64 explicit_r = 0;       // nonzero overrides the threshold rule
};

// Smallest admissible hashing modulus r != p for the given shape.
// ThresholdOverflow when (w*d)^c leaves the supported 61-bit range.
u64 choose_modulus(std::size_t w, std::size_t d, u64 p, const ModulusPolicy& policy = {});

// C_g(lambda) = C(lambda^{v_1}, ..., lambda^{v_n}) as an element of R_r.
RingElem substitute_gamma(const Roabp& prog, const CyclicRing& ring,
                          const SubstitutionParams& params);
RingElem substitute_gamma(const Roabp& prog, const SubstitutionParams& params);

// Exact test of C_g == 0 in R_r.  When F_p contains an r-th root of unity
// omega, C_g is zero iff the plain field evaluation C(omega^{j v_1}, ...,
// omega^{j v_n}) vanishes for every j in 0..r-1 (the r-point evaluation is a
// ring isomorphism), so scanning j with early exit replaces ring arithmetic;
// force_naive insists on the dense cyclic-convolution path instead.
bool gamma_is_zero(const Roabp& prog, const CyclicRing& ring, u64 g, bool force_naive = false);

enum class Schedule { all, first_k };

struct PitOptions {
  Schedule schedule = Schedule::all;
  u64 first_k = 0;          // schedule bound when Schedule::first_k
  bool force_naive = false; // disable the transform fast path
};

struct PitVerdict {
  bool nonzero = false;
  u64 witness_g = 0;     // first g with C_g != 0 (valid when nonzero)
  bool conditional = false;  // ZERO verdicts depend on the stability hypothesis
  u64 params_tested = 0;
  double wall_ms = 0.0;
};

// Black-box identity test by modular hashing: enumerate g = 1, 2, ...
// ascending; NONZERO at the first nonzero image is unconditionally sound
// (a homomorphic image of the zero polynomial is zero); ZERO after the full
// schedule is conditional and flagged as such.
PitVerdict pit_modular(const Roabp& prog, u64 r, const PitOptions& opts = {});

// The two-monomial collision obstruction: distinct subsets S, S' of {1..n}
// with equal v-sums mod r give C = prod_{S} x_i - prod_{S'} x_i, a nonzero
// program whose image C_g is identically zero.
struct CollisionInstance {
  u64 s_mask = 0, s_prime_mask = 0;  // bit i-1 = variable i
  SubstitutionParams params;
  Roabp program;
};

// Scans subsets in ascending bitmask order and reports the first collision
// (smallest second mask, then smallest first mask); NoCollisionFound when all
// 2^n subset sums are distinct mod r.  n is capped at 24.  The postcondition
// (image zero, program nonzero) is verified before returning.
CollisionInstance collision_instance(u64 r, u64 g, std::size_t n, u64 p = kDefaultPrime);

struct ScanReport {
  u64 r = 0;
  std::size_t n = 0, d = 0, w = 0;
  u64 params_tested = 0;
  std::vector<u64> bad_values;  // ascending
  // A scan certifies NONZERO unconditionally as soon as one g is good; only
  // the all-bad (would-be ZERO) reading depends on the stability hypothesis.
  bool conditional = false;
  double wall_ms = 0.0;
  double epsilon = 0.1;     // report-level policy knob
  double bound = 0.0;       // r^(1-epsilon)
  bool within_bound = true; // |bad| <= bound
  std::string instance;     // identifier echoed into reports
};

// Tests g = 1..min(g_budget, r-1) and records every g with C_g == 0.  The
// range is partitioned across `workers` threads (0 = honor ROPIT_WORKERS,
// default 1); results are merged deterministically, and every bad g is
// re-verified through the naive convolution path before being reported.
ScanReport scan_bad_set(const Roabp& prog, u64 r, u64 g_budget, double epsilon = 0.1,
                        std::size_t workers = 0, const std::string& instance_id = "");

std::string scan_report_csv(const ScanReport& rep);
std::string scan_report_json(const ScanReport& rep);

// Image of an explicit monomial map under the same substitution; lets tests
// check that Gamma_g is a ring homomorphism against map-level products.
RingElem gamma_of_monomial_map(const MonomialMap& map, const CyclicRing& ring,
                               const SubstitutionParams& params);

// The two-variable product C(x1, x2) = x1 * x2 over F_29 with hashing
// modulus r = 7: the substitution x_i -> lambda^{g^i mod 7} sends C to
// lambda^{(g + g^2) mod 7}, which is nonzero for every g in {1..6} (g = 6
// lands on the constant 1).  Width-2 program behind the demo command, laid
// out so the selector pair (e1, e2) reads the product off the upper-right
// corner: A1 puts x1 in entry (1,2), A2 puts x2 in entry (2,2).
Roabp worked_example_program();

// Full demo report: exponent table with each image verified coefficient-
// exactly, the bad-parameter scan, the verdict line, and the arithmetic note
// on the g = 6 exponent.  Deterministic, no timing fields.
std::string worked_example_text();

}  // namespace ropit
