#include "ropit.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "hitting_curve.hpp"
#include "modular_pit.hpp"
#include "roabp.hpp"
#include "word_algebra.hpp"

using namespace ropit;

struct ropit_program {
  Roabp prog;
};

namespace {

// The C status block mirrors errc in declaration order, offset by one.
static_assert((int)errc::zero_inverse + 1 == ROPIT_E_ZERO_INVERSE);
static_assert((int)errc::parse_error + 1 == ROPIT_E_PARSE_ERROR);
static_assert((int)errc::zero_idempotent + 1 == ROPIT_E_ZERO_IDEMPOTENT);
static_assert((int)errc::field_too_small + 1 == ROPIT_E_FIELD_TOO_SMALL);
static_assert((int)errc::internal_error + 1 == ROPIT_E_INTERNAL_ERROR);

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = (char*)std::malloc(s.size() + 1);
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body, translating the failure taxonomy into status codes and
// stashing the message for ropit_last_error.
template <typename F>
ropit_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return ROPIT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return (ropit_status)((int)e.code() + 1);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ROPIT_E_INTERNAL_ERROR;
  }
}

ropit_status require_arg(bool ok, const char* what) {
  if (ok) return ROPIT_OK;
  g_last_error = what;
  return ROPIT_E_INVALID_PARAMS;
}

}  // namespace

extern "C" {

const char* ropit_status_name(int status) {
  if (status == ROPIT_OK) return "ok";
  if (status >= ROPIT_E_ZERO_INVERSE && status <= ROPIT_E_INTERNAL_ERROR)
    return errc_name((errc)(status - 1));
  return "unknown";
}

const char* ropit_last_error(void) { return g_last_error.c_str(); }

const char* ropit_version(void) { return "1.0.0"; }

void ropit_string_free(char* s) { std::free(s); }

ropit_status ropit_program_parse(const char* text, ropit_program** out) {
  if (auto bad = require_arg(text && out, "null argument")) return bad;
  return guarded([&] { *out = new ropit_program{roabp_parse(text)}; });
}

ropit_status ropit_program_read(const char* path, ropit_program** out) {
  if (auto bad = require_arg(path && out, "null argument")) return bad;
  return guarded([&] { *out = new ropit_program{roabp_read_file(path)}; });
}

ropit_status ropit_program_generate(const char* family, uint64_t seed, uint64_t p,
                                    uint64_t w, uint64_t n, uint64_t d,
                                    ropit_program** out) {
  if (auto bad = require_arg(family && out, "null argument")) return bad;
  return guarded([&] {
    GenerateParams params;
    params.family = family_from_name(family);
    params.seed = seed;
    params.p = p ? p : kDefaultPrime;
    params.w = w;
    params.n = n;
    params.d = d;
    *out = new ropit_program{roabp_generate(params)};
  });
}

ropit_status ropit_collision_program(uint64_t r, uint64_t g, uint64_t n, uint64_t p,
                                     uint64_t* s_mask, uint64_t* s_prime_mask,
                                     ropit_program** out) {
  if (auto bad = require_arg(out != nullptr, "null argument")) return bad;
  return guarded([&] {
    CollisionInstance inst = collision_instance(r, g, n, p ? p : kDefaultPrime);
    if (s_mask) *s_mask = inst.s_mask;
    if (s_prime_mask) *s_prime_mask = inst.s_prime_mask;
    *out = new ropit_program{std::move(inst.program)};
  });
}

ropit_status ropit_program_text(const ropit_program* prog, char** out) {
  if (auto bad = require_arg(prog && out, "null argument")) return bad;
  return guarded([&] { *out = dup_string(roabp_serialize(prog->prog)); });
}

ropit_status ropit_program_write(const ropit_program* prog, const char* path) {
  if (auto bad = require_arg(prog && path, "null argument")) return bad;
  return guarded([&] { roabp_write_file(prog->prog, path); });
}

void ropit_program_free(ropit_program* prog) { delete prog; }

uint64_t ropit_program_p(const ropit_program* prog) { return prog ? prog->prog.p : 0; }
uint64_t ropit_program_w(const ropit_program* prog) { return prog ? prog->prog.w : 0; }
uint64_t ropit_program_n(const ropit_program* prog) { return prog ? prog->prog.n : 0; }
uint64_t ropit_program_d(const ropit_program* prog) { return prog ? prog->prog.d : 0; }

ropit_status ropit_pit_modular(const ropit_program* prog, const ropit_pit_options* opts,
                               ropit_pit_verdict* out) {
  if (auto bad = require_arg(prog && out, "null argument")) return bad;
  return guarded([&] {
    ModulusPolicy policy;
    if (opts && opts->modulus) policy.explicit_r = opts->modulus;
    if (opts && opts->threshold_power) policy.threshold_power = opts->threshold_power;
    u64 r = choose_modulus(prog->prog.w, prog->prog.d, prog->prog.p, policy);

    PitOptions options;
    if (opts && opts->first_k) {
      options.schedule = Schedule::first_k;
      options.first_k = opts->first_k;
    }
    options.force_naive = opts && opts->force_naive;

    PitVerdict verdict = pit_modular(prog->prog, r, options);
    out->nonzero = verdict.nonzero ? 1 : 0;
    out->witness_g = verdict.witness_g;
    out->conditional = verdict.conditional ? 1 : 0;
    out->params_tested = verdict.params_tested;
    out->modulus = r;
    out->wall_ms = verdict.wall_ms;
  });
}

ropit_status ropit_pit_curve(const ropit_program* prog, ropit_curve_verdict* out) {
  return ropit_pit_curve_sized(prog, 0, 0, out);
}

ropit_status ropit_pit_curve_sized(const ropit_program* prog, uint64_t w, uint64_t d,
                                   ropit_curve_verdict* out) {
  if (auto bad = require_arg(prog && out, "null argument")) return bad;
  return guarded([&] {
    CurveVerdict verdict = hitting_pit(prog->prog, 8, 1000000, w, d);
    out->nonzero = verdict.nonzero ? 1 : 0;
    out->lambda_star = verdict.lambda_star;
    out->points_tested = verdict.points_tested;
    out->grid_bound = verdict.grid_bound;
    out->effective_m = verdict.effective_m;
    out->wall_ms = verdict.wall_ms;
  });
}

ropit_status ropit_hitting_set_text(uint64_t p, uint64_t w, uint64_t d, uint64_t n,
                                    char** out) {
  if (auto bad = require_arg(out != nullptr, "null argument")) return bad;
  return guarded([&] { *out = dup_string(hitting_set_text(p ? p : kDefaultPrime, w, d, n)); });
}

ropit_status ropit_scan_run(const ropit_program* prog, uint64_t r, uint64_t g_budget,
                            double epsilon, uint64_t workers, const char* instance_id,
                            char** out_csv, char** out_json) {
  if (auto bad = require_arg(prog != nullptr, "null argument")) return bad;
  return guarded([&] {
    u64 modulus = r ? r : choose_modulus(prog->prog.w, prog->prog.d, prog->prog.p);
    ScanReport report = scan_bad_set(prog->prog, modulus, g_budget,
                                     epsilon > 0 ? epsilon : 0.1, workers,
                                     instance_id ? instance_id : "");
    if (out_csv) *out_csv = dup_string(scan_report_csv(report));
    if (out_json) *out_json = dup_string(scan_report_json(report));
  });
}

ropit_status ropit_demo_program(ropit_program** out) {
  if (auto bad = require_arg(out != nullptr, "null argument")) return bad;
  return guarded([&] { *out = new ropit_program{worked_example_program()}; });
}

ropit_status ropit_demo_text(char** out) {
  if (auto bad = require_arg(out != nullptr, "null argument")) return bad;
  return guarded([&] { *out = dup_string(worked_example_text()); });
}

ropit_status ropit_algebra_report(const ropit_program* prog, char** out) {
  if (auto bad = require_arg(prog && out, "null argument")) return bad;
  return guarded([&] {
    const Roabp& program = prog->prog;
    std::ostringstream text;
    text << "program: w=" << program.w << " n=" << program.n << " d=" << program.d
         << " p=" << program.p << "\n";

    std::vector<Mat> generators;
    for (const auto& layer : program.layers)
      for (const Mat& coeff : layer) generators.push_back(coeff);
    text << "generators: " << generators.size() << " layer coefficient matrices\n";

    WordAlgebraBasis algebra = span_closure(generators);
    std::size_t full = program.w * program.w;
    text << "word algebra dimension: " << algebra.dim() << " of " << full
         << (algebra.dim() == full ? " (full matrix algebra)" : "") << "\n";
    text << "basis words:";
    for (std::size_t i = 0; i < algebra.words.size() && i < 8; ++i)
      text << ' ' << word_to_string(algebra.words[i]);
    if (algebra.words.size() > 8) text << " ...";
    text << "\n";

    try {
      text << "radical dimension: " << radical_trace_form(algebra).size() << "\n";
    } catch (const Error& e) {
      text << "radical: unavailable (" << e.what() << ")\n";
    }

    try {
      RankOneResult result = rank_one_projector(algebra);
      text << "rank-one projector: found after " << result.descents << " corner descent"
           << (result.descents == 1 ? "" : "s") << "\n";
      for (const std::string& line : result.log) text << "  " << line << "\n";
      try {
        matrix_units(algebra, result.pi, program.s_index, program.t_index);
        text << "matrix units: all " << full << " verified against the selector pair\n";
      } catch (const Error& e) {
        text << "matrix units: " << errc_name(e.code()) << " (" << e.what() << ")\n";
      }
    } catch (const Error& e) {
      text << "rank-one projector: " << errc_name(e.code()) << " (" << e.what() << ")\n";
    }

    ReductionMap reduction = prefix_space_reduce(program);
    text << "prefix space dimensions:";
    for (std::size_t i = 0; i < reduction.level_dims.size() && i < 16; ++i)
      text << ' ' << reduction.level_dims[i];
    if (reduction.level_dims.size() > 16) text << " ...";
    text << "\nprefix space count m: " << reduction.m << " (saturates after layer "
         << reduction.saturation_level << ")\n";
    *out = dup_string(text.str());
  });
}

}  // extern "C"
