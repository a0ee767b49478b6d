// Command-line front door: identity tests, bad-parameter scans, hitting-set
// export, the worked example, and word-algebra structure reports.  Everything
// goes through the shared C API; progress lines go to standard error, results
// to standard output or files.
//
// Exit codes: 0 = verdict/report produced, 2 = input or configuration error,
// 3 = field/environment error (the field is too small for the requested grid).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ropit.h"

namespace {

using ProgramPtr = std::unique_ptr<ropit_program, decltype(&ropit_program_free)>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ropit_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

// Library failure -> diagnostic + process exit code.
int exit_for(int status) {
  std::fprintf(stderr, "error: %s (%s)\n", ropit_last_error(), ropit_status_name(status));
  return status == ROPIT_E_FIELD_TOO_SMALL ? 3 : 2;
}

// Instance source shared by the commands: an explicit file, or a generator
// family with a shape and seed.
struct Source {
  std::string instance;
  std::string family;
  std::uint64_t seed = 0;
  std::uint64_t p = 0;  // 0 = library default prime
  std::uint64_t w = 2;
  std::uint64_t n = 2;
  std::uint64_t d = 1;

  void attach(CLI::App* cmd, bool instance_positional) {
    if (instance_positional)
      cmd->add_option("instance", instance, "program file");
    else
      cmd->add_option("--instance", instance, "program file");
    cmd->add_option("--family", family,
                    "generator family: random, diagonal, upper_triangular, "
                    "path_controlled, zero_difference, two_monomial");
    cmd->add_option("--seed", seed, "generator seed");
    cmd->add_option("--p", p, "field modulus (default: 2^61 - 1)");
    cmd->add_option("--w", w, "generated width");
    cmd->add_option("--n", n, "generated variable count");
    cmd->add_option("--d", d, "generated individual degree");
  }

  int load(std::uint64_t seed_offset, ProgramPtr& out, std::string& label) const {
    if (instance.empty() == family.empty()) {
      std::fprintf(stderr, "error: give exactly one of an instance file or --family\n");
      return 2;
    }
    ropit_program* raw = nullptr;
    int status;
    if (!instance.empty()) {
      status = ropit_program_read(instance.c_str(), &raw);
      label = instance;
    } else {
      status = ropit_program_generate(family.c_str(), seed + seed_offset, p, w, n, d, &raw);
      label = family + ":" + std::to_string(seed + seed_offset);
    }
    if (status != ROPIT_OK) return exit_for(status);
    out = ProgramPtr(raw, &ropit_program_free);
    return 0;
  }
};

std::uint64_t parse_params(const std::string& text) {
  if (text == "all") return UINT64_MAX;
  return std::stoull(text);
}

int write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  file << text;
  if (!file) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return 2;
  }
  std::fprintf(stderr, "# wrote %s\n", out_path.c_str());
  return 0;
}

int cmd_pit(const Source& source, const std::string& mode, std::uint64_t r, std::uint64_t c,
            const std::string& params, bool naive, std::uint64_t curve_w,
            std::uint64_t curve_d) {
  ProgramPtr prog(nullptr, &ropit_program_free);
  std::string label;
  if (int bad = source.load(0, prog, label)) return bad;

  if (mode == "modular") {
    ropit_pit_options opts{};
    opts.modulus = r;
    opts.threshold_power = c;
    std::uint64_t budget = parse_params(params);
    opts.first_k = budget == UINT64_MAX ? 0 : budget;
    opts.force_naive = naive ? 1 : 0;
    ropit_pit_verdict verdict{};
    int status = ropit_pit_modular(prog.get(), &opts, &verdict);
    if (status != ROPIT_OK) return exit_for(status);
    std::fprintf(stderr, "# %s: modulus r=%llu, %llu parameters tested, %.2f ms\n",
                 label.c_str(), (unsigned long long)verdict.modulus,
                 (unsigned long long)verdict.params_tested, verdict.wall_ms);
    if (verdict.nonzero)
      std::printf("NONZERO g=%llu\n", (unsigned long long)verdict.witness_g);
    else
      std::printf("ZERO (conditional)\n");
    return 0;
  }

  ropit_curve_verdict verdict{};
  int status = ropit_pit_curve_sized(prog.get(), curve_w, curve_d, &verdict);
  if (status != ROPIT_OK) return exit_for(status);
  std::fprintf(stderr,
               "# %s: grid 0..%llu, %llu points tested, prefix spaces m=%llu, %.2f ms\n",
               label.c_str(), (unsigned long long)verdict.grid_bound,
               (unsigned long long)verdict.points_tested,
               (unsigned long long)verdict.effective_m, verdict.wall_ms);
  if (verdict.nonzero)
    std::printf("NONZERO lambda=%llu\n", (unsigned long long)verdict.lambda_star);
  else
    std::printf("ZERO (curve)\n");
  return 0;
}

int cmd_scan(const Source& source, std::uint64_t r, const std::string& params,
             double epsilon, std::uint64_t workers, std::uint64_t count,
             const std::string& format, const std::string& out_path) {
  std::uint64_t budget = parse_params(params);
  std::ostringstream report;
  for (std::uint64_t i = 0; i < count; ++i) {
    ProgramPtr prog(nullptr, &ropit_program_free);
    std::string label;
    if (int bad = source.load(i, prog, label)) return bad;
    OwnedString csv, json;
    int status = ropit_scan_run(prog.get(), r, budget, epsilon, workers, label.c_str(),
                                format == "csv" ? &csv.s : nullptr,
                                format == "json" ? &json.s : nullptr);
    if (status != ROPIT_OK) return exit_for(status);
    if (format == "csv") {
      std::string text = csv.str();
      if (i == 0) {
        report << text;  // header + row
      } else {
        report << text.substr(text.find('\n') + 1);  // row only
      }
    } else {
      report << json.str();
    }
    std::fprintf(stderr, "# scanned %s (%llu/%llu)\n", label.c_str(),
                 (unsigned long long)(i + 1), (unsigned long long)count);
  }
  return write_or_print(report.str(), out_path);
}

int cmd_hitset(std::uint64_t p, std::uint64_t w, std::uint64_t d, std::uint64_t n,
               std::string out_path) {
  OwnedString text;
  int status = ropit_hitting_set_text(p, w, d, n, &text.s);
  if (status != ROPIT_OK) return exit_for(status);

  // Pull B and the member count back out of the export itself so what is
  // printed is exactly what was written.
  std::istringstream lines(text.str());
  std::string line, base = "?";
  std::uint64_t members = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("# B ", 0) == 0)
      base = line.substr(4);
    else if (!line.empty() && line[0] != '#')
      ++members;
  }
  if (out_path.empty()) {
    std::ostringstream name;
    name << "hitset_w" << w << "_d" << d << "_n" << n << ".txt";
    out_path = name.str();
  }
  std::ofstream file(out_path, std::ios::binary);
  file << text.str();
  if (!file) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return 2;
  }
  std::printf("B = %s\n", base.c_str());
  std::printf("|L| = %llu\n", (unsigned long long)members);
  std::fprintf(stderr, "# wrote %s\n", out_path.c_str());
  return 0;
}

int cmd_demo(const std::string& out_path) {
  OwnedString text;
  int status = ropit_demo_text(&text.s);
  if (status != ROPIT_OK) return exit_for(status);
  std::cout << text.str();
  if (!out_path.empty()) {
    ropit_program* raw = nullptr;
    status = ropit_demo_program(&raw);
    if (status != ROPIT_OK) return exit_for(status);
    ProgramPtr prog(raw, &ropit_program_free);
    status = ropit_program_write(prog.get(), out_path.c_str());
    if (status != ROPIT_OK) return exit_for(status);
    std::fprintf(stderr, "# wrote %s\n", out_path.c_str());
  }
  return 0;
}

int cmd_algebra(const Source& source, const std::string& out_path) {
  ProgramPtr prog(nullptr, &ropit_program_free);
  std::string label;
  if (int bad = source.load(0, prog, label)) return bad;
  OwnedString text;
  int status = ropit_algebra_report(prog.get(), &text.s);
  if (status != ROPIT_OK) return exit_for(status);
  return write_or_print(text.str(), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact identity testing for read-once oblivious branching programs"};
  app.require_subcommand(1);

  // pit
  auto* pit = app.add_subcommand("pit", "test one program for identity with zero");
  Source pit_source;
  pit_source.attach(pit, /*instance_positional=*/true);
  std::string pit_mode = "modular";
  std::uint64_t pit_r = 0, pit_c = 0, pit_curve_w = 0, pit_curve_d = 0;
  std::string pit_params = "all";
  bool pit_naive = false;
  pit->add_option("--mode", pit_mode, "modular (default) or curve")
      ->check(CLI::IsMember({"modular", "curve"}));
  pit->add_option("--r", pit_r, "explicit hashing modulus (prime, != p)");
  pit->add_option("--c", pit_c, "threshold power: smallest prime r > (w*d)^c (default 2)");
  pit->add_option("--params", pit_params, "test only the first k parameters, or 'all'");
  pit->add_flag("--naive", pit_naive, "force the convolution path (no evaluation shortcut)");
  pit->add_option("--curve-w", pit_curve_w, "curve mode: size the curve for this width");
  pit->add_option("--curve-d", pit_curve_d, "curve mode: size the curve for this degree");

  // scan
  auto* scan = app.add_subcommand("scan", "sweep hashing parameters and report the bad set");
  Source scan_source;
  scan_source.attach(scan, /*instance_positional=*/false);
  std::uint64_t scan_r = 0, scan_workers = 0, scan_count = 1;
  std::string scan_params = "all", scan_format = "csv", scan_out;
  double scan_epsilon = 0.0;
  scan->add_option("--r", scan_r, "hashing modulus (default: derived from the shape)");
  scan->add_option("--params", scan_params, "how many parameters g to test, or 'all'");
  scan->add_option("--epsilon", scan_epsilon, "report bound exponent: |bad| vs r^(1-eps)");
  scan->add_option("--workers", scan_workers, "scan threads (default ROPIT_WORKERS or 1)");
  scan->add_option("--count", scan_count, "number of generated instances (seeds seed..seed+count-1)");
  scan->add_option("--format", scan_format, "csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--out", scan_out, "write the report here instead of standard output");

  // hitset
  auto* hitset = app.add_subcommand("hitset", "write the full hitting set for a shape");
  std::uint64_t hs_p = 0, hs_w = 0, hs_d = 0, hs_n = 1;
  std::string hs_out;
  hitset->add_option("--p", hs_p, "field modulus (default: 2^61 - 1)");
  hitset->add_option("--w", hs_w, "width")->required();
  hitset->add_option("--d", hs_d, "individual degree")->required();
  hitset->add_option("--n", hs_n, "variable count (default 1)");
  hitset->add_option("--out", hs_out, "output path (default hitset_w<w>_d<d>_n<n>.txt)");

  // demo
  auto* demo = app.add_subcommand("demo", "run the worked two-variable example");
  std::string demo_out;
  demo->add_option("--out", demo_out, "also write the example program file here");

  // algebra
  auto* algebra = app.add_subcommand("algebra", "word-algebra structure report for a program");
  Source algebra_source;
  algebra_source.attach(algebra, /*instance_positional=*/true);
  std::string algebra_out;
  algebra->add_option("--out", algebra_out, "write the report here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (pit->parsed()) {
      // In curve mode on an explicit instance, --w/--d size the curve (the
      // program file already fixes its own shape).
      if (pit_mode == "curve" && !pit_source.instance.empty()) {
        if (!pit_curve_w && pit->count("--w")) pit_curve_w = pit_source.w;
        if (!pit_curve_d && pit->count("--d")) pit_curve_d = pit_source.d;
      }
      return cmd_pit(pit_source, pit_mode, pit_r, pit_c, pit_params, pit_naive, pit_curve_w,
                     pit_curve_d);
    }
    if (scan->parsed())
      return cmd_scan(scan_source, scan_r, scan_params, scan_epsilon, scan_workers, scan_count,
                      scan_format, scan_out);
    if (hitset->parsed()) return cmd_hitset(hs_p, hs_w, hs_d, hs_n, hs_out);
    if (demo->parsed()) return cmd_demo(demo_out);
    if (algebra->parsed()) return cmd_algebra(algebra_source, algebra_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
