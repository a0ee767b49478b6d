#include "roabp.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace ropit {

void roabp_validate(const Roabp& prog) {
  Fp field(prog.p);  // rejects non-prime / oversized moduli
  if (prog.w == 0) fail(errc::invalid_params, "width must be positive");
  if (prog.n == 0) fail(errc::invalid_params, "variable count must be positive");
  if (prog.s_index >= prog.w || prog.t_index >= prog.w)
    fail(errc::invalid_params, "selector index out of range");
  if (prog.layers.size() != prog.n)
    fail(errc::invalid_params, "expected " + std::to_string(prog.n) + " layers, found " +
                                   std::to_string(prog.layers.size()));
  for (std::size_t i = 0; i < prog.n; ++i) {
    if (prog.layers[i].size() != prog.d + 1)
      fail(errc::invalid_params, "layer " + std::to_string(i + 1) + " holds " +
                                     std::to_string(prog.layers[i].size()) +
                                     " coefficient matrices, expected " +
                                     std::to_string(prog.d + 1));
    for (std::size_t c = 0; c <= prog.d; ++c) {
      const Mat& a = prog.layers[i][c];
      if (a.rows() != prog.w || a.cols() != prog.w || a.modulus() != prog.p)
        fail(errc::invalid_params, "layer " + std::to_string(i + 1) + ", coeff " +
                                       std::to_string(c) + " has wrong shape or modulus");
      for (std::size_t j = 0; j < prog.w; ++j)
        for (std::size_t k = 0; k < prog.w; ++k)
          if (a.at(j, k) >= prog.p)
            fail(errc::invalid_params, "entry not reduced mod p in layer " +
                                           std::to_string(i + 1));
    }
  }
}

MonomialMap roabp_expand(const Roabp& prog, u64 budget) {
  roabp_validate(prog);
  Fp field(prog.p);
  // count = (d+1)^n, checked against the budget before any allocation.
  u64 count = 1;
  for (std::size_t i = 0; i < prog.n; ++i) {
    if (count > budget / (prog.d + 1) + 1) count = budget + 1;
    else count *= (prog.d + 1);
    if (count > budget)
      fail(errc::budget_exceeded, "(d+1)^n exceeds expansion budget " + std::to_string(budget));
  }
  // state[idx * w + k]: coefficient row of the monomial with packed exponent
  // idx (variable i contributes e_i * (d+1)^(i-1)).
  std::size_t w = prog.w;
  std::vector<u64> state(w, 0);
  state[prog.s_index] = 1;
  u64 stride = 1;  // (d+1)^i after processing i layers
  std::vector<u64> next;
  for (std::size_t i = 0; i < prog.n; ++i) {
    next.assign(static_cast<std::size_t>(stride) * (prog.d + 1) * w, 0);
    for (u64 idx = 0; idx < stride; ++idx) {
      const u64* row = &state[static_cast<std::size_t>(idx) * w];
      bool live = false;
      for (std::size_t j = 0; j < w; ++j)
        if (row[j]) { live = true; break; }
      if (!live) continue;
      for (std::size_t c = 0; c <= prog.d; ++c) {
        const Mat& a = prog.layers[i][c];
        u64* out = &next[static_cast<std::size_t>(idx + c * stride) * w];
        for (std::size_t j = 0; j < w; ++j) {
          if (row[j] == 0) continue;
          for (std::size_t k = 0; k < w; ++k) {
            u64 coeff = a.at(j, k);
            if (coeff) out[k] = field.add(out[k], field.mul(row[j], coeff));
          }
        }
      }
    }
    state.swap(next);
    stride *= (prog.d + 1);
  }
  MonomialMap result;
  std::vector<std::uint32_t> expo(prog.n, 0);
  for (u64 idx = 0; idx < stride; ++idx) {
    u64 coeff = state[static_cast<std::size_t>(idx) * w + prog.t_index];
    if (coeff == 0) continue;
    u64 rem = idx;
    for (std::size_t i = 0; i < prog.n; ++i) {
      expo[i] = static_cast<std::uint32_t>(rem % (prog.d + 1));
      rem /= (prog.d + 1);
    }
    result.emplace(expo, coeff);
  }
  return result;
}

MonomialMap monomial_map_add(const MonomialMap& a, const MonomialMap& b, u64 p) {
  Fp field(p);
  MonomialMap out = a;
  for (const auto& [expo, coeff] : b) {
    u64& slot = out[expo];
    slot = field.add(slot, coeff);
    if (slot == 0) out.erase(expo);
  }
  return out;
}

MonomialMap monomial_map_mul(const MonomialMap& a, const MonomialMap& b, u64 p) {
  Fp field(p);
  MonomialMap out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      if (ea.size() != eb.size())
        fail(errc::arity_mismatch, "monomial maps over different variable counts");
      std::vector<std::uint32_t> expo(ea.size());
      for (std::size_t i = 0; i < ea.size(); ++i) expo[i] = ea[i] + eb[i];
      u64& slot = out[expo];
      slot = field.add(slot, field.mul(ca, cb));
      if (slot == 0) out.erase(expo);
    }
  }
  return out;
}

u64 monomial_map_eval(const MonomialMap& m, u64 p, const std::vector<u64>& point) {
  Fp field(p);
  u64 acc = 0;
  for (const auto& [expo, coeff] : m) {
    if (expo.size() != point.size())
      fail(errc::arity_mismatch, "evaluation point length mismatch");
    u64 term = coeff;
    for (std::size_t i = 0; i < expo.size(); ++i)
      if (expo[i]) term = field.mul(term, field.pow(point[i], static_cast<u64>(expo[i])));
    acc = field.add(acc, term);
  }
  return acc;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::random_dense: return "random";
    case Family::diagonal: return "diagonal";
    case Family::upper_triangular: return "upper_triangular";
    case Family::path_controlled: return "path_controlled";
    case Family::zero_difference: return "zero_difference";
    case Family::two_monomial: return "two_monomial";
  }
  fail(errc::internal_error, "unknown family");
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::random_dense, Family::diagonal, Family::upper_triangular,
                   Family::path_controlled, Family::zero_difference, Family::two_monomial})
    if (name == family_name(f)) return f;
  fail(errc::invalid_params, "unknown program family '" + name + "'");
}

namespace {

// Fill one w x w coefficient matrix according to the family's sparsity shape.
Mat random_layer_matrix(Family family, std::mt19937_64& rng, const Fp& field, std::size_t w) {
  Mat a(field.modulus(), w, w);
  switch (family) {
    case Family::random_dense:
      for (std::size_t j = 0; j < w; ++j)
        for (std::size_t k = 0; k < w; ++k) a.at(j, k) = rnd_below(rng, field.modulus());
      break;
    case Family::diagonal:
      for (std::size_t j = 0; j < w; ++j) a.at(j, j) = rnd_below(rng, field.modulus());
      break;
    case Family::upper_triangular:
      for (std::size_t j = 0; j < w; ++j)
        for (std::size_t k = j; k < w; ++k) a.at(j, k) = rnd_below(rng, field.modulus());
      break;
    case Family::path_controlled:
      // Bidiagonal: a stay weight on each lane plus a forward edge.
      for (std::size_t j = 0; j < w; ++j) {
        a.at(j, j) = rnd_below(rng, field.modulus());
        if (j + 1 < w) a.at(j, j + 1) = rnd_below(rng, field.modulus());
      }
      break;
    default:
      fail(errc::internal_error, "family has no per-layer matrix shape");
  }
  return a;
}

// Assemble the doubled zero program: two copies of a random base program run
// in parallel lanes and are subtracted by the final layer, so the output
// coefficient vector cancels identically while every layer stays nonzero.
Roabp zero_difference_program(std::mt19937_64& rng, const Fp& field, std::size_t w,
                              std::size_t n, std::size_t d) {
  if (w < 2 || w % 2 != 0)
    fail(errc::invalid_params, "zero_difference needs even width >= 2");
  if (n < 2) fail(errc::invalid_params, "zero_difference needs at least 2 variables");
  std::size_t m = w / 2;
  Roabp prog;
  prog.p = field.modulus();
  prog.w = w;
  prog.n = n;
  prog.d = d;
  prog.s_index = 0;
  prog.t_index = w - 1;
  prog.layers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    prog.layers[i].reserve(d + 1);
    for (std::size_t c = 0; c <= d; ++c) {
      Mat base(prog.p, m, m);
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) base.at(j, k) = rnd_below(rng, prog.p);
      Mat a(prog.p, w, w);
      if (i == 0) {
        // [[B, B], [0, 0]]: fan the source lane into both copies.
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k) {
            a.at(j, k) = base.at(j, k);
            a.at(j, m + k) = base.at(j, k);
          }
      } else if (i + 1 == n) {
        // [[0, B], [0, -B]]: route both copies into the sink lane with
        // opposite signs.
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k) {
            a.at(j, m + k) = base.at(j, k);
            a.at(m + j, m + k) = field.neg(base.at(j, k));
          }
      } else {
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k) {
            a.at(j, k) = base.at(j, k);
            a.at(m + j, m + k) = base.at(j, k);
          }
      }
      prog.layers[i].push_back(std::move(a));
    }
  }
  return prog;
}

}  // namespace

Roabp two_monomial_program(u64 p, std::size_t n, u64 s_mask, u64 s_prime_mask) {
  Fp field(p);
  if (n == 0 || n > 63) fail(errc::invalid_params, "variable count out of range");
  if (s_mask == s_prime_mask) fail(errc::invalid_params, "monomial supports must differ");
  u64 full = (n == 63) ? ~0ULL >> 1 : (1ULL << n) - 1;
  if ((s_mask | s_prime_mask) & ~full)
    fail(errc::invalid_params, "support mask references a variable beyond n");
  auto u_of = [&](std::size_t i) { return (s_mask >> i) & 1; };       // x_i vs 1
  auto v_of = [&](std::size_t i) { return (s_prime_mask >> i) & 1; };
  Roabp prog;
  prog.p = p;
  prog.n = n;
  prog.d = 1;
  prog.s_index = 0;
  if (n == 1) {
    // Width 2, single layer carrying u_1 - v_1 on the (1,2) edge.
    prog.w = 2;
    prog.t_index = 1;
    Mat a0(p, 2, 2), a1(p, 2, 2);
    a0.at(0, 1) = field.sub(u_of(0) ? 0 : 1, v_of(0) ? 0 : 1);
    a1.at(0, 1) = field.sub(u_of(0) ? 1 : 0, v_of(0) ? 1 : 0);
    prog.layers.push_back({std::move(a0), std::move(a1)});
    return prog;
  }
  prog.w = 2;
  prog.t_index = 1;
  prog.layers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Mat a0(p, 2, 2), a1(p, 2, 2);
    u64 u0 = u_of(i) ? 0 : 1, u1 = u_of(i) ? 1 : 0;  // u_i = x_i or 1
    u64 v0 = v_of(i) ? 0 : 1, v1 = v_of(i) ? 1 : 0;
    if (i == 0) {
      // [[u_1, v_1], [0, 0]]: lane 1 accumulates the S monomial, lane 2 the
      // S' monomial.
      a0.at(0, 0) = u0; a1.at(0, 0) = u1;
      a0.at(0, 1) = v0; a1.at(0, 1) = v1;
    } else if (i + 1 == n) {
      // [[0, u_n], [0, -v_n]]: form the difference on the sink lane.
      a0.at(0, 1) = u0; a1.at(0, 1) = u1;
      a0.at(1, 1) = field.neg(v0); a1.at(1, 1) = field.neg(v1);
    } else {
      a0.at(0, 0) = u0; a1.at(0, 0) = u1;
      a0.at(1, 1) = v0; a1.at(1, 1) = v1;
    }
    prog.layers[i] = {std::move(a0), std::move(a1)};
  }
  return prog;
}

Roabp roabp_generate(const GenerateParams& params) {
  Fp field(params.p);
  if (params.w == 0 || params.n == 0) fail(errc::invalid_params, "width and arity must be positive");
  std::mt19937_64 rng(params.seed);
  if (params.family == Family::zero_difference)
    return zero_difference_program(rng, field, params.w, params.n, params.d);
  if (params.family == Family::two_monomial) {
    if (params.n > 63) fail(errc::invalid_params, "two_monomial supports at most 63 variables");
    u64 full = (params.n == 63) ? ~0ULL >> 1 : (1ULL << params.n) - 1;
    u64 a = rnd_below(rng, full + 1);
    u64 b = rnd_below(rng, full + 1);
    while (b == a) b = rnd_below(rng, full + 1);
    return two_monomial_program(params.p, params.n, a, b);
  }
  Roabp prog;
  prog.p = params.p;
  prog.w = params.w;
  prog.n = params.n;
  prog.d = params.d;
  prog.s_index = 0;
  prog.t_index = params.w - 1;
  prog.layers.resize(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    prog.layers[i].reserve(params.d + 1);
    for (std::size_t c = 0; c <= params.d; ++c)
      prog.layers[i].push_back(random_layer_matrix(params.family, rng, field, params.w));
  }
  return prog;
}

std::string roabp_serialize(const Roabp& prog) {
  roabp_validate(prog);
  std::ostringstream out;
  out << "p " << prog.p << "\n";
  out << "w " << prog.w << "\n";
  out << "n " << prog.n << "\n";
  out << "d " << prog.d << "\n";
  out << "s " << (prog.s_index + 1) << "\n";
  out << "t " << (prog.t_index + 1) << "\n";
  for (std::size_t i = 0; i < prog.n; ++i) {
    for (std::size_t c = 0; c <= prog.d; ++c) {
      out << "layer " << (i + 1) << ", coeff " << c << ":\n";
      const Mat& a = prog.layers[i][c];
      for (std::size_t j = 0; j < prog.w; ++j) {
        for (std::size_t k = 0; k < prog.w; ++k) {
          if (k) out << ' ';
          out << a.at(j, k);
        }
        out << "\n";
      }
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  fail(errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

u64 parse_u64(const std::string& token, std::size_t line_no, const std::string& what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    parse_fail(line_no, what + ": '" + token + "' is not a nonnegative integer");
  u64 value = 0;
  for (char ch : token) {
    u64 digit = static_cast<u64>(ch - '0');
    if (value > (~0ULL - digit) / 10) parse_fail(line_no, what + ": value overflows 64 bits");
    value = value * 10 + digit;
  }
  return value;
}

}  // namespace

Roabp roabp_parse(const std::string& text) {
  // Pre-split into (line_no, content) with blank lines and '#' comments
  // dropped, so diagnostics still point at the original line numbers.
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::istringstream in(text);
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
      ++no;
      std::size_t hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      std::size_t begin = raw.find_first_not_of(" \t\r");
      if (begin == std::string::npos) continue;
      std::size_t end = raw.find_last_not_of(" \t\r");
      lines.emplace_back(no, raw.substr(begin, end - begin + 1));
    }
  }
  std::size_t pos = 0;
  auto next_line = [&]() -> const std::pair<std::size_t, std::string>& {
    if (pos >= lines.size())
      parse_fail(lines.empty() ? 1 : lines.back().first, "unexpected end of input");
    return lines[pos++];
  };

  // Header: the six fields, each on its own line, in any order, exactly once.
  std::map<std::string, u64> header;
  for (int field = 0; field < 6; ++field) {
    const auto& [no, content] = next_line();
    std::istringstream ls(content);
    std::string key, value, extra;
    ls >> key >> value;
    if (ls >> extra) parse_fail(no, "trailing token '" + extra + "' after header field");
    if (key != "p" && key != "w" && key != "n" && key != "d" && key != "s" && key != "t")
      parse_fail(no, "expected header field p/w/n/d/s/t, found '" + key + "'");
    if (header.count(key)) parse_fail(no, "duplicate header field '" + key + "'");
    header[key] = parse_u64(value, no, "header field " + key);
  }

  Roabp prog;
  prog.p = header["p"];
  if (!is_prime_u64(prog.p) || prog.p >> kMaxModulusBits)
    parse_fail(lines[0].first, "header field p must be a prime below 2^61");
  if (header["w"] == 0 || header["w"] > 4096) parse_fail(lines[0].first, "width out of range");
  if (header["n"] == 0 || header["n"] > 1000000) parse_fail(lines[0].first, "arity out of range");
  if (header["d"] > 4096) parse_fail(lines[0].first, "degree out of range");
  prog.w = static_cast<std::size_t>(header["w"]);
  prog.n = static_cast<std::size_t>(header["n"]);
  prog.d = static_cast<std::size_t>(header["d"]);
  if (header["s"] < 1 || header["s"] > prog.w)
    parse_fail(lines[0].first, "selector s out of range 1.." + std::to_string(prog.w));
  if (header["t"] < 1 || header["t"] > prog.w)
    parse_fail(lines[0].first, "selector t out of range 1.." + std::to_string(prog.w));
  prog.s_index = static_cast<std::size_t>(header["s"] - 1);
  prog.t_index = static_cast<std::size_t>(header["t"] - 1);

  prog.layers.resize(prog.n);
  for (std::size_t i = 0; i < prog.n; ++i) {
    prog.layers[i].reserve(prog.d + 1);
    for (std::size_t c = 0; c <= prog.d; ++c) {
      const auto& [no, content] = next_line();
      std::string expected = "layer " + std::to_string(i + 1) + ", coeff " + std::to_string(c) + ":";
      if (content != expected)
        parse_fail(no, "expected '" + expected + "', found '" + content + "'");
      Mat a(prog.p, prog.w, prog.w);
      for (std::size_t j = 0; j < prog.w; ++j) {
        const auto& [rno, row] = next_line();
        std::istringstream rs(row);
        std::string token;
        for (std::size_t k = 0; k < prog.w; ++k) {
          if (!(rs >> token)) parse_fail(rno, "row needs " + std::to_string(prog.w) + " entries");
          u64 value = parse_u64(token, rno, "matrix entry");
          if (value >= prog.p)
            parse_fail(rno, "entry " + token + " is not a reduced residue mod " +
                                std::to_string(prog.p));
          a.at(j, k) = value;
        }
        if (rs >> token) parse_fail(rno, "trailing token '" + token + "' after matrix row");
      }
      prog.layers[i].push_back(std::move(a));
    }
  }
  if (pos != lines.size())
    parse_fail(lines[pos].first, "trailing content after the final layer block");
  roabp_validate(prog);
  return prog;
}

Roabp roabp_read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return roabp_parse(buf.str());
}

void roabp_write_file(const Roabp& prog, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  out << roabp_serialize(prog);
  if (!out) fail(errc::io_error, "write to '" + path + "' failed");
}

}  // namespace ropit
