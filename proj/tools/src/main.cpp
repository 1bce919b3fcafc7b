// gauge — command-line front end for the divergence-packing toolkit.
//
// Subcommands: dist, pack, frontier, classify, simulate, dmt, szego, cutoff.
// Global flags: --seed, --out, --format {json,csv}, --rho-grid
// "start:stop:points" (decades), --quiet.
//
// Exit codes (stable contract for CI):
//   0  success, including inconclusive classifications
//   1  verification failure (simulated error above bound, oracle mismatch,
//      internal numeric contract broken)
//   2  usage or validation error
//
// Every output embeds the resolved configuration and seed, so any result
// file can be reproduced byte-for-byte by re-running the command it records.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaugepack/channel.hpp"
#include "gaugepack/divergence.hpp"
#include "gaugepack/errors.hpp"
#include "gaugepack/gauge.hpp"
#include "gaugepack/packing.hpp"
#include "gaugepack/quadrature.hpp"
#include "gaugepack/simulate.hpp"
#include "gaugepack/spectrum.hpp"

namespace gp = gaugepack;
using nlohmann::json;

namespace {

constexpr double kOracleTol = 1e-6;  // closed form vs quadrature agreement

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out;       // output path; empty = stdout
  std::string format;    // "json" | "csv" | "" (per-command default)
  std::string rho_grid;  // "start:stop:points" in decades
  bool quiet = false;
};

void note(const GlobalOpts& g, const std::string& msg) {
  if (!g.quiet) std::cerr << "note: " << msg << "\n";
}

// ---------------------------------------------------------------------------
// Formatting and emission
// ---------------------------------------------------------------------------

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
  if (!f) throw gp::invalid_argument_error("cannot open output file: " + g.out);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
}

void emit_json(const GlobalOpts& g, const json& doc) {
  emit(g, doc.dump(2) + "\n");
}

// CSV document: "# config: {...}" header line, then column header and rows.
void emit_csv(const GlobalOpts& g, const json& cfg, const std::string& header,
              const std::vector<std::string>& rows) {
  std::string text = "# config: " + cfg.dump() + "\n" + header + "\n";
  for (const auto& r : rows) text += r + "\n";
  emit(g, text);
}

std::string pick_format(const GlobalOpts& g, const std::string& fallback) {
  return g.format.empty() ? fallback : g.format;
}

// ---------------------------------------------------------------------------
// Argument parsing helpers
// ---------------------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    gp::check_arg(pos == tok.size(), what + ": trailing characters in '" + tok + "'");
    return v;
  } catch (const std::exception&) {
    throw gp::invalid_argument_error(what + ": cannot parse number '" + tok + "'");
  }
}

long long parse_ll(const std::string& tok, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(tok, &pos);
    gp::check_arg(pos == tok.size(), what + ": trailing characters in '" + tok + "'");
    return v;
  } catch (const std::exception&) {
    throw gp::invalid_argument_error(what + ": cannot parse integer '" + tok + "'");
  }
}

struct GridSpec {
  double start = 0.0;  // decades
  double stop = 0.0;
  int points = 0;
};

GridSpec parse_grid(const std::string& s) {
  const auto parts = split(s, ':');
  gp::check_arg(parts.size() == 3,
                "--rho-grid must be start:stop:points (decades), got '" + s + "'");
  GridSpec gs;
  gs.start = parse_double(parts[0], "--rho-grid start");
  gs.stop = parse_double(parts[1], "--rho-grid stop");
  gs.points = static_cast<int>(parse_ll(parts[2], "--rho-grid points"));
  gp::check_arg(gs.points >= 2, "--rho-grid needs at least 2 points");
  gp::check_arg(gs.stop > gs.start, "--rho-grid needs stop > start");
  return gs;
}

gp::RVec parse_real_list(const std::string& s, const std::string& what) {
  std::vector<double> vals;
  if (!s.empty() && s.front() == '[') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw gp::invalid_argument_error(what + ": " + e.what());
    }
    gp::check_arg(j.is_array(), what + " must be a JSON array or comma list");
    for (const auto& v : j) vals.push_back(v.get<double>());
  } else {
    for (const auto& tok : split(s, ',')) vals.push_back(parse_double(tok, what));
  }
  gp::check_arg(!vals.empty(), what + " must be nonempty");
  gp::RVec out(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = vals[i];
  return out;
}

// Complex vector: JSON array whose entries are numbers or [re, im] pairs,
// or a plain comma list of reals.
gp::Vec parse_cvec(const std::string& s, const std::string& what) {
  std::vector<gp::cplx> vals;
  if (!s.empty() && s.front() == '[') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw gp::invalid_argument_error(what + ": " + e.what());
    }
    gp::check_arg(j.is_array(), what + " must be a JSON array or comma list");
    for (const auto& v : j) {
      if (v.is_array()) {
        gp::check_arg(v.size() == 2, what + ": complex entries are [re, im]");
        vals.emplace_back(v[0].get<double>(), v[1].get<double>());
      } else {
        vals.emplace_back(v.get<double>(), 0.0);
      }
    }
  } else {
    for (const auto& tok : split(s, ','))
      vals.emplace_back(parse_double(tok, what), 0.0);
  }
  gp::check_arg(!vals.empty(), what + " must be nonempty");
  gp::Vec out(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = vals[i];
  return out;
}

// Covariance: "I" (identity of the given dimension) or a JSON 2-D array whose
// entries are numbers or [re, im] pairs.
gp::Mat parse_cov(const std::string& s, int dim, const std::string& what) {
  if (s == "I") {
    gp::check_arg(dim >= 1, what + ": identity needs dimension >= 1");
    return gp::Mat::Identity(dim, dim);
  }
  json j;
  try {
    j = json::parse(s);
  } catch (const json::exception& e) {
    throw gp::invalid_argument_error(what + ": " + e.what());
  }
  gp::check_arg(j.is_array() && !j.empty(), what + " must be 'I' or a 2-D JSON array");
  const int rows = static_cast<int>(j.size());
  gp::check_arg(j[0].is_array(), what + " must be a 2-D JSON array");
  const int cols = static_cast<int>(j[0].size());
  gp::check_arg(rows == cols, what + " must be square");
  gp::Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    gp::check_arg(static_cast<int>(j[r].size()) == cols,
                  what + " rows must have equal length");
    for (int c = 0; c < cols; ++c) {
      const auto& v = j[r][c];
      if (v.is_array()) {
        gp::check_arg(v.size() == 2, what + ": complex entries are [re, im]");
        m(r, c) = gp::cplx(v[0].get<double>(), v[1].get<double>());
      } else {
        m(r, c) = gp::cplx(v.get<double>(), 0.0);
      }
    }
  }
  return m;
}

gp::Rational parse_rational(const std::string& tok) {
  const auto slash = tok.find('/');
  if (slash != std::string::npos) {
    const long long p = parse_ll(tok.substr(0, slash), "rational numerator");
    const long long q = parse_ll(tok.substr(slash + 1), "rational denominator");
    return gp::Rational::of(p, q);
  }
  const auto dot = tok.find('.');
  if (dot == std::string::npos)
    return gp::Rational::of(parse_ll(tok, "rational"));
  std::string ip = tok.substr(0, dot), fp = tok.substr(dot + 1);
  gp::check_arg(!fp.empty() && fp.size() <= 9,
                "decimal rationals support 1..9 fractional digits: '" + tok + "'");
  bool neg = false;
  if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) {
    neg = ip[0] == '-';
    ip = ip.substr(1);
  }
  for (char c : ip)
    gp::check_arg(c >= '0' && c <= '9', "bad rational '" + tok + "'");
  for (char c : fp)
    gp::check_arg(c >= '0' && c <= '9', "bad rational '" + tok + "'");
  long long den = 1;
  for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
  const long long whole = ip.empty() ? 0 : parse_ll(ip, "rational");
  const long long frac = parse_ll(fp, "rational");
  long long num = whole * den + frac;
  if (neg) num = -num;
  return gp::Rational::of(num, den);
}

// Channel spec: path to a JSON file, or inline JSON. Unknown keys (e.g. a
// "command" block carried in a config file) are ignored by the schema.
gp::ChannelSpec load_spec(const std::string& arg) {
  std::string text = arg;
  std::ifstream f(arg);
  if (f) text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  return gp::ChannelSpec::from_json_text(text);
}

gp::Codebook load_codebook(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw gp::invalid_argument_error("cannot read codebook file: " + path);
  std::string text{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  return gp::codebook_from_json_text(text);
}

// ---------------------------------------------------------------------------
// dist
// ---------------------------------------------------------------------------

struct DistArgs {
  std::string what;
  double v1 = 1.0, v2 = 1.0;
  double s = 0.5;
  bool s_given = false;
  int dim = 1;
  int n_rx = 1;
  double rho = 1.0;
  std::string mu1, mu2, cov = "I", cov1 = "I", cov2 = "I", eigs;
  bool oracle = false;
};

// Quadrature oracle for a pair of d = 1 laws; returns the Bhattacharyya
// distance (bits).
double oracle_bhatt_1d(gp::cplx m1, double v1, gp::cplx m2, double v2) {
  const double radius = std::max(std::abs(m1), std::abs(m2)) +
                        9.0 * std::sqrt(std::max(v1, v2));
  const bool circ = std::abs(m1) == 0.0 && std::abs(m2) == 0.0;
  return gp::quadrature_bhatt_oracle(gp::gaussian_density(m1, v1),
                                     gp::gaussian_density(m2, v2), radius, circ);
}

double oracle_kl_1d(gp::cplx m1, double v1, gp::cplx m2, double v2) {
  const double radius = std::max(std::abs(m1), std::abs(m2)) +
                        9.0 * std::sqrt(std::max(v1, v2));
  const bool circ = std::abs(m1) == 0.0 && std::abs(m2) == 0.0;
  return gp::quadrature_kl_oracle(gp::gaussian_density(m1, v1),
                                  gp::gaussian_density(m2, v2), radius, circ);
}

int cmd_dist(const GlobalOpts& g, const DistArgs& a) {
  json cfg = {{"command", "dist"}, {"what", a.what}, {"oracle", a.oracle},
              {"seed", g.seed}};
  json result;
  result["what"] = a.what;
  std::optional<double> oracle_value;  // same units as "value"

  if (a.what == "scale" || a.what == "kl-scale" || a.what == "hellinger-scale" ||
      a.what == "chernoff-scale") {
    cfg["v1"] = a.v1;
    cfg["v2"] = a.v2;
    gp::check_arg(a.v1 > 0 && a.v2 > 0, "variances must be positive");
    if (a.what == "scale") {
      result["value"] = gp::bhatt_scale(a.v1, a.v2);
      if (a.oracle) oracle_value = oracle_bhatt_1d(0.0, a.v1, 0.0, a.v2);
    } else if (a.what == "kl-scale") {
      result["value"] = gp::kl_scale(a.v1, a.v2);
      if (a.oracle) oracle_value = oracle_kl_1d(0.0, a.v1, 0.0, a.v2);
    } else if (a.what == "hellinger-scale") {
      result["value"] = gp::hellinger_from_bhatt(gp::bhatt_scale(a.v1, a.v2));
      if (a.oracle)
        oracle_value =
            gp::hellinger_from_bhatt(oracle_bhatt_1d(0.0, a.v1, 0.0, a.v2));
    } else {  // chernoff-scale
      if (a.oracle)
        throw gp::unsupported_error(
            "--oracle is not available for chernoff-scale (no quadrature "
            "oracle; the s = 1/2 point is covered by 'dist scale --oracle')");
      const double du = std::log(a.v1) - std::log(a.v2);
      if (a.s_given) {
        result["value"] = gp::chernoff_scale(a.v1, a.v2, a.s);
        result["s"] = a.s;
        cfg["s"] = a.s;
      } else {
        result["value"] = gp::chernoff_scale_sup_du(du);
        result["s"] = "sup";
        cfg["s"] = "sup";
      }
    }
  } else if (a.what == "same-mean") {
    cfg["cov1"] = a.cov1;
    cfg["cov2"] = a.cov2;
    cfg["dim"] = a.dim;
    const gp::Mat c1 = parse_cov(a.cov1, a.dim, "--cov1");
    const gp::Mat c2 = parse_cov(a.cov2, static_cast<int>(c1.rows()), "--cov2");
    result["value"] = gp::bhatt_same_mean(c1, c2);
    if (a.oracle) {
      gp::check_arg(c1.rows() == 1,
                    "--oracle supports dimension 1 only (use --dim 1)");
      oracle_value = oracle_bhatt_1d(0.0, c1(0, 0).real(), 0.0, c2(0, 0).real());
    }
  } else if (a.what == "same-cov") {
    gp::check_arg(!a.mu1.empty() && !a.mu2.empty(),
                  "same-cov requires --mu1 and --mu2");
    cfg["mu1"] = a.mu1;
    cfg["mu2"] = a.mu2;
    cfg["cov"] = a.cov;
    const gp::Vec m1 = parse_cvec(a.mu1, "--mu1");
    const gp::Vec m2 = parse_cvec(a.mu2, "--mu2");
    const gp::Mat c = parse_cov(a.cov, static_cast<int>(m1.size()), "--cov");
    result["value"] = gp::bhatt_same_covariance(m1, m2, c);
    if (a.oracle) {
      gp::check_arg(m1.size() == 1, "--oracle supports dimension 1 only");
      oracle_value = oracle_bhatt_1d(m1[0], c(0, 0).real(), m2[0], c(0, 0).real());
    }
  } else if (a.what == "gaussian") {
    gp::check_arg(!a.mu1.empty() && !a.mu2.empty(),
                  "gaussian requires --mu1 and --mu2");
    cfg["mu1"] = a.mu1;
    cfg["mu2"] = a.mu2;
    cfg["cov1"] = a.cov1;
    cfg["cov2"] = a.cov2;
    const gp::Vec m1 = parse_cvec(a.mu1, "--mu1");
    const gp::Vec m2 = parse_cvec(a.mu2, "--mu2");
    const gp::Mat c1 = parse_cov(a.cov1, static_cast<int>(m1.size()), "--cov1");
    const gp::Mat c2 = parse_cov(a.cov2, static_cast<int>(m2.size()), "--cov2");
    result["value"] = gp::bhatt_gaussian(gp::OutputLaw(m1, c1), gp::OutputLaw(m2, c2));
    if (a.oracle) {
      gp::check_arg(m1.size() == 1, "--oracle supports dimension 1 only");
      oracle_value =
          oracle_bhatt_1d(m1[0], c1(0, 0).real(), m2[0], c2(0, 0).real());
    }
  } else if (a.what == "avg-rayleigh") {
    gp::check_arg(!a.eigs.empty(), "avg-rayleigh requires --eigs");
    if (a.oracle)
      throw gp::unsupported_error(
          "--oracle is not available for avg-rayleigh (use 'simulate' and the "
          "library's Monte Carlo averaged-coefficient check instead)");
    cfg["eigs"] = a.eigs;
    cfg["n"] = a.n_rx;
    cfg["rho"] = a.rho;
    const gp::RVec eigs = parse_real_list(a.eigs, "--eigs");
    const auto avg = gp::avg_bhatt_rayleigh(eigs, a.n_rx, a.rho);
    result["avg_coefficient"] = avg.coefficient;
    result["distance"] = avg.distance;
  } else {
    throw gp::invalid_argument_error("unknown dist target: " + a.what);
  }

  bool agree = true;
  if (oracle_value) {
    const double v = result.at("value").get<double>();
    const double diff = std::fabs(v - *oracle_value);
    agree = diff <= kOracleTol;
    result["oracle"] = *oracle_value;
    result["abs_diff"] = diff;
    result["tolerance"] = kOracleTol;
    result["agree"] = agree;
  }

  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    emit_json(g, json{{"config", cfg}, {"result", result}});
  } else {
    std::vector<std::string> cols, vals;
    for (auto& [k, v] : result.items()) {
      cols.push_back(k);
      if (v.is_number())
        vals.push_back(csv_num(v.get<double>()));
      else if (v.is_boolean())
        vals.push_back(v.get<bool>() ? "1" : "0");
      else
        vals.push_back(v.get<std::string>());
    }
    std::string header, row;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      header += (i ? "," : "") + cols[i];
      row += (i ? "," : "") + vals[i];
    }
    emit_csv(g, cfg, header, {row});
  }
  return agree ? 0 : 1;
}

// ---------------------------------------------------------------------------
// pack
// ---------------------------------------------------------------------------

struct PackArgs {
  std::string spec;
  double delta = 0.0;
  std::string div = "bhatt";
  double r0 = 1.0;               // expurgation: starting log2 K
  std::int64_t budget = 200000;  // expurgation: pairwise-evaluation budget
  std::optional<double> rho;
};

bool is_scale_kind(gp::ChannelKind k) {
  return k == gp::ChannelKind::FastFading || k == gp::ChannelKind::Multipath;
}

gp::PackingResult pack_at(const gp::ChannelSpec& base, double rho,
                          const PackArgs& a, std::uint64_t seed) {
  gp::ChannelSpec spec = base;
  spec.rho = rho;
  spec.validate();
  const gp::DivKind div = gp::div_kind_from_string(a.div);
  if (is_scale_kind(spec.kind))
    return gp::scale_pack_count(a.delta, gp::effective_rho(spec), spec.N, div);
  if (div != gp::DivKind::Bhatt)
    throw gp::unsupported_error(
        "pack: hellinger/kl thresholds are defined only for the scale-family "
        "classes (FastFading, Multipath)");
  return gp::expurgated_pack_lower(spec, a.delta, a.r0, a.budget, seed);
}

int cmd_pack(const GlobalOpts& g, const PackArgs& a) {
  const gp::ChannelSpec base = load_spec(a.spec);
  for (const auto& w : base.warnings()) note(g, w);
  json cfg = {{"command", "pack"},
              {"spec", json::parse(base.to_json_text())},
              {"delta", a.delta},
              {"div", a.div},
              {"seed", g.seed}};
  if (!is_scale_kind(base.kind)) {
    cfg["r0"] = a.r0;
    cfg["budget"] = a.budget;
  }

  if (!g.rho_grid.empty()) {
    const GridSpec gs = parse_grid(g.rho_grid);
    cfg["rho_grid"] = g.rho_grid;
    const auto grid = gp::rho_grid_decades(gs.start, gs.stop, gs.points);
    const std::string fmt = pick_format(g, "csv");
    std::vector<std::string> rows;
    json jrows = json::array();
    for (double x : grid) {
      const double rho = std::exp2(x);
      const auto res = pack_at(base, rho, a, g.seed);
      if (fmt == "csv")
        rows.push_back(csv_num(rho) + "," + std::to_string(res.k) + "," +
                       csv_num(res.k_pack) + "," + res.method_lower + "," +
                       res.method_upper);
      else
        jrows.push_back({{"rho", rho},
                         {"n_pack", res.k},
                         {"k_pack", res.k_pack},
                         {"method_lower", res.method_lower},
                         {"method_upper", res.method_upper}});
    }
    if (fmt == "csv")
      emit_csv(g, cfg, "rho,n_pack,k_pack,method_lower,method_upper", rows);
    else
      emit_json(g, json{{"config", cfg}, {"result", jrows}});
    return 0;
  }

  const double rho = a.rho.value_or(base.rho);
  cfg["rho"] = rho;
  const auto res = pack_at(base, rho, a, g.seed);
  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    emit_json(g, json{{"config", cfg}, {"result", json::parse(res.to_json_text())}});
  } else {
    emit_csv(g, cfg, "rho,n_pack,k_pack,method_lower,method_upper",
             {csv_num(rho) + "," + std::to_string(res.k) + "," +
              csv_num(res.k_pack) + "," + res.method_lower + "," +
              res.method_upper});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// frontier
// ---------------------------------------------------------------------------

struct FrontierArgs {
  std::string spec;
  std::optional<long long> K;
  std::optional<double> r;
  int trials = 8;
  int frac_T = 128;
  std::optional<double> rho;
};

struct FrontierRow {
  double rho = 0.0;
  long long K = 0;
  double lower = std::numeric_limits<double>::quiet_NaN();
  double upper = std::numeric_limits<double>::quiet_NaN();
  std::string method_lower, method_upper;
};

FrontierRow frontier_bounds_at(gp::ChannelSpec spec, double rho, long long K,
                               const FrontierArgs& a, std::uint64_t seed) {
  spec.rho = rho;
  spec.validate();
  gp::check_arg(K >= 2, "no pair: the diversity frontier needs K >= 2");
  FrontierRow row;
  row.rho = rho;
  row.K = K;
  const double x = std::log2(rho);
  switch (spec.kind) {
    case gp::ChannelKind::FastFading:
    case gp::ChannelKind::Multipath: {
      const auto r = gp::scale_frontier(K, gp::effective_rho(spec), spec.N);
      row.lower = r.value_lower;
      row.upper = r.value_upper;
      row.method_lower = r.method_lower;
      row.method_upper = r.method_upper;
      break;
    }
    case gp::ChannelKind::FixedH: {
      if (K == 2) {
        row.lower = row.upper = gp::frontier_delta2(spec, x);
        row.method_lower = "antipodal-pair";
        row.method_upper = "top-singular-direction";
      } else {
        const long long pool =
            std::min<long long>(std::max<long long>(4 * K, 64), 512);
        if (K > pool)
          throw gp::budget_error(
              "frontier: the randomized lower bound supports K <= 512 for "
              "FixedH");
        double best = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < a.trials; ++t) {
          const auto cands = gp::random_input_codebook(
              spec, pool, seed, static_cast<std::uint64_t>(t));
          const auto sel = gp::greedy_maxmin(spec, cands, static_cast<int>(K),
                                             seed + static_cast<std::uint64_t>(t));
          best = std::max(best, gp::codebook_min_distance(spec, sel));
        }
        row.lower = best;
        row.method_lower = "random-pool-farthest-point";
        row.upper = gp::frontier_delta2(spec, x);
        row.method_upper = "pair-monotonicity";
      }
      break;
    }
    case gp::ChannelKind::CoherentMIMO: {
      if (K == 2) {
        row.lower = row.upper = gp::frontier_delta2(spec, x);
        row.method_lower = "antipodal-pair";
        row.method_upper = "power-constraint";
      } else {
        const auto r = gp::mimo_frontier_lower(spec.M, spec.N, spec.T, rho, K,
                                               a.trials, seed);
        row.lower = r.value_lower;
        row.upper = r.value_upper;
        row.method_lower = r.method_lower;
        row.method_upper = r.method_upper;
      }
      break;
    }
    case gp::ChannelKind::BlockFading: {
      const auto r = gp::grassmann_frontier_bounds(spec.M, spec.N, spec.T, rho,
                                                   K, a.trials, seed);
      row.lower = r.value_lower;
      row.upper = r.value_upper;
      row.method_lower = r.method_lower;
      row.method_upper = r.method_upper;
      if (K == 2) {
        const double pair = gp::frontier_delta2(spec, x);
        if (pair > row.lower) {
          row.lower = pair;
          row.method_lower = "orthogonal-subspace-pair";
        }
      }
      break;
    }
    case gp::ChannelKind::FracLog: {
      if (K != 2)
        throw gp::unsupported_error(
            "frontier: FracLog supports only the on/off pair (K = 2)");
      row.lower = gp::frontier_delta2(spec, x, a.frac_T);
      row.upper = std::numeric_limits<double>::infinity();
      row.method_lower = "on-off-pair";
      row.method_upper = "none";
      break;
    }
  }
  return row;
}

int cmd_frontier(const GlobalOpts& g, const FrontierArgs& a) {
  const gp::ChannelSpec base = load_spec(a.spec);
  for (const auto& w : base.warnings()) note(g, w);
  gp::check_arg(a.K.has_value() || a.r.has_value(),
                "frontier requires --k or --r");
  if (a.K && *a.K < 2)
    throw gp::invalid_argument_error(
        "no pair: the diversity frontier needs K >= 2");

  json cfg = {{"command", "frontier"},
              {"spec", json::parse(base.to_json_text())},
              {"trials", a.trials},
              {"seed", g.seed}};
  if (a.K) cfg["K"] = *a.K;
  if (a.r) cfg["r"] = *a.r;
  if (base.kind == gp::ChannelKind::FracLog) cfg["frac_T"] = a.frac_T;

  std::vector<double> rhos;
  if (!g.rho_grid.empty()) {
    const GridSpec gs = parse_grid(g.rho_grid);
    cfg["rho_grid"] = g.rho_grid;
    for (double x : gp::rho_grid_decades(gs.start, gs.stop, gs.points))
      rhos.push_back(std::exp2(x));
  } else {
    rhos.push_back(a.rho.value_or(base.rho));
    cfg["rho"] = rhos.front();
  }

  const bool with_ratio = a.r.has_value() && is_scale_kind(base.kind);
  std::vector<std::string> rows;
  json jrows = json::array();
  const std::string fmt = pick_format(g, "csv");
  for (double rho : rhos) {
    const double x = std::log2(rho);
    const long long K =
        a.K ? *a.K : gp::b_diversity_codebook_size(base, *a.r, x);
    const auto row = frontier_bounds_at(base, rho, K, a, g.seed);
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (with_ratio) {
      gp::ChannelSpec at = base;
      at.rho = rho;
      const double xeff = std::log2(gp::effective_rho(at));
      ratio = row.lower / ((base.N / 2.0) * std::pow(xeff, 1.0 - *a.r));
    }
    if (fmt == "csv") {
      std::string line = csv_num(row.rho) + "," + std::to_string(row.K) + "," +
                         csv_num(row.lower) + "," + csv_num(row.upper) + "," +
                         row.method_lower + "," + row.method_upper;
      if (with_ratio) line += "," + csv_num(ratio);
      rows.push_back(line);
    } else {
      json jr = {{"rho", row.rho},
                 {"K", row.K},
                 {"delta_lower", row.lower},
                 {"delta_upper", std::isfinite(row.upper)
                                     ? json(row.upper)
                                     : json("inf")},
                 {"method_lower", row.method_lower},
                 {"method_upper", row.method_upper}};
      if (with_ratio) jr["ratio"] = ratio;
      jrows.push_back(jr);
    }
  }
  if (fmt == "csv") {
    std::string header = "rho,K,delta_lower,delta_upper,method_lower,method_upper";
    if (with_ratio) header += ",ratio";
    emit_csv(g, cfg, header, rows);
  } else {
    emit_json(g, json{{"config", cfg}, {"result", jrows}});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string spec;
  bool linear_decades = false;
  int frac_T = 128;
  double same_band = 0.25;
  double factor = 4.0;
};

int cmd_classify(const GlobalOpts& g, const ClassifyArgs& a) {
  const gp::ChannelSpec spec = load_spec(a.spec);
  for (const auto& w : spec.warnings()) note(g, w);

  GridSpec gs;
  if (!g.rho_grid.empty()) {
    gs = parse_grid(g.rho_grid);
  } else if (spec.kind == gp::ChannelKind::FracLog) {
    gs = {2.0, 14.0, 7};
  } else {
    gs = {2.0, 300.0, 11};
  }
  // Doubly-exponential spacing by default: tail-ratio identification of
  // slowly diverging gauges needs log2(rho) itself to grow geometrically.
  const bool linear =
      a.linear_decades || spec.kind == gp::ChannelKind::FracLog;
  const auto grid = linear
                        ? gp::rho_grid_decades(gs.start, gs.stop, gs.points)
                        : gp::rho_grid_loglog(gs.start, gs.stop, gs.points);

  gp::TradeoffOptions topt;
  topt.frac_T = a.frac_T;
  topt.same_band = a.same_band;
  topt.divergence_factor = a.factor;
  const auto rep = gp::classify_tradeoff(spec, grid, topt);

  json cfg = {{"command", "classify"},
              {"spec", json::parse(spec.to_json_text())},
              {"grid", {{"start", gs.start}, {"stop", gs.stop},
                        {"points", gs.points},
                        {"spacing", linear ? "decades" : "loglog"}}},
              {"same_band", a.same_band},
              {"divergence_factor", a.factor},
              {"seed", g.seed}};
  if (spec.kind == gp::ChannelKind::FracLog) cfg["frac_T"] = a.frac_T;

  if (rep.verdict == "inconclusive") note(g, "inconclusive: " + rep.rationale);

  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    emit_json(g, json{{"config", cfg},
                      {"status", rep.verdict == "inconclusive" ? "inconclusive"
                                                               : "ok"},
                      {"result", json::parse(rep.to_json_text())}});
  } else {
    json c2 = cfg;
    c2["verdict"] = rep.verdict;
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < rep.log2rho_grid.size(); ++i)
      rows.push_back(csv_num(rep.log2rho_grid[i]) + "," +
                     csv_num(rep.delta2[i]) + "," + csv_num(rep.c_proxy[i]) +
                     "," + csv_num(rep.ratio[i]));
    emit_csv(g, c2, "log2rho,delta2,c_proxy,ratio", rows);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate / cutoff (shared codebook sourcing)
// ---------------------------------------------------------------------------

struct CodebookSource {
  std::string file;
  long long equally_spaced = 0;
  long long random_k = 0;
};

gp::Codebook make_codebook(const gp::ChannelSpec& spec, const CodebookSource& src,
                           std::uint64_t seed, json& cfg) {
  const int sources = (!src.file.empty() ? 1 : 0) +
                      (src.equally_spaced > 0 ? 1 : 0) + (src.random_k > 0 ? 1 : 0);
  gp::check_arg(sources == 1,
                "choose exactly one codebook source: --codebook, "
                "--equally-spaced, or --random");
  if (!src.file.empty()) {
    cfg["codebook"] = src.file;
    gp::Codebook cb = load_codebook(src.file);
    gp::check_arg(cb.kind == spec.kind,
                  "codebook kind '" + gp::to_string(cb.kind) +
                      "' does not match spec kind '" + gp::to_string(spec.kind) +
                      "'");
    return cb;
  }
  if (src.equally_spaced > 0) {
    cfg["equally_spaced"] = src.equally_spaced;
    if (!is_scale_kind(spec.kind))
      throw gp::unsupported_error(
          "--equally-spaced builds scale-family level codebooks; use "
          "--random or --codebook for matrix classes");
    gp::check_arg(src.equally_spaced >= 2, "--equally-spaced needs K >= 2");
    auto res = gp::scale_frontier(src.equally_spaced, gp::effective_rho(spec),
                                  spec.N);
    gp::Codebook cb = res.certificate;
    cb.kind = spec.kind;  // keep Multipath tagged as Multipath
    return cb;
  }
  cfg["random"] = src.random_k;
  gp::check_arg(src.random_k >= 2, "--random needs K >= 2");
  return gp::random_input_codebook(spec, src.random_k, seed);
}

struct SimulateArgs {
  std::string spec;
  CodebookSource src;
  long long n = 1;
  long long trials = 10000;
  double confidence = 3.0;
  std::optional<double> rho;
};

int cmd_simulate(const GlobalOpts& g, const SimulateArgs& a) {
  gp::ChannelSpec spec = load_spec(a.spec);
  if (a.rho) {
    spec.rho = *a.rho;
    spec.validate();
  }
  for (const auto& w : spec.warnings()) note(g, w);

  json cfg = {{"command", "simulate"},
              {"spec", json::parse(spec.to_json_text())},
              {"n", a.n},
              {"trials", a.trials},
              {"confidence", a.confidence},
              {"seed", g.seed}};
  gp::SimConfig sc;
  sc.spec = spec;
  sc.codebook = make_codebook(spec, a.src, g.seed, cfg);
  sc.n = a.n;
  sc.trials = a.trials;
  sc.seed = g.seed;
  sc.confidence = a.confidence;

  const auto res = gp::simulate_pe(sc);
  if (!res.note.empty()) note(g, res.note);

  const std::string fmt = pick_format(g, "json");
  if (fmt == "json") {
    emit_json(g, json{{"config", cfg},
                      {"result", json::parse(res.to_json_text())}});
  } else {
    emit_csv(g, cfg, "pe_hat,stderr,trials,bound,delta_min,n,K,rho,seed,pass",
             {csv_num(res.pe_hat) + "," + csv_num(res.std_error) + "," +
              std::to_string(res.trials) + "," + csv_num(res.bound) + "," +
              csv_num(res.delta_min) + "," + std::to_string(res.n) + "," +
              std::to_string(res.k) + "," + csv_num(res.rho) + "," +
              std::to_string(res.seed) + "," + (res.pass ? "1" : "0")});
  }
  if (!res.pass) {
    note(g, "verification failure: pe_hat - confidence*stderr exceeds the "
            "union bound");
    return 1;
  }
  return 0;
}

struct CutoffArgs {
  std::string spec;
  CodebookSource src;
  std::string weights;
  std::optional<double> rho;
};

int cmd_cutoff(const GlobalOpts& g, const CutoffArgs& a) {
  gp::ChannelSpec spec = load_spec(a.spec);
  if (a.rho) {
    spec.rho = *a.rho;
    spec.validate();
  }
  for (const auto& w : spec.warnings()) note(g, w);

  json cfg = {{"command", "cutoff"},
              {"spec", json::parse(spec.to_json_text())},
              {"seed", g.seed}};
  const gp::Codebook cb = make_codebook(spec, a.src, g.seed, cfg);
  const auto K = static_cast<Eigen::Index>(cb.size());
  gp::RVec w;
  if (a.weights.empty()) {
    w = gp::RVec::Constant(K, 1.0 / static_cast<double>(K));
  } else {
    cfg["weights"] = a.weights;
    w = parse_real_list(a.weights, "--weights");
    gp::check_arg(w.size() == K, "--weights length must equal codebook size");
  }
  const double r0 = gp::cutoff_rate(spec, cb, w);

  const std::string fmt = pick_format(g, "json");
  if (fmt == "json")
    emit_json(g, json{{"config", cfg},
                      {"result", {{"r0", r0}, {"k", cb.size()}, {"rho", spec.rho}}}});
  else
    emit_csv(g, cfg, "r0,k,rho",
             {csv_num(r0) + "," + std::to_string(cb.size()) + "," +
              csv_num(spec.rho)});
  return 0;
}

// ---------------------------------------------------------------------------
// dmt
// ---------------------------------------------------------------------------

struct DmtArgs {
  int M = 1, N = 1;
  std::string r_grid;
};

int cmd_dmt(const GlobalOpts& g, const DmtArgs& a) {
  std::vector<gp::Rational> rs;
  std::string grid_text = a.r_grid;
  if (grid_text.empty()) {
    const int rmax = std::min(a.M, a.N);
    for (int k = 0; k <= 2 * rmax; ++k) {
      rs.push_back(gp::Rational::of(k, 2));
      grid_text += (k ? "," : "") + rs.back().to_string();
    }
  } else {
    for (const auto& tok : split(grid_text, ',')) rs.push_back(parse_rational(tok));
  }
  json cfg = {{"command", "dmt"},
              {"M", a.M},
              {"N", a.N},
              {"r_grid", grid_text},
              {"seed", g.seed}};

  std::vector<gp::DmtPoint> pts;
  pts.reserve(rs.size());
  for (const auto& r : rs) pts.push_back(gp::dmt_compare(a.M, a.N, r));

  const std::string fmt = pick_format(g, "csv");
  if (fmt == "csv") {
    std::vector<std::string> rows;
    for (const auto& p : pts)
      rows.push_back(p.r.to_string() + "," + p.d_bh.to_string() + "," +
                     p.d_star.to_string() + "," + p.gap.to_string() + "," +
                     (p.vacuous ? "1" : "0"));
    emit_csv(g, cfg, "r,d_bh,d_star,gap,vacuous", rows);
  } else {
    json jrows = json::array();
    for (const auto& p : pts)
      jrows.push_back({{"r", p.r.to_string()},
                       {"d_bh", p.d_bh.to_string()},
                       {"d_star", p.d_star.to_string()},
                       {"gap", p.gap.to_string()},
                       {"r_value", p.r.to_double()},
                       {"d_bh_value", p.d_bh.to_double()},
                       {"d_star_value", p.d_star.to_double()},
                       {"gap_value", p.gap.to_double()},
                       {"vacuous", p.vacuous}});
    emit_json(g, json{{"config", cfg}, {"result", jrows}});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// szego
// ---------------------------------------------------------------------------

struct SzegoArgs {
  double beta = 0.5;
  double c_beta = 8.0;
  double p = 1.0;
  std::optional<double> rho;
  bool identify = false;
};

int cmd_szego(const GlobalOpts& g, const SzegoArgs& a) {
  json cfg = {{"command", "szego"},
              {"beta", a.beta},
              {"c_beta", a.c_beta},
              {"P", a.p},
              {"seed", g.seed}};

  if (g.rho_grid.empty()) {
    gp::check_arg(a.rho.has_value(), "szego requires --rho or --rho-grid");
    gp::check_arg(!a.identify, "--identify requires --rho-grid (>= 6 points)");
    cfg["rho"] = *a.rho;
    const double v = gp::szego_integral(a.beta, a.c_beta, a.p, *a.rho);
    const std::string fmt = pick_format(g, "json");
    if (fmt == "json")
      emit_json(g, json{{"config", cfg}, {"result", {{"value", v}}}});
    else
      emit_csv(g, cfg, "rho,value", {csv_num(*a.rho) + "," + csv_num(v)});
    return 0;
  }

  const GridSpec gs = parse_grid(g.rho_grid);
  cfg["rho_grid"] = g.rho_grid;
  std::vector<double> rhos, vals;
  for (double x : gp::rho_grid_decades(gs.start, gs.stop, gs.points)) {
    rhos.push_back(std::exp2(x));
    vals.push_back(gp::szego_integral(a.beta, a.c_beta, a.p, rhos.back()));
  }

  if (a.identify) {
    const auto reading = gp::identify_gauge_rho(
        rhos, vals, gp::default_candidates({a.beta}));
    json sweep = json::array();
    for (std::size_t i = 0; i < rhos.size(); ++i)
      sweep.push_back({{"rho", rhos[i]}, {"value", vals[i]}});
    emit_json(g, json{{"config", cfg},
                      {"result", {{"sweep", sweep},
                                  {"reading", json::parse(reading.to_json_text())}}}});
    return 0;
  }

  const std::string fmt = pick_format(g, "csv");
  if (fmt == "csv") {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < rhos.size(); ++i)
      rows.push_back(csv_num(rhos[i]) + "," + csv_num(vals[i]));
    emit_csv(g, cfg, "rho,value", rows);
  } else {
    json jrows = json::array();
    for (std::size_t i = 0; i < rhos.size(); ++i)
      jrows.push_back({{"rho", rhos[i]}, {"value", vals[i]}});
    emit_json(g, json{{"config", cfg}, {"result", jrows}});
  }
  return 0;
}

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{
      "gauge: divergence packing, diversity frontiers, and SNR-gauge "
      "classification for Gaussian channel families"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed (all randomized paths)")
      ->capture_default_str();
  app.add_option("--out", g.out, "write the result to this file instead of stdout");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--rho-grid", g.rho_grid,
                 "SNR sweep 'start:stop:points' in decades (log-spaced)");
  app.add_flag("--quiet", g.quiet, "suppress informational notes on stderr");

  DistArgs dist;
  auto* cd = app.add_subcommand("dist", "pairwise divergences between output laws");
  cd->fallthrough();
  cd->add_option("what", dist.what, "one of: scale, kl-scale, hellinger-scale, "
                 "chernoff-scale, same-mean, same-cov, gaussian, avg-rayleigh")
      ->required()
      ->check(CLI::IsMember({"scale", "kl-scale", "hellinger-scale",
                             "chernoff-scale", "same-mean", "same-cov",
                             "gaussian", "avg-rayleigh"}));
  cd->add_option("--v1", dist.v1, "first variance (scale family)");
  cd->add_option("--v2", dist.v2, "second variance (scale family)");
  auto* sopt = cd->add_option("--s", dist.s, "Chernoff parameter in (0,1); "
                              "omit for the supremum");
  cd->add_option("--dim", dist.dim, "identity-covariance dimension");
  cd->add_option("--mu1", dist.mu1, "first mean (JSON array or comma list)");
  cd->add_option("--mu2", dist.mu2, "second mean");
  cd->add_option("--cov", dist.cov, "shared covariance ('I' or 2-D JSON)");
  cd->add_option("--cov1", dist.cov1, "first covariance");
  cd->add_option("--cov2", dist.cov2, "second covariance");
  cd->add_option("--eigs", dist.eigs, "Gram eigenvalues of the difference matrix");
  cd->add_option("--n", dist.n_rx, "receive antennas");
  cd->add_option("--rho", dist.rho, "SNR");
  cd->add_flag("--oracle", dist.oracle, "cross-check against adaptive quadrature");

  PackArgs pack;
  auto* cp = app.add_subcommand("pack", "packing count at a divergence threshold");
  cp->fallthrough();
  cp->add_option("--spec", pack.spec, "channel spec (JSON file or inline JSON)")
      ->required();
  cp->add_option("--delta", pack.delta, "divergence threshold (bits)")->required();
  cp->add_option("--div", pack.div, "threshold divergence")
      ->check(CLI::IsMember({"bhatt", "hellinger", "kl"}));
  cp->add_option("--r0", pack.r0, "expurgation: starting log2 codebook size");
  cp->add_option("--budget", pack.budget, "expurgation: pairwise-evaluation budget");
  double pack_rho = 0.0;
  auto* cp_rho = cp->add_option("--rho", pack_rho, "override the spec SNR");

  FrontierArgs fr;
  auto* cf = app.add_subcommand("frontier",
                                "largest achievable min pairwise distance of K codewords");
  cf->fallthrough();
  cf->add_option("--spec", fr.spec, "channel spec (JSON file or inline JSON)")
      ->required();
  long long fr_k = 0;
  double fr_r = 0.0;
  auto* cf_k = cf->add_option("--k", fr_k, "codebook size K >= 2");
  auto* cf_r = cf->add_option("--r", fr_r,
                              "rate fraction; K grows with SNR by the class rule");
  cf_k->excludes(cf_r);
  cf->add_option("--trials", fr.trials, "randomized lower-bound restarts");
  cf->add_option("--frac-T", fr.frac_T, "FracLog block length");
  double fr_rho = 0.0;
  auto* cf_rho = cf->add_option("--rho", fr_rho, "override the spec SNR");

  ClassifyArgs cl;
  auto* cc = app.add_subcommand("classify",
                                "same-gauge vs cross-gauge tradeoff classification");
  cc->fallthrough();
  cc->add_option("--spec", cl.spec, "channel spec (JSON file or inline JSON)")
      ->required();
  cc->add_flag("--linear-decades", cl.linear_decades,
               "space the grid linearly in decades instead of doubly "
               "exponentially");
  cc->add_option("--frac-T", cl.frac_T, "FracLog block length for the pair frontier");
  cc->add_option("--same-band", cl.same_band, "bounded-ratio band half-width");
  cc->add_option("--factor", cl.factor, "ratio growth factor declaring cross-gauge");

  SimulateArgs sim;
  auto* cs = app.add_subcommand("simulate",
                                "Monte Carlo ML error vs the union bound");
  cs->fallthrough();
  cs->add_option("--spec", sim.spec, "channel spec (JSON file or inline JSON)")
      ->required();
  cs->add_option("--codebook", sim.src.file, "codebook JSON file");
  cs->add_option("--equally-spaced", sim.src.equally_spaced,
                 "K equally spaced scale-family levels");
  cs->add_option("--random", sim.src.random_k, "K random-ensemble codewords");
  cs->add_option("--n", sim.n, "independent channel uses per message");
  cs->add_option("--trials", sim.trials, "Monte Carlo trials (>= 1000)");
  cs->add_option("--confidence", sim.confidence, "z-multiplier in the pass rule");
  double sim_rho = 0.0;
  auto* cs_rho = cs->add_option("--rho", sim_rho, "override the spec SNR");

  DmtArgs dmt;
  auto* cm = app.add_subcommand("dmt",
                                "union-bound exponent line vs the optimal tradeoff curve");
  cm->fallthrough();
  cm->add_option("--m", dmt.M, "transmit antennas")->required();
  cm->add_option("--n", dmt.N, "receive antennas")->required();
  cm->add_option("--r-grid", dmt.r_grid,
                 "comma list of rationals ('3/2' or short decimals); default "
                 "half-integer steps to min(M,N)");

  SzegoArgs sz;
  auto* cz = app.add_subcommand("szego", "power-law spectral-density rate integral");
  cz->fallthrough();
  cz->add_option("--beta", sz.beta, "spectral exponent parameter in (0,1)")
      ->required();
  cz->add_option("--c-beta", sz.c_beta, "spectral-density scale constant");
  cz->add_option("--p", sz.p, "input power");
  double sz_rho = 0.0;
  auto* cz_rho = cz->add_option("--rho", sz_rho, "SNR");
  cz->add_flag("--identify", sz.identify,
               "fit the growth gauge of the sweep (requires --rho-grid)");

  CutoffArgs cut;
  auto* cu = app.add_subcommand("cutoff", "cutoff rate of a weighted codebook");
  cu->fallthrough();
  cu->add_option("--spec", cut.spec, "channel spec (JSON file or inline JSON)")
      ->required();
  cu->add_option("--codebook", cut.src.file, "codebook JSON file");
  cu->add_option("--equally-spaced", cut.src.equally_spaced,
                 "K equally spaced scale-family levels");
  cu->add_option("--random", cut.src.random_k, "K random-ensemble codewords");
  cu->add_option("--weights", cut.weights, "input weights (default uniform)");
  double cut_rho = 0.0;
  auto* cu_rho = cu->add_option("--rho", cut_rho, "override the spec SNR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  dist.s_given = sopt->count() > 0;
  if (cp_rho->count()) pack.rho = pack_rho;
  if (cf_k->count()) fr.K = fr_k;
  if (cf_r->count()) fr.r = fr_r;
  if (cf_rho->count()) fr.rho = fr_rho;
  if (cs_rho->count()) sim.rho = sim_rho;
  if (cz_rho->count()) sz.rho = sz_rho;
  if (cu_rho->count()) cut.rho = cut_rho;

  try {
    if (app.got_subcommand(cd)) return cmd_dist(g, dist);
    if (app.got_subcommand(cp)) return cmd_pack(g, pack);
    if (app.got_subcommand(cf)) return cmd_frontier(g, fr);
    if (app.got_subcommand(cc)) return cmd_classify(g, cl);
    if (app.got_subcommand(cs)) return cmd_simulate(g, sim);
    if (app.got_subcommand(cm)) return cmd_dmt(g, dmt);
    if (app.got_subcommand(cz)) return cmd_szego(g, sz);
    if (app.got_subcommand(cu)) return cmd_cutoff(g, cut);
  } catch (const gp::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gp::error& e) {
    // invalid_argument_error, unsupported_error, budget_error
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
