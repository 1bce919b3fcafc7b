#include "gaugepack/gauge.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "gaugepack/divergence.hpp"
#include "gaugepack/packing.hpp"
#include "gaugepack/spectrum.hpp"

namespace gaugepack {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Of10 = 3.321928094887362347870319429489;

// log2(1 + 2^y), stable for any y.
double log2p1_exp2(double y) {
  return y > 0.0 ? y + log2p1(std::exp2(-y)) : log2p1(std::exp2(y));
}

// log2 q with q = rho^2/(1+rho) = rho/(1+1/rho), from x = log2(rho).
double log2_q(double x) { return x - log2p1_exp2(-x); }

double rho_from_log2(double x, const char* what) {
  const double rho = std::exp2(x);
  if (!std::isfinite(rho) || rho <= 0.0)
    throw numeric_error(std::string(what) +
                        " needs a representable SNR; shrink the grid "
                        "(log2 rho = " + std::to_string(x) + ")");
  return rho;
}

double multipath_gain(const ChannelSpec& spec) {
  return spec.kind == ChannelKind::Multipath ? spec.taps.sum() : 1.0;
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return json(v);
  return json();
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

json reading_to_json(const GaugeReading& r) {
  json j;
  json best;
  best["family"] = to_string(r.best.family);
  best["param"] = (r.best.family == GaugeFamily::PowLog ||
                   r.best.family == GaugeFamily::Pow)
                      ? json(r.best.param)
                      : json();
  best["name"] = r.best.name();
  j["best"] = best;
  j["coefficient"] = r.coefficient;
  j["drift"] = r.drift;
  j["margin"] = finite_or_null(r.margin);
  j["inconclusive"] = r.inconclusive;
  j["note"] = r.note;
  j["grid_log2rho"] = r.log2rho_grid;
  j["values"] = r.values;
  json cands = json::array();
  for (const CandidateDiagnostic& d : r.diagnostics)
    cands.push_back({{"name", d.candidate.name()},
                     {"drift", finite_or_null(d.drift)},
                     {"coefficient", finite_or_null(d.coefficient)}});
  j["candidates"] = cands;
  return j;
}

}  // namespace

std::string to_string(GaugeFamily f) {
  switch (f) {
    case GaugeFamily::Const: return "const";
    case GaugeFamily::Log: return "log";
    case GaugeFamily::LogLog: return "loglog";
    case GaugeFamily::PowLog: return "pow-log";
    case GaugeFamily::Pow: return "pow";
  }
  throw invalid_argument_error("unknown gauge family");
}

std::string GaugeCandidate::name() const {
  switch (family) {
    case GaugeFamily::Const: return "const";
    case GaugeFamily::Log: return "log";
    case GaugeFamily::LogLog: return "loglog";
    case GaugeFamily::PowLog:
      return "pow-log(" + format_double("%.2f", param) + ")";
    case GaugeFamily::Pow: return "pow(" + format_double("%.2f", param) + ")";
  }
  throw invalid_argument_error("unknown gauge family");
}

double GaugeCandidate::log_value(double log2rho) const {
  switch (family) {
    case GaugeFamily::Const: return 0.0;
    case GaugeFamily::Log: return std::log(log2rho);          // g = log2 rho
    case GaugeFamily::LogLog:
      return std::log(std::log(log2rho) / kLn2);              // g = log2 log2 rho
    case GaugeFamily::PowLog: return param * std::log(log2rho);  // g = (log2 rho)^b
    case GaugeFamily::Pow: return param * log2rho * kLn2;        // g = rho^a
  }
  throw invalid_argument_error("unknown gauge family");
}

bool GaugeCandidate::evaluable(double log2rho) const {
  switch (family) {
    case GaugeFamily::Const:
    case GaugeFamily::Pow: return std::isfinite(log2rho);
    case GaugeFamily::Log:
    case GaugeFamily::PowLog: return log2rho > 0.0;
    case GaugeFamily::LogLog: return log2rho > 1.0;
  }
  return false;
}

std::vector<GaugeCandidate> default_candidates(
    const std::vector<double>& declared_betas,
    const std::vector<double>& declared_pows) {
  std::vector<GaugeCandidate> out;
  out.push_back({GaugeFamily::Const, 0.0});
  out.push_back({GaugeFamily::Log, 0.0});
  out.push_back({GaugeFamily::LogLog, 0.0});
  std::vector<double> betas;
  for (int i = 1; i <= 9; ++i) betas.push_back(0.1 * i);
  for (double b : declared_betas) {
    check_arg(b > 0.0 && b < 1.0, "declared pow-log exponent must be in (0,1)");
    betas.push_back(b);
  }
  std::vector<double> pows = {0.25, 0.5, 0.75, 1.0};
  for (double a : declared_pows) {
    check_arg(a > 0.0, "declared pow exponent must be positive");
    pows.push_back(a);
  }
  auto dedupe_append = [&out](std::vector<double>& v, GaugeFamily fam) {
    std::sort(v.begin(), v.end());
    double prev = -kInf;
    for (double p : v) {
      if (p - prev > 1e-9) out.push_back({fam, p});
      prev = p;
    }
  };
  dedupe_append(betas, GaugeFamily::PowLog);
  dedupe_append(pows, GaugeFamily::Pow);
  return out;
}

std::string GaugeReading::to_json_text(int indent) const {
  return reading_to_json(*this).dump(indent);
}

GaugeReading identify_gauge(const std::vector<double>& log2rho,
                            const std::vector<double>& values,
                            const std::vector<GaugeCandidate>& candidates,
                            double drift_threshold) {
  const std::size_t n = log2rho.size();
  check_arg(values.size() == n, "grid and value lists must have equal length");
  if (n < 6)
    throw invalid_argument_error(
        "gauge identification needs at least 6 samples");
  for (std::size_t i = 1; i < n; ++i)
    check_arg(log2rho[i] > log2rho[i - 1], "SNR grid must be strictly increasing");
  for (double v : values)
    check_arg(std::isfinite(v) && v > 0.0, "sweep values must be positive");
  check_arg(!candidates.empty(), "candidate menu must be nonempty");

  bool monotone = true;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (values[i + 1] < values[i] * (1.0 - 1e-12)) monotone = false;

  const std::size_t mid = n / 2, last = n - 1;
  std::vector<CandidateDiagnostic> diags;
  for (const GaugeCandidate& c : candidates) {
    if (!c.evaluable(log2rho[mid])) continue;
    const double lr_last = std::log(values[last]) - c.log_value(log2rho[last]);
    const double lr_mid = std::log(values[mid]) - c.log_value(log2rho[mid]);
    CandidateDiagnostic d;
    d.candidate = c;
    d.drift = std::fabs(std::expm1(lr_last - lr_mid));
    d.coefficient = std::exp(lr_last);
    diags.push_back(d);
  }
  if (diags.empty())
    throw invalid_argument_error(
        "no candidate gauge is evaluable on this grid (need log2 rho > 1)");
  std::stable_sort(diags.begin(), diags.end(),
                   [](const CandidateDiagnostic& a, const CandidateDiagnostic& b) {
                     return a.drift < b.drift;
                   });

  GaugeReading r;
  r.best = diags.front().candidate;
  r.coefficient = diags.front().coefficient;
  r.drift = diags.front().drift;
  r.margin = diags.size() > 1 ? diags[1].drift - diags[0].drift : kInf;
  r.inconclusive = (r.drift > drift_threshold) || !monotone;
  if (!monotone)
    r.note = "values not monotone non-decreasing; reading inconclusive";
  else if (r.inconclusive)
    r.note = "best tail drift " + format_double("%.3g", r.drift) +
             " exceeds threshold " + format_double("%.3g", drift_threshold);
  r.log2rho_grid = log2rho;
  r.values = values;
  r.diagnostics = std::move(diags);
  return r;
}

GaugeReading identify_gauge_rho(const std::vector<double>& rho,
                                const std::vector<double>& values,
                                const std::vector<GaugeCandidate>& candidates,
                                double drift_threshold) {
  std::vector<double> x(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    check_arg(std::isfinite(rho[i]) && rho[i] > 0.0, "SNR values must be positive");
    x[i] = std::log2(rho[i]);
  }
  return identify_gauge(x, values, candidates, drift_threshold);
}

std::vector<double> rho_grid_decades(double start_decade, double stop_decade,
                                     int points) {
  check_arg(points >= 1, "grid needs at least one point");
  check_arg(stop_decade >= start_decade, "grid must be nondecreasing");
  std::vector<double> x;
  if (points == 1) {
    x.push_back(start_decade * kLog2Of10);
    return x;
  }
  for (int i = 0; i < points; ++i)
    x.push_back((start_decade +
                 (stop_decade - start_decade) * i / (points - 1)) *
                kLog2Of10);
  return x;
}

std::vector<double> rho_grid_loglog(double start_decade, double stop_decade,
                                    int points) {
  check_arg(points >= 2, "doubly-exponential grid needs at least two points");
  check_arg(start_decade > 0.0, "start decade must be positive");
  check_arg(stop_decade > start_decade, "grid must be increasing");
  const double x0 = start_decade * kLog2Of10;
  const double x1 = stop_decade * kLog2Of10;
  std::vector<double> x;
  for (int i = 0; i < points; ++i)
    x.push_back(x0 * std::exp(std::log(x1 / x0) * i / (points - 1)));
  return x;
}

// ---------------------------------------------------------------------------
// Gauge-DOF
// ---------------------------------------------------------------------------

double pack_complexity_per_symbol(const ChannelSpec& spec, double delta,
                                  double log2rho, const GaugeDofOptions& opt) {
  spec.validate();
  check_arg(std::isfinite(delta) && delta > 0.0, "threshold must be positive");
  switch (spec.kind) {
    case ChannelKind::FastFading:
    case ChannelKind::Multipath: {
      const double x_eff = log2rho + std::log2(multipath_gain(spec));
      return scale_pack_count_log2rho(delta, x_eff, spec.N).k_pack;
    }
    case ChannelKind::FixedH: {
      // Orthogonal lattice through the channel's right singular directions:
      // step d0/sigma_j per real axis with d0^2 = 4 delta ln2 / rho inside the
      // per-coordinate power box of half-width 1/sqrt(2m). Every nonzero
      // lattice difference clears threshold delta; counts are exact integers
      // until they saturate double precision, continuous beyond.
      Eigen::JacobiSVD<Mat> svd(spec.H);
      const RVec sv = svd.singularValues();
      const double tol = 1e-10 * sv.maxCoeff();
      int m = 0;
      for (Eigen::Index j = 0; j < sv.size(); ++j)
        if (sv[j] > tol) ++m;
      if (m == 0) return 0.0;
      double k_per_symbol = 0.0;
      const double base = log2rho - std::log2(2.0 * m * delta * kLn2);
      for (int j = 0; j < m; ++j) {
        const double half_log2 = 0.5 * base + std::log2(sv[j]);
        if (half_log2 < 52.0) {
          const double n_j = std::floor(std::exp2(half_log2)) + 1.0;
          k_per_symbol += 2.0 * std::log2(n_j);
        } else {
          k_per_symbol += 2.0 * half_log2;
        }
      }
      return k_per_symbol;
    }
    case ChannelKind::CoherentMIMO: {
      // Cubic lattice in all 2MT real input coordinates; the single-step
      // distance N log2(1 + rho s^2 / 4) >= delta bounds every difference by
      // superadditivity of log2(1+.) over Gram eigenvalues.
      const double base =
          log2rho - std::log2(2.0 * spec.M * std::expm1(delta * kLn2 / spec.N));
      const double half_log2 = 0.5 * base;
      double log2_n;
      if (half_log2 < 52.0)
        log2_n = std::log2(std::floor(std::exp2(half_log2)) + 1.0);
      else
        log2_n = half_log2;
      return 2.0 * spec.M * log2_n;
    }
    case ChannelKind::BlockFading: {
      // Subspace ball-volume packing: pairwise distance >= delta whenever all
      // principal sines clear eps^2 = 4(2^{delta/(NM)}-1)/q; the chordal ball
      // of radius eps has normalized measure eps^{2M(T-M)} (exact for M = 1,
      // leading-order for M > 1), so a maximal packing has at least
      // eps^{-2M(T-M)} points.
      check_arg(spec.T > spec.M, "block fading packing needs T > M");
      const double log2_eps2 =
          2.0 + std::log2(std::expm1(delta * kLn2 / (spec.N * spec.M))) -
          log2_q(log2rho);
      const double per_block =
          std::max(0.0, -static_cast<double>(spec.M) * (spec.T - spec.M) *
                            log2_eps2);
      return per_block / spec.T;
    }
    case ChannelKind::FracLog: {
      ChannelSpec s = spec;
      s.rho = rho_from_log2(log2rho, "fractional-log packing");
      const PackingResult res = expurgated_pack_lower(
          s, delta, /*R0_estimate=*/2.0, opt.sample_budget, opt.seed);
      return res.k_pack / spec.T;
    }
  }
  throw invalid_argument_error("unknown channel kind");
}

GaugeReading gauge_dof(const ChannelSpec& spec, double delta,
                       const std::vector<double>& log2rho_grid,
                       const GaugeDofOptions& opt) {
  check_arg(log2rho_grid.size() >= 2, "grid needs at least two points");
  check_arg(log2rho_grid.back() - log2rho_grid.front() >=
                10.0 * kLog2Of10 - 1e-9,
            "gauge-DOF grid must span at least 10 decades");
  std::vector<double> xs, vals;
  for (double x : log2rho_grid) {
    const double v = pack_complexity_per_symbol(spec, delta, x, opt);
    if (v > 0.0) {
      xs.push_back(x);
      vals.push_back(v);
    }
  }
  if (xs.size() < 6)
    throw invalid_argument_error(
        "fewer than 6 grid points yield a nontrivial packing; lower the "
        "threshold or extend the grid");
  GaugeReading r = identify_gauge(xs, vals, default_candidates(),
                                  opt.drift_threshold);
  std::string how;
  switch (spec.kind) {
    case ChannelKind::FastFading:
    case ChannelKind::Multipath:
      how = "exact interval packing on the log-variance range";
      break;
    case ChannelKind::FixedH:
      how = "orthogonal-lattice construction along channel singular directions";
      break;
    case ChannelKind::CoherentMIMO:
      how = "cubic-lattice construction in all input coordinates";
      break;
    case ChannelKind::BlockFading:
      how = "subspace ball-volume packing bound";
      break;
    case ChannelKind::FracLog:
      how = "random-coding expurgation lower bound";
      break;
  }
  r.note = "per-symbol packing complexity via " + how +
           (r.note.empty() ? "" : "; " + r.note);
  return r;
}

// ---------------------------------------------------------------------------
// B-diversity
// ---------------------------------------------------------------------------

long long b_diversity_codebook_size(const ChannelSpec& spec, double r,
                                    double log2rho) {
  spec.validate();
  check_arg(std::isfinite(r) && r >= 0.0, "load must be nonnegative");
  double log2K = 0.0;
  switch (spec.kind) {
    case ChannelKind::FastFading:
    case ChannelKind::Multipath: {
      check_arg(r <= 1.0, "scale-family load must lie in [0,1]");
      const double x_eff = log2rho + std::log2(multipath_gain(spec));
      check_arg(x_eff > 1.0, "grid point too small for the loglog gauge");
      log2K = r * std::log2(x_eff);
      break;
    }
    case ChannelKind::FixedH:
      check_arg(r <= std::min(spec.M, spec.N),
                "load must lie in [0, min(M,N)]");
      log2K = r * log2rho;
      break;
    case ChannelKind::CoherentMIMO:
      check_arg(r <= std::min(spec.M, spec.N),
                "load must lie in [0, min(M,N)]");
      log2K = r * spec.M * log2rho;
      break;
    case ChannelKind::BlockFading:
      check_arg(r <= 1.0, "block-fading load must lie in [0,1]");
      check_arg(spec.T > spec.M, "block fading needs T > M");
      log2K = r * spec.M * (spec.T - spec.M) * log2rho;
      break;
    case ChannelKind::FracLog:
      check_arg(r == 0.0,
                "fractional-log diversity is supported only at load 0 "
                "(open problem beyond)");
      break;
  }
  if (log2K > 40.0)
    throw budget_error("prescribed codebook size 2^" +
                       format_double("%.1f", log2K) +
                       " exceeds what pairwise scoring can handle");
  const long long K = static_cast<long long>(std::ceil(std::exp2(log2K) - 1e-12));
  return std::max<long long>(2, K);
}

double b_diversity_frontier_value(const ChannelSpec& spec, double r,
                                  double log2rho,
                                  const BDiversityOptions& opt) {
  const long long K = b_diversity_codebook_size(spec, r, log2rho);
  if (K > opt.k_cap)
    throw budget_error("codebook size " + std::to_string(K) +
                       " exceeds the configured cap " +
                       std::to_string(opt.k_cap));
  switch (spec.kind) {
    case ChannelKind::FastFading:
    case ChannelKind::Multipath: {
      const double x_eff = log2rho + std::log2(multipath_gain(spec));
      return scale_frontier_log2rho(K, x_eff, spec.N).value_lower;
    }
    case ChannelKind::FixedH: {
      const double rho = rho_from_log2(log2rho, "FixedH frontier");
      if (K == 2) {
        Eigen::JacobiSVD<Mat> svd(spec.H);
        const double smax = svd.singularValues().maxCoeff();
        return rho * spec.T * smax * smax / kLn2;
      }
      ChannelSpec s = spec;
      s.rho = rho;
      const std::uint64_t stream = std::bit_cast<std::uint64_t>(log2rho);
      const long long pool_n = std::min<long long>(std::max<long long>(4 * K, 64), 512);
      double best = -kInf;
      for (int t = 0; t < opt.trials; ++t) {
        const Codebook pool =
            random_input_codebook(s, pool_n, opt.seed, stream + t);
        const Codebook cb = greedy_maxmin(s, pool, static_cast<int>(K), opt.seed);
        best = std::max(best, codebook_min_distance(s, cb));
      }
      return best;
    }
    case ChannelKind::CoherentMIMO: {
      if (K == 2)
        return static_cast<double>(spec.N) * spec.M *
               log2p1_exp2(log2rho +
                           std::log2(static_cast<double>(spec.T) / spec.M));
      const double rho = rho_from_log2(log2rho, "coherent frontier");
      return mimo_frontier_lower(spec.M, spec.N, spec.T, rho, K, opt.trials,
                                 opt.seed)
          .value_lower;
    }
    case ChannelKind::BlockFading: {
      if (K == 2) {
        check_arg(spec.T >= 2 * spec.M,
                  "orthogonal pair needs T >= 2M; below the phase transition "
                  "the two-point frontier has no closed form here");
        return static_cast<double>(spec.N) * spec.M *
               log2p1_exp2(log2_q(log2rho) - 2.0);
      }
      const double rho = rho_from_log2(log2rho, "block-fading frontier");
      return grassmann_frontier_bounds(spec.M, spec.N, spec.T, rho, K,
                                       opt.trials, opt.seed)
          .value_lower;
    }
    case ChannelKind::FracLog:
      return frontier_delta2(spec, log2rho);
  }
  throw invalid_argument_error("unknown channel kind");
}

GaugeReading b_diversity(const ChannelSpec& spec, double r,
                         const std::vector<double>& log2rho_grid,
                         const BDiversityOptions& opt) {
  std::vector<double> vals;
  vals.reserve(log2rho_grid.size());
  for (double x : log2rho_grid)
    vals.push_back(b_diversity_frontier_value(spec, r, x, opt));
  std::vector<double> declared_betas, declared_pows;
  if (r > 0.0 && r < 1.0) declared_betas.push_back(1.0 - r);
  GaugeReading out =
      identify_gauge(log2rho_grid, vals,
                     default_candidates(declared_betas, declared_pows),
                     opt.drift_threshold);
  std::string conv;
  switch (spec.kind) {
    case ChannelKind::FastFading:
    case ChannelKind::Multipath: conv = "K = ceil((log2 rho)^r)"; break;
    case ChannelKind::FixedH: conv = "K = ceil(rho^r)"; break;
    case ChannelKind::CoherentMIMO: conv = "K = ceil(rho^(r M))"; break;
    case ChannelKind::BlockFading: conv = "K = ceil(rho^(r M (T-M)))"; break;
    case ChannelKind::FracLog: conv = "K = 2 (load 0 only)"; break;
  }
  out.note = "frontier at " + conv + ", clamped to K >= 2" +
             (out.note.empty() ? "" : "; " + out.note);
  return out;
}

// ---------------------------------------------------------------------------
// Tradeoff classification
// ---------------------------------------------------------------------------

double capacity_proxy(const ChannelSpec& spec, double log2rho) {
  spec.validate();
  switch (spec.kind) {
    case ChannelKind::FixedH:
    case ChannelKind::CoherentMIMO:
      return std::min(spec.M, spec.N) * log2p1_exp2(log2rho);
    case ChannelKind::FastFading:
    case ChannelKind::Multipath: {
      const double x_eff = log2rho + std::log2(multipath_gain(spec));
      check_arg(x_eff > 1.0, "capacity proxy needs log2 rho_eff > 1");
      return std::log2(x_eff);
    }
    case ChannelKind::BlockFading:
      return static_cast<double>(spec.M) * (spec.T - spec.M) / spec.T * log2rho;
    case ChannelKind::FracLog: {
      const double rho = rho_from_log2(log2rho, "szego capacity proxy");
      return szego_integral(spec.beta, spec.c_beta, 1.0, rho);
    }
  }
  throw invalid_argument_error("unknown channel kind");
}

double frontier_delta2(const ChannelSpec& spec, double log2rho, int frac_T) {
  spec.validate();
  switch (spec.kind) {
    case ChannelKind::FastFading:
    case ChannelKind::Multipath: {
      const double x_eff = log2rho + std::log2(multipath_gain(spec));
      return spec.N * log2cosh(0.5 * log_variance_range_log2rho(x_eff));
    }
    case ChannelKind::FixedH: {
      const double rho = rho_from_log2(log2rho, "FixedH two-point frontier");
      Eigen::JacobiSVD<Mat> svd(spec.H);
      const double smax = svd.singularValues().maxCoeff();
      const double d = rho * spec.T * smax * smax / kLn2;
      if (!std::isfinite(d))
        throw numeric_error("two-point frontier overflows at this SNR");
      return d;
    }
    case ChannelKind::CoherentMIMO:
      return static_cast<double>(spec.N) * spec.M *
             log2p1_exp2(log2rho +
                         std::log2(static_cast<double>(spec.T) / spec.M));
    case ChannelKind::BlockFading:
      check_arg(spec.T >= 2 * spec.M,
                "two-point frontier uses an orthogonal subspace pair (T >= 2M)");
      return static_cast<double>(spec.N) * spec.M *
             log2p1_exp2(log2_q(log2rho) - 2.0);
    case ChannelKind::FracLog: {
      check_arg(frac_T >= 2, "block length must be >= 2");
      const double rho = rho_from_log2(log2rho, "fractional-log frontier");
      const RVec r = psd_autocovariance(spec.beta, spec.c_beta, frac_T);
      const RVec mu = toeplitz_eigenvalues(r, frac_T);
      return frac_log_level_distance_from_eigs(mu, 1.0, 0.0, rho, spec.N,
                                               frac_T);
    }
  }
  throw invalid_argument_error("unknown channel kind");
}

std::string TradeoffReport::to_json_text(int indent) const {
  json j;
  j["verdict"] = verdict;
  j["rationale"] = rationale;
  j["grid_log2rho"] = log2rho_grid;
  j["delta2"] = delta2;
  j["c_proxy"] = c_proxy;
  j["ratio"] = ratio;
  j["ratio_mid"] = finite_or_null(ratio_mid);
  j["ratio_last"] = finite_or_null(ratio_last);
  j["rate_reading"] = reading_to_json(rate_reading);
  j["diversity_reading"] = reading_to_json(diversity_reading);
  return j.dump(indent);
}

TradeoffReport classify_tradeoff(const ChannelSpec& spec,
                                 const std::vector<double>& log2rho_grid,
                                 const TradeoffOptions& opt) {
  spec.validate();
  TradeoffReport rep;
  rep.log2rho_grid = log2rho_grid;
  for (double x : log2rho_grid) {
    rep.delta2.push_back(frontier_delta2(spec, x, opt.frac_T));
    rep.c_proxy.push_back(capacity_proxy(spec, x));
    check_arg(rep.c_proxy.back() > 0.0, "capacity proxy must be positive");
    rep.ratio.push_back(rep.delta2.back() / rep.c_proxy.back());
  }
  const std::size_t n = log2rho_grid.size();
  if (n < 6) {
    rep.verdict = "inconclusive";
    rep.rationale = "grid too short: need at least 6 points, got " +
                    std::to_string(n);
    rep.rate_reading.inconclusive = true;
    rep.rate_reading.note = rep.rationale;
    rep.diversity_reading.inconclusive = true;
    rep.diversity_reading.note = rep.rationale;
    return rep;
  }
  const std::size_t mid = n / 2;
  rep.ratio_mid = rep.ratio[mid];
  rep.ratio_last = rep.ratio[n - 1];
  const double rel = std::fabs(rep.ratio_last / rep.ratio_mid - 1.0);
  if (rep.ratio_last > opt.divergence_factor * rep.ratio_mid) {
    rep.verdict = "cross-gauge";
    rep.rationale = "frontier/capacity ratio grew from " +
                    format_double("%.4g", rep.ratio_mid) + " (mid-grid) to " +
                    format_double("%.4g", rep.ratio_last) +
                    " (grid end), beyond the x" +
                    format_double("%.3g", opt.divergence_factor) +
                    " divergence factor";
  } else if (rel <= opt.same_band) {
    rep.verdict = "same-gauge";
    rep.rationale = "frontier/capacity ratio stable within " +
                    format_double("%.3g", 100.0 * rel) +
                    "% between mid-grid and grid end (band " +
                    format_double("%.3g", 100.0 * opt.same_band) + "%)";
  } else {
    rep.verdict = "inconclusive";
    rep.rationale = "ratio moved " + format_double("%.3g", 100.0 * rel) +
                    "% between mid-grid and grid end: above the same-gauge "
                    "band but below the divergence factor";
  }
  rep.rate_reading = identify_gauge(log2rho_grid, rep.c_proxy,
                                    default_candidates(), opt.drift_threshold);
  rep.diversity_reading = identify_gauge(
      log2rho_grid, rep.delta2, default_candidates(), opt.drift_threshold);
  return rep;
}

// ---------------------------------------------------------------------------
// Exact rational DMT comparison
// ---------------------------------------------------------------------------

namespace {

using int128 = __int128;

int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_rational(int128 num, int128 den) {
  if (den == 0) throw invalid_argument_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int128 g = gcd128(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  }
  constexpr int128 lim = std::numeric_limits<long long>::max();
  if (num > lim || num < -lim || den > lim)
    throw numeric_error("rational arithmetic overflow");
  Rational r;
  r.num = static_cast<long long>(num);
  r.den = static_cast<long long>(den);
  if (r.den == 0) r.den = 1;  // num == 0 after reduction with den 0 impossible
  return r;
}

}  // namespace

Rational Rational::of(long long num, long long den) {
  return make_rational(num, den);
}

Rational Rational::operator+(const Rational& o) const {
  return make_rational(static_cast<int128>(num) * o.den +
                           static_cast<int128>(o.num) * den,
                       static_cast<int128>(den) * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  return make_rational(static_cast<int128>(num) * o.den -
                           static_cast<int128>(o.num) * den,
                       static_cast<int128>(den) * o.den);
}

Rational Rational::operator*(const Rational& o) const {
  return make_rational(static_cast<int128>(num) * o.num,
                       static_cast<int128>(den) * o.den);
}

bool Rational::operator==(const Rational& o) const {
  return num == o.num && den == o.den;
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<int128>(num) * o.den < static_cast<int128>(o.num) * den;
}

double Rational::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

DmtPoint dmt_compare(int M, int N, const Rational& r) {
  check_arg(M >= 1 && N >= 1, "antenna counts must be >= 1");
  const Rational zero = Rational::of(0);
  const Rational rmax = Rational::of(std::min(M, N));
  check_arg(zero <= r && r <= rmax, "load must lie in [0, min(M,N)]");
  DmtPoint p;
  p.r = r;
  p.d_bh = Rational::of(static_cast<long long>(M) * N) -
           r * Rational::of(static_cast<long long>(M) + N);
  p.d_star = (Rational::of(M) - r) * (Rational::of(N) - r);
  p.gap = p.d_star - p.d_bh;
  if (!(p.gap == r * r))
    throw numeric_error("rational identity check failed in dmt_compare");
  p.vacuous = p.d_bh < zero;
  return p;
}

}  // namespace gaugepack
