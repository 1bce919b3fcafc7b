#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaugepack/channel.hpp"
#include "gaugepack/errors.hpp"

namespace gaugepack {

// ---------------------------------------------------------------------------
// Gauge families: slowly varying growth laws against which rate/reliability
// sweeps are normalized.  All evaluation happens in the log domain with the
// SNR represented by x = log2(rho), so grids may reach rho = 10^300 and the
// doubly-exponential grids needed for loglog discrimination stay exact.
// ---------------------------------------------------------------------------

enum class GaugeFamily { Const, Log, LogLog, PowLog, Pow };

std::string to_string(GaugeFamily f);

struct GaugeCandidate {
  GaugeFamily family = GaugeFamily::Const;
  double param = 0.0;  // beta in (0,1) for PowLog, exponent a > 0 for Pow

  // Human-readable name, e.g. "log", "pow-log(0.30)", "pow(1.00)".
  std::string name() const;

  // ln g(rho) evaluated at x = log2(rho).  Requires x > 1 for LogLog and
  // PowLog (so that log2 log2 rho > 0), x > 0 for Log and Pow.
  double log_value(double log2rho) const;

  // True when the candidate is evaluable and positive at this x.
  bool evaluable(double log2rho) const;
};

// Candidate menu: const, log, loglog, pow-log over beta in {0.1,...,0.9} plus
// any declared betas, pow over a in {0.25, 0.5, 0.75, 1} plus declared
// exponents.  Duplicates (within 1e-9) are removed.
std::vector<GaugeCandidate> default_candidates(
    const std::vector<double>& declared_betas = {},
    const std::vector<double>& declared_pows = {});

struct CandidateDiagnostic {
  GaugeCandidate candidate;
  double drift = 0.0;        // |r_last/r_mid - 1|
  double coefficient = 0.0;  // r_last = value_last / g(rho_last)
};

struct GaugeReading {
  GaugeCandidate best;
  double coefficient = 0.0;  // r_last of the winner
  double drift = 0.0;        // winning tail drift
  double margin = 0.0;       // runner-up drift minus winning drift
  bool inconclusive = false;
  std::string note;  // why inconclusive / construction used
  std::vector<double> log2rho_grid;
  std::vector<double> values;
  std::vector<CandidateDiagnostic> diagnostics;  // sorted by drift, ascending

  std::string to_json_text(int indent = -1) const;
};

// Tail-ratio gauge identification.  For each candidate g the normalized
// sequence r_i = value_i / g(rho_i) is formed (in the log domain); the winner
// minimizes the tail drift |r_last / r_mid - 1| with mid = n/2.  Drift above
// `drift_threshold`, or non-monotone input values, flag the reading
// inconclusive (the best candidate is still reported).
// Preconditions: >= 6 samples, log2rho strictly increasing, values positive.
GaugeReading identify_gauge(const std::vector<double>& log2rho,
                            const std::vector<double>& values,
                            const std::vector<GaugeCandidate>& candidates,
                            double drift_threshold = 0.10);

// Convenience overload taking raw rho values.
GaugeReading identify_gauge_rho(const std::vector<double>& rho,
                                const std::vector<double>& values,
                                const std::vector<GaugeCandidate>& candidates,
                                double drift_threshold = 0.10);

// Grid builders (both return log2(rho) values).
//  - rho_grid_decades: rho log-spaced, i.e. decades linearly spaced.
//  - rho_grid_loglog: log2(rho) itself log-spaced (doubly exponential rho);
//    this is the grid on which loglog-vs-pow-log discrimination is sound.
std::vector<double> rho_grid_decades(double start_decade, double stop_decade,
                                     int points);
std::vector<double> rho_grid_loglog(double start_decade, double stop_decade,
                                    int points);

// ---------------------------------------------------------------------------
// Gauge-DOF: per-symbol packing complexity K_pack(delta; rho)/T swept over a
// grid and normalized by the identified gauge.  Exact for the scale family;
// explicit lattice/subsphere constructions or random expurgation elsewhere.
// ---------------------------------------------------------------------------

struct GaugeDofOptions {
  double drift_threshold = 0.10;
  // Expurgation budget per grid point (FracLog only).
  std::int64_t sample_budget = 200000;
  std::uint64_t seed = 20260814;
};

// Per-symbol packing complexity of one grid point (exposed for testing).
double pack_complexity_per_symbol(const ChannelSpec& spec, double delta,
                                  double log2rho, const GaugeDofOptions& opt);

// Requires the grid to span at least 10 decades.
GaugeReading gauge_dof(const ChannelSpec& spec, double delta,
                       const std::vector<double>& log2rho_grid,
                       const GaugeDofOptions& opt = {});

// ---------------------------------------------------------------------------
// B-diversity: the frontier value Delta*(K_i; rho_i) at codebook size
// K_i = max(2, ceil(2^{r g(rho_i)})) with the class's rate gauge g, swept and
// normalized by the identified diversity gauge psi_r.
// ---------------------------------------------------------------------------

struct BDiversityOptions {
  double drift_threshold = 0.10;
  int trials = 8;              // random-codebook trials (matrix classes, r > 0)
  long long k_cap = 4096;      // refuse codebooks larger than this
  std::uint64_t seed = 20260814;
};

// Codebook size prescribed at one grid point by the class's conventions:
// FastFading/Multipath: ceil((log2 rho)^r); FixedH: ceil(rho^r);
// CoherentMIMO: ceil(rho^{rM}); BlockFading: ceil(rho^{r M (T-M)});
// all clamped below by 2.
long long b_diversity_codebook_size(const ChannelSpec& spec, double r,
                                    double log2rho);

// Frontier value Delta*(K; rho) for one grid point (lower bound for matrix
// classes with K > 2; exact closed forms for the scale family and for K = 2).
double b_diversity_frontier_value(const ChannelSpec& spec, double r,
                                  double log2rho, const BDiversityOptions& opt);

GaugeReading b_diversity(const ChannelSpec& spec, double r,
                         const std::vector<double>& log2rho_grid,
                         const BDiversityOptions& opt = {});

// ---------------------------------------------------------------------------
// Tradeoff classification: compares Delta*(2; rho) against a per-class
// capacity proxy along the grid.
// ---------------------------------------------------------------------------

// Capacity proxy C_proxy(rho): FixedH/CoherentMIMO: min(M,N) log2(1+rho);
// FastFading: log2 log2 rho; Multipath: log2 log2 rho_eff;
// BlockFading: (M(T-M)/T) log2 rho; FracLog: szego_integral at full power.
double capacity_proxy(const ChannelSpec& spec, double log2rho);

// Exact two-point frontier Delta*(2; rho):
// FastFading/Multipath: N log2 cosh(L/2), L = ln(1+rho_eff);
// FixedH: rho T sigma_max(H)^2 / ln 2 (antipodal pair along the top input
// singular direction); CoherentMIMO: N M log2(1 + rho T / M);
// BlockFading: N M log2(1 + q/4), q = rho^2/(1+rho) (orthogonal subspace
// pair; requires T >= 2M); FracLog: on/off pair at block length frac_T,
// per-symbol normalization.
double frontier_delta2(const ChannelSpec& spec, double log2rho,
                       int frac_T = 128);

struct TradeoffOptions {
  double divergence_factor = 4.0;  // last/mid ratio above this => cross-gauge
  double same_band = 0.25;         // |last/mid - 1| below this => same-gauge
  double drift_threshold = 0.10;
  int frac_T = 128;  // FracLog block length for the two-point frontier
};

struct TradeoffReport {
  std::string verdict;  // "same-gauge" | "cross-gauge" | "inconclusive"
  std::string rationale;
  std::vector<double> log2rho_grid;
  std::vector<double> delta2;   // Delta*(2; rho_i)
  std::vector<double> c_proxy;  // C_proxy(rho_i)
  std::vector<double> ratio;    // delta2 / c_proxy
  double ratio_mid = 0.0;
  double ratio_last = 0.0;
  GaugeReading rate_reading;       // gauge identified from the C_proxy sweep
  GaugeReading diversity_reading;  // gauge identified from the Delta*(2) sweep

  std::string to_json_text(int indent = -1) const;
};

TradeoffReport classify_tradeoff(const ChannelSpec& spec,
                                 const std::vector<double>& log2rho_grid,
                                 const TradeoffOptions& opt = {});

// ---------------------------------------------------------------------------
// DMT comparison line, in exact rational arithmetic.
// ---------------------------------------------------------------------------

struct Rational {
  long long num = 0;
  long long den = 1;  // always > 0, gcd(|num|, den) == 1

  static Rational of(long long num, long long den = 1);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const;
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  double to_double() const;
  std::string to_string() const;  // "p/q" (or "p" when q == 1)
};

struct DmtPoint {
  Rational r;
  Rational d_bh;    // NM - r(N+M)  (union-bound exponent line)
  Rational d_star;  // (M-r)(N-r)   (optimal tradeoff curve)
  Rational gap;     // d_star - d_bh == r^2 exactly
  bool vacuous = false;  // d_bh < 0, i.e. r > MN/(M+N)
};

// Requires 0 <= r <= min(M,N).
DmtPoint dmt_compare(int M, int N, const Rational& r);

}  // namespace gaugepack
