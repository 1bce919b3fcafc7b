#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaugepack/channel.hpp"
#include "gaugepack/errors.hpp"
#include "gaugepack/packing.hpp"

namespace gaugepack {

// Monte Carlo maximum-likelihood decoding over the channel models, verifying
// the union bound P_e <= (K-1) 2^{-n Delta_min}, the Rayleigh-averaged
// pairwise coefficient, and exponent scaling in the receive antenna count.
//
// Determinism contract: per-trial randomness comes from counter-based
// substreams keyed by (seed, trial index) and error counts reduce by integer
// summation over fixed blocks, so identical seeds give bitwise-identical
// results for any worker count.

struct SimConfig {
  ChannelSpec spec;
  Codebook codebook;
  long long n = 1;          // independent channel uses per message
  long long trials = 1000;  // requested trials (may auto-escalate, cap 1e8)
  std::uint64_t seed = 1;
  double confidence = 3.0;  // z-multiplier in the pass criterion
};

struct SimResult {
  double pe_hat = 0.0;
  double std_error = 0.0;  // sqrt(pe(1-pe)/trials)
  long long trials = 0;    // trials actually run (after escalation)
  double bound = 0.0;      // (K-1) 2^{-n Delta_min}
  double delta_min = 0.0;  // exact min pairwise distance of the codebook
  long long n = 0;
  long long k = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  bool pass = false;  // pe_hat - confidence*std_error <= bound
  // False when even the escalated budget cannot resolve the bound
  // (bound < 100/trials at the 1e8 cap); note explains.
  bool resolvable = true;
  std::string note;

  // {"pe_hat","stderr","trials","bound","delta_min","n","K","rho","seed",
  //  "pass"} (+ "resolvable"/"note" only when unresolvable).
  std::string to_json_text(int indent = -1) const;
};

// ML tie-breaking is deterministic toward the lowest codeword index.
// Supported kinds: FastFading, FixedH, CoherentMIMO (receiver knows the
// per-use H), BlockFading (covariance likelihoods). Multipath simulates via
// its FastFading reduction at effective SNR; FracLog is unsupported.
// Requires trials >= 1000.
SimResult simulate_pe(const SimConfig& config);

// Index of the ML decision for a scale-family observation with total received
// energy `energy` over n_rx components, given candidate variances. Decisions
// depend on the data only through the energy; ties go to the lowest index.
int ml_decode_scale(const std::vector<double>& variances, double energy,
                    int n_rx);

struct AvgBhattCheck {
  double mc_estimate = 0.0;
  double closed_form = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  long long trials = 0;
};

// Monte Carlo average of 2^{-rho ||H D||_F^2 / (4 ln 2)} over i.i.d. CN(0,1)
// H (n_rx x rows(D)) against the closed form prod_j (1 + rho*eig_j/4)^{-n_rx}.
// Requires trials >= 1e4.
AvgBhattCheck verify_avg_bhatt(const Mat& D, int n_rx, double rho,
                               long long trials, std::uint64_t seed);

struct ExponentPoint {
  long long n = 0;
  double pe_hat = 0.0;
  double std_error = 0.0;
  bool used = false;  // inside the estimable band [10/trials, 0.3]
};

struct ExponentFit {
  double slope = 0.0;         // per-use exponent: d(-log2 pe)/dn
  double slope_std_error = 0.0;
  double intercept = 0.0;
  double delta_min = 0.0;
  double sanity_floor = 0.0;  // delta_min - log2(K-1)/n_min (union bound)
  bool floor_ok = false;      // slope >= sanity_floor within 2 slope stderrs
  std::vector<ExponentPoint> points;

  std::string to_csv_text() const;  // header n,pe_hat,stderr then one row per n
};

// Fits the least-squares slope of -log2 pe_hat against n over n_grid,
// dropping points whose pe_hat leaves [10/trials, 0.3]. Requires >= 3
// surviving points. `rho` overrides spec.rho.
ExponentFit exponent_estimate(const ChannelSpec& spec, const Codebook& codebook,
                              double rho, const std::vector<long long>& n_grid,
                              long long trials, std::uint64_t seed);

}  // namespace gaugepack
