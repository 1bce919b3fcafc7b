#pragma once

// Packing numbers, packing complexity, and the diversity frontier:
// exact for the one-parameter scale family, construction + converse bounds
// for the MIMO and Grassmannian classes, brute force as a small-instance
// oracle, plus cutoff-rate and KL-covering converse evaluators.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gaugepack/channel.hpp"
#include "gaugepack/types.hpp"

namespace gaugepack {

// Divergence used as the packing threshold.
enum class DivKind { Bhatt, Hellinger, KL };
std::string to_string(DivKind div);
DivKind div_kind_from_string(const std::string& name);

enum class PackingMode { ByThreshold, ByCount };

// An ordered list of channel inputs. The representation depends on the
// channel class: complex scalars for FastFading/Multipath, M x T matrices for
// FixedH/CoherentMIMO/BlockFading, on-level amplitudes in [0,1] for FracLog.
struct Codebook {
  ChannelKind kind = ChannelKind::FastFading;
  std::vector<cplx> scalars;
  std::vector<Mat> points;
  std::vector<double> levels;

  int size() const;
};

// Pairwise output-law Bhattacharyya distance matrix for a codebook under the
// given channel spec (symmetric, zero diagonal).
RMat pairwise_distances(const ChannelSpec& spec, const Codebook& cb);

// Minimum off-diagonal pairwise distance (+infinity for size < 2).
double codebook_min_distance(const ChannelSpec& spec, const Codebook& cb);

struct PackingResult {
  PackingMode mode = PackingMode::ByCount;
  double delta = 0.0;    // threshold (ByThreshold mode)
  long long k = 0;       // ByCount: requested K; ByThreshold: achieved N_pack
  double rho = 0.0;
  double value_lower = 0.0;  // N_pack (ByThreshold) or Delta* lower (ByCount)
  double value_upper = 0.0;
  std::string method_lower;
  std::string method_upper;
  double k_pack = 0.0;   // log2(N_pack), ByThreshold mode
  bool no_pair = false;  // tagged K = 1 result: the frontier has no pair
  Codebook certificate;
  std::string diagnostics_json;  // op-specific extras (JSON object text)

  std::string to_json_text(int indent = -1) const;
};

// Scale-family level spacing c(delta): the log-variance gap at which the
// N-antenna divergence between adjacent levels equals delta.
//   Bhatt:     2 acosh(2^{delta/N})
//   Hellinger: 2 acosh((1 - delta)^{-1/N})           (delta in (0,1))
//   KL:        solve N (w - 1 + e^{-w}) / ln 2 = delta  (worst direction)
double scale_spacing(DivKind div, double delta, int n_rx);

// Exact packing number of the scale family at threshold delta:
//   N_pack = 1 + floor(L / c(delta)),  L = ln(1 + rho),
// with an equally spaced u-level certificate; converse is the pigeonhole
// count, so lower = upper exactly. N_pack = 1 when c(delta) > L.
PackingResult scale_pack_count(double delta, double rho, int n_rx,
                               DivKind div = DivKind::Bhatt);
PackingResult scale_pack_count_log2rho(double delta, double log2rho, int n_rx,
                                       DivKind div = DivKind::Bhatt);

// Exact diversity frontier of the scale family:
//   Delta*(K; rho) = N log2 cosh(L / (2(K-1))),
// achieved by K equally spaced u-levels (equal spacing is optimal in one
// dimension; converse by pigeonhole). K = 1 returns a tagged no-pair result.
PackingResult scale_frontier(long long K, double rho, int n_rx);
PackingResult scale_frontier_log2rho(long long K, double log2rho, int n_rx);

// Ball-packing converse for coherent MIMO at T = M:
//   N M log2(1 + rho K^{-1/M^2}).
// Asymptotically N(M - r) log2 rho + O(1) at K = rho^{rM}; at small K the
// enlarged-ball variant below is the rigorous envelope.
double mimo_frontier_upper(int M, int N, double rho, long long K);

// Rigorous enlarged-ball + eigenvalue-concavity converse for any T >= M:
//   N M log2(1 + rho (T/M) / (K^{1/(2MT)} - 1)^2).
double mimo_frontier_upper_enlarged(int M, int N, int T, double rho, long long K);

// Best-of-trials random Gaussian codebook lower bound on the coherent-MIMO
// frontier (entries CN(0, 1/M), projected into the Frobenius power ball),
// scored by the averaged-Rayleigh pairwise distance; improved by a
// farthest-point pass over the pooled candidates. Upper bound: enlarged-ball
// converse.
PackingResult mimo_frontier_lower(int M, int N, int T, double rho, long long K,
                                  int trials, std::uint64_t seed);

// Random-subspace lower bound plus ball-volume/concavity upper bound for the
// noncoherent block-fading (Grassmannian) frontier. Requires T >= 2M.
PackingResult grassmann_frontier_bounds(int M, int N, int T, double rho,
                                        long long K, int trials,
                                        std::uint64_t seed);

// Exact max-min over all K-subsets of a distance matrix (n <= 24, K <= n).
struct MaxminResult {
  double value = 0.0;
  std::vector<int> indices;
};
MaxminResult bruteforce_frontier(const RMat& dist, int K);
PackingResult bruteforce_frontier(const ChannelSpec& spec, const Codebook& cb,
                                  int K);

// Deterministic farthest-point (Gonzalez) max-min heuristic on a distance
// matrix; the seed picks the starting point, ties break toward lower index.
MaxminResult greedy_maxmin(const RMat& dist, int K, std::uint64_t seed);
Codebook greedy_maxmin(const ChannelSpec& spec, const Codebook& candidates,
                       int K, std::uint64_t seed);

// Codebook JSON round-trip: {"kind": ..., "scalars": [[re,im],...]} /
// {"points": [{"re": [[..]], "im": [[..]]}, ...]} / {"levels": [..]}.
std::string codebook_to_json_text(const Codebook& cb, int indent = -1);
Codebook codebook_from_json_text(const std::string& text);

// Draws K inputs from the class's random input ensemble: uniform log-variance
// levels for the scale family (and FracLog on-levels), power-ball Gaussian
// matrices for FixedH/CoherentMIMO, Haar-random subspaces for BlockFading.
Codebook random_input_codebook(const ChannelSpec& spec, long long K,
                               std::uint64_t seed, std::uint64_t stream = 0);

// Random coding + expurgation lower bound on the packing count at threshold
// delta (per-symbol bits for FracLog): draws K inputs, removes one endpoint
// of every pair closer than delta, certifies the survivor set, and doubles K
// while the pairwise-evaluation budget lasts. Returns the best certified
// codebook (ByThreshold result; upper bound tagged "none").
PackingResult expurgated_pack_lower(const ChannelSpec& spec, double delta,
                                    double R0_estimate,
                                    std::int64_t sample_budget,
                                    std::uint64_t seed);

// Cutoff rate R0 = -log2 sum_{ij} w_i w_j 2^{-d_ij} of a weighted codebook.
double cutoff_rate(const RMat& dist, const RVec& weights);
double cutoff_rate(const ChannelSpec& spec, const Codebook& cb,
                   const RVec& weights);

// Fano-style KL-covering converse: the largest log2 K consistent with an
// n-point KL cover of radius delta at error tolerance eta:
//   (log2 n + delta + 2 h2(eta)) / (1 - eta).
double kl_converse_bound(double n_kl_cover, double delta, double eta);

// Size of the explicit 1-D interval KL cover of the scale family at radius
// delta (bits, N antennas): intervals [c - w_minus, c + w_plus] with both
// one-sided KL divergences equal to delta.
long long scale_kl_cover_count(double delta, double rho, int n_rx);

}  // namespace gaugepack
