#pragma once

// The six channel classes and their model-specific output-law constructions,
// pairwise distances, and rank/DOF quantities.

#include <string>
#include <vector>

#include "gaugepack/divergence.hpp"
#include "gaugepack/errors.hpp"
#include "gaugepack/types.hpp"

namespace gaugepack {

enum class ChannelKind {
  FixedH,        // known deterministic H, coherent detection
  CoherentMIMO,  // i.i.d. Rayleigh H known at the receiver, fresh per use
  BlockFading,   // noncoherent, H constant over T uses
  FastFading,    // noncoherent scalar, fresh fading every symbol (T = 1)
  Multipath,     // FastFading with an L-tap power profile (effective SNR)
  FracLog,       // stationary Gaussian fading with power-law spectral density
};

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& name);

// Tagged channel description. Fields are meaningful per kind; validate()
// enforces the per-kind rules and throws invalid_argument_error on violation.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::FastFading;
  int M = 1;          // transmit antennas
  int N = 1;          // receive antennas
  int T = 1;          // channel uses per codeword (coherence time)
  double rho = 1.0;   // SNR
  Mat H;              // FixedH only: N x M channel matrix
  double beta = 0.5;  // FracLog only: spectral exponent parameter, in (0,1)
  double c_beta = 8.0;  // FracLog only: PSD scale constant
  RVec taps;          // Multipath only: tap powers sigma_l^2

  void validate() const;
  // Non-fatal model caveats (e.g. BlockFading with M <= T < 2M); empty if none.
  std::vector<std::string> warnings() const;

  std::string to_json_text(int indent = -1) const;
  static ChannelSpec from_json_text(const std::string& text);
};

// Numerical rank: count of singular values > 1e-10 * sigma_max (0 for the
// zero matrix).
int matrix_rank_svd(const Mat& m);

// T * rank(H): dimension of the noiseless output image over T uses.
int fixed_h_dof(const Mat& H, int T);

// N * rank(D): the rank-criterion diversity order of a difference matrix.
int fixed_h_diversity(const Mat& D, int N);

// rho * ||H D||_F^2 / (4 ln 2).
double fixed_h_bhatt(const Mat& H, const Mat& D, double rho);

// Known-H bridge decomposition: N*rank(D) nonnegative terms
// sigma_j^2 |row_l(H) u_j|^2 (u_j the left singular vectors of D) summing to
// ||H D||_F^2 = fixed_h_bhatt * (4 ln 2) / rho.
std::vector<double> bridge_terms_fixed(const Mat& H, const Mat& D, double rho);

// Rayleigh bridge decomposition: rank(D) terms N*log2(1 + rho*sigma_j^2/4)
// summing to the avg_bhatt_rayleigh distance.
std::vector<double> bridge_terms_rayleigh(const Mat& D, double rho, int n_rx);

// Noncoherent fast fading: output per receive antenna is CN(0, rho|x|^2 + 1).
// Enforces the peak power constraint |x| <= 1.
ScaleLaw fast_fading_law(cplx x, double rho);

// N-antenna fast-fading distance N * bhatt_scale(law(x1), law(x2)).
double fast_fading_bhatt(cplx x1, cplx x2, double rho, int n_rx);

// Multipath reduces to FastFading with effective SNR rho * sum(taps).
ChannelSpec multipath_effective_spec(const RVec& taps, double rho, int n_rx);

// Noncoherent block-fading pair distance from principal angles:
//   N * sum_k log2[(1 + rho(1+cos t)/2)(1 + rho(1-cos t)/2) / (1+rho)]
//     = N * sum_k log2(1 + rho^2 sin^2 t / (4(1+rho))).
double block_fading_bhatt(const RVec& theta, double rho, int n_rx);

// Principal angles (ascending, in [0, pi/2]) between the row spaces of two
// full-row-rank M x T inputs; invariant to invertible row operations.
RVec principal_angles(const Mat& X1, const Mat& X2);

// Effective SNR used by distance computations (Multipath folds its taps into
// rho; identity for every other kind).
double effective_rho(const ChannelSpec& spec);

}  // namespace gaugepack
