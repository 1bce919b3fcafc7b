#pragma once

// Power-law spectral density machinery for the FracLog channel class:
// the per-symbol Szego integral and the Toeplitz-covariance pair distance.

#include "gaugepack/errors.hpp"
#include "gaugepack/types.hpp"

namespace gaugepack {

// (1/2pi) Int_{-pi}^{pi} log2(1 + rho * P * c_beta * |lambda|^{-2+2/beta}) dlambda,
// adaptive quadrature to relative tolerance 1e-8 with a log substitution near
// lambda = 0. Monotone increasing in rho.
double szego_integral(double beta, double c_beta, double P, double rho);

// Autocovariance coefficients r_0..r_{n_lags-1} of the PSD
// f(lambda) = c_beta |lambda|^{-2+2/beta}, by midpoint sampling of the PSD at
// 2^16 points (numeric Fourier coefficients).
RVec psd_autocovariance(double beta, double c_beta, int n_lags);

// Eigenvalues of the T x T symmetric Toeplitz matrix built from the given
// autocovariance (ascending). Mild negative eigenvalues from discretization
// are floored at 1e-12; a genuinely indefinite matrix is an error.
RVec toeplitz_eigenvalues(const RVec& autocov, int T);

// Per-symbol on-off pair distance
//   (N/T) * d_B( CN(0, rho*P*R_T + I), CN(0, I) )
// with R_T the Toeplitz autocovariance matrix of the PSD. Computed from the
// Toeplitz eigenvalues mu_j as
//   (N/T) * sum_j [ log2(1 + rho*P*mu_j/2) - (1/2) log2(1 + rho*P*mu_j) ].
double frac_log_pair_distance(double P, double beta, double c_beta, double rho,
                              int n_rx, int T);

// Same, reusing precomputed Toeplitz eigenvalues (rho sweeps share them).
double frac_log_pair_distance_from_eigs(const RVec& eigs, double P, double rho,
                                        int n_rx, int T);

// Pair distance between two on-levels with powers P1, P2 sharing the same
// Toeplitz spectrum (laws CN(0, rho*Pi*R_T + I) commute):
//   (N/T) * sum_j log2( AM_j / GM_j ),  AM/GM of (1 + rho*P1*mu_j, 1 + rho*P2*mu_j).
double frac_log_level_distance_from_eigs(const RVec& eigs, double P1, double P2,
                                         double rho, int n_rx, int T);

}  // namespace gaugepack
