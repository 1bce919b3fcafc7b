#pragma once

// Closed-form divergences between circularly symmetric complex Gaussian
// output laws. All divergence values are in bits (base-2 logs); natural logs
// appear only inside closed forms.

#include <cmath>
#include <utility>

#include "gaugepack/errors.hpp"
#include "gaugepack/types.hpp"

namespace gaugepack {

inline constexpr double kLn2 = 0.693147180559945309417232121458;

// log2(cosh(x)), overflow-safe for |x| up to ~1e308:
//   log2 cosh(x) = (|x| + ln(1 + e^{-2|x|}) - ln 2) / ln 2.
inline double log2cosh(double x) noexcept {
  const double a = std::fabs(x);
  return (a + std::log1p(std::exp(-2.0 * a)) - kLn2) / kLn2;
}

// log2(1 + x) without precision loss for small x.
inline double log2p1(double x) { return std::log1p(x) / kLn2; }

// One-parameter scale family: the law CN(0, v) with v = rho*s + 1, s = |x|^2.
// u = ln v is the log-variance coordinate; packing lives on u in [0, L],
// L = ln(1 + rho).
struct ScaleLaw {
  double v;

  explicit ScaleLaw(double variance) : v(variance) {
    check_arg(std::isfinite(v) && v > 0.0, "scale law requires variance > 0");
  }
  double u() const noexcept { return std::log(v); }
};

// Admissible log-variance range of the scale family at SNR rho.
inline double log_variance_range(double rho) {
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  return std::log1p(rho);
}

// Same, but from x = log2(rho); exact for arbitrarily large sweeps since only
// L = ln(1 + rho) = x ln 2 + ln(1 + 2^{-x}) is ever needed downstream.
inline double log_variance_range_log2rho(double log2rho) {
  check_arg(std::isfinite(log2rho), "log2(rho) must be finite");
  return log2rho * kLn2 + std::log1p(std::exp2(-log2rho));
}

// A circularly symmetric complex Gaussian law CN(mean, cov). Validates the
// covariance on construction: Hermitian within 1e-12 relative, eigenvalues
// positive with min > 1e-12 * max.
struct OutputLaw {
  Vec mean;
  Mat cov;

  OutputLaw(Vec mu, Mat sigma);
  int dim() const noexcept { return static_cast<int>(mean.size()); }
};

// Validates that `cov` is Hermitian PD under the library's tolerance policy;
// throws invalid_argument_error otherwise.
void require_valid_covariance(const Mat& cov);

// d_B for equal covariance, different means:
//   (mu1 - mu2)^H Sigma^{-1} (mu1 - mu2) / (4 ln 2).
double bhatt_same_covariance(const Vec& mean1, const Vec& mean2, const Mat& cov);

// d_B for zero (equal) means, different covariances:
//   log2 [ det((S1 + S2)/2) / sqrt(det S1 * det S2) ].
double bhatt_same_mean(const Mat& cov1, const Mat& cov2);

// General complex Gaussian Bhattacharyya distance (both terms).
double bhatt_gaussian(const OutputLaw& p, const OutputLaw& q);

// Scale-family Bhattacharyya distance as a function of du = u1 - u2.
inline double bhatt_scale_du(double du) noexcept { return log2cosh(0.5 * du); }

// d_B(CN(0,v1), CN(0,v2)) = log2 cosh((ln v1 - ln v2)/2).
inline double bhatt_scale(double v1, double v2) {
  check_arg(std::isfinite(v1) && v1 > 0.0 && std::isfinite(v2) && v2 > 0.0,
            "bhatt_scale requires positive variances");
  return bhatt_scale_du(std::log(v1) - std::log(v2));
}
inline double bhatt_scale(const ScaleLaw& a, const ScaleLaw& b) {
  return bhatt_scale_du(a.u() - b.u());
}

// KL(CN(0,v1) || CN(0,v2)) in bits, as a function of du = u1 - u2:
//   (v1/v2 - 1 - ln(v1/v2)) / ln 2 = (e^{du} - 1 - du) / ln 2.
inline double kl_scale_du(double du) noexcept {
  return (std::expm1(du) - du) / kLn2;
}
inline double kl_scale(double v1, double v2) {
  check_arg(std::isfinite(v1) && v1 > 0.0 && std::isfinite(v2) && v2 > 0.0,
            "kl_scale requires positive variances");
  return kl_scale_du(std::log(v1) - std::log(v2));
}

// Squared Hellinger distance from a Bhattacharyya distance: 1 - 2^{-dB}.
inline double hellinger_from_bhatt(double dB) {
  check_arg(dB >= 0.0, "Bhattacharyya distance must be nonnegative");
  return -std::expm1(-dB * kLn2);
}

// Chernoff divergence -log2 E_q[(p/q)^s] for the scale family, as a function
// of du = u1 - u2:
//   C(s) = log2( s e^{-(1-s) du} + (1-s) e^{s du} ),
// evaluated by log-sum-exp so it is finite for |du| up to ~1e300.
// At s = 1/2 this reduces to bhatt_scale (shared code path).
double chernoff_scale_du(double du, double s);
double chernoff_scale(double v1, double v2, double s);

// sup over s in (0,1) of chernoff_scale (ternary search on a concave curve).
double chernoff_scale_sup_du(double du);

// Averaged pairwise quantities over i.i.d. Rayleigh fading H (entries
// CN(0,1), N receive antennas), for a difference matrix with Gram eigenvalues
// eigs = eig(D D^H):
//   coefficient  E[B]  = prod_j (1 + rho*eig_j/4)^{-N}
//   distance     d̄_B  = N * sum_j log2(1 + rho*eig_j/4)
// The pair is computed consistently: coefficient = 2^{-distance}.
struct RayleighAvg {
  double coefficient;
  double distance;
};
RayleighAvg avg_bhatt_rayleigh(const RVec& eigs, int n_rx, double rho);

}  // namespace gaugepack
