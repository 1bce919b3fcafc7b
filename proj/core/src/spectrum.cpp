#include "gaugepack/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaugepack/divergence.hpp"
#include "gaugepack/quadrature.hpp"

namespace gaugepack {

namespace {

constexpr double kPi = std::numbers::pi;

void check_frac_params(double beta, double c_beta) {
  check_arg(beta > 0.0 && beta < 1.0, "beta must lie in (0,1)");
  check_arg(std::isfinite(c_beta) && c_beta > 0.0, "c_beta must be positive");
}

}  // namespace

double szego_integral(double beta, double c_beta, double P, double rho) {
  check_frac_params(beta, c_beta);
  check_arg(std::isfinite(P) && P > 0.0, "power must be positive");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  const double e = 2.0 / beta - 2.0;  // PSD exponent, positive for beta < 1
  const double A = rho * P * c_beta;
  auto g = [A, e](double lam) { return log2p1(A * std::pow(lam, e)); };

  // Even integrand: (1/pi) Int_0^pi. Split at `a`; below it substitute
  // lambda = e^{-s} so the slow logarithmic ramp toward lambda -> 0 becomes a
  // gently decaying integrand on a short s-range.
  const double a = 1e-3;
  QuadratureOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-13;
  const double main_part = integrate(g, a, kPi, opt);

  // Pick s_max so A * lambda^e < e^{-60} beyond it: the remaining tail of the
  // integral is below lambda_min * e^{-60}, far under tolerance.
  const double s_lo = std::log(1.0 / a);
  const double s_max = std::max(s_lo + 5.0, (std::log(A) + 60.0) / e);
  auto g_log = [&g](double s) {
    const double lam = std::exp(-s);
    return g(lam) * lam;
  };
  QuadratureOptions opt2 = opt;
  opt2.abs_tol = 1e-14;
  const double near_zero = integrate(g_log, s_lo, std::min(s_max, 745.0), opt2);

  return (main_part + near_zero) / kPi;
}

RVec psd_autocovariance(double beta, double c_beta, int n_lags) {
  check_frac_params(beta, c_beta);
  check_arg(n_lags >= 1, "lag count must be >= 1");
  const double e = 2.0 / beta - 2.0;
  constexpr int kSamples = 1 << 16;
  // Midpoint samples on (0, pi); the PSD is even, so
  // r_k = (1/pi) Int_0^pi f(lambda) cos(k lambda) dlambda.
  const double h = kPi / kSamples;
  RVec f(kSamples), lam(kSamples);
  for (int m = 0; m < kSamples; ++m) {
    lam[m] = (m + 0.5) * h;
    f[m] = c_beta * std::pow(lam[m], e);
  }
  RVec r(n_lags);
  for (int k = 0; k < n_lags; ++k) {
    double acc = 0.0;
    for (int m = 0; m < kSamples; ++m) acc += f[m] * std::cos(k * lam[m]);
    r[k] = acc * h / kPi;
  }
  return r;
}

RVec toeplitz_eigenvalues(const RVec& autocov, int T) {
  check_arg(T >= 1, "Toeplitz order must be >= 1");
  check_arg(autocov.size() >= T, "need at least T autocovariance lags");
  RMat R(T, T);
  for (int i = 0; i < T; ++i)
    for (int j = 0; j < T; ++j) R(i, j) = autocov[std::abs(i - j)];
  Eigen::SelfAdjointEigenSolver<RMat> es(R, Eigen::EigenvaluesOnly);
  RVec mu = es.eigenvalues();
  const double top = mu.cwiseAbs().maxCoeff();
  if (mu.minCoeff() < -1e-6 * top)
    throw numeric_error(
        "Toeplitz construction failure: autocovariance matrix is indefinite "
        "beyond discretization tolerance");
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    mu[i] = std::max(mu[i], 1e-12);  // repair mild discretization negatives
  return mu;
}

double frac_log_pair_distance_from_eigs(const RVec& eigs, double P, double rho,
                                        int n_rx, int T) {
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  check_arg(T >= 8, "block length T must be >= 8");
  check_arg(eigs.size() == T, "need exactly T Toeplitz eigenvalues");
  check_arg(std::isfinite(P) && P > 0.0, "power must be positive");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < eigs.size(); ++j) {
    const double x = rho * P * eigs[j];
    sum += log2p1(0.5 * x) - 0.5 * log2p1(x);
  }
  return static_cast<double>(n_rx) * sum / T;
}

double frac_log_level_distance_from_eigs(const RVec& eigs, double P1, double P2,
                                         double rho, int n_rx, int T) {
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  check_arg(T >= 8, "block length T must be >= 8");
  check_arg(eigs.size() == T, "need exactly T Toeplitz eigenvalues");
  check_arg(P1 >= 0.0 && P2 >= 0.0, "level powers must be nonnegative");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  double sum = 0.0;
  for (Eigen::Index j = 0; j < eigs.size(); ++j) {
    const double v1 = 1.0 + rho * P1 * eigs[j];
    const double v2 = 1.0 + rho * P2 * eigs[j];
    // log2(AM/GM) = log2((v1+v2)/2) - (log2 v1 + log2 v2)/2, in scale form:
    sum += log2cosh(0.5 * (std::log(v1) - std::log(v2)));
  }
  return static_cast<double>(n_rx) * sum / T;
}

double frac_log_pair_distance(double P, double beta, double c_beta, double rho,
                              int n_rx, int T) {
  const RVec r = psd_autocovariance(beta, c_beta, T);
  const RVec mu = toeplitz_eigenvalues(r, T);
  return frac_log_pair_distance_from_eigs(mu, P, rho, n_rx, T);
}

}  // namespace gaugepack
