#include "gaugepack/divergence.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>

namespace gaugepack {

namespace {

// log2 det of a Hermitian PD matrix via Cholesky (stable symmetric
// factorization; matrices here are small, order <= a few hundred).
double log2det_pd(const Mat& m) {
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success)
    throw invalid_argument_error("covariance is not positive definite");
  double acc = 0.0;
  const auto& L = llt.matrixLLT();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    acc += std::log(L(i, i).real());
  return 2.0 * acc / kLn2;
}

}  // namespace

void require_valid_covariance(const Mat& cov) {
  check_arg(cov.rows() == cov.cols(), "covariance must be square");
  check_arg(cov.rows() >= 1, "covariance must have order >= 1");
  const double scale = cov.cwiseAbs().maxCoeff();
  check_arg(std::isfinite(scale), "covariance entries must be finite");
  const double herm_err = (cov - cov.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm_err <= 1e-12 * std::max(scale, 1e-300)))
    throw invalid_argument_error("covariance is not Hermitian within 1e-12 relative");
  Eigen::SelfAdjointEigenSolver<Mat> es(cov, Eigen::EigenvaluesOnly);
  const double emin = es.eigenvalues().minCoeff();
  const double emax = es.eigenvalues().maxCoeff();
  // Output-law covariances are legitimately ill conditioned (condition number
  // of order SNR), so only reject what double precision cannot factor.
  const double floor = emax * static_cast<double>(cov.rows()) * 1e-15;
  if (!(emax > 0.0 && emin > floor))
    throw invalid_argument_error(
        "covariance is numerically singular at double precision "
        "(min eigenvalue <= dim * 1e-15 * max)");
}

OutputLaw::OutputLaw(Vec mu, Mat sigma) : mean(std::move(mu)), cov(std::move(sigma)) {
  require_valid_covariance(cov);
  check_arg(mean.size() == cov.rows(),
            "mean dimension must equal covariance order");
}

double bhatt_same_covariance(const Vec& mean1, const Vec& mean2, const Mat& cov) {
  check_arg(mean1.size() == mean2.size(), "mean dimensions must agree");
  check_arg(mean1.size() == cov.rows(), "mean dimension must equal covariance order");
  require_valid_covariance(cov);
  Eigen::LLT<Mat> llt(cov);
  if (llt.info() != Eigen::Success)
    throw invalid_argument_error("covariance is not positive definite");
  const Vec d = mean1 - mean2;
  const Vec w = llt.solve(d);
  const double quad = d.dot(w).real();  // d^H Sigma^{-1} d, real for Hermitian PD
  return quad / (4.0 * kLn2);
}

double bhatt_same_mean(const Mat& cov1, const Mat& cov2) {
  check_arg(cov1.rows() == cov2.rows() && cov1.cols() == cov2.cols(),
            "covariances must have the same order");
  require_valid_covariance(cov1);
  require_valid_covariance(cov2);
  const Mat mid = 0.5 * (cov1 + cov2);
  return log2det_pd(mid) - 0.5 * log2det_pd(cov1) - 0.5 * log2det_pd(cov2);
}

double bhatt_gaussian(const OutputLaw& p, const OutputLaw& q) {
  check_arg(p.dim() == q.dim(), "law dimensions must agree");
  const Mat mid = 0.5 * (p.cov + q.cov);
  const double dets =
      log2det_pd(mid) - 0.5 * log2det_pd(p.cov) - 0.5 * log2det_pd(q.cov);
  Eigen::LLT<Mat> llt(mid);
  if (llt.info() != Eigen::Success)
    throw invalid_argument_error("covariance midpoint is not positive definite");
  const Vec d = p.mean - q.mean;
  const double quad = d.dot(llt.solve(d)).real();
  return quad / (4.0 * kLn2) + dets;
}

double chernoff_scale_du(double du, double s) {
  check_arg(s > 0.0 && s < 1.0, "Chernoff parameter s must lie in (0,1)");
  if (s == 0.5) return bhatt_scale_du(du);  // shared code path at s = 1/2
  // log-sum-exp of a = ln s - (1-s) du and b = ln(1-s) + s du.
  const double a = std::log(s) - (1.0 - s) * du;
  const double b = std::log1p(-s) + s * du;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return (hi + std::log1p(std::exp(lo - hi))) / kLn2;
}

double chernoff_scale(double v1, double v2, double s) {
  check_arg(std::isfinite(v1) && v1 > 0.0 && std::isfinite(v2) && v2 > 0.0,
            "chernoff_scale requires positive variances");
  return chernoff_scale_du(std::log(v1) - std::log(v2), s);
}

double chernoff_scale_sup_du(double du) {
  // C(s) is concave in s on (0,1); golden-section search.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = 1e-12, b = 1.0 - 1e-12;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = chernoff_scale_du(du, x1), f2 = chernoff_scale_du(du, x2);
  for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = chernoff_scale_du(du, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = chernoff_scale_du(du, x1);
    }
  }
  return std::max(f1, f2);
}

RayleighAvg avg_bhatt_rayleigh(const RVec& eigs, int n_rx, double rho) {
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  double distance = 0.0;
  for (Eigen::Index j = 0; j < eigs.size(); ++j) {
    double lam = eigs[j];
    if (lam < 0.0) {
      // Gram eigenvalues are nonnegative up to roundoff; reject real negatives.
      check_arg(lam > -1e-10 * std::max(1.0, eigs.cwiseAbs().maxCoeff()),
                "Gram eigenvalues must be nonnegative");
      lam = 0.0;
    }
    distance += log2p1(0.25 * rho * lam);
  }
  distance *= n_rx;
  return RayleighAvg{std::exp2(-distance), distance};
}

}  // namespace gaugepack
