#include "gaugepack/channel.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

namespace gaugepack {

using nlohmann::json;

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::FixedH: return "FixedH";
    case ChannelKind::CoherentMIMO: return "CoherentMIMO";
    case ChannelKind::BlockFading: return "BlockFading";
    case ChannelKind::FastFading: return "FastFading";
    case ChannelKind::Multipath: return "Multipath";
    case ChannelKind::FracLog: return "FracLog";
  }
  throw invalid_argument_error("unknown channel kind");
}

ChannelKind channel_kind_from_string(const std::string& name) {
  if (name == "FixedH") return ChannelKind::FixedH;
  if (name == "CoherentMIMO") return ChannelKind::CoherentMIMO;
  if (name == "BlockFading") return ChannelKind::BlockFading;
  if (name == "FastFading") return ChannelKind::FastFading;
  if (name == "Multipath") return ChannelKind::Multipath;
  if (name == "FracLog") return ChannelKind::FracLog;
  throw invalid_argument_error("unknown channel kind '" + name +
                               "' (expected FixedH, CoherentMIMO, BlockFading, "
                               "FastFading, Multipath, or FracLog)");
}

void ChannelSpec::validate() const {
  check_arg(M >= 1, "M (transmit antennas) must be >= 1");
  check_arg(N >= 1, "N (receive antennas) must be >= 1");
  check_arg(T >= 1, "T (uses per codeword) must be >= 1");
  check_arg(std::isfinite(rho) && rho > 0.0, "rho (SNR) must be positive");
  switch (kind) {
    case ChannelKind::FixedH:
      check_arg(H.rows() == N && H.cols() == M,
                "FixedH requires an N x M channel matrix H");
      check_arg(H.allFinite(), "H entries must be finite");
      break;
    case ChannelKind::FastFading:
      check_arg(T == 1, "FastFading fixes T = 1");
      break;
    case ChannelKind::Multipath: {
      check_arg(T == 1, "Multipath reduces to FastFading and fixes T = 1");
      check_arg(taps.size() >= 1, "Multipath requires a tap power profile");
      check_arg((taps.array() >= 0.0).all(), "tap powers must be nonnegative");
      check_arg(taps.sum() > 0.0, "at least one tap power must be positive");
      break;
    }
    case ChannelKind::BlockFading:
      check_arg(T >= M, "BlockFading requires T >= M");
      break;
    case ChannelKind::CoherentMIMO:
      check_arg(T >= M, "CoherentMIMO constructions assume T >= M");
      break;
    case ChannelKind::FracLog:
      check_arg(beta > 0.0 && beta < 1.0, "FracLog requires beta in (0,1)");
      check_arg(std::isfinite(c_beta) && c_beta > 0.0,
                "FracLog requires a positive PSD scale c_beta");
      break;
  }
}

std::vector<std::string> ChannelSpec::warnings() const {
  std::vector<std::string> out;
  if (kind == ChannelKind::BlockFading && T < 2 * M)
    out.push_back(
        "BlockFading with M <= T < 2M: full-diversity orthogonal-subspace "
        "constructions are unavailable below the T = 2M phase transition");
  return out;
}

namespace {

json matrix_part(const Mat& m, bool real_part) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(real_part ? m(i, j).real() : m(i, j).imag());
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_parts(const json& re, const json& im) {
  if (!re.is_array() || re.empty() || !re[0].is_array())
    throw invalid_argument_error("H_re/H_im must be arrays of rows");
  const auto rows = re.size();
  const auto cols = re[0].size();
  if (im.size() != rows)
    throw invalid_argument_error("H_re and H_im must have the same shape");
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (re[i].size() != cols || im[i].size() != cols)
      throw invalid_argument_error("H_re/H_im rows must have equal lengths");
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          cplx(re[i][j].get<double>(), im[i][j].get<double>());
  }
  return m;
}

}  // namespace

std::string ChannelSpec::to_json_text(int indent) const {
  json j;
  j["kind"] = to_string(kind);
  j["M"] = M;
  j["N"] = N;
  j["T"] = T;
  j["rho"] = rho;
  if (kind == ChannelKind::FixedH) {
    j["H_re"] = matrix_part(H, true);
    j["H_im"] = matrix_part(H, false);
  }
  if (kind == ChannelKind::FracLog) {
    j["beta"] = beta;
    j["c_beta"] = c_beta;
  }
  if (kind == ChannelKind::Multipath) {
    json t = json::array();
    for (Eigen::Index i = 0; i < taps.size(); ++i) t.push_back(taps[i]);
    j["taps"] = t;
  }
  return j.dump(indent);
}

ChannelSpec ChannelSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw invalid_argument_error(std::string("invalid channel JSON: ") + e.what());
  }
  ChannelSpec spec;
  try {
    spec.kind = channel_kind_from_string(j.at("kind").get<std::string>());
    spec.M = j.value("M", 1);
    spec.N = j.value("N", 1);
    spec.T = j.value("T", 1);
    spec.rho = j.value("rho", 1.0);
    if (j.contains("H_re") || j.contains("H_im"))
      spec.H = matrix_from_parts(j.at("H_re"), j.at("H_im"));
    spec.beta = j.value("beta", 0.5);
    spec.c_beta = j.value("c_beta", 8.0);
    if (j.contains("taps")) {
      const auto& t = j.at("taps");
      spec.taps.resize(static_cast<Eigen::Index>(t.size()));
      for (std::size_t i = 0; i < t.size(); ++i)
        spec.taps[static_cast<Eigen::Index>(i)] = t[i].get<double>();
    }
  } catch (const json::exception& e) {
    throw invalid_argument_error(std::string("invalid channel JSON: ") + e.what());
  }
  spec.validate();
  return spec;
}

int matrix_rank_svd(const Mat& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  const double thresh = 1e-10 * sv[0];
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > thresh) ++rank;
  return rank;
}

int fixed_h_dof(const Mat& H, int T) {
  check_arg(T >= 1, "T must be >= 1");
  return T * matrix_rank_svd(H);
}

int fixed_h_diversity(const Mat& D, int N) {
  check_arg(N >= 1, "N must be >= 1");
  return N * matrix_rank_svd(D);
}

double fixed_h_bhatt(const Mat& H, const Mat& D, double rho) {
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  check_arg(H.cols() == D.rows(), "H and D dimensions must be conformable");
  return rho * (H * D).squaredNorm() / (4.0 * kLn2);
}

std::vector<double> bridge_terms_fixed(const Mat& H, const Mat& D, double rho) {
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  check_arg(H.cols() == D.rows(), "H and D dimensions must be conformable");
  check_arg(D.cwiseAbs().maxCoeff() > 0.0, "difference matrix must be nonzero");
  Eigen::JacobiSVD<Mat> svd(D, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-10 * sv[0];
  std::vector<double> terms;
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    if (sv[j] <= thresh) break;
    const Vec hu = H * svd.matrixU().col(j);
    for (Eigen::Index l = 0; l < hu.size(); ++l)
      terms.push_back(sv[j] * sv[j] * std::norm(hu[l]));
  }
  return terms;
}

std::vector<double> bridge_terms_rayleigh(const Mat& D, double rho, int n_rx) {
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  check_arg(D.cwiseAbs().maxCoeff() > 0.0, "difference matrix must be nonzero");
  Eigen::JacobiSVD<Mat> svd(D);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-10 * sv[0];
  std::vector<double> terms;
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    if (sv[j] <= thresh) break;
    terms.push_back(n_rx * log2p1(0.25 * rho * sv[j] * sv[j]));
  }
  return terms;
}

ScaleLaw fast_fading_law(cplx x, double rho) {
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  const double s = std::norm(x);
  check_arg(s <= 1.0 + 1e-12, "peak power constraint |x| <= 1 violated");
  return ScaleLaw(rho * std::min(s, 1.0) + 1.0);
}

double fast_fading_bhatt(cplx x1, cplx x2, double rho, int n_rx) {
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  const ScaleLaw a = fast_fading_law(x1, rho);
  const ScaleLaw b = fast_fading_law(x2, rho);
  return n_rx * bhatt_scale(a, b);
}

ChannelSpec multipath_effective_spec(const RVec& taps, double rho, int n_rx) {
  check_arg(taps.size() >= 1, "tap profile must be nonempty");
  check_arg((taps.array() >= 0.0).all(), "tap powers must be nonnegative");
  const double total = taps.sum();
  check_arg(total > 0.0, "all-zero tap profile");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  ChannelSpec spec;
  spec.kind = ChannelKind::FastFading;
  spec.M = 1;
  spec.N = n_rx;
  spec.T = 1;
  spec.rho = rho * total;
  spec.validate();
  return spec;
}

double block_fading_bhatt(const RVec& theta, double rho, int n_rx) {
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  // rho^2/(1+rho) without forming rho^2 (keeps rho up to ~1e300 exact).
  const double q = rho / (1.0 + 1.0 / rho);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    const double t = theta[k];
    check_arg(t >= -1e-12 && t <= std::numbers::pi / 2 + 1e-12,
              "principal angles must lie in [0, pi/2]");
    const double s = std::sin(t);
    sum += log2p1(0.25 * q * s * s);
  }
  return n_rx * sum;
}

RVec principal_angles(const Mat& X1, const Mat& X2) {
  check_arg(X1.rows() == X2.rows() && X1.cols() == X2.cols(),
            "inputs must have equal shapes");
  const auto M = X1.rows();
  const auto T = X1.cols();
  check_arg(M >= 1 && M <= T, "inputs must be M x T with M <= T");
  if (matrix_rank_svd(X1) < M || matrix_rank_svd(X2) < M)
    throw invalid_argument_error("principal_angles requires full row rank inputs");
  // Orthonormal bases of the row spaces (columns of X^H span them).
  Eigen::HouseholderQR<Mat> qr1(X1.adjoint());
  Eigen::HouseholderQR<Mat> qr2(X2.adjoint());
  const Mat Q1 = Mat(qr1.householderQ()).leftCols(M);
  const Mat Q2 = Mat(qr2.householderQ()).leftCols(M);
  Eigen::JacobiSVD<Mat> svd(Q1.adjoint() * Q2);
  RVec theta(M);
  for (Eigen::Index k = 0; k < M; ++k) {
    const double c = std::clamp(svd.singularValues()[k], 0.0, 1.0);
    theta[k] = std::acos(c);
  }
  std::sort(theta.begin(), theta.end());
  return theta;
}

double effective_rho(const ChannelSpec& spec) {
  if (spec.kind == ChannelKind::Multipath) return spec.rho * spec.taps.sum();
  return spec.rho;
}

}  // namespace gaugepack
