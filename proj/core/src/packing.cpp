#include "gaugepack/packing.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <json.hpp>

#include "gaugepack/rng.hpp"
#include "gaugepack/spectrum.hpp"

namespace gaugepack {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// acosh(1 + x) for x >= 0 without cancellation at small x.
double acosh1p(double x) {
  check_arg(x >= 0.0, "acosh1p requires a nonnegative argument");
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

json codebook_to_json(const Codebook& cb) {
  json j;
  j["kind"] = to_string(cb.kind);
  if (!cb.scalars.empty()) {
    json pts = json::array();
    for (const cplx& x : cb.scalars) pts.push_back({x.real(), x.imag()});
    j["scalars"] = pts;
  }
  if (!cb.levels.empty()) j["levels"] = cb.levels;
  if (!cb.points.empty()) {
    json pts = json::array();
    for (const Mat& m : cb.points) {
      json re = json::array(), im = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json re_row = json::array(), im_row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          re_row.push_back(m(r, c).real());
          im_row.push_back(m(r, c).imag());
        }
        re.push_back(re_row);
        im.push_back(im_row);
      }
      pts.push_back({{"re", re}, {"im", im}});
    }
    j["points"] = pts;
  }
  return j;
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return json(v);
  return json();
}

// Enforces the sandwich discipline lower <= upper (hard error on violation).
void check_sandwich(const PackingResult& r) {
  if (r.no_pair || !std::isfinite(r.value_upper)) return;
  if (r.value_lower > r.value_upper * (1.0 + 1e-12) + 1e-12)
    throw numeric_error("packing sandwich violated: lower bound " +
                        std::to_string(r.value_lower) + " exceeds upper bound " +
                        std::to_string(r.value_upper));
}

// Recomputes the certificate's min pairwise distance and checks it against
// the reported value within 1e-10 relative (certificates are self-verifying).
void check_certificate(const ChannelSpec& spec, const PackingResult& r,
                       double expected_min) {
  if (r.certificate.size() < 2) return;
  const double got = codebook_min_distance(spec, r.certificate);
  const double tol = 1e-10 * std::max(1.0, std::fabs(expected_min));
  if (std::fabs(got - expected_min) > tol)
    throw numeric_error(
        "certificate self-verification failed: recomputed min distance " +
        std::to_string(got) + " vs reported " + std::to_string(expected_min));
}

}  // namespace

std::string to_string(DivKind div) {
  switch (div) {
    case DivKind::Bhatt: return "bhatt";
    case DivKind::Hellinger: return "hellinger";
    case DivKind::KL: return "kl";
  }
  throw invalid_argument_error("unknown divergence kind");
}

DivKind div_kind_from_string(const std::string& name) {
  if (name == "bhatt") return DivKind::Bhatt;
  if (name == "hellinger") return DivKind::Hellinger;
  if (name == "kl") return DivKind::KL;
  throw invalid_argument_error("unknown divergence kind '" + name +
                               "' (expected bhatt, hellinger, or kl)");
}

int Codebook::size() const {
  if (!scalars.empty()) return static_cast<int>(scalars.size());
  if (!points.empty()) return static_cast<int>(points.size());
  return static_cast<int>(levels.size());
}

RMat pairwise_distances(const ChannelSpec& spec, const Codebook& cb) {
  spec.validate();
  const int n = cb.size();
  RMat d = RMat::Zero(n, n);
  auto fill = [&](auto&& pair_dist) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = pair_dist(i, j);
  };
  switch (spec.kind) {
    case ChannelKind::FastFading:
    case ChannelKind::Multipath: {
      check_arg(static_cast<int>(cb.scalars.size()) == n,
                "scalar codebook required for fast-fading classes");
      const double rho_eff = effective_rho(spec);
      fill([&](int i, int j) {
        return fast_fading_bhatt(cb.scalars[i], cb.scalars[j], rho_eff, spec.N);
      });
      break;
    }
    case ChannelKind::FixedH: {
      check_arg(static_cast<int>(cb.points.size()) == n,
                "matrix codebook required for FixedH");
      fill([&](int i, int j) {
        return fixed_h_bhatt(spec.H, cb.points[i] - cb.points[j], spec.rho);
      });
      break;
    }
    case ChannelKind::CoherentMIMO: {
      check_arg(static_cast<int>(cb.points.size()) == n,
                "matrix codebook required for CoherentMIMO");
      fill([&](int i, int j) {
        const Mat D = cb.points[i] - cb.points[j];
        Eigen::SelfAdjointEigenSolver<Mat> es(D * D.adjoint(),
                                              Eigen::EigenvaluesOnly);
        return avg_bhatt_rayleigh(es.eigenvalues(), spec.N, spec.rho).distance;
      });
      break;
    }
    case ChannelKind::BlockFading: {
      check_arg(static_cast<int>(cb.points.size()) == n,
                "matrix codebook required for BlockFading");
      bool all_orthonormal = true;
      for (int i = 0; i < n; ++i) {
        check_arg(cb.points[i].rows() == spec.M && cb.points[i].cols() == spec.T,
                  "block-fading inputs must be M x T");
        const Mat& X = cb.points[i];
        if ((X * X.adjoint() - Mat::Identity(spec.M, spec.M))
                .cwiseAbs()
                .maxCoeff() > 1e-9)
          all_orthonormal = false;
      }
      if (all_orthonormal) {
        // Subspace codebook: the principal-angle identity is exact and stays
        // stable at condition numbers (~rho) where the dense-covariance
        // route loses the unit eigenvalues.
        fill([&](int i, int j) {
          return block_fading_bhatt(principal_angles(cb.points[i], cb.points[j]),
                                    spec.rho, spec.N);
        });
      } else {
        std::vector<Mat> covs(n);
        const Mat eye = Mat::Identity(spec.T, spec.T);
        for (int i = 0; i < n; ++i)
          covs[i] = spec.rho * cb.points[i].adjoint() * cb.points[i] + eye;
        fill([&](int i, int j) {
          return spec.N * bhatt_same_mean(covs[i], covs[j]);
        });
      }
      break;
    }
    case ChannelKind::FracLog: {
      check_arg(static_cast<int>(cb.levels.size()) == n,
                "on-level codebook required for FracLog");
      const RVec r = psd_autocovariance(spec.beta, spec.c_beta, spec.T);
      const RVec mu = toeplitz_eigenvalues(r, spec.T);
      fill([&](int i, int j) {
        const double p1 = cb.levels[i] * cb.levels[i];
        const double p2 = cb.levels[j] * cb.levels[j];
        return frac_log_level_distance_from_eigs(mu, p1, p2, spec.rho, spec.N,
                                                 spec.T);
      });
      break;
    }
  }
  return d;
}

double codebook_min_distance(const ChannelSpec& spec, const Codebook& cb) {
  const int n = cb.size();
  if (n < 2) return kInf;
  const RMat d = pairwise_distances(spec, cb);
  double best = kInf;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) best = std::min(best, d(i, j));
  return best;
}

std::string PackingResult::to_json_text(int indent) const {
  json j;
  j["mode"] = (mode == PackingMode::ByThreshold) ? "by-threshold" : "by-count";
  j["delta"] = (mode == PackingMode::ByThreshold) ? json(delta) : json();
  j["k"] = k;
  j["rho"] = rho;
  j["value_lower"] = finite_or_null(value_lower);
  j["value_upper"] = finite_or_null(value_upper);
  j["method_lower"] = method_lower;
  j["method_upper"] = method_upper;
  j["no_pair"] = no_pair;
  if (mode == PackingMode::ByThreshold) j["k_pack"] = k_pack;
  j["certificate"] = codebook_to_json(certificate);
  if (!diagnostics_json.empty())
    j["diagnostics"] = json::parse(diagnostics_json);
  return j.dump(indent);
}

double scale_spacing(DivKind div, double delta, int n_rx) {
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  check_arg(std::isfinite(delta) && delta > 0.0, "threshold must be positive");
  switch (div) {
    case DivKind::Bhatt:
      // N log2 cosh(c/2) = delta  =>  c = 2 acosh(2^{delta/N}).
      return 2.0 * acosh1p(std::expm1(delta * kLn2 / n_rx));
    case DivKind::Hellinger: {
      check_arg(delta < 1.0, "squared Hellinger threshold must be < 1");
      // 1 - 2^{-N log2 cosh(c/2)} = delta  =>  cosh(c/2) = (1-delta)^{-1/N}.
      const double arg = std::expm1(-std::log1p(-delta) / n_rx);
      return 2.0 * acosh1p(arg);
    }
    case DivKind::KL: {
      // Worst direction between adjacent levels at gap w is KL(u || u+w):
      // N (w - 1 + e^{-w}) / ln 2 = delta; bisection (monotone in w).
      const double target = delta * kLn2 / n_rx;
      auto f = [](double w) { return w - 1.0 + std::exp(-w); };
      double lo = 0.0, hi = 1.0;
      while (f(hi) < target) hi *= 2.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  throw invalid_argument_error("unknown divergence kind");
}

namespace {

// Shared by-threshold implementation once L = ln(1+rho) is known.
PackingResult scale_pack_from_L(double delta, double L, double rho, int n_rx,
                                DivKind div) {
  const double c = scale_spacing(div, delta, n_rx);
  const long long n_pack = 1 + static_cast<long long>(std::floor(L / c));
  PackingResult r;
  r.mode = PackingMode::ByThreshold;
  r.delta = delta;
  r.k = n_pack;
  r.rho = rho;
  r.value_lower = r.value_upper = static_cast<double>(n_pack);
  r.method_lower = "equally-spaced-levels";
  r.method_upper = "pigeonhole";
  r.k_pack = std::log2(static_cast<double>(n_pack));
  r.no_pair = (n_pack < 2);
  r.certificate.kind = ChannelKind::FastFading;
  if (std::isfinite(rho) && rho > 0.0) {
    for (long long i = 0; i < n_pack; ++i) {
      const double u = static_cast<double>(i) * c;
      r.certificate.scalars.push_back(
          cplx(std::sqrt(std::min(std::expm1(u) / rho, 1.0)), 0.0));
    }
  }
  json diag;
  diag["L"] = L;
  diag["spacing"] = c;
  diag["divergence"] = to_string(div);
  r.diagnostics_json = diag.dump();
  return r;
}

double frontier_value_from_L(double L, long long K, int n_rx) {
  return n_rx * log2cosh(0.5 * L / static_cast<double>(K - 1));
}

PackingResult scale_frontier_from_L(long long K, double L, double rho, int n_rx) {
  check_arg(K >= 1, "codebook size must be >= 1");
  PackingResult r;
  r.mode = PackingMode::ByCount;
  r.k = K;
  r.rho = rho;
  if (K == 1) {
    r.no_pair = true;
    r.value_lower = r.value_upper = std::numeric_limits<double>::quiet_NaN();
    r.method_lower = r.method_upper = "no pair";
    return r;
  }
  const double delta = frontier_value_from_L(L, K, n_rx);
  r.value_lower = r.value_upper = delta;
  r.method_lower = "equally-spaced-levels";
  r.method_upper = "pigeonhole";
  r.certificate.kind = ChannelKind::FastFading;
  if (std::isfinite(rho) && rho > 0.0) {
    for (long long i = 0; i < K; ++i) {
      const double u = L * static_cast<double>(i) / static_cast<double>(K - 1);
      r.certificate.scalars.push_back(
          cplx(std::sqrt(std::min(std::expm1(u) / rho, 1.0)), 0.0));
    }
  }
  json diag;
  diag["L"] = L;
  diag["spacing"] = L / static_cast<double>(K - 1);
  r.diagnostics_json = diag.dump();
  return r;
}

}  // namespace

PackingResult scale_pack_count(double delta, double rho, int n_rx, DivKind div) {
  return scale_pack_from_L(delta, log_variance_range(rho), rho, n_rx, div);
}

PackingResult scale_pack_count_log2rho(double delta, double log2rho, int n_rx,
                                       DivKind div) {
  const double rho = std::exp2(log2rho);  // may overflow to inf; L is exact
  return scale_pack_from_L(delta, log_variance_range_log2rho(log2rho),
                           std::isfinite(rho) ? rho : kInf, n_rx, div);
}

PackingResult scale_frontier(long long K, double rho, int n_rx) {
  return scale_frontier_from_L(K, log_variance_range(rho), rho, n_rx);
}

PackingResult scale_frontier_log2rho(long long K, double log2rho, int n_rx) {
  const double rho = std::exp2(log2rho);
  return scale_frontier_from_L(K, log_variance_range_log2rho(log2rho),
                               std::isfinite(rho) ? rho : kInf, n_rx);
}

double mimo_frontier_upper(int M, int N, double rho, long long K) {
  check_arg(M >= 1 && N >= 1, "antenna counts must be >= 1");
  check_arg(K >= 2, "codebook size must be >= 2");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  const double shrink =
      std::exp(-std::log(static_cast<double>(K)) / (static_cast<double>(M) * M));
  return static_cast<double>(N) * M * log2p1(rho * shrink);
}

double mimo_frontier_upper_enlarged(int M, int N, int T, double rho, long long K) {
  check_arg(M >= 1 && N >= 1 && T >= M, "need M, N >= 1 and T >= M");
  check_arg(K >= 2, "codebook size must be >= 2");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  const double g =
      std::expm1(std::log(static_cast<double>(K)) / (2.0 * M * T));
  return static_cast<double>(N) * M *
         log2p1(rho * (static_cast<double>(T) / M) / (g * g));
}

namespace {

// Min pairwise averaged-Rayleigh distance of a matrix codebook.
double min_rayleigh_distance(const std::vector<Mat>& pts, int N, double rho) {
  double best = kInf;
  for (std::size_t i = 0; i < pts.size() && best > 0.0; ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Mat D = pts[i] - pts[j];
      Eigen::SelfAdjointEigenSolver<Mat> es(D * D.adjoint(),
                                            Eigen::EigenvaluesOnly);
      const double d = avg_bhatt_rayleigh(es.eigenvalues(), N, rho).distance;
      best = std::min(best, d);
      if (best == 0.0) break;
    }
  return best;
}

Mat random_power_ball_point(SubStream& g, int M, int T) {
  Mat X = random_cgaussian(g, M, T) / std::sqrt(static_cast<double>(M));
  const double norm2 = X.squaredNorm();
  if (norm2 > static_cast<double>(T))
    X *= std::sqrt(static_cast<double>(T) / norm2);
  return X;
}

}  // namespace

PackingResult mimo_frontier_lower(int M, int N, int T, double rho, long long K,
                                  int trials, std::uint64_t seed) {
  check_arg(M >= 1 && N >= 1 && T >= M, "need M, N >= 1 and T >= M");
  check_arg(K >= 2, "codebook size must be >= 2");
  check_arg(trials >= 1, "trial count must be >= 1");
  check_arg(K <= 100000, "codebook size too large for pairwise scoring");

  std::vector<Mat> best_cb;
  double best_val = -kInf;
  std::vector<Mat> pool;
  constexpr std::size_t kPoolCap = 512;
  for (int t = 0; t < trials; ++t) {
    SubStream g(seed, static_cast<std::uint64_t>(t));
    std::vector<Mat> cb;
    cb.reserve(static_cast<std::size_t>(K));
    for (long long i = 0; i < K; ++i) {
      cb.push_back(random_power_ball_point(g, M, T));
      if (pool.size() < kPoolCap) pool.push_back(cb.back());
    }
    const double val = min_rayleigh_distance(cb, N, rho);
    if (val > best_val) {
      best_val = val;
      best_cb = std::move(cb);
    }
  }
  // Farthest-point pass over the pooled candidates can beat any single draw.
  if (static_cast<long long>(pool.size()) >= K && pool.size() > best_cb.size()) {
    const int n = static_cast<int>(pool.size());
    RMat dist(n, n);
    dist.setZero();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Mat D = pool[i] - pool[j];
        Eigen::SelfAdjointEigenSolver<Mat> es(D * D.adjoint(),
                                              Eigen::EigenvaluesOnly);
        dist(i, j) = dist(j, i) =
            avg_bhatt_rayleigh(es.eigenvalues(), N, rho).distance;
      }
    const MaxminResult greedy = greedy_maxmin(dist, static_cast<int>(K), seed);
    if (greedy.value > best_val) {
      best_val = greedy.value;
      best_cb.clear();
      for (int idx : greedy.indices) best_cb.push_back(pool[idx]);
    }
  }

  PackingResult r;
  r.mode = PackingMode::ByCount;
  r.k = K;
  r.rho = rho;
  r.value_lower = best_val;
  r.value_upper = mimo_frontier_upper_enlarged(M, N, T, rho, K);
  r.method_lower = "random-gaussian-codebook(best-of-trials + farthest-point)";
  r.method_upper = "enlarged-ball-concavity";
  r.certificate.kind = ChannelKind::CoherentMIMO;
  r.certificate.points = best_cb;

  // Empirical singular-value-profile statistic (the paper-level constant
  // c'(M) is unspecified; report the observed minimum instead).
  double min_sv_ratio = kInf;
  for (std::size_t i = 0; i < best_cb.size(); ++i)
    for (std::size_t j = i + 1; j < best_cb.size(); ++j) {
      const Mat D = best_cb[i] - best_cb[j];
      Eigen::JacobiSVD<Mat> svd(D);
      const double fro = D.norm();
      if (fro > 0.0)
        min_sv_ratio = std::min(
            min_sv_ratio, svd.singularValues().minCoeff() / fro);
    }
  json diag;
  diag["trials"] = trials;
  diag["pool_size"] = pool.size();
  diag["min_singular_value_ratio"] = finite_or_null(min_sv_ratio);
  r.diagnostics_json = diag.dump();

  ChannelSpec spec;
  spec.kind = ChannelKind::CoherentMIMO;
  spec.M = M;
  spec.N = N;
  spec.T = T;
  spec.rho = rho;
  check_certificate(spec, r, best_val);
  check_sandwich(r);
  return r;
}

PackingResult grassmann_frontier_bounds(int M, int N, int T, double rho,
                                        long long K, int trials,
                                        std::uint64_t seed) {
  check_arg(M >= 1 && N >= 1, "antenna counts must be >= 1");
  if (T < 2 * M)
    throw unsupported_error(
        "grassmann_frontier_bounds requires T >= 2M (below the phase "
        "transition, full-diversity subspace pairs do not exist)");
  check_arg(K >= 2, "codebook size must be >= 2");
  check_arg(trials >= 1, "trial count must be >= 1");
  check_arg(K <= 100000, "codebook size too large for pairwise scoring");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");

  const double q = rho / (1.0 + 1.0 / rho);  // rho^2/(1+rho)
  auto subspace_distance = [&](const Mat& X1, const Mat& X2) {
    Eigen::JacobiSVD<Mat> svd(X1 * X2.adjoint());
    double sum = 0.0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
      const double c = std::clamp(svd.singularValues()[k], 0.0, 1.0);
      sum += log2p1(0.25 * q * (1.0 - c * c));
    }
    return static_cast<double>(N) * sum;
  };

  std::vector<Mat> best_cb;
  double best_val = -kInf;
  for (int t = 0; t < trials; ++t) {
    SubStream g(seed, static_cast<std::uint64_t>(t));
    std::vector<Mat> cb;
    cb.reserve(static_cast<std::size_t>(K));
    for (long long i = 0; i < K; ++i) {
      const Mat G = random_cgaussian(g, T, M);
      Eigen::HouseholderQR<Mat> qr(G);
      const Mat U = Mat(qr.householderQ()).leftCols(M);
      cb.push_back(U.adjoint());  // M x T, orthonormal rows
    }
    double val = kInf;
    for (long long i = 0; i < K && val > 0.0; ++i)
      for (long long j = i + 1; j < K; ++j)
        val = std::min(val, subspace_distance(cb[i], cb[j]));
    if (val > best_val) {
      best_val = val;
      best_cb = std::move(cb);
    }
  }

  const double shrink = std::exp(-std::log(static_cast<double>(K)) /
                                 (static_cast<double>(M) * (T - M)));
  const double upper =
      static_cast<double>(N) * M * log2p1(0.25 * rho * std::min(1.0, 4.0 * shrink));

  PackingResult r;
  r.mode = PackingMode::ByCount;
  r.k = K;
  r.rho = rho;
  r.value_lower = best_val;
  r.value_upper = upper;
  r.method_lower = "random-subspace-codebook(best-of-trials)";
  r.method_upper = "ball-volume-concavity";
  r.certificate.kind = ChannelKind::BlockFading;
  r.certificate.points = best_cb;

  const double r_inferred =
      std::log2(static_cast<double>(K)) /
      (static_cast<double>(M) * (T - M) * std::log2(rho));
  json diag;
  diag["trials"] = trials;
  diag["r_inferred"] = r_inferred;
  diag["sandwich_coeff_lower"] = N * (1.0 - r_inferred);
  diag["sandwich_coeff_upper"] = static_cast<double>(N) * M * (1.0 - r_inferred);
  r.diagnostics_json = diag.dump();

  ChannelSpec spec;
  spec.kind = ChannelKind::BlockFading;
  spec.M = M;
  spec.N = N;
  spec.T = T;
  spec.rho = rho;
  check_certificate(spec, r, best_val);
  check_sandwich(r);
  return r;
}

MaxminResult bruteforce_frontier(const RMat& dist, int K) {
  const int n = static_cast<int>(dist.rows());
  check_arg(dist.cols() == n, "distance matrix must be square");
  if (n > 24) throw budget_error("brute-force instance too large (n > 24)");
  check_arg(K >= 1 && K <= n, "need 1 <= K <= n");
  MaxminResult best;
  best.value = -kInf;
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(K));
  std::function<void(int, double)> rec = [&](int start, double cur_min) {
    if (static_cast<int>(chosen.size()) == K) {
      if (cur_min > best.value) {
        best.value = cur_min;
        best.indices = chosen;
      }
      return;
    }
    const int need = K - static_cast<int>(chosen.size());
    for (int i = start; i + need <= n; ++i) {
      double m = cur_min;
      for (int c : chosen) m = std::min(m, dist(c, i));
      if (m <= best.value) continue;  // min can only shrink below the incumbent
      chosen.push_back(i);
      rec(i + 1, m);
      chosen.pop_back();
    }
  };
  rec(0, kInf);
  if (K == 1) best.value = kInf;  // single point: no pair
  return best;
}

namespace {

Codebook select_points(const Codebook& cb, const std::vector<int>& idx) {
  Codebook out;
  out.kind = cb.kind;
  for (int i : idx) {
    if (!cb.scalars.empty()) out.scalars.push_back(cb.scalars[i]);
    if (!cb.points.empty()) out.points.push_back(cb.points[i]);
    if (!cb.levels.empty()) out.levels.push_back(cb.levels[i]);
  }
  return out;
}

}  // namespace

PackingResult bruteforce_frontier(const ChannelSpec& spec, const Codebook& cb,
                                  int K) {
  const RMat dist = pairwise_distances(spec, cb);
  const MaxminResult m = bruteforce_frontier(dist, K);
  PackingResult r;
  r.mode = PackingMode::ByCount;
  r.k = K;
  r.rho = spec.rho;
  r.no_pair = (K == 1);
  r.value_lower = r.value_upper = r.no_pair
      ? std::numeric_limits<double>::quiet_NaN() : m.value;
  r.method_lower = r.method_upper = "exhaustive-subset-search";
  r.certificate = select_points(cb, m.indices);
  if (!r.no_pair) check_certificate(spec, r, m.value);
  return r;
}

MaxminResult greedy_maxmin(const RMat& dist, int K, std::uint64_t seed) {
  const int n = static_cast<int>(dist.rows());
  check_arg(dist.cols() == n, "distance matrix must be square");
  check_arg(K >= 1 && K <= n, "need 1 <= K <= n");
  SubStream g(seed, 0);
  MaxminResult out;
  int cur = static_cast<int>(g.next_below(static_cast<std::uint64_t>(n)));
  out.indices.push_back(cur);
  std::vector<double> min_d(static_cast<std::size_t>(n), kInf);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  used[static_cast<std::size_t>(cur)] = true;
  for (int step = 1; step < K; ++step) {
    int arg = -1;
    double best = -kInf;
    for (int i = 0; i < n; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      min_d[static_cast<std::size_t>(i)] =
          std::min(min_d[static_cast<std::size_t>(i)], dist(cur, i));
      if (min_d[static_cast<std::size_t>(i)] > best) {
        best = min_d[static_cast<std::size_t>(i)];
        arg = i;
      }
    }
    cur = arg;
    used[static_cast<std::size_t>(cur)] = true;
    out.indices.push_back(cur);
  }
  out.value = kInf;
  for (std::size_t a = 0; a < out.indices.size(); ++a)
    for (std::size_t b = a + 1; b < out.indices.size(); ++b)
      out.value = std::min(out.value, dist(out.indices[a], out.indices[b]));
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

Codebook greedy_maxmin(const ChannelSpec& spec, const Codebook& candidates,
                       int K, std::uint64_t seed) {
  const RMat dist = pairwise_distances(spec, candidates);
  return select_points(candidates, greedy_maxmin(dist, K, seed).indices);
}

namespace {

// Draws K inputs from the class's configured random input distribution.
Codebook sample_codebook(const ChannelSpec& spec, long long K, SubStream& g) {
  Codebook cb;
  cb.kind = spec.kind;
  switch (spec.kind) {
    case ChannelKind::FastFading:
    case ChannelKind::Multipath: {
      const double rho_eff = effective_rho(spec);
      const double L = log_variance_range(rho_eff);
      for (long long i = 0; i < K; ++i) {
        const double u = L * g.next_unit();
        cb.scalars.push_back(
            cplx(std::sqrt(std::min(std::expm1(u) / rho_eff, 1.0)), 0.0));
      }
      break;
    }
    case ChannelKind::FracLog: {
      const double L = log_variance_range(spec.rho);
      for (long long i = 0; i < K; ++i) {
        const double u = L * g.next_unit();
        cb.levels.push_back(
            std::sqrt(std::min(std::expm1(u) / spec.rho, 1.0)));
      }
      break;
    }
    case ChannelKind::FixedH:
    case ChannelKind::CoherentMIMO: {
      for (long long i = 0; i < K; ++i)
        cb.points.push_back(random_power_ball_point(g, spec.M, spec.T));
      break;
    }
    case ChannelKind::BlockFading: {
      for (long long i = 0; i < K; ++i) {
        const Mat G = random_cgaussian(g, spec.T, spec.M);
        Eigen::HouseholderQR<Mat> qr(G);
        cb.points.push_back(Mat(Mat(qr.householderQ()).leftCols(spec.M)).adjoint());
      }
      break;
    }
  }
  return cb;
}

}  // namespace

std::string codebook_to_json_text(const Codebook& cb, int indent) {
  return codebook_to_json(cb).dump(indent);
}

Codebook codebook_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw invalid_argument_error(std::string("codebook JSON malformed: ") +
                                 e.what());
  }
  Codebook cb;
  try {
    cb.kind = channel_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("scalars"))
      for (const auto& p : j.at("scalars"))
        cb.scalars.push_back(cplx(p.at(0).get<double>(), p.at(1).get<double>()));
    if (j.contains("levels"))
      for (const auto& v : j.at("levels")) cb.levels.push_back(v.get<double>());
    if (j.contains("points"))
      for (const auto& p : j.at("points")) {
        const auto& re = p.at("re");
        const auto& im = p.at("im");
        const int rows = static_cast<int>(re.size());
        check_arg(rows >= 1 && im.size() == re.size(),
                  "codebook point must have matching re/im row counts");
        const int cols = static_cast<int>(re.at(0).size());
        Mat m(rows, cols);
        for (int r = 0; r < rows; ++r) {
          check_arg(static_cast<int>(re.at(r).size()) == cols &&
                        static_cast<int>(im.at(r).size()) == cols,
                    "codebook point rows must have equal length");
          for (int c = 0; c < cols; ++c)
            m(r, c) = cplx(re.at(r).at(c).get<double>(),
                           im.at(r).at(c).get<double>());
        }
        cb.points.push_back(std::move(m));
      }
  } catch (const json::exception& e) {
    throw invalid_argument_error(std::string("codebook JSON missing field: ") +
                                 e.what());
  }
  check_arg(cb.size() > 0, "codebook JSON contains no points");
  return cb;
}

Codebook random_input_codebook(const ChannelSpec& spec, long long K,
                               std::uint64_t seed, std::uint64_t stream) {
  spec.validate();
  check_arg(K >= 1, "codebook size must be >= 1");
  SubStream g(seed, stream);
  return sample_codebook(spec, K, g);
}

PackingResult expurgated_pack_lower(const ChannelSpec& spec, double delta,
                                    double R0_estimate,
                                    std::int64_t sample_budget,
                                    std::uint64_t seed) {
  spec.validate();
  check_arg(std::isfinite(delta) && delta > 0.0, "threshold must be positive");
  check_arg(sample_budget >= 1, "sampling budget must be positive");

  long long K = std::max<long long>(
      2, static_cast<long long>(std::llround(std::exp2(std::max(0.0, R0_estimate)))));
  std::int64_t spent = 0;
  long long best_count = 1;
  Codebook best_cb;
  best_cb.kind = spec.kind;
  int round = 0;
  bool ran_any = false;
  while (true) {
    const std::int64_t pair_cost = K * (K - 1) / 2;
    if (spent + pair_cost > sample_budget || K > (1 << 20)) break;
    ran_any = true;
    SubStream g(seed, 0x9e00 + static_cast<std::uint64_t>(round));
    Codebook cb = sample_codebook(spec, K, g);
    const RMat dist = pairwise_distances(spec, cb);
    spent += pair_cost;
    // Remove the higher-indexed endpoint of every surviving bad pair.
    std::vector<bool> alive(static_cast<std::size_t>(K), true);
    for (long long i = 0; i < K; ++i) {
      if (!alive[static_cast<std::size_t>(i)]) continue;
      for (long long j = i + 1; j < K; ++j) {
        if (!alive[static_cast<std::size_t>(j)]) continue;
        if (dist(i, j) < delta) alive[static_cast<std::size_t>(j)] = false;
      }
    }
    std::vector<int> idx;
    for (long long i = 0; i < K; ++i)
      if (alive[static_cast<std::size_t>(i)]) idx.push_back(static_cast<int>(i));
    // Certify: all surviving pairs clear the threshold.
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (dist(idx[a], idx[b]) < delta)
          throw numeric_error("expurgation produced an invalid survivor set");
    if (static_cast<long long>(idx.size()) > best_count) {
      best_count = static_cast<long long>(idx.size());
      best_cb = select_points(cb, idx);
    }
    K *= 2;
    ++round;
  }
  if (!ran_any)
    throw budget_error("expurgation sampling budget exhausted before any round");

  PackingResult r;
  r.mode = PackingMode::ByThreshold;
  r.delta = delta;
  r.rho = spec.rho;
  r.k = best_count;
  r.value_lower = static_cast<double>(best_count);
  r.value_upper = kInf;
  r.method_lower = "random-coding+expurgation";
  r.method_upper = "none";
  r.k_pack = std::log2(static_cast<double>(best_count));
  r.no_pair = (best_count < 2);
  r.certificate = best_cb;
  json diag;
  diag["pair_evaluations"] = spent;
  diag["rounds"] = round;
  r.diagnostics_json = diag.dump();
  if (best_count >= 2) {
    const double got = codebook_min_distance(spec, r.certificate);
    if (!(got >= delta - 1e-12))
      throw numeric_error("expurgation certificate below threshold");
  }
  return r;
}

double cutoff_rate(const RMat& dist, const RVec& weights) {
  const int n = static_cast<int>(dist.rows());
  check_arg(dist.cols() == n, "distance matrix must be square");
  check_arg(weights.size() == n, "weight vector length must match");
  check_arg((weights.array() >= 0.0).all(), "weights must be nonnegative");
  check_arg(std::fabs(weights.sum() - 1.0) <= 1e-9, "weights must sum to 1");
  double coeff = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      coeff += weights[i] * weights[j] * std::exp2(-dist(i, j));
  return -std::log2(coeff);
}

double cutoff_rate(const ChannelSpec& spec, const Codebook& cb,
                   const RVec& weights) {
  return cutoff_rate(pairwise_distances(spec, cb), weights);
}

double kl_converse_bound(double n_kl_cover, double delta, double eta) {
  check_arg(n_kl_cover >= 1.0, "cover size must be >= 1");
  check_arg(delta >= 0.0, "cover radius must be nonnegative");
  check_arg(eta > 0.0 && eta < 0.5, "error tolerance must lie in (0, 1/2)");
  const double h2 = -eta * std::log2(eta) - (1.0 - eta) * std::log2(1.0 - eta);
  return (std::log2(n_kl_cover) + delta + 2.0 * h2) / (1.0 - eta);
}

long long scale_kl_cover_count(double delta, double rho, int n_rx) {
  check_arg(std::isfinite(delta) && delta > 0.0, "cover radius must be positive");
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  const double L = log_variance_range(rho);
  const double target = delta * kLn2 / n_rx;
  auto solve = [target](auto&& f) {
    double lo = 0.0, hi = 1.0;
    while (f(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  // One-sided radii: KL(c+w || c) and KL(c-w || c) both equal delta.
  const double w_up = solve([](double w) { return std::expm1(w) - w; });
  const double w_dn = solve([](double w) { return std::expm1(-w) + w; });
  const double width = w_up + w_dn;
  return static_cast<long long>(std::ceil(L / width - 1e-12));
}

}  // namespace gaugepack
