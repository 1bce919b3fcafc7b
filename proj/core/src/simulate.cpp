#include "gaugepack/simulate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <json.hpp>

#include "gaugepack/divergence.hpp"
#include "gaugepack/parallel.hpp"
#include "gaugepack/rng.hpp"

namespace gaugepack {

using nlohmann::json;

namespace {

constexpr long long kTrialCap = 100000000;  // 1e8

int argmax_lowest(const std::vector<double>& score) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(score.size()); ++k)
    if (score[k] > score[best]) best = k;  // strict: ties keep the lowest index
  return best;
}

// Power feasibility per the input conventions: scalar |x| <= 1, matrix
// ||X||_F^2 <= T (covers both the power ball and orthonormal-row subspaces).
void check_power_feasible(const ChannelSpec& spec, const Codebook& cb) {
  for (const cplx& x : cb.scalars)
    check_arg(std::abs(x) <= 1.0 + 1e-9, "scalar codeword violates |x| <= 1");
  for (const Mat& X : cb.points)
    check_arg(X.squaredNorm() <= spec.T * (1.0 + 1e-9),
              "matrix codeword violates ||X||_F^2 <= T");
}

struct TrialOutcome {
  long long errors = 0;
};

}  // namespace

int ml_decode_scale(const std::vector<double>& variances, double energy,
                    int n_rx) {
  check_arg(!variances.empty(), "need at least one candidate variance");
  check_arg(n_rx >= 1 && energy >= 0.0, "invalid observation");
  std::vector<double> score(variances.size());
  for (std::size_t k = 0; k < variances.size(); ++k) {
    const double v = variances[k];
    check_arg(std::isfinite(v) && v > 0.0, "variances must be positive");
    score[k] = -n_rx * std::log(v) - energy / v;
  }
  return argmax_lowest(score);
}

std::string SimResult::to_json_text(int indent) const {
  json j;
  j["pe_hat"] = pe_hat;
  j["stderr"] = std_error;
  j["trials"] = trials;
  j["bound"] = bound;
  j["delta_min"] = std::isfinite(delta_min) ? json(delta_min) : json();
  j["n"] = n;
  j["K"] = k;
  j["rho"] = rho;
  j["seed"] = seed;
  j["pass"] = pass;
  if (!resolvable) {
    j["resolvable"] = false;
    j["note"] = note;
  }
  return j.dump(indent);
}

SimResult simulate_pe(const SimConfig& config) {
  const ChannelSpec& spec = config.spec;
  spec.validate();
  if (spec.kind == ChannelKind::FracLog)
    throw unsupported_error(
        "FracLog simulation is out of scope (ML decoding over long Toeplitz "
        "blocks is not desk-scale)");
  check_arg(config.trials >= 1000, "trials must be >= 1000");
  check_arg(config.n >= 1, "channel uses per message must be >= 1");
  check_arg(config.confidence > 0.0, "confidence multiplier must be positive");
  const int K = config.codebook.size();
  check_arg(K >= 1, "codebook must be nonempty");
  check_power_feasible(spec, config.codebook);

  // Multipath reduces to FastFading at effective SNR with the same codebook.
  ChannelSpec sim_spec = spec;
  if (spec.kind == ChannelKind::Multipath) {
    sim_spec.kind = ChannelKind::FastFading;
    sim_spec.rho = effective_rho(spec);
    sim_spec.taps = RVec();
  }
  const double rho = sim_spec.rho;

  SimResult out;
  out.n = config.n;
  out.k = K;
  out.rho = spec.rho;
  out.seed = config.seed;

  if (K == 1) {
    out.pe_hat = 0.0;
    out.std_error = 0.0;
    out.trials = config.trials;
    out.bound = 0.0;
    out.delta_min = std::numeric_limits<double>::infinity();
    out.pass = true;
    return out;
  }

  out.delta_min = codebook_min_distance(sim_spec, config.codebook);
  out.bound = (K - 1) * std::exp2(-static_cast<double>(config.n) * out.delta_min);

  // Trials auto-escalation: insist on >= 100 expected bound-scale events.
  // When even the 1e8 cap cannot deliver them, the run is flagged
  // non-probative and only the requested trials are spent on it.
  long long trials = config.trials;
  if (out.bound > 0.0 && out.bound < 100.0 / static_cast<double>(trials)) {
    const double needed = 100.0 / out.bound;
    if (needed > static_cast<double>(kTrialCap)) {
      out.resolvable = false;
      out.note = "bound unresolvable at this budget: bound " +
                 std::to_string(out.bound) + " < 100/trials at the 1e8 cap";
    } else {
      trials = std::max(trials, static_cast<long long>(std::ceil(needed)));
    }
  }
  out.trials = trials;

  const long long n_uses = config.n;
  const std::uint64_t seed = config.seed;
  const auto& cb = config.codebook;

  // Per-kind precomputations hoisted out of the trial loop, then one
  // deterministic block-reduced counting pass.
  std::function<long long(std::uint64_t, std::uint64_t)> map_block;

  switch (sim_spec.kind) {
    case ChannelKind::FastFading: {
      std::vector<double> variances(K);
      for (int k = 0; k < K; ++k)
        variances[k] = rho * std::norm(cb.scalars[k]) + 1.0;
      const int N = sim_spec.N;
      map_block = [=](std::uint64_t lo, std::uint64_t hi) {
        long long errors = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
          SubStream g(seed, t);
          const int m = static_cast<int>(g.next_below(K));
          const cplx x = cb.scalars[m];
          double energy = 0.0;
          for (long long use = 0; use < n_uses; ++use)
            for (int j = 0; j < N; ++j) {
              const cplx y =
                  std::sqrt(rho) * g.next_cnormal() * x + g.next_cnormal();
              energy += std::norm(y);
            }
          // Same variance every use, so the summed log-likelihood depends on
          // the data only through the total energy.
          std::vector<double> score(K);
          for (int k = 0; k < K; ++k)
            score[k] = -static_cast<double>(n_uses) * N * std::log(variances[k]) -
                       energy / variances[k];
          if (argmax_lowest(score) != m) ++errors;
        }
        return errors;
      };
      break;
    }
    case ChannelKind::FixedH: {
      std::vector<Mat> means(K);
      std::vector<double> mean_norm2(K);
      for (int k = 0; k < K; ++k) {
        means[k] = std::sqrt(rho) * sim_spec.H * cb.points[k];
        mean_norm2[k] = means[k].squaredNorm();
      }
      const int N = sim_spec.N, T = sim_spec.T;
      map_block = [=](std::uint64_t lo, std::uint64_t hi) {
        long long errors = 0;
        for (std::uint64_t t = lo; t < hi; ++t) {
          SubStream g(seed, t);
          const int m = static_cast<int>(g.next_below(K));
          Mat total_y = Mat::Zero(N, T);
          for (long long use = 0; use < n_uses; ++use)
            total_y += means[m] + random_cgaussian(g, N, T);
          // -sum_use ||Y_u - mu_k||^2 reduces to an affine score in sum Y_u.
          std::vector<double> score(K);
          for (int k = 0; k < K; ++k)
            score[k] = 2.0 * total_y.cwiseProduct(means[k].conjugate())
                                 .sum()
                                 .real() -
                       static_cast<double>(n_uses) * mean_norm2[k];
          if (argmax_lowest(score) != m) ++errors;
        }
        return errors;
      };
      break;
    }
    case ChannelKind::CoherentMIMO: {
      const int N = sim_spec.N, M = sim_spec.M, T = sim_spec.T;
      map_block = [=](std::uint64_t lo, std::uint64_t hi) {
        long long errors = 0;
        const double sr = std::sqrt(rho);
        for (std::uint64_t t = lo; t < hi; ++t) {
          SubStream g(seed, t);
          const int m = static_cast<int>(g.next_below(K));
          std::vector<double> score(static_cast<std::size_t>(K), 0.0);
          for (long long use = 0; use < n_uses; ++use) {
            const Mat H = random_cgaussian(g, N, M);
            const Mat Y = sr * H * cb.points[m] + random_cgaussian(g, N, T);
            for (int k = 0; k < K; ++k) {
              const Mat mu = sr * H * cb.points[k];
              score[k] += 2.0 * Y.cwiseProduct(mu.conjugate()).sum().real() -
                          mu.squaredNorm();
            }
          }
          if (argmax_lowest(score) != m) ++errors;
        }
        return errors;
      };
      break;
    }
    case ChannelKind::BlockFading: {
      const int N = sim_spec.N, M = sim_spec.M, T = sim_spec.T;
      std::vector<Mat> inv_cov(K);
      std::vector<double> logdet(K);
      for (int k = 0; k < K; ++k) {
        const Mat cov =
            rho * cb.points[k].adjoint() * cb.points[k] + Mat::Identity(T, T);
        Eigen::LLT<Mat> llt(cov);
        if (llt.info() != Eigen::Success)
          throw numeric_error("codeword covariance is not positive definite");
        inv_cov[k] = llt.solve(Mat::Identity(T, T));
        double ld = 0.0;
        for (int i = 0; i < T; ++i)
          ld += 2.0 * std::log(std::real(llt.matrixL()(i, i)));
        logdet[k] = ld;
      }
      map_block = [=](std::uint64_t lo, std::uint64_t hi) {
        long long errors = 0;
        const double sr = std::sqrt(rho);
        for (std::uint64_t t = lo; t < hi; ++t) {
          SubStream g(seed, t);
          const int m = static_cast<int>(g.next_below(K));
          std::vector<double> score(static_cast<std::size_t>(K), 0.0);
          for (long long use = 0; use < n_uses; ++use) {
            const Mat H = random_cgaussian(g, N, M);
            const Mat Y = sr * H * cb.points[m] + random_cgaussian(g, N, T);
            const Mat G = Y.adjoint() * Y;  // T x T sufficient statistic
            for (int k = 0; k < K; ++k)
              score[k] += -static_cast<double>(N) * logdet[k] -
                          inv_cov[k].cwiseProduct(G.transpose()).sum().real();
          }
          if (argmax_lowest(score) != m) ++errors;
        }
        return errors;
      };
      break;
    }
    default:
      throw unsupported_error("unsupported channel kind for simulation");
  }

  const long long errors = parallel_block_reduce<long long>(
      static_cast<std::uint64_t>(trials), 0LL,
      [&map_block](std::uint64_t lo, std::uint64_t hi) {
        return map_block(lo, hi);
      },
      [](long long a, long long b) { return a + b; });

  out.pe_hat = static_cast<double>(errors) / static_cast<double>(trials);
  out.std_error =
      std::sqrt(out.pe_hat * (1.0 - out.pe_hat) / static_cast<double>(trials));
  out.pass = out.pe_hat - config.confidence * out.std_error <= out.bound;
  return out;
}

AvgBhattCheck verify_avg_bhatt(const Mat& D, int n_rx, double rho,
                               long long trials, std::uint64_t seed) {
  check_arg(trials >= 10000, "verification needs at least 1e4 trials");
  check_arg(n_rx >= 1, "receive antenna count must be >= 1");
  check_arg(std::isfinite(rho) && rho > 0.0, "SNR must be positive");
  const int M = static_cast<int>(D.rows());
  const int T = static_cast<int>(D.cols());
  check_arg(M >= 1 && T >= 1, "difference matrix must be nonempty");

  Eigen::SelfAdjointEigenSolver<Mat> es(D * D.adjoint(), Eigen::EigenvaluesOnly);
  const RayleighAvg closed = avg_bhatt_rayleigh(es.eigenvalues(), n_rx, rho);

  struct Acc {
    double sum = 0.0;
    double sumsq = 0.0;
  };
  const double scale = rho / (4.0 * kLn2);
  const Acc acc = parallel_block_reduce<Acc>(
      static_cast<std::uint64_t>(trials), Acc{},
      [&](std::uint64_t lo, std::uint64_t hi) {
        Acc a;
        for (std::uint64_t t = lo; t < hi; ++t) {
          SubStream g(seed, t);
          const Mat H = random_cgaussian(g, n_rx, M);
          const double s = std::exp2(-scale * (H * D).squaredNorm());
          a.sum += s;
          a.sumsq += s * s;
        }
        return a;
      },
      [](Acc a, const Acc& b) {
        a.sum += b.sum;
        a.sumsq += b.sumsq;
        return a;
      });

  AvgBhattCheck out;
  out.trials = trials;
  out.closed_form = closed.coefficient;
  out.mc_estimate = acc.sum / static_cast<double>(trials);
  const double var =
      std::max(0.0, acc.sumsq / static_cast<double>(trials) -
                        out.mc_estimate * out.mc_estimate);
  out.std_error = std::sqrt(var / static_cast<double>(trials));
  const double diff = std::fabs(out.mc_estimate - out.closed_form);
  out.z_score = (diff == 0.0) ? 0.0
                              : diff / std::max(out.std_error,
                                                std::numeric_limits<double>::min());
  return out;
}

std::string ExponentFit::to_csv_text() const {
  std::string s = "n,pe_hat,stderr\n";
  char buf[128];
  for (const ExponentPoint& p : points) {
    std::snprintf(buf, sizeof buf, "%lld,%.12g,%.12g\n", p.n, p.pe_hat,
                  p.std_error);
    s += buf;
  }
  return s;
}

ExponentFit exponent_estimate(const ChannelSpec& spec, const Codebook& codebook,
                              double rho, const std::vector<long long>& n_grid,
                              long long trials, std::uint64_t seed) {
  check_arg(n_grid.size() >= 3, "need at least 3 block lengths");
  check_arg(trials >= 1000, "trials must be >= 1000");

  ExponentFit fit;
  SimConfig cfg;
  cfg.spec = spec;
  cfg.spec.rho = rho;
  cfg.codebook = codebook;
  cfg.trials = trials;
  cfg.seed = seed;

  const double lo_band = 10.0 / static_cast<double>(trials);
  std::vector<double> xs, ys;
  long long n_min_used = 0;
  for (long long n : n_grid) {
    cfg.n = n;
    const SimResult r = simulate_pe(cfg);
    fit.delta_min = r.delta_min;
    ExponentPoint p;
    p.n = n;
    p.pe_hat = r.pe_hat;
    p.std_error = r.std_error;
    p.used = (r.pe_hat >= lo_band && r.pe_hat <= 0.3);
    if (p.used) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(-std::log2(r.pe_hat));
      if (n_min_used == 0 || n < n_min_used) n_min_used = n;
    }
    fit.points.push_back(p);
  }
  if (xs.size() < 3)
    throw invalid_argument_error(
        "fewer than 3 block lengths produced estimable error rates in "
        "[10/trials, 0.3]; adjust n_grid or trials");

  const std::size_t m = xs.size();
  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<double>(m);
  ybar /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  check_arg(sxx > 0.0, "block lengths must not be all equal");
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += resid * resid;
  }
  fit.slope_std_error =
      (m > 2) ? std::sqrt(ss_res / static_cast<double>(m - 2) / sxx) : 0.0;

  const int K = codebook.size();
  fit.sanity_floor =
      fit.delta_min - (K > 1 ? std::log2(static_cast<double>(K - 1)) /
                                   static_cast<double>(n_min_used)
                             : 0.0);
  fit.floor_ok = fit.slope >= fit.sanity_floor - 2.0 * fit.slope_std_error;
  return fit;
}

}  // namespace gaugepack
