// Monte Carlo maximum-likelihood verification: decoder correctness, the
// union bound, determinism, the averaged-coefficient check, and exponent
// slope estimation.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <vector>

#include "gaugepack/channel.hpp"
#include "gaugepack/errors.hpp"
#include "gaugepack/packing.hpp"
#include "gaugepack/simulate.hpp"

using namespace gaugepack;

namespace {

ChannelSpec fast_fading(int n_rx, double rho) {
  ChannelSpec s;
  s.kind = ChannelKind::FastFading;
  s.N = n_rx;
  s.rho = rho;
  return s;
}

ChannelSpec scalar_known(double rho) {
  ChannelSpec s;
  s.kind = ChannelKind::FixedH;
  s.M = 1;
  s.N = 1;
  s.T = 1;
  s.H = Mat::Identity(1, 1);
  s.rho = rho;
  return s;
}

Codebook two_levels(double x0, double x1) {
  Codebook cb;
  cb.kind = ChannelKind::FastFading;
  cb.scalars = {cplx(x0, 0), cplx(x1, 0)};
  return cb;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("energy decoder: thresholds and lowest-index ties") {
  // Variances {1, 4}: the decision flips at e* = 4 ln4 / 3 ~ 1.8484.
  const std::vector<double> v = {1.0, 4.0};
  CHECK(ml_decode_scale(v, 1.0, 1) == 0);
  CHECK(ml_decode_scale(v, 3.0, 1) == 1);
  // Two receive components double the threshold.
  CHECK(ml_decode_scale(v, 3.0, 2) == 0);
  CHECK(ml_decode_scale(v, 4.0, 2) == 1);
  // Identical candidate variances: exact tie, lowest index wins.
  const std::vector<double> tie = {2.0, 2.0, 2.0};
  CHECK(ml_decode_scale(tie, 0.7, 1) == 0);
}

TEST_CASE("energy decoder equals an independent full-likelihood decoder") {
  std::mt19937_64 rng(9001);
  std::uniform_real_distribution<double> var_draw(0.5, 20.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n_rx = 3;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(4);
    for (double& x : v) x = var_draw(rng);
    // A synthetic received vector (any distribution works: the claim is a
    // pointwise identity of decisions, not a statistical one).
    double energy = 0.0;
    std::vector<cplx> y(n_rx);
    for (cplx& z : y) {
      z = cplx(gauss(rng), gauss(rng));
      energy += std::norm(z);
    }
    // Full per-component complex Gaussian log-likelihood.
    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
      double ll = 0.0;
      for (const cplx& z : y) ll += -std::log(v[k]) - std::norm(z) / v[k];
      if (ll > best_ll) {
        best_ll = ll;
        best = k;
      }
    }
    CHECK(ml_decode_scale(v, energy, n_rx) == best);
  }
}

TEST_CASE("single-message codebook never errs") {
  SimConfig cfg;
  cfg.spec = fast_fading(1, 10.0);
  cfg.codebook.kind = ChannelKind::FastFading;
  cfg.codebook.scalars = {cplx(1, 0)};
  cfg.trials = 2000;
  const SimResult r = simulate_pe(cfg);
  CHECK(r.pe_hat == 0.0);
  CHECK(r.pass);
}

TEST_CASE("two identical codewords: deterministic ties give pe ~ 1/2") {
  SimConfig cfg;
  cfg.spec = fast_fading(1, 10.0);
  cfg.codebook = two_levels(0.5, 0.5);
  cfg.trials = 20000;
  cfg.seed = 3;
  const SimResult r = simulate_pe(cfg);
  CHECK(r.delta_min == 0.0);
  CHECK(r.bound == 1.0);  // (K-1) 2^0: vacuous but valid
  CHECK(r.pass);
  // Message 0 always decodes correctly; message 1 always errs.
  CHECK(std::fabs(r.pe_hat - 0.5) <= 5.0 * std::sqrt(0.25 / r.trials));
}

TEST_CASE("union bound holds on the pinned four-level configuration") {
  ChannelSpec spec = fast_fading(2, 1e4);
  const PackingResult frontier = scale_frontier(4, 1e4, 2);
  SimConfig cfg;
  cfg.spec = spec;
  cfg.codebook = frontier.certificate;
  cfg.n = 4;
  cfg.trials = 20000;
  cfg.seed = 1;
  const SimResult r = simulate_pe(cfg);
  CHECK(r.k == 4);
  CHECK(r.delta_min == doctest::Approx(frontier.value_lower).epsilon(1e-9));
  CHECK(r.bound ==
        doctest::Approx(3.0 * std::exp2(-4.0 * r.delta_min)).epsilon(1e-12));
  CHECK(r.pass);
  CHECK(r.pe_hat - 3.0 * r.std_error <= r.bound);
  // The requested 2e4 trials cannot resolve a ~2.5e-3 bound; the harness
  // escalates to ~100/bound.
  CHECK(r.trials > cfg.trials);
  CHECK(r.trials >= 40000);
  CHECK(r.trials <= 41000);
}

TEST_CASE("bound far below the trial cap is flagged non-probative") {
  SimConfig cfg;
  cfg.spec = fast_fading(1, 1e4);
  cfg.codebook = two_levels(0.0, 1.0);
  cfg.n = 10;  // bound ~ 2^{-56}: hopeless at any feasible budget
  cfg.trials = 2000;
  cfg.seed = 1;
  const SimResult r = simulate_pe(cfg);
  CHECK_FALSE(r.resolvable);
  CHECK(r.trials == 2000);  // no pointless escalation
  CHECK(r.note.find("unresolvable") != std::string::npos);
  const std::string js = r.to_json_text();
  CHECK(js.find("\"resolvable\"") != std::string::npos);
  CHECK(js.find("\"note\"") != std::string::npos);
}

TEST_CASE("simulator validation: trial floor and unsupported class") {
  SimConfig cfg;
  cfg.spec = fast_fading(1, 10.0);
  cfg.codebook = two_levels(0.0, 1.0);
  cfg.trials = 100;
  CHECK_THROWS_AS(simulate_pe(cfg), invalid_argument_error);
  cfg.trials = 2000;
  cfg.spec.kind = ChannelKind::FracLog;
  cfg.codebook.kind = ChannelKind::FracLog;
  cfg.codebook.scalars.clear();
  cfg.codebook.levels = {0.0, 1.0};
  CHECK_THROWS_AS(simulate_pe(cfg), unsupported_error);
}

TEST_CASE("known-channel binary calibration against the Gaussian tail") {
  // pe = Q(sqrt(n rho ||H dx||^2 / 2)) for an antipodal scalar pair.
  Codebook cb;
  cb.kind = ChannelKind::FixedH;
  cb.points = {Mat::Constant(1, 1, cplx(1, 0)),
               Mat::Constant(1, 1, cplx(-1, 0))};
  SimConfig cfg;
  cfg.spec = scalar_known(1.0);
  cfg.codebook = cb;
  cfg.trials = 400000;
  cfg.seed = 11;
  for (long long n : {1, 2}) {
    cfg.n = n;
    const SimResult r = simulate_pe(cfg);
    const double exact = q_function(std::sqrt(2.0 * double(n)));
    CHECK(std::fabs(r.pe_hat - exact) <= 4.0 * r.std_error);
  }
}

TEST_CASE("bitwise determinism, worker-count independence, seed sensitivity") {
  SimConfig cfg;
  cfg.spec = fast_fading(2, 100.0);
  cfg.codebook = two_levels(0.0, 1.0);
  cfg.n = 2;
  cfg.trials = 30000;
  cfg.seed = 42;
  const SimResult a = simulate_pe(cfg);
  const SimResult b = simulate_pe(cfg);
  CHECK(a.pe_hat == b.pe_hat);  // bitwise
  CHECK(a.trials == b.trials);

  setenv("GAUGE_FRONTIER_THREADS", "1", 1);
  const SimResult serial = simulate_pe(cfg);
  setenv("GAUGE_FRONTIER_THREADS", "4", 1);
  const SimResult wide = simulate_pe(cfg);
  unsetenv("GAUGE_FRONTIER_THREADS");
  CHECK(serial.pe_hat == wide.pe_hat);
  CHECK(serial.pe_hat == a.pe_hat);

  cfg.seed = 43;
  const SimResult other = simulate_pe(cfg);
  CHECK(other.pe_hat != a.pe_hat);
}

TEST_CASE("averaged-coefficient check: degenerate and analytic anchors") {
  {
    const AvgBhattCheck r = verify_avg_bhatt(Mat::Zero(2, 2), 2, 50.0, 10000, 1);
    CHECK(r.mc_estimate == 1.0);
    CHECK(r.closed_form == 1.0);
    CHECK(r.z_score == 0.0);
  }
  {
    // Scalar difference with Gram eigenvalue 4/rho: closed form exactly 1/2.
    const double rho = 25.0;
    Mat d = Mat::Constant(1, 1, cplx(2.0 / std::sqrt(rho), 0));
    const AvgBhattCheck r = verify_avg_bhatt(d, 1, rho, 1000000, 7);
    CHECK(r.closed_form == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(r.mc_estimate - 0.5) <= 3.0 * r.std_error);
    CHECK(r.z_score <= 3.0);
  }
  CHECK_THROWS_AS(verify_avg_bhatt(Mat::Zero(1, 1), 1, 1.0, 5000, 1),
                  invalid_argument_error);  // trials floor is 1e4
}

TEST_CASE("averaged-coefficient check: calibration across seeded repetitions") {
  // 2x2 random difference matrices: the MC estimate should sit within 3
  // standard errors of the closed form in nearly all repetitions.
  std::mt19937_64 rng(314159);
  std::normal_distribution<double> gauss(0.0, 0.5);
  int within = 0;
  const int reps = 40;
  for (int i = 0; i < reps; ++i) {
    Mat d(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) d(r, c) = cplx(gauss(rng), gauss(rng));
    const AvgBhattCheck chk = verify_avg_bhatt(d, 2, 20.0, 20000, 1000 + i);
    if (chk.z_score <= 3.0) ++within;
  }
  CHECK(within >= reps - 2);  // >= 95%
}

TEST_CASE("exponent slope: binary known channel matches the exact exponent") {
  Codebook cb;
  cb.kind = ChannelKind::FixedH;
  cb.points = {Mat::Constant(1, 1, cplx(1, 0)),
               Mat::Constant(1, 1, cplx(-1, 0))};
  const double rho = 0.5;
  const std::vector<long long> n_grid = {2, 5, 8, 11, 14};
  const ExponentFit fit =
      exponent_estimate(scalar_known(rho), cb, rho, n_grid, 400000, 21);
  const double exact = rho / kLn2;  // pairwise exponent per use, in bits
  CHECK(fit.slope > 0.0);
  CHECK(std::fabs(fit.slope / exact - 1.0) <= 0.15);
  CHECK(fit.delta_min == doctest::Approx(exact).epsilon(1e-9));
  CHECK(fit.floor_ok);
  REQUIRE(fit.points.size() == n_grid.size());
  for (const ExponentPoint& p : fit.points) CHECK(p.used);
  // CSV emitter: header plus one row per block length.
  const std::string csv = fit.to_csv_text();
  CHECK(csv.rfind("n,pe_hat,stderr", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + n_grid.size());
}

TEST_CASE("exponent slope: out-of-band points are dropped, scarcity is fatal") {
  Codebook cb;
  cb.kind = ChannelKind::FixedH;
  cb.points = {Mat::Constant(1, 1, cplx(1, 0)),
               Mat::Constant(1, 1, cplx(-1, 0))};
  // rho = 50: pe < 1e-10 at every n; every point leaves the estimable band.
  CHECK_THROWS_AS(exponent_estimate(scalar_known(50.0), cb, 50.0,
                                    {2, 4, 6}, 2000, 1),
                  invalid_argument_error);
  CHECK_THROWS_AS(exponent_estimate(scalar_known(0.5), cb, 0.5, {2, 4}, 2000, 1),
                  invalid_argument_error);  // fewer than 3 block lengths
}
