// Power-law spectral density machinery: the per-symbol integral, numeric
// autocovariance, Toeplitz eigenvalues, and the on/off pair distance.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gaugepack/divergence.hpp"
#include "gaugepack/errors.hpp"
#include "gaugepack/spectrum.hpp"

using namespace gaugepack;

namespace {

constexpr double kPi = std::numbers::pi;

// For beta = 1/2 the PSD exponent is -2 + 2/beta = +2, so the integral has
// the elementary antiderivative
//   (1/2pi) Int_{-pi}^{pi} log2(1 + a l^2) dl
//     = (1/(pi ln2)) [ pi ln(1 + a pi^2) - 2 pi + (2/sqrt(a)) atan(sqrt(a) pi) ]
// with a = rho * P * c.
double szego_half_closed_form(double c, double P, double rho) {
  const double a = rho * P * c;
  const double sa = std::sqrt(a);
  return (kPi * std::log1p(a * kPi * kPi) - 2.0 * kPi +
          (2.0 / sa) * std::atan(sa * kPi)) /
         (kPi * kLn2);
}

}  // namespace

TEST_CASE("per-symbol spectral integral: frozen value and closed form") {
  const double v = szego_integral(0.5, 8.0, 1.0, 1e4);
  CHECK(v == doctest::Approx(16.710413426755).epsilon(1e-9));
  CHECK(v == doctest::Approx(szego_half_closed_form(8.0, 1.0, 1e4))
                 .epsilon(1e-7));
  // A second, unrelated parameter point against the same closed form.
  CHECK(szego_integral(0.5, 2.0, 0.7, 123.0) ==
        doctest::Approx(szego_half_closed_form(2.0, 0.7, 123.0)).epsilon(1e-7));
}

TEST_CASE("per-symbol spectral integral: monotone in SNR and in power") {
  double prev = 0.0;
  for (double rho : {1.0, 10.0, 100.0, 1e4, 1e8}) {
    const double v = szego_integral(0.5, 8.0, 1.0, rho);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(szego_integral(0.75, 8.0, 2.0, 100.0) >
        szego_integral(0.75, 8.0, 1.0, 100.0));
}

TEST_CASE("autocovariance: analytic zero-lag moments") {
  // r0 = (1/2pi) Int c |l|^(-2+2/beta) dl = c pi^p / (p+1), p = -2+2/beta.
  {
    RVec ac = psd_autocovariance(0.5, 8.0, 4);  // p = 2
    const double exact = 8.0 * kPi * kPi / 3.0;
    CHECK(ac[0] == doctest::Approx(exact).epsilon(1e-9));
    // Lags decay below the zero lag for this even, positive PSD.
    for (int k = 1; k < 4; ++k) CHECK(std::fabs(ac[k]) < ac[0]);
  }
  {
    RVec ac = psd_autocovariance(0.75, 2.0, 2);  // p = 2/3
    const double exact = 2.0 * (3.0 / 5.0) * std::pow(kPi, 2.0 / 3.0);
    CHECK(ac[0] == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("Toeplitz eigenvalues: trace identity, ordering, exact 2x2") {
  RVec ac = psd_autocovariance(0.5, 8.0, 16);
  RVec eigs = toeplitz_eigenvalues(ac, 16);
  REQUIRE(eigs.size() == 16);
  double tr = 0.0;
  for (int i = 0; i < 16; ++i) {
    CHECK(eigs[i] > 0.0);
    if (i > 0) CHECK(eigs[i] >= eigs[i - 1]);  // ascending
    tr += eigs[i];
  }
  CHECK(tr == doctest::Approx(16.0 * ac[0]).epsilon(1e-10));

  RVec two(2);
  two << 2.0, 0.5;  // eigenvalues 2 -+ 0.5
  RVec e2 = toeplitz_eigenvalues(two, 2);
  CHECK(e2[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(e2[1] == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("Toeplitz eigenvalues: genuinely indefinite input is an error") {
  RVec bad(2);
  bad << 1.0, 2.0;  // eigenvalues {-1, 3}
  CHECK_THROWS_AS(toeplitz_eigenvalues(bad, 2), numeric_error);
}

TEST_CASE("pair distance: direct call matches the precomputed-eigenvalue path") {
  for (int T : {8, 32}) {
    RVec ac = psd_autocovariance(0.5, 8.0, T);
    RVec eigs = toeplitz_eigenvalues(ac, T);
    const double direct = frac_log_pair_distance(1.0, 0.5, 8.0, 100.0, 2, T);
    const double cached =
        frac_log_pair_distance_from_eigs(eigs, 1.0, 100.0, 2, T);
    CHECK(direct == doctest::Approx(cached).epsilon(1e-12));
  }
}

TEST_CASE("pair distance: exactly linear in the receive antenna count") {
  const double d1 = frac_log_pair_distance(1.0, 0.5, 8.0, 1e4, 1, 32);
  const double d3 = frac_log_pair_distance(1.0, 0.5, 8.0, 1e4, 3, 32);
  CHECK(d3 == doctest::Approx(3.0 * d1).epsilon(1e-12));
}

TEST_CASE("pair distance: per-symbol ratio against the spectral integral") {
  // The on/off pair distance per symbol approaches (N/2) * integral as the
  // block grows; frozen finite-block readings at rho = 1e4, beta = 1/2.
  const double sz = szego_integral(0.5, 8.0, 1.0, 1e4);
  const double r64 =
      frac_log_pair_distance(1.0, 0.5, 8.0, 1e4, 1, 64) / (0.5 * sz);
  const double r128 =
      frac_log_pair_distance(1.0, 0.5, 8.0, 1e4, 1, 128) / (0.5 * sz);
  const double r256 =
      frac_log_pair_distance(1.0, 0.5, 8.0, 1e4, 1, 256) / (0.5 * sz);
  CHECK(r64 == doctest::Approx(0.886114313825).epsilon(1e-6));
  CHECK(r128 == doctest::Approx(0.883576244425).epsilon(1e-6));
  CHECK(r256 == doctest::Approx(0.882121773176).epsilon(1e-6));
  // All within 15% of the limiting value 1.
  for (double r : {r64, r128, r256}) {
    CHECK(r > 0.85);
    CHECK(r < 1.15);
  }
}

TEST_CASE("level distance: coincidence, symmetry, on/off reduction") {
  RVec ac = psd_autocovariance(0.5, 8.0, 16);
  RVec eigs = toeplitz_eigenvalues(ac, 16);
  CHECK(frac_log_level_distance_from_eigs(eigs, 0.7, 0.7, 50.0, 2, 16) ==
        doctest::Approx(0.0).epsilon(1e-14));
  const double ab = frac_log_level_distance_from_eigs(eigs, 0.9, 0.2, 50.0, 1, 16);
  const double ba = frac_log_level_distance_from_eigs(eigs, 0.2, 0.9, 50.0, 1, 16);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
  CHECK(ab > 0.0);
  // P2 = 0 degenerates to the on/off pair distance.
  const double onoff = frac_log_level_distance_from_eigs(eigs, 1.0, 0.0, 50.0, 1, 16);
  const double pair = frac_log_pair_distance_from_eigs(eigs, 1.0, 50.0, 1, 16);
  CHECK(onoff == doctest::Approx(pair).epsilon(1e-12));
}
