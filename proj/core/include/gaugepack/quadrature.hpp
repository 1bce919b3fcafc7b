#pragma once

// Adaptive Gauss-Kronrod quadrature plus the density-level divergence oracles
// used to cross-validate the closed forms. Oracles work on scalar complex
// densities (d = 1); higher dimensions are validated through multiplicativity
// and unitary invariance instead.

#include <functional>

#include "gaugepack/errors.hpp"
#include "gaugepack/types.hpp"

namespace gaugepack {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_intervals = 40000;  // bisection budget per 1-D integral
};

// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
// Throws numeric_error if the tolerance is not reached within the budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

// A probability density on the complex plane (d = 1).
using Density1D = std::function<double(const cplx&)>;

// Density of CN(mean, v): (1/(pi v)) exp(-|z - mean|^2 / v).
Density1D gaussian_density(cplx mean, double v);

// Integral of f over the disk/square of the given radius. If
// `circularly_symmetric` is set, uses the exact polar reduction
// 2*pi*Int r f(r) dr (f evaluated on the positive real axis); otherwise an
// iterated Cartesian integral over [-radius, radius]^2.
double integrate_complex(const Density1D& f, double radius,
                         bool circularly_symmetric,
                         const QuadratureOptions& opt = {});

// -log2 Int sqrt(p q), adaptive to absolute tolerance `abs_tol`. Both inputs
// must integrate to 1 within 1e-6 over the given radius (checked).
double quadrature_bhatt_oracle(const Density1D& p, const Density1D& q,
                               double radius, bool circularly_symmetric,
                               double abs_tol = 1e-9);

// Int p log2(p/q) in bits, same conventions as the Bhattacharyya oracle.
double quadrature_kl_oracle(const Density1D& p, const Density1D& q,
                            double radius, bool circularly_symmetric,
                            double abs_tol = 1e-9);

}  // namespace gaugepack
