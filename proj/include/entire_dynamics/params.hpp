#pragma once

#include <utility>

#include "entire_dynamics/special_functions.hpp"

namespace ed {

/// Root of erf(z) = 1 as tabulated to ten decimals; used to seed Newton's method.
inline constexpr Complex kTabulatedRootSeed{-1.3548101281, 1.9914668428};

inline constexpr double kDefaultRootTolerance = 1e-14;
inline constexpr int kMaxNewtonSteps = 30;
inline constexpr double kResidualTolerance = 1e-10;

struct ErfRoot {
  Complex root;
  int iterations = 0;
  double residual = 0.0;  // |erf(root) - 1|
};

/// Newton's method on erf(z) = 1 starting from `seed`.
///
/// Throws Error(NonConvergence) after kMaxNewtonSteps and Error(DerivativeUnderflow)
/// when exp(-z^2) leaves the normal range (underflow or overflow) at an iterate.
ErfRoot solve_erf_equals_one(Complex seed = kTabulatedRootSeed, double tol = kDefaultRootTolerance);

/// Parameters of f(z) = alpha erf(z) + beta that make alpha + beta = c a fixed point with
/// multiplier exactly 1.
struct ErfFamilyParams {
  Complex c;
  Complex alpha;
  Complex beta;  // always c - alpha
  double fixed_point_residual = 0.0;  // |f(alpha + beta) - (alpha + beta)|
  double multiplier_residual = 0.0;   // |f'(alpha + beta) - 1|

  Complex fixed_point() const { return alpha + beta; }
};

/// alpha = exp(c^2) sqrt(pi) / 2 and beta = c - alpha, with both residuals measured.
/// Throws Error(PrecisionLoss) if erf(c) is not within `tol` of 1 or either residual
/// exceeds it.
ErfFamilyParams derive_params(Complex c, double tol = kResidualTolerance);

/// The two finite asymptotic values (alpha + beta, -alpha + beta), approached along the
/// positive and negative real axis.
std::pair<Complex, Complex> asymptotic_values(const ErfFamilyParams& p);

/// Parameters built from the tabulated seed, computed once.
const ErfFamilyParams& reference_params();

}  // namespace ed
