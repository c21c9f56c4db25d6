#include "entire_dynamics/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "entire_dynamics/error.hpp"

namespace ed {

namespace {

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

ErfRoot solve_erf_equals_one(Complex seed, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "solve_erf_equals_one: tol must be positive");
  Complex z = seed;
  double residual = std::abs(erf(z).value - 1.0);
  for (int step = 0; step <= kMaxNewtonSteps; ++step) {
    if (residual <= tol) return {z, step, residual};
    if (step == kMaxNewtonSteps) break;
    const Complex decay = std::exp(-z * z);
    if (!std::isnormal(std::abs(decay))) {
      throw Error(ErrorCode::DerivativeUnderflow, "exp(-z^2) is not a normal number at iterate " + describe(z));
    }
    // erf'(z) = (2 / sqrt(pi)) exp(-z^2)
    z -= (erf(z).value - 1.0) * (0.5 / std::numbers::inv_sqrtpi) / decay;
    residual = std::abs(erf(z).value - 1.0);
  }
  throw Error(ErrorCode::NonConvergence, "Newton iteration for erf(z) = 1 did not converge from seed " +
                                             describe(seed) + " (last iterate " + describe(z) + ")");
}

ErfFamilyParams derive_params(Complex c, double tol) {
  const double root_residual = std::abs(erf(c).value - 1.0);
  if (!(root_residual <= tol)) {
    throw Error(ErrorCode::PrecisionLoss, "derive_params: |erf(c) - 1| = " + std::to_string(root_residual) +
                                              " for c = " + describe(c));
  }
  ErfFamilyParams p;
  p.c = c;
  p.alpha = std::exp(c * c) * (0.5 / std::numbers::inv_sqrtpi);
  p.beta = c - p.alpha;
  const Complex fixed = p.fixed_point();
  p.fixed_point_residual = std::abs(f_ab(fixed, p.alpha, p.beta) - fixed);
  p.multiplier_residual = std::abs(f_ab_prime(fixed, p.alpha) - 1.0);
  if (!(p.fixed_point_residual <= tol) || !(p.multiplier_residual <= tol)) {
    std::ostringstream os;
    os << "derive_params: residuals too large (fixed point " << p.fixed_point_residual << ", multiplier "
       << p.multiplier_residual << ")";
    throw Error(ErrorCode::PrecisionLoss, os.str());
  }
  return p;
}

std::pair<Complex, Complex> asymptotic_values(const ErfFamilyParams& p) {
  return {p.alpha + p.beta, -p.alpha + p.beta};
}

const ErfFamilyParams& reference_params() {
  static const ErfFamilyParams params = derive_params(solve_erf_equals_one().root);
  return params;
}

}  // namespace ed
