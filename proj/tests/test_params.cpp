#include <doctest.h>

#include <chrono>
#include <cmath>

#include "entire_dynamics/error.hpp"
#include "entire_dynamics/params.hpp"
#include "oracle/erf_oracle.hpp"

using ed::Complex;

namespace {

// Root and parameters carried out in 100 digits, then rounded once.
struct OracleParams {
  Complex c, alpha, beta;
};

const OracleParams& oracle_params() {
  static const OracleParams p = [] {
    using namespace ed::oracle;
    const BigComplex c = erf_root_of_one(to_big(ed::kTabulatedRootSeed));
    const BigComplex alpha = exp(c * c) * sqrt_pi() / Real(2);
    return OracleParams{to_double(c), to_double(alpha), to_double(c - alpha)};
  }();
  return p;
}

}  // namespace

TEST_CASE("Newton from the tabulated seed reaches the extended-precision root") {
  const auto start = std::chrono::steady_clock::now();
  const ed::ErfRoot root = ed::solve_erf_equals_one();
  const ed::ErfFamilyParams p = ed::derive_params(root.root);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 1.0);

  CHECK(std::abs(root.root - oracle_params().c) < 1e-13);
  CHECK(root.residual <= 1e-13);
  CHECK(std::abs(p.alpha - oracle_params().alpha) < 1e-13);
  CHECK(std::abs(p.beta - oracle_params().beta) < 1e-13);
  CHECK(p.fixed_point_residual <= 1e-10);
  CHECK(p.multiplier_residual <= 1e-10);
  CHECK(p.beta == p.c - p.alpha);
}

TEST_CASE("the root matches its tabulated ten-decimal value") {
  const Complex c = ed::solve_erf_equals_one().root;
  CHECK(std::abs(c.real() - ed::kTabulatedRootSeed.real()) < 5e-11);
  CHECK(std::abs(c.imag() - ed::kTabulatedRootSeed.imag()) < 5e-11);
}

TEST_CASE("conjugate seed gives the conjugate root") {
  const Complex c = ed::solve_erf_equals_one().root;
  const Complex d = ed::solve_erf_equals_one(std::conj(ed::kTabulatedRootSeed)).root;
  CHECK(std::abs(d - std::conj(c)) < 1e-13);
}

TEST_CASE("a looser tolerance stops earlier") {
  const Complex seed(-1.3, 1.9);
  const ed::ErfRoot tight = ed::solve_erf_equals_one(seed, 1e-14);
  const ed::ErfRoot loose = ed::solve_erf_equals_one(seed, 1e-6);
  CHECK(loose.iterations < tight.iterations);
  CHECK(loose.residual <= 1e-6);
}

TEST_CASE("solver failures") {
  const auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const ed::Error& e) {
      return e.code();
    }
    FAIL("no error thrown");
    return ed::ErrorCode::InvalidArgument;
  };
  CHECK(code_of([] { ed::solve_erf_equals_one({0.0, 30.0}); }) == ed::ErrorCode::DerivativeUnderflow);
  CHECK(code_of([] { ed::solve_erf_equals_one(ed::kTabulatedRootSeed, 1e-300); }) == ed::ErrorCode::NonConvergence);
  CHECK(code_of([] { ed::solve_erf_equals_one(ed::kTabulatedRootSeed, 0.0); }) == ed::ErrorCode::InvalidArgument);
  CHECK(code_of([] { ed::derive_params({0.0, 0.0}); }) == ed::ErrorCode::PrecisionLoss);
}

TEST_CASE("asymptotic values are approached along the real axis") {
  const ed::ErfFamilyParams& p = ed::reference_params();
  const auto [plus, minus] = ed::asymptotic_values(p);
  CHECK(plus == p.fixed_point());
  // erfc(6) < 2.2e-17, so |f(+-6) - (+-alpha + beta)| <= |alpha| erfc(6) plus rounding, far below 1e-8
  const double tail = std::abs(p.alpha) * std::erfc(6.0) + 1e-14;
  CHECK(std::abs(ed::f_ab({6.0, 0.0}, p.alpha, p.beta) - plus) <= tail);
  CHECK(std::abs(ed::f_ab({-6.0, 0.0}, p.alpha, p.beta) - minus) <= tail);
  CHECK(tail <= 1e-8);
}

TEST_CASE("reference parameters are computed once") {
  CHECK(&ed::reference_params() == &ed::reference_params());
}
