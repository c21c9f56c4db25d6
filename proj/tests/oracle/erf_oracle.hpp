#pragma once

// Extended-precision reference values. Test tree only: nothing in src/ may
// include this header.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>

namespace ed::oracle {

using Real = boost::multiprecision::cpp_bin_float_100;
using BigComplex = boost::multiprecision::cpp_complex_100;

inline BigComplex to_big(std::complex<double> z) { return BigComplex(Real(z.real()), Real(z.imag())); }

inline std::complex<double> to_double(const BigComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline Real sqrt_pi() { return boost::multiprecision::sqrt(boost::math::constants::pi<Real>()); }

// erf(z) = (2/sqrt(pi)) sum_n (-1)^n z^(2n+1) / (n! (2n+1)), summed in 100 digits.
// `terms` must cover the peak of |z|^(2n)/n! (n ~ |z|^2) with room to spare.
inline BigComplex erf_taylor(const BigComplex& z, int terms = 200) {
  const BigComplex z2 = z * z;
  BigComplex power = z;  // (-1)^n z^(2n+1) / n!
  BigComplex sum = power;
  for (int n = 1; n < terms; ++n) {
    power *= -z2;
    power /= Real(n);
    sum += power / Real(2 * n + 1);
  }
  return sum * (Real(2) / sqrt_pi());
}

inline std::complex<double> erf(std::complex<double> z, int terms = 200) {
  return to_double(erf_taylor(to_big(z), terms));
}

// Newton on erf(z) = 1 carried out entirely in extended precision.
inline BigComplex erf_root_of_one(const BigComplex& seed, int steps = 40) {
  BigComplex z = seed;
  for (int i = 0; i < steps; ++i) {
    const BigComplex residual = erf_taylor(z, 260) - BigComplex(1);
    z -= residual * sqrt_pi() * exp(z * z) / Real(2);
  }
  return z;
}

}  // namespace ed::oracle
