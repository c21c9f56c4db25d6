#pragma once

#include <complex>

namespace ed {

using Complex = std::complex<double>;

/// A value that exceeded the representable range. Both components are infinite;
/// signs follow the quadrant of the true value where that is known.
Complex overflow_value(double re_sign = 1.0, double im_sign = 1.0);

/// True for the overflow representation (any non-finite component).
inline bool is_saturated(Complex z) { return !std::isfinite(z.real()) || !std::isfinite(z.imag()); }

struct ErfEvaluation {
  Complex value;
  double est_abs_error = 0.0;
};

/// Complex error function.
///
/// Accurate to 1e-12 * max(1, |erf z|) for |z| <= 12. Evaluates a power series near the
/// origin and near the imaginary axis, Kummer's series near the real axis and the
/// Laplace continued fraction for erfc elsewhere; the other quadrants follow from
/// erf(-z) = -erf(z) and erf(conj z) = conj(erf z). Values whose modulus would exceed
/// ~1e300 saturate to overflow_value().
ErfEvaluation erf(Complex z);

/// alpha * erf(z) + beta. Throws Error(InvalidArgument) when alpha == 0.
Complex f_ab(Complex z, Complex alpha, Complex beta);

/// (2 alpha / sqrt(pi)) exp(-z^2). Throws Error(InvalidArgument) when alpha == 0.
Complex f_ab_prime(Complex z, Complex alpha);

namespace detail {

// Individual evaluation strategies, valid in the first quadrant. Exposed so that the
// region seams can be tested directly.
ErfEvaluation erf_power_series(Complex z);
ErfEvaluation erf_kummer_series(Complex z);
ErfEvaluation erf_continued_fraction(Complex z);

enum class ErfRegion { PowerSeries, KummerSeries, ContinuedFraction, Saturated };

// Region chosen for a first-quadrant argument.
ErfRegion erf_region(double x, double y);

inline constexpr double kSeriesRadius = 2.5;    // power series everywhere inside this disc
inline constexpr double kImagAxisBand = 1.0;    // power series while |Re z| stays below this
inline constexpr double kRealAxisBand = 1.5;    // Kummer series while |Im z| stays below this
inline constexpr double kKummerRadius = 5.0;    // and |z| stays below this
inline constexpr double kLogSaturation = 690.0;  // ln of the largest returned modulus

}  // namespace detail

}  // namespace ed
