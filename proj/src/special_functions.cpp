#include "entire_dynamics/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "entire_dynamics/error.hpp"

namespace ed {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;
constexpr int kMaxSeriesTerms = 4000;
constexpr int kMaxFractionTerms = 5000;

template <typename F>
constexpr std::array<double, kMaxSeriesTerms> make_table(F f) {
  std::array<double, kMaxSeriesTerms> t{};
  for (int n = 1; n < kMaxSeriesTerms; ++n) t[n] = f(n);
  return t;
}

constexpr auto kInv = make_table([](int n) { return 1.0 / n; });
constexpr auto kInvOdd = make_table([](int n) { return 1.0 / (2 * n + 1); });
constexpr auto kInvPair = make_table([](int n) { return n > 1 ? 1.0 / (static_cast<double>(n - 1) * n) : 0.0; });

// Rounding error carried by exp(-z^2) through its argument, relative to its modulus.
double exp_argument_error(double x, double y) {
  return kEps * (2.0 * std::abs((x - y) * (x + y)) + 4.0 * std::abs(x * y));
}

// exp(-z^2) for z = x + iy, with x^2 - y^2 formed as (x - y)(x + y).
Complex exp_minus_square(double x, double y) {
  const double log_mag = -(x - y) * (x + y);
  const double mag = std::exp(log_mag);
  if (mag == 0.0) return {0.0, 0.0};
  const double phase = -2.0 * x * y;
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

ErfEvaluation saturated_first_quadrant(double x, double y) {
  // erf(z) ~ -exp(-z^2) / (z sqrt(pi)); only the rough quadrant of the phase matters here.
  const double phase = -2.0 * x * y - std::atan2(y, x) + std::numbers::pi;
  return {overflow_value(std::cos(phase) < 0 ? -1.0 : 1.0, std::sin(phase) < 0 ? -1.0 : 1.0),
          std::numeric_limits<double>::infinity()};
}

}  // namespace

Complex overflow_value(double re_sign, double im_sign) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {std::copysign(inf, re_sign), std::copysign(inf, im_sign)};
}

namespace detail {

ErfRegion erf_region(double x, double y) {
  if (y > x && (y - x) * (y + x) > kLogSaturation) {
    const double r = std::hypot(x, y);
    if ((y - x) * (y + x) - std::log(r * std::sqrt(std::numbers::pi)) > kLogSaturation) {
      return ErfRegion::Saturated;
    }
  }
  const double r2 = x * x + y * y;
  if (r2 <= kSeriesRadius * kSeriesRadius || x <= kImagAxisBand) return ErfRegion::PowerSeries;
  if (y <= kRealAxisBand && r2 <= kKummerRadius * kKummerRadius) return ErfRegion::KummerSeries;
  return ErfRegion::ContinuedFraction;
}

ErfEvaluation erf_power_series(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (x == 0.0 && y == 0.0) return {{0.0, 0.0}, 0.0};

  const double r2 = x * x + y * y;
  const double z2r = (x - y) * (x + y);
  const double z2i = 2.0 * x * y;
  const double z4r = (z2r - z2i) * (z2r + z2i);
  const double z4i = 2.0 * z2r * z2i;

  // p_n = (-1)^n z^(2n+1) / n! and term_n = p_n / (2n + 1). Even and odd n run as two
  // independent recurrences p_{n+2} = p_n z^4 / ((n+1)(n+2)) to shorten the dependency chain.
  double er = x, ei = y;                               // p_n, n even
  double orr = -(x * z2r - y * z2i), oi = -(x * z2i + y * z2r);  // p_n, n odd
  double sr = x + orr * kInvOdd[1];
  double si = y + oi * kInvOdd[1];
  // Rounding in the n-th term grows roughly like n eps, hence the weighted sum.
  double weighted_abs = 2.0 * (std::abs(x) + std::abs(y)) + 3.0 * kInvOdd[1] * (std::abs(orr) + std::abs(oi));
  double last = 0.0;
  for (int n = 2; n + 1 < kMaxSeriesTerms; n += 2) {
    const double ar = (er * z4r - ei * z4i) * kInvPair[n];
    const double ai = (er * z4i + ei * z4r) * kInvPair[n];
    const double br = (orr * z4r - oi * z4i) * kInvPair[n + 1];
    const double bi = (orr * z4i + oi * z4r) * kInvPair[n + 1];
    er = ar;
    ei = ai;
    orr = br;
    oi = bi;
    const double t0r = er * kInvOdd[n], t0i = ei * kInvOdd[n];
    const double t1r = orr * kInvOdd[n + 1], t1i = oi * kInvOdd[n + 1];
    sr += t0r + t1r;
    si += t0i + t1i;
    const double a0 = std::abs(t0r) + std::abs(t0i);
    last = std::abs(t1r) + std::abs(t1i);
    weighted_abs += (n + 2) * a0 + (n + 3) * last;
    if (n > r2 && a0 + last <= 0.25 * kEps * std::max(std::abs(sr) + std::abs(si), 1.0)) break;
  }
  const double err = kTwoOverSqrtPi * (kEps * weighted_abs + last);
  return {{kTwoOverSqrtPi * sr, kTwoOverSqrtPi * si}, err};
}

ErfEvaluation erf_kummer_series(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (x == 0.0 && y == 0.0) return {{0.0, 0.0}, 0.0};

  const double r2 = x * x + y * y;
  const double wr = 2.0 * (x - y) * (x + y);  // 2 z^2
  const double wi = 4.0 * x * y;

  // erf z = (2 z / sqrt(pi)) exp(-z^2) sum_n (2 z^2)^n / (2n + 1)!!
  double tr = 1.0, ti = 0.0;
  double sr = 1.0, si = 0.0;
  double weighted_abs = 2.0;
  double last = 1.0;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    const double nr = (tr * wr - ti * wi) * kInvOdd[n];
    const double ni = (tr * wi + ti * wr) * kInvOdd[n];
    tr = nr;
    ti = ni;
    sr += tr;
    si += ti;
    last = std::abs(tr) + std::abs(ti);
    weighted_abs += (n + 2) * last;
    if (n > r2 && last <= 0.25 * kEps * (std::abs(sr) + std::abs(si))) break;
  }
  const Complex prefactor = kTwoOverSqrtPi * z * exp_minus_square(x, y);
  const Complex value = prefactor * Complex(sr, si);
  const double err = std::abs(prefactor) * (kEps * weighted_abs + last) +
                    std::abs(value) * exp_argument_error(x, y) + 2.0 * kEps;
  return {value, err};
}

ErfEvaluation erf_continued_fraction(Complex z) {
  // erfc z = exp(-z^2) / sqrt(pi) * 1 / (z + (1/2) / (z + 1 / (z + (3/2) / (z + ...))))
  // evaluated with the modified Lentz method; valid for Re z > 0.
  constexpr double tiny = 1e-300;
  Complex f = z;
  Complex c = z;
  Complex d = 0.0;
  double delta_err = 1.0;
  int n = 1;
  for (; n < kMaxFractionTerms; ++n) {
    const double a = 0.5 * n;
    d = z + a * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = z + a / c;
    if (c == 0.0) c = tiny;
    const Complex delta = c * d;
    f *= delta;
    delta_err = std::abs(delta - 1.0);
    if (delta_err < 0.5 * kEps) break;
  }
  const Complex erfc = exp_minus_square(z.real(), z.imag()) * std::numbers::inv_sqrtpi / f;
  const double err =
      std::abs(erfc) * (8.0 * kEps + std::sqrt(static_cast<double>(n)) * kEps + delta_err +
                        exp_argument_error(z.real(), z.imag())) +
      kEps;
  return {1.0 - erfc, err};
}

}  // namespace detail

ErfEvaluation erf(Complex z) {
  const bool negate = z.real() < 0.0;
  if (negate) z = -z;
  const bool conjugate = z.imag() < 0.0;
  if (conjugate) z = std::conj(z);

  ErfEvaluation out;
  switch (detail::erf_region(z.real(), z.imag())) {
    case detail::ErfRegion::Saturated:
      out = saturated_first_quadrant(z.real(), z.imag());
      break;
    case detail::ErfRegion::PowerSeries:
      out = detail::erf_power_series(z);
      break;
    case detail::ErfRegion::KummerSeries:
      out = detail::erf_kummer_series(z);
      break;
    case detail::ErfRegion::ContinuedFraction:
      out = detail::erf_continued_fraction(z);
      break;
  }
  if (conjugate) out.value = std::conj(out.value);
  if (negate) out.value = -out.value;
  return out;
}

Complex f_ab(Complex z, Complex alpha, Complex beta) {
  if (alpha == 0.0) throw Error(ErrorCode::InvalidArgument, "f_ab: alpha must be nonzero");
  const Complex e = erf(z).value;
  if (is_saturated(e)) return overflow_value(1.0, 1.0);
  const Complex w = alpha * e + beta;
  return is_saturated(w) ? overflow_value(1.0, 1.0) : w;
}

Complex f_ab_prime(Complex z, Complex alpha) {
  if (alpha == 0.0) throw Error(ErrorCode::InvalidArgument, "f_ab_prime: alpha must be nonzero");
  if (-(z.real() - z.imag()) * (z.real() + z.imag()) > 700.0) return overflow_value(1.0, 1.0);
  const Complex w = kTwoOverSqrtPi * alpha * exp_minus_square(z.real(), z.imag());
  return is_saturated(w) ? overflow_value(1.0, 1.0) : w;
}

}  // namespace ed
