#include "entire_dynamics/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "entire_dynamics/error.hpp"

namespace ed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double modulus(Complex w) {
  if (is_saturated(w)) return kInf;
  return std::sqrt(w.real() * w.real() + w.imag() * w.imag());
}

Complex saturate(Complex w) { return is_saturated(w) ? overflow_value() : w; }

}  // namespace

void ClassifierConfig::validate() const {
  std::ostringstream problem;
  if (!(bound_radius > 0.0)) problem << "bound_radius must be positive; ";
  if (!(bound_radius < escape_radius)) problem << "bound_radius must be below escape_radius; ";
  if (!(escape_radius < overflow_threshold)) problem << "escape_radius must be below overflow_threshold; ";
  if (max_iter < 1) problem << "max_iter must be at least 1; ";
  if (confirm_window < 1) problem << "confirm_window must be at least 1; ";
  const std::string text = problem.str();
  if (!text.empty()) throw Error(ErrorCode::Config, "invalid classifier config: " + text.substr(0, text.size() - 2));
}

const char* to_string(OrbitTag tag) {
  switch (tag) {
    case OrbitTag::Escaping: return "Escaping";
    case OrbitTag::Bounded: return "Bounded";
    case OrbitTag::Bungee: return "Bungee";
    case OrbitTag::FastEscaping: return "FastEscaping";
    case OrbitTag::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

OrbitTag parse_orbit_tag(const std::string& name) {
  for (int i = 0; i < kOrbitTagCount; ++i) {
    const auto tag = static_cast<OrbitTag>(i);
    if (name == to_string(tag)) return tag;
  }
  throw Error(ErrorCode::NotFound, "unknown orbit class '" + name + "'");
}

OrbitClass classify(const DynamicalMap& map, Complex z, const ClassifierConfig& cfg) {
  OrbitClass out;
  OrbitEvidence& ev = out.evidence;
  ev.min_modulus_after_burn_in = kInf;

  bool all_below_bound = true;
  bool awaiting_return = false;
  int run_length = 0;
  double run_floor = 0.0;

  Complex w = z;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    w = map(w);
    ev.iterations = k;
    const double m = modulus(w);
    if (!(m <= cfg.overflow_threshold)) {
      ev.saturated = true;
      ev.max_modulus = std::max(ev.max_modulus, m);
      if (!ev.first_escape_index) ev.first_escape_index = k;
      out.tag = OrbitTag::Escaping;
      return out;
    }
    ev.max_modulus = std::max(ev.max_modulus, m);
    if (k > cfg.confirm_window) ev.min_modulus_after_burn_in = std::min(ev.min_modulus_after_burn_in, m);
    if (m >= cfg.bound_radius) all_below_bound = false;

    if (m > cfg.escape_radius) {
      if (!ev.first_escape_index) ev.first_escape_index = k;
      awaiting_return = true;
      // The run's running minimum must stay at its entry modulus; a dip restarts the run.
      if (run_length == 0 || m < run_floor) {
        run_floor = m;
        run_length = 1;
      } else {
        ++run_length;
      }
      if (run_length >= cfg.confirm_window) {
        out.tag = OrbitTag::Escaping;
        return out;
      }
    } else {
      run_length = 0;
      if (awaiting_return && m < cfg.bound_radius) {
        ++ev.excursions;
        awaiting_return = false;
      }
    }
  }

  if (all_below_bound && cfg.max_iter >= cfg.confirm_window) {
    out.tag = OrbitTag::Bounded;
  } else if (ev.excursions >= 2) {
    out.tag = OrbitTag::Bungee;
  } else {
    out.tag = OrbitTag::Undetermined;
  }
  return out;
}

MaxModulus max_modulus(const DynamicalMap& map, double r, int samples, double overflow_threshold) {
  if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "max_modulus: r must be non-negative");
  if (samples < 64) throw Error(ErrorCode::InvalidArgument, "max_modulus: at least 64 samples required");

  const auto at = [&](double theta) { return modulus(map(std::polar(r, theta))); };
  if (r == 0.0) {
    const double v = at(0.0);
    return {v, !(v <= overflow_threshold)};
  }

  const double step = 2.0 * std::numbers::pi / samples;
  int best = 0;
  double best_value = -1.0;
  for (int k = 0; k < samples; ++k) {
    const double v = at(step * k);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }

  if (std::isfinite(best_value)) {
    // Golden-section search for the maximum on the bracket around the best sample.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = step * (best - 1);
    double hi = step * (best + 1);
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = at(a);
    double fb = at(b);
    for (int i = 0; i < 80 && hi - lo > 1e-15; ++i) {
      if (fa >= fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - inv_phi * (hi - lo);
        fa = at(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + inv_phi * (hi - lo);
        fb = at(b);
      }
    }
    best_value = std::max({best_value, fa, fb});
  }
  return {best_value, !(best_value <= overflow_threshold)};
}

ModulusLadder modulus_ladder(const DynamicalMap& map, double base_radius, int depth, int samples,
                             double overflow_threshold) {
  if (depth < 1) throw Error(ErrorCode::InvalidArgument, "modulus_ladder: depth must be at least 1");
  ModulusLadder ladder;
  ladder.base_radius = base_radius;
  ladder.depth = depth;

  const MaxModulus first = max_modulus(map, base_radius, samples, overflow_threshold);
  if (!(first.value > base_radius)) {
    std::ostringstream os;
    os << "M(R) = " << first.value << " does not exceed R = " << base_radius;
    throw Error(ErrorCode::RNotExpanding, os.str());
  }
  MaxModulus level = first;
  while (true) {
    if (level.saturated) {
      ladder.saturated = true;
      break;
    }
    ladder.values.push_back(level.value);
    if (static_cast<int>(ladder.values.size()) == depth) break;
    level = max_modulus(map, level.value, samples, overflow_threshold);
  }
  return ladder;
}

FastEscapeCertificate classify_fast_escaping(const DynamicalMap& map, Complex z, const ModulusLadder& ladder,
                                             const ClassifierConfig& cfg) {
  if (classify(map, z, cfg).tag != OrbitTag::Escaping) return {};

  const int n_max = cfg.max_iter;
  std::vector<double> orbit(n_max + 1, kInf);
  Complex w = z;
  orbit[0] = modulus(w);
  for (int k = 1; k <= n_max; ++k) {
    w = map(w);
    const double m = modulus(w);
    if (!(m <= cfg.overflow_threshold)) break;  // remaining entries stay infinite
    orbit[k] = m;
  }

  const auto level = [&](int n) {
    return n <= static_cast<int>(ladder.values.size()) ? ladder.values[n - 1] : kInf;
  };
  for (int shift = 0; shift <= n_max / 2; ++shift) {
    bool dominates = true;
    for (int n = 1; n <= ladder.depth && n + shift <= n_max; ++n) {
      // Ladder levels carry rounding from the circle parametrization; allow for it.
      if (orbit[n + shift] < level(n) * (1.0 - 1e-12)) {
        dominates = false;
        break;
      }
    }
    if (dominates) return {true, shift};
  }
  return {};
}

void MapRegistry::add(const std::string& name, MapFactory factory) { factories_[name] = std::move(factory); }

DynamicalMap MapRegistry::make(const std::string& name, const MapParams& params) const {
  const auto it = factories_.find(name);
  if (it == factories_.end()) {
    std::string known;
    for (const auto& [key, _] : factories_) known += (known.empty() ? "" : ", ") + key;
    throw Error(ErrorCode::NotFound, "unknown map '" + name + "' (known: " + known + ")");
  }
  return it->second(params);
}

std::vector<std::string> MapRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [key, _] : factories_) out.push_back(key);
  return out;
}

DynamicalMap erf_family_map(Complex alpha, Complex beta) {
  if (alpha == 0.0) throw Error(ErrorCode::InvalidArgument, "erf family: alpha must be nonzero");
  DynamicalMap m;
  m.eval = [alpha, beta](Complex z) { return is_saturated(z) ? overflow_value() : f_ab(z, alpha, beta); };
  m.derivative = [alpha](Complex z) { return is_saturated(z) ? overflow_value() : f_ab_prime(z, alpha); };
  m.label = "erf-family";
  m.known_asymptotic_values = {alpha + beta, -alpha + beta};
  return m;
}

DynamicalMap exp_map() {
  DynamicalMap m;
  m.eval = [](Complex z) {
    if (is_saturated(z) || z.real() > 709.0) return overflow_value();
    return std::exp(z);
  };
  m.derivative = m.eval;
  m.label = "exp";
  m.known_asymptotic_values = {Complex(0.0, 0.0)};
  return m;
}

DynamicalMap quadratic_map(Complex c) {
  DynamicalMap m;
  m.eval = [c](Complex z) {
    if (is_saturated(z)) return overflow_value();
    const double re = (z.real() - z.imag()) * (z.real() + z.imag()) + c.real();
    const double im = 2.0 * z.real() * z.imag() + c.imag();
    return saturate({re, im});
  };
  m.derivative = [](Complex z) { return saturate(2.0 * z); };
  m.is_polynomial = true;
  m.label = "quadratic";
  return m;
}

DynamicalMap compose(DynamicalMap outer, DynamicalMap inner) {
  DynamicalMap m;
  m.label = outer.label + " o " + inner.label;
  m.is_polynomial = outer.is_polynomial && inner.is_polynomial;
  if (outer.derivative && inner.derivative) {
    m.derivative = [od = *outer.derivative, id = *inner.derivative, ie = inner.eval](Complex z) {
      const Complex inner_value = ie(z);
      if (is_saturated(inner_value)) return overflow_value();
      return saturate(od(inner_value) * id(z));
    };
  }
  m.eval = [oe = std::move(outer.eval), ie = std::move(inner.eval)](Complex z) {
    const Complex inner_value = ie(z);
    return is_saturated(inner_value) ? overflow_value() : oe(inner_value);
  };
  return m;
}

namespace {

double param(const MapParams& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

MapRegistry builtin_registry() {
  MapRegistry registry;
  registry.add("erf-paper", [](const MapParams&) {
    const ErfFamilyParams& p = reference_params();
    DynamicalMap m = erf_family_map(p.alpha, p.beta);
    m.label = "erf-paper";
    return m;
  });
  registry.add("erf-family", [](const MapParams& params) {
    const ErfFamilyParams& p = reference_params();
    const Complex alpha(param(params, "alpha_re", p.alpha.real()), param(params, "alpha_im", p.alpha.imag()));
    const Complex beta(param(params, "beta_re", p.beta.real()), param(params, "beta_im", p.beta.imag()));
    return erf_family_map(alpha, beta);
  });
  registry.add("exp", [](const MapParams&) { return exp_map(); });
  registry.add("quadratic", [](const MapParams& params) {
    return quadratic_map({param(params, "c_re", 0.0), param(params, "c_im", 0.0)});
  });
  return registry;
}

std::vector<DynamicalMap> builtin_maps() {
  const MapRegistry registry = builtin_registry();
  std::vector<DynamicalMap> out;
  for (const auto& name : registry.names()) out.push_back(registry.make(name));
  return out;
}

}  // namespace ed
