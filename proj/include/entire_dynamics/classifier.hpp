#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entire_dynamics/params.hpp"
#include "entire_dynamics/special_functions.hpp"

namespace ed {

/// An entire function together with what the classifier needs to know about it.
/// Evaluation must be total: values out of range come back saturated (see is_saturated).
struct DynamicalMap {
  std::function<Complex(Complex)> eval;
  std::optional<std::function<Complex(Complex)>> derivative;
  bool is_polynomial = false;
  std::string label;
  std::vector<Complex> known_asymptotic_values;  // empty for polynomials

  Complex operator()(Complex z) const { return eval(z); }
};

/// Finite-time stand-ins for the limit definitions of the escaping, bounded-orbit and
/// bungee sets.
struct ClassifierConfig {
  double escape_radius = 1e3;         // R_esc
  double bound_radius = 50.0;         // K_b
  int max_iter = 2000;                // N
  int confirm_window = 50;            // W
  double overflow_threshold = 1e150;  // moduli above this count as escaped

  /// Throws Error(Config) unless 0 < K_b < R_esc < overflow_threshold and N, W >= 1.
  void validate() const;
};

enum class OrbitTag : std::uint8_t { Escaping, Bounded, Bungee, FastEscaping, Undetermined };

inline constexpr int kOrbitTagCount = 5;

const char* to_string(OrbitTag tag);
/// Inverse of to_string. Throws Error(NotFound) for unknown names.
OrbitTag parse_orbit_tag(const std::string& name);

struct OrbitEvidence {
  int iterations = 0;          // iterates computed
  double max_modulus = 0.0;    // over iterates 1..iterations
  double min_modulus_after_burn_in = 0.0;  // over iterates past the first W; +inf if none
  std::optional<int> first_escape_index;   // first iterate with modulus above R_esc
  int excursions = 0;          // completed rises above R_esc followed by a return below K_b
  bool saturated = false;      // overflow reached

  bool operator==(const OrbitEvidence&) const = default;
};

struct OrbitClass {
  OrbitTag tag = OrbitTag::Undetermined;
  OrbitEvidence evidence;

  bool operator==(const OrbitClass&) const = default;
};

/// Classifies the orbit of z by iterating at most cfg.max_iter times.
///
///  - Escaping: overflow saturation, or W consecutive iterates above R_esc none of which
///    drops below the modulus at which the run started.
///  - Bounded: all N iterates below K_b, with N >= W (a shorter budget cannot confirm it).
///  - Bungee: not escaping, and at least two excursions above R_esc each followed by a
///    return below K_b.
///  - Undetermined otherwise.
OrbitClass classify(const DynamicalMap& map, Complex z, const ClassifierConfig& cfg);

struct MaxModulus {
  double value = 0.0;
  bool saturated = false;  // value exceeded the overflow threshold
};

/// Lower estimate of max_{|z| = r} |f(z)| from `samples` equally spaced points, refined
/// by golden-section search around the best sample. Requires r >= 0, samples >= 64.
MaxModulus max_modulus(const DynamicalMap& map, double r, int samples = 4096,
                       double overflow_threshold = 1e150);

/// M(R), M(M(R)), ... iterated up to `depth` values.
struct ModulusLadder {
  double base_radius = 0.0;
  std::vector<double> values;
  int depth = 0;           // requested number of levels
  bool saturated = false;  // the level after values.back() exceeded the overflow threshold
};

/// Throws Error(RNotExpanding) when M(R) <= R.
ModulusLadder modulus_ladder(const DynamicalMap& map, double base_radius, int depth, int samples = 4096,
                             double overflow_threshold = 1e150);

struct FastEscapeCertificate {
  bool fast_escaping = false;
  std::optional<int> shift;  // least l with |f^(n+l)(z)| >= M^n(R) on the checked range
};

/// Finite truncation of the fast-escaping condition: some l <= N/2 with
/// |f^(n+l)(z)| >= M^n(R) for all n <= ladder.depth and n + l <= N, up to a relative
/// slack of 1e-12 for rounding in the ladder. Levels beyond a
/// saturated ladder are infinite and can only be matched by a saturated orbit. Never true
/// unless classify() reports Escaping for the same orbit.
FastEscapeCertificate classify_fast_escaping(const DynamicalMap& map, Complex z, const ModulusLadder& ladder,
                                             const ClassifierConfig& cfg);

// Registry of named maps.

using MapParams = std::map<std::string, double>;
using MapFactory = std::function<DynamicalMap(const MapParams&)>;

class MapRegistry {
 public:
  void add(const std::string& name, MapFactory factory);
  /// Throws Error(NotFound) for unknown names.
  DynamicalMap make(const std::string& name, const MapParams& params = {}) const;
  bool contains(const std::string& name) const { return factories_.count(name) != 0; }
  std::vector<std::string> names() const;

 private:
  std::map<std::string, MapFactory> factories_;
};

DynamicalMap erf_family_map(Complex alpha, Complex beta);
DynamicalMap exp_map();
DynamicalMap quadratic_map(Complex c);
/// outer(inner(z)); polynomial only if both are.
DynamicalMap compose(DynamicalMap outer, DynamicalMap inner);

/// "erf-paper", "erf-family" (alpha_re, alpha_im, beta_re, beta_im; defaults are the
/// reference parameters), "exp" and "quadratic" (c_re, c_im). Further maps, including
/// compositions built with compose(), are registered through MapRegistry::add.
MapRegistry builtin_registry();

/// Every built-in map at its default parameters.
std::vector<DynamicalMap> builtin_maps();

}  // namespace ed
