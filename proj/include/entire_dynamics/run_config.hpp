#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entire_dynamics/classifier.hpp"
#include "entire_dynamics/params.hpp"
#include "entire_dynamics/raster.hpp"

namespace ed {

inline const std::vector<std::string> kAnalysisNames = {"connectivity", "spiderweb", "corollary", "separation",
                                                        "julia"};

/// Everything a run depends on. Unset viewport fields fall back to a per-map default when
/// the config is resolved; a resolved config reproduces the run on its own.
struct RunConfig {
  std::string map_name = "erf-paper";
  MapParams map_params;

  std::optional<Complex> grid_center;
  std::optional<double> grid_width;
  int px_w = 400;
  int px_h = 400;

  ClassifierConfig classifier;

  std::string output_image;
  std::string output_report;
  std::string input_mask;  // analyze a PPM/PGM mask instead of a computed raster

  std::vector<std::string> analyses = {"connectivity", "spiderweb", "corollary"};

  Complex seed = kTabulatedRootSeed;
  double tol = kDefaultRootTolerance;

  std::pair<int, int> resolution_pair{400, 800};

  /// Fills the viewport defaults for map_name.
  RunConfig resolved() const;
  /// Grid of the resolved config.
  GridSpec grid() const;
  /// Throws Error(Config) on any invalid field, Error(NotFound) for an unknown map.
  void validate() const;

  /// "key = value" lines, one per field; `#` starts a comment.
  std::string to_text() const;
  static RunConfig from_text(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);

  bool operator==(const RunConfig&) const;
};

/// Viewport used when a config leaves it unset.
GridSpec default_viewport(const std::string& map_name, int px_w, int px_h);

/// Applies one "key = value" assignment; throws Error(Config) for unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// "re,im" or a single real.
Complex parse_complex(const std::string& text);
/// "a,b" with positive integers.
std::pair<int, int> parse_int_pair(const std::string& text);

}  // namespace ed
