#include "entire_dynamics/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>

#include <CLI11.hpp>

#include "entire_dynamics/pnm.hpp"
#include "entire_dynamics/topology.hpp"

namespace ed {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

// JSON has no infinity; saturated moduli become null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json pixel_json(Pixel p) { return json::array({p.x, p.y}); }

json counts_json(const ClassificationRaster& raster) {
  json out = json::object();
  const auto counts = raster.counts();
  for (int i = 0; i < kOrbitTagCount; ++i) out[to_string(static_cast<OrbitTag>(i))] = counts[i];
  return out;
}

json spiderweb_json(const SpiderwebResult& s) {
  return {{"spiderweb_candidate", s.candidate},
          {"nested_domain_count", s.nested_domain_count},
          {"set_components", s.set_components},
          {"bounded_complementary_components", s.bounded_complementary_components}};
}

json evidence_json(const OrbitEvidence& e) {
  return {{"iterations", e.iterations},
          {"max_modulus", finite_or_null(e.max_modulus)},
          {"min_modulus_after_burn_in", finite_or_null(e.min_modulus_after_burn_in)},
          {"first_escape_index", e.first_escape_index ? json(*e.first_escape_index) : json(nullptr)},
          {"excursions", e.excursions},
          {"saturated", e.saturated}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

DynamicalMap make_map(const RunConfig& config) { return builtin_registry().make(config.map_name, config.map_params); }

// Points worth probing for separation: the asymptotic values and the viewport center.
std::vector<std::pair<std::string, Complex>> probe_points(const DynamicalMap& map, const GridSpec& grid) {
  std::vector<std::pair<std::string, Complex>> out;
  for (std::size_t i = 0; i < map.known_asymptotic_values.size(); ++i) {
    out.emplace_back("asymptotic_value_" + std::to_string(i), map.known_asymptotic_values[i]);
  }
  out.emplace_back("viewport_center", grid.center);
  return out;
}

json mask_json(const PixelSet& set) {
  const std::size_t n = set.count();
  return {{"pixels", n}, {"components_with_infinity", n ? json(connected_with_infinity(set)) : json(nullptr)}};
}

json analyze_raster(const RunConfig& config, const DynamicalMap& map, const GridSpec& grid) {
  const ClassificationRaster raster = rasterize(map, grid, config.classifier);
  const auto has = [&](const char* name) {
    return std::find(config.analyses.begin(), config.analyses.end(), name) != config.analyses.end();
  };
  const PixelSet escaping = escaping_mask(raster);

  json out = {{"px_w", grid.px_w}, {"px_h", grid.px_h}, {"counts", counts_json(raster)}};
  if (has("connectivity")) {
    out["connectivity"] = {{"escaping", mask_json(escaping)},
                           {"bounded", mask_json(bounded_mask(raster))},
                           {"bungee", mask_json(bungee_mask(raster))}};
  }
  if (has("spiderweb")) out["spiderweb"] = {{"escaping", spiderweb_json(spiderweb_detect(escaping))}};
  if (has("corollary")) {
    const CorollaryVerdict v = corollary_check(raster);
    out["corollary"] = {{"escaping_spiderweb", v.escaping_spiderweb.candidate},
                        {"bounded_or_bungee_components_with_infinity", v.bounded_or_bungee_components},
                        {"bounded_or_bungee_disconnected", v.bounded_or_bungee_disconnected},
                        {"consistent", v.consistent}};
  }
  if (has("separation")) {
    json samples = json::array();
    for (const auto& [name, z] : probe_points(map, grid)) {
      json s = {{"name", name}, {"point", complex_json(z)}};
      const auto p = grid.pixel_of(z);
      if (!p) {
        s["status"] = "outside viewport";
      } else if (escaping.contains(*p)) {
        s["pixel"] = pixel_json(*p);
        s["status"] = "in escaping set";
      } else {
        s["pixel"] = pixel_json(*p);
        s["separated_by_escaping_set"] = separates_from_infinity(escaping, *p);
      }
      samples.push_back(std::move(s));
    }
    out["separation"] = std::move(samples);
  }
  if (has("julia")) {
    const PixelSet julia = julia_proxy_mask(raster);
    json j = mask_json(julia);
    j["spiderweb"] = spiderweb_json(spiderweb_detect(julia));
    j["unchecked_hypotheses"] = json::array({"no multiply connected Fatou components"});
    out["julia"] = std::move(j);
  }
  return out;
}

json analyze_mask_file(const RunConfig& config) {
  const PixelSet set = load_pixel_set(config.input_mask);
  const Pixel center{set.width / 2, set.height / 2};
  const std::vector<Pixel> probes{center};
  const TopologyReport report = analyze_set(set, probes);
  json separated = json::array();
  for (const auto& s : report.separated_points) {
    separated.push_back({{"pixel", pixel_json(s.pixel)}, {"separated", s.separated}});
  }
  return {{"source", config.input_mask},
          {"width", set.width},
          {"height", set.height},
          {"pixels", set.count()},
          {"components_with_infinity", set.count() ? json(report.components_with_infinity) : json(nullptr)},
          {"spiderweb", spiderweb_json(report.spiderweb)},
          {"separated_points", separated}};
}

GridSpec scaled_grid(const GridSpec& base, int px) {
  GridSpec g = base;
  g.px_w = px;
  g.px_h = std::max(1, static_cast<int>(std::lround(static_cast<double>(base.px_h) * px / base.px_w)));
  return g;
}

}  // namespace

json config_to_json(const RunConfig& config) {
  const RunConfig r = config.resolved();
  const ClassifierConfig& c = r.classifier;
  return {{"map_name", r.map_name},
          {"map_params", r.map_params},
          {"grid", {{"center", complex_json(*r.grid_center)}, {"width", *r.grid_width}, {"px_w", r.px_w},
                    {"px_h", r.px_h}}},
          {"classifier", {{"escape_radius", c.escape_radius}, {"bound_radius", c.bound_radius},
                          {"max_iter", c.max_iter}, {"confirm_window", c.confirm_window},
                          {"overflow_threshold", c.overflow_threshold}}},
          {"outputs", {{"image", r.output_image}, {"report", r.output_report}}},
          {"inputs", {{"mask", r.input_mask}}},
          {"analyses", r.analyses},
          {"seed_constants", {{"seed", complex_json(r.seed)}, {"tol", r.tol}}},
          {"resolution_pair", json::array({r.resolution_pair.first, r.resolution_pair.second})}};
}

json cmd_derive_params(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw Error(ErrorCode::Config, "seed_constants.tol must be positive");
  const ErfRoot root = solve_erf_equals_one(config.seed, config.tol);
  const ErfFamilyParams p = derive_params(root.root, std::max(kResidualTolerance, config.tol));
  const auto [plus, minus] = asymptotic_values(p);
  return {{"command", "derive-params"},
          {"config", config_to_json(config)},
          {"c", complex_json(p.c)},
          {"alpha", complex_json(p.alpha)},
          {"beta", complex_json(p.beta)},
          {"fixed_point", complex_json(p.fixed_point())},
          {"asymptotic_values", json::array({complex_json(plus), complex_json(minus)})},
          {"newton_iterations", root.iterations},
          {"erf_residual", root.residual},
          {"fixed_point_residual", p.fixed_point_residual},
          {"multiplier_residual", p.multiplier_residual}};
}

json cmd_render(const RunConfig& config) {
  config.validate();
  if (config.output_image.empty()) throw Error(ErrorCode::Config, "outputs.image must be set for render");
  const DynamicalMap map = make_map(config);
  const GridSpec grid = config.grid();
  const ClassificationRaster raster = rasterize(map, grid, config.classifier);

  RenderOptions options;
  json markers = json::array();
  for (Complex v : map.known_asymptotic_values) {
    options.markers.push_back({v, std::max(2, grid.px_w / 100), {0, 0, 0}});
    const auto p = grid.pixel_of(v);
    markers.push_back({{"point", complex_json(v)}, {"pixel", p ? pixel_json(*p) : json(nullptr)}});
  }
  render(raster, options, config.output_image);

  std::size_t julia_pixels = 0;
  for (auto b : raster.julia_mask) julia_pixels += b;
  return {{"command", "render"},
          {"config", config_to_json(config)},
          {"image", config.output_image},
          {"counts", counts_json(raster)},
          {"total", raster.cells.size()},
          {"julia_mask_pixels", julia_pixels},
          {"markers", markers}};
}

json cmd_analyze(const RunConfig& config) {
  config.validate();
  json out = {{"command", "analyze"},
              {"config", config_to_json(config)},
              {"scale", "all verdicts hold at raster scale only"}};
  if (!config.input_mask.empty()) {
    out["mask"] = analyze_mask_file(config);
    return out;
  }
  const DynamicalMap map = make_map(config);
  const GridSpec base = config.grid();
  json runs = json::array();
  for (int px : {config.resolution_pair.first, config.resolution_pair.second}) {
    runs.push_back(analyze_raster(config, map, scaled_grid(base, px)));
  }
  out["resolutions"] = std::move(runs);
  return out;
}

json cmd_classify(Complex point, const RunConfig& config) {
  config.classifier.validate();
  const DynamicalMap map = make_map(config);
  const OrbitClass result = classify(map, point, config.classifier);
  return {{"command", "classify"},
          {"config", config_to_json(config)},
          {"point", complex_json(point)},
          {"tag", to_string(result.tag)},
          {"evidence", evidence_json(result.evidence)}};
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotFound: return 2;
    case ErrorCode::NonConvergence:
    case ErrorCode::DerivativeUnderflow:
    case ErrorCode::PrecisionLoss:
    case ErrorCode::RNotExpanding: return 3;
    case ErrorCode::Io: return 4;
    case ErrorCode::PointInSet:
    case ErrorCode::EmptySet: return 1;
  }
  return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamics of entire functions: parameters, orbit classes, rasters and topology", "edyn"};
  app.require_subcommand(1);

  // Flag values are kept as text and routed through apply_setting so the config file and
  // the command line share one parser.
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
    std::string value;
  };
  std::vector<Flag> flags = {
      {"--map", "map_name", "map name (erf-paper, erf-family, exp, quadratic)", {}},
      {"--center", "grid.center", "viewport center RE,IM", {}},
      {"--width", "grid.width", "viewport width in plane units", {}},
      {"--max-iter", "classifier.max_iter", "iteration budget N", {}},
      {"--confirm-window", "classifier.confirm_window", "escape confirmation window W", {}},
      {"--escape-radius", "classifier.escape_radius", "escape radius", {}},
      {"--bound-radius", "classifier.bound_radius", "bound radius", {}},
      {"--out", "outputs.image", "image output path (PPM)", {}},
      {"--report", "outputs.report", "JSON report path", {}},
      {"--mask", "inputs.mask", "analyze this PPM/PGM mask instead of a raster", {}},
      {"--analyses", "analyses", "comma-separated analyses", {}},
      {"--seed", "seed_constants.seed", "Newton seed RE,IM", {}},
      {"--tol", "seed_constants.tol", "Newton residual tolerance", {}},
      {"--resolution-pair", "resolution_pair", "two raster sizes A,B for analyze", {}},
  };
  std::string config_path;
  std::string save_config;
  std::string px;
  std::vector<std::string> params;
  std::string point;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--save-config", save_config, "write the resolved config to this path");
    for (Flag& f : flags) sub->add_option(f.name, f.value, f.help);
    sub->add_option("--px", px, "pixels per side N, or W,H");
    sub->add_option("--param", params, "map parameter KEY=VALUE (repeatable)");
  };
  CLI::App* derive = app.add_subcommand("derive-params", "solve erf(c) = 1 and derive alpha, beta");
  CLI::App* render_cmd = app.add_subcommand("render", "classify a viewport and write a PPM image");
  CLI::App* analyze = app.add_subcommand("analyze", "raster-scale topology of the orbit classes");
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a single orbit");
  for (CLI::App* sub : {derive, render_cmd, analyze, classify_cmd}) add_common(sub);
  classify_cmd->add_option("point,--point", point, "starting point RE,IM")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
    for (const Flag& f : flags) {
      if (!f.value.empty()) apply_setting(config, f.key, f.value);
    }
    if (!px.empty()) {
      if (px.find(',') != std::string::npos) {
        std::tie(config.px_w, config.px_h) = parse_int_pair(px);
      } else {
        apply_setting(config, "grid.px_w", px);
        apply_setting(config, "grid.px_h", px);
      }
    }
    for (const std::string& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::Config, "--param expects KEY=VALUE, got '" + kv + "'");
      apply_setting(config, "map_params." + kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (render_cmd->parsed() && config.output_image.empty()) config.output_image = "render.ppm";
    if (!save_config.empty()) pnm::write_file(save_config, config.to_text());

    json report;
    if (derive->parsed()) {
      report = cmd_derive_params(config);
    } else if (render_cmd->parsed()) {
      report = cmd_render(config);
    } else if (analyze->parsed()) {
      report = cmd_analyze(config);
    } else {
      report = cmd_classify(parse_complex(point), config);
    }
    report["timestamp"] = utc_timestamp();
    const std::string text = report.dump(2) + "\n";
    if (!config.output_report.empty()) pnm::write_file(config.output_report, text);
    out << text;
    return 0;
  } catch (const Error& e) {
    err << "edyn: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "edyn: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ed
