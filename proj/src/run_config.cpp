#include "entire_dynamics/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "entire_dynamics/error.hpp"

namespace ed {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex_text(Complex z) { return number(z.real()) + "," + number(z.imag()); }

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& why) {
  throw Error(ErrorCode::Config, "bad value '" + value + "' for " + key + ": " + why);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size()) bad_value(key, text, "expected a number");
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size()) bad_value(key, text, "expected an integer");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

bool is_erf_map(const std::string& name) { return name == "erf-paper" || name == "erf-family"; }

}  // namespace

Complex parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_double("complex value", parts[0]), 0.0};
  if (parts.size() != 2) bad_value("complex value", text, "expected RE,IM");
  return {parse_double("complex value", parts[0]), parse_double("complex value", parts[1])};
}

std::pair<int, int> parse_int_pair(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) bad_value("pair", text, "expected A,B");
  const std::pair<int, int> out{parse_int("pair", parts[0]), parse_int("pair", parts[1])};
  if (out.first < 1 || out.second < 1) bad_value("pair", text, "entries must be positive");
  return out;
}

GridSpec default_viewport(const std::string& map_name, int px_w, int px_h) {
  if (is_erf_map(map_name)) {
    GridSpec g = reference_viewport(px_w);
    g.px_h = px_h;
    return g;
  }
  return {{0.0, 0.0}, map_name == "exp" ? 8.0 : 4.0, px_w, px_h};
}

RunConfig RunConfig::resolved() const {
  RunConfig out = *this;
  const GridSpec g = default_viewport(map_name, px_w, px_h);
  if (!out.grid_center) out.grid_center = g.center;
  if (!out.grid_width) out.grid_width = g.width;
  return out;
}

GridSpec RunConfig::grid() const {
  const RunConfig r = resolved();
  return {*r.grid_center, *r.grid_width, px_w, px_h};
}

void RunConfig::validate() const {
  if (!builtin_registry().contains(map_name)) throw Error(ErrorCode::NotFound, "unknown map '" + map_name + "'");
  grid().validate();
  classifier.validate();
  for (const auto& a : analyses) {
    if (std::find(kAnalysisNames.begin(), kAnalysisNames.end(), a) == kAnalysisNames.end()) {
      throw Error(ErrorCode::Config, "unknown analysis '" + a + "'");
    }
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::Config, "seed_constants.tol must be positive");
  if (resolution_pair.first < 1 || resolution_pair.second < 1) {
    throw Error(ErrorCode::Config, "resolution_pair entries must be positive");
  }
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "map_name") {
    if (value.empty()) bad_value(key, raw, "must not be empty");
    c.map_name = value;
  } else if (key.rfind("map_params.", 0) == 0 && key.size() > 11) {
    c.map_params[key.substr(11)] = parse_double(key, value);
  } else if (key == "grid.center") {
    c.grid_center = parse_complex(value);
  } else if (key == "grid.width") {
    c.grid_width = parse_double(key, value);
  } else if (key == "grid.px_w") {
    c.px_w = parse_int(key, value);
  } else if (key == "grid.px_h") {
    c.px_h = parse_int(key, value);
  } else if (key == "classifier.escape_radius") {
    c.classifier.escape_radius = parse_double(key, value);
  } else if (key == "classifier.bound_radius") {
    c.classifier.bound_radius = parse_double(key, value);
  } else if (key == "classifier.max_iter") {
    c.classifier.max_iter = parse_int(key, value);
  } else if (key == "classifier.confirm_window") {
    c.classifier.confirm_window = parse_int(key, value);
  } else if (key == "classifier.overflow_threshold") {
    c.classifier.overflow_threshold = parse_double(key, value);
  } else if (key == "outputs.image") {
    c.output_image = value;
  } else if (key == "outputs.report") {
    c.output_report = value;
  } else if (key == "inputs.mask") {
    c.input_mask = value;
  } else if (key == "analyses") {
    c.analyses = value.empty() ? std::vector<std::string>{} : split(value, ',');
  } else if (key == "seed_constants.seed") {
    c.seed = parse_complex(value);
  } else if (key == "seed_constants.tol") {
    c.tol = parse_double(key, value);
  } else if (key == "resolution_pair") {
    c.resolution_pair = parse_int_pair(value);
  } else {
    throw Error(ErrorCode::Config, "unknown config key '" + key + "'");
  }
}

std::string RunConfig::to_text() const {
  const RunConfig r = resolved();
  std::ostringstream out;
  out << "map_name = " << r.map_name << "\n";
  for (const auto& [k, v] : r.map_params) out << "map_params." << k << " = " << number(v) << "\n";
  out << "grid.center = " << complex_text(*r.grid_center) << "\n"
      << "grid.width = " << number(*r.grid_width) << "\n"
      << "grid.px_w = " << r.px_w << "\n"
      << "grid.px_h = " << r.px_h << "\n"
      << "classifier.escape_radius = " << number(r.classifier.escape_radius) << "\n"
      << "classifier.bound_radius = " << number(r.classifier.bound_radius) << "\n"
      << "classifier.max_iter = " << r.classifier.max_iter << "\n"
      << "classifier.confirm_window = " << r.classifier.confirm_window << "\n"
      << "classifier.overflow_threshold = " << number(r.classifier.overflow_threshold) << "\n"
      << "outputs.image = " << r.output_image << "\n"
      << "outputs.report = " << r.output_report << "\n"
      << "inputs.mask = " << r.input_mask << "\n";
  out << "analyses = ";
  for (std::size_t i = 0; i < r.analyses.size(); ++i) out << (i ? "," : "") << r.analyses[i];
  out << "\n"
      << "seed_constants.seed = " << complex_text(r.seed) << "\n"
      << "seed_constants.tol = " << number(r.tol) << "\n"
      << "resolution_pair = " << r.resolution_pair.first << "," << r.resolution_pair.second << "\n";
  return out.str();
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int number_of_line = 0;
  while (std::getline(in, line)) {
    ++number_of_line;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::Config, "line " + std::to_string(number_of_line) + ": expected key = value");
    }
    try {
      apply_setting(c, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(number_of_line) + ": " + e.what());
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::Io, "cannot open config '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  return from_text(text);
}

bool RunConfig::operator==(const RunConfig& o) const {
  const ClassifierConfig& a = classifier;
  const ClassifierConfig& b = o.classifier;
  return map_name == o.map_name && map_params == o.map_params && grid_center == o.grid_center &&
         grid_width == o.grid_width && px_w == o.px_w && px_h == o.px_h && a.escape_radius == b.escape_radius &&
         a.bound_radius == b.bound_radius && a.max_iter == b.max_iter && a.confirm_window == b.confirm_window &&
         a.overflow_threshold == b.overflow_threshold && output_image == o.output_image &&
         output_report == o.output_report && input_mask == o.input_mask && analyses == o.analyses &&
         seed == o.seed && tol == o.tol && resolution_pair == o.resolution_pair;
}

}  // namespace ed
