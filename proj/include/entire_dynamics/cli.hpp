#pragma once

#include <iosfwd>

#include <json.hpp>

#include "entire_dynamics/error.hpp"
#include "entire_dynamics/run_config.hpp"

namespace ed {

// Each command returns its JSON report without the timestamp; run_cli adds it. The
// report embeds the resolved config under "config".

nlohmann::json config_to_json(const RunConfig& config);

nlohmann::json cmd_derive_params(const RunConfig& config);
/// Writes config.output_image and returns class counts and marker placements.
nlohmann::json cmd_render(const RunConfig& config);
/// Analyzes the rasters at both sizes of config.resolution_pair, or the mask file in
/// config.input_mask when set.
nlohmann::json cmd_analyze(const RunConfig& config);
nlohmann::json cmd_classify(Complex point, const RunConfig& config);

/// 2 config, 3 numerical nonconvergence, 4 IO, 1 anything else.
int exit_code_for(ErrorCode code);

/// Entry point of the edyn executable. Reports go to `out` (and to --report when given),
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ed
