#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcnn/protocols.hpp"

namespace mcnn {

// Batch-run description parsed from the line-oriented `key = value` config
// format with [section] headers. Unknown keys and sections are errors.
struct RunConfig {
  DynamicsKind dynamics = DynamicsKind::ModifiedCNN;
  std::optional<TemplateName> template_name;
  std::optional<Template> inline_template;
  std::optional<InitRule> init;
  std::string image_path;
  std::optional<double> boundary_v;
  std::optional<double> boundary_u;
  double dt = 0.01;
  std::optional<double> t_end;
  std::vector<double> snapshot_times;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  double parasitic = 0.0;
  std::optional<MemductanceProfile> profile;
  ExperimentScript script;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Assemble the grid a config describes (named or inline template, boundary
// overrides, init rule, profile binding).
GridState grid_from_config(const RunConfig& config, const Image& input);

// The resolved configuration (defaults included) as manifest entries.
std::vector<std::pair<std::string, std::string>> manifest_entries(const RunConfig& config);

DynamicsKind dynamics_from_string(std::string_view text);

}  // namespace mcnn
