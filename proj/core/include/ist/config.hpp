#pragma once

#include <map>
#include <string>

#include "ist/fields.hpp"

namespace ist {

/// Scenario description shared by every CLI subcommand.  Loaded from a
/// "key = value" file (dotted keys, '#' comments) and adjustable with
/// command-line overrides of the same syntax.
struct ScenarioConfig {
  int n = 128;
  double extent = 6.0;  // grid is [-extent, extent]^2

  double b1 = 1.0, b2 = 0.0, b3 = -1.0;

  std::string potential_kind = "gaussian";  // gaussian | zero | file
  std::string potential_file;
  double amplitude = 0.1;
  double width = 1.0;
  double center_x = 0.0, center_y = 0.0;
  /// Per-component complex weights of the shared envelope.
  Complex weight[4] = {{1.0, 0.0}, {0.8, 0.2}, {-0.6, 0.1}, {0.5, -0.3}};
  double support_fraction = Potential::kDefaultSupportFraction;

  double t_final = 0.5;
  double tolerance = 5e-2;
  std::string format = "text";  // text | binary
  bool strict = false;

  /// Parses a config file.  Unknown keys are errors.
  static ScenarioConfig load(const std::string& path);
  static ScenarioConfig from_map(const std::map<std::string, std::string>& kv);

  /// Applies one "key=value" override.
  void apply_override(const std::string& kv);

  void validate() const;

  Grid2D make_grid() const;
  LaxParameters make_lax() const;
  /// Builds the configured initial potential (loads potential.file for
  /// kind "file"; text or binary is chosen by `format`).
  Potential make_potential() const;
};

/// Parses "key = value" lines with '#' comments into a map.
std::map<std::string, std::string> parse_kv_file(const std::string& path);

}  // namespace ist
