#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "swaptest/noise.hpp"
#include "swaptest/protocols.hpp"

namespace swaptest {

// One sweep axis: a recipe parameter addressed as "b.<name>", "c.<name>"
// or "both.<name>", plus a strictly monotone grid.
struct SweepAxis {
  std::string parameter;
  std::vector<double> grid;
};

struct ExperimentConfig {
  enum class Kind { Sweep, Calibration };
  Kind kind = Kind::Sweep;

  std::array<int, 3> mode_dims{20, 20, 20};
  PrepRecipe prep_b;
  PrepRecipe prep_c;
  SweepAxis sweep;
  std::optional<SweepAxis> sweep2;  // outer axis of a 2-D sweep
  std::optional<int> shots;
  uint64_t seed = 0;
  std::optional<NoiseConfig> noise;
  std::optional<double> contrast_gamma;
  std::string output;

  // calibration only: coupling strength (rad/s); sweep.grid holds the
  // gate durations in seconds
  double omega0 = 0.0;
};

// Schema check without execution; returns every violation, not just the
// first. Empty result means the file is valid.
std::vector<std::string> validate_config_file(const std::string& path);

// Parse + validate; throws std::runtime_error carrying the full error list.
ExperimentConfig load_config(const std::string& path);

// Applies one sweep-axis value to the targeted recipe parameter(s).
void apply_sweep_value(ExperimentConfig& config, const std::string& parameter, double value);

// true if `name` is a settable parameter of the recipe kind
bool recipe_has_parameter(PrepKind kind, const std::string& name);

std::string prep_kind_name(PrepKind kind);

}  // namespace swaptest
