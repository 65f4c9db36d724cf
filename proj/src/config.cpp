#include "swaptest/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace swaptest {

using nlohmann::json;

namespace {

const std::map<std::string, PrepKind> kKindNames = {
    {"fock", PrepKind::Fock},
    {"superposition01", PrepKind::Superposition01},
    {"coherent", PrepKind::Coherent},
    {"squeezed", PrepKind::Squeezed},
    {"cat", PrepKind::Cat},
    {"mixed_rho1", PrepKind::MixedRho1},
    {"mixed_rho2", PrepKind::MixedRho2},
};

// settable parameters per recipe kind
const std::map<PrepKind, std::vector<std::string>> kKindParams = {
    {PrepKind::Fock, {"n"}},
    {PrepKind::Superposition01, {"phi01"}},
    {PrepKind::Coherent, {"alpha_sq", "phase"}},
    {PrepKind::Squeezed, {"r", "phi_sqz"}},
    {PrepKind::Cat, {"alpha_sq", "phi_cat"}},
    {PrepKind::MixedRho1, {"phi1"}},
    {PrepKind::MixedRho2, {"phi2", "alpha_sq"}},
};

void set_recipe_param(PrepRecipe& recipe, const std::string& name, double value) {
  if (name == "n")
    recipe.fock_n = static_cast<int>(std::lround(value));
  else if (name == "phi01")
    recipe.phi01 = value;
  else if (name == "alpha_sq")
    recipe.alpha_sq = value;
  else if (name == "phase")
    recipe.phase = value;
  else if (name == "r")
    recipe.r = value;
  else if (name == "phi_sqz")
    recipe.phi_sqz = value;
  else if (name == "phi_cat")
    recipe.phi_cat = value;
  else if (name == "phi1")
    recipe.phi1 = value;
  else if (name == "phi2")
    recipe.phi2 = value;
  else
    throw std::invalid_argument("unknown recipe parameter: " + name);
}

PrepRecipe parse_recipe(const json& j, const std::string& where,
                        std::vector<std::string>& errors) {
  PrepRecipe recipe;
  if (!j.is_object()) {
    errors.push_back(where + ": must be an object");
    return recipe;
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    errors.push_back(where + ".kind: missing or not a string");
    return recipe;
  }
  auto it = kKindNames.find(j.at("kind").get<std::string>());
  if (it == kKindNames.end()) {
    errors.push_back(where + ".kind: unknown recipe kind '" +
                     j.at("kind").get<std::string>() + "'");
    return recipe;
  }
  recipe.kind = it->second;
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") continue;
    if (!value.is_number()) {
      errors.push_back(where + "." + key + ": must be a number");
      continue;
    }
    if (!recipe_has_parameter(recipe.kind, key)) {
      errors.push_back(where + "." + key + ": not a parameter of kind '" +
                       prep_kind_name(recipe.kind) + "'");
      continue;
    }
    set_recipe_param(recipe, key, value.get<double>());
  }
  return recipe;
}

std::vector<double> parse_grid(const json& j, const std::string& where,
                               std::vector<std::string>& errors) {
  std::vector<double> grid;
  if (j.is_array()) {
    for (const auto& v : j) {
      if (!v.is_number()) {
        errors.push_back(where + ": grid values must be numbers");
        return {};
      }
      grid.push_back(v.get<double>());
    }
  } else if (j.is_object() && j.contains("start") && j.contains("stop") &&
             j.contains("points")) {
    double start = j.at("start").get<double>();
    double stop = j.at("stop").get<double>();
    int points = j.at("points").get<int>();
    if (points < 1) {
      errors.push_back(where + ".points: must be >= 1");
      return {};
    }
    for (int i = 0; i < points; ++i)
      grid.push_back(points == 1 ? start
                                 : start + (stop - start) * i / (points - 1));
  } else {
    errors.push_back(where + ": expected an array or {start, stop, points}");
    return {};
  }
  if (grid.empty()) {
    errors.push_back(where + ": grid must be nonempty");
    return {};
  }
  for (size_t i = 1; i < grid.size(); ++i) {
    if ((grid[i] <= grid[i - 1] && grid[1] > grid[0]) ||
        (grid[i] >= grid[i - 1] && grid[1] < grid[0]) ||
        grid[i] == grid[i - 1]) {
      errors.push_back(where + ": grid must be strictly monotone");
      break;
    }
  }
  return grid;
}

SweepAxis parse_axis(const json& j, const std::string& where,
                     std::vector<std::string>& errors) {
  SweepAxis axis;
  if (!j.is_object()) {
    errors.push_back(where + ": must be an object");
    return axis;
  }
  if (!j.contains("parameter") || !j.at("parameter").is_string())
    errors.push_back(where + ".parameter: missing or not a string");
  else
    axis.parameter = j.at("parameter").get<std::string>();
  if (!j.contains("grid"))
    errors.push_back(where + ".grid: missing");
  else
    axis.grid = parse_grid(j.at("grid"), where + ".grid", errors);
  return axis;
}

void check_axis_target(const ExperimentConfig& config, const SweepAxis& axis,
                       const std::string& where, std::vector<std::string>& errors) {
  auto dot = axis.parameter.find('.');
  if (dot == std::string::npos) {
    errors.push_back(where + ".parameter: expected 'b.<name>', 'c.<name>' or 'both.<name>'");
    return;
  }
  std::string side = axis.parameter.substr(0, dot);
  std::string name = axis.parameter.substr(dot + 1);
  if (side != "b" && side != "c" && side != "both") {
    errors.push_back(where + ".parameter: unknown target '" + side + "'");
    return;
  }
  if ((side == "b" || side == "both") && !recipe_has_parameter(config.prep_b.kind, name))
    errors.push_back(where + ".parameter: '" + name + "' is not a parameter of prep_b (kind '" +
                     prep_kind_name(config.prep_b.kind) + "')");
  if ((side == "c" || side == "both") && !recipe_has_parameter(config.prep_c.kind, name))
    errors.push_back(where + ".parameter: '" + name + "' is not a parameter of prep_c (kind '" +
                     prep_kind_name(config.prep_c.kind) + "')");
}

NoiseConfig parse_noise(const json& j, std::vector<std::string>& errors) {
  NoiseConfig noise;
  if (j.contains("heating_rates")) {
    const auto& rates = j.at("heating_rates");
    if (!rates.is_array() || rates.size() != 3) {
      errors.push_back("noise.heating_rates: expected 3 numbers (modes A, B, C)");
    } else {
      for (int i = 0; i < 3; ++i) noise.heating_rates[i] = rates[i].get<double>();
    }
  }
  if (j.contains("dephasing_time")) noise.dephasing_time = j.at("dephasing_time").get<double>();
  if (j.contains("trajectories")) noise.trajectories = j.at("trajectories").get<int>();
  if (j.contains("gate_durations")) {
    for (const auto& [key, value] : j.at("gate_durations").items())
      noise.gate_durations[key] = value.get<double>();
  }
  for (double r : noise.heating_rates)
    if (r < 0.0) errors.push_back("noise.heating_rates: rates must be >= 0");
  if (noise.trajectories < 1) errors.push_back("noise.trajectories: must be >= 1");
  for (const auto& [key, value] : noise.gate_durations)
    if (value < 0.0) errors.push_back("noise.gate_durations." + key + ": must be >= 0");
  return noise;
}

ExperimentConfig parse(const json& j, std::vector<std::string>& errors) {
  ExperimentConfig config;
  if (!j.is_object()) {
    errors.push_back("top level: must be an object");
    return config;
  }

  std::string experiment = j.value("experiment", std::string("sweep"));
  if (experiment == "calibration")
    config.kind = ExperimentConfig::Kind::Calibration;
  else if (experiment != "sweep")
    errors.push_back("experiment: must be 'sweep' or 'calibration'");

  if (j.contains("layout")) {
    const auto& layout = j.at("layout");
    if (!layout.is_object() || !layout.contains("mode_dims") ||
        !layout.at("mode_dims").is_array() || layout.at("mode_dims").size() != 3) {
      errors.push_back("layout.mode_dims: expected 3 integers");
    } else {
      for (int i = 0; i < 3; ++i) {
        int d = layout.at("mode_dims")[i].get<int>();
        if (d < 1) errors.push_back("layout.mode_dims: dimensions must be >= 1");
        config.mode_dims[i] = d;
      }
    }
  }

  if (j.contains("shots")) {
    if (j.at("shots").is_null()) {
      // explicit "no sampling"
    } else {
      int shots = j.at("shots").get<int>();
      if (shots <= 0)
        errors.push_back("shots: must be positive (or null for exact-only runs)");
      else
        config.shots = shots;
    }
  }
  if (j.contains("seed")) config.seed = j.at("seed").get<uint64_t>();
  if (j.contains("output")) config.output = j.at("output").get<std::string>();
  if (j.contains("contrast_gamma")) {
    double g = j.at("contrast_gamma").get<double>();
    if (g <= 0.0 || g > 1.0)
      errors.push_back("contrast_gamma: must be in (0, 1]");
    else
      config.contrast_gamma = g;
  }
  if (j.contains("noise")) config.noise = parse_noise(j.at("noise"), errors);

  if (config.kind == ExperimentConfig::Kind::Calibration) {
    if (!j.contains("omega0_hz"))
      errors.push_back("omega0_hz: required for calibration experiments");
    else {
      double f = j.at("omega0_hz").get<double>();
      if (f <= 0.0) errors.push_back("omega0_hz: must be positive");
      config.omega0 = 2.0 * M_PI * f;
    }
    if (!j.contains("durations"))
      errors.push_back("durations: required for calibration experiments");
    else
      config.sweep.grid = parse_grid(j.at("durations"), "durations", errors);
    config.sweep.parameter = "duration";
    return config;
  }

  if (!j.contains("prep_b"))
    errors.push_back("prep_b: missing");
  else
    config.prep_b = parse_recipe(j.at("prep_b"), "prep_b", errors);
  if (!j.contains("prep_c"))
    errors.push_back("prep_c: missing");
  else
    config.prep_c = parse_recipe(j.at("prep_c"), "prep_c", errors);

  if (!j.contains("sweep")) {
    errors.push_back("sweep: missing");
  } else {
    config.sweep = parse_axis(j.at("sweep"), "sweep", errors);
    if (!config.sweep.parameter.empty())
      check_axis_target(config, config.sweep, "sweep", errors);
  }
  if (j.contains("sweep2")) {
    config.sweep2 = parse_axis(j.at("sweep2"), "sweep2", errors);
    if (!config.sweep2->parameter.empty())
      check_axis_target(config, *config.sweep2, "sweep2", errors);
  }
  return config;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace

bool recipe_has_parameter(PrepKind kind, const std::string& name) {
  const auto& params = kKindParams.at(kind);
  for (const auto& p : params)
    if (p == name) return true;
  return false;
}

std::string prep_kind_name(PrepKind kind) {
  for (const auto& [name, k] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::vector<std::string> validate_config_file(const std::string& path) {
  std::vector<std::string> errors;
  json j;
  try {
    j = read_json_file(path);
  } catch (const std::exception& e) {
    errors.push_back(e.what());
    return errors;
  }
  try {
    parse(j, errors);
  } catch (const std::exception& e) {
    errors.push_back(std::string("parse error: ") + e.what());
  }
  return errors;
}

ExperimentConfig load_config(const std::string& path) {
  json j = read_json_file(path);
  std::vector<std::string> errors;
  ExperimentConfig config = parse(j, errors);
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "invalid config " << path << ":";
    for (const auto& e : errors) msg << "\n  - " << e;
    throw std::runtime_error(msg.str());
  }
  return config;
}

void apply_sweep_value(ExperimentConfig& config, const std::string& parameter, double value) {
  auto dot = parameter.find('.');
  if (dot == std::string::npos)
    throw std::invalid_argument("apply_sweep_value: malformed parameter " + parameter);
  std::string side = parameter.substr(0, dot);
  std::string name = parameter.substr(dot + 1);
  if (side == "b" || side == "both") set_recipe_param(config.prep_b, name, value);
  if (side == "c" || side == "both") set_recipe_param(config.prep_c, name, value);
}

}  // namespace swaptest
