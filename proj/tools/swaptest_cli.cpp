#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swaptest/config.hpp"
#include "swaptest/sweep.hpp"

namespace {

// exit code categories
constexpr int kOk = 0;
constexpr int kUsageError = 2;
constexpr int kConfigError = 3;
constexpr int kRuntimeError = 4;
constexpr int kFitError = 5;

swaptest::fitting::FitModelKind parse_model(const std::string& name) {
  using swaptest::fitting::FitModelKind;
  if (name == "sine2") return FitModelKind::SineSquared;
  if (name == "sinusoid") return FitModelKind::Sinusoid;
  if (name == "gaussian") return FitModelKind::Gaussian;
  if (name == "cat") return FitModelKind::CatEq2;
  throw CLI::ValidationError("model", "unknown model '" + name +
                                          "' (expected sine2, sinusoid, gaussian or cat)");
}

void print_fit(const swaptest::fitting::FitResult& result,
               swaptest::fitting::FitModelKind kind) {
  swaptest::fitting::FitModel model{kind};
  auto names = model.param_names();
  for (int i = 0; i < result.parameters.size(); ++i) {
    std::printf("%s = %.10g", names[i].c_str(), result.parameters(i));
    if (std::isfinite(result.stderrs(i))) std::printf(" +/- %.3g", result.stderrs(i));
    std::printf("\n");
  }
  std::printf("residual_norm = %.6g, iterations = %d%s\n", result.residual_norm,
              result.iterations, result.degenerate ? " (degenerate)" : "");
}

// x/y extraction for `fit`: sweep CSVs fit the overlap column, calibration
// CSVs fit P_e (sampled if present).
void load_fit_data(const std::string& path, std::vector<double>& xs, std::vector<double>& ys) {
  std::ifstream probe(path);
  if (!probe) throw std::runtime_error("cannot open CSV file: " + path);
  std::string header;
  std::getline(probe, header);
  probe.close();
  if (header.rfind("duration,", 0) == 0) {
    // calibration layout; reuse the sweep reader's cell handling via a
    // minimal inline parse
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(row, cell, ',')) cells.push_back(cell);
      xs.push_back(std::stod(cells.at(0)));
      ys.push_back(!cells.at(2).empty() ? std::stod(cells[2]) : std::stod(cells.at(1)));
    }
    return;
  }
  for (const auto& row : swaptest::read_sweep_csv(path)) {
    xs.push_back(row.sweep_value);
    ys.push_back(row.overlap_from_pg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated-Fock-space simulator of the trapped-ion SWAP test"};
  app.require_subcommand(1);

  std::string config_path, csv_path, model_name, output_override, configs_dir = "configs";

  auto* run = app.add_subcommand("run", "Execute a sweep config and write its CSV");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("-o,--output", output_override, "override the config's output path");

  auto* calibrate = app.add_subcommand("calibrate", "Run a calibration config and fit P0 sin^2(Omega0 T)");
  calibrate->add_option("config", config_path, "config file")->required();
  calibrate->add_option("-o,--output", output_override, "override the config's output path");

  auto* fit = app.add_subcommand("fit", "Fit a model to a CSV produced by run/calibrate");
  fit->add_option("model", model_name, "sine2 | sinusoid | gaussian | cat")->required();
  fit->add_option("csv", csv_path, "input CSV")->required();

  auto* validate = app.add_subcommand("validate", "Schema-check a config without running it");
  validate->add_option("config", config_path, "config file")->required();

  auto* list = app.add_subcommand("list-configs", "List bundled configs");
  list->add_option("-d,--dir", configs_dir, "configs directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  try {
    if (run->parsed()) {
      auto config = swaptest::load_config(config_path);
      auto rows = swaptest::run_sweep(config);
      std::string out = output_override.empty() ? config.output : output_override;
      if (out.empty()) throw std::runtime_error("no output path (set 'output' or pass -o)");
      swaptest::write_sweep_csv(rows, out);
      std::printf("wrote %zu rows to %s\n", rows.size(), out.c_str());
      return kOk;
    }
    if (calibrate->parsed()) {
      auto config = swaptest::load_config(config_path);
      auto result = swaptest::run_calibration(config);
      std::string out = output_override.empty() ? config.output : output_override;
      if (!out.empty()) {
        swaptest::write_calibration_csv(result.rows, out);
        std::printf("wrote %zu rows to %s\n", result.rows.size(), out.c_str());
      }
      print_fit(result.fit, swaptest::fitting::FitModelKind::SineSquared);
      return kOk;
    }
    if (fit->parsed()) {
      auto kind = parse_model(model_name);
      std::vector<double> xs, ys;
      load_fit_data(csv_path, xs, ys);
      try {
        auto result = swaptest::fitting::fit(kind, xs, ys);
        print_fit(result, kind);
      } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "fit failed: %s\n", e.what());
        return kFitError;
      }
      return kOk;
    }
    if (validate->parsed()) {
      auto errors = swaptest::validate_config_file(config_path);
      if (errors.empty()) {
        std::printf("%s: ok\n", config_path.c_str());
        return kOk;
      }
      for (const auto& e : errors) std::fprintf(stderr, "%s: %s\n", config_path.c_str(), e.c_str());
      return kConfigError;
    }
    if (list->parsed()) {
      namespace fs = std::filesystem;
      if (!fs::is_directory(configs_dir)) {
        std::fprintf(stderr, "no such directory: %s\n", configs_dir.c_str());
        return kUsageError;
      }
      std::vector<std::string> names;
      for (const auto& entry : fs::directory_iterator(configs_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          names.push_back(entry.path().stem().string());
      std::sort(names.begin(), names.end());
      for (const auto& n : names) std::printf("%s\n", n.c_str());
      return kOk;
    }
  } catch (const std::runtime_error& e) {
    std::string what = e.what();
    std::fprintf(stderr, "%s\n", what.c_str());
    return what.rfind("invalid config", 0) == 0 ? kConfigError : kRuntimeError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kRuntimeError;
  }
  return kUsageError;
}
