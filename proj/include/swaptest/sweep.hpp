#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swaptest/config.hpp"
#include "swaptest/fitting.hpp"

namespace swaptest {

// One grid point of a sweep. Column order in the CSV is fixed:
// sweep_value[,sweep2_value],p_g_exact,overlap_from_pg,overlap_oracle,
// p_g_sampled,stderr,shots,seed. Optional cells are left empty.
struct SweepRow {
  double sweep_value = 0.0;
  std::optional<double> sweep2_value;
  double p_g_exact = 0.0;
  double overlap_from_pg = 0.0;
  double overlap_oracle = 0.0;
  std::optional<double> p_g_sampled;
  std::optional<double> stderr_est;
  std::optional<int> shots;
  uint64_t seed = 0;
};

// Executes every grid point (outer sweep2 x inner sweep when a second axis
// is present). Points run in parallel up to SWAPTEST_THREADS; per-point
// seeds derive from config.seed and the flat grid index, so the result is
// independent of scheduling.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

// 17-significant-digit CSV with mandatory header; newline-terminated rows.
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> read_sweep_csv(const std::string& path);

struct CalibrationRow {
  double duration = 0.0;
  double p_e_exact = 0.0;
  std::optional<double> p_e_sampled;
  std::optional<double> stderr_est;
  std::optional<int> shots;
  uint64_t seed = 0;
};

struct CalibrationResult {
  std::vector<CalibrationRow> rows;
  fitting::FitResult fit;  // P0 sin^2(Omega0 T)
};

// |g>|1>_A|1>_B under the constant-envelope CBS for each duration in the
// grid; P_e is recorded and fit to P0 sin^2(Omega0 T).
CalibrationResult run_calibration(const ExperimentConfig& config);

void write_calibration_csv(const std::vector<CalibrationRow>& rows, const std::string& path);

// thread-count override (SWAPTEST_THREADS), clamped to >= 1
int worker_count();

}  // namespace swaptest
