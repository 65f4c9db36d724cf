#include "swaptest/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "swaptest/noise.hpp"
#include "swaptest/oracles.hpp"
#include "swaptest/protocols.hpp"
#include "swaptest/rng.hpp"

namespace swaptest {

namespace {

constexpr double kDefaultGate1Duration = 736e-6;  // theta = pi
constexpr double kDefaultGate2Duration = 368e-6;  // theta = pi/2

double slot_duration(const NoiseConfig& noise, const std::string& slot, double fallback) {
  auto it = noise.gate_durations.find(slot);
  return it == noise.gate_durations.end() ? fallback : it->second;
}

void apply_channels(Ensemble& state, const NoiseConfig& noise, double duration,
                    SplitMix64& rng) {
  for (Factor mode : {Factor::ModeA, Factor::ModeB, Factor::ModeC}) {
    double rate = noise.heating_rate(mode);
    if (rate > 0.0) state = apply_heating(state, mode, rate, duration, rng);
    if (noise.dephasing_time > 0.0)
      state = apply_dephasing(state, mode, noise.dephasing_time, duration, rng);
  }
}

// Trajectory-averaged P_g with the noise channels inserted after prep and
// between the two CBS gates.
double noisy_pg(const Ensemble& prepared, const NoiseConfig& noise, uint64_t seed) {
  const ModeLayout& layout = prepared.layout();
  const GateOp& gate1 = swap_test_gate1(layout);
  const GateOp& gate2 = swap_test_gate2(layout);
  double d1 = slot_duration(noise, "gate1", kDefaultGate1Duration);
  double d2 = slot_duration(noise, "gate2", kDefaultGate2Duration);

  double sum = 0.0;
  for (int t = 0; t < noise.trajectories; ++t) {
    SplitMix64 rng(SplitMix64::derive(seed, static_cast<uint64_t>(t)));
    Ensemble state = prepared;
    apply_channels(state, noise, d1, rng);
    state = apply(gate1, state);
    apply_channels(state, noise, d2, rng);
    state = apply(gate2, state);
    // same detection-basis flip as swap_test, so P_g = (1 - Tr)/2 noiselessly
    state = apply(rotation(M_PI), state);
    sum += qubit_ground_probability(state);
  }
  return sum / noise.trajectories;
}

SweepRow run_point(const ExperimentConfig& base, double value,
                   std::optional<double> value2, uint64_t point_seed) {
  ExperimentConfig config = base;
  if (value2) apply_sweep_value(config, config.sweep2->parameter, *value2);
  apply_sweep_value(config, config.sweep.parameter, value);

  ModeLayout layout(config.mode_dims[0], config.mode_dims[1], config.mode_dims[2]);
  Ensemble state = vacuum_register(layout);
  state = prepare(config.prep_b, Factor::ModeB, state);
  state = prepare(config.prep_c, Factor::ModeC, state);

  SweepRow row;
  row.sweep_value = value;
  row.sweep2_value = value2;
  row.seed = point_seed;
  row.overlap_oracle = oracles::recipe_overlap(config.prep_b, config.prep_c).value;

  if (config.noise) {
    config.noise->validate();
    row.p_g_exact = noisy_pg(state, *config.noise, point_seed);
    row.overlap_from_pg = std::abs(1.0 - 2.0 * row.p_g_exact);
    if (config.shots) {
      SplitMix64 rng(SplitMix64::derive(point_seed, 0x5a5a5a5a5a5a5a5aULL));
      int k = sample_binomial(rng, *config.shots, row.p_g_exact);
      double ps = static_cast<double>(k) / *config.shots;
      row.shots = config.shots;
      row.p_g_sampled = ps;
      row.stderr_est = std::sqrt(ps * (1.0 - ps) / *config.shots);
    }
  } else {
    SwapTestResult result = swap_test(state, config.shots, point_seed);
    row.p_g_exact = result.p_g_exact;
    row.overlap_from_pg = result.overlap_from_pg;
    row.shots = result.shots;
    row.p_g_sampled = result.p_g_sampled;
    row.stderr_est = result.stderr_est;
  }
  if (config.contrast_gamma)
    row.overlap_from_pg = apply_contrast(row.overlap_from_pg, *config.contrast_gamma);
  return row;
}

void parallel_for(size_t count, const std::function<void(size_t)>& body) {
  int workers = worker_count();
  if (workers <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

int worker_count() {
  const char* env = std::getenv("SWAPTEST_THREADS");
  if (env) {
    int n = std::atoi(env);
    return n >= 1 ? n : 1;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  if (config.kind != ExperimentConfig::Kind::Sweep)
    throw std::invalid_argument("run_sweep: config is not a sweep experiment");
  std::vector<double> outer{0.0};
  bool has_outer = config.sweep2.has_value();
  if (has_outer) outer = config.sweep2->grid;

  size_t inner_n = config.sweep.grid.size();
  size_t total = outer.size() * inner_n;
  std::vector<SweepRow> rows(total);
  parallel_for(total, [&](size_t flat) {
    size_t oi = flat / inner_n;
    size_t ii = flat % inner_n;
    std::optional<double> value2;
    if (has_outer) value2 = outer[oi];
    uint64_t point_seed = SplitMix64::derive(config.seed, static_cast<uint64_t>(flat));
    rows[flat] = run_point(config, config.sweep.grid[ii], value2, point_seed);
  });
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  bool has_outer = !rows.empty() && rows.front().sweep2_value.has_value();
  out << "sweep_value,";
  if (has_outer) out << "sweep2_value,";
  out << "p_g_exact,overlap_from_pg,overlap_oracle,p_g_sampled,stderr,shots,seed\n";
  for (const auto& row : rows) {
    out << format_double(row.sweep_value) << ',';
    if (has_outer) out << format_double(row.sweep2_value.value()) << ',';
    out << format_double(row.p_g_exact) << ',' << format_double(row.overlap_from_pg)
        << ',' << format_double(row.overlap_oracle) << ',';
    if (row.p_g_sampled) out << format_double(*row.p_g_sampled);
    out << ',';
    if (row.stderr_est) out << format_double(*row.stderr_est);
    out << ',';
    if (row.shots) out << *row.shots;
    out << ',' << row.seed << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV file: " + path);
  auto header = split_csv_line(line);
  bool has_outer = header.size() > 1 && header[1] == "sweep2_value";
  size_t expected = has_outer ? 9 : 8;
  if (header.size() != expected || header[0] != "sweep_value")
    throw std::runtime_error("unrecognized CSV header in " + path);

  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != expected)
      throw std::runtime_error("malformed CSV row in " + path + ": " + line);
    SweepRow row;
    size_t i = 0;
    row.sweep_value = std::stod(cells[i++]);
    if (has_outer) row.sweep2_value = std::stod(cells[i++]);
    row.p_g_exact = std::stod(cells[i++]);
    row.overlap_from_pg = std::stod(cells[i++]);
    row.overlap_oracle = std::stod(cells[i++]);
    if (!cells[i].empty()) row.p_g_sampled = std::stod(cells[i]);
    ++i;
    if (!cells[i].empty()) row.stderr_est = std::stod(cells[i]);
    ++i;
    if (!cells[i].empty()) row.shots = std::stoi(cells[i]);
    ++i;
    row.seed = std::stoull(cells[i]);
    rows.push_back(row);
  }
  return rows;
}

CalibrationResult run_calibration(const ExperimentConfig& config) {
  if (config.kind != ExperimentConfig::Kind::Calibration)
    throw std::invalid_argument("run_calibration: config is not a calibration experiment");
  ModeLayout layout(6, 6, 3);

  const auto& grid = config.sweep.grid;
  std::vector<CalibrationRow> rows(grid.size());
  parallel_for(grid.size(), [&](size_t i) {
    double duration = grid[i];
    if (duration < 0.0) throw std::invalid_argument("calibration: negative duration");
    Ensemble state = vacuum_register(layout);
    PrepRecipe one;
    one.kind = PrepKind::Fock;
    one.fock_n = 1;
    state = prepare(one, Factor::ModeA, state);
    state = prepare(one, Factor::ModeB, state);
    GateOp gate = controlled_beam_splitter(layout, config.omega0 * duration, 0.0,
                                           Factor::ModeA, Factor::ModeB);
    state = apply(gate, state);

    CalibrationRow row;
    row.duration = duration;
    row.p_e_exact = 1.0 - qubit_ground_probability(state);
    row.seed = SplitMix64::derive(config.seed, static_cast<uint64_t>(i));
    if (config.shots) {
      SplitMix64 rng(row.seed);
      int k = sample_binomial(rng, *config.shots, row.p_e_exact);
      double ps = static_cast<double>(k) / *config.shots;
      row.shots = config.shots;
      row.p_e_sampled = ps;
      row.stderr_est = std::sqrt(ps * (1.0 - ps) / *config.shots);
    }
    rows[i] = row;
  });

  std::vector<double> xs, ys;
  xs.reserve(rows.size());
  ys.reserve(rows.size());
  for (const auto& row : rows) {
    xs.push_back(row.duration);
    ys.push_back(row.p_e_sampled ? *row.p_e_sampled : row.p_e_exact);
  }
  CalibrationResult result;
  result.rows = std::move(rows);
  result.fit = fitting::fit(fitting::FitModelKind::SineSquared, xs, ys);
  return result;
}

void write_calibration_csv(const std::vector<CalibrationRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "duration,p_e_exact,p_e_sampled,stderr,shots,seed\n";
  for (const auto& row : rows) {
    out << format_double(row.duration) << ',' << format_double(row.p_e_exact) << ',';
    if (row.p_e_sampled) out << format_double(*row.p_e_sampled);
    out << ',';
    if (row.stderr_est) out << format_double(*row.stderr_est);
    out << ',';
    if (row.shots) out << *row.shots;
    out << ',' << row.seed << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace swaptest
