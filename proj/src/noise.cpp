#include "swaptest/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "swaptest/bosonic.hpp"
#include "swaptest/gates.hpp"

namespace swaptest {

void NoiseConfig::validate() const {
  for (double r : heating_rates)
    if (r < 0.0) throw std::invalid_argument("NoiseConfig: negative heating rate");
  for (const auto& [name, d] : gate_durations)
    if (d < 0.0) throw std::invalid_argument("NoiseConfig: negative duration for " + name);
  if (trajectories < 1) throw std::invalid_argument("NoiseConfig: trajectories must be >= 1");
}

double NoiseConfig::heating_rate(Factor mode) const {
  int i = static_cast<int>(mode) - 1;
  if (i < 0 || i > 2) throw std::invalid_argument("NoiseConfig: mode required");
  return heating_rates[static_cast<size_t>(i)];
}

Ensemble apply_heating(const Ensemble& state, Factor mode, double rate,
                       double duration, SplitMix64& rng) {
  if (rate < 0.0 || duration < 0.0)
    throw std::invalid_argument("apply_heating: negative rate or duration");
  double p = rate * duration;
  if (p > 0.1)
    throw std::runtime_error("apply_heating: rate*duration > 0.1, outside first-order regime");
  if (p == 0.0) return state;

  const ModeLayout& layout = state.layout();
  Eigen::MatrixXcd a = annihilation(layout.dim(mode));
  Eigen::MatrixXcd adag = a.adjoint();

  Ensemble out;
  out.branches.reserve(state.branches.size());
  for (const auto& branch : state.branches) {
    if (rng.uniform() >= p) {
      out.branches.push_back(branch);
      continue;
    }
    double nbar = mean_phonon_number(branch.state, mode);
    double w_up = nbar + 1.0, w_dn = nbar;
    bool up = rng.uniform() < w_up / (w_up + w_dn);
    PureState jumped = apply_support_matrix(up ? adag : a, {mode}, branch.state);
    double norm = jumped.norm();
    if (norm < 1e-12) {
      // a on (numerically) vacuum; jump cannot fire downward
      jumped = apply_support_matrix(adag, {mode}, branch.state);
      norm = jumped.norm();
    }
    jumped.amplitudes /= norm;
    out.branches.push_back({branch.weight, std::move(jumped)});
  }
  return out;
}

Ensemble apply_dephasing(const Ensemble& state, Factor mode, double coherence_time,
                         double duration, SplitMix64& rng) {
  if (duration < 0.0) throw std::invalid_argument("apply_dephasing: negative duration");
  if (duration == 0.0 || coherence_time <= 0.0) return state;

  const ModeLayout& layout = state.layout();
  const int d = layout.dim(mode);
  const int st = layout.stride(mode);
  const double sigma = std::sqrt(2.0 * duration / coherence_time);

  Ensemble out;
  out.branches.reserve(state.branches.size());
  for (const auto& branch : state.branches) {
    double phi = sigma * rng.gaussian();
    PureState dephased = branch.state;
    for (int i = 0; i < layout.total_dim(); ++i) {
      int n = (i / st) % d;
      if (n > 0) dephased.amplitudes(i) *= std::exp(Complex(0.0, phi * n));
    }
    out.branches.push_back({branch.weight, std::move(dephased)});
  }
  return out;
}

double apply_contrast(double ideal_overlap, double gamma) {
  if (ideal_overlap < 0.0 || ideal_overlap > 1.0)
    throw std::invalid_argument("apply_contrast: overlap outside [0,1]");
  if (gamma <= 0.0 || gamma > 1.0)
    throw std::invalid_argument("apply_contrast: gamma outside (0,1]");
  return gamma * ideal_overlap;
}

}  // namespace swaptest
