#pragma once

#include <array>
#include <map>
#include <string>

#include "swaptest/hilbert.hpp"
#include "swaptest/rng.hpp"

namespace swaptest {

// Phenomenological imperfection parameters. Heating rates are quanta/s for
// modes A, B, C; dephasing_time is the motional coherence time in seconds.
struct NoiseConfig {
  std::array<double, 3> heating_rates{0.0, 0.0, 0.0};
  double dephasing_time = 0.0;  // 0 or negative disables dephasing
  std::map<std::string, double> gate_durations;  // seconds, keyed by circuit slot
  int trajectories = 1;

  void validate() const;
  double heating_rate(Factor mode) const;
};

// One stochastic trajectory step of first-order heating: with probability
// rate*duration a jump fires; a^dag vs a is chosen with weights <a a^dag>
// and <a^dag a>, and the jumped branch is renormalized. Throws if
// rate*duration > 0.1 (first-order regime).
Ensemble apply_heating(const Ensemble& state, Factor mode, double rate,
                       double duration, SplitMix64& rng);

// One stochastic trajectory step of motional dephasing: each branch picks
// a random phase e^{i phi n} with phi ~ N(0, 2*duration/coherence_time).
Ensemble apply_dephasing(const Ensemble& state, Factor mode, double coherence_time,
                         double duration, SplitMix64& rng);

// gamma * ideal_overlap
double apply_contrast(double ideal_overlap, double gamma);

}  // namespace swaptest
