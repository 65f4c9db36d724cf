#pragma once

#include <cstdint>
#include <optional>

#include "swaptest/gates.hpp"

namespace swaptest {

enum class PrepKind {
  Fock,
  Superposition01,
  Coherent,
  Squeezed,
  Cat,
  MixedRho1,
  MixedRho2,
};

// Declarative description of a single-mode input state. Unused parameters
// are ignored for a given kind.
struct PrepRecipe {
  PrepKind kind = PrepKind::Fock;
  int fock_n = 0;         // Fock
  double phi01 = 0.0;     // Superposition01: (|0> - e^{i phi01} |1>) / sqrt(2)
  double alpha_sq = 0.0;  // Coherent / Cat / MixedRho2: |alpha|^2
  double phase = 0.0;     // Coherent: alpha = sqrt(alpha_sq) e^{i phase}
  double r = 0.0;         // Squeezed
  double phi_sqz = 0.0;   // Squeezed: state label r e^{i phi_sqz / 2}
  double phi_cat = 0.0;   // Cat
  double phi1 = 0.0;      // MixedRho1
  double phi2 = 0.0;      // MixedRho2, in [-pi/2, pi/2]
};

struct SwapTestResult {
  double p_g_exact = 0.0;
  double overlap_from_pg = 0.0;  // |1 - 2 P_g|
  double overlap_oracle = 0.0;   // Tr(rho_B rho_C) of the inputs
  std::optional<int> shots;
  std::optional<double> p_g_sampled;
  std::optional<double> stderr_est;
  uint64_t seed = 0;
};

// Installs the recipe's state on `mode`. The mode must be in vacuum across
// all branches; mixed recipes additionally require the qubit in |g>.
// Mixed recipes run the experimental pulse sequences (sideband / rotation /
// spin displacement) followed by optical pumping.
Ensemble prepare(const PrepRecipe& recipe, Factor mode, const Ensemble& state);

// Qubit reset channel: each branch splits into its |g>- and |e>-projected
// sub-branches (renormalized, weights = projection probabilities), with the
// qubit reinitialized to |g>. Idempotent.
Ensemble optical_pump(const Ensemble& state);

// U_CBS^{AB}(pi/2, pi) U_CBS^{AC}(pi, 0) on |g>|0>_A |Psi>_B |Phi>_C,
// followed by the qubit measurement. Requires qubit |g> and mode A vacuum.
SwapTestResult swap_test(const Ensemble& state, std::optional<int> shots, uint64_t seed);

// Runs the two CBS gates plus the two spin-independent beam splitters of
// the controlled-SWAP construction and returns the fidelity against the
// closed-form target (|+>|0,m,n> - |->|0,n,m>)/sqrt(2), extended by
// linearity. Requires dim(B) == dim(C).
double controlled_swap_equivalence(const PureState& state);

// Prepares the same recipe on B and C, then runs the SWAP test; the
// overlap estimates Tr(rho^2).
SwapTestResult purity_experiment(const PrepRecipe& recipe_b, const PrepRecipe& recipe_c,
                                 std::optional<int> shots, uint64_t seed,
                                 const ModeLayout& layout = ModeLayout(20, 20, 20));

// The two gates of the SWAP-test circuit, cached per layout.
const GateOp& swap_test_gate1(const ModeLayout& layout);  // U_CBS^{AC}(pi, 0)
const GateOp& swap_test_gate2(const ModeLayout& layout);  // U_CBS^{AB}(pi/2, pi)

// Tr(rho_B rho_C) of an ensemble via reduced densities.
double input_overlap_oracle(const Ensemble& state);

// Fresh |g>|0,0,0| register.
Ensemble vacuum_register(const ModeLayout& layout);

}  // namespace swaptest
