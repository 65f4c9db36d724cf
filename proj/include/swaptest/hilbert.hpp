#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

namespace swaptest {

using Complex = std::complex<double>;

// Tensor factors, in the fixed layout order (qubit slowest-varying).
enum class Factor : int { Qubit = 0, ModeA = 1, ModeB = 2, ModeC = 3 };

constexpr int kQubitLevelG = 0;
constexpr int kQubitLevelE = 1;

// qubit (x) mode A (x) mode B (x) mode C, with per-mode Fock truncations.
// Immutable after construction.
class ModeLayout {
 public:
  ModeLayout(int dim_a, int dim_b, int dim_c);

  int dim(Factor f) const { return dims_[static_cast<int>(f)]; }
  int total_dim() const { return total_; }

  // stride of a factor in the flat amplitude index
  int stride(Factor f) const { return strides_[static_cast<int>(f)]; }

  int index_of(int q, int n_a, int n_b, int n_c) const;
  std::array<int, 4> decode(int index) const;

  bool operator==(const ModeLayout& other) const { return dims_ == other.dims_; }
  bool operator!=(const ModeLayout& other) const { return !(*this == other); }

 private:
  std::array<int, 4> dims_;
  std::array<int, 4> strides_;
  int total_;
};

struct PureState {
  ModeLayout layout;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
  void normalize();
};

PureState make_basis_state(const ModeLayout& layout, int q, int n_a, int n_b, int n_c);

Complex inner_product(const PureState& x, const PureState& y);

// Weighted pure-state mixture. Weights positive, sum to 1.
struct EnsembleBranch {
  double weight;
  PureState state;
};

struct Ensemble {
  std::vector<EnsembleBranch> branches;

  static Ensemble pure(PureState state);
  const ModeLayout& layout() const;
  void validate() const;  // throws on weight / layout violations
};

struct ReducedDensity {
  std::vector<Factor> subsystem;  // in layout order
  Eigen::MatrixXcd matrix;
};

ReducedDensity partial_trace(const Ensemble& rho, const std::vector<Factor>& keep);

// P_g = <g| Tr_motion(rho) |g>
double qubit_ground_probability(const Ensemble& state);

// Tr(rho1 rho2) for equal-dimension reduced densities
double overlap_exact(const ReducedDensity& a, const ReducedDensity& b);

// Probability mass in the top two Fock levels of one mode.
double tail_mass(const PureState& state, Factor mode);

constexpr double kTailThreshold = 1e-6;

// Throws if any branch carries more than kTailThreshold mass in the top
// two Fock levels of any mode. Run after every state-prep operation.
void check_tails(const Ensemble& state);

// Replaces the (vacuum) content of `mode` with the given single-mode Fock
// vector. Throws if the mode is not in vacuum.
PureState install_mode_state(const PureState& state, Factor mode, const Eigen::VectorXcd& mode_vector);

// <a^dag a> of one mode
double mean_phonon_number(const PureState& state, Factor mode);

// Flat amplitude-index offsets of every configuration of the given factors,
// row-major in the given order.
std::vector<int> factor_offsets(const ModeLayout& layout, const std::vector<Factor>& factors);

}  // namespace swaptest
