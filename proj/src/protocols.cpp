#include "swaptest/protocols.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "swaptest/rng.hpp"

namespace swaptest {

namespace {

constexpr double kBranchPrune = 1e-14;
constexpr double kPreTol = 1e-9;

Eigen::VectorXcd pure_mode_vector(const PrepRecipe& recipe, int dim) {
  switch (recipe.kind) {
    case PrepKind::Fock: {
      if (recipe.fock_n < 0 || recipe.fock_n >= dim)
        throw std::out_of_range("prepare: Fock occupation out of truncation range");
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      v(recipe.fock_n) = 1.0;
      return v;
    }
    case PrepKind::Superposition01: {
      if (dim < 2) throw std::invalid_argument("prepare: superposition01 needs dim >= 2");
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      v(0) = 1.0 / std::sqrt(2.0);
      v(1) = -std::exp(Complex(0.0, recipe.phi01)) / std::sqrt(2.0);
      return v;
    }
    case PrepKind::Coherent: {
      Complex alpha = std::sqrt(recipe.alpha_sq) * std::exp(Complex(0.0, recipe.phase));
      return coherent_state(alpha, dim);
    }
    case PrepKind::Squeezed:
      // label r e^{i phi_sqz / 2} maps to generator phase zeta = r e^{i phi_sqz}
      return squeeze(recipe.r, recipe.phi_sqz, dim).col(0);
    case PrepKind::Cat:
      return cat_state(std::sqrt(recipe.alpha_sq), recipe.phi_cat, dim);
    default:
      throw std::logic_error("pure_mode_vector: not a pure recipe");
  }
}

void require_mode_vacuum(const Ensemble& state, Factor mode) {
  for (const auto& branch : state.branches) {
    if (mean_phonon_number(branch.state, mode) > kPreTol)
      throw std::runtime_error("prepare: target mode not in vacuum");
  }
}

void require_qubit_ground(const Ensemble& state) {
  if (std::abs(qubit_ground_probability(state) - 1.0) > kPreTol)
    throw std::runtime_error("protocol precondition: qubit not in |g>");
}

struct DimsKey {
  int a, b, c;
  bool operator<(const DimsKey& o) const {
    return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
  }
};

const GateOp& cached_gate(const ModeLayout& layout, bool first) {
  static std::map<DimsKey, GateOp> cache1, cache2;
  static std::mutex mu;
  DimsKey key{layout.dim(Factor::ModeA), layout.dim(Factor::ModeB), layout.dim(Factor::ModeC)};
  std::lock_guard<std::mutex> lock(mu);
  auto& cache = first ? cache1 : cache2;
  auto it = cache.find(key);
  if (it == cache.end()) {
    GateOp gate = first
        ? controlled_beam_splitter(layout, M_PI, 0.0, Factor::ModeA, Factor::ModeC)
        : controlled_beam_splitter(layout, M_PI / 2.0, M_PI, Factor::ModeA, Factor::ModeB);
    it = cache.emplace(key, std::move(gate)).first;
  }
  return it->second;
}

}  // namespace

const GateOp& swap_test_gate1(const ModeLayout& layout) { return cached_gate(layout, true); }
const GateOp& swap_test_gate2(const ModeLayout& layout) { return cached_gate(layout, false); }

Ensemble vacuum_register(const ModeLayout& layout) {
  return Ensemble::pure(make_basis_state(layout, kQubitLevelG, 0, 0, 0));
}

Ensemble optical_pump(const Ensemble& state) {
  const ModeLayout& layout = state.layout();
  const int motion = layout.stride(Factor::Qubit);
  Ensemble out;
  for (const auto& branch : state.branches) {
    const Eigen::VectorXcd& amp = branch.state.amplitudes;
    for (int level = 0; level < 2; ++level) {
      Eigen::VectorXcd part = amp.segment(level * motion, motion);
      double prob = part.squaredNorm();
      double weight = branch.weight * prob;
      if (weight < kBranchPrune) continue;
      PureState reset{layout, Eigen::VectorXcd::Zero(layout.total_dim())};
      reset.amplitudes.head(motion) = part / std::sqrt(prob);
      out.branches.push_back({weight, std::move(reset)});
    }
  }
  out.validate();
  return out;
}

Ensemble prepare(const PrepRecipe& recipe, Factor mode, const Ensemble& state) {
  state.validate();
  if (mode == Factor::Qubit) throw std::invalid_argument("prepare: target must be a mode");
  const ModeLayout& layout = state.layout();
  require_mode_vacuum(state, mode);

  Ensemble out;
  switch (recipe.kind) {
    case PrepKind::MixedRho1: {
      require_qubit_ground(state);
      double theta1 = (recipe.phi1 <= M_PI / 2.0) ? 0.0 : M_PI;
      out = apply(sideband(layout, Sideband::Blue, recipe.phi1, mode), state);
      if (theta1 != 0.0) out = apply(rotation(theta1), out);
      out = optical_pump(out);
      break;
    }
    case PrepKind::MixedRho2: {
      require_qubit_ground(state);
      if (recipe.phi2 < -M_PI / 2.0 || recipe.phi2 > M_PI / 2.0)
        throw std::invalid_argument("prepare: phi2 outside [-pi/2, pi/2]");
      double theta2 = (recipe.phi2 < 0.0) ? M_PI / 2.0 : -M_PI / 2.0;
      double alpha = std::sqrt(recipe.alpha_sq);
      out = apply(rotation(recipe.phi2), state);
      out = apply(spin_displacement(layout, alpha, mode), out);
      out = apply(rotation(theta2), out);
      out = optical_pump(out);
      break;
    }
    default: {
      Eigen::VectorXcd v = pure_mode_vector(recipe, layout.dim(mode));
      for (const auto& branch : state.branches)
        out.branches.push_back({branch.weight, install_mode_state(branch.state, mode, v)});
      break;
    }
  }
  out.validate();
  check_tails(out);
  return out;
}

double input_overlap_oracle(const Ensemble& state) {
  ReducedDensity rho_b = partial_trace(state, {Factor::ModeB});
  ReducedDensity rho_c = partial_trace(state, {Factor::ModeC});
  if (rho_b.matrix.rows() != rho_c.matrix.rows()) {
    // unequal truncations: compare on the smaller common block
    int d = std::min<int>(rho_b.matrix.rows(), rho_c.matrix.rows());
    ReducedDensity b{rho_b.subsystem, rho_b.matrix.topLeftCorner(d, d)};
    ReducedDensity c{rho_c.subsystem, rho_c.matrix.topLeftCorner(d, d)};
    return overlap_exact(b, c);
  }
  return overlap_exact(rho_b, rho_c);
}

SwapTestResult swap_test(const Ensemble& state, std::optional<int> shots, uint64_t seed) {
  state.validate();
  require_qubit_ground(state);
  require_mode_vacuum(state, Factor::ModeA);
  const ModeLayout& layout = state.layout();

  SwapTestResult result;
  result.seed = seed;
  result.overlap_oracle = input_overlap_oracle(state);

  Ensemble evolved = apply(swap_test_gate1(layout), state);
  evolved = apply(swap_test_gate2(layout), evolved);
  // The bare interferometer leaves the ground-state population at
  // (1 + Tr(rho_B rho_C))/2; the closing pi rotation flips the detection
  // basis so the reported P_g equals (1 - Tr(rho_B rho_C))/2 and the
  // noiseless invariant P_g <= 1/2 holds. |1 - 2 P_g| is unaffected.
  evolved = apply(rotation(M_PI), evolved);
  result.p_g_exact = qubit_ground_probability(evolved);
  result.overlap_from_pg = std::abs(1.0 - 2.0 * result.p_g_exact);

  if (shots) {
    if (*shots <= 0) throw std::invalid_argument("swap_test: shots must be positive");
    SplitMix64 rng(seed);
    int hits = sample_binomial(rng, *shots, result.p_g_exact);
    double p_hat = static_cast<double>(hits) / *shots;
    result.shots = shots;
    result.p_g_sampled = p_hat;
    result.stderr_est = std::sqrt(p_hat * (1.0 - p_hat) / *shots);
  }
  return result;
}

double controlled_swap_equivalence(const PureState& state) {
  const ModeLayout& layout = state.layout;
  const int nb = layout.dim(Factor::ModeB), nc = layout.dim(Factor::ModeC);
  if (nb != nc)
    throw std::invalid_argument("controlled_swap_equivalence: dim(B) != dim(C)");
  Ensemble in = Ensemble::pure(state);
  require_qubit_ground(in);
  require_mode_vacuum(in, Factor::ModeA);

  PureState evolved = apply(swap_test_gate1(layout), state);
  evolved = apply(swap_test_gate2(layout), evolved);
  evolved = apply(beam_splitter(layout, M_PI / 2.0, 0.0, Factor::ModeA, Factor::ModeB), evolved);
  evolved = apply(beam_splitter(layout, M_PI, M_PI, Factor::ModeA, Factor::ModeC), evolved);

  // target: sum_{m,n} psi(m,n) (|+>|0,m,n> - |->|0,n,m>) / sqrt(2),
  // with |+> = (|g>+|e>)/sqrt(2), |-> = (|e>-|g>)/sqrt(2)
  PureState expected{layout, Eigen::VectorXcd::Zero(layout.total_dim())};
  for (int m = 0; m < nb; ++m) {
    for (int n = 0; n < nc; ++n) {
      Complex psi = state.amplitudes(layout.index_of(kQubitLevelG, 0, m, n));
      if (psi == Complex(0.0)) continue;
      Complex coef = psi * 0.5;  // 1/sqrt(2) circuit factor * 1/sqrt(2) qubit expansion
      expected.amplitudes(layout.index_of(kQubitLevelG, 0, m, n)) += coef;
      expected.amplitudes(layout.index_of(kQubitLevelE, 0, m, n)) += coef;
      expected.amplitudes(layout.index_of(kQubitLevelG, 0, n, m)) += coef;
      expected.amplitudes(layout.index_of(kQubitLevelE, 0, n, m)) -= coef;
    }
  }
  return std::norm(inner_product(evolved, expected));
}

SwapTestResult purity_experiment(const PrepRecipe& recipe_b, const PrepRecipe& recipe_c,
                                 std::optional<int> shots, uint64_t seed,
                                 const ModeLayout& layout) {
  if (recipe_b.kind != recipe_c.kind)
    throw std::invalid_argument("purity_experiment: recipes must target the same state");
  Ensemble state = vacuum_register(layout);
  state = prepare(recipe_b, Factor::ModeB, state);
  state = prepare(recipe_c, Factor::ModeC, state);
  return swap_test(state, shots, seed);
}

}  // namespace swaptest
