#include "swaptest/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace swaptest {

namespace {
constexpr double kNormTol = 1e-12;
}  // namespace

ModeLayout::ModeLayout(int dim_a, int dim_b, int dim_c)
    : dims_{2, dim_a, dim_b, dim_c} {
  if (dim_a < 1 || dim_b < 1 || dim_c < 1)
    throw std::invalid_argument("ModeLayout: mode dimensions must be >= 1");
  strides_[3] = 1;
  strides_[2] = dims_[3];
  strides_[1] = dims_[2] * dims_[3];
  strides_[0] = dims_[1] * dims_[2] * dims_[3];
  total_ = 2 * strides_[0];
}

int ModeLayout::index_of(int q, int n_a, int n_b, int n_c) const {
  if (q < 0 || q >= 2 || n_a < 0 || n_a >= dims_[1] || n_b < 0 ||
      n_b >= dims_[2] || n_c < 0 || n_c >= dims_[3])
    throw std::out_of_range("ModeLayout::index_of: occupation out of truncation range");
  return q * strides_[0] + n_a * strides_[1] + n_b * strides_[2] + n_c;
}

std::array<int, 4> ModeLayout::decode(int index) const {
  if (index < 0 || index >= total_)
    throw std::out_of_range("ModeLayout::decode: index out of range");
  std::array<int, 4> occ;
  for (int f = 0; f < 4; ++f) {
    occ[f] = index / strides_[f];
    index -= occ[f] * strides_[f];
  }
  return occ;
}

void PureState::normalize() {
  double n = amplitudes.norm();
  if (n < kNormTol) throw std::runtime_error("PureState::normalize: zero norm");
  amplitudes /= n;
}

PureState make_basis_state(const ModeLayout& layout, int q, int n_a, int n_b, int n_c) {
  PureState s{layout, Eigen::VectorXcd::Zero(layout.total_dim())};
  s.amplitudes(layout.index_of(q, n_a, n_b, n_c)) = 1.0;
  return s;
}

Complex inner_product(const PureState& x, const PureState& y) {
  if (x.layout != y.layout)
    throw std::invalid_argument("inner_product: layout mismatch");
  return x.amplitudes.dot(y.amplitudes);  // Eigen dot conjugates the left side
}

Ensemble Ensemble::pure(PureState state) {
  Ensemble e;
  e.branches.push_back({1.0, std::move(state)});
  return e;
}

const ModeLayout& Ensemble::layout() const {
  if (branches.empty()) throw std::runtime_error("Ensemble: empty");
  return branches.front().state.layout;
}

void Ensemble::validate() const {
  if (branches.empty()) throw std::runtime_error("Ensemble: empty");
  const ModeLayout& l = branches.front().state.layout;
  double total = 0.0;
  for (const auto& b : branches) {
    if (b.weight <= 0.0) throw std::runtime_error("Ensemble: non-positive weight");
    if (b.state.layout != l) throw std::runtime_error("Ensemble: mixed layouts");
    total += b.weight;
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw std::runtime_error("Ensemble: weights do not sum to 1");
}

ReducedDensity partial_trace(const Ensemble& rho, const std::vector<Factor>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const ModeLayout& layout = rho.layout();

  // split factors into kept (layout order) and discarded
  std::array<bool, 4> kept{false, false, false, false};
  for (Factor f : keep) kept[static_cast<int>(f)] = true;
  std::vector<Factor> keep_ordered, discard_ordered;
  for (int f = 0; f < 4; ++f) {
    (kept[f] ? keep_ordered : discard_ordered).push_back(static_cast<Factor>(f));
  }

  int keep_dim = 1, discard_dim = 1;
  for (Factor f : keep_ordered) keep_dim *= layout.dim(f);
  for (Factor f : discard_ordered) discard_dim *= layout.dim(f);

  std::vector<int> keep_off = factor_offsets(layout, keep_ordered);
  std::vector<int> disc_off = factor_offsets(layout, discard_ordered);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep_dim, keep_dim);
  Eigen::MatrixXcd slice(keep_dim, discard_dim);
  for (const auto& branch : rho.branches) {
    for (int i = 0; i < keep_dim; ++i)
      for (int j = 0; j < discard_dim; ++j)
        slice(i, j) = branch.state.amplitudes(keep_off[i] + disc_off[j]);
    out.noalias() += branch.weight * slice * slice.adjoint();
  }
  return ReducedDensity{keep_ordered, std::move(out)};
}

double qubit_ground_probability(const Ensemble& state) {
  const ModeLayout& layout = state.layout();
  const int motion = layout.stride(Factor::Qubit);
  double p = 0.0;
  for (const auto& branch : state.branches)
    p += branch.weight * branch.state.amplitudes.head(motion).squaredNorm();
  return p;
}

double overlap_exact(const ReducedDensity& a, const ReducedDensity& b) {
  if (a.matrix.rows() != b.matrix.rows())
    throw std::invalid_argument("overlap_exact: dimension mismatch");
  Complex tr = (a.matrix * b.matrix).trace();
  return tr.real();
}

double tail_mass(const PureState& state, Factor mode) {
  const ModeLayout& layout = state.layout;
  const int d = layout.dim(mode);
  if (d < 3) return 0.0;  // nothing meaningful to diagnose
  const int st = layout.stride(mode);
  double mass = 0.0;
  for (int i = 0; i < layout.total_dim(); ++i) {
    int n = (i / st) % d;
    if (n >= d - 2) mass += std::norm(state.amplitudes(i));
  }
  return mass;
}

void check_tails(const Ensemble& state) {
  for (const auto& branch : state.branches) {
    for (Factor m : {Factor::ModeA, Factor::ModeB, Factor::ModeC}) {
      double mass = tail_mass(branch.state, m);
      if (mass > kTailThreshold)
        throw std::runtime_error("truncation tail violation: mass " +
                                 std::to_string(mass) + " in top Fock levels of mode " +
                                 std::to_string(static_cast<int>(m)));
    }
  }
}

PureState install_mode_state(const PureState& state, Factor mode,
                             const Eigen::VectorXcd& mode_vector) {
  const ModeLayout& layout = state.layout;
  const int d = layout.dim(mode);
  if (mode_vector.size() != d)
    throw std::invalid_argument("install_mode_state: vector length does not match mode dimension");
  const int st = layout.stride(mode);

  PureState out{layout, Eigen::VectorXcd::Zero(layout.total_dim())};
  for (int i = 0; i < layout.total_dim(); ++i) {
    Complex amp = state.amplitudes(i);
    if (amp == Complex(0.0)) continue;
    int n = (i / st) % d;
    if (n != 0) {
      if (std::abs(amp) > 1e-12)
        throw std::runtime_error("install_mode_state: target mode not in vacuum");
      continue;
    }
    for (int k = 0; k < d; ++k) out.amplitudes(i + k * st) += amp * mode_vector(k);
  }
  return out;
}

std::vector<int> factor_offsets(const ModeLayout& layout, const std::vector<Factor>& factors) {
  int n = 1;
  for (Factor f : factors) n *= layout.dim(f);
  std::vector<int> off(n, 0);
  int rep = 1;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    int d = layout.dim(*it), st = layout.stride(*it);
    for (int i = 0; i < n; ++i) off[i] += ((i / rep) % d) * st;
    rep *= d;
  }
  return off;
}

double mean_phonon_number(const PureState& state, Factor mode) {
  const ModeLayout& layout = state.layout;
  const int d = layout.dim(mode);
  const int st = layout.stride(mode);
  double nbar = 0.0;
  for (int i = 0; i < layout.total_dim(); ++i) {
    int n = (i / st) % d;
    if (n > 0) nbar += n * std::norm(state.amplitudes(i));
  }
  return nbar;
}

}  // namespace swaptest
