#include "swaptest/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace swaptest {

namespace {

Eigen::Matrix2cd sigma_plus() {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  s(kQubitLevelE, kQubitLevelG) = 1.0;
  return s;
}

// projectors onto the sigma_x eigensectors, basis (|g>, |e>)
Eigen::Matrix2cd projector_plus() {
  Eigen::Matrix2cd p;
  p << 0.5, 0.5, 0.5, 0.5;
  return p;
}

Eigen::Matrix2cd projector_minus() {
  Eigen::Matrix2cd p;
  p << 0.5, -0.5, -0.5, 0.5;
  return p;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// exp[i (theta/2) K(chi)] with K = x^dag y e^{i chi} + x y^dag e^{-i chi};
// ket propagation of the creation operators then reproduces the stated
// beam-splitter relations. K conserves n_x + n_y, so the exponential is
// assembled from small tridiagonal blocks instead of one dx*dy matrix.
Eigen::MatrixXcd bs_sector(double theta, double chi, int dx, int dy) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dx * dy, dx * dy);
  Complex up = std::exp(Complex(0.0, chi));
  for (int n = 0; n <= dx + dy - 2; ++n) {
    int lo = std::max(0, n - dy + 1);
    int hi = std::min(n, dx - 1);
    int m = hi - lo + 1;
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(m, m);
    for (int t = 0; t + 1 < m; ++t) {
      int nx = lo + t;  // couples (nx, n-nx) <-> (nx+1, n-nx-1)
      double amp = std::sqrt((nx + 1.0) * (n - nx));
      k(t + 1, t) = amp * up;
      k(t, t + 1) = amp * std::conj(up);
    }
    Eigen::MatrixXcd ub = expm_i_hermitian(k, 0.5 * theta);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        u((lo + r) * dy + (n - lo - r), (lo + c) * dy + (n - lo - c)) = ub(r, c);
  }
  return u;
}

void require_mode_pair(Factor x, Factor y) {
  if (x == Factor::Qubit || y == Factor::Qubit)
    throw std::invalid_argument("beam splitter: qubit is not a mode");
  if (static_cast<int>(x) >= static_cast<int>(y))
    throw std::invalid_argument("beam splitter: modes must be given in layout order");
}

}  // namespace

GateOp rotation(double theta) {
  double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  Eigen::MatrixXcd u(2, 2);
  u << c, -s, s, c;
  return GateOp{GateKind::Rotation, {Factor::Qubit}, std::move(u)};
}

GateOp sideband(const ModeLayout& layout, Sideband kind, double pulse_area, Factor mode) {
  if (pulse_area < 0.0) throw std::invalid_argument("sideband: pulse_area must be >= 0");
  if (mode == Factor::Qubit) throw std::invalid_argument("sideband: mode required");
  int d = layout.dim(mode);
  Eigen::MatrixXcd a = annihilation(d);
  Eigen::MatrixXcd coupling =
      (kind == Sideband::Blue) ? kron(sigma_plus(), a.adjoint()) : kron(sigma_plus(), a);
  Eigen::MatrixXcd k = coupling + coupling.adjoint();
  return GateOp{kind == Sideband::Blue ? GateKind::BlueSideband : GateKind::RedSideband,
                {Factor::Qubit, mode},
                expm_i_hermitian(k, -0.5 * pulse_area)};
}

GateOp controlled_beam_splitter(const ModeLayout& layout, double theta, double psi,
                                Factor x, Factor y) {
  if (theta < 0.0) throw std::invalid_argument("controlled_beam_splitter: theta must be >= 0");
  require_mode_pair(x, y);
  int dx = layout.dim(x), dy = layout.dim(y);
  // block-diagonal in the sigma_x eigenbasis: two dx*dy exponentials
  Eigen::MatrixXcd u_plus = bs_sector(theta, psi, dx, dy);
  Eigen::MatrixXcd u_minus = bs_sector(theta, psi + M_PI, dx, dy);
  Eigen::MatrixXcd u = kron(projector_plus(), u_plus) + kron(projector_minus(), u_minus);
  return GateOp{GateKind::ControlledBeamSplitter, {Factor::Qubit, x, y}, std::move(u)};
}

GateOp beam_splitter(const ModeLayout& layout, double theta, double psi,
                     Factor x, Factor y) {
  if (theta < 0.0) throw std::invalid_argument("beam_splitter: theta must be >= 0");
  require_mode_pair(x, y);
  return GateOp{GateKind::BeamSplitter, {x, y},
                bs_sector(theta, psi, layout.dim(x), layout.dim(y))};
}

GateOp spin_displacement(const ModeLayout& layout, Complex alpha, Factor mode) {
  if (mode == Factor::Qubit) throw std::invalid_argument("spin_displacement: mode required");
  int d = layout.dim(mode);
  Eigen::MatrixXcd u = kron(projector_plus(), displacement(alpha, d)) +
                       kron(projector_minus(), displacement(-alpha, d));
  return GateOp{GateKind::SpinDisplacement, {Factor::Qubit, mode}, std::move(u)};
}

double PulseEnvelope::amplitude(double t) const {
  if (t < 0.0 || t > total_T) return 0.0;
  if (shape == PulseShape::Constant) return omega0;
  if (t < ramp_tau) {
    double s = std::sin(M_PI * t / (2.0 * ramp_tau));
    return omega0 * s * s;
  }
  if (t > total_T - ramp_tau) {
    double s = std::sin(M_PI * (total_T - t) / (2.0 * ramp_tau));
    return omega0 * s * s;
  }
  return omega0;
}

double PulseEnvelope::area() const {
  if (shape == PulseShape::Constant) return omega0 * total_T;
  // each sin^2 ramp integrates to omega0 * ramp_tau / 2
  return omega0 * (total_T - ramp_tau);
}

void PulseEnvelope::validate() const {
  if (omega0 < 0.0 || total_T <= 0.0)
    throw std::invalid_argument("PulseEnvelope: omega0 >= 0 and total_T > 0 required");
  if (shape == PulseShape::SinSqRampedFlatTop &&
      (ramp_tau <= 0.0 || total_T < 2.0 * ramp_tau))
    throw std::invalid_argument("PulseEnvelope: total_T must be >= 2 * ramp_tau");
}

GateOp evolve_pulsed_cbs(const ModeLayout& layout, const PulseEnvelope& envelope,
                         double psi, Factor x, Factor y, int steps) {
  envelope.validate();
  if (steps < 1) throw std::invalid_argument("evolve_pulsed_cbs: steps must be >= 1");
  // The generator commutes with itself at all times, so the stepped product
  // of exponentials equals one exponential at the accumulated area. Simpson
  // quadrature per fixed step keeps the area error far below the gate
  // tolerance at 200 steps.
  double dt = envelope.total_T / steps;
  // the envelope is only piecewise smooth; split steps at the ramp edges so
  // Simpson never integrates across a kink
  std::vector<double> edges;
  if (envelope.shape == PulseShape::SinSqRampedFlatTop) {
    edges.push_back(envelope.ramp_tau);
    edges.push_back(envelope.total_T - envelope.ramp_tau);
  }
  double theta = 0.0;
  auto simpson = [&](double t0, double t1) {
    theta += (t1 - t0) / 6.0 *
             (envelope.amplitude(t0) + 4.0 * envelope.amplitude(0.5 * (t0 + t1)) +
              envelope.amplitude(t1));
  };
  for (int k = 0; k < steps; ++k) {
    double t0 = k * dt, t1 = (k + 1) * dt;
    double cursor = t0;
    for (double edge : edges)
      if (edge > cursor && edge < t1) {
        simpson(cursor, edge);
        cursor = edge;
      }
    simpson(cursor, t1);
  }
  GateOp gate = controlled_beam_splitter(layout, theta, psi, x, y);
  return gate;
}

PureState apply_support_matrix(const Eigen::MatrixXcd& matrix,
                               const std::vector<Factor>& support,
                               const PureState& state) {
  const ModeLayout& layout = state.layout;
  for (size_t i = 1; i < support.size(); ++i)
    if (static_cast<int>(support[i - 1]) >= static_cast<int>(support[i]))
      throw std::invalid_argument("apply: support factors must be unique and in layout order");

  int sup_dim = 1;
  for (Factor f : support) sup_dim *= layout.dim(f);
  if (matrix.rows() != sup_dim || matrix.cols() != sup_dim)
    throw std::invalid_argument("apply: matrix does not match support subspace dimension");

  std::vector<Factor> rest;
  for (int f = 0; f < 4; ++f) {
    Factor fac = static_cast<Factor>(f);
    bool in_support = false;
    for (Factor s : support) in_support |= (s == fac);
    if (!in_support) rest.push_back(fac);
  }

  std::vector<int> sup_off = factor_offsets(layout, support);
  std::vector<int> rest_off = factor_offsets(layout, rest);

  PureState out{layout, Eigen::VectorXcd(layout.total_dim())};
  Eigen::VectorXcd vin(sup_dim), vout(sup_dim);
  for (int base : rest_off) {
    for (int j = 0; j < sup_dim; ++j) vin(j) = state.amplitudes(base + sup_off[j]);
    vout.noalias() = matrix * vin;
    for (int j = 0; j < sup_dim; ++j) out.amplitudes(base + sup_off[j]) = vout(j);
  }
  return out;
}

PureState apply(const GateOp& gate, const PureState& state) {
  return apply_support_matrix(gate.unitary, gate.support, state);
}

Ensemble apply(const GateOp& gate, const Ensemble& state) {
  Ensemble out;
  out.branches.reserve(state.branches.size());
  for (const auto& branch : state.branches)
    out.branches.push_back({branch.weight, apply(gate, branch.state)});
  return out;
}

}  // namespace swaptest
