#pragma once

#include "swaptest/bosonic.hpp"
#include "swaptest/hilbert.hpp"

namespace swaptest {

enum class GateKind {
  Rotation,
  BlueSideband,
  RedSideband,
  ControlledBeamSplitter,
  BeamSplitter,
  SpinDisplacement,
};

// Unitary on its minimal support subspace. `support` is a subset of the
// tensor factors in layout order; the matrix is row-major over the support
// occupations in that order. Gates are never materialized on the full space.
struct GateOp {
  GateKind kind;
  std::vector<Factor> support;
  Eigen::MatrixXcd unitary;
};

// R(theta) = cos(theta/2) I - i sin(theta/2) sigma_y
GateOp rotation(double theta);

enum class Sideband { Blue, Red };

// exp(-i (area/2) (sigma+ a^dag + sigma- a)) for blue; conjugate coupling
// for red. `pulse_area` is Omega_sb * t.
GateOp sideband(const ModeLayout& layout, Sideband kind, double pulse_area, Factor mode);

// Spin-dependent beam splitter between modes x and y (x before y in layout
// order). In the sigma_x eigensectors the creation operators propagate as
//   x^dag -> x^dag cos(theta/2) + i e^{-i(psi+phi_s)} y^dag sin(theta/2)
//   y^dag -> y^dag cos(theta/2) + i e^{+i(psi+phi_s)} x^dag sin(theta/2)
// with phi_s = 0 in the |+> sector and pi in the |-> sector.
GateOp controlled_beam_splitter(const ModeLayout& layout, double theta, double psi,
                                Factor x, Factor y);

// Same transformation with phi_s = 0 for both qubit states; acts on the
// modes only.
GateOp beam_splitter(const ModeLayout& layout, double theta, double psi,
                     Factor x, Factor y);

// exp(sigma_x (alpha x^dag - conj(alpha) x)): displaces by +alpha in the
// |+> sector and -alpha in the |-> sector.
GateOp spin_displacement(const ModeLayout& layout, Complex alpha, Factor mode);

enum class PulseShape { SinSqRampedFlatTop, Constant };

struct PulseEnvelope {
  double omega0;    // rad/s
  double ramp_tau;  // s (ignored for Constant)
  double total_T;   // s
  PulseShape shape;

  double amplitude(double t) const;
  // exact integral of amplitude over [0, total_T]
  double area() const;
  void validate() const;
};

// Time-ordered evolution of the CBS Hamiltonian under the envelope. Only
// the amplitude varies, so the generator commutes with itself at different
// times; the stepped product collapses to the closed-form gate at the
// quadrature-accumulated area.
GateOp evolve_pulsed_cbs(const ModeLayout& layout, const PulseEnvelope& envelope,
                         double psi, Factor x, Factor y, int steps = 200);

// Contract a support-subspace matrix against the state tensor. Untouched
// factors are unaffected.
PureState apply_support_matrix(const Eigen::MatrixXcd& matrix,
                               const std::vector<Factor>& support,
                               const PureState& state);

PureState apply(const GateOp& gate, const PureState& state);
Ensemble apply(const GateOp& gate, const Ensemble& state);

}  // namespace swaptest
