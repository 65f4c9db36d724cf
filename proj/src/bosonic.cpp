#include "swaptest/bosonic.hpp"

#include <cmath>
#include <stdexcept>

namespace swaptest {

Eigen::MatrixXcd annihilation(int dim) {
  if (dim < 1) throw std::invalid_argument("annihilation: dim must be >= 1");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd expm_i_hermitian(const Eigen::MatrixXcd& h, double scale) {
  double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw std::invalid_argument("expm_i_hermitian: generator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (int i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(Complex(0.0, scale * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double poisson_tail(double lambda, int k) {
  if (k <= 0) return 1.0;
  // head by recurrence, tail = 1 - head
  double term = std::exp(-lambda);
  double head = term;
  for (int n = 1; n < k; ++n) {
    term *= lambda / n;
    head += term;
  }
  return std::max(0.0, 1.0 - head);
}

namespace {

void check_coherent_tail(Complex alpha, int dim, const char* who) {
  double tail = poisson_tail(std::norm(alpha), dim - 2);
  if (tail > kTailThreshold)
    throw std::runtime_error(std::string(who) +
                             ": truncation tail violation, |alpha|^2 too large for dim");
}

}  // namespace

Eigen::MatrixXcd displacement(Complex alpha, int dim) {
  check_coherent_tail(alpha, dim, "displacement");
  // generator alpha a^dag - conj(alpha) a = i H, H Hermitian
  Eigen::MatrixXcd a = annihilation(dim);
  Eigen::MatrixXcd g = alpha * a.adjoint() - std::conj(alpha) * a;
  Eigen::MatrixXcd h = Complex(0.0, -1.0) * g;
  return expm_i_hermitian(h, 1.0);
}

Eigen::MatrixXcd squeeze(double r, double phi, int dim) {
  if (r < 0.0) throw std::invalid_argument("squeeze: r must be >= 0");
  // analytic even-Fock distribution of S(zeta)|0>:
  //   p_0 = 1/cosh r,  p_m / p_{m-1} = tanh^2(r) (2m-1)/(2m)
  double p = 1.0 / std::cosh(r);
  double t2 = std::tanh(r) * std::tanh(r);
  double tail = 1.0 - p;
  for (int m = 1; 2 * m < dim - 2; ++m) {
    p *= t2 * (2.0 * m - 1.0) / (2.0 * m);
    tail -= p;
  }
  if (tail > kTailThreshold)
    throw std::runtime_error("squeeze: truncation tail violation, r too large for dim");

  Complex zeta = r * std::exp(Complex(0.0, phi));
  Eigen::MatrixXcd a = annihilation(dim);
  Eigen::MatrixXcd a2 = a * a;
  Eigen::MatrixXcd g = 0.5 * (std::conj(zeta) * a2 - zeta * a2.adjoint());
  Eigen::MatrixXcd h = Complex(0.0, -1.0) * g;
  return expm_i_hermitian(h, 1.0);
}

Eigen::VectorXcd coherent_state(Complex alpha, int dim) {
  check_coherent_tail(alpha, dim, "coherent_state");
  Eigen::VectorXcd v(dim);
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  v(0) = amp;
  for (int n = 1; n < dim; ++n) {
    amp *= alpha / std::sqrt(static_cast<double>(n));
    v(n) = amp;
  }
  v /= v.norm();
  return v;
}

Eigen::VectorXcd cat_state(Complex alpha, double phi_cat, int dim) {
  check_coherent_tail(alpha, dim, "cat_state");
  double norm_sq = 2.0 * (1.0 + std::cos(phi_cat) * std::exp(-2.0 * std::norm(alpha)));
  if (norm_sq < 1e-12)
    throw std::runtime_error("cat_state: vanishing normalization (odd cat at alpha -> 0)");
  Eigen::VectorXcd v(dim);
  Complex phase = std::exp(Complex(0.0, phi_cat));
  Complex ap = std::exp(-0.5 * std::norm(alpha));
  Complex am = ap;
  v(0) = ap + phase * am;
  for (int n = 1; n < dim; ++n) {
    ap *= alpha / std::sqrt(static_cast<double>(n));
    am *= -alpha / std::sqrt(static_cast<double>(n));
    v(n) = ap + phase * am;
  }
  v /= v.norm();
  return v;
}

ModeOperator on_mode(Factor mode, Eigen::MatrixXcd matrix) {
  if (mode == Factor::Qubit)
    throw std::invalid_argument("on_mode: bosonic operator cannot target the qubit");
  return ModeOperator{mode, std::move(matrix)};
}

}  // namespace swaptest
