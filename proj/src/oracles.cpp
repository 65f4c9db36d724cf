#include "swaptest/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace swaptest {
namespace oracles {

double fock_overlap(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("fock_overlap: negative occupation");
  return (m == n) ? 1.0 : 0.0;
}

double superposition01_overlap(double phi01) {
  double s = std::sin(0.5 * phi01);
  return s * s;
}

double coherent_overlap(Complex alpha, Complex beta) {
  return std::exp(-std::norm(alpha - beta));
}

Eigen::VectorXcd analytic_coherent(Complex alpha, int dim) {
  Eigen::VectorXcd v(dim);
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  v(0) = amp;
  for (int n = 1; n < dim; ++n) {
    amp *= alpha / std::sqrt(static_cast<double>(n));
    v(n) = amp;
  }
  return v / v.norm();
}

Eigen::VectorXcd analytic_squeezed(double r, double phi, int dim) {
  if (r < 0.0) throw std::invalid_argument("analytic_squeezed: r must be >= 0");
  // c_{2m} = (cosh r)^{-1/2} (-e^{i phi} tanh r)^m sqrt((2m)!) / (2^m m!)
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  Complex c = 1.0 / std::sqrt(std::cosh(r));
  Complex factor = -std::exp(Complex(0.0, phi)) * std::tanh(r);
  v(0) = c;
  for (int m = 1; 2 * m < dim; ++m) {
    c *= factor * std::sqrt((2.0 * m - 1.0) / (2.0 * m));
    v(2 * m) = c;
  }
  return v / v.norm();
}

Eigen::VectorXcd analytic_cat(Complex alpha, double phi_cat, int dim) {
  Eigen::VectorXcd plus = analytic_coherent(alpha, dim);
  Eigen::VectorXcd minus = analytic_coherent(-alpha, dim);
  Eigen::VectorXcd v = plus + std::exp(Complex(0.0, phi_cat)) * minus;
  double n = v.norm();
  if (n < 1e-9) throw std::runtime_error("analytic_cat: vanishing normalization");
  return v / n;
}

double fock_sum_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("fock_sum_overlap: dimension mismatch");
  return std::norm(a.dot(b));
}

OracleResult squeezed_overlap(double r, double dphi, int truncation) {
  Eigen::VectorXcd s0 = analytic_squeezed(r, 0.0, truncation);
  Eigen::VectorXcd s1 = analytic_squeezed(r, dphi, truncation);
  return {fock_sum_overlap(s0, s1), OracleMethod::FockSum, truncation};
}

double cat_overlap(double alpha_sq, double phi_cat, double gamma) {
  if (alpha_sq < 0.0) throw std::invalid_argument("cat_overlap: alpha_sq must be >= 0");
  if (gamma <= 0.0 || gamma > 1.0)
    throw std::invalid_argument("cat_overlap: gamma outside (0,1]");
  double e = std::exp(-2.0 * alpha_sq);
  double c = std::cos(phi_cat);
  return gamma * (1.0 + c) * (1.0 + e) / (2.0 * (1.0 + c * e));
}

double purity_rho1(double phi1, double gamma00, double gamma11) {
  double c = std::cos(0.5 * phi1), s = std::sin(0.5 * phi1);
  return gamma00 * c * c * c * c + gamma11 * s * s * s * s;
}

double purity_rho2(double phi2, double alpha_sq, double gamma_alpha) {
  (void)alpha_sq;  // the phenomenological contrast model ignores branch non-orthogonality
  double s = std::sin(0.5 * phi2 + M_PI / 4.0), c = std::cos(0.5 * phi2 + M_PI / 4.0);
  return gamma_alpha * (s * s * s * s + c * c * c * c);
}

OracleResult purity_rho2_exact(double phi2, double alpha_sq, int truncation) {
  double alpha = std::sqrt(alpha_sq);
  double ws = std::pow(std::sin(0.5 * phi2 + M_PI / 4.0), 2);
  double wc = 1.0 - ws;
  Eigen::VectorXcd plus = analytic_coherent(alpha, truncation);
  Eigen::VectorXcd minus = analytic_coherent(-alpha, truncation);
  double cross = fock_sum_overlap(plus, minus);
  double value = ws * ws + wc * wc + 2.0 * ws * wc * cross;
  return {value, OracleMethod::FockSum, truncation};
}

namespace {

struct AnalyticBranch {
  double weight;
  Eigen::VectorXcd vector;
};

std::vector<AnalyticBranch> analytic_branches(const PrepRecipe& recipe, int dim) {
  switch (recipe.kind) {
    case PrepKind::Fock: {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      v(recipe.fock_n) = 1.0;
      return {{1.0, v}};
    }
    case PrepKind::Superposition01: {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
      v(0) = 1.0 / std::sqrt(2.0);
      v(1) = -std::exp(Complex(0.0, recipe.phi01)) / std::sqrt(2.0);
      return {{1.0, v}};
    }
    case PrepKind::Coherent: {
      Complex alpha = std::sqrt(recipe.alpha_sq) * std::exp(Complex(0.0, recipe.phase));
      return {{1.0, analytic_coherent(alpha, dim)}};
    }
    case PrepKind::Squeezed:
      return {{1.0, analytic_squeezed(recipe.r, recipe.phi_sqz, dim)}};
    case PrepKind::Cat:
      return {{1.0, analytic_cat(std::sqrt(recipe.alpha_sq), recipe.phi_cat, dim)}};
    case PrepKind::MixedRho1: {
      double s2 = std::pow(std::sin(0.5 * recipe.phi1), 2);
      Eigen::VectorXcd f0 = Eigen::VectorXcd::Zero(dim), f1 = Eigen::VectorXcd::Zero(dim);
      f0(0) = 1.0;
      f1(1) = 1.0;
      std::vector<AnalyticBranch> out;
      if (1.0 - s2 > 0.0) out.push_back({1.0 - s2, f0});
      if (s2 > 0.0) out.push_back({s2, f1});
      return out;
    }
    case PrepKind::MixedRho2: {
      double alpha = std::sqrt(recipe.alpha_sq);
      double ws = std::pow(std::sin(0.5 * recipe.phi2 + M_PI / 4.0), 2);
      std::vector<AnalyticBranch> out;
      if (ws > 0.0) out.push_back({ws, analytic_coherent(alpha, dim)});
      if (1.0 - ws > 0.0) out.push_back({1.0 - ws, analytic_coherent(-alpha, dim)});
      return out;
    }
  }
  throw std::logic_error("analytic_branches: unknown recipe kind");
}

}  // namespace

OracleResult recipe_overlap(const PrepRecipe& b, const PrepRecipe& c, int truncation) {
  auto bs = analytic_branches(b, truncation);
  auto cs = analytic_branches(c, truncation);
  double value = 0.0;
  for (const auto& x : bs)
    for (const auto& y : cs)
      value += x.weight * y.weight * fock_sum_overlap(x.vector, y.vector);
  return {value, OracleMethod::FockSum, truncation};
}

}  // namespace oracles
}  // namespace swaptest
