#pragma once

#include "swaptest/protocols.hpp"

namespace swaptest {
// Independent reference values for every overlap and purity the simulator
// produces. Everything here is built from analytic Fock-amplitude series,
// never from the gate/exponential machinery it validates.
namespace oracles {

enum class OracleMethod { ClosedForm, FockSum };

struct OracleResult {
  double value;
  OracleMethod method;
  std::optional<int> truncation_used;
};

// delta_mn
double fock_overlap(int m, int n);

// |<Psi|Phi>|^2 for (|0>+|1>)/sqrt(2) vs (|0> - e^{i phi}|1>)/sqrt(2)
// = sin^2(phi/2)
double superposition01_overlap(double phi01);

// exp(-|alpha - beta|^2)
double coherent_overlap(Complex alpha, Complex beta);

// Fock-sum overlap of squeezed vacua with generator phases 0 and dphi;
// no closed form asserted.
OracleResult squeezed_overlap(double r, double dphi, int truncation = 80);

// gamma (1 + cos phi)(1 + e^{-2|a|^2}) / [2 (1 + cos phi e^{-2|a|^2})]
double cat_overlap(double alpha_sq, double phi_cat, double gamma);

// gamma00 cos^4(phi1/2) + gamma11 sin^4(phi1/2)
double purity_rho1(double phi1, double gamma00, double gamma11);

// gamma_alpha (sin^4(phi2/2 + pi/4) + cos^4(phi2/2 + pi/4))
double purity_rho2(double phi2, double alpha_sq, double gamma_alpha);

// exact Tr(rho_2^2) including coherent-branch non-orthogonality,
// evaluated by brute force on analytic states
OracleResult purity_rho2_exact(double phi2, double alpha_sq, int truncation = 80);

// --- analytic state constructors (Fock-amplitude series) ---
Eigen::VectorXcd analytic_coherent(Complex alpha, int dim);
Eigen::VectorXcd analytic_squeezed(double r, double phi, int dim);
Eigen::VectorXcd analytic_cat(Complex alpha, double phi_cat, int dim);

// |<a|b>|^2 by direct Fock sum
double fock_sum_overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// Tr(rho_B rho_C) for two recipes, from the analytic branch decompositions.
OracleResult recipe_overlap(const PrepRecipe& b, const PrepRecipe& c, int truncation = 80);

}  // namespace oracles
}  // namespace swaptest
