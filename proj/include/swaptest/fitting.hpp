#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace swaptest {
namespace fitting {

// y = p0 sin^2(p1 x)                      (SineSquared: P0, Omega0)
// y = p0 sin(x + p1) + p2                 (Sinusoid: amplitude, phase, offset)
// y = p0 exp(-(x - p1)^2 / (2 p2^2))      (Gaussian: amplitude, center, width)
// y = g (1+cos x)(1+E)/(2(1+E cos x)),    (CatEq2: gamma in (0,1], alpha_sq > 0;
//     E = e^{-2 a}                         bounds kept by internal transform)
enum class FitModelKind { SineSquared, Sinusoid, Gaussian, CatEq2 };

struct FitModel {
  FitModelKind kind;

  int param_count() const;
  std::vector<std::string> param_names() const;

  double eval(double x, const Eigen::VectorXd& params) const;
  Eigen::VectorXd grad(double x, const Eigen::VectorXd& params) const;

  // bounded external <-> unconstrained internal parametrization
  Eigen::VectorXd to_external(const Eigen::VectorXd& internal) const;
  Eigen::VectorXd to_internal(const Eigen::VectorXd& external) const;
  Eigen::VectorXd transform_jacobian(const Eigen::VectorXd& internal) const;

  Eigen::VectorXd initial_guess(const std::vector<double>& xs,
                                const std::vector<double>& ys) const;
};

struct FitResult {
  Eigen::VectorXd parameters;  // external space
  Eigen::VectorXd stderrs;     // from residual covariance; NaN if degenerate
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  bool degenerate = false;  // singular Jacobian at the solution
};

// Damped Gauss-Newton least squares. Throws on non-convergence after
// max_iterations and on malformed input.
FitResult fit(FitModelKind kind, const std::vector<double>& xs,
              const std::vector<double>& ys,
              const std::vector<double>* sigmas = nullptr,
              int max_iterations = 200);

FitResult fit_from(FitModelKind kind, const std::vector<double>& xs,
                   const std::vector<double>& ys,
                   const std::vector<double>* sigmas,
                   const Eigen::VectorXd& initial_external,
                   int max_iterations = 200);

// Bernoulli-shot-noise bootstrap: resamples each point as
// Binomial(shots, y)/shots, refits, returns the parameter standard
// deviations. Throws if more than 5% of replicas fail to converge.
Eigen::VectorXd bootstrap_errors(FitModelKind kind, const std::vector<double>& xs,
                                 const std::vector<double>& ys, int shots_per_point,
                                 int replicas, uint64_t seed);

// finite-difference cross-check hook for the analytic gradients
Eigen::VectorXd grad_fd(const FitModel& model, double x, const Eigen::VectorXd& params,
                        double rel_step = 1e-6);

}  // namespace fitting
}  // namespace swaptest
