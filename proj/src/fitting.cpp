#include "swaptest/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "swaptest/rng.hpp"

namespace swaptest {
namespace fitting {

namespace {
constexpr double kCostTol = 1e-10;
constexpr double kGradTol = 1e-10;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double p) { return std::log(p / (1.0 - p)); }
}  // namespace

int FitModel::param_count() const {
  switch (kind) {
    case FitModelKind::SineSquared: return 2;
    case FitModelKind::Sinusoid: return 3;
    case FitModelKind::Gaussian: return 3;
    case FitModelKind::CatEq2: return 2;
  }
  return 0;
}

std::vector<std::string> FitModel::param_names() const {
  switch (kind) {
    case FitModelKind::SineSquared: return {"P0", "Omega0"};
    case FitModelKind::Sinusoid: return {"amplitude", "phase", "offset"};
    case FitModelKind::Gaussian: return {"amplitude", "center", "width"};
    case FitModelKind::CatEq2: return {"gamma_cat", "alpha_sq"};
  }
  return {};
}

double FitModel::eval(double x, const Eigen::VectorXd& p) const {
  switch (kind) {
    case FitModelKind::SineSquared: {
      double s = std::sin(p(1) * x);
      return p(0) * s * s;
    }
    case FitModelKind::Sinusoid:
      return p(0) * std::sin(x + p(1)) + p(2);
    case FitModelKind::Gaussian: {
      double z = (x - p(1)) / p(2);
      return p(0) * std::exp(-0.5 * z * z);
    }
    case FitModelKind::CatEq2: {
      double e = std::exp(-2.0 * p(1));
      double c = std::cos(x);
      return p(0) * (1.0 + c) * (1.0 + e) / (2.0 * (1.0 + c * e));
    }
  }
  return 0.0;
}

Eigen::VectorXd FitModel::grad(double x, const Eigen::VectorXd& p) const {
  Eigen::VectorXd g(param_count());
  switch (kind) {
    case FitModelKind::SineSquared: {
      double s = std::sin(p(1) * x);
      g(0) = s * s;
      g(1) = p(0) * std::sin(2.0 * p(1) * x) * x;
      break;
    }
    case FitModelKind::Sinusoid:
      g(0) = std::sin(x + p(1));
      g(1) = p(0) * std::cos(x + p(1));
      g(2) = 1.0;
      break;
    case FitModelKind::Gaussian: {
      double z = (x - p(1)) / p(2);
      double e = std::exp(-0.5 * z * z);
      g(0) = e;
      g(1) = p(0) * e * z / p(2);
      g(2) = p(0) * e * z * z / p(2);
      break;
    }
    case FitModelKind::CatEq2: {
      double e = std::exp(-2.0 * p(1));
      double c = std::cos(x);
      double den = 1.0 + c * e;
      g(0) = (1.0 + c) * (1.0 + e) / (2.0 * den);
      // dy/dE * dE/da, dy/dE = gamma (1+c)(1-c) / (2 den^2)
      double dy_de = p(0) * (1.0 + c) * (1.0 - c) / (2.0 * den * den);
      g(1) = dy_de * (-2.0 * e);
      break;
    }
  }
  return g;
}

Eigen::VectorXd FitModel::to_external(const Eigen::VectorXd& u) const {
  if (kind != FitModelKind::CatEq2) return u;
  Eigen::VectorXd p(2);
  p(0) = logistic(u(0));
  p(1) = std::exp(u(1));
  return p;
}

Eigen::VectorXd FitModel::to_internal(const Eigen::VectorXd& p) const {
  if (kind != FitModelKind::CatEq2) return p;
  Eigen::VectorXd u(2);
  u(0) = logit(std::clamp(p(0), 1e-9, 1.0 - 1e-9));
  u(1) = std::log(std::max(p(1), 1e-9));
  return u;
}

Eigen::VectorXd FitModel::transform_jacobian(const Eigen::VectorXd& u) const {
  if (kind != FitModelKind::CatEq2)
    return Eigen::VectorXd::Ones(param_count());
  Eigen::VectorXd d(2);
  double g = logistic(u(0));
  d(0) = g * (1.0 - g);
  d(1) = std::exp(u(1));
  return d;
}

Eigen::VectorXd FitModel::initial_guess(const std::vector<double>& xs,
                                        const std::vector<double>& ys) const {
  const size_t n = xs.size();
  auto max_it = std::max_element(ys.begin(), ys.end());
  auto min_it = std::min_element(ys.begin(), ys.end());
  double ymax = *max_it, ymin = *min_it;
  size_t imax = static_cast<size_t>(max_it - ys.begin());

  switch (kind) {
    case FitModelKind::SineSquared: {
      Eigen::VectorXd p(2);
      p(0) = ymax;
      // first half-max crossing: sin^2(w x) = 1/2 at w x = pi/4
      double xh = 0.0;
      for (size_t i = 0; i < n; ++i) {
        if (ys[i] >= 0.5 * ymax && xs[i] > 0.0) {
          xh = xs[i];
          break;
        }
      }
      p(1) = (xh > 0.0) ? M_PI / (4.0 * xh) : 1.0;
      return p;
    }
    case FitModelKind::Sinusoid: {
      Eigen::VectorXd p(3);
      p(0) = 0.5 * (ymax - ymin);
      p(1) = M_PI / 2.0 - xs[imax];
      p(2) = 0.5 * (ymax + ymin);
      return p;
    }
    case FitModelKind::Gaussian: {
      Eigen::VectorXd p(3);
      p(0) = ymax;
      p(1) = xs[imax];
      double width = 0.0;
      for (size_t i = imax; i < n; ++i) {
        if (ys[i] < 0.5 * ymax) {
          width = (xs[i] - xs[imax]) / 1.177;  // HWHM -> sigma
          break;
        }
      }
      if (width <= 0.0) width = 0.25 * (xs.back() - xs.front());
      if (width <= 0.0) width = 1.0;
      p(2) = width;
      return p;
    }
    case FitModelKind::CatEq2: {
      Eigen::VectorXd p(2);
      // gamma ~ peak height, averaged over the points near cos(x) = 1 to
      // suppress shot noise
      double peak_sum = 0.0;
      int peak_n = 0;
      for (size_t i = 0; i < n; ++i) {
        if (std::cos(xs[i]) > 0.9) {
          peak_sum += ys[i];
          ++peak_n;
        }
      }
      double gamma = std::clamp(peak_n ? peak_sum / peak_n : ymax, 1e-3, 1.0 - 1e-6);
      // invert y = gamma (1+c)(1+E) / (2 (1+cE)) per mid-curve point and take
      // the median; a single noisy point would make the estimate run away
      std::vector<double> es;
      for (size_t i = 0; i < n; ++i) {
        double c = std::cos(xs[i]);
        if (std::abs(c) > 0.7) continue;
        double den = 2.0 * ys[i] * c - gamma * (1.0 + c);
        if (std::abs(den) < 1e-12) continue;
        double e = (gamma * (1.0 + c) - 2.0 * ys[i]) / den;
        if (std::isfinite(e) && e > 1e-4 && e < 0.999) es.push_back(e);
      }
      double e0 = 0.2;
      if (!es.empty()) {
        std::nth_element(es.begin(), es.begin() + es.size() / 2, es.end());
        e0 = es[es.size() / 2];
      }
      p(0) = gamma;
      p(1) = -0.5 * std::log(e0);
      return p;
    }
  }
  return Eigen::VectorXd::Zero(param_count());
}

Eigen::VectorXd grad_fd(const FitModel& model, double x, const Eigen::VectorXd& p,
                        double rel_step) {
  Eigen::VectorXd g(p.size());
  for (int k = 0; k < p.size(); ++k) {
    double h = rel_step * std::max(std::abs(p(k)), 1.0);
    Eigen::VectorXd lo = p, hi = p;
    lo(k) -= h;
    hi(k) += h;
    g(k) = (model.eval(x, hi) - model.eval(x, lo)) / (2.0 * h);
  }
  return g;
}

FitResult fit_from(FitModelKind kind, const std::vector<double>& xs,
                   const std::vector<double>& ys,
                   const std::vector<double>* sigmas,
                   const Eigen::VectorXd& initial_external, int max_iterations) {
  FitModel model{kind};
  const int np = model.param_count();
  const int n = static_cast<int>(xs.size());
  if (ys.size() != xs.size())
    throw std::invalid_argument("fit: xs/ys size mismatch");
  if (n < 2 * np)
    throw std::invalid_argument("fit: need at least 2x parameter count data points");
  if (sigmas && static_cast<int>(sigmas->size()) != n)
    throw std::invalid_argument("fit: sigmas size mismatch");
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
      throw std::invalid_argument("fit: non-finite input");
    if (sigmas && (!std::isfinite((*sigmas)[i]) || (*sigmas)[i] <= 0.0))
      throw std::invalid_argument("fit: non-positive sigma");
  }

  auto residuals = [&](const Eigen::VectorXd& u, Eigen::VectorXd& r) {
    Eigen::VectorXd p = model.to_external(u);
    for (int i = 0; i < n; ++i) {
      double s = sigmas ? (*sigmas)[i] : 1.0;
      r(i) = (model.eval(xs[i], p) - ys[i]) / s;
    }
  };
  auto jacobian = [&](const Eigen::VectorXd& u, Eigen::MatrixXd& j) {
    Eigen::VectorXd p = model.to_external(u);
    Eigen::VectorXd tj = model.transform_jacobian(u);
    for (int i = 0; i < n; ++i) {
      double s = sigmas ? (*sigmas)[i] : 1.0;
      j.row(i) = (model.grad(xs[i], p).cwiseProduct(tj) / s).transpose();
    }
  };

  Eigen::VectorXd u = model.to_internal(initial_external);
  Eigen::VectorXd r(n);
  Eigen::MatrixXd j(n, np);
  residuals(u, r);
  double cost = 0.5 * r.squaredNorm();

  double lambda = 1e-3;
  int iter = 0;
  bool converged = false;
  for (; iter < max_iterations; ++iter) {
    jacobian(u, j);
    Eigen::MatrixXd jtj = j.transpose() * j;
    Eigen::VectorXd jtr = j.transpose() * r;
    if (jtr.norm() < kGradTol) {
      converged = true;
      break;
    }
    Eigen::VectorXd diag = jtj.diagonal().cwiseMax(1e-12);
    Eigen::MatrixXd damped = jtj;
    damped.diagonal() += lambda * diag;
    Eigen::VectorXd step = damped.ldlt().solve(-jtr);
    Eigen::VectorXd u_new = u + step;
    Eigen::VectorXd r_new(n);
    residuals(u_new, r_new);
    double cost_new = 0.5 * r_new.squaredNorm();
    if (cost_new < cost) {
      double rel = (cost - cost_new) / std::max(cost, 1e-300);
      u = u_new;
      r = r_new;
      lambda = std::max(lambda / 10.0, 1e-12);
      cost = cost_new;
      if (rel < kCostTol) {
        converged = true;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;  // stuck; rejected steps cannot shrink further
    }
  }
  if (!converged) throw std::runtime_error("fit: no convergence within max iterations");

  FitResult result;
  result.converged = true;
  result.iterations = iter;
  result.parameters = model.to_external(u);
  result.residual_norm = std::sqrt(2.0 * cost);

  jacobian(u, j);
  Eigen::MatrixXd jtj = j.transpose() * j;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  lu.setThreshold(1e-10);
  result.stderrs = Eigen::VectorXd::Constant(np, std::numeric_limits<double>::quiet_NaN());
  if (lu.rank() < np) {
    result.degenerate = true;
  } else {
    double s2 = sigmas ? 1.0 : 2.0 * cost / std::max(n - np, 1);
    Eigen::MatrixXd cov = s2 * jtj.inverse();
    // stderr in external space: delta method over the diagonal transform
    Eigen::VectorXd tj = model.transform_jacobian(u);
    for (int k = 0; k < np; ++k)
      result.stderrs(k) = std::sqrt(std::max(cov(k, k), 0.0)) * tj(k);
  }
  return result;
}

FitResult fit(FitModelKind kind, const std::vector<double>& xs,
              const std::vector<double>& ys, const std::vector<double>* sigmas,
              int max_iterations) {
  FitModel model{kind};
  if (xs.empty()) throw std::invalid_argument("fit: empty data");
  return fit_from(kind, xs, ys, sigmas, model.initial_guess(xs, ys), max_iterations);
}

Eigen::VectorXd bootstrap_errors(FitModelKind kind, const std::vector<double>& xs,
                                 const std::vector<double>& ys, int shots_per_point,
                                 int replicas, uint64_t seed) {
  if (replicas < 100) throw std::invalid_argument("bootstrap_errors: replicas must be >= 100");
  if (shots_per_point < 1)
    throw std::invalid_argument("bootstrap_errors: shots_per_point must be >= 1");
  FitModel model{kind};
  const int np = model.param_count();

  std::vector<Eigen::VectorXd> samples;
  samples.reserve(replicas);
  int failures = 0;
  for (int rep = 0; rep < replicas; ++rep) {
    SplitMix64 rng(SplitMix64::derive(seed, rep));
    std::vector<double> resampled(ys.size());
    for (size_t i = 0; i < ys.size(); ++i) {
      double p = std::clamp(ys[i], 0.0, 1.0);
      resampled[i] =
          static_cast<double>(sample_binomial(rng, shots_per_point, p)) / shots_per_point;
    }
    try {
      samples.push_back(fit(kind, xs, resampled).parameters);
    } catch (const std::runtime_error&) {
      ++failures;
    }
  }
  if (failures * 20 > replicas)
    throw std::runtime_error("bootstrap_errors: more than 5% of replicas failed to converge");

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(np);
  for (const auto& s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  Eigen::VectorXd var = Eigen::VectorXd::Zero(np);
  for (const auto& s : samples) var += (s - mean).cwiseAbs2();
  var /= std::max<double>(samples.size() - 1, 1.0);
  return var.cwiseSqrt();
}

}  // namespace fitting
}  // namespace swaptest
