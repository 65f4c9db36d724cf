#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "swaptest/fitting.hpp"
#include "swaptest/oracles.hpp"
#include "swaptest/rng.hpp"

using namespace swaptest;
using namespace swaptest::fitting;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

}  // namespace

TEST_CASE("noiseless sine-squared recovery at the reference coupling") {
  double omega0 = 2.0 * M_PI * 680.0;
  auto xs = linspace(0.0, 1.2e-3, 40);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(1.0 * std::pow(std::sin(omega0 * x), 2));
  FitResult r = fit(FitModelKind::SineSquared, xs, ys);
  CHECK(r.converged);
  CHECK(std::abs(r.parameters(0) - 1.0) < 1e-3);
  CHECK(std::abs(r.parameters(1) - omega0) / omega0 < 1e-3);
}

TEST_CASE("noiseless cat-eq2 recovery of reference fit values") {
  auto xs = linspace(0.0, 2.0 * M_PI, 25);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(oracles::cat_overlap(0.9, x, 0.62));
  FitResult r = fit(FitModelKind::CatEq2, xs, ys);
  CHECK(r.converged);
  CHECK(std::abs(r.parameters(0) - 0.62) < 1e-6);
  CHECK(std::abs(r.parameters(1) - 0.9) < 1e-6);
}

TEST_CASE("noiseless gaussian and sinusoid recovery") {
  auto xs = linspace(-3.0, 5.0, 50);
  std::vector<double> yg, ysin;
  for (double x : xs) {
    yg.push_back(0.8 * std::exp(-std::pow(x - 1.1, 2) / (2.0 * 0.7 * 0.7)));
    ysin.push_back(0.4 * std::sin(x + 0.9) + 0.5);
  }
  FitResult g = fit(FitModelKind::Gaussian, xs, yg);
  CHECK(g.converged);
  CHECK(std::abs(g.parameters(0) - 0.8) < 1e-6);
  CHECK(std::abs(g.parameters(1) - 1.1) < 1e-6);
  CHECK(std::abs(std::abs(g.parameters(2)) - 0.7) < 1e-6);

  FitResult s = fit(FitModelKind::Sinusoid, xs, ysin);
  CHECK(s.converged);
  CHECK(std::abs(s.parameters(0) - 0.4) < 1e-6);
  CHECK(std::abs(s.parameters(1) - 0.9) < 1e-6);
  CHECK(std::abs(s.parameters(2) - 0.5) < 1e-6);
}

TEST_CASE("flat data flags a degenerate gaussian") {
  auto xs = linspace(0.0, 1.0, 20);
  std::vector<double> ys(20, 0.0);
  FitResult r = fit(FitModelKind::Gaussian, xs, ys);
  CHECK(std::abs(r.parameters(0)) < 1e-8);
  CHECK(r.degenerate);
  CHECK(std::isnan(r.stderrs(2)));
}

TEST_CASE("analytic gradients match finite differences") {
  SplitMix64 rng(8);
  for (FitModelKind kind : {FitModelKind::SineSquared, FitModelKind::Sinusoid,
                            FitModelKind::Gaussian, FitModelKind::CatEq2}) {
    FitModel model{kind};
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd p(model.param_count());
      switch (kind) {
        case FitModelKind::SineSquared:
          p << 0.5 + rng.uniform(), 1.0 + 5.0 * rng.uniform();
          break;
        case FitModelKind::Sinusoid:
          p << 0.2 + rng.uniform(), 2.0 * rng.uniform(), rng.uniform();
          break;
        case FitModelKind::Gaussian:
          p << 0.2 + rng.uniform(), 2.0 * rng.uniform() - 1.0, 0.3 + rng.uniform();
          break;
        case FitModelKind::CatEq2:
          p << 0.2 + 0.7 * rng.uniform(), 0.3 + 2.0 * rng.uniform();
          break;
      }
      double x = 4.0 * rng.uniform();
      if (kind == FitModelKind::CatEq2) x = 0.2 + 2.5 * rng.uniform();
      Eigen::VectorXd analytic = model.grad(x, p);
      Eigen::VectorXd fd = grad_fd(model, x, p);
      for (int k = 0; k < p.size(); ++k) {
        double scale = std::max(1e-8, std::abs(fd(k)));
        CHECK(std::abs(analytic(k) - fd(k)) / scale < 1e-5);
      }
    }
  }
}

TEST_CASE("fit is invariant under data permutation") {
  auto xs = linspace(0.0, 2.0 * M_PI, 25);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(oracles::cat_overlap(1.1, x, 0.8));
  FitResult a = fit(FitModelKind::CatEq2, xs, ys);

  std::vector<double> xs2, ys2;
  SplitMix64 rng(17);
  std::vector<size_t> order(xs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.next_u64() % i]);
  for (size_t i : order) {
    xs2.push_back(xs[i]);
    ys2.push_back(ys[i]);
  }
  FitResult b = fit(FitModelKind::CatEq2, xs2, ys2);
  CHECK(std::abs(a.parameters(0) - b.parameters(0)) < 1e-8);
  CHECK(std::abs(a.parameters(1) - b.parameters(1)) < 1e-8);
}

TEST_CASE("too few points is an error") {
  std::vector<double> xs{0.0, 1.0, 2.0};
  std::vector<double> ys{0.1, 0.2, 0.3};
  CHECK_THROWS(fit(FitModelKind::Gaussian, xs, ys));
}

TEST_CASE("bootstrap errors: zero-noise data has tiny spread") {
  auto xs = linspace(0.0, 2.0 * M_PI, 25);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(oracles::cat_overlap(0.9, x, 0.62));
  // enormous shot count approximates zero noise
  Eigen::VectorXd spread = bootstrap_errors(FitModelKind::CatEq2, xs, ys, 2000000, 100, 3);
  CHECK(spread(0) < 2e-3);
  CHECK(spread(1) < 2e-2);
}

TEST_CASE("bootstrap spread scales like 1/sqrt(shots)") {
  auto xs = linspace(0.0, 2.0 * M_PI, 25);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(oracles::cat_overlap(0.9, x, 0.62));
  Eigen::VectorXd s500 = bootstrap_errors(FitModelKind::CatEq2, xs, ys, 500, 400, 5);
  Eigen::VectorXd s2000 = bootstrap_errors(FitModelKind::CatEq2, xs, ys, 2000, 400, 5);
  double ratio = s500(0) / s2000(0);
  CHECK(ratio > 1.5);
  CHECK(ratio < 2.7);
  // 500-shot gamma_cat spread lands on the expected ~0.04 error scale
  CHECK(s500(0) > 0.005);
  CHECK(s500(0) < 0.12);
}

TEST_CASE("bootstrap requires enough replicas") {
  auto xs = linspace(0.0, 2.0 * M_PI, 25);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(oracles::cat_overlap(0.9, x, 0.62));
  CHECK_THROWS(bootstrap_errors(FitModelKind::CatEq2, xs, ys, 500, 50, 3));
}
