#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "swaptest/oracles.hpp"

using namespace swaptest;
using namespace swaptest::oracles;

TEST_CASE("fock overlap") {
  CHECK(fock_overlap(2, 2) == 1.0);
  CHECK(fock_overlap(1, 0) == 0.0);
  CHECK(fock_overlap(5, 5) == 1.0);
  CHECK_THROWS(fock_overlap(-1, 0));
}

TEST_CASE("superposition01 overlap") {
  CHECK(superposition01_overlap(0.0) == doctest::Approx(0.0));
  CHECK(superposition01_overlap(M_PI) == doctest::Approx(1.0));
  CHECK(superposition01_overlap(M_PI / 2.0) == doctest::Approx(0.5));
}

TEST_CASE("coherent overlap closed form") {
  Complex alpha(1.2, -0.3);
  CHECK(coherent_overlap(alpha, alpha) == doctest::Approx(1.0));

  Complex a3 = std::sqrt(3.0) * std::exp(Complex(0.0, M_PI));
  CHECK(coherent_overlap(a3, a3) == doctest::Approx(1.0));

  Complex b15 = std::sqrt(1.5) * std::exp(Complex(0.0, M_PI));
  double expected = std::exp(-std::pow(std::sqrt(3.0) - std::sqrt(1.5), 2));
  CHECK(coherent_overlap(a3, b15) == doctest::Approx(expected).epsilon(1e-12));

  // cross-check against the Fock-sum brute force at N=30
  Eigen::VectorXcd va = analytic_coherent(a3, 30);
  Eigen::VectorXcd vb = analytic_coherent(b15, 30);
  CHECK(fock_sum_overlap(va, vb) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("squeezed overlap oracle") {
  CHECK(squeezed_overlap(0.7, 0.0).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(squeezed_overlap(0.0, 1.9).value == doctest::Approx(1.0).epsilon(1e-12));

  // peak sharpening with r: overlap at fixed dphi decreases as r grows
  double prev = 2.0;
  for (double r : {0.2, 0.5, 0.8}) {
    double v = squeezed_overlap(r, M_PI / 2.0).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK(squeezed_overlap(0.8, M_PI).value <= 1.0);
  CHECK(squeezed_overlap(0.8, M_PI).value >= 0.0);
}

TEST_CASE("cat overlap closed form") {
  CHECK(cat_overlap(1.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cat_overlap(1.0, M_PI, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cat_overlap(0.9, 0.0, 0.62) == doctest::Approx(0.62).epsilon(1e-12));
  CHECK_THROWS(cat_overlap(1.0, 0.0, 0.0));
}

TEST_CASE("cat overlap equals the brute-force cat inner product") {
  // |<cat(phi)|cat(0)>|^2 against the closed form with gamma=1
  for (double alpha_sq : {0.5, 1.0, 4.0}) {
    double alpha = std::sqrt(alpha_sq);
    Eigen::VectorXcd ref = analytic_cat(alpha, 0.0, 60);
    for (int k = 0; k < 25; ++k) {
      double phi = 2.0 * M_PI * k / 24.0;
      if (std::abs(phi - M_PI) < 1e-12 && alpha_sq < 0.7) continue;
      Eigen::VectorXcd other = analytic_cat(alpha, phi, 60);
      CHECK(std::abs(fock_sum_overlap(ref, other) - cat_overlap(alpha_sq, phi, 1.0)) <
            1e-8);
    }
  }
}

TEST_CASE("purity_rho1 contrast curve") {
  CHECK(purity_rho1(0.0, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(purity_rho1(M_PI / 2.0, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(purity_rho1(M_PI / 2.0, 0.92, 0.88) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(purity_rho1(M_PI, 0.92, 0.88) == doctest::Approx(0.88).epsilon(1e-12));
}

TEST_CASE("purity_rho2 contrast curve and exact variant") {
  CHECK(purity_rho2(M_PI / 2.0, 1.2, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity_rho2(0.0, 1.2, 0.79) == doctest::Approx(0.395).epsilon(1e-12));

  double expected = (1.0 + std::exp(-4.0 * 1.2)) / 2.0;
  CHECK(purity_rho2_exact(0.0, 1.2).value == doctest::Approx(expected).epsilon(1e-9));
  CHECK(purity_rho2_exact(M_PI / 2.0, 1.2).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("oracle values stay in [0,1]") {
  for (double phi = -3.0; phi <= 3.0; phi += 0.37) {
    CHECK(superposition01_overlap(phi) >= 0.0);
    CHECK(superposition01_overlap(phi) <= 1.0);
    CHECK(cat_overlap(1.3, phi, 0.62) >= 0.0);
    CHECK(cat_overlap(1.3, phi, 0.62) <= 1.0 + 1e-12);
    CHECK(purity_rho1(phi, 0.92, 0.88) >= 0.0);
    CHECK(purity_rho1(phi, 0.92, 0.88) <= 1.0);
  }
}

TEST_CASE("analytic squeezed vacuum properties") {
  Eigen::VectorXcd sv = analytic_squeezed(0.8, 0.4, 60);
  CHECK(sv.norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 1; n < 60; n += 2) CHECK(std::abs(sv(n)) < 1e-15);
  double nbar = 0.0;
  for (int n = 0; n < 60; ++n) nbar += n * std::norm(sv(n));
  CHECK(nbar == doctest::Approx(std::sinh(0.8) * std::sinh(0.8)).epsilon(1e-8));
}

TEST_CASE("recipe_overlap covers all kinds") {
  PrepRecipe f0, f1;
  f0.kind = f1.kind = PrepKind::Fock;
  f0.fock_n = 2;
  f1.fock_n = 2;
  CHECK(recipe_overlap(f0, f1).value == doctest::Approx(1.0).epsilon(1e-12));
  f1.fock_n = 3;
  CHECK(recipe_overlap(f0, f1).value == doctest::Approx(0.0).epsilon(1e-12));

  PrepRecipe s_b, s_c;
  s_b.kind = s_c.kind = PrepKind::Superposition01;
  s_b.phi01 = M_PI;  // (|0> + |1>)/sqrt(2)
  s_c.phi01 = 1.7;
  CHECK(recipe_overlap(s_b, s_c).value ==
        doctest::Approx(superposition01_overlap(1.7)).epsilon(1e-9));

  PrepRecipe m1;
  m1.kind = PrepKind::MixedRho1;
  m1.phi1 = M_PI / 2.0;
  CHECK(recipe_overlap(m1, m1).value == doctest::Approx(0.5).epsilon(1e-9));

  PrepRecipe m2;
  m2.kind = PrepKind::MixedRho2;
  m2.phi2 = 0.0;
  m2.alpha_sq = 1.2;
  CHECK(recipe_overlap(m2, m2).value ==
        doctest::Approx((1.0 + std::exp(-4.8)) / 2.0).epsilon(1e-9));
}
