#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "swaptest/hilbert.hpp"
#include "swaptest/rng.hpp"

using namespace swaptest;

namespace {

Ensemble random_ensemble(const ModeLayout& layout, int rank, SplitMix64& rng) {
  Ensemble out;
  double w1 = rank == 1 ? 1.0 : 0.2 + 0.6 * rng.uniform();
  for (int k = 0; k < rank; ++k) {
    PureState s{layout, Eigen::VectorXcd(layout.total_dim())};
    for (int i = 0; i < layout.total_dim(); ++i)
      s.amplitudes(i) = Complex(rng.gaussian(), rng.gaussian());
    s.normalize();
    out.branches.push_back({rank == 1 ? 1.0 : (k == 0 ? w1 : 1.0 - w1), s});
  }
  out.validate();
  return out;
}

}  // namespace

TEST_CASE("basis state indexing") {
  ModeLayout layout(4, 4, 4);
  PureState g000 = make_basis_state(layout, kQubitLevelG, 0, 0, 0);
  CHECK(g000.amplitudes(0) == Complex(1.0, 0.0));
  CHECK(g000.amplitudes.cwiseAbs().sum() == doctest::Approx(1.0));

  PureState e000 = make_basis_state(layout, kQubitLevelE, 0, 0, 0);
  CHECK(e000.amplitudes(4 * 4 * 4) == Complex(1.0, 0.0));

  // recompute (g,1,2,3) by an independent decoding loop
  PureState s = make_basis_state(layout, kQubitLevelG, 1, 2, 3);
  CHECK(s.amplitudes(27) == Complex(1.0, 0.0));
  int found = -1;
  for (int idx = 0; idx < layout.total_dim(); ++idx) {
    int rem = idx;
    int nc = rem % 4;
    rem /= 4;
    int nb = rem % 4;
    rem /= 4;
    int na = rem % 4;
    rem /= 4;
    int q = rem;
    if (q == kQubitLevelG && na == 1 && nb == 2 && nc == 3) found = idx;
  }
  CHECK(found == 27);
}

TEST_CASE("basis state out of range throws") {
  ModeLayout layout(3, 3, 3);
  CHECK_THROWS(make_basis_state(layout, kQubitLevelG, 3, 0, 0));
  CHECK_THROWS(make_basis_state(layout, 2, 0, 0, 0));
}

TEST_CASE("index encode/decode round-trip") {
  ModeLayout layout(3, 4, 5);
  for (int idx = 0; idx < layout.total_dim(); ++idx) {
    auto d = layout.decode(idx);
    CHECK(layout.index_of(d[0], d[1], d[2], d[3]) == idx);
  }
}

TEST_CASE("inner product") {
  ModeLayout layout(3, 3, 3);
  SplitMix64 rng(11);
  PureState x{layout, Eigen::VectorXcd(layout.total_dim())};
  PureState y{layout, Eigen::VectorXcd(layout.total_dim())};
  for (int i = 0; i < layout.total_dim(); ++i) {
    x.amplitudes(i) = Complex(rng.gaussian(), rng.gaussian());
    y.amplitudes(i) = Complex(rng.gaussian(), rng.gaussian());
  }
  x.normalize();
  y.normalize();
  CHECK(inner_product(x, x).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(inner_product(x, y) - std::conj(inner_product(y, x))) < 1e-14);

  PureState b0 = make_basis_state(layout, kQubitLevelG, 0, 1, 0);
  PureState b1 = make_basis_state(layout, kQubitLevelG, 0, 2, 0);
  CHECK(std::abs(inner_product(b0, b1)) == 0.0);

  ModeLayout other(4, 3, 3);
  PureState z = make_basis_state(other, kQubitLevelG, 0, 0, 0);
  CHECK_THROWS(inner_product(x, z));
}

TEST_CASE("partial trace of product state") {
  ModeLayout layout(3, 3, 3);
  Ensemble e = Ensemble::pure(make_basis_state(layout, kQubitLevelG, 0, 0, 0));
  ReducedDensity rho = partial_trace(e, {Factor::Qubit});
  CHECK(rho.matrix.rows() == 2);
  CHECK(std::abs(rho.matrix(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(rho.matrix(1, 1)) < 1e-14);
}

TEST_CASE("partial trace of entangled qubit-B state") {
  ModeLayout layout(2, 2, 2);
  PureState s{layout, Eigen::VectorXcd::Zero(layout.total_dim())};
  s.amplitudes(layout.index_of(kQubitLevelG, 0, 0, 0)) = 1.0 / std::sqrt(2.0);
  s.amplitudes(layout.index_of(kQubitLevelE, 0, 1, 0)) = 1.0 / std::sqrt(2.0);
  ReducedDensity rho = partial_trace(Ensemble::pure(s), {Factor::Qubit});
  CHECK(std::abs(rho.matrix(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(rho.matrix(1, 1) - 0.5) < 1e-14);
  CHECK(std::abs(rho.matrix(0, 1)) < 1e-14);
}

TEST_CASE("partial trace keep-all equals the density matrix") {
  ModeLayout layout(2, 2, 2);
  SplitMix64 rng(21);
  Ensemble e = random_ensemble(layout, 2, rng);
  ReducedDensity rho = partial_trace(
      e, {Factor::Qubit, Factor::ModeA, Factor::ModeB, Factor::ModeC});
  Eigen::MatrixXcd expected =
      Eigen::MatrixXcd::Zero(layout.total_dim(), layout.total_dim());
  for (const auto& br : e.branches)
    expected += br.weight * br.state.amplitudes * br.state.amplitudes.adjoint();
  CHECK((rho.matrix - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(rho.matrix.trace().real() - 1.0) < 1e-12);
  CHECK_THROWS(partial_trace(e, {}));
}

TEST_CASE("reduced density invariants on random ensembles") {
  ModeLayout layout(3, 4, 2);
  SplitMix64 rng(33);
  for (int trial = 0; trial < 5; ++trial) {
    Ensemble e = random_ensemble(layout, 2, rng);
    for (auto keep : {std::vector<Factor>{Factor::ModeB},
                      std::vector<Factor>{Factor::Qubit, Factor::ModeA}}) {
      ReducedDensity rho = partial_trace(e, keep);
      CHECK((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(rho.matrix.trace().real() - 1.0) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix);
      CHECK(es.eigenvalues().minCoeff() > -1e-10);
    }
  }
}

TEST_CASE("qubit ground probability") {
  ModeLayout layout(3, 3, 3);
  Ensemble g = Ensemble::pure(make_basis_state(layout, kQubitLevelG, 0, 1, 2));
  CHECK(qubit_ground_probability(g) == doctest::Approx(1.0).epsilon(1e-12));

  PureState plus{layout, Eigen::VectorXcd::Zero(layout.total_dim())};
  plus.amplitudes(layout.index_of(kQubitLevelG, 0, 1, 2)) = 1.0 / std::sqrt(2.0);
  plus.amplitudes(layout.index_of(kQubitLevelE, 0, 1, 2)) = 1.0 / std::sqrt(2.0);
  CHECK(qubit_ground_probability(Ensemble::pure(plus)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("overlap_exact") {
  ModeLayout layout(3, 3, 3);
  Ensemble e0 = Ensemble::pure(make_basis_state(layout, kQubitLevelG, 0, 0, 0));
  Ensemble e1 = Ensemble::pure(make_basis_state(layout, kQubitLevelG, 0, 1, 0));
  ReducedDensity r0 = partial_trace(e0, {Factor::ModeB});
  ReducedDensity r1 = partial_trace(e1, {Factor::ModeB});
  CHECK(overlap_exact(r0, r0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap_exact(r0, r1) == doctest::Approx(0.0).epsilon(1e-12));

  ReducedDensity mixed{{Factor::Qubit}, Eigen::MatrixXcd::Identity(2, 2) * 0.5};
  CHECK(overlap_exact(mixed, mixed) == doctest::Approx(0.5).epsilon(1e-12));

  ReducedDensity d3{{Factor::ModeA}, Eigen::MatrixXcd::Identity(3, 3) / 3.0};
  CHECK_THROWS(overlap_exact(mixed, d3));
}

TEST_CASE("overlap_exact symmetry for random ensembles") {
  ModeLayout layout(4, 4, 4);
  SplitMix64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    Ensemble e1 = random_ensemble(layout, 2, rng);
    Ensemble e2 = random_ensemble(layout, 2, rng);
    ReducedDensity b = partial_trace(e1, {Factor::ModeB});
    ReducedDensity c = partial_trace(e2, {Factor::ModeB});
    CHECK(std::abs(overlap_exact(b, c) - overlap_exact(c, b)) < 1e-12);
  }
}

TEST_CASE("tail diagnostic") {
  ModeLayout layout(4, 4, 4);
  Ensemble ok = Ensemble::pure(make_basis_state(layout, kQubitLevelG, 0, 1, 0));
  CHECK_NOTHROW(check_tails(ok));
  Ensemble bad = Ensemble::pure(make_basis_state(layout, kQubitLevelG, 0, 3, 0));
  CHECK(tail_mass(bad.branches[0].state, Factor::ModeB) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(check_tails(bad));
}

TEST_CASE("install_mode_state requires vacuum") {
  ModeLayout layout(4, 4, 4);
  PureState s = make_basis_state(layout, kQubitLevelG, 0, 0, 0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(1) = 1.0;
  PureState t = install_mode_state(s, Factor::ModeB, v);
  CHECK(std::abs(t.amplitudes(layout.index_of(kQubitLevelG, 0, 1, 0)) -
                 Complex(1.0, 0.0)) < 1e-14);
  CHECK(mean_phonon_number(t, Factor::ModeB) == doctest::Approx(1.0));
  CHECK_THROWS(install_mode_state(t, Factor::ModeB, v));
}

TEST_CASE("ensemble validation") {
  ModeLayout layout(2, 2, 2);
  Ensemble e = Ensemble::pure(make_basis_state(layout, kQubitLevelG, 0, 0, 0));
  CHECK_NOTHROW(e.validate());
  e.branches[0].weight = 0.7;
  CHECK_THROWS(e.validate());
}
