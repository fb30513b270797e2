#include <doctest.h>

#include <cmath>

#include "qprop/fock_oracle.hpp"
#include "qprop/model.hpp"

using namespace qprop;

namespace {

Eigen::MatrixXcd commutator_with_system(const TruncatedOperator& h, double omega) {
  // [H, sigma_z x I] with sigma_z = diag(-1, +1) in the (down, up) ordering;
  // the system term is (omega/2) sigma_z so this detects non-QND coupling.
  const Eigen::Index d = h.bath_dim();
  Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(h.dim(), h.dim());
  sz.topLeftCorner(d, d) = -0.5 * omega * Eigen::MatrixXcd::Identity(d, d);
  sz.bottomRightCorner(d, d) = 0.5 * omega * Eigen::MatrixXcd::Identity(d, d);
  return h.matrix * sz - sz * h.matrix;
}

}  // namespace

TEST_CASE("free system Hamiltonian") {
  Model m({1.0, {}}, {BathKind::Oscillator, {}});
  TruncationSpec tr;
  auto h = build_hamiltonian(ModelKind::H1, m, tr);
  CHECK(h.dim() == 2);
  Eigen::MatrixXcd expected(2, 2);
  expected << -0.5, 0.0, 0.0, 0.5;
  CHECK((h.matrix - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("qnd coupling commutes with the system term, non-qnd does not") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.2, 0.2}}});
  TruncationSpec tr;
  tr.fock_cutoff = 12;
  auto h1 = build_hamiltonian(ModelKind::H1, m, tr);
  CHECK(commutator_with_system(h1, 1.0).cwiseAbs().maxCoeff() < 1e-12);
  auto h3 = build_hamiltonian(ModelKind::H3, m, tr);
  CHECK(commutator_with_system(h3, 1.0).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("hamiltonians are hermitian and evolution is unitary") {
  Model m({1.0, 0.7}, {BathKind::Oscillator, {{1.2, 0.2}}});
  TruncationSpec tr;
  tr.fock_cutoff = 10;
  for (ModelKind kind : {ModelKind::H1, ModelKind::H2, ModelKind::H3}) {
    auto h = build_hamiltonian(kind, m, tr);
    CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    auto u = evolve(h, 1.3);
    CHECK((u.matrix * u.matrix.adjoint() -
           Eigen::MatrixXcd::Identity(u.dim(), u.dim()))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("evolution special values and group property") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.2, 0.2}}});
  TruncationSpec tr;
  tr.fock_cutoff = 10;
  Evolver ev(build_hamiltonian(ModelKind::H3, m, tr));
  auto u0 = ev.unitary(0.0);
  CHECK((u0.matrix - Eigen::MatrixXcd::Identity(u0.dim(), u0.dim())).cwiseAbs().maxCoeff() <
        1e-13);
  const double t1 = 0.6, t2 = 1.1;
  CHECK((ev.unitary(t1).matrix * ev.unitary(t2).matrix - ev.unitary(t1 + t2).matrix)
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK((ev.unitary(-t1).matrix - ev.unitary(t1).matrix.adjoint()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("diagonal Hamiltonian evolves by elementwise phases") {
  Model m({2.0, {}}, {BathKind::Oscillator, {}});
  TruncationSpec tr;
  auto u = evolve(build_hamiltonian(ModelKind::H1, m, tr), 0.9);
  CHECK(std::abs(u.matrix(0, 0) - std::exp(cplx(0.0, 0.9))) < 1e-13);
  CHECK(std::abs(u.matrix(1, 1) - std::exp(cplx(0.0, -0.9))) < 1e-13);
}

TEST_CASE("bargmann kernel of the identity") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.2, 0.2}}});
  TruncationSpec tr;
  tr.fock_cutoff = 30;
  Evolver ev(build_hamiltonian(ModelKind::H1, m, tr));
  const CoherentVector as{{0.3, 0.1}}, ap{{-0.2, 0.2}};
  auto k = bargmann_kernel(ev.unitary(0.0), as, ap);
  const cplx expected = std::exp(as[0] * ap[0]);
  CHECK(std::abs(k.prop.amplitudes(0, 0) - expected) < 1e-10);
  CHECK(std::abs(k.prop.amplitudes(1, 1) - expected) < 1e-10);
  CHECK(std::abs(k.prop.amplitudes(0, 1)) < 1e-10);
  CHECK_FALSE(k.flagged);
}

TEST_CASE("free-bath kernel carries the rotating label factor") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.2, 0.0}}});
  TruncationSpec tr;
  tr.fock_cutoff = 30;
  Evolver ev(build_hamiltonian(ModelKind::H1, m, tr));
  const CoherentVector as{{0.3, 0.0}}, ap{{0.2, 0.1}};
  const double t = 1.4;
  auto k = bargmann_kernel(ev.unitary(t), as, ap);
  const cplx kernel = std::exp(as[0] * ap[0] * std::exp(cplx(0.0, -1.2 * t)));
  CHECK(std::abs(k.prop.amplitudes(0, 0) - kernel * std::exp(cplx(0.0, 0.5 * t))) < 1e-10);
  CHECK(std::abs(k.prop.amplitudes(1, 1) - kernel * std::exp(cplx(0.0, -0.5 * t))) < 1e-10);
}

TEST_CASE("large labels are flagged by the tail bound") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.2, 0.1}}});
  TruncationSpec tr;
  tr.fock_cutoff = 4;
  Evolver ev(build_hamiltonian(ModelKind::H1, m, tr));
  auto k = bargmann_kernel(ev.unitary(1.0), {cplx(2.5)}, {cplx(2.5)}, 1e-8);
  CHECK(k.flagged);
  CHECK(k.tail_bound > 1e-8);
}

TEST_CASE("reduced density at t=0 and trace preservation") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.0, 0.3}}});
  TruncationSpec tr;
  tr.fock_cutoff = 25;
  Matrix2cd rho0;
  rho0 << 0.7, cplx(0.2, -0.1), cplx(0.2, 0.1), 0.3;
  const CoherentVector mu{{0.3, 0.0}};
  auto id = reduced_density(ModelKind::H1, m, tr, rho0, mu, 0.0);
  CHECK((id - rho0).cwiseAbs().maxCoeff() < 1e-10);
  auto rho = reduced_density(ModelKind::H1, m, tr, rho0, mu, 1.2);
  CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-10);
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  // qnd coupling: populations constant, coherence shrinks
  CHECK(std::abs(rho(0, 0) - rho0(0, 0)) < 1e-10);
  CHECK(std::abs(rho(0, 1)) <= std::abs(rho0(0, 1)) + 1e-12);
}

TEST_CASE("non-qnd coupling moves the populations") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.0, 0.2}}});
  TruncationSpec tr;
  tr.fock_cutoff = 25;
  Matrix2cd rho0;
  rho0 << 1.0, 0.0, 0.0, 0.0;
  auto rho = reduced_density(ModelKind::H3, m, tr, rho0, {cplx(0.0)}, 2.0);
  CHECK(std::abs(rho(0, 0) - rho0(0, 0)) > 1e-3);
  CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-10);
}

TEST_CASE("spin-bath reduced density with a product spin state") {
  Model m({1.0, {}}, {BathKind::Spin, {{0.8, 0.4}}});
  TruncationSpec tr;
  Matrix2cd rho0;
  rho0 << 0.5, 0.5, 0.5, 0.5;
  auto rho = reduced_density(ModelKind::H4, m, tr, rho0, {cplx(1.0)}, 1.5);
  CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-10);
  // QND: populations invariant
  CHECK(std::abs(rho(0, 0) - rho0(0, 0)) < 1e-10);
}

TEST_CASE("dimension guard") {
  Model m({1.0, {}},
          {BathKind::Oscillator, {{1.0, 0.1}, {1.2, 0.1}, {1.4, 0.1}}});
  TruncationSpec tr;
  tr.fock_cutoff = 30;
  CHECK_THROWS_AS(build_hamiltonian(ModelKind::H1, m, tr), std::invalid_argument);
}

TEST_CASE("doubling the cutoff changes kernels less than the tail bound") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.0, 0.2}}});
  const CoherentVector as{{0.4, 0.0}}, ap{{0.0, 0.4}};
  TruncationSpec small, big;
  small.fock_cutoff = 15;
  big.fock_cutoff = 30;
  auto ks = bargmann_kernel(evolve(build_hamiltonian(ModelKind::H1, m, small), 1.0), as, ap);
  auto kb = bargmann_kernel(evolve(build_hamiltonian(ModelKind::H1, m, big), 1.0), as, ap);
  const double change =
      (ks.prop.amplitudes - kb.prop.amplitudes).cwiseAbs().maxCoeff();
  CHECK(change < std::max(ks.tail_bound, 1e-12));
}
