#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qprop/canonical.hpp"
#include "qprop/model.hpp"
#include "qprop/osc_qnd.hpp"
#include "qprop/spin_bath.hpp"

using namespace qprop;

TEST_CASE("coordinate-coupling form coefficients") {
  SUBCASE("single mode") {
    auto h = coordinate_coupling_form({1.0});
    CHECK(h.form(0, 0) == 1.0);   // Q^2 coefficient 1/2 -> form entry w^2
    CHECK(h.form(2, 2) == 1.0);   // q^2
    CHECK(h.form(0, 2) == -1.0);  // cross term -w^2 Q q
    CHECK(h.form(1, 1) == 1.0);   // P^2
    CHECK((h.form - h.form.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("empty bath leaves only kinetic energy") {
    auto h = coordinate_coupling_form({});
    CHECK(h.form.rows() == 2);
    CHECK(h.form(1, 1) == 1.0);
    CHECK(h.form(0, 0) == 0.0);
  }
  SUBCASE("two modes accumulate the Q^2 coefficient") {
    auto h = coordinate_coupling_form({1.0, 2.0});
    CHECK(h.form(0, 0) == 5.0);  // sum of w_j^2
  }
  CHECK_THROWS_AS(coordinate_coupling_form({-1.0}), std::invalid_argument);
}

TEST_CASE("velocity-coupling form coefficients") {
  auto h = velocity_coupling_form({1.0, 2.0});
  CHECK(h.form(1, 2) == 1.0);  // P q_1 cross coefficient w_1
  CHECK(h.form(1, 3) == 2.0);  // P q_2 cross coefficient w_2
  CHECK(h.form(0, 0) == 0.0);  // no bare Q^2 term
  CHECK((h.form - h.form.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conjugation maps are symplectic") {
  auto maps = conjugation_maps({0.7, 1.0, 1.6});
  CHECK(symplectic_defect(maps.u1) < 1e-12);
  CHECK(symplectic_defect(maps.u2) < 1e-12);
}

TEST_CASE("quarter rotation applied twice inverts the mode sector") {
  const std::vector<double> omegas{0.7, 1.3};
  auto maps = conjugation_maps(omegas);
  Eigen::MatrixXd twice = maps.u1.matrix * maps.u1.matrix;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(6, 6);
  for (int i = 2; i < 6; ++i) expected(i, i) = -1.0;
  CHECK((twice - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("shear leaves all positions invariant") {
  auto maps = conjugation_maps({0.7, 1.3});
  // rows 0 (Q) and 2, 3 (q_j) of U2 are unit rows
  for (int i : {0, 2, 3}) {
    for (int j = 0; j < 6; ++j)
      CHECK(maps.u2.matrix(i, j) == ((i == j) ? 1.0 : 0.0));
  }
}

TEST_CASE("coordinate and velocity couplings are canonically equivalent") {
  for (const auto& omegas : std::vector<std::vector<double>>{
           {1.0}, {0.5, 1.0, 2.0}, {0.3, 0.9, 1.4, 2.2, 3.0}}) {
    auto report = verify_equivalence(omegas);
    CHECK(report.max_abs_deviation < 1e-12);
    CHECK(report.symplectic_defect < 1e-12);
  }
}

TEST_CASE("sign-flipped quarter rotation breaks the equivalence") {
  auto report = verify_equivalence({1.0}, true);
  CHECK(report.max_abs_deviation > 1e-3);
  // still symplectic: the flaw is the convention, not the canonicity
  CHECK(report.symplectic_defect < 1e-12);
}

TEST_CASE("classification round-trips its own constructors") {
  SUBCASE("squeeze") {
    const cplx b{0.3, -0.7};
    auto cls = classify_2x2(make_squeeze(b));
    CHECK(cls.kind == TwoByTwoKind::SqueezeLike);
    CHECK(std::abs(cls.parameter - b) < 1e-12);
  }
  SUBCASE("rotation, even parity") {
    auto cls = classify_2x2(make_rotation(0.8, 0));
    CHECK(cls.kind == TwoByTwoKind::RotationLike);
    CHECK(std::abs(cls.parameter.real() - 0.8) < 1e-12);
    CHECK(cls.parity == 0);
    CHECK(std::abs(make_rotation(0.8, 0).determinant() - cplx(1.0)) < 1e-14);
  }
  SUBCASE("rotation, odd parity") {
    auto cls = classify_2x2(make_rotation(-0.4, 1));
    CHECK(cls.kind == TwoByTwoKind::RotationLike);
    CHECK(std::abs(cls.parameter.real() + 0.4) < 1e-12);
    CHECK(cls.parity == 1);
    CHECK(std::abs(make_rotation(-0.4, 1).determinant() + cplx(1.0)) < 1e-14);
  }
  SUBCASE("identity ties to squeeze") {
    auto cls = classify_2x2(Matrix2cd::Identity());
    CHECK(cls.kind == TwoByTwoKind::SqueezeLike);
    CHECK(std::abs(cls.parameter) < 1e-12);
  }
  SUBCASE("generic matrix is Other") {
    Matrix2cd m;
    m << 1.0, 2.0, 3.0, 4.0;
    CHECK(classify_2x2(m).kind == TwoByTwoKind::Other);
  }
}

TEST_CASE("qnd amplitude matrices are squeeze-like") {
  Model m({1.0, {}}, {BathKind::Oscillator, {{1.0, 0.15}}});
  const CoherentVector as{{0.2, 0.0}}, ap{{0.0, 0.1}};
  for (double t : {0.5, 1.3, 2.8}) {
    auto p = propagator_qnd(m, t, as, ap);
    Matrix2cd normalized = p.amplitudes / std::exp(amplitude_A(m, t));
    auto cls = classify_2x2(normalized);
    CHECK(cls.kind == TwoByTwoKind::SqueezeLike);
    CHECK(std::abs(cls.parameter - amplitude_B(m, t, as, ap)) < 1e-9);
  }
}

TEST_CASE("spin-bath order-zero factors are rotation-like") {
  Model m({1.0, {}}, {BathKind::Spin, {{0.8, 0.4}}});
  for (int s : {+1, -1})
    for (double t : {0.7, 1.9}) {
      auto p = mode_propagator_series(m, 0, s, t, 0);
      auto cls = classify_2x2(p.matrix);
      CHECK(cls.kind == TwoByTwoKind::RotationLike);
      CHECK(cls.parity == 0);
      CHECK(std::abs(cls.parameter.real() - 0.5 * 1.0 * s * 0.4 * t) < 1e-12);
    }
}

TEST_CASE("adjoint action of the identity and of x rotations") {
  CHECK((pauli_adjoint_action(Matrix2cd::Identity()) -
         Eigen::Matrix3d::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-14);
  for (double theta : {std::numbers::pi / 4.0, 0.6, -1.1}) {
    Eigen::Matrix3d r = pauli_adjoint_action(make_rotation(theta, 0));
    Eigen::Matrix3d expected = Eigen::Matrix3d::Identity();
    const double c = std::cos(2.0 * theta), s = std::sin(2.0 * theta);
    expected(1, 1) = c;
    expected(1, 2) = -s;
    expected(2, 1) = s;
    expected(2, 2) = c;
    CHECK((r - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("adjoint action of the twisted rotation has unit determinant") {
  for (double theta : {0.3, 1.2}) {
    Eigen::Matrix3d r = pauli_adjoint_action(make_rotation(theta, 1));
    CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(r.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("non-unitary input to the adjoint action is rejected") {
  Matrix2cd m;
  m << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(pauli_adjoint_action(m), std::invalid_argument);
}
