#include "qprop/canonical.hpp"

#include <cmath>
#include <stdexcept>

namespace qprop {

namespace {

using Eigen::Matrix3d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr cplx I{0.0, 1.0};

std::size_t check_omegas(const std::vector<double>& omegas) {
  for (double w : omegas)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("mode frequencies must be positive");
  return omegas.size();
}

// Index helpers for z = (Q, P, q_1..q_M, p_1..p_M).
inline Eigen::Index iq(std::size_t j) { return 2 + static_cast<Eigen::Index>(j); }
inline Eigen::Index ip(std::size_t j, std::size_t M) {
  return 2 + static_cast<Eigen::Index>(M + j);
}

}  // namespace

MatrixXd symplectic_form(std::size_t M) {
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(M + 1);
  MatrixXd j = MatrixXd::Zero(n, n);
  j(0, 1) = 1.0;
  j(1, 0) = -1.0;
  for (std::size_t k = 0; k < M; ++k) {
    j(iq(k), ip(k, M)) = 1.0;
    j(ip(k, M), iq(k)) = -1.0;
  }
  return j;
}

double symplectic_defect(const LinearCanonicalMap& map) {
  const std::size_t M = static_cast<std::size_t>(map.matrix.rows() / 2 - 1);
  const MatrixXd j = symplectic_form(M);
  return (map.matrix.transpose() * j * map.matrix - j).cwiseAbs().maxCoeff();
}

QuadraticHamiltonian coordinate_coupling_form(const std::vector<double>& omegas) {
  const std::size_t M = check_omegas(omegas);
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(M + 1);
  QuadraticHamiltonian h{MatrixXd::Zero(n, n), VectorXd::Zero(n), 0.0};
  h.form(1, 1) = 1.0;  // P^2/2
  for (std::size_t j = 0; j < M; ++j) {
    const double w2 = omegas[j] * omegas[j];
    h.form(ip(j, M), ip(j, M)) = 1.0;
    h.form(iq(j), iq(j)) += w2;
    h.form(0, 0) += w2;
    h.form(0, iq(j)) -= w2;
    h.form(iq(j), 0) -= w2;
  }
  return h;
}

QuadraticHamiltonian velocity_coupling_form(const std::vector<double>& omegas) {
  const std::size_t M = check_omegas(omegas);
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(M + 1);
  QuadraticHamiltonian h{MatrixXd::Zero(n, n), VectorXd::Zero(n), 0.0};
  h.form(1, 1) = 1.0;
  for (std::size_t j = 0; j < M; ++j) {
    h.form(ip(j, M), ip(j, M)) = 1.0;
    h.form(iq(j), iq(j)) += omegas[j] * omegas[j];
    h.form(1, iq(j)) += omegas[j];  // P sum w_j q_j
    h.form(iq(j), 1) += omegas[j];
    for (std::size_t l = 0; l < M; ++l) {  // (sum w_j q_j)^2 / 2
      h.form(iq(j), iq(l)) += omegas[j] * omegas[l];
    }
  }
  return h;
}

ConjugationMaps conjugation_maps(const std::vector<double>& omegas, bool flip_u1_sign) {
  const std::size_t M = check_omegas(omegas);
  const Eigen::Index n = 2 * static_cast<Eigen::Index>(M + 1);
  const double sign = flip_u1_sign ? -1.0 : 1.0;

  LinearCanonicalMap u1{MatrixXd::Identity(n, n), VectorXd::Zero(n)};
  for (std::size_t j = 0; j < M; ++j) {
    u1.matrix(iq(j), iq(j)) = 0.0;
    u1.matrix(ip(j, M), ip(j, M)) = 0.0;
    u1.matrix(iq(j), ip(j, M)) = sign / omegas[j];
    u1.matrix(ip(j, M), iq(j)) = -sign * omegas[j];
  }

  LinearCanonicalMap u2{MatrixXd::Identity(n, n), VectorXd::Zero(n)};
  for (std::size_t j = 0; j < M; ++j) {
    u2.matrix(1, iq(j)) = omegas[j];
    u2.matrix(ip(j, M), 0) = omegas[j];
  }
  return {std::move(u1), std::move(u2)};
}

EquivalenceReport verify_equivalence(const std::vector<double>& omegas,
                                     bool flip_u1_sign) {
  auto maps = conjugation_maps(omegas, flip_u1_sign);
  const MatrixXd t = maps.u1.matrix * maps.u2.matrix;  // substitution of U2 U1 H U1+ U2+
  const QuadraticHamiltonian coord = coordinate_coupling_form(omegas);
  const QuadraticHamiltonian vel = velocity_coupling_form(omegas);
  const MatrixXd conjugated = t.transpose() * coord.form * t;

  EquivalenceReport report;
  report.max_abs_deviation = (conjugated - vel.form).cwiseAbs().maxCoeff();
  LinearCanonicalMap composite{t, VectorXd::Zero(t.rows())};
  report.symplectic_defect =
      std::max({symplectic_defect(maps.u1), symplectic_defect(maps.u2),
                symplectic_defect(composite)});
  return report;
}

Matrix2cd make_squeeze(cplx b) {
  Matrix2cd m = Matrix2cd::Zero();
  m(0, 0) = std::exp(b);
  m(1, 1) = std::exp(-b);
  return m;
}

Matrix2cd make_rotation(double theta, int parity) {
  Matrix2cd m;
  const cplx c = std::cos(theta), s = I * std::sin(theta);
  if (parity % 2 == 0)
    m << c, s, s, c;
  else
    m << c, s, -s, -c;
  return m;
}

TwoByTwoClassification classify_2x2(const Matrix2cd& m, double tol) {
  if (!m.allFinite()) throw std::invalid_argument("classify_2x2: non-finite matrix");
  TwoByTwoClassification out;

  // Squeeze-like: diag(e^B, e^{-B}).  B complex in general; det = 1 exactly.
  if (std::abs(m(0, 1)) <= tol && std::abs(m(1, 0)) <= tol &&
      std::abs(m(0, 0) * m(1, 1) - 1.0) <= tol && std::abs(m(0, 0)) > tol) {
    out.kind = TwoByTwoKind::SqueezeLike;
    out.parameter = std::log(m(0, 0));  // imaginary part mod 2*pi
    return out;
  }

  // Rotation-like, Theta real: recover from the even form's entries and
  // validate entrywise against the canonical constructor.
  for (int parity = 0; parity <= 1; ++parity) {
    const double row = (parity == 0) ? 1.0 : -1.0;
    const cplx c = (m(0, 0) + row * m(1, 1)) / 2.0;
    const cplx s = (m(0, 1) + row * m(1, 0)) / 2.0;
    const double theta = std::atan2(s.imag(), c.real());
    if ((m - make_rotation(theta, parity)).cwiseAbs().maxCoeff() <= tol) {
      out.kind = TwoByTwoKind::RotationLike;
      out.parameter = theta;
      out.parity = parity;
      return out;
    }
  }
  return out;
}

Matrix3d pauli_adjoint_action(const Matrix2cd& u) {
  if ((u * u.adjoint() - Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("pauli_adjoint_action: input is not unitary");
  std::array<Matrix2cd, 3> sigma;
  sigma[0] << 0, 1, 1, 0;
  sigma[1] << 0, -I, I, 0;
  sigma[2] << 1, 0, 0, -1;
  Matrix3d r;
  for (int a = 0; a < 3; ++a) {
    const Matrix2cd conj = u * sigma[static_cast<std::size_t>(a)] * u.adjoint();
    for (int b = 0; b < 3; ++b)
      r(a, b) = 0.5 * (sigma[static_cast<std::size_t>(b)] * conj).trace().real();
  }
  return r;
}

}  // namespace qprop
