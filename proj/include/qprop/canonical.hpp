#ifndef QPROP_CANONICAL_HPP
#define QPROP_CANONICAL_HPP

#include <vector>

#include "qprop/model.hpp"

namespace qprop {

// Exact quadratic-form level verification of the coordinate-coupling /
// velocity-coupling unitary equivalence, plus the squeeze/rotation
// classification of the 2x2 propagator factors.
//
// Phase-space coordinates are ordered z = (Q, P, q_1..q_M, p_1..p_M); the
// Hamiltonian is H = (1/2) z^T F z + linear . z + offset with F symmetric.

struct QuadraticHamiltonian {
  Eigen::MatrixXd form;     // symmetric, dimension 2(M+1)
  Eigen::VectorXd linear;
  double offset = 0.0;
};

struct LinearCanonicalMap {
  Eigen::MatrixXd matrix;       // S: z -> S z
  Eigen::VectorXd translation;  // zero for the maps built here
};

// Standard symplectic form J in the (Q, P, q, p) ordering.
Eigen::MatrixXd symplectic_form(std::size_t M);

// max |S^T J S - J|
double symplectic_defect(const LinearCanonicalMap& map);

// P^2/2 + (1/2) sum_j (p_j^2 + w_j^2 (q_j - Q)^2)
QuadraticHamiltonian coordinate_coupling_form(const std::vector<double>& omegas);

// P^2/2 + P sum_j w_j q_j + (1/2) sum_j (p_j^2 + w_j^2 q_j^2)
//   + (1/2) (sum_j w_j q_j)^2
QuadraticHamiltonian velocity_coupling_form(const std::vector<double>& omegas);

struct ConjugationMaps {
  LinearCanonicalMap u1;  // per-mode quarter rotation: q_j -> p_j/w_j, p_j -> -w_j q_j
  LinearCanonicalMap u2;  // shear: P -> P + sum w_j q_j, p_j -> p_j + w_j Q
};

// flip_u1_sign uses the opposite quarter-rotation angle; the equivalence
// check must then fail (wrong-convention control case).
ConjugationMaps conjugation_maps(const std::vector<double>& omegas,
                                 bool flip_u1_sign = false);

struct EquivalenceReport {
  double max_abs_deviation;  // elementwise, conjugated coordinate form vs velocity form
  double symplectic_defect;  // worst defect among U1, U2, and their composition
};

EquivalenceReport verify_equivalence(const std::vector<double>& omegas,
                                     bool flip_u1_sign = false);

enum class TwoByTwoKind { SqueezeLike, RotationLike, Other };

struct TwoByTwoClassification {
  TwoByTwoKind kind = TwoByTwoKind::Other;
  cplx parameter;  // B for squeeze-like, Theta (real) for rotation-like
  int parity = 0;  // rotation-like: 0 for e^{i Theta sigma_x}, 1 for the sigma_z-twisted form
};

Matrix2cd make_squeeze(cplx b);                  // diag(e^B, e^{-B})
Matrix2cd make_rotation(double theta, int parity);  // e^{i Theta sigma_x} or sigma_z times it

// Detects diag(e^B, e^{-B}) (det 1), e^{i Theta sigma_x} (det 1) and
// sigma_z e^{i Theta sigma_x} (det -1); anything else is Other.  The identity
// is both squeeze- and rotation-like; ties break to SqueezeLike.
TwoByTwoClassification classify_2x2(const Matrix2cd& m, double tol = 1e-9);

// R with U sigma_a U+ = sum_b R_ab sigma_b over (x, y, z); orthogonal with
// |det R| = 1 for unitary U.  Throws if U is not unitary to 1e-10.
Eigen::Matrix3d pauli_adjoint_action(const Matrix2cd& u);

}  // namespace qprop

#endif
