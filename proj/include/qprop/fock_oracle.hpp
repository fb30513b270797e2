#ifndef QPROP_FOCK_ORACLE_HPP
#define QPROP_FOCK_ORACLE_HPP

#include <vector>

#include "qprop/model.hpp"

namespace qprop {

// Independent brute-force ground truth: dense truncated matrix
// representations of the four Hamiltonians, exponentiated by Hermitian
// eigendecomposition, with Bargmann kernels and reduced density matrices
// extracted directly from the full unitary.  Desk scale by design: dense
// matrices only.

enum class ModelKind { H1, H2, H3, H4 };

struct TruncatedOperator {
  Eigen::MatrixXcd matrix;
  // Tensor factor dimensions, system first: {2, d_1, ..., d_M} with
  // d_k = fock_cutoff + 1 for oscillator modes and 2 for spin modes.
  // For H2 the drive mode is appended after the bath modes.
  std::vector<Eigen::Index> dims;

  Eigen::Index dim() const { return matrix.rows(); }
  Eigen::Index bath_dim() const { return matrix.rows() / 2; }
};

// Assembles the Hermitian truncated Hamiltonian.  Throws if the total
// dimension exceeds max_dim.
TruncatedOperator build_hamiltonian(ModelKind kind, const Model& model,
                                    const TruncationSpec& trunc,
                                    Eigen::Index max_dim = 8192);

// Caches the eigendecomposition of one Hamiltonian so a whole time grid
// costs one diagonalization.
class Evolver {
 public:
  explicit Evolver(const TruncatedOperator& hamiltonian);

  // e^{-iHt}
  TruncatedOperator unitary(double t) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  std::vector<Eigen::Index> dims_;
};

inline TruncatedOperator evolve(const TruncatedOperator& hamiltonian, double t) {
  return Evolver(hamiltonian).unitary(t);
}

struct KernelResult {
  Propagator2x2 prop;
  double tail_bound;  // Poisson-weight bound on the dropped Fock tail
  bool flagged;       // tail bound exceeded the requested tolerance
};

// Unnormalized Bargmann kernel of a full unitary over its oscillator modes:
//   K_ij = sum_{m,n} prod_k (alpha*_k)^{m_k} (alpha'_k)^{n_k} / sqrt(m_k! n_k!)
//          <i, m| U |j, n>.
// Labels run over all oscillator factors of U (bath modes, plus the drive
// mode last for H2).
KernelResult bargmann_kernel(const TruncatedOperator& unitary,
                             const std::vector<cplx>& alpha_star,
                             const std::vector<cplx>& alpha_prime,
                             double tol = 1e-8);

// Tr_bath[ U (rho_sys x |chi><chi|) U+ ] with the bath in a product state:
// truncated normalized coherent states for oscillator factors, or
// (|down> + mu |up>)/norm for spin factors.
Matrix2cd reduced_density(const TruncatedOperator& unitary, BathKind bath_kind,
                          const Matrix2cd& rho_sys_0,
                          const std::vector<cplx>& bath_labels);

Matrix2cd reduced_density(ModelKind kind, const Model& model,
                          const TruncationSpec& trunc, const Matrix2cd& rho_sys_0,
                          const std::vector<cplx>& bath_labels, double t);

}  // namespace qprop

#endif
