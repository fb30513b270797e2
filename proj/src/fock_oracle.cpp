#include "qprop/fock_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace qprop {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr cplx I{0.0, 1.0};

MatrixXcd annihilator(Index d) {
  MatrixXcd b = MatrixXcd::Zero(d, d);
  for (Index n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
  return b;
}

// Physical Pauli matrices in the (down, up) ordering: sigma_z |down> = -|down>.
Matrix2cd sigma_z_phys() {
  Matrix2cd m;
  m << -1, 0, 0, 1;
  return m;
}

Matrix2cd sigma_x_phys() {
  Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

// op acting on factor f of the tensor chain with the given dims.
MatrixXcd embed(const MatrixXcd& op, std::size_t f, const std::vector<Index>& dims) {
  Index before = 1, after = 1;
  for (std::size_t i = 0; i < f; ++i) before *= dims[i];
  for (std::size_t i = f + 1; i < dims.size(); ++i) after *= dims[i];
  return Eigen::kroneckerProduct(
             Eigen::MatrixXcd::Identity(before, before),
             Eigen::kroneckerProduct(op, Eigen::MatrixXcd::Identity(after, after)))
      .eval();
}

}  // namespace

TruncatedOperator build_hamiltonian(ModelKind kind, const Model& model,
                                    const TruncationSpec& trunc, Index max_dim) {
  trunc.validate();
  const std::size_t M = model.mode_count();
  const bool spin_bath = (kind == ModelKind::H4);
  const Index mode_dim = spin_bath ? 2 : trunc.fock_cutoff + 1;

  std::vector<Index> dims;
  dims.push_back(2);
  for (std::size_t k = 0; k < M; ++k) dims.push_back(mode_dim);
  if (kind == ModelKind::H2) dims.push_back(trunc.fock_cutoff + 1);

  Index total = 1;
  for (Index d : dims) {
    total *= d;
    if (total > max_dim)
      throw std::invalid_argument("build_hamiltonian: dimension exceeds limit");
  }

  const double w = model.omega();
  MatrixXcd sys_coupling =
      (kind == ModelKind::H3) ? sigma_x_phys() : sigma_z_phys();

  MatrixXcd h = 0.5 * w * embed(sigma_z_phys(), 0, dims);
  for (std::size_t k = 0; k < M; ++k) {
    const double wk = model.mode_omega(k);
    const double gk = model.mode_coupling(k);
    if (spin_bath) {
      h += wk * embed(sigma_z_phys(), k + 1, dims);
      h += 0.5 * w * gk *
           (embed(sigma_x_phys(), k + 1, dims) * embed(sigma_z_phys(), 0, dims));
    } else {
      MatrixXcd b = annihilator(mode_dim);
      h += wk * embed((b.adjoint() * b).eval(), k + 1, dims);
      h += 0.5 * w * gk *
           (embed((b + b.adjoint()).eval(), k + 1, dims) * embed(sys_coupling, 0, dims));
    }
  }
  if (kind == ModelKind::H2) {
    const double drive = model.drive_omega();
    MatrixXcd a = annihilator(trunc.fock_cutoff + 1);
    h += drive * embed((a.adjoint() * a).eval(), dims.size() - 1, dims);
    h -= 0.5 * drive * embed(sigma_z_phys(), 0, dims);
  }
  return {std::move(h), std::move(dims)};
}

Evolver::Evolver(const TruncatedOperator& hamiltonian) : dims_(hamiltonian.dims) {
  const MatrixXcd& h = hamiltonian.matrix;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("Evolver: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("Evolver: eigendecomposition failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
}

TruncatedOperator Evolver::unitary(double t) const {
  VectorXcd phases = (-I * t * eigenvalues_.cast<cplx>().array()).exp();
  MatrixXcd u = eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
  return {std::move(u), dims_};
}

namespace {

// Per-mode coherent weight vector, entries z^n / sqrt(n!).
VectorXcd bargmann_weights(cplx z, Index d) {
  VectorXcd v(d);
  cplx acc = 1.0;
  v(0) = acc;
  for (Index n = 1; n < d; ++n) {
    acc *= z / std::sqrt(static_cast<double>(n));
    v(n) = acc;
  }
  return v;
}

VectorXcd kron_vector(const std::vector<VectorXcd>& parts) {
  VectorXcd v = VectorXcd::Ones(1);
  for (const auto& p : parts) {
    VectorXcd next(v.size() * p.size());
    for (Index i = 0; i < v.size(); ++i)
      next.segment(i * p.size(), p.size()) = v(i) * p;
    v = std::move(next);
  }
  return v;
}

double poisson_tail(double x, Index n_max) {
  // exp(x) - sum_{n<=n_max} x^n/n!
  double partial = 0.0, term = 1.0;
  for (Index n = 0; n <= n_max; ++n) {
    partial += term;
    term *= x / static_cast<double>(n + 1);
  }
  return std::max(0.0, std::exp(x) - partial);
}

}  // namespace

KernelResult bargmann_kernel(const TruncatedOperator& unitary,
                             const std::vector<cplx>& alpha_star,
                             const std::vector<cplx>& alpha_prime, double tol) {
  const std::size_t modes = unitary.dims.size() - 1;
  if (alpha_star.size() != modes || alpha_prime.size() != modes)
    throw std::invalid_argument("bargmann_kernel: label count does not match modes");

  std::vector<VectorXcd> bra_parts, ket_parts;
  double tail = 0.0;
  double full_product = 1.0;
  std::vector<double> partials;
  for (std::size_t k = 0; k < modes; ++k) {
    const Index d = unitary.dims[k + 1];
    bra_parts.push_back(bargmann_weights(alpha_star[k], d));
    ket_parts.push_back(bargmann_weights(alpha_prime[k], d));
    const double x = std::abs(alpha_star[k]) * std::abs(alpha_prime[k]);
    full_product *= std::exp(x);
    partials.push_back(std::exp(x) - poisson_tail(x, d - 1));
  }
  double kept = 1.0;
  for (double p : partials) kept *= p;
  tail = full_product - kept;

  const VectorXcd bra = kron_vector(bra_parts);
  const VectorXcd ket = kron_vector(ket_parts);
  const Index d_bath = unitary.bath_dim();

  KernelResult out;
  out.prop.bath_kernel = 1.0;  // oracle kernels fold everything into the amplitudes
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      out.prop.amplitudes(i, j) =
          (bra.transpose() *
           unitary.matrix.block(i * d_bath, j * d_bath, d_bath, d_bath) * ket)
              .value();
  out.tail_bound = tail;
  out.flagged = tail > tol;
  return out;
}

Matrix2cd reduced_density(const TruncatedOperator& unitary, BathKind bath_kind,
                          const Matrix2cd& rho_sys_0,
                          const std::vector<cplx>& bath_labels) {
  const std::size_t modes = unitary.dims.size() - 1;
  if (bath_labels.size() != modes)
    throw std::invalid_argument("reduced_density: label count does not match modes");

  std::vector<VectorXcd> parts;
  for (std::size_t k = 0; k < modes; ++k) {
    const Index d = unitary.dims[k + 1];
    VectorXcd v;
    if (bath_kind == BathKind::Spin) {
      v = VectorXcd(2);
      v << 1.0, bath_labels[k];
    } else {
      v = bargmann_weights(bath_labels[k], d);
    }
    v.normalize();
    parts.push_back(std::move(v));
  }
  const VectorXcd chi = kron_vector(parts);
  const Index d_bath = unitary.bath_dim();

  // rho(t) = sum_ij rho0_ij w_i w_j+,  w_i = U (e_i x chi); trace the bath.
  std::array<VectorXcd, 2> w;
  for (Index i = 0; i < 2; ++i) {
    VectorXcd psi = VectorXcd::Zero(2 * d_bath);
    psi.segment(i * d_bath, d_bath) = chi;
    w[static_cast<std::size_t>(i)] = unitary.matrix * psi;
  }
  Matrix2cd rho = Matrix2cd::Zero();
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) {
      cplx acc = 0.0;
      for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) {
          // sum_m w_i[a, m] conj(w_j[b, m])
          acc += rho_sys_0(i, j) * w[static_cast<std::size_t>(j)]
                                       .segment(b * d_bath, d_bath)
                                       .dot(w[static_cast<std::size_t>(i)].segment(
                                           a * d_bath, d_bath));
        }
      rho(a, b) = acc;
    }
  return rho;
}

Matrix2cd reduced_density(ModelKind kind, const Model& model,
                          const TruncationSpec& trunc, const Matrix2cd& rho_sys_0,
                          const std::vector<cplx>& bath_labels, double t) {
  auto h = build_hamiltonian(kind, model, trunc);
  auto u = evolve(h, t);
  return reduced_density(u, kind == ModelKind::H4 ? BathKind::Spin : BathKind::Oscillator,
                         rho_sys_0, bath_labels);
}

}  // namespace qprop
