#ifndef QPROP_MODEL_HPP
#define QPROP_MODEL_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qprop {

using cplx = std::complex<double>;
using Eigen::Matrix2cd;

// Conventions fixed here and used by every module:
//   * hbar = 1; frequencies are the only dimensionful inputs.
//   * System slot 0 = spin-down, slot 1 = spin-up.  The amplitude U_00
//     multiplies the spin-down pair of Bargmann labels.
//   * Propagators are unnormalized Bargmann kernels with initial condition
//     exp{sum_k alpha*_k alpha'_k}.

enum class BathKind { Oscillator, Spin };

struct BathMode {
  double omega;     // mode angular frequency, > 0
  double coupling;  // dimensionless real coupling (g_k or c_k)
};

struct BathSpec {
  BathKind kind = BathKind::Oscillator;
  std::vector<BathMode> modes;  // M >= 0; M = 0 is a free two-level system

  std::size_t size() const { return modes.size(); }
};

struct SystemSpec {
  double omega = 0.0;                 // two-level splitting
  std::optional<double> drive_omega;  // external-mode frequency, driven model only
};

// Per-mode complex Bargmann labels.  alpha_star labels time t, alpha_prime
// labels time 0.
using CoherentVector = std::vector<cplx>;

// 2x2 complex amplitude matrix multiplying a shared scalar bath-kernel
// factor.  amplitudes(i, j) is U_ij in the (down, up) ordering.
struct Propagator2x2 {
  cplx bath_kernel{1.0, 0.0};
  Matrix2cd amplitudes = Matrix2cd::Identity();
};

struct TruncationSpec {
  int fock_cutoff = 30;   // Fock basis 0..fock_cutoff per oscillator mode
  int series_order = 4;   // N, series truncation
  int quad_points = 16;   // Gauss-Legendre points per simplex dimension
  double tol = 1e-8;      // relative tolerance, in (0, 1)

  void validate() const;  // throws std::invalid_argument
};

// Validated model handle shared by all computation modules.  Construction
// checks every invariant; instances are immutable afterwards.
class Model {
 public:
  Model(SystemSpec system, BathSpec bath);

  const SystemSpec& system() const { return system_; }
  const BathSpec& bath() const { return bath_; }

  std::size_t mode_count() const { return bath_.modes.size(); }
  double omega() const { return system_.omega; }
  double mode_omega(std::size_t k) const { return mode(k).omega; }
  double mode_coupling(std::size_t k) const { return mode(k).coupling; }

  bool has_drive() const { return system_.drive_omega.has_value(); }
  double drive_omega() const;  // throws if absent

  const BathMode& mode(std::size_t k) const;  // throws on out-of-range k

  // Throws std::invalid_argument unless labels has exactly M finite entries.
  void check_labels(const CoherentVector& labels, const char* name) const;

 private:
  SystemSpec system_;
  BathSpec bath_;
};

inline Model validate_model(SystemSpec system, BathSpec bath) {
  return Model(std::move(system), std::move(bath));
}

bool is_finite(cplx z);

}  // namespace qprop

#endif
