#ifndef QPROP_SPIN_BATH_HPP
#define QPROP_SPIN_BATH_HPP

#include <span>
#include <vector>

#include "qprop/model.hpp"

namespace qprop {

// QND spin-bath model
//   H = (w/2) S_z + sum_k w_k sigma_zk + (w/2) sum_k c_k sigma_xk S_z.
// The QND structure factorizes the propagator exactly into a system phase
// times one 2x2 factor per bath mode, each a function of the system sector
// label s alone.
//
// Sector label convention: s = +1 selects the spin-down system slot (index 0,
// physical S_z eigenvalue -1), s = -1 the spin-up slot.  This matches the
// amplitude-matrix ordering in which the system phase is e^{+i w s t / 2} and
// every formula below holds with its literal signs; see docs/conventions.md.

// A_n(tau, t) = sum_{j=1}^n (-1)^{j+1} 2 tau_j + (-1)^n t; lies in [-t, t]
// for ordered tau in [0, t].
double a_n(std::span<const double> tau, double t);

// Theta^{k(n)} = (w/2) s c_k A_n(tau, t)
double theta_kn(const Model& model, std::size_t k, int s,
                std::span<const double> tau, double t);

struct ModeSeries {
  Matrix2cd matrix;
  double error_estimate;  // max-entry magnitude of the order-N term
};

// Per-mode factor as the truncated series
//   sum_{n=0}^N (i w_k)^n  simplex-integral of
//     [ cos Theta,          i sin Theta
//       (-1)^n i sin Theta, (-1)^n cos Theta ],  Theta = theta_kn(k, s, ...).
// The simplex integrals of cos/sin of the piecewise-linear phase are
// evaluated exactly (exponential recursion); see mode_series_term_quadrature
// for the independent Gauss-Legendre check at low order.
ModeSeries mode_propagator_series(const Model& model, std::size_t k, int s,
                                  double t, int order);

// Single order-n series term by nested Gauss-Legendre quadrature; quadrature
// self-check for the exact route (practical for n <= ~4).
Matrix2cd mode_series_term_quadrature(const Model& model, std::size_t k, int s,
                                      double t, int n, int points);

// Exact per-mode propagator: closed-form Rabi rotation
//   exp{ i t (w_k Z + (w/2) c_k s X) },   Z = diag(1, -1), X = sigma_x,
// the resummation target of the series and equal to the corresponding block
// of the full truncated propagator e^{-iHt}.
Matrix2cd mode_propagator_exact(const Model& model, std::size_t k, int s, double t);

struct SpinBathPropagator {
  cplx system_phase;                      // e^{i w s t / 2}
  std::vector<Matrix2cd> mode_factors;    // one per bath mode
};

// Full sector propagator as system phase times per-mode factors.  With
// exact_modes the factors are the closed-form Rabi rotations, otherwise the
// order-N series.
SpinBathPropagator propagator_spinbath(const Model& model, double t, int s,
                                       int order, bool exact_modes = false);

// Tensor product of the mode factors (mode 1 slowest index).  Guarded:
// throws for M > 10.
Eigen::MatrixXcd materialize(const SpinBathPropagator& prop);

}  // namespace qprop

#endif
