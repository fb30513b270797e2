#ifndef QPROP_SPIN_BOSE_HPP
#define QPROP_SPIN_BOSE_HPP

#include <span>

#include "qprop/model.hpp"

namespace qprop {

// Order-N truncated propagator of the non-QND spin-Bose model
//   H = (w/2) sigma_z + sum_k w_k b+_k b_k + (w/2) sum_k g_k (b_k + b+_k) sigma_x
// as a sum of nested time-ordered simplex integrals, evaluated by iterated
// Gauss-Legendre quadrature.

// Exponent of the order-n integrand, a function of the ordered times
// 0 <= tau_1 <= ... <= tau_n <= t:
//   kappa^(n) = -(w/2)^2 sum_k (g_k^2/w_k^2) [ (2n+1) - i w_k t
//       + (-1)^{n+1} e^{-i w_k t}
//       - 2 sum_l (-1)^{l+1} e^{-i w_k tau_l}
//       + 2 (-1)^n sum_l (-1)^{l+1} e^{-i w_k (t - tau_l)}
//       + 4 sum_{p>q} (-1)^{p+q} e^{-i w_k (tau_p - tau_q)} ]
cplx kappa_n(const Model& model, double t, std::span<const double> tau);

// Label-linear part of the order-n integrand:
//   chi^(n) = -(w/2) sum_k (g_k/w_k) [ (alpha'_k + (-1)^n alpha*_k)
//                                      (1 + (-1)^{n+1} e^{-i w_k t})
//       + 2 alpha*_k sum_l (-1)^{l+1} e^{-i w_k (t - tau_l)}
//       - 2 alpha'_k sum_l (-1)^{l+1} e^{-i w_k tau_l} ]
cplx chi_n(const Model& model, double t, std::span<const double> tau,
           const CoherentVector& alpha_star, const CoherentVector& alpha_prime);

struct SeriesPropagator {
  Propagator2x2 prop;
  double error_estimate;  // max-entry magnitude of the order-N term
};

// Kernel exp{sum alpha*_k alpha'_k e^{-i w_k t}} times
//   sum_{n=0}^{N} (i w / 2)^n  simplex-integral of
//     e^{kappa^(n)} [ cosh chi^(n),        sinh chi^(n)
//                     (-1)^n sinh chi^(n), (-1)^n cosh chi^(n) ].
// Unlike the QND closed form this matrix has nonzero off-diagonals.
// Per-order quadrature points taper with n (trunc.quad_points for n <= 2,
// half for n in {3, 4}, 2 beyond); an uncoupled bath is evaluated with the
// exact simplex volume t^n/n!.
SeriesPropagator propagator_nonqnd(const Model& model, double t,
                                   const CoherentVector& alpha_star,
                                   const CoherentVector& alpha_prime,
                                   const TruncationSpec& trunc);

}  // namespace qprop

#endif
