#ifndef QPROP_OSC_QND_HPP
#define QPROP_OSC_QND_HPP

#include "qprop/model.hpp"

namespace qprop {

// Closed-form propagator of the QND oscillator-bath model
//   H = (w/2) sigma_z + sum_k w_k b+_k b_k + (w/2) sum_k g_k (b_k + b+_k) sigma_z
// and its driven variant with one external mode of frequency W.  All
// quantities are exact functions of time; there is no time stepping.

// phi_k(t) = (w/2)(g_k/w_k)(1 - e^{-i w_k t})
cplx phase_phi(const Model& model, std::size_t k, double t);

// A(t) = i (w/2)^2 sum_k (g_k^2/w_k) t
//        - (w/2)^2 sum_k (g_k^2/w_k^2)(1 - e^{-i w_k t})
// Re(A) <= 0 for all t.
cplx amplitude_A(const Model& model, double t);

// B(t) = sum_k phi_k (alpha*_k + alpha'_k) + i w t / 2
cplx amplitude_B(const Model& model, double t, const CoherentVector& alpha_star,
                 const CoherentVector& alpha_prime);

// Kernel exp{sum_k alpha*_k alpha'_k e^{-i w_k t}} with amplitude matrix
// e^A diag(e^B, e^{-B}).  Off-diagonal amplitudes are exactly zero.
Propagator2x2 propagator_qnd(const Model& model, double t,
                             const CoherentVector& alpha_star,
                             const CoherentVector& alpha_prime);

// Driven variant.  The external mode enters as one extra uncoupled factor
// exp{nu* nu' e^{-i W t}}, returned separately; the diagonal exponent becomes
// B_2 = sum_k phi_k (alpha*_k + alpha'_k) + i (w - W) t / 2.
struct DrivenPropagator {
  cplx drive_kernel;   // exp{nu* nu' e^{-i W t}}
  Propagator2x2 prop;  // bath kernel and e^A diag(e^{B2}, e^{-B2})
};

DrivenPropagator propagator_driven(const Model& model, double t,
                                   const CoherentVector& alpha_star,
                                   const CoherentVector& alpha_prime,
                                   cplx nu_star, cplx nu_prime);

cplx amplitude_B2(const Model& model, double t, const CoherentVector& alpha_star,
                  const CoherentVector& alpha_prime);

// Coherence ratio r(t) = rho_01(t) / rho_01(0) of the reduced system state
// when the bath starts in the product coherent state |mu>.  Populations are
// untouched by the QND coupling; this factor carries the whole reduced
// dynamics.  |r(t)| <= 1 and r(0) = 1.
cplx dephasing_factor(const Model& model, double t,
                      const CoherentVector& bath_initial);

}  // namespace qprop

#endif
