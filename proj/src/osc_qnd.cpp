#include "qprop/osc_qnd.hpp"

#include <cmath>
#include <stdexcept>

namespace qprop {

namespace {
constexpr cplx I{0.0, 1.0};

cplx one_minus_phase(double w, double t) {
  // 1 - e^{-i w t}
  return 1.0 - std::exp(-I * w * t);
}
}  // namespace

cplx phase_phi(const Model& model, std::size_t k, double t) {
  const auto& m = model.mode(k);
  return 0.5 * model.omega() * (m.coupling / m.omega) * one_minus_phase(m.omega, t);
}

cplx amplitude_A(const Model& model, double t) {
  const double half_w_sq = 0.25 * model.omega() * model.omega();
  cplx a = 0.0;
  for (std::size_t k = 0; k < model.mode_count(); ++k) {
    const auto& m = model.mode(k);
    const double g2 = m.coupling * m.coupling;
    a += I * half_w_sq * (g2 / m.omega) * t;
    a -= half_w_sq * (g2 / (m.omega * m.omega)) * one_minus_phase(m.omega, t);
  }
  return a;
}

cplx amplitude_B(const Model& model, double t, const CoherentVector& alpha_star,
                 const CoherentVector& alpha_prime) {
  model.check_labels(alpha_star, "alpha_star");
  model.check_labels(alpha_prime, "alpha_prime");
  cplx b = I * 0.5 * model.omega() * t;
  for (std::size_t k = 0; k < model.mode_count(); ++k)
    b += phase_phi(model, k, t) * (alpha_star[k] + alpha_prime[k]);
  return b;
}

cplx amplitude_B2(const Model& model, double t, const CoherentVector& alpha_star,
                  const CoherentVector& alpha_prime) {
  model.check_labels(alpha_star, "alpha_star");
  model.check_labels(alpha_prime, "alpha_prime");
  cplx b = I * 0.5 * (model.omega() - model.drive_omega()) * t;
  for (std::size_t k = 0; k < model.mode_count(); ++k)
    b += phase_phi(model, k, t) * (alpha_star[k] + alpha_prime[k]);
  return b;
}

namespace {

cplx bath_kernel(const Model& model, double t, const CoherentVector& alpha_star,
                 const CoherentVector& alpha_prime) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < model.mode_count(); ++k)
    s += alpha_star[k] * alpha_prime[k] * std::exp(-I * model.mode_omega(k) * t);
  return std::exp(s);
}

}  // namespace

Propagator2x2 propagator_qnd(const Model& model, double t,
                             const CoherentVector& alpha_star,
                             const CoherentVector& alpha_prime) {
  const cplx b = amplitude_B(model, t, alpha_star, alpha_prime);
  const cplx ea = std::exp(amplitude_A(model, t));
  Propagator2x2 out;
  out.bath_kernel = bath_kernel(model, t, alpha_star, alpha_prime);
  out.amplitudes << ea * std::exp(b), 0.0, 0.0, ea * std::exp(-b);
  return out;
}

DrivenPropagator propagator_driven(const Model& model, double t,
                                   const CoherentVector& alpha_star,
                                   const CoherentVector& alpha_prime,
                                   cplx nu_star, cplx nu_prime) {
  if (!model.has_drive())
    throw std::invalid_argument("propagator_driven: model has no drive frequency");
  if (!is_finite(nu_star) || !is_finite(nu_prime))
    throw std::invalid_argument("propagator_driven: non-finite drive label");
  const cplx b2 = amplitude_B2(model, t, alpha_star, alpha_prime);
  const cplx ea = std::exp(amplitude_A(model, t));
  DrivenPropagator out;
  out.drive_kernel = std::exp(nu_star * nu_prime * std::exp(-I * model.drive_omega() * t));
  out.prop.bath_kernel = bath_kernel(model, t, alpha_star, alpha_prime);
  out.prop.amplitudes << ea * std::exp(b2), 0.0, 0.0, ea * std::exp(-b2);
  return out;
}

cplx dephasing_factor(const Model& model, double t,
                      const CoherentVector& bath_initial) {
  model.check_labels(bath_initial, "bath_initial");
  // Per spin sector the bath evolves as a displaced oscillator; tracing the
  // product coherent state |mu> against the two sector evolutions leaves a
  // single displacement-operator expectation value per mode:
  //   r(t) = e^{i w t} prod_k <mu_k| D(zeta_k) |mu_k>,
  //   zeta_k = 2 d_k (e^{i w_k t} - 1),  d_k = (w/2) g_k / w_k,
  //   <mu|D(z)|mu> = exp(mu* z - mu z* - |z|^2 / 2).
  cplx log_r = I * model.omega() * t;
  for (std::size_t k = 0; k < model.mode_count(); ++k) {
    const auto& m = model.mode(k);
    const double d = 0.5 * model.omega() * m.coupling / m.omega;
    const cplx zeta = 2.0 * d * (std::exp(I * m.omega * t) - 1.0);
    const cplx mu = bath_initial[k];
    log_r += std::conj(mu) * zeta - mu * std::conj(zeta) - 0.5 * std::norm(zeta);
  }
  return std::exp(log_r);
}

}  // namespace qprop
