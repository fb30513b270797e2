#include "qprop/spin_bose.hpp"

#include <cmath>
#include <stdexcept>

#include "qprop/simplex.hpp"

namespace qprop {

namespace {

constexpr cplx I{0.0, 1.0};

void check_ordered(double t, std::span<const double> tau) {
  // For t < 0 the simplex runs monotonically from 0 down to t.
  const double dir = (t < 0.0) ? -1.0 : 1.0;
  double prev = 0.0;
  for (double x : tau) {
    if (dir * x < dir * prev || dir * x > dir * t)
      throw std::invalid_argument("unordered simplex times");
    prev = x;
  }
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

cplx kappa_n(const Model& model, double t, std::span<const double> tau) {
  check_ordered(t, tau);
  const int n = static_cast<int>(tau.size());
  const double half_w_sq = 0.25 * model.omega() * model.omega();
  cplx total = 0.0;
  for (std::size_t k = 0; k < model.mode_count(); ++k) {
    const double wk = model.mode_omega(k);
    const double gk = model.mode_coupling(k);
    cplx bracket = cplx(2.0 * n + 1.0) - I * wk * t +
                   sign_pow(n + 1) * std::exp(-I * wk * t);
    cplx s1 = 0.0, s2 = 0.0;
    for (int l = 1; l <= n; ++l) {
      const double tl = tau[static_cast<std::size_t>(l - 1)];
      s1 += sign_pow(l + 1) * std::exp(-I * wk * tl);
      s2 += sign_pow(l + 1) * std::exp(-I * wk * (t - tl));
    }
    bracket += -2.0 * s1 + 2.0 * sign_pow(n) * s2;
    cplx dbl = 0.0;
    for (int p = 2; p <= n; ++p)
      for (int q = 1; q < p; ++q)
        dbl += sign_pow(p + q) * std::exp(-I * wk * (tau[static_cast<std::size_t>(p - 1)] -
                                                     tau[static_cast<std::size_t>(q - 1)]));
    bracket += 4.0 * dbl;
    total += (gk * gk) / (wk * wk) * bracket;
  }
  return -half_w_sq * total;
}

cplx chi_n(const Model& model, double t, std::span<const double> tau,
           const CoherentVector& alpha_star, const CoherentVector& alpha_prime) {
  check_ordered(t, tau);
  model.check_labels(alpha_star, "alpha_star");
  model.check_labels(alpha_prime, "alpha_prime");
  const int n = static_cast<int>(tau.size());
  cplx total = 0.0;
  for (std::size_t k = 0; k < model.mode_count(); ++k) {
    const double wk = model.mode_omega(k);
    const double gk = model.mode_coupling(k);
    cplx bracket = (alpha_prime[k] + sign_pow(n) * alpha_star[k]) *
                   (1.0 + sign_pow(n + 1) * std::exp(-I * wk * t));
    cplx s1 = 0.0, s2 = 0.0;
    for (int l = 1; l <= n; ++l) {
      const double tl = tau[static_cast<std::size_t>(l - 1)];
      s1 += sign_pow(l + 1) * std::exp(-I * wk * tl);
      s2 += sign_pow(l + 1) * std::exp(-I * wk * (t - tl));
    }
    bracket += 2.0 * alpha_star[k] * s2 - 2.0 * alpha_prime[k] * s1;
    total += (gk / wk) * bracket;
  }
  return -0.5 * model.omega() * total;
}

namespace {

int effective_points(int n, int q) {
  if (n <= 2) return q;
  if (n <= 4) return std::max(4, q / 2);
  return 2;
}

}  // namespace

SeriesPropagator propagator_nonqnd(const Model& model, double t,
                                   const CoherentVector& alpha_star,
                                   const CoherentVector& alpha_prime,
                                   const TruncationSpec& trunc) {
  trunc.validate();
  model.check_labels(alpha_star, "alpha_star");
  model.check_labels(alpha_prime, "alpha_prime");

  bool uncoupled = true;
  for (std::size_t k = 0; k < model.mode_count(); ++k)
    if (model.mode_coupling(k) != 0.0) uncoupled = false;

  const cplx prefactor_base = I * 0.5 * model.omega();
  Matrix2cd sum = Matrix2cd::Zero();
  double last_term_norm = 0.0;
  for (int n = 0; n <= trunc.series_order; ++n) {
    const double row_sign = sign_pow(n);
    Matrix2cd term;
    if (uncoupled) {
      // kappa = chi = 0; the simplex integral is the volume t^n/n!.
      double vol = 1.0;
      for (int j = 1; j <= n; ++j) vol *= t / j;
      term << vol, 0.0, 0.0, row_sign * vol;
    } else {
      SimplexRule rule(n, effective_points(n, trunc.quad_points));
      term = rule.integrate<Matrix2cd>(
          t,
          [&](std::span<const double> tau) {
            const cplx ek = std::exp(kappa_n(model, t, tau));
            const cplx chi = chi_n(model, t, tau, alpha_star, alpha_prime);
            const cplx ch = std::cosh(chi), sh = std::sinh(chi);
            Matrix2cd m;
            m << ek * ch, ek * sh, row_sign * ek * sh, row_sign * ek * ch;
            return m;
          },
          Matrix2cd::Zero().eval());
    }
    term *= std::pow(prefactor_base, n);
    if (!term.allFinite())
      throw std::runtime_error("propagator_nonqnd: quadrature overflow at order " +
                               std::to_string(n));
    sum += term;
    last_term_norm = term.cwiseAbs().maxCoeff();
  }

  SeriesPropagator out;
  cplx ksum = 0.0;
  for (std::size_t k = 0; k < model.mode_count(); ++k)
    ksum += alpha_star[k] * alpha_prime[k] * std::exp(-I * model.mode_omega(k) * t);
  out.prop.bath_kernel = std::exp(ksum);
  out.prop.amplitudes = sum;
  out.error_estimate = last_term_norm;
  return out;
}

}  // namespace qprop
