#include "qprop/spin_bath.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "qprop/simplex.hpp"

namespace qprop {

namespace {

constexpr cplx I{0.0, 1.0};

void check_sector(int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("sector label s must be +1 or -1");
}

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

}  // namespace

double a_n(std::span<const double> tau, double t) {
  check_ordered(t, tau);
  double sum = (tau.size() % 2 == 0) ? t : -t;
  double sign = 1.0;
  for (double x : tau) {
    sum += sign * 2.0 * x;
    sign = -sign;
  }
  return sum;
}

double theta_kn(const Model& model, std::size_t k, int s,
                std::span<const double> tau, double t) {
  check_sector(s);
  return 0.5 * model.omega() * s * model.mode_coupling(k) * a_n(tau, t);
}

ModeSeries mode_propagator_series(const Model& model, std::size_t k, int s,
                                  double t, int order) {
  check_sector(s);
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
  const double wk = model.mode_omega(k);
  const double b = 0.5 * model.omega() * s * model.mode_coupling(k);

  Matrix2cd sum = Matrix2cd::Zero();
  double last_term_norm = 0.0;
  for (int n = 0; n <= order; ++n) {
    // Exact simplex integral of e^{i b A_n}; cos and sin integrals are its
    // real and imaginary parts (A_n and b are real).
    const cplx c = simplex_exp_alternating(n, b, t);
    const double cos_int = c.real();
    const double sin_int = c.imag();
    const double row_sign = (n % 2 == 0) ? 1.0 : -1.0;
    Matrix2cd term;
    term << cos_int, I * sin_int, row_sign * I * sin_int, row_sign * cos_int;
    term *= std::pow(I * wk, n);
    sum += term;
    last_term_norm = term.cwiseAbs().maxCoeff();
  }
  return {sum, last_term_norm};
}

Matrix2cd mode_series_term_quadrature(const Model& model, std::size_t k, int s,
                                      double t, int n, int points) {
  check_sector(s);
  const double row_sign = (n % 2 == 0) ? 1.0 : -1.0;
  SimplexRule rule(n, points);
  Matrix2cd integral = rule.integrate<Matrix2cd>(
      t,
      [&](std::span<const double> tau) {
        const double th = theta_kn(model, k, s, tau, t);
        Matrix2cd m;
        m << std::cos(th), I * std::sin(th), row_sign * I * std::sin(th),
            row_sign * std::cos(th);
        return m;
      },
      Matrix2cd::Zero().eval());
  return std::pow(I * model.mode_omega(k), n) * integral;
}

Matrix2cd mode_propagator_exact(const Model& model, std::size_t k, int s, double t) {
  check_sector(s);
  const double wk = model.mode_omega(k);
  const double b = 0.5 * model.omega() * s * model.mode_coupling(k);
  // exp{i t (wk Z + b X)} = cos(rt) I + i sin(rt) (wk Z + b X) / r
  const double r = std::hypot(wk, b);
  Matrix2cd h;
  h << wk, b, b, -wk;
  const double rt = r * t;
  const cplx sinc = (r == 0.0) ? cplx(t) : cplx(std::sin(rt) / r);
  return std::cos(rt) * Matrix2cd::Identity() + I * sinc * h;
}

SpinBathPropagator propagator_spinbath(const Model& model, double t, int s,
                                       int order, bool exact_modes) {
  check_sector(s);
  SpinBathPropagator out;
  out.system_phase = std::exp(I * (0.5 * model.omega() * s * t));
  out.mode_factors.reserve(model.mode_count());
  for (std::size_t k = 0; k < model.mode_count(); ++k) {
    if (exact_modes)
      out.mode_factors.push_back(mode_propagator_exact(model, k, s, t));
    else
      out.mode_factors.push_back(mode_propagator_series(model, k, s, t, order).matrix);
  }
  return out;
}

Eigen::MatrixXcd materialize(const SpinBathPropagator& prop) {
  if (prop.mode_factors.size() > 10)
    throw std::invalid_argument("materialize: refusing tensor product for M > 10");
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
  for (const auto& m : prop.mode_factors)
    full = Eigen::kroneckerProduct(full, m).eval();
  return prop.system_phase * full;
}

}  // namespace qprop
