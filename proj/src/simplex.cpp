#include "qprop/simplex.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qprop {

GaussLegendre::GaussLegendre(int q) {
  if (q < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  nodes.resize(static_cast<std::size_t>(q));
  weights.resize(static_cast<std::size_t>(q));
  // Roots of P_q on [-1, 1] by Newton iteration, then mapped to [0, 1].
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= q; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(q - 1 - i)] = 0.5 * (1.0 + x);
    weights[static_cast<std::size_t>(q - 1 - i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

SimplexRule::SimplexRule(int order, int points)
    : order_(order), points_(points), gl_(points) {
  if (order < 0) throw std::invalid_argument("simplex order must be >= 0");
}

namespace {

using cplx = std::complex<double>;

// Chebyshev machinery on [0, t] for the nested one-dimensional integrals.
constexpr int kChebDegree = 48;

struct Cheb {
  // values at nodes tau_i = t (1 + cos(i pi / d)) / 2, i = 0..d
  std::vector<cplx> vals;
};

std::vector<double> cheb_nodes_x() {
  std::vector<double> x(kChebDegree + 1);
  for (int i = 0; i <= kChebDegree; ++i)
    x[static_cast<std::size_t>(i)] = std::cos(std::numbers::pi * i / kChebDegree);
  return x;
}

std::vector<cplx> vals_to_coeffs(const std::vector<cplx>& v) {
  const int d = kChebDegree;
  std::vector<cplx> c(static_cast<std::size_t>(d + 1));
  for (int j = 0; j <= d; ++j) {
    cplx s = 0.5 * (v[0] + (j % 2 == 0 ? 1.0 : -1.0) * v[static_cast<std::size_t>(d)]);
    for (int i = 1; i < d; ++i)
      s += v[static_cast<std::size_t>(i)] * std::cos(std::numbers::pi * i * j / d);
    c[static_cast<std::size_t>(j)] = (2.0 / d) * s;
  }
  c[0] *= 0.5;
  c[static_cast<std::size_t>(d)] *= 0.5;
  return c;
}

cplx eval_coeffs(const std::vector<cplx>& c, double x) {
  // Clenshaw
  cplx b1 = 0.0, b2 = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) {
    cplx b0 = 2.0 * x * b1 - b2 + c[static_cast<std::size_t>(j)];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

// Indefinite integral from tau = 0 (x = -1), on [0, t]; returns coefficients.
std::vector<cplx> antiderivative(const std::vector<cplx>& c, double t) {
  const int d = static_cast<int>(c.size()) - 1;
  std::vector<cplx> b(static_cast<std::size_t>(d + 2), cplx(0.0));
  const double scale = 0.5 * t;  // d tau = (t/2) dx
  auto cc = [&](int j) { return j <= d ? c[static_cast<std::size_t>(j)] : cplx(0.0); };
  b[1] = scale * (c[0] - 0.5 * cc(2));
  for (int j = 2; j <= d + 1; ++j)
    b[static_cast<std::size_t>(j)] =
        scale * (cc(j - 1) - cc(j + 1)) / (2.0 * j);
  cplx at_minus_one = 0.0;
  for (int j = 1; j <= d + 1; ++j)
    at_minus_one += (j % 2 == 0 ? 1.0 : -1.0) * b[static_cast<std::size_t>(j)];
  b[0] = -at_minus_one;
  return b;
}

}  // namespace

std::complex<double> simplex_exp_alternating(int n, double b, double t) {
  if (n < 0) throw std::invalid_argument("simplex order must be >= 0");
  const cplx I{0.0, 1.0};
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  if (b == 0.0 || n == 0) {
    double vol = 1.0;
    for (int j = 1; j <= n; ++j) vol *= t / j;
    return vol * std::exp(I * b * parity * t);
  }
  const double w = 2.0 * b;
  static const std::vector<double> xs = cheb_nodes_x();
  std::vector<cplx> fvals(static_cast<std::size_t>(kChebDegree + 1), cplx(1.0));
  std::vector<double> tau(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) tau[i] = 0.5 * t * (1.0 + xs[i]);
  for (int j = 1; j <= n; ++j) {
    const double sj = (j % 2 == 1) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < fvals.size(); ++i)
      fvals[i] *= std::exp(I * sj * w * tau[i]);
    auto coeffs = vals_to_coeffs(fvals);
    auto prim = antiderivative(coeffs, t);
    if (j < n) {
      for (std::size_t i = 0; i < fvals.size(); ++i)
        fvals[i] = eval_coeffs(prim, xs[i]);
    } else {
      return std::exp(I * b * parity * t) * eval_coeffs(prim, 1.0);
    }
  }
  return 0.0;  // unreachable
}

}  // namespace qprop
