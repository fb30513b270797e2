#ifndef QPROP_SIMPLEX_HPP
#define QPROP_SIMPLEX_HPP

#include <complex>
#include <span>
#include <vector>

namespace qprop {

// Gauss-Legendre nodes and weights on [0, 1], computed by Newton iteration
// on the Legendre polynomial.  Deterministic for fixed q.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int q);
};

// Iterated Gauss-Legendre rule on the ordered simplex
// 0 <= tau_1 <= ... <= tau_n <= t.  The outermost variable tau_n runs over
// [0, t]; each inner variable over [0, next node].  For n = 0 the rule is the
// empty product: integrate() evaluates f once on the empty point.
class SimplexRule {
 public:
  SimplexRule(int order, int points);

  int order() const { return order_; }
  int points() const { return points_; }

  // f: std::span<const double> (ordered tau, size = order) -> T.
  // T must support zero init via T{} or be an Eigen fixed-size type; pass the
  // additive identity explicitly.
  template <typename T, typename F>
  T integrate(double t, F&& f, T zero) const {
    std::vector<double> tau(static_cast<std::size_t>(order_));
    return nest(order_, t, tau, f, zero);
  }

 private:
  template <typename T, typename F>
  T nest(int level, double upper, std::vector<double>& tau, F&& f, const T& zero) const {
    if (level == 0)
      return f(std::span<const double>(tau.data(), tau.size()));
    T acc = zero;
    for (int i = 0; i < points_; ++i) {
      tau[static_cast<std::size_t>(level - 1)] = upper * gl_.nodes[static_cast<std::size_t>(i)];
      T inner = nest(level - 1, tau[static_cast<std::size_t>(level - 1)], tau, f, zero);
      acc += (upper * gl_.weights[static_cast<std::size_t>(i)]) * inner;
    }
    return acc;
  }

  int order_;
  int points_;
  GaussLegendre gl_;
};

// Exact integral over the ordered simplex of exp{i b A_n(tau, t)} with the
// alternating piecewise-linear phase
//   A_n = sum_{j=1}^n (-1)^{j+1} 2 tau_j + (-1)^n t.
// The integrand is a product of exponentials with frequencies +-2b, so each
// nested integral stays a finite exponential-polynomial sum and the result is
// exact up to rounding.  For real b the cos/sin simplex integrals are the
// real and imaginary parts.
std::complex<double> simplex_exp_alternating(int n, double b, double t);

}  // namespace qprop

#endif
