#pragma once

// Riesz-Caputo fractional derivative machinery on truncated horizons:
// power-law attenuation kernel, analytic kernel moments over intervals,
// and a graded-quadrature reference evaluator for pointwise derivatives.
//
// The derivative of order alpha in [0.5,1] of a field f at x over the
// horizon (x - l_a, x + l_b) is
//
//   D^a f(x) = (1-a)/2 * [ l_a^(a-1) * I[ f'(s) (x-s)^(-a), s in (x-l_a, x) ]
//                        + l_b^(a-1) * I[ f'(s) (s-x)^(-a), s in (x, x+l_b) ] ]
//
// The l^(a-1) side normalizers make the kernel integrate to exactly 1 over
// any truncated horizon, so D^a reproduces the slope of linear fields and
// annihilates constants. At a = 1 the kernel degenerates to a point mass
// and D^1 f = f'.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracmech {

// Fractional order restricted to [0.5, 1]; orders below 0.5 break the
// causality/stability of the dispersion relation, orders above 1 the
// kernel sign. Checked once at construction.
class FractionalOrder {
 public:
  explicit FractionalOrder(double value) : value_(value) {
    if (!(value >= 0.5 && value <= 1.0)) {
      throw std::invalid_argument("FractionalOrder: value " + std::to_string(value) +
                                  " outside the admissible range [0.5, 1]");
    }
  }

  double value() const { return value_; }
  bool is_integer() const { return value_ == 1.0; }

  // Bypasses the range check. Diagnostic/test hook only, e.g. for probing
  // the unstable region of the dispersion relation.
  static FractionalOrder unchecked(double value) { return FractionalOrder(value, unchecked_t{}); }

 private:
  struct unchecked_t {};
  FractionalOrder(double value, unchecked_t) : value_(value) {}
  double value_;
};

// Per-evaluation-point truncated nonlocal lengths (left/right).
struct Horizon {
  double l_a = 0.0;
  double l_b = 0.0;

  Horizon() = default;
  Horizon(double la, double lb) : l_a(la), l_b(lb) {
    if (la < 0.0 || lb < 0.0) throw std::invalid_argument("Horizon: negative length scale");
  }

  bool degenerate() const { return l_a == 0.0 && l_b == 0.0; }
};

enum class KernelSide { left, right };

struct KernelEval {
  double weight = 0.0;
  KernelSide side = KernelSide::left;
};

// 0.5 * Gamma(2 - alpha): the multiplier combining the left- and
// right-handed Caputo derivatives into the symmetric form.
inline double gamma_prefactor(FractionalOrder alpha) {
  return 0.5 * std::tgamma(2.0 - alpha.value());
}

// Pointwise attenuation kernel K(x, x').  Never valid at x' == x.
inline KernelEval attenuation_kernel(double x, double xp, const Horizon& h, FractionalOrder alpha) {
  if (xp == x) throw std::domain_error("attenuation_kernel: singular point x' == x");
  const double a = alpha.value();
  if (xp < x) {
    if (xp <= x - h.l_a) throw std::out_of_range("attenuation_kernel: x' outside left horizon");
    return {0.5 * (1.0 - a) * std::pow(h.l_a, a - 1.0) * std::pow(x - xp, -a), KernelSide::left};
  }
  if (xp >= x + h.l_b) throw std::out_of_range("attenuation_kernel: x' outside right horizon");
  return {0.5 * (1.0 - a) * std::pow(h.l_b, a - 1.0) * std::pow(xp - x, -a), KernelSide::right};
}

namespace detail {

// I[ (c - r)^j r^(-a), r in (r0, r1) ] for j = 0..p, expanded binomially.
// All exponents m + 1 - a are positive for a < 1, so endpoint r = 0 is fine.
inline std::array<double, 3> shifted_power_integrals(double c, double sign, double r0, double r1,
                                                     double a, int p) {
  std::array<double, 3> out{0.0, 0.0, 0.0};
  double base[3];
  for (int m = 0; m <= p; ++m) {
    const double e = static_cast<double>(m) + 1.0 - a;
    base[m] = (std::pow(r1, e) - std::pow(r0, e)) / e;
  }
  // (c + sign*r)^j = sum_m binom(j,m) c^(j-m) sign^m r^m
  static constexpr double binom[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  for (int j = 0; j <= p; ++j) {
    double s = 0.0, sgn = 1.0;
    for (int m = 0; m <= j; ++m) {
      s += binom[j][m] * std::pow(c, j - m) * sgn * base[m];
      sgn *= sign;
    }
    out[j] = s;
  }
  return out;
}

}  // namespace detail

// Analytic moments of the attenuation kernel against powers of (x' - center):
//
//   m[j] = I[ K(x, x') (x' - center)^j, x' in elem ∩ horizon ],  j = 0..p
//
// evaluated by exact antiderivatives of r^(m-a), split at x when x lies
// inside the element. Empty intersection yields a zero vector. p <= 2.
inline std::array<double, 3> element_kernel_moments(double elem_lo, double elem_hi, double x,
                                                    FractionalOrder alpha, const Horizon& h, int p,
                                                    double center = 0.0) {
  if (p < 0 || p > 2) throw std::invalid_argument("element_kernel_moments: p must be in 0..2");
  std::array<double, 3> out{0.0, 0.0, 0.0};
  const double a = alpha.value();
  if (a == 1.0) return out;  // kernel vanishes identically

  // Left part: x' in (max(elem_lo, x - l_a), min(elem_hi, x)); r = x - x'.
  {
    const double lo = std::max(elem_lo, x - h.l_a);
    const double hi = std::min(elem_hi, x);
    if (hi > lo && h.l_a > 0.0) {
      const double pref = 0.5 * (1.0 - a) * std::pow(h.l_a, a - 1.0);
      const auto m = detail::shifted_power_integrals(x - center, -1.0, x - hi, x - lo, a, p);
      for (int j = 0; j <= p; ++j) out[j] += pref * m[j];
    }
  }
  // Right part: x' in (max(elem_lo, x), min(elem_hi, x + l_b)); r = x' - x.
  {
    const double lo = std::max(elem_lo, x);
    const double hi = std::min(elem_hi, x + h.l_b);
    if (hi > lo && h.l_b > 0.0) {
      const double pref = 0.5 * (1.0 - a) * std::pow(h.l_b, a - 1.0);
      const auto m = detail::shifted_power_integrals(x - center, +1.0, lo - x, hi - x, a, p);
      for (int j = 0; j <= p; ++j) out[j] += pref * m[j];
    }
  }
  return out;
}

// Gauss-Legendre rule on [-1, 1], computed by Newton iteration on the
// Legendre recurrence.
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n / 2 + n % 2; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    rule.points[i] = -t;
    rule.points[n - 1 - i] = t;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - t * t) * pp * pp);
  }
  return rule;
}

// Quadrature control for the reference derivative evaluator: geometric
// panels graded toward the kernel singularity, Gauss-Legendre per panel,
// and an analytic constant-slope closure on the innermost sliver.
struct QuadratureSpec {
  int gauss_points = 16;
  int levels = 48;
  double grading = 0.5;
};

namespace detail {

// I[ df(x + dir*r) * r^(-beta), r in (0, l) ] for beta in (0, 1),
// by graded panels. dir = -1 for the left side, +1 for the right side.
inline double graded_side_integral(const std::function<double(double)>& df, double x, double l,
                                   double beta, double dir, const QuadratureSpec& q) {
  const GaussRule rule = gauss_legendre(q.gauss_points);
  double total = 0.0;
  double hi = l;
  for (int lev = 0; lev < q.levels; ++lev) {
    const double lo = hi * q.grading;
    double panel = 0.0;
    const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
    for (int i = 0; i < q.gauss_points; ++i) {
      const double r = mid + half * rule.points[i];
      panel += rule.weights[i] * df(x + dir * r) * std::pow(r, -beta);
    }
    total += half * panel;
    hi = lo;
  }
  // Innermost sliver (0, hi): df is effectively constant there.
  total += df(x) * std::pow(hi, 1.0 - beta) / (1.0 - beta);
  return total;
}

}  // namespace detail

// Reference pointwise Riesz-Caputo derivative of a once-differentiable
// field given its derivative df. Degenerate sides reduce to the one-sided
// boundary-limit form (half-weight on the local slope).
inline double rc_derivative_point(const std::function<double(double)>& df, double x,
                                  FractionalOrder alpha, const Horizon& h,
                                  const QuadratureSpec& quad = {}) {
  if (h.degenerate()) throw std::invalid_argument("rc_derivative_point: degenerate horizon");
  const double a = alpha.value();
  if (a == 1.0) return df(x);

  double result = 0.0;
  if (h.l_a > 0.0) {
    result += 0.5 * (1.0 - a) * std::pow(h.l_a, a - 1.0) *
              detail::graded_side_integral(df, x, h.l_a, a, -1.0, quad);
  } else {
    result += 0.5 * df(x);
  }
  if (h.l_b > 0.0) {
    result += 0.5 * (1.0 - a) * std::pow(h.l_b, a - 1.0) *
              detail::graded_side_integral(df, x, h.l_b, a, +1.0, quad);
  } else {
    result += 0.5 * df(x);
  }
  return result;
}

}  // namespace fracmech
