#ifndef PSILAB_BELL_HPP
#define PSILAB_BELL_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace psilab {

/// Degree-7 polynomial ramp t^4(35 - 84t + 70t^2 - 20t^3), clamped to 0 on
/// t<=0 and 1 on t>=1. Satisfies nu(t) + nu(1-t) = 1 and matches the
/// constants 0/1 with three vanishing derivatives at each end.
struct NuPolynomial {
  static constexpr int degree = 7;

  static double value(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
  }

  /// m-th derivative; m = 0 gives the clamped value.
  static double derivative(int m, double t) {
    if (m == 0) return value(t);
    if (t <= 0.0 || t >= 1.0) return 0.0;
    // coefficients of nu in the monomial basis
    double c[8] = {0, 0, 0, 0, 35.0, -84.0, 70.0, -20.0};
    for (int d = 0; d < m; ++d) {
      for (int i = 0; i + 1 < 8; ++i) c[i] = (i + 1) * c[i + 1];
      c[7] = 0.0;
    }
    if (m > degree) return 0.0;
    double acc = 0.0;
    for (int i = 7; i >= 0; --i) acc = acc * t + c[i];
    return acc;
  }
};

namespace detail {

/// All derivatives of a polynomial (monomial coefficients) at t0, orders
/// 0..mmax.
inline std::vector<double> poly_derivatives(std::vector<double> c, double t0,
                                            int mmax) {
  std::vector<double> out(mmax + 1, 0.0);
  for (int m = 0; m <= mmax; ++m) {
    double acc = 0.0;
    for (int i = (int)c.size() - 1; i >= 0; --i) acc = acc * t0 + c[i];
    out[m] = acc;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = (i + 1) * c[i + 1];
    if (!c.empty()) c.back() = 0.0;
  }
  return out;
}

/// m-th derivative of sin(P(t)) (want_sin) or cos(P(t)) at t0, via Taylor
/// series propagation. Stable for any order: no symbolic coefficient blowup.
inline double trig_of_poly_derivative(const std::vector<double>& P, double t0,
                                      int m, bool want_sin) {
  std::vector<double> u = poly_derivatives(P, t0, m);
  for (int i = 0; i <= m; ++i) {
    double fact = 1.0;
    for (int q = 2; q <= i; ++q) fact *= q;
    u[i] /= fact;  // Taylor coefficients of P at t0
  }
  std::vector<double> s(m + 1, 0.0), c(m + 1, 0.0);
  s[0] = std::sin(u[0]);
  c[0] = std::cos(u[0]);
  for (int k = 0; k < m; ++k) {
    double as = 0.0, ac = 0.0;
    for (int i = 0; i <= k; ++i) {
      as += (i + 1) * u[i + 1] * c[k - i];
      ac += (i + 1) * u[i + 1] * s[k - i];
    }
    s[k + 1] = as / (k + 1);
    c[k + 1] = -ac / (k + 1);
  }
  double fact = 1.0;
  for (int q = 2; q <= m; ++q) fact *= q;
  return (want_sin ? s[m] : c[m]) * fact;
}

/// Natural cubic spline through (x_i, y_i); second derivatives via the
/// Thomas algorithm.
struct NaturalCubic {
  std::vector<double> x, y, m2;

  NaturalCubic() = default;
  NaturalCubic(std::vector<double> xs, std::vector<double> ys)
      : x(std::move(xs)), y(std::move(ys)) {
    const std::size_t n = x.size();
    m2.assign(n, 0.0);
    if (n < 3) return;
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double hl = x[i] - x[i - 1], hr = x[i + 1] - x[i];
      diag[i] = 2.0 * (hl + hr);
      upper[i] = hr;
      rhs[i] = 6.0 * ((y[i + 1] - y[i]) / hr - (y[i] - y[i - 1]) / hl);
    }
    // forward sweep (natural BC: m2 ends stay 0)
    for (std::size_t i = 2; i + 1 < n; ++i) {
      double hl = x[i] - x[i - 1];
      double w = hl / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m2[i] = (rhs[i] - upper[i] * m2[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  std::size_t segment(double t) const {
    // clamped segment index; extrapolates with the boundary cubic
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = (std::size_t)std::max<std::ptrdiff_t>(
        1, std::min<std::ptrdiff_t>(it - x.begin(), (std::ptrdiff_t)x.size() - 1));
    return i - 1;
  }

  double eval(int m, double t) const {
    if (x.size() < 2) return (m == 0 && !y.empty()) ? y[0] : 0.0;
    std::size_t i = segment(t);
    double h = x[i + 1] - x[i];
    double A = (x[i + 1] - t) / h, B = (t - x[i]) / h;
    switch (m) {
      case 0:
        return A * y[i] + B * y[i + 1] +
               ((A * A * A - A) * m2[i] + (B * B * B - B) * m2[i + 1]) * h * h /
                   6.0;
      case 1:
        return (y[i + 1] - y[i]) / h -
               (3.0 * A * A - 1.0) / 6.0 * h * m2[i] +
               (3.0 * B * B - 1.0) / 6.0 * h * m2[i + 1];
      case 2:
        return A * m2[i] + B * m2[i + 1];
      case 3:
        return (m2[i + 1] - m2[i]) / h;
      default:
        return 0.0;
    }
  }
};

}  // namespace detail

/// A bell profile b: real, supported in [R0,R1] with 0 < R0 < R1, together
/// with derivative evaluators. Immutable after construction; evaluation is
/// pure.
class BellProfile {
 public:
  enum class Kind { shannon, meyer, spline };

  Kind kind() const { return kind_; }
  double support_lo() const { return r0_; }
  double support_hi() const { return r1_; }

  /// Largest m for which eval_derivative(m,.) is globally valid and the
  /// derivatives vanish at the support endpoints. Values beyond it are
  /// branchwise (meyer) or clamped to 0 with smoothness_exceeded (spline).
  int smoothness_order() const { return smoothness_; }
  bool smoothness_exceeded(int m) const {
    if (kind_ == Kind::meyer) return false;
    return m > smoothness_;
  }

  const std::vector<double>& breakpoints() const { return brk_; }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& knot_values() const { return values_; }

  std::string id() const {
    switch (kind_) {
      case Kind::shannon: return "shannon";
      case Kind::meyer: return "meyer";
      default: return "spline";
    }
  }

  double eval(double x) const { return eval_derivative(0, x); }

  double eval_derivative(int m, double x) const {
    if (m < 0) throw std::invalid_argument("bell: negative derivative order");
    switch (kind_) {
      case Kind::shannon:
        if (x < r0_ || x > r1_) return 0.0;
        return m == 0 ? M_SQRT1_2 : 0.0;
      case Kind::meyer: {
        if (x <= 1.0 / 3.0 || x >= 4.0 / 3.0) return 0.0;
        if (x < 2.0 / 3.0) {
          // sin((pi/2) nu(3x-1))
          double t = 3.0 * x - 1.0;
          double v = detail::trig_of_poly_derivative(nu_poly(), t, m, true);
          return v * std::pow(3.0, m);
        }
        double t = 1.5 * x - 1.0;
        double v = detail::trig_of_poly_derivative(nu_poly(), t, m, false);
        return v * std::pow(1.5, m);
      }
      case Kind::spline:
      default: {
        if (x < r0_ || x > r1_) return 0.0;
        if (m > 3) return 0.0;  // smoothness exceeded
        return cubic_.eval(m, x);
      }
    }
  }

  static BellProfile shannon() {
    BellProfile b;
    b.kind_ = Kind::shannon;
    b.r0_ = 1.0;
    b.r1_ = 2.0;
    b.smoothness_ = 0;
    b.brk_ = {1.0, 2.0};
    return b;
  }

  static BellProfile meyer() {
    BellProfile b;
    b.kind_ = Kind::meyer;
    b.r0_ = 1.0 / 3.0;
    b.r1_ = 4.0 / 3.0;
    b.smoothness_ = 3;  // nu matches with three vanishing derivatives
    b.brk_ = {1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0};
    return b;
  }

  static BellProfile spline(const std::vector<double>& knots,
                            const std::vector<double>& values, double r0,
                            double r1, int degree = 3) {
    if (!(r0 > 0.0)) throw std::invalid_argument("spline bell: R0 must be > 0");
    if (!(r1 > r0)) throw std::invalid_argument("spline bell: need R1 > R0");
    if (degree < 3) throw std::invalid_argument("spline bell: degree must be >= 3");
    if (knots.size() != values.size() || knots.size() < 2)
      throw std::invalid_argument("spline bell: need >= 2 (knot,value) pairs");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      if (!(knots[i] < knots[i + 1]))
        throw std::invalid_argument("spline bell: knots must be strictly increasing");
    if (knots.front() < r0 || knots.back() > r1)
      throw std::invalid_argument("spline bell: knots must lie inside [R0,R1]");
    BellProfile b;
    b.kind_ = Kind::spline;
    b.r0_ = r0;
    b.r1_ = r1;
    b.smoothness_ = 2;  // C^2 inside; value may jump at the support edges
    b.knots_ = knots;
    b.values_ = values;
    b.cubic_ = detail::NaturalCubic(knots, values);
    b.brk_.push_back(r0);
    for (double k : knots) b.brk_.push_back(k);
    b.brk_.push_back(r1);
    std::sort(b.brk_.begin(), b.brk_.end());
    b.brk_.erase(std::unique(b.brk_.begin(), b.brk_.end()), b.brk_.end());
    return b;
  }

 private:
  static const std::vector<double>& nu_poly() {
    // (pi/2) nu(t) in the monomial basis
    static const std::vector<double> p = {
        0, 0, 0, 0, 35.0 * M_PI_2, -84.0 * M_PI_2, 70.0 * M_PI_2,
        -20.0 * M_PI_2};
    return p;
  }

  Kind kind_ = Kind::shannon;
  double r0_ = 1.0, r1_ = 2.0;
  int smoothness_ = 0;
  std::vector<double> knots_, values_, brk_;
  detail::NaturalCubic cubic_;
};

inline BellProfile make_shannon() { return BellProfile::shannon(); }
inline BellProfile make_meyer() { return BellProfile::meyer(); }

/// Natural cubic interpolant through `control`, clamped to 0 outside
/// [r0, r1]. C^2 inside the support; the clamp may jump at R0/R1 if the
/// boundary values are nonzero.
inline BellProfile make_spline(
    const std::vector<std::pair<double, double>>& control, double r0,
    double r1, int degree = 3) {
  std::vector<double> ks, vs;
  ks.reserve(control.size());
  vs.reserve(control.size());
  for (auto& [k, v] : control) {
    ks.push_back(k);
    vs.push_back(v);
  }
  return BellProfile::spline(ks, vs, r0, r1, degree);
}

}  // namespace psilab

#endif  // PSILAB_BELL_HPP
