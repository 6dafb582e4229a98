#ifndef PSILAB_QUADRATURE_HPP
#define PSILAB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace psilab {

using complex = std::complex<double>;

/// Parameters of the composite Gauss-Legendre rule used throughout.
struct QuadSpec {
  int points_per_panel = 16;   // Gauss-Legendre order per panel
  int panels_per_cycle = 4;    // panels per oscillation cycle
  double tol = 1e-11;          // target absolute error
  int max_refinements = 12;
};

/// Nodes/weights of an n-point Gauss-Legendre rule on [-1,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline GaussRule compute_gauss_rule(int n) {
  if (n < 2) throw std::invalid_argument("quadrature: order must be >= 2");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on P_n, Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

inline const GaussRule& gauss_rule(int n) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_rule(n)).first;
  return it->second;
}

}  // namespace detail

/// Result of a quadrature call. `converged == false` marks a NonConvergent
/// value; the best estimate is still returned so sweeps can record it.
struct QuadResult {
  complex value{0.0, 0.0};
  double err_est = 0.0;
  bool converged = true;
};

/// Integrate g over [a,b]. `osc_freq` is the oscillation frequency of the
/// integrand in cycles per unit length; the panel count scales with it.
/// Known interior kinks are passed as `breakpoints`; panels never straddle
/// them. Panels are summed in ascending interval order so results are
/// bitwise reproducible.
inline QuadResult integrate(const std::function<complex(double)>& g, double a,
                            double b, double osc_freq, const QuadSpec& spec = {},
                            std::span<const double> breakpoints = {}) {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
    throw std::invalid_argument("integrate: need 0 < a < b < inf");

  std::vector<double> cuts;
  cuts.push_back(a);
  for (double bp : breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const GaussRule& rule = detail::gauss_rule(spec.points_per_panel);

  auto composite = [&](int mult) {
    complex sum{0.0, 0.0};
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double lo = cuts[s], hi = cuts[s + 1];
      const double width = hi - lo;
      long panels = (long)std::ceil(spec.panels_per_cycle *
                                    (std::abs(osc_freq) * width + 1.0));
      panels = std::max<long>(1, panels) * mult;
      const double h = width / (double)panels;
      for (long p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        complex acc{0.0, 0.0};
        for (int q = 0; q < spec.points_per_panel; ++q)
          acc += rule.weights[q] * g(mid + 0.5 * h * rule.nodes[q]);
        sum += 0.5 * h * acc;
      }
    }
    return sum;
  };

  complex coarse = composite(1);
  int mult = 2;
  double err = 0.0;
  for (int r = 0; r < spec.max_refinements; ++r) {
    complex fine = composite(mult);
    err = std::abs(fine - coarse);
    if (err <= spec.tol) return {fine, err, true};
    coarse = fine;
    mult *= 2;
  }
  return {coarse, err, false};
}

/// L2 distance (integral form) between f and g on [a,b].
inline QuadResult l2_error(const std::function<complex(double)>& f,
                           const std::function<complex(double)>& g, double a,
                           double b, const QuadSpec& spec = {},
                           double osc_freq = 0.0,
                           std::span<const double> breakpoints = {}) {
  auto integrand = [&](double x) -> complex {
    complex d = f(x) - g(x);
    return complex(std::norm(d), 0.0);
  };
  QuadResult r = integrate(integrand, a, b, osc_freq, spec, breakpoints);
  double v = std::max(0.0, r.value.real());
  return {complex(std::sqrt(v), 0.0), r.err_est, r.converged};
}

}  // namespace psilab

#endif  // PSILAB_QUADRATURE_HPP
