#ifndef PSILAB_TRANSFORM_HPP
#define PSILAB_TRANSFORM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "psilab/basis.hpp"
#include "psilab/bell.hpp"
#include "psilab/parallel.hpp"
#include "psilab/quadrature.hpp"
#include "psilab/sampled.hpp"

namespace psilab {

/// Coefficient array c_{j,k} over a finite index window, row-major with j
/// ascending, then k ascending. `nonconvergent` lists entries whose
/// quadrature did not meet the tolerance (values are still best estimates).
struct CoeffArray {
  IndexWindow window;
  std::string bell_id;
  double tol = 1e-11;
  std::vector<std::complex<double>> values;
  std::vector<BasisIndex> nonconvergent;

  CoeffArray() = default;
  explicit CoeffArray(IndexWindow w, std::string bell = "", double t = 1e-11)
      : window(w), bell_id(std::move(bell)), tol(t), values(w.count(), {0.0, 0.0}) {}

  std::complex<double>& at(int j, int k) { return values[window.flat(j, k)]; }
  std::complex<double> at(int j, int k) const { return values[window.flat(j, k)]; }

  double max_abs() const {
    double m = 0.0;
    for (auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }

  /// sup_k (1+|k|)^n |c_{j,k}| for one row; n may be negative.
  double row_sup(int j, double n) const {
    double m = 0.0;
    for (int k = -window.kmax; k <= window.kmax; ++k) {
      double a = std::abs(at(j, k));
      if (a == 0.0) continue;
      m = std::max(m, std::pow(1.0 + std::abs((double)k), n) * a);
    }
    return m;
  }
};

namespace detail {

inline std::vector<double> scaled_bell_breakpoints(const BellProfile& b, int j,
                                                   double lo, double hi) {
  std::vector<double> out;
  for (double bp : b.breakpoints()) {
    double s = std::ldexp(bp, j);
    if (s > lo && s < hi) out.push_back(s);
  }
  return out;
}

}  // namespace detail

/// Analysis map: c_{j,k} = <f, psi_{j,k}> with the Hermitian pairing
/// (integral of f times conj(psi)). Point masses of order p evaluate as
/// (-1)^p (d/dx)^p conj(psi_{j,k}) at the location. Entries whose supports
/// are disjoint from f's support are exactly 0.
inline CoeffArray analyze(const SampledFunction& f, const BellProfile& b,
                          const IndexWindow& w, const QuadSpec& spec = {},
                          int threads = 0) {
  CoeffArray out(w, b.id(), spec.tol);
  std::vector<uint8_t> flags(w.count(), 0);

  detail::parallel_for(w.count(), [&](std::size_t idx) {
    const int j = w.jmin + (int)(idx / w.cols());
    const int k = -w.kmax + (int)(idx % w.cols());
    const Interval sup = support(b, j);

    if (f.descriptor() == SampledFunction::Descriptor::point_mass) {
      const PointMass pm = *f.point();
      if (pm.location < sup.lo || pm.location > sup.hi) return;
      std::complex<double> v =
          std::conj(eval_psi_derivative(b, {j, k}, pm.order, pm.location));
      if (pm.order % 2 != 0) v = -v;
      out.values[idx] = v;
      return;
    }

    double lo = sup.lo, hi = sup.hi;
    if (f.compact_support()) {
      lo = std::max(lo, f.compact_support()->lo);
      hi = std::min(hi, f.compact_support()->hi);
    }
    if (!(hi > lo)) return;  // disjoint: exactly zero

    std::vector<double> brk = detail::scaled_bell_breakpoints(b, j, lo, hi);
    for (double bp : f.breakpoints())
      if (bp > lo && bp < hi) brk.push_back(bp);

    const double freq =
        std::abs((double)k) * std::exp2((double)-j) + f.extra_cycles(lo, hi) / (hi - lo);
    auto integrand = [&](double x) {
      return f.eval(x) * std::conj(eval_psi(b, {j, k}, x));
    };
    QuadResult r = integrate(integrand, lo, hi, freq, spec, brk);
    out.values[idx] = r.value;
    if (!r.converged) flags[idx] = 1;
  }, threads);

  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) {
      out.nonconvergent.push_back(
          {w.jmin + (int)(i / w.cols()), -w.kmax + (int)(i % w.cols())});
    }
  }
  return out;
}

/// m-th derivative of the finite partial sum sum_{(j,k) in w} c_{j,k}
/// psi_{j,k} at x. Summation order is fixed: ascending j, then ascending k.
inline std::complex<double> synthesize_derivative(const CoeffArray& c,
                                                  const BellProfile& b, int m,
                                                  double x) {
  if (!(x > 0.0)) throw std::invalid_argument("synthesize: x must be > 0");
  const IndexWindow& w = c.window;
  std::complex<double> total{0.0, 0.0};
  for (int j = w.jmin; j <= w.jmax; ++j) {
    const double u = std::ldexp(x, -j);
    if (u < b.support_lo() || u > b.support_hi()) continue;

    // bell derivatives at u, orders 0..m
    double d[16];
    for (int i = 0; i <= m; ++i) d[i] = b.eval_derivative(i, u);

    const double amp = M_SQRT2 * std::exp2(-0.5 * j) * std::exp2((double)(-j) * m);
    // phase recurrence over k
    const std::complex<double> step(std::cos(-2.0 * M_PI * u),
                                    std::sin(-2.0 * M_PI * u));
    std::complex<double> phase(std::cos(2.0 * M_PI * w.kmax * u),
                               std::sin(2.0 * M_PI * w.kmax * u));
    std::complex<double> row{0.0, 0.0};
    for (int k = -w.kmax; k <= w.kmax; ++k) {
      const std::complex<double> cv = c.at(j, k);
      if (cv != std::complex<double>{0.0, 0.0}) {
        // sum_i binom(m,i) (-2 pi i k)^i b^{(m-i)}(u)
        const std::complex<double> iw(0.0, -2.0 * M_PI * k);
        std::complex<double> poly{0.0, 0.0}, iw_pow{1.0, 0.0};
        double binom = 1.0;
        for (int i = 0; i <= m; ++i) {
          poly += binom * iw_pow * d[m - i];
          iw_pow *= iw;
          binom = binom * (m - i) / (i + 1.0);
        }
        row += cv * phase * poly;
      }
      phase *= step;
    }
    total += amp * row;
  }
  return total;
}

inline std::complex<double> synthesize(const CoeffArray& c,
                                       const BellProfile& b, double x) {
  return synthesize_derivative(c, b, 0, x);
}

/// Wrap a truncated synthesis as a SampledFunction (for norm sweeps).
inline SampledFunction synthesized(const CoeffArray& c, const BellProfile& b) {
  std::vector<double> brk;
  for (int j = c.window.jmin; j <= c.window.jmax; ++j)
    for (double bp : b.breakpoints()) brk.push_back(std::ldexp(bp, j));
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
  const int nmax = std::max(3, b.smoothness_order());
  auto f = SampledFunction::piecewise(
      "synth(" + c.bell_id + ")",
      [c, b](int m, double x) { return synthesize_derivative(c, b, m, x); },
      nmax, brk, b.smoothness_order() == 0);
  f.with_support(Interval{std::ldexp(b.support_lo(), c.window.jmin),
                          std::ldexp(b.support_hi(), c.window.jmax)});
  return f;
}

/// Gram matrix G[(j,k),(j',k')] = int psi_{j,k} conj(psi_{j',k'}), Hermitian,
/// rows/cols in window flat order.
inline std::vector<std::complex<double>> gram(const BellProfile& b,
                                              const IndexWindow& w,
                                              const QuadSpec& spec = {},
                                              int threads = 0) {
  const std::size_t n = w.count();
  std::vector<std::complex<double>> G(n * n, {0.0, 0.0});

  // upper triangle (flat row <= flat col), mirrored afterwards
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t cidx = r; cidx < n; ++cidx) pairs.emplace_back(r, cidx);

  detail::parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [r, cidx] = pairs[p];
    const int j1 = w.jmin + (int)(r / w.cols());
    const int k1 = -w.kmax + (int)(r % w.cols());
    const int j2 = w.jmin + (int)(cidx / w.cols());
    const int k2 = -w.kmax + (int)(cidx % w.cols());
    const Interval s1 = support(b, j1), s2 = support(b, j2);
    const double lo = std::max(s1.lo, s2.lo), hi = std::min(s1.hi, s2.hi);
    if (!(hi > lo)) return;

    std::vector<double> brk = detail::scaled_bell_breakpoints(b, j1, lo, hi);
    for (double bp : detail::scaled_bell_breakpoints(b, j2, lo, hi))
      brk.push_back(bp);

    const double freq = std::abs((double)k1 * std::exp2((double)-j1) -
                                 (double)k2 * std::exp2((double)-j2));
    auto integrand = [&](double x) {
      return eval_psi(b, {j1, k1}, x) * std::conj(eval_psi(b, {j2, k2}, x));
    };
    QuadResult res = integrate(integrand, lo, hi, freq, spec, brk);
    G[r * n + cidx] = res.value;
    if (cidx != r) G[cidx * n + r] = std::conj(res.value);
  }, threads);

  return G;
}

/// | sum_w |c_{j,k}|^2 - ||f||_{L^2}^2 |. Requires f with declared compact
/// support (the L^2 norm is integrated over it).
inline double parseval_defect(const SampledFunction& f, const BellProfile& b,
                              const IndexWindow& w, const QuadSpec& spec = {},
                              int threads = 0) {
  if (!f.compact_support())
    throw std::invalid_argument("parseval_defect: f needs a declared compact support");
  CoeffArray c = analyze(f, b, w, spec, threads);
  double sum = 0.0;
  for (auto& v : c.values) sum += std::norm(v);
  const Interval K = *f.compact_support();
  std::vector<double> brk(f.breakpoints());
  auto abs2 = [&](double x) {
    return std::complex<double>(std::norm(f.eval(x)), 0.0);
  };
  QuadResult nrm =
      integrate(abs2, K.lo, K.hi, f.extra_cycles(K.lo, K.hi) / K.length(), spec, brk);
  return std::abs(sum - nrm.value.real());
}

/// L^2 distance on K between f and the truncated resynthesis of analyze(f).
inline double reconstruction_error(const SampledFunction& f,
                                   const BellProfile& b, const IndexWindow& w,
                                   Interval K, const QuadSpec& spec = {},
                                   int threads = 0) {
  if (!(K.lo > 0.0) || !(K.hi > K.lo))
    throw std::invalid_argument("reconstruction_error: K must be compact in (0,inf)");
  CoeffArray c = analyze(f, b, w, spec, threads);
  std::vector<double> brk(f.breakpoints());
  for (int j : scales_meeting(b, K))
    for (double bp : detail::scaled_bell_breakpoints(b, j, K.lo, K.hi))
      brk.push_back(bp);
  std::sort(brk.begin(), brk.end());
  const double freq = (double)w.kmax * std::exp2((double)-w.jmin) +
                      f.extra_cycles(K.lo, K.hi) / K.length();
  auto ff = [&](double x) { return f.eval(x); };
  auto gg = [&](double x) { return synthesize(c, b, x); };
  QuadResult r = l2_error(ff, gg, K.lo, K.hi, spec, freq, brk);
  return r.value.real();
}

}  // namespace psilab

#endif  // PSILAB_TRANSFORM_HPP
