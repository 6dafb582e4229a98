#ifndef PSILAB_BOUNDS_HPP
#define PSILAB_BOUNDS_HPP

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "psilab/classifier.hpp"
#include "psilab/seminorms.hpp"
#include "psilab/transform.hpp"

namespace psilab {

/// One verified inequality: the frozen explicit constant, the empirical
/// worst ratio over the probe set, and the margin between them. Every
/// report in the acceptance suite must come out with margin >= 0.
struct BoundReport {
  std::string lemma;
  int n = 0;
  std::optional<double> lambda;
  double C_explicit = 0.0;
  double ratio = 0.0;
  double margin = 0.0;
  std::string probes;
  std::string status = "ok";  // ok | vacuous | refused: ...
};

namespace detail {

inline std::vector<double> bell_grid(const BellProfile& b, int per_unit = 512) {
  const double r0 = b.support_lo(), r1 = b.support_hi();
  const long pts = std::max<long>(257, (long)std::ceil(per_unit * (r1 - r0)));
  std::vector<double> xs;
  xs.reserve(pts + 8);
  for (long i = 0; i <= pts; ++i)
    xs.push_back(r0 + (r1 - r0) * (double)i / (double)pts);
  for (double bp : b.breakpoints()) {
    if (bp > r0 && bp < r1) {
      xs.push_back(bp - 1e-9);
      xs.push_back(bp + 1e-9);
    }
  }
  return xs;
}

}  // namespace detail

/// ||psi||_{C^n_{K_psi}} with psi = sqrt(2) b, by grid maximization.
inline double psi_cn_norm(const BellProfile& b, int n) {
  double m = 0.0;
  for (double x : detail::bell_grid(b))
    for (int d = 0; d <= n; ++d)
      m = std::max(m, std::abs(b.eval_derivative(d, x)));
  return M_SQRT2 * m;
}

/// psi = sqrt(2) b wrapped as a SampledFunction (for X-norm probes).
inline SampledFunction psi_function(const BellProfile& b) {
  auto f = SampledFunction::piecewise(
      "psi(" + b.id() + ")",
      [b](int m, double x) {
        return std::complex<double>(M_SQRT2 * b.eval_derivative(m, x), 0.0);
      },
      std::max(3, b.smoothness_order()), b.breakpoints(),
      b.smoothness_order() == 0);
  f.with_support({b.support_lo(), b.support_hi()});
  return f;
}

/// ||phi(2^j .)||_{C^n_{K_psi}} = max_{m<=n} sup_{u in K_psi} 2^{jm}
/// |phi^(m)(2^j u)|.
inline double scaled_cn_norm(const SampledFunction& f, const BellProfile& b,
                             int j, int n) {
  double m = 0.0;
  for (double u : detail::bell_grid(b)) {
    const double x = std::ldexp(u, j);
    if (!(x > 0.0)) continue;
    double p2 = 1.0;
    for (int d = 0; d <= n; ++d) {
      m = std::max(m, p2 * std::abs(f.eval_derivative(d, x)));
      p2 *= std::exp2((double)j);
    }
  }
  return m;
}

/// Explicit constant for the coefficient bound |Psi_{j,k}(phi)| <=
/// C_n (1+|k|)^{-n} 2^{j/2} ||phi(2^j .)||_{C^n_{K_psi}}. Derived from the
/// n-fold integration-by-parts chain plus the k=0 term and the
/// (1+|k|)^n <= 2^n max(1,|k|^n) split; validated against brute-force
/// maximization in the test suite.
inline double lemma1_constant(const BellProfile& b, int n) {
  const double width = b.support_hi() - b.support_lo();
  const double cn = psi_cn_norm(b, n);
  const double c0 = psi_cn_norm(b, 0);
  return std::exp2((double)n) *
         (1.0 + std::exp2((double)n) * width * cn / std::pow(2.0 * M_PI, n) +
          width * c0);
}

/// Explicit constant for the synthesis bound: C'_n = (4^n pi^{n+2} / 3)
/// ||psi||_{C^n_{K_psi}}.
inline double lemma2_constant(const BellProfile& b, int n) {
  return std::pow(4.0, n) * std::pow(M_PI, n + 2) / 3.0 * psi_cn_norm(b, n);
}

/// sum_{|j| <= J} 2^{-|j|/2}; converges to 3 + 2 sqrt(2).
inline double half_scale_sum(int J) {
  double s = 1.0;
  for (int j = 1; j <= J; ++j) s += 2.0 * std::exp2(-0.5 * j);
  return s;
}

/// Coefficient-decay bound: ratio over the window of
/// |c_{j,k}| (1+|k|)^n / (2^{j/2} ||phi(2^j .)||_{C^n}), against
/// lemma1_constant.
inline BoundReport verify_lemma1(const SampledFunction& f, const BellProfile& b,
                                 const IndexWindow& w, int n,
                                 const QuadSpec& spec = {}, int threads = 0) {
  if (n > b.smoothness_order())
    throw std::invalid_argument("insufficient smoothness: bell is C^" +
                                std::to_string(b.smoothness_order()));
  if (n > f.derivative_order())
    throw std::invalid_argument("insufficient smoothness of " + f.id());
  BoundReport rep;
  rep.lemma = "1";
  rep.n = n;
  rep.C_explicit = lemma1_constant(b, n);

  CoeffArray c = analyze(f, b, w, spec, threads);
  double worst = 0.0;
  for (int j = w.jmin; j <= w.jmax; ++j) {
    const double den = std::exp2(0.5 * j) * scaled_cn_norm(f, b, j, n);
    for (int k = -w.kmax; k <= w.kmax; ++k) {
      const double num =
          std::abs(c.at(j, k)) * std::pow(1.0 + std::abs((double)k), n);
      if (num == 0.0) continue;
      if (den <= 1e-300) {
        if (num > 10.0 * spec.tol) worst = std::max(worst, 1e300);
        continue;
      }
      worst = std::max(worst, num / den);
    }
  }
  rep.ratio = worst;
  rep.margin = rep.C_explicit - rep.ratio;
  rep.probes = "window j in [" + std::to_string(w.jmin) + "," +
               std::to_string(w.jmax) + "], |k| <= " + std::to_string(w.kmax) +
               ", input " + f.id();
  return rep;
}

/// Synthesis-derivative bound for a single-row sequence (c_k): ratio of
/// max_{m<=n} sup_x |d^m/dx^m sum_k c_k psi_{j,k}(x)| against
/// C'_n ||c||_{s^{n+2}} / (2^{j/2} min(1, 2^{jn})).
inline BoundReport verify_lemma2(const std::vector<std::complex<double>>& row,
                                 const BellProfile& b, int jlo, int jhi, int n,
                                 int grid_per_unit = 0) {
  if (n > b.smoothness_order())
    throw std::invalid_argument("insufficient smoothness: bell is C^" +
                                std::to_string(b.smoothness_order()));
  if (row.size() % 2 == 0)
    throw std::invalid_argument("verify_lemma2: row must have odd length");
  BoundReport rep;
  rep.lemma = "2";
  rep.n = n;
  rep.C_explicit = lemma2_constant(b, n);

  const int K = ((int)row.size() - 1) / 2;
  const double snorm = s_norm(row, n + 2);
  if (snorm == 0.0) {
    rep.ratio = 0.0;
    rep.margin = rep.C_explicit;
    rep.probes = "zero row";
    return rep;
  }

  if (grid_per_unit <= 0) grid_per_unit = std::max(512, 16 * K);
  std::vector<double> us = detail::bell_grid(b, grid_per_unit);

  double worst = 0.0;
  for (int j = jlo; j <= jhi; ++j) {
    double lhs = 0.0;
    for (int m = 0; m <= n; ++m) {
      // bell derivative cache along the grid is cheap; sum directly
      for (double u : us) {
        const double x = std::ldexp(u, j);
        std::complex<double> sum{0.0, 0.0};
        // d^m/dx^m psi_{j,k}(x) = amp * e^{-2 pi i k u} * poly_k(u)
        double d[16];
        for (int i = 0; i <= m; ++i) d[i] = b.eval_derivative(i, u);
        const std::complex<double> step(std::cos(-2.0 * M_PI * u),
                                        std::sin(-2.0 * M_PI * u));
        std::complex<double> phase(std::cos(2.0 * M_PI * K * u),
                                   std::sin(2.0 * M_PI * K * u));
        for (int k = -K; k <= K; ++k) {
          const std::complex<double> cv = row[k + K];
          if (cv != std::complex<double>{0.0, 0.0}) {
            const std::complex<double> iw(0.0, -2.0 * M_PI * k);
            std::complex<double> poly{0.0, 0.0}, iw_pow{1.0, 0.0};
            double binom = 1.0;
            for (int i = 0; i <= m; ++i) {
              poly += binom * iw_pow * d[m - i];
              iw_pow *= iw;
              binom = binom * (m - i) / (i + 1.0);
            }
            sum += cv * phase * poly;
          }
          phase *= step;
        }
        const double amp =
            M_SQRT2 * std::exp2(-0.5 * j) * std::exp2((double)(-j) * m);
        lhs = std::max(lhs, std::abs(amp * sum));
        (void)x;
      }
    }
    const double norml =
        std::exp2(0.5 * j) * std::min(1.0, std::exp2((double)j * n));
    worst = std::max(worst, lhs * norml / snorm);
  }
  rep.ratio = worst;
  rep.margin = rep.C_explicit - rep.ratio;
  rep.probes = "j in [" + std::to_string(jlo) + "," + std::to_string(jhi) +
               "], |k| <= " + std::to_string(K);
  return rep;
}

/// Continuity of Psi : X_{lambda,n} -> Y_{lambda-1/2,n} with
/// C_a = C_n sup_{x in K_psi} omega_{|lambda|}(x) / min(1, x^n).
inline BoundReport verify_isoxy_analysis(const SampledFunction& f,
                                         const BellProfile& b,
                                         const IndexWindow& w, double lambda,
                                         int n, const QuadSpec& spec = {},
                                         int threads = 0) {
  BoundReport rep;
  rep.lemma = "isoXY-analysis";
  rep.n = n;
  rep.lambda = lambda;
  double sup = 0.0;
  for (double x : detail::bell_grid(b))
    sup = std::max(sup, weight(std::abs(lambda), x) /
                            std::min(1.0, std::pow(x, n)));
  rep.C_explicit = lemma1_constant(b, n) * sup;

  SweepStatus den = x_norm(f, lambda, n);
  if (!den.finite || den.value == 0.0) {
    rep.status = den.finite ? "vacuous: zero source norm" : "vacuous: divergent source norm";
    rep.margin = rep.C_explicit;
    return rep;
  }
  CoeffArray c = analyze(f, b, w, spec, threads);
  rep.ratio = y_norm(c, lambda - 0.5, n) / den.value;
  rep.margin = rep.C_explicit - rep.ratio;
  rep.probes = "input " + f.id();
  return rep;
}

/// Continuity of Psi^{-1} : Y_{lambda,n+2} -> X_{lambda-1,n} with
/// C_b = (4^n pi^{n+2}/3) sup_{K_psi} max(1,x^n) (sum_w 2^{-|j|/2})
/// ||psi||_{X_{|lambda-1|,n}}.
inline BoundReport verify_isoxy_synthesis(const CoeffArray& c,
                                          const BellProfile& b, double lambda,
                                          int n) {
  if (n > b.smoothness_order())
    throw std::invalid_argument("insufficient smoothness: bell is C^" +
                                std::to_string(b.smoothness_order()));
  BoundReport rep;
  rep.lemma = "isoXY-synthesis";
  rep.n = n;
  rep.lambda = lambda;

  double sup = 0.0;
  for (double x : detail::bell_grid(b))
    sup = std::max(sup, std::max(1.0, std::pow(x, n)));
  double jsum = 0.0;
  for (int j = c.window.jmin; j <= c.window.jmax; ++j)
    jsum += std::exp2(-0.5 * std::abs((double)j));
  const double psi_x =
      x_norm(psi_function(b), std::abs(lambda - 1.0), n).value;
  rep.C_explicit = std::pow(4.0, n) * std::pow(M_PI, n + 2) / 3.0 * sup *
                   jsum * psi_x;

  const double den = y_norm(c, lambda, n + 2);
  if (den == 0.0) {
    rep.status = "vacuous: zero source norm";
    rep.margin = rep.C_explicit;
    return rep;
  }
  SweepStatus num = x_norm(synthesized(c, b), lambda - 1.0, n);
  rep.ratio = num.value / den;
  rep.margin = rep.C_explicit - rep.ratio;
  rep.probes = "window j in [" + std::to_string(c.window.jmin) + "," +
               std::to_string(c.window.jmax) + "], |k| <= " +
               std::to_string(c.window.kmax);
  return rep;
}

/// Finite-window surrogate of the duality identity: the direct pairing
/// <f, phi> against the coefficient pairing sum_w c(f) conj(c(phi)).
/// Requires the orthonormal (shannon) bell.
struct DualityReport {
  double direct = 0.0;
  std::complex<double> coeff_sum{0.0, 0.0};
  double residual = 0.0;
  double tail_estimate = 0.0;
  std::string status = "ok";
};

inline DualityReport verify_duality(const SampledFunction& f,
                                    const SampledFunction& phi,
                                    const BellProfile& b, const IndexWindow& w,
                                    const QuadSpec& spec = {}, int threads = 0) {
  DualityReport rep;
  if (b.kind() != BellProfile::Kind::shannon) {
    rep.status = "refused: duality surrogate requires the orthonormal (shannon) bell";
    return rep;
  }
  if (!phi.compact_support()) {
    rep.status = "refused: phi must have compact support";
    return rep;
  }

  // direct pairing <f, phi> = integral of f conj(phi), or the point-mass
  // evaluation (-1)^p conj(phi^(p)(a))
  std::complex<double> direct{0.0, 0.0};
  if (f.descriptor() == SampledFunction::Descriptor::point_mass) {
    const PointMass pm = *f.point();
    const Interval K = *phi.compact_support();
    if (pm.location >= K.lo && pm.location <= K.hi) {
      direct = std::conj(phi.eval_derivative(pm.order, pm.location));
      if (pm.order % 2 != 0) direct = -direct;
    }
  } else {
    Interval K = *phi.compact_support();
    if (f.compact_support()) {
      K.lo = std::max(K.lo, f.compact_support()->lo);
      K.hi = std::min(K.hi, f.compact_support()->hi);
    }
    if (K.hi > K.lo) {
      std::vector<double> brk(f.breakpoints());
      for (double bp : phi.breakpoints()) brk.push_back(bp);
      auto integrand = [&](double x) { return f.eval(x) * std::conj(phi.eval(x)); };
      direct = integrate(integrand, K.lo, K.hi,
                         (f.extra_cycles(K.lo, K.hi) +
                          phi.extra_cycles(K.lo, K.hi)) / K.length(),
                         spec, brk)
                   .value;
    }
  }

  CoeffArray cf = analyze(f, b, w, spec, threads);
  CoeffArray cp = analyze(phi, b, w, spec, threads);
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t i = 0; i < cf.values.size(); ++i)
    sum += cf.values[i] * std::conj(cp.values[i]);

  rep.direct = direct.real();
  rep.coeff_sum = sum;
  rep.residual = std::abs(direct - sum);

  // crude truncation surrogate: the outermost k-octave of phi's array sets
  // the scale of what the window left out
  double phi_edge = 0.0, f_max = 0.0;
  for (int j = w.jmin; j <= w.jmax; ++j) {
    for (int k = -w.kmax; k <= w.kmax; ++k) {
      f_max = std::max(f_max, std::abs(cf.at(j, k)));
      if (std::abs(k) > w.kmax / 2)
        phi_edge = std::max(phi_edge, std::abs(cp.at(j, k)));
    }
  }
  rep.tail_estimate = 4.0 * (double)w.kmax * phi_edge * f_max;
  return rep;
}

}  // namespace psilab

#endif  // PSILAB_BOUNDS_HPP
