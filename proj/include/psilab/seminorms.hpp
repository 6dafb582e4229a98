#ifndef PSILAB_SEMINORMS_HPP
#define PSILAB_SEMINORMS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "psilab/sampled.hpp"
#include "psilab/transform.hpp"

namespace psilab {

/// omega_lambda(x) = (max{x, 1/x})^lambda.
inline double weight(double lambda, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("weight: x must be > 0");
  return std::pow(std::max(x, 1.0 / x), lambda);
}

/// Outcome of a sup-norm scan: the grid maximum, and, when the running max
/// is still growing in the outermost octave bands, a divergence verdict with
/// a fitted growth slope (bits per octave).
struct SweepStatus {
  bool finite = true;
  double value = 0.0;   // grid max (finite verdicts; also reported otherwise)
  double slope = 0.0;   // fitted d(log2 max)/d|t| of the divergent side
};

struct XNormOptions {
  double octaves = 20.0;      // T: grid spans x = 2^{-T} .. 2^{T}
  int points_per_octave = 64;
  double growth_rel_tol = 1e-9;  // running-max growth counted past this
  double floor_abs = 1e-290;
};

namespace detail {

struct BandScan {
  double value = 0.0;
  std::vector<double> band_hi;  // per |t| octave, t >= 0 side
  std::vector<double> band_lo;  // t < 0 side
  bool saw_inf = false;
};

/// Least-squares slope of log2(band) over the outermost `width` usable bands.
inline std::optional<double> edge_slope(const std::vector<double>& bands,
                                        int width = 4) {
  std::vector<std::pair<double, double>> pts;
  const int n = (int)bands.size();
  for (int o = std::max(0, n - width); o < n; ++o)
    if (bands[o] > 0.0 && std::isfinite(bands[o]))
      pts.emplace_back((double)o, std::log2(bands[o]));
  if (pts.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = pts.size();
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (m * sxy - sx * sy) / denom;
}

template <typename ValueAt>
inline BandScan scan_log_grid(const ValueAt& value_at,
                              const std::vector<double>& extra_t,
                              const XNormOptions& opt) {
  const int nb = (int)std::ceil(opt.octaves);
  BandScan scan;
  scan.band_hi.assign(nb, 0.0);
  scan.band_lo.assign(nb, 0.0);
  const long total = (long)std::llround(2.0 * opt.octaves * opt.points_per_octave);
  std::vector<double> ts;
  ts.reserve(total + 1 + extra_t.size());
  for (long i = 0; i <= total; ++i)
    ts.push_back(-opt.octaves + (double)i / opt.points_per_octave);
  for (double t : extra_t)
    if (t > -opt.octaves && t < opt.octaves) ts.push_back(t);
  for (double t : ts) {
    const double v = value_at(t);
    if (std::isnan(v)) continue;
    if (std::isinf(v)) {
      scan.saw_inf = true;
      int o = std::min(nb - 1, (int)std::floor(std::abs(t)));
      (t >= 0.0 ? scan.band_hi : scan.band_lo)[o] =
          std::numeric_limits<double>::infinity();
      continue;
    }
    scan.value = std::max(scan.value, v);
    int o = std::min(nb - 1, (int)std::floor(std::abs(t)));
    auto& band = (t >= 0.0 ? scan.band_hi : scan.band_lo);
    band[o] = std::max(band[o], v);
  }
  return scan;
}

/// Divergence rule shared by the X- and Y-side scans: a side diverges when
/// its outermost octave band pushes the running max up.
inline SweepStatus judge_bands(const BandScan& scan, const XNormOptions& opt) {
  SweepStatus st;
  st.value = scan.value;
  const int nb = (int)scan.band_hi.size();
  auto side_divergent = [&](const std::vector<double>& own,
                            const std::vector<double>& other) {
    const double edge = own[nb - 1];
    if (std::isinf(edge)) return true;
    if (edge <= opt.floor_abs) return false;
    double rest = 0.0;
    for (int o = 0; o + 1 < nb; ++o) rest = std::max(rest, own[o]);
    for (int o = 0; o < nb; ++o)
      if (!std::isinf(other[o])) rest = std::max(rest, other[o]);
    return edge > rest * (1.0 + opt.growth_rel_tol);
  };
  const bool div_hi = side_divergent(scan.band_hi, scan.band_lo);
  const bool div_lo = side_divergent(scan.band_lo, scan.band_hi);
  if (div_hi || div_lo) {
    st.finite = false;
    double slope = 0.0;
    if (div_hi) {
      auto s = edge_slope(scan.band_hi);
      slope = std::max(slope, s ? *s : 1e30);
      if (scan.saw_inf) slope = 1e30;
    }
    if (div_lo) {
      auto s = edge_slope(scan.band_lo);
      slope = std::max(slope, s ? *s : 1e30);
      if (scan.saw_inf) slope = 1e30;
    }
    st.slope = slope;
  }
  return st;
}

inline std::vector<double> breakpoint_ts(const SampledFunction& f) {
  std::vector<double> ts;
  for (double bp : f.breakpoints()) {
    if (bp > 0.0) {
      double t = std::log2(bp);
      ts.push_back(t - 1e-7);
      ts.push_back(t + 1e-7);
    }
  }
  return ts;
}

}  // namespace detail

/// || phi ||_{X_{lambda,n}} = max_{m<=n} sup_x omega_lambda(x) x^m
/// |phi^(m)(x)|, approximated on the logarithmic grid x = 2^t. Divergence is
/// decided by growth between the outermost octave bands.
inline SweepStatus x_norm(const SampledFunction& f, double lambda, int n,
                          const XNormOptions& opt = {}) {
  if (n > f.derivative_order())
    throw std::invalid_argument("insufficient smoothness for x_norm of " + f.id());
  auto value_at = [&](double t) {
    const double x = std::exp2(t);
    double g = 0.0;
    double xm = 1.0;
    for (int m = 0; m <= n; ++m) {
      g = std::max(g, xm * std::abs(f.eval_derivative(m, x)));
      xm *= x;
    }
    return std::exp2(lambda * std::abs(t)) * g;
  };
  auto scan = detail::scan_log_grid(value_at, detail::breakpoint_ts(f), opt);
  return detail::judge_bands(scan, opt);
}

/// Edge growth slopes (bits/octave) of max_{m<=n} x^m |phi^(m)| at the two
/// ends of the grid; used to fit lambda*(n). Sides with identically-zero
/// tails report no slope.
struct EdgeSlopes {
  std::optional<double> hi, lo;
};
inline EdgeSlopes x_edge_slopes(const SampledFunction& f, int n,
                                const XNormOptions& opt = {}) {
  if (n > f.derivative_order())
    throw std::invalid_argument("insufficient smoothness for x_edge_slopes");
  auto value_at = [&](double t) {
    const double x = std::exp2(t);
    double g = 0.0;
    double xm = 1.0;
    for (int m = 0; m <= n; ++m) {
      g = std::max(g, xm * std::abs(f.eval_derivative(m, x)));
      xm *= x;
    }
    return g;
  };
  auto scan = detail::scan_log_grid(value_at, detail::breakpoint_ts(f), opt);
  EdgeSlopes s;
  s.hi = detail::edge_slope(scan.band_hi);
  s.lo = detail::edge_slope(scan.band_lo);
  if (scan.saw_inf) {
    const int nb = (int)scan.band_hi.size();
    if (std::isinf(scan.band_hi[nb - 1])) s.hi = 1e30;
    if (std::isinf(scan.band_lo[nb - 1])) s.lo = 1e30;
  }
  return s;
}

/// || c ||_{Y_{lambda,n}} = sup 2^{lambda |j|} (1+|k|)^n |c_{j,k}| over the
/// window, exact.
inline double y_norm(const CoeffArray& c, double lambda, double n) {
  double m = 0.0;
  for (int j = c.window.jmin; j <= c.window.jmax; ++j) {
    const double wj = std::exp2(lambda * std::abs((double)j));
    for (int k = -c.window.kmax; k <= c.window.kmax; ++k) {
      const double a = std::abs(c.at(j, k));
      if (a == 0.0) continue;
      m = std::max(m, wj * std::pow(1.0 + std::abs((double)k), n) * a);
    }
  }
  return m;
}

/// || (c_k) ||_{s^n} = sup_k (1+|k|)^n |c_k| over the window; the row is
/// indexed k = -K..K.
inline double s_norm(const std::vector<std::complex<double>>& row, double n) {
  if (row.size() % 2 == 0) throw std::invalid_argument("s_norm: row must have odd length");
  const int K = ((int)row.size() - 1) / 2;
  double m = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double a = std::abs(row[k + K]);
    if (a == 0.0) continue;
    m = std::max(m, std::pow(1.0 + std::abs((double)k), n) * a);
  }
  return m;
}

/// || phi ||_{C^n_K} = max_{m<=n} sup_{x in K} |phi^(m)(x)| on a grid of 256
/// points per unit plus breakpoints.
inline double cn_seminorm(const SampledFunction& f, Interval K, int n) {
  if (!(K.lo > 0.0) || !(K.hi >= K.lo))
    throw std::invalid_argument("cn_seminorm: K must be compact in (0,inf)");
  if (n > f.derivative_order())
    throw std::invalid_argument("insufficient smoothness for cn_seminorm of " + f.id());
  const long pts = std::max<long>(64, (long)std::ceil(256.0 * K.length()));
  std::vector<double> xs;
  xs.reserve(pts + 1);
  for (long i = 0; i <= pts; ++i)
    xs.push_back(K.lo + K.length() * (double)i / (double)pts);
  for (double bp : f.breakpoints()) {
    if (bp > K.lo && bp < K.hi) {
      xs.push_back(bp - 1e-9 * std::max(1.0, K.length()));
      xs.push_back(bp + 1e-9 * std::max(1.0, K.length()));
    }
  }
  double m = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) continue;
    for (int d = 0; d <= n; ++d)
      m = std::max(m, std::abs(f.eval_derivative(d, x)));
  }
  return m;
}

/// One probed (lambda, n) cell of a norm sweep.
struct NormSweepEntry {
  double lambda = 0.0;
  double n = 0.0;
  SweepStatus status;
};

struct NormSweep {
  std::vector<NormSweepEntry> entries;
};

}  // namespace psilab

#endif  // PSILAB_SEMINORMS_HPP
