#ifndef PSILAB_CLASSIFIER_HPP
#define PSILAB_CLASSIFIER_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psilab/seminorms.hpp"
#include "psilab/transform.hpp"

namespace psilab {

/// Frozen probe fixtures. Membership over infinite index sets is not
/// numerically decidable; every verdict means "consistent with the space on
/// these grids and windows". The negative lambda probes reach further down
/// than the positive ones: derivative growth (sin x^2 style) needs weights
/// to -2n at order n, while positive probes past 4 would outrun the window
/// of any coefficient array whose decay sets in slowly.
struct ClassifierGrids {
  std::vector<double> lambda_fn = {-16, -8, -4, -2, -1, -0.5, 0.5, 1, 2, 4, 8, 16};
  std::vector<int> n_fn = {0, 1, 2, 3, 4};
  std::vector<double> lambda_coeff = {-16, -8, -4, -2, -1, -0.5, 0.5, 1, 2, 4};
  std::vector<int> n_coeff = {0, 1, 2, 3, 4};
  XNormOptions xopt;
  std::vector<Interval> compacts = {{0.5, 1.0}, {1.0, 2.0}, {2.0, 4.0}};
  int cn_max = 4;
  double trend_tol = 0.25;     // bits per octave / per unit n
  double zero_rel = 1e-10;     // numerical-zero threshold factor
  double lambda_cap = 64.0;    // cap for fitted lambda*
};

/// Which of the table's spaces the input is consistent with, plus fitted
/// growth exponents and the per-(lambda,n) evidence behind the flags.
struct TableVerdict {
  bool D = false, S = false, OC = false, OM = false, E = false;
  bool Ep = false, OMp = false, OCp = false, Sp = false, Dp = false;
  std::vector<std::pair<int, double>> lambda_star;  // (n, fitted sup of usable lambda)
  NormSweep evidence;
  std::vector<std::string> notes;

  bool flag(const std::string& name) const {
    if (name == "D") return D;
    if (name == "S") return S;
    if (name == "OC") return OC;
    if (name == "OM") return OM;
    if (name == "E") return E;
    if (name == "Ep") return Ep;
    if (name == "OMp") return OMp;
    if (name == "OCp") return OCp;
    if (name == "Sp") return Sp;
    if (name == "Dp") return Dp;
    throw std::invalid_argument("unknown flag: " + name);
  }

  std::vector<std::string> set_flags() const {
    std::vector<std::string> out;
    for (const char* f : {"D", "S", "OC", "OM", "E", "Ep", "OMp", "OCp", "Sp", "Dp"})
      if (flag(f)) out.push_back(f);
    return out;
  }

  /// Inclusion-chain closure: D in S in O_C in O_M in E, and E' in O_M' in
  /// O_C' in S' in D'.
  void close_lattice() {
    S = S || D;
    OC = OC || S;
    OM = OM || OC;
    E = E || OM;
    OMp = OMp || Ep;
    OCp = OCp || OMp;
    Sp = Sp || OCp;
    Dp = Dp || Sp;
  }

  bool lattice_coherent() const {
    return (!D || S) && (!S || OC) && (!OC || OM) && (!OM || E) &&
           (!Ep || OMp) && (!OMp || OCp) && (!OCp || Sp) && (!Sp || Dp);
  }
};

namespace detail {

inline std::optional<double> ls_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = (double)pts.size();
  const double den = m * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (m * sxy - sx * sy) / den;
}

}  // namespace detail

/// Decide which spaces of the function chain phi is consistent with, from
/// X_{lambda,n} sweeps on the probe grids. Distributions and functions with
/// jump discontinuities get no function-side flags (they are not C^n on
/// (0,inf)); their story lives on the coefficient side.
inline TableVerdict classify_function(const SampledFunction& f,
                                      const ClassifierGrids& g = {}) {
  TableVerdict v;
  if (f.is_distribution()) {
    v.notes.push_back("distribution input: function-side chain not applicable");
    return v;
  }
  if (f.has_jumps()) {
    v.notes.push_back("jump discontinuities: not C^n on (0,inf), function-side chain not applicable");
    return v;
  }

  std::vector<int> ns;
  for (int n : g.n_fn)
    if (n <= f.derivative_order()) ns.push_back(n);
  if (ns.size() < g.n_fn.size())
    v.notes.push_back("n-grid trimmed to available derivative order");

  // statuses over the probe grid
  std::map<std::pair<double, int>, SweepStatus> st;
  for (double lam : g.lambda_fn) {
    for (int n : ns) {
      SweepStatus s = x_norm(f, lam, n, g.xopt);
      st[{lam, n}] = s;
      v.evidence.entries.push_back({lam, (double)n, s});
    }
  }

  // monotonicity audit: finite at lambda implies finite at lambda' <= lambda
  for (int n : ns) {
    bool seen_finite = false;
    for (double lam : g.lambda_fn) {  // ascending
      bool fin = st[{lam, n}].finite;
      if (fin && !seen_finite) seen_finite = true;
      if (!fin && seen_finite) {
        v.notes.push_back("inconclusive: non-monotone sweep at lambda=" +
                          std::to_string(lam) + ", n=" + std::to_string(n));
      }
    }
  }

  // fitted lambda*(n) from unweighted edge growth
  for (int n : ns) {
    EdgeSlopes es = x_edge_slopes(f, n, g.xopt);
    double star = g.lambda_cap;
    if (es.hi) star = std::min(star, -*es.hi);
    if (es.lo) star = std::min(star, -*es.lo);
    star = std::clamp(star, -g.lambda_cap, g.lambda_cap);
    v.lambda_star.push_back({n, star});
  }

  auto finite_at = [&](double lam, int n) { return st[{lam, n}].finite; };

  // S: finite at every probed (lambda > 0, n)
  v.S = true;
  for (double lam : g.lambda_fn)
    for (int n : ns)
      if (lam > 0.0 && !finite_at(lam, n)) v.S = false;

  // O_M: for each n some probed lambda < 0 works
  v.OM = true;
  for (int n : ns) {
    bool any = false;
    for (double lam : g.lambda_fn)
      if (lam < 0.0 && finite_at(lam, n)) any = true;
    if (!any) v.OM = false;
  }

  // O_C: one probed lambda < 0 works for all n, and the fitted lambda*(n)
  // trend does not keep falling with n
  bool oc_uniform = false;
  for (double lam : g.lambda_fn) {
    if (lam >= 0.0) continue;
    bool all = true;
    for (int n : ns)
      if (!finite_at(lam, n)) all = false;
    if (all) oc_uniform = true;
  }
  std::vector<std::pair<double, double>> star_pts;
  for (auto& [n, s] : v.lambda_star) star_pts.emplace_back((double)n, s);
  auto trend = detail::ls_slope(star_pts);
  const bool trend_flat = !trend || *trend >= -g.trend_tol;
  v.OC = oc_uniform && trend_flat;
  if (oc_uniform && !trend_flat)
    v.notes.push_back("O_C rejected: lambda*(n) falls with n (slope " +
                      std::to_string(*trend) + ")");

  // E: all C^n_K seminorms finite on the probe compacts
  v.E = true;
  for (const Interval& K : g.compacts) {
    for (int n = 0; n <= std::min(g.cn_max, f.derivative_order()); ++n) {
      double c = cn_seminorm(f, K, n);
      if (!std::isfinite(c)) v.E = false;
    }
  }

  // D: E plus declared compact support with numerically zero tails
  if (v.E && f.compact_support()) {
    const Interval K = *f.compact_support();
    double inside = 0.0, outside = 0.0;
    const double T = g.xopt.octaves;
    const int ppo = 8;
    for (double t = -T; t <= T; t += 1.0 / ppo) {
      const double x = std::exp2(t);
      const double a = std::abs(f.eval(x));
      if (x >= K.lo && x <= K.hi)
        inside = std::max(inside, a);
      else
        outside = std::max(outside, a);
    }
    v.D = outside <= 1e-12 * std::max(inside, 1e-300);
  }

  v.close_lattice();
  return v;
}

namespace detail {

/// Edge trend of one row in the |k| direction: compares the outermost dyadic
/// band (K/2, K] with (K/4, K/2]. n may be negative (primed probes).
inline SweepStatus row_status(const CoeffArray& c, int j, double n, double znum) {
  const int K = c.window.kmax;
  SweepStatus st;
  st.value = c.row_sup(j, n);
  if (K < 8) return st;  // window-limited: treated as finite, caller notes it
  double bout = 0.0, bin = 0.0, raw_out = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double ak = std::abs((double)k);
    const double a = std::abs(c.at(j, k));
    if (ak > K / 2.0) {
      raw_out = std::max(raw_out, a);
      if (a > 0.0) bout = std::max(bout, std::pow(1.0 + ak, n) * a);
    } else if (ak > K / 4.0) {
      if (a > 0.0) bin = std::max(bin, std::pow(1.0 + ak, n) * a);
    }
  }
  if (raw_out <= znum) return st;  // tail numerically zero
  if (bin == 0.0) {
    st.finite = false;
    st.slope = 1e30;
    return st;
  }
  const double slope = std::log2(bout / bin);  // bands are one octave apart
  if (slope > 0.25) {
    st.finite = false;
    st.slope = slope;
  }
  return st;
}

struct RowData {
  std::vector<int> nonzero;               // rows above the zero threshold
  std::map<std::pair<int, int>, double> m;  // (n_key, j) -> sup_k (1+|k|)^n |c|
};

}  // namespace detail

/// Y_{lambda,n} status on the window: the exact sup plus edge-trend
/// divergence tests in both the |j| (octave) and |k| (dyadic band)
/// directions. n may be negative for the primed probes.
inline SweepStatus y_status(const CoeffArray& c, double lambda, double n,
                            double znum, double trend_tol = 0.25,
                            std::vector<std::string>* notes = nullptr) {
  SweepStatus st;
  st.value = y_norm(c, lambda, n);

  // |j| direction, per side
  const int jmin = c.window.jmin, jmax = c.window.jmax;
  auto side_scan = [&](bool upper) -> std::optional<double> {
    // walk outward-most nonzero rows (up to 4), LS-fit log2 of the weighted
    // row sup vs |j|; edge row below threshold means the tail is silent
    std::vector<std::pair<double, double>> pts;
    int edge = upper ? jmax : jmin;
    int step = upper ? -1 : 1;
    if (c.row_sup(edge, 0) <= znum) return std::nullopt;
    for (int j = edge, taken = 0; (upper ? j >= jmin : j <= jmax) && taken < 4;
         j += step) {
      double mn = c.row_sup(j, n);
      if (mn <= 0.0) break;
      double a = std::exp2(lambda * std::abs((double)j)) * mn;
      if (a > 0.0 && std::isfinite(a)) {
        pts.emplace_back(std::abs((double)j), std::log2(a));
        ++taken;
      }
    }
    if (pts.size() < 2) {
      if (notes) notes->push_back("window-limited: <2 rows for the j-edge fit");
      return std::nullopt;
    }
    return detail::ls_slope(pts);
  };
  for (bool upper : {false, true}) {
    auto s = side_scan(upper);
    if (s && *s > trend_tol) {
      st.finite = false;
      st.slope = std::max(st.slope, *s);
    }
  }

  // |k| direction on the weighted column collapse
  const int K = c.window.kmax;
  if (K >= 8) {
    double bout = 0.0, bin = 0.0, raw_out = 0.0;
    for (int k = -K; k <= K; ++k) {
      const double ak = std::abs((double)k);
      if (ak <= K / 4.0) continue;
      double vmax = 0.0;
      for (int j = jmin; j <= jmax; ++j)
        vmax = std::max(vmax, std::exp2(lambda * std::abs((double)j)) *
                                  std::abs(c.at(j, k)));
      if (ak > K / 2.0) {
        raw_out = std::max(raw_out, vmax);
        if (vmax > 0.0) bout = std::max(bout, std::pow(1.0 + ak, n) * vmax);
      } else if (vmax > 0.0) {
        bin = std::max(bin, std::pow(1.0 + ak, n) * vmax);
      }
    }
    if (raw_out > znum) {
      if (bin == 0.0) {
        st.finite = false;
        st.slope = std::max(st.slope, 1e30);
      } else {
        const double slope = std::log2(bout / bin);
        if (slope > trend_tol) {
          st.finite = false;
          st.slope = std::max(st.slope, slope);
        }
      }
    }
  } else if (notes) {
    notes->push_back("window-limited: kmax < 8, no k-direction trend test");
  }
  return st;
}

/// Decide which double-sequence patterns the array is consistent with.
inline TableVerdict classify_coeffs(const CoeffArray& c,
                                    const ClassifierGrids& g = {}) {
  TableVerdict v;
  const double mx = c.max_abs();
  if (mx == 0.0) {
    v.D = v.S = v.OC = v.OM = v.E = true;
    v.Ep = v.OMp = v.OCp = v.Sp = v.Dp = true;
    v.notes.push_back("zero array: member of every space in the table");
    return v;
  }
  const double znum = std::max(c.tol, g.zero_rel * mx);
  if (!c.nonconvergent.empty())
    v.notes.push_back(std::to_string(c.nonconvergent.size()) +
                      " entries carry NonConvergent quadrature flags");

  std::vector<int> nz;
  for (int j = c.window.jmin; j <= c.window.jmax; ++j)
    if (c.row_sup(j, 0) > znum) nz.push_back(j);
  if (nz.empty()) {
    v.D = v.S = v.OC = v.OM = v.E = true;
    v.Ep = v.OMp = v.OCp = v.Sp = v.Dp = true;
    v.notes.push_back("array numerically zero at this tolerance");
    return v;
  }
  if ((int)nz.size() < 3)
    v.notes.push_back("window-limited: fewer than 3 nonzero rows");
  const bool finite_band =
      nz.front() > c.window.jmin && nz.back() < c.window.jmax;

  // per-row rapid-decay statuses (unprimed) and boundedness (primed)
  if (c.window.kmax < 8)
    v.notes.push_back("window-limited: kmax < 8, row trend tests degenerate");
  bool rows_rapid_all_n = true;
  bool rows_primed_all = true;  // every row admits some s^{-n}
  for (int j : nz) {
    for (int n : g.n_coeff) {
      if (!detail::row_status(c, j, (double)n, znum).finite) rows_rapid_all_n = false;
    }
    bool some = false;
    for (int n : g.n_coeff)
      if (detail::row_status(c, j, -(double)n, znum).finite) some = true;
    if (!some) rows_primed_all = false;
  }

  // y statuses on the probe grid, both signs of n
  std::map<std::pair<double, int>, SweepStatus> st;
  for (double lam : g.lambda_coeff) {
    for (int n : g.n_coeff) {
      for (int sign : {+1, -1}) {
        if (n == 0 && sign < 0) continue;
        const double nn = sign * (double)n;
        SweepStatus s = y_status(c, lam, nn, znum, g.trend_tol, &v.notes);
        st[{lam, sign * n}] = s;
        v.evidence.entries.push_back({lam, nn, s});
      }
    }
  }
  auto fin = [&](double lam, int n_signed) {
    if (n_signed == 0) return st[{lam, 0}].finite;
    return st[{lam, n_signed}].finite;
  };

  // fitted lambda*(n): least squares of log2 row sups against |j|, per side
  for (int n : g.n_coeff) {
    double star = g.lambda_cap;
    bool limited = false;
    for (bool upper : {false, true}) {
      std::vector<std::pair<double, double>> pts;
      for (int j : nz) {
        if (upper && j < 0) continue;
        if (!upper && j > 0) continue;
        double mn = c.row_sup(j, (double)n);
        if (mn > 0.0) pts.emplace_back(std::abs((double)j), std::log2(mn));
      }
      if (pts.size() < 3) {
        limited = true;
        continue;
      }
      auto s = detail::ls_slope(pts);
      if (s) star = std::min(star, -*s);
    }
    if (limited) v.notes.push_back("window-limited: lambda*(" + std::to_string(n) +
                                   ") fit used fewer than 3 rows on a side");
    v.lambda_star.push_back({n, std::clamp(star, -g.lambda_cap, g.lambda_cap)});
  }

  // unprimed patterns
  v.D = finite_band && rows_rapid_all_n;
  v.E = rows_rapid_all_n;
  v.S = true;
  for (double lam : g.lambda_coeff)
    for (int n : g.n_coeff)
      if (lam > 0.0 && !fin(lam, n)) v.S = false;
  v.OM = true;
  for (int n : g.n_coeff) {
    bool any = false;
    for (double lam : g.lambda_coeff)
      if (lam < 0.0 && fin(lam, n)) any = true;
    if (!any) v.OM = false;
  }
  bool oc_uniform = false;
  for (double lam : g.lambda_coeff) {
    if (lam >= 0.0) continue;
    bool all = true;
    for (int n : g.n_coeff)
      if (!fin(lam, n)) all = false;
    if (all) oc_uniform = true;
  }
  std::vector<std::pair<double, double>> star_pts;
  for (auto& [n, s] : v.lambda_star) star_pts.emplace_back((double)n, s);
  auto trend = detail::ls_slope(star_pts);
  v.OC = oc_uniform && (!trend || *trend >= -g.trend_tol);

  // primed patterns (Y_{lambda,-n} probes)
  v.Ep = finite_band && rows_primed_all;
  v.Dp = rows_primed_all;
  v.OMp = false;
  for (int n : g.n_coeff) {
    bool all = true;
    for (double lam : g.lambda_coeff)
      if (lam > 0.0 && !fin(lam, -n)) all = false;
    if (all) v.OMp = true;
  }
  v.OCp = true;
  for (double lam : g.lambda_coeff) {
    if (lam <= 0.0) continue;
    bool some = false;
    for (int n : g.n_coeff)
      if (fin(lam, -n)) some = true;
    if (!some) v.OCp = false;
  }
  v.Sp = false;
  for (double lam : g.lambda_coeff)
    for (int n : g.n_coeff)
      if (lam < 0.0 && fin(lam, -n)) v.Sp = true;

  if (!v.lattice_coherent())
    v.notes.push_back("inconclusive: raw detector bits violated the inclusion chain");
  v.close_lattice();

  // dedup accumulated window-limited notes
  std::sort(v.notes.begin(), v.notes.end());
  v.notes.erase(std::unique(v.notes.begin(), v.notes.end()), v.notes.end());
  return v;
}

/// Commutativity check: the coefficient-side verdict of analyze(phi) must
/// cover the sequence-space images of the function-side verdict.
struct CoherenceReport {
  TableVerdict fn, coeff;
  std::vector<std::string> required;
  std::vector<std::string> missing;
  bool pass = true;
};

inline CoherenceReport coherence_check(const SampledFunction& f,
                                       const BellProfile& b,
                                       const IndexWindow& w,
                                       const ClassifierGrids& g = {},
                                       const QuadSpec& spec = {},
                                       int threads = 0) {
  CoherenceReport rep;
  rep.fn = classify_function(f, g);
  CoeffArray c = analyze(f, b, w, spec, threads);
  rep.coeff = classify_coeffs(c, g);
  for (const char* flag : {"D", "S", "OC", "OM", "E"}) {
    if (rep.fn.flag(flag)) {
      rep.required.push_back(flag);
      if (!rep.coeff.flag(flag)) rep.missing.push_back(flag);
    }
  }
  rep.pass = rep.missing.empty();
  return rep;
}

}  // namespace psilab

#endif  // PSILAB_CLASSIFIER_HPP
