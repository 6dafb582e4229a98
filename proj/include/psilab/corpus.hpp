#ifndef PSILAB_CORPUS_HPP
#define PSILAB_CORPUS_HPP

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "psilab/sampled.hpp"

namespace psilab {
namespace detail {

/// Dense polynomial with monomial powers lo, lo+1, ... (lo may be negative:
/// Laurent). Small utility behind the corpus' closed-form derivatives.
struct LaurentPoly {
  int lo = 0;
  std::vector<double> c;  // coefficient of x^{lo+i}

  static LaurentPoly one() { return {0, {1.0}}; }

  double eval(double x) const {
    double acc = 0.0;
    for (int i = (int)c.size() - 1; i >= 0; --i) acc = acc * x + c[i];
    return acc * std::pow(x, lo);
  }

  LaurentPoly deriv() const {
    LaurentPoly d;
    d.lo = lo - 1;
    d.c.assign(c.size(), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) d.c[i] = (lo + (double)i) * c[i];
    return d.trim();
  }

  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly p;
    p.lo = lo + o.lo;
    p.c.assign(c.size() + o.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) p.c[i + j] += c[i] * o.c[j];
    return p;
  }

  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly p;
    p.lo = std::min(lo, o.lo);
    int hi = std::max(lo + (int)c.size(), o.lo + (int)o.c.size());
    p.c.assign(hi - p.lo, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) p.c[lo - p.lo + i] += c[i];
    for (std::size_t i = 0; i < o.c.size(); ++i) p.c[o.lo - p.lo + i] += o.c[i];
    return p;
  }

  LaurentPoly scaled(double s) const {
    LaurentPoly p = *this;
    for (double& v : p.c) v *= s;
    return p;
  }

  LaurentPoly& trim() {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    while (c.size() > 1 && c.front() == 0.0) {
      c.erase(c.begin());
      ++lo;
    }
    return *this;
  }
};

/// phi = exp(g), derivatives phi^(m) = L_m * phi with
/// L_{m+1} = L_m' + L_m * g'.
inline std::vector<LaurentPoly> exp_derivative_table(const LaurentPoly& gprime,
                                                     int mmax) {
  std::vector<LaurentPoly> L{LaurentPoly::one()};
  for (int m = 0; m < mmax; ++m) L.push_back(L.back().deriv() + L.back() * gprime);
  return L;
}

/// phi = A sin(P) + B cos(P): derivative tables for trig-of-polynomial.
inline void trig_derivative_tables(const LaurentPoly& Pprime, int mmax,
                                   std::vector<LaurentPoly>& A,
                                   std::vector<LaurentPoly>& B) {
  A = {LaurentPoly::one()};
  B = {LaurentPoly{0, {0.0}}};
  for (int m = 0; m < mmax; ++m) {
    A.push_back(A.back().deriv() + (B.back() * Pprime).scaled(-1.0));
    B.push_back(B.back().deriv() + A.back() * Pprime);
  }
}

}  // namespace detail

/// One canonical input with known expected classification. `fn_must` /
/// `coeff_must` list flags that classification has to set; `*_must_not`
/// flags it has to leave unset. Unlisted flags are unconstrained.
struct CorpusEntry {
  std::string id;
  std::string description;
  SampledFunction f;
  std::vector<std::string> fn_must, fn_must_not;
  std::vector<std::string> coeff_must, coeff_must_not;
};

namespace detail {

inline constexpr int kCorpusDerivOrder = 8;

inline SampledFunction make_bump12() {
  // exp(-1/((x-1)(2-x))) on (1,2); N_{m+1} = (N'D - 2m N D')D + N D'
  auto N = std::make_shared<std::vector<LaurentPoly>>();
  LaurentPoly D{0, {-2.0, 3.0, -1.0}};
  LaurentPoly Dp{0, {3.0, -2.0}};
  N->push_back(LaurentPoly::one());
  for (int m = 0; m < kCorpusDerivOrder; ++m) {
    const LaurentPoly& Nm = N->back();
    // N_{m+1} = (N' D - 2m N D') D + N D'
    N->push_back((Nm.deriv() * D + Nm.scaled(-2.0 * m) * Dp) * D + Nm * Dp);
  }
  auto eval = [N, D](int m, double x) -> std::complex<double> {
    const double d = (x - 1.0) * (2.0 - x);
    if (!(d > 0.0)) return {0.0, 0.0};
    const double e = std::exp(-1.0 / d);
    if (e == 0.0) return {0.0, 0.0};
    const double num = (*N)[m].eval(x);
    return {num / std::pow(d, 2.0 * m) * e, 0.0};
  };
  auto f = SampledFunction::smooth("bump12", eval, kCorpusDerivOrder);
  f.with_support({1.0, 2.0});
  return f;
}

inline SampledFunction make_expdecay() {
  // exp(-x - 1/x); g' = -1 + x^{-2}
  auto L = std::make_shared<std::vector<LaurentPoly>>(
      exp_derivative_table(LaurentPoly{-2, {1.0, 0.0, -1.0}}, kCorpusDerivOrder));
  auto eval = [L](int m, double x) -> std::complex<double> {
    const double e = std::exp(-x - 1.0 / x);
    if (e == 0.0) return {0.0, 0.0};
    return {(*L)[m].eval(x) * e, 0.0};
  };
  return SampledFunction::smooth("expdecay", eval, kCorpusDerivOrder);
}

inline SampledFunction make_power(const std::string& id, double alpha) {
  auto eval = [alpha](int m, double x) -> std::complex<double> {
    double cm = 1.0;
    for (int i = 0; i < m; ++i) cm *= (alpha - i);
    return {cm * std::pow(x, alpha - m), 0.0};
  };
  return SampledFunction::smooth(id, eval, kCorpusDerivOrder);
}

inline SampledFunction make_sinx2() {
  auto A = std::make_shared<std::vector<LaurentPoly>>();
  auto B = std::make_shared<std::vector<LaurentPoly>>();
  trig_derivative_tables(LaurentPoly{1, {2.0}}, kCorpusDerivOrder, *A, *B);
  auto eval = [A, B](int m, double x) -> std::complex<double> {
    const double s = std::sin(x * x), c = std::cos(x * x);
    return {(*A)[m].eval(x) * s + (*B)[m].eval(x) * c, 0.0};
  };
  auto f = SampledFunction::smooth("sinx2", eval, kCorpusDerivOrder);
  f.with_cycle_hint(
      [](double a, double b) { return (b * b - a * a) / (2.0 * M_PI); });
  return f;
}

inline SampledFunction make_expx() {
  auto eval = [](int m, double x) -> std::complex<double> {
    (void)m;
    return {std::exp(x), 0.0};
  };
  return SampledFunction::smooth("expx", eval, kCorpusDerivOrder);
}

inline SampledFunction make_expinvx() {
  auto L = std::make_shared<std::vector<LaurentPoly>>(
      exp_derivative_table(LaurentPoly{-2, {-1.0}}, kCorpusDerivOrder));
  auto eval = [L](int m, double x) -> std::complex<double> {
    const double e = std::exp(1.0 / x);
    return {(*L)[m].eval(x) * e, 0.0};
  };
  return SampledFunction::smooth("expinvx", eval, kCorpusDerivOrder);
}

inline SampledFunction make_indicator12() {
  auto eval = [](int m, double x) -> std::complex<double> {
    (void)x;
    return {m == 0 ? 1.0 : 0.0, 0.0};
  };
  auto f = SampledFunction::piecewise("indicator12", eval, kCorpusDerivOrder,
                                      {1.0, 2.0}, true);
  f.with_support({1.0, 2.0});
  return f;
}

inline SampledFunction make_linear12() {
  auto eval = [](int m, double x) -> std::complex<double> {
    if (m == 0) return {x, 0.0};
    if (m == 1) return {1.0, 0.0};
    return {0.0, 0.0};
  };
  auto f = SampledFunction::piecewise("linear12", eval, kCorpusDerivOrder,
                                      {1.0, 2.0}, true);
  f.with_support({1.0, 2.0});
  return f;
}

inline SampledFunction make_rootwin(const std::string& id, double lo, double hi) {
  auto eval = [](int m, double x) -> std::complex<double> {
    double cm = 1.0;
    for (int i = 0; i < m; ++i) cm *= (-0.5 - i);
    return {cm * std::pow(x, -0.5 - m), 0.0};
  };
  std::vector<double> brk;
  if (lo > 0.0) brk.push_back(lo);
  brk.push_back(hi);
  auto f = SampledFunction::piecewise(id, eval, kCorpusDerivOrder, brk, true);
  f.with_support({lo, hi});
  return f;
}

}  // namespace detail

/// The canonical corpus: witnesses for each separation in the table chain,
/// point masses for the dual side, and block-aligned indicator inputs for
/// the exact Shannon checks.
inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;
    const std::vector<std::string> primed_all = {"Ep", "OMp", "OCp", "Sp", "Dp"};

    v.push_back({"bump12", "smooth bump exp(-1/((x-1)(2-x))) on (1,2)",
                 detail::make_bump12(),
                 {"D", "S", "OC", "OM", "E"},
                 {},
                 {"D", "S", "OC", "OM", "E", "Ep", "OMp", "OCp", "Sp", "Dp"},
                 {}});
    v.push_back({"expdecay", "exp(-x-1/x): rapid decay at 0 and infinity",
                 detail::make_expdecay(),
                 {"S", "OC", "OM", "E"},
                 {"D"},
                 {"S", "OC", "OM", "E", "OMp", "OCp", "Sp", "Dp"},
                 {"D", "Ep"}});
    v.push_back({"sqrtx", "x^{1/2}", detail::make_power("sqrtx", 0.5),
                 {"OC", "OM", "E"},
                 {"D", "S"},
                 {"OC", "OM", "E", "Sp", "Dp"},
                 {"D", "S", "Ep", "OMp", "OCp"}});
    v.push_back({"powneg2", "x^{-2}", detail::make_power("powneg2", -2.0),
                 {"OC", "OM", "E"},
                 {"D", "S"},
                 {"OC", "OM", "E", "Sp", "Dp"},
                 {"D", "S", "Ep", "OMp", "OCp"}});
    v.push_back({"sinx2", "sin(x^2): derivative growth increases with order",
                 detail::make_sinx2(),
                 {"OM", "E"},
                 {"D", "S", "OC"},
                 {"OM", "E", "Dp"},
                 {"D", "S", "OC"}});
    v.push_back({"expx", "e^x: smooth, no tempered bound",
                 detail::make_expx(),
                 {"E"},
                 {"D", "S", "OC", "OM"},
                 {"E", "Dp"},
                 {"D", "S", "OC", "OM", "Ep", "OMp", "OCp", "Sp"}});
    v.push_back({"expinvx", "e^{1/x}: smooth, blows up at 0",
                 detail::make_expinvx(),
                 {"E"},
                 {"D", "S", "OC", "OM"},
                 {"E", "Dp"},
                 {"D", "S", "OC", "OM", "Ep", "OMp", "OCp", "Sp"}});

    for (double a : {0.5, 1.0, 3.0}) {
      for (int p : {0, 1}) {
        std::string id = "pm" + std::to_string(a).substr(0, 3) + "_" +
                         std::to_string(p);
        // canonical ids: pm0.5_0, pm1.0_1, ...
        v.push_back({id, "point mass delta^{(" + std::to_string(p) +
                             ")} at x=" + std::to_string(a),
                     SampledFunction::point_mass(id, a, p),
                     {},
                     {"D", "S", "OC", "OM", "E"},
                     primed_all,
                     {"D", "S", "OC", "OM", "E"}});
      }
    }

    v.push_back({"indicator12", "indicator of [1,2]",
                 detail::make_indicator12(),
                 {},
                 {"D", "S", "OC", "OM", "E"},
                 primed_all,
                 {"D", "S", "OC", "OM", "E"}});
    v.push_back({"linear12", "x on [1,2], 0 elsewhere",
                 detail::make_linear12(),
                 {},
                 {"D", "S", "OC", "OM", "E"},
                 primed_all,
                 {"D", "S", "OC", "OM", "E"}});
    v.push_back({"rootwin01", "x^{-1/2} on (0,1]",
                 detail::make_rootwin("rootwin01", 0.0, 1.0),
                 {},
                 {"D", "S", "OC", "OM", "E"},
                 {"Sp", "Dp"},
                 {"D", "S", "OC", "OM", "E", "Ep", "OMp", "OCp"}});
    v.push_back({"rootwin13", "x^{-1/2} on [1,3]",
                 detail::make_rootwin("rootwin13", 1.0, 3.0),
                 {},
                 {"D", "S", "OC", "OM", "E"},
                 primed_all,
                 {"D", "S", "OC", "OM", "E"}});
    return v;
  }();
  return entries;
}

inline const CorpusEntry* find_corpus_entry(const std::string& id) {
  for (const auto& e : corpus())
    if (e.id == id) return &e;
  return nullptr;
}

inline const CorpusEntry& corpus_entry(const std::string& id) {
  const CorpusEntry* e = find_corpus_entry(id);
  if (!e) throw std::invalid_argument("unknown corpus id: " + id);
  return *e;
}

}  // namespace psilab

#endif  // PSILAB_CORPUS_HPP
