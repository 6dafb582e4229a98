#ifndef PSILAB_BASIS_HPP
#define PSILAB_BASIS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "psilab/bell.hpp"

namespace psilab {

struct BasisIndex {
  int j = 0;  // scale
  int k = 0;  // modulation
};

/// Finite truncation of Z x Z: scales jmin..jmax, modulations -kmax..kmax.
struct IndexWindow {
  int jmin = 0, jmax = 0, kmax = 0;

  IndexWindow() = default;
  IndexWindow(int jlo, int jhi, int km) : jmin(jlo), jmax(jhi), kmax(km) {
    if (jmin > jmax) throw std::invalid_argument("IndexWindow: jmin > jmax");
    if (kmax < 0) throw std::invalid_argument("IndexWindow: kmax < 0");
  }

  int rows() const { return jmax - jmin + 1; }
  int cols() const { return 2 * kmax + 1; }
  std::size_t count() const { return (std::size_t)rows() * cols(); }
  std::size_t flat(int j, int k) const {
    return (std::size_t)(j - jmin) * cols() + (k + kmax);
  }
  bool contains(int j, int k) const {
    return j >= jmin && j <= jmax && k >= -kmax && k <= kmax;
  }
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  double length() const { return hi - lo; }
};

/// Support of psi_{j,k}: [2^j R0, 2^j R1], independent of k.
inline Interval support(const BellProfile& b, int j) {
  return {std::ldexp(b.support_lo(), j), std::ldexp(b.support_hi(), j)};
}

/// psi_{j,k}(x) = sqrt(2) 2^{-j/2} e^{-2 pi i k x / 2^j} b(x / 2^j), x > 0.
inline std::complex<double> eval_psi(const BellProfile& b, BasisIndex idx,
                                     double x) {
  if (!(x > 0.0)) throw std::invalid_argument("eval_psi: x must be > 0");
  const double u = std::ldexp(x, -idx.j);
  if (u < b.support_lo() || u > b.support_hi()) return {0.0, 0.0};
  const double amp = M_SQRT2 * std::exp2(-0.5 * idx.j) * b.eval(u);
  const double phase = -2.0 * M_PI * idx.k * u;
  return {amp * std::cos(phase), amp * std::sin(phase)};
}

/// m-th derivative of psi_{j,k} at x (Leibniz over the phase and the bell).
inline std::complex<double> eval_psi_derivative(const BellProfile& b,
                                                BasisIndex idx, int m,
                                                double x) {
  if (!(x > 0.0)) throw std::invalid_argument("eval_psi_derivative: x must be > 0");
  const double u = std::ldexp(x, -idx.j);
  if (u < b.support_lo() || u > b.support_hi()) return {0.0, 0.0};
  // d^m/dx^m = 2^{-jm} d^m/du^m; work in u.
  const std::complex<double> iw(0.0, -2.0 * M_PI * idx.k);
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> iw_pow{1.0, 0.0};
  double binom = 1.0;
  for (int i = 0; i <= m; ++i) {
    sum += binom * iw_pow * b.eval_derivative(m - i, u);
    iw_pow *= iw;
    binom = binom * (m - i) / (i + 1.0);
  }
  const double phase = -2.0 * M_PI * idx.k * u;
  const std::complex<double> osc(std::cos(phase), std::sin(phase));
  const double amp = M_SQRT2 * std::exp2(-0.5 * idx.j) * std::exp2((double)(-idx.j) * m);
  return amp * osc * sum;
}

/// All scales j whose support [2^j R0, 2^j R1] meets the compact K
/// (endpoint contact counts). K must be a compact subset of (0, inf).
inline std::vector<int> scales_meeting(const BellProfile& b, Interval K) {
  if (!(K.lo > 0.0) || !(K.hi >= K.lo) || !std::isfinite(K.hi))
    throw std::invalid_argument("scales_meeting: K must be compact in (0,inf)");
  const double r0 = b.support_lo(), r1 = b.support_hi();
  int lo = (int)std::floor(std::log2(K.lo / r1)) - 1;
  int hi = (int)std::ceil(std::log2(K.hi / r0)) + 1;
  std::vector<int> out;
  for (int j = lo; j <= hi; ++j) {
    if (std::ldexp(r0, j) <= K.hi && std::ldexp(r1, j) >= K.lo) out.push_back(j);
  }
  return out;
}

/// | conj(psi_{j,k}(x)) - psi_{j,-k}(x) |. Zero in exact arithmetic since b
/// is real.
inline double conj_symmetry_check(const BellProfile& b, int j, int k,
                                  double x) {
  auto lhs = std::conj(eval_psi(b, {j, k}, x));
  auto rhs = eval_psi(b, {j, -k}, x);
  return std::abs(lhs - rhs);
}

}  // namespace psilab

#endif  // PSILAB_BASIS_HPP
