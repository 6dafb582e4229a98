#ifndef PSILAB_SAMPLED_HPP
#define PSILAB_SAMPLED_HPP

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psilab/basis.hpp"

namespace psilab {

struct PointMass {
  double location = 1.0;
  int order = 0;  // derivative order p of the point mass
};

/// Evaluator for a function or distribution on (0,inf): closed-form
/// derivatives up to `derivative_order`, plus the structural descriptors the
/// transform and classifier need (support, breakpoints, oscillation hint).
class SampledFunction {
 public:
  enum class Descriptor { smooth, piecewise, point_mass };

  using Eval = std::function<std::complex<double>(int m, double x)>;
  using CycleHint = std::function<double(double a, double b)>;

  SampledFunction() = default;

  static SampledFunction smooth(std::string id, Eval eval, int n_max) {
    SampledFunction f;
    f.id_ = std::move(id);
    f.descriptor_ = Descriptor::smooth;
    f.eval_ = std::move(eval);
    f.n_max_ = n_max;
    return f;
  }

  static SampledFunction piecewise(std::string id, Eval eval, int n_max,
                                   std::vector<double> breakpoints,
                                   bool jumps = true) {
    SampledFunction f;
    f.id_ = std::move(id);
    f.descriptor_ = Descriptor::piecewise;
    f.eval_ = std::move(eval);
    f.n_max_ = n_max;
    f.breakpoints_ = std::move(breakpoints);
    f.has_jumps_ = jumps;
    return f;
  }

  static SampledFunction point_mass(std::string id, double location,
                                    int order) {
    if (!(location > 0.0))
      throw std::invalid_argument("point_mass: location must be > 0");
    SampledFunction f;
    f.id_ = std::move(id);
    f.descriptor_ = Descriptor::point_mass;
    f.point_ = PointMass{location, order};
    f.n_max_ = 0;
    return f;
  }

  const std::string& id() const { return id_; }
  Descriptor descriptor() const { return descriptor_; }
  int derivative_order() const { return n_max_; }
  bool has_jumps() const { return has_jumps_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::optional<Interval>& compact_support() const { return support_; }
  const std::optional<PointMass>& point() const { return point_; }

  SampledFunction& with_support(Interval K) {
    support_ = K;
    return *this;
  }
  /// Oscillation hint: number of extra cycles of the function itself on [a,b].
  SampledFunction& with_cycle_hint(CycleHint h) {
    cycles_ = std::move(h);
    return *this;
  }

  bool is_distribution() const { return descriptor_ == Descriptor::point_mass; }

  std::complex<double> eval(double x) const { return eval_derivative(0, x); }

  std::complex<double> eval_derivative(int m, double x) const {
    if (is_distribution())
      throw std::invalid_argument("point masses have no pointwise values");
    if (m > n_max_)
      throw std::invalid_argument("insufficient smoothness: derivative order " +
                                  std::to_string(m) + " unavailable for " + id_);
    if (support_ && (x < support_->lo || x > support_->hi)) return {0.0, 0.0};
    return eval_(m, x);
  }

  double extra_cycles(double a, double b) const {
    return cycles_ ? cycles_(a, b) : 0.0;
  }

 private:
  std::string id_;
  Descriptor descriptor_ = Descriptor::smooth;
  Eval eval_;
  CycleHint cycles_;
  int n_max_ = 0;
  bool has_jumps_ = false;
  std::vector<double> breakpoints_;
  std::optional<Interval> support_;
  std::optional<PointMass> point_;
};

}  // namespace psilab

#endif  // PSILAB_SAMPLED_HPP
