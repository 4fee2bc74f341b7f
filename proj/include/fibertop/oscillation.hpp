#pragma once

#include <optional>
#include <vector>

#include "fibertop/rational.hpp"
#include "fibertop/space.hpp"

namespace fibertop {

// A total table point -> rational over a finite space.
class RationalFunction {
 public:
  RationalFunction(SpacePtr space, std::vector<Rational> values);

  static RationalFunction constant(SpacePtr space, const Rational& c);
  static RationalFunction indicator(SpacePtr space, PointSet a);

  const FiniteSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator()(int x) const { return values_[static_cast<std::size_t>(x)]; }
  Rational& at(int x) { return values_[static_cast<std::size_t>(x)]; }

  // slope * phi + offset
  RationalFunction affine(const Rational& slope, const Rational& offset) const;
  // Points where the value equals c.
  PointSet level_set(const Rational& c) const;

  bool operator==(const RationalFunction& o) const { return values_ == o.values_; }

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
};

Rational norm(const RationalFunction& phi);
Rational norm_on(const RationalFunction& phi, PointSet a);

// sup |phi(x) - phi(z)| over the minimal neighborhood of x.
Rational osc_at_point(const FiniteSpace& space, const RationalFunction& phi, int x);
Rational osc_on_set(const FiniteSpace& space, const RationalFunction& phi, PointSet a);

// The same quantities in the subspace topology of `carrier` (x in carrier).
Rational osc_at_point_in(const FiniteSpace& space, PointSet carrier, const RationalFunction& phi, int x);
Rational osc_on_set_in(const FiniteSpace& space, PointSet carrier, const RationalFunction& phi, PointSet a);
// osc_on_set_in(...) == 0 without forming differences.
bool osc_vanishes_in(const FiniteSpace& space, PointSet carrier, const RationalFunction& phi, PointSet a);

struct LinearBoundCheck {
  Rational lhs;
  Rational rhs;
  bool ok = false;
};

LinearBoundCheck osc_linear_bound_check(const Rational& alpha, const RationalFunction& phi,
                                        const Rational& beta, const RationalFunction& psi, PointSet a);

struct SublevelReport {
  PointSet lower;  // {phi <= a}
  PointSet upper;  // {phi >= b}
  bool lower_misses_closure_of_upper = false;
  bool closure_of_lower_misses_upper = false;
};

// Requires b - a > osc_phi(X); throws kPreconditionGap otherwise.
SublevelReport sublevel_disjointness(const FiniteSpace& space, const RationalFunction& phi,
                                     const Rational& a, const Rational& b);

struct FContinuityReport {
  bool holds = false;
  int y = 0;
  PointSet oy;  // minimal neighborhood of y
  Rational osc;  // osc_phi(f^{-1} oy)
};

FContinuityReport is_f_continuous_at(const FiberedMap& f, const RationalFunction& phi, int y);

struct EquicontinuityCertificate {
  int y = 0;
  PointSet oy;
  Rational bound;  // largest member oscillation on f^{-1} oy
  std::vector<RationalFunction> family;
};

struct EquicontinuityReport {
  bool holds = false;
  EquicontinuityCertificate certificate;
  std::optional<std::size_t> failing_member;
};

EquicontinuityReport is_f_equicontinuous_at(const FiberedMap& f, const std::vector<RationalFunction>& family,
                                            int y);

struct WeightedSumResult {
  RationalFunction sum;
  FContinuityReport continuity;
};

// Throws kMemberNotFContinuous(index, y) if a member is not f-continuous at y.
WeightedSumResult weighted_sum(const FiberedMap& f, const std::vector<RationalFunction>& family,
                               const std::vector<Rational>& weights, int y);

}  // namespace fibertop
