#include "fibertop/oscillation.hpp"

namespace fibertop {

RationalFunction::RationalFunction(SpacePtr space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw Error(ErrorCode::kInvalidArgument, "null space");
  if (static_cast<int>(values_.size()) != space_->size()) {
    throw Error(ErrorCode::kInvalidArgument, "function table size does not match its space");
  }
}

RationalFunction RationalFunction::constant(SpacePtr space, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(space->size()), c);
  return RationalFunction(std::move(space), std::move(v));
}

RationalFunction RationalFunction::indicator(SpacePtr space, PointSet a) {
  space->check_subset(a);
  std::vector<Rational> v(static_cast<std::size_t>(space->size()), Rational(0));
  a.for_each([&](int x) { v[static_cast<std::size_t>(x)] = 1; });
  return RationalFunction(std::move(space), std::move(v));
}

RationalFunction RationalFunction::affine(const Rational& slope, const Rational& offset) const {
  std::vector<Rational> v;
  v.reserve(values_.size());
  for (const Rational& q : values_) v.emplace_back(slope * q + offset);
  return RationalFunction(space_, std::move(v));
}

PointSet RationalFunction::level_set(const Rational& c) const {
  PointSet out;
  for (std::size_t x = 0; x < values_.size(); ++x) {
    if (values_[x] == c) out |= PointSet::single(static_cast<int>(x));
  }
  return out;
}

Rational norm_on(const RationalFunction& phi, PointSet a) {
  Rational best = 0;
  a.for_each([&](int x) {
    Rational v = abs_of(phi(x));
    if (v > best) best = v;
  });
  return best;
}

Rational norm(const RationalFunction& phi) { return norm_on(phi, phi.space().points()); }

Rational osc_at_point_in(const FiniteSpace& space, PointSet carrier, const RationalFunction& phi, int x) {
  Rational best = 0;
  (space.minimal_open_neighborhood(x) & carrier).for_each([&](int z) {
    Rational d = abs_of(phi(x) - phi(z));
    if (d > best) best = d;
  });
  return best;
}

Rational osc_at_point(const FiniteSpace& space, const RationalFunction& phi, int x) {
  return osc_at_point_in(space, space.points(), phi, x);
}

Rational osc_on_set_in(const FiniteSpace& space, PointSet carrier, const RationalFunction& phi, PointSet a) {
  Rational best = 0;
  (a & carrier).for_each([&](int x) {
    Rational v = osc_at_point_in(space, carrier, phi, x);
    if (v > best) best = v;
  });
  return best;
}

Rational osc_on_set(const FiniteSpace& space, const RationalFunction& phi, PointSet a) {
  return osc_on_set_in(space, space.points(), phi, a);
}

bool osc_vanishes_in(const FiniteSpace& space, PointSet carrier, const RationalFunction& phi, PointSet a) {
  bool ok = true;
  (a & carrier).for_each([&](int x) {
    if (!ok) return;
    (space.minimal_open_neighborhood(x) & carrier).for_each([&](int z) {
      if (phi(z) != phi(x)) ok = false;
    });
  });
  return ok;
}

LinearBoundCheck osc_linear_bound_check(const Rational& alpha, const RationalFunction& phi,
                                        const Rational& beta, const RationalFunction& psi, PointSet a) {
  if (phi.space_ptr() != psi.space_ptr() && !(phi.space() == psi.space())) {
    throw Error(ErrorCode::kInvalidArgument, "functions live on different spaces");
  }
  std::vector<Rational> combo;
  for (int x = 0; x < phi.space().size(); ++x) combo.emplace_back(alpha * phi(x) + beta * psi(x));
  RationalFunction sum(phi.space_ptr(), std::move(combo));
  LinearBoundCheck out;
  out.lhs = osc_on_set(phi.space(), sum, a);
  out.rhs = abs_of(alpha) * osc_on_set(phi.space(), phi, a) + abs_of(beta) * osc_on_set(psi.space(), psi, a);
  out.ok = out.lhs <= out.rhs;
  return out;
}

SublevelReport sublevel_disjointness(const FiniteSpace& space, const RationalFunction& phi,
                                     const Rational& a, const Rational& b) {
  Rational osc = osc_on_set(space, phi, space.points());
  if (!(b - a > osc)) {
    throw Error(ErrorCode::kPreconditionGap,
                "b - a = " + format_rational(b - a) + " does not exceed osc = " + format_rational(osc));
  }
  SublevelReport out;
  for (int x = 0; x < space.size(); ++x) {
    if (phi(x) <= a) out.lower |= PointSet::single(x);
    if (phi(x) >= b) out.upper |= PointSet::single(x);
  }
  out.lower_misses_closure_of_upper = !out.lower.intersects(space.closure(out.upper));
  out.closure_of_lower_misses_upper = !space.closure(out.lower).intersects(out.upper);
  return out;
}

FContinuityReport is_f_continuous_at(const FiberedMap& f, const RationalFunction& phi, int y) {
  FContinuityReport out;
  out.y = y;
  out.oy = f.codomain().minimal_open_neighborhood(y);
  out.osc = osc_on_set(f.domain(), phi, f.preimage(out.oy));
  out.holds = out.osc == 0;
  return out;
}

EquicontinuityReport is_f_equicontinuous_at(const FiberedMap& f, const std::vector<RationalFunction>& family,
                                            int y) {
  EquicontinuityReport out;
  out.certificate.y = y;
  out.certificate.oy = f.codomain().minimal_open_neighborhood(y);
  out.certificate.bound = 0;
  out.holds = true;
  PointSet w = f.preimage(out.certificate.oy);
  for (std::size_t i = 0; i < family.size(); ++i) {
    Rational osc = osc_on_set(f.domain(), family[i], w);
    if (osc > out.certificate.bound) out.certificate.bound = osc;
    if (osc != 0 && out.holds) {
      out.holds = false;
      out.failing_member = i;
    }
  }
  out.certificate.family = family;
  return out;
}

WeightedSumResult weighted_sum(const FiberedMap& f, const std::vector<RationalFunction>& family,
                               const std::vector<Rational>& weights, int y) {
  if (family.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument, "family and weights differ in length");
  }
  std::vector<Rational> acc(static_cast<std::size_t>(f.domain().size()), Rational(0));
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!is_f_continuous_at(f, family[i], y).holds) {
      throw Error(ErrorCode::kMemberNotFContinuous,
                  "member " + std::to_string(i) + " is not f-continuous at " + std::to_string(y),
                  {static_cast<std::int64_t>(i), y});
    }
    for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += weights[i] * family[i].values()[x];
  }
  RationalFunction sum(f.domain_ptr(), std::move(acc));
  FContinuityReport c = is_f_continuous_at(f, sum, y);
  if (!c.holds) throw Error(ErrorCode::kCheckFailed, "weighted sum lost f-continuity");
  return WeightedSumResult{std::move(sum), c};
}

}  // namespace fibertop
