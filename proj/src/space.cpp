#include "fibertop/space.hpp"

#include <algorithm>
#include <sstream>

namespace fibertop {

PointSet PointSet::of(std::initializer_list<int> points) {
  Mask m = 0;
  for (int x : points) m |= Mask{1} << x;
  return PointSet(m);
}

std::vector<int> PointSet::points() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](int x) { out.push_back(x); });
  return out;
}

std::string to_string(PointSet s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  s.for_each([&](int x) {
    if (!first) os << ',';
    os << x;
    first = false;
  });
  os << '}';
  return os.str();
}

namespace {

void check_cap(int n, int cap) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative point count");
  int limit = std::min(cap, kHardPointLimit);
  if (n > limit) {
    throw Error(ErrorCode::kCapExceeded,
                "space has " + std::to_string(n) + " points, cap is " + std::to_string(limit),
                {n, limit});
  }
}

// Every union of minimal neighborhoods, ascending.
std::vector<PointSet> all_up_sets(int n, const std::vector<PointSet>& u) {
  std::vector<PointSet> out{PointSet()};
  for (int x = 0; x < n; ++x) {
    std::size_t count = out.size();
    for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] | u[static_cast<std::size_t>(x)]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

FiniteSpace::FiniteSpace(int n, std::vector<PointSet> opens) : n_(n), opens_(std::move(opens)) {
  minimal_.assign(static_cast<std::size_t>(n), PointSet::full(n));
  for (PointSet o : opens_) {
    o.for_each([&](int x) { minimal_[static_cast<std::size_t>(x)] &= o; });
  }
}

FiniteSpace FiniteSpace::from_opens(int n, std::vector<PointSet> opens, int cap) {
  check_cap(n, cap);
  const PointSet all = PointSet::full(n);
  for (PointSet o : opens) {
    if (!o.subset_of(all)) {
      throw Error(ErrorCode::kInvalidArgument, "open set " + to_string(o) + " is not inside the point set",
                  {o.bits()});
    }
  }
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  auto has = [&](PointSet s) { return std::binary_search(opens.begin(), opens.end(), s); };

  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!has(opens[i] | opens[j])) {
        throw Error(ErrorCode::kNotClosedUnderUnion,
                    "union of " + to_string(opens[i]) + " and " + to_string(opens[j]) + " is not open",
                    {opens[i].bits(), opens[j].bits()});
      }
    }
  }
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!has(opens[i] & opens[j])) {
        throw Error(ErrorCode::kNotClosedUnderIntersection,
                    "intersection of " + to_string(opens[i]) + " and " + to_string(opens[j]) +
                        " is not open",
                    {opens[i].bits(), opens[j].bits()});
      }
    }
  }
  if (!has(PointSet()) || !has(all)) {
    throw Error(ErrorCode::kMissingEmptyOrFull, "the empty set and the whole space must be open");
  }
  return FiniteSpace(n, std::move(opens));
}

FiniteSpace FiniteSpace::from_minimal_neighborhoods(const std::vector<PointSet>& u, int cap) {
  const int n = static_cast<int>(u.size());
  check_cap(n, cap);
  for (int x = 0; x < n; ++x) {
    PointSet ux = u[static_cast<std::size_t>(x)];
    if (!ux.contains(x) || !ux.subset_of(PointSet::full(n))) {
      throw Error(ErrorCode::kInvalidArgument, "bad minimal neighborhood for point " + std::to_string(x),
                  {x});
    }
    ux.for_each([&](int z) {
      if (!u[static_cast<std::size_t>(z)].subset_of(ux)) {
        throw Error(ErrorCode::kInvalidArgument, "minimal neighborhoods are not transitive", {x, z});
      }
    });
  }
  return FiniteSpace(n, all_up_sets(n, u));
}

FiniteSpace FiniteSpace::discrete(int n) {
  std::vector<PointSet> u;
  for (int x = 0; x < n; ++x) u.push_back(PointSet::single(x));
  return from_minimal_neighborhoods(u, kHardPointLimit);
}

FiniteSpace FiniteSpace::indiscrete(int n) {
  if (n == 0) return FiniteSpace(0, {PointSet()});
  return FiniteSpace(n, {PointSet(), PointSet::full(n)});
}

FiniteSpace FiniteSpace::sierpinski() { return chain(2); }

FiniteSpace FiniteSpace::chain(int n) {
  std::vector<PointSet> opens;
  for (int k = 0; k <= n; ++k) opens.push_back(PointSet::full(k));
  return from_opens(n, opens, kHardPointLimit);
}

void FiniteSpace::check_point(int x) const {
  if (x < 0 || x >= n_) {
    throw Error(ErrorCode::kInvalidArgument, "point " + std::to_string(x) + " out of range", {x});
  }
}

void FiniteSpace::check_subset(PointSet a) const {
  if (!a.subset_of(points())) {
    throw Error(ErrorCode::kInvalidArgument, "set " + to_string(a) + " is not inside the space",
                {a.bits()});
  }
}

PointSet FiniteSpace::up(PointSet a) const {
  PointSet out;
  a.for_each([&](int x) { out |= minimal_[static_cast<std::size_t>(x)]; });
  return out;
}

bool FiniteSpace::is_open(PointSet a) const {
  return a.subset_of(points()) && up(a) == a;
}

PointSet FiniteSpace::closure(PointSet a) const {
  PointSet out;
  for (int x = 0; x < n_; ++x) {
    if (minimal_[static_cast<std::size_t>(x)].intersects(a)) out |= PointSet::single(x);
  }
  return out;
}

PointSet FiniteSpace::interior(PointSet a) const {
  PointSet out;
  a.for_each([&](int x) {
    if (minimal_[static_cast<std::size_t>(x)].subset_of(a)) out |= PointSet::single(x);
  });
  return out;
}

PointSet FiniteSpace::interior_in(PointSet carrier, PointSet a) const {
  PointSet out;
  (a & carrier).for_each([&](int x) {
    if ((minimal_[static_cast<std::size_t>(x)] & carrier).subset_of(a)) out |= PointSet::single(x);
  });
  return out;
}

PointSet FiniteSpace::minimal_open_neighborhood(int x) const {
  check_point(x);
  return minimal_[static_cast<std::size_t>(x)];
}

std::vector<PointSet> FiniteSpace::opens_within(PointSet w) const {
  std::vector<PointSet> out;
  for (PointSet o : opens_) {
    if (o.subset_of(w)) out.push_back(o);
  }
  return out;
}

std::vector<PointSet> FiniteSpace::opens_containing(int x) const {
  check_point(x);
  std::vector<PointSet> out;
  for (PointSet o : opens_) {
    if (o.contains(x)) out.push_back(o);
  }
  return out;
}

std::vector<PointSet> FiniteSpace::neighborhoods_of(int x, PointSet within) const {
  check_point(x);
  std::vector<PointSet> out;
  for (PointSet o : opens_) {
    if (o.contains(x) && o.subset_of(within)) out.push_back(o);
  }
  return out;
}

Subspace FiniteSpace::subspace(PointSet a) const {
  check_subset(a);
  std::vector<int> back = a.points();
  std::vector<PointSet> u;
  for (int x : back) {
    PointSet local;
    for (std::size_t i = 0; i < back.size(); ++i) {
      if (minimal_[static_cast<std::size_t>(x)].contains(back[i])) local |= PointSet::single(static_cast<int>(i));
    }
    u.push_back(local);
  }
  return Subspace(from_minimal_neighborhoods(u, kHardPointLimit), std::move(back), a);
}

PointSet Subspace::lift(PointSet local) const {
  PointSet out;
  local.for_each([&](int i) { out |= PointSet::single(back_[static_cast<std::size_t>(i)]); });
  return out;
}

PointSet Subspace::localize(PointSet ambient) const {
  PointSet out;
  for (std::size_t i = 0; i < back_.size(); ++i) {
    if (ambient.contains(back_[i])) out |= PointSet::single(static_cast<int>(i));
  }
  return out;
}

FiberedMap::FiberedMap(SpacePtr domain, SpacePtr codomain, std::vector<int> table)
    : x_(std::move(domain)), y_(std::move(codomain)), table_(std::move(table)) {
  if (!x_ || !y_) throw Error(ErrorCode::kInvalidArgument, "null space");
  if (static_cast<int>(table_.size()) != x_->size()) {
    throw Error(ErrorCode::kInvalidArgument, "map table size does not match the domain");
  }
  for (int v : table_) y_->check_point(v);
  for (PointSet o : y_->opens()) {
    if (!x_->is_open(preimage(o))) {
      throw Error(ErrorCode::kNotContinuous, "preimage of open " + to_string(o) + " is not open",
                  {o.bits()});
    }
  }
}

PointSet FiberedMap::preimage(PointSet b) const {
  PointSet out;
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (b.contains(table_[x])) out |= PointSet::single(static_cast<int>(x));
  }
  return out;
}

PointSet FiberedMap::image(PointSet a) const {
  PointSet out;
  a.for_each([&](int x) { out |= PointSet::single(table_[static_cast<std::size_t>(x)]); });
  return out;
}

FiberedMap FiberedMap::constant(SpacePtr domain) {
  std::vector<int> table(static_cast<std::size_t>(domain->size()), 0);
  return FiberedMap(std::move(domain), share(FiniteSpace::discrete(1)), std::move(table));
}

FiberedMap FiberedMap::identity(SpacePtr space) {
  std::vector<int> table;
  for (int x = 0; x < space->size(); ++x) table.push_back(x);
  return FiberedMap(space, space, std::move(table));
}

RestrictedMap restrict_map(const FiberedMap& f, PointSet o) {
  f.codomain().check_subset(o);
  if (!f.codomain().is_open(o)) {
    throw Error(ErrorCode::kNotOpen, "restriction target " + to_string(o) + " is not open", {o.bits()});
  }
  Subspace dom = f.domain().subspace(f.preimage(o));
  Subspace cod = f.codomain().subspace(o);
  std::vector<int> table;
  for (int x : dom.back_map()) {
    int y = f(x);
    const auto& back = cod.back_map();
    table.push_back(static_cast<int>(std::find(back.begin(), back.end(), y) - back.begin()));
  }
  FiberedMap m(share(dom.space()), share(cod.space()), std::move(table));
  return RestrictedMap{std::move(m), std::move(dom), std::move(cod)};
}

namespace {

FiberedMap induced_on(const FiberedMap& base, const Subspace& sub) {
  std::vector<int> table;
  for (int x : sub.back_map()) table.push_back(base(x));
  return FiberedMap(share(sub.space()), base.codomain_ptr(), std::move(table));
}

}  // namespace

Submapping::Submapping(FiberedMap base, PointSet carrier)
    : base_(std::move(base)),
      carrier_(carrier),
      induced_(base_.domain().subspace(carrier)),
      induced_map_(induced_on(base_, induced_)) {}

FSigmaDecomposition is_f_sigma_in(const FiniteSpace& space, PointSet carrier, PointSet t) {
  space.check_subset(t);
  FSigmaDecomposition out;
  out.holds = true;
  t &= carrier;
  t.for_each([&](int x) {
    PointSet piece = space.closure_in(carrier, PointSet::single(x));
    if (!piece.subset_of(t)) out.holds = false;
    out.pieces.push_back(piece);
  });
  if (!out.holds) out.pieces.clear();
  return out;
}

FSigmaDecomposition is_f_sigma_subset(const FiniteSpace& space, PointSet t) {
  return is_f_sigma_in(space, space.points(), t);
}

FSigmaSubmappingReport is_f_sigma_carrier(const FiberedMap& f, PointSet carrier) {
  f.domain().check_subset(carrier);
  FSigmaSubmappingReport out;
  out.holds = true;
  for (int y = 0; y < f.codomain().size(); ++y) {
    PointSet oy = f.codomain().minimal_open_neighborhood(y);
    PointSet w = f.preimage(oy);
    FSigmaDecomposition d = is_f_sigma_in(f.domain(), w, carrier & w);
    if (!d.holds) {
      out.holds = false;
      out.failing_y = y;
      return out;
    }
    out.witnesses.push_back(FSigmaWitness{y, oy, std::move(d.pieces)});
  }
  return out;
}

FSigmaSubmappingReport is_f_sigma_submapping(const Submapping& sub) {
  return is_f_sigma_carrier(sub.base(), sub.carrier());
}

}  // namespace fibertop
