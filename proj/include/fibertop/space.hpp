#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibertop/error.hpp"

namespace fibertop {

using Mask = std::uint32_t;

// Largest space the library will materialize (all opens are stored).
inline constexpr int kHardPointLimit = 20;
inline constexpr int kDefaultPointCap = 16;

class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr explicit PointSet(Mask bits) : bits_(bits) {}

  static PointSet of(std::initializer_list<int> points);
  static constexpr PointSet single(int x) { return PointSet(Mask{1} << x); }
  static constexpr PointSet full(int n) {
    return PointSet(n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1);
  }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int x) const { return (bits_ >> x) & 1U; }
  constexpr bool subset_of(PointSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(PointSet o) const { return (bits_ & o.bits_) != 0; }
  // Lowest point, or -1 when empty.
  constexpr int first() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  std::vector<int> points() const;

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (Mask m = bits_; m != 0; m &= m - 1) fn(std::countr_zero(m));
  }

  constexpr PointSet operator|(PointSet o) const { return PointSet(bits_ | o.bits_); }
  constexpr PointSet operator&(PointSet o) const { return PointSet(bits_ & o.bits_); }
  constexpr PointSet operator-(PointSet o) const { return PointSet(bits_ & ~o.bits_); }
  constexpr PointSet operator^(PointSet o) const { return PointSet(bits_ ^ o.bits_); }
  PointSet& operator|=(PointSet o) { bits_ |= o.bits_; return *this; }
  PointSet& operator&=(PointSet o) { bits_ &= o.bits_; return *this; }
  PointSet& operator-=(PointSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr bool operator==(const PointSet&) const = default;
  constexpr auto operator<=>(const PointSet&) const = default;

 private:
  Mask bits_ = 0;
};

std::string to_string(PointSet s);

class Subspace;

// A finite topological space on points 0..n-1. Opens are kept deduplicated in
// ascending bitmask order, which is the tie-breaking order of every search.
class FiniteSpace {
 public:
  static FiniteSpace from_opens(int n, std::vector<PointSet> opens, int cap = kDefaultPointCap);
  // Opens are all unions of the given minimal neighborhoods; u[x] must contain
  // x and be closed under z in u[x] => u[z] subset of u[x].
  static FiniteSpace from_minimal_neighborhoods(const std::vector<PointSet>& u,
                                                int cap = kDefaultPointCap);
  static FiniteSpace discrete(int n);
  static FiniteSpace indiscrete(int n);
  static FiniteSpace sierpinski();
  // Opens {}, {0}, {0,1}, ..., {0..n-1}.
  static FiniteSpace chain(int n);

  int size() const { return n_; }
  PointSet points() const { return PointSet::full(n_); }
  const std::vector<PointSet>& opens() const { return opens_; }
  const std::vector<PointSet>& minimal_neighborhoods() const { return minimal_; }

  bool is_open(PointSet a) const;
  bool is_closed(PointSet a) const { return is_open(points() - a); }
  PointSet closure(PointSet a) const;
  PointSet interior(PointSet a) const;
  PointSet minimal_open_neighborhood(int x) const;
  // Smallest open superset.
  PointSet up(PointSet a) const;

  // Operators of the subspace topology on `carrier`, in ambient indices.
  PointSet closure_in(PointSet carrier, PointSet a) const { return closure(a) & carrier; }
  PointSet interior_in(PointSet carrier, PointSet a) const;
  bool is_open_in(PointSet carrier, PointSet a) const { return interior_in(carrier, a) == a; }
  bool is_closed_in(PointSet carrier, PointSet a) const { return closure_in(carrier, a) == a; }

  std::vector<PointSet> opens_within(PointSet w) const;
  std::vector<PointSet> opens_containing(int x) const;
  // Ascending; minimal neighborhood of x first since it is numerically smallest.
  std::vector<PointSet> neighborhoods_of(int x, PointSet within) const;

  Subspace subspace(PointSet a) const;

  void check_point(int x) const;
  void check_subset(PointSet a) const;

  bool operator==(const FiniteSpace& o) const { return n_ == o.n_ && opens_ == o.opens_; }

 private:
  FiniteSpace(int n, std::vector<PointSet> opens);

  int n_ = 0;
  std::vector<PointSet> opens_;
  std::vector<PointSet> minimal_;
};

// A subspace together with the back-map to ambient point ids.
class Subspace {
 public:
  Subspace(FiniteSpace space, std::vector<int> back_map, PointSet carrier)
      : space_(std::move(space)), back_(std::move(back_map)), carrier_(carrier) {}

  const FiniteSpace& space() const { return space_; }
  const std::vector<int>& back_map() const { return back_; }
  PointSet carrier() const { return carrier_; }

  PointSet lift(PointSet local) const;
  PointSet localize(PointSet ambient) const;

 private:
  FiniteSpace space_;
  std::vector<int> back_;
  PointSet carrier_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline SpacePtr share(FiniteSpace s) { return std::make_shared<const FiniteSpace>(std::move(s)); }

// Continuous f: X -> Y, checked at construction.
class FiberedMap {
 public:
  FiberedMap(SpacePtr domain, SpacePtr codomain, std::vector<int> table);

  const FiniteSpace& domain() const { return *x_; }
  const FiniteSpace& codomain() const { return *y_; }
  const SpacePtr& domain_ptr() const { return x_; }
  const SpacePtr& codomain_ptr() const { return y_; }
  const std::vector<int>& table() const { return table_; }
  int operator()(int x) const { return table_[static_cast<std::size_t>(x)]; }

  PointSet preimage(PointSet b) const;
  PointSet image(PointSet a) const;
  // f^{-1} of the minimal neighborhood of y.
  PointSet fiber_neighborhood(int y) const { return preimage(y_->minimal_open_neighborhood(y)); }

  static FiberedMap constant(SpacePtr domain);
  static FiberedMap identity(SpacePtr space);

  bool operator==(const FiberedMap& o) const {
    return *x_ == *o.x_ && *y_ == *o.y_ && table_ == o.table_;
  }

 private:
  SpacePtr x_;
  SpacePtr y_;
  std::vector<int> table_;
};

// f_O : f^{-1}O -> O with re-indexed subspaces.
struct RestrictedMap {
  FiberedMap map;
  Subspace domain;
  Subspace codomain;
};

RestrictedMap restrict_map(const FiberedMap& f, PointSet o);

// f|_{X0}: X0 -> Y.
class Submapping {
 public:
  Submapping(FiberedMap base, PointSet carrier);

  const FiberedMap& base() const { return base_; }
  PointSet carrier() const { return carrier_; }
  const Subspace& induced() const { return induced_; }
  const FiberedMap& induced_map() const { return induced_map_; }

 private:
  FiberedMap base_;
  PointSet carrier_;
  Subspace induced_;
  FiberedMap induced_map_;
};

struct FSigmaDecomposition {
  bool holds = false;
  std::vector<PointSet> pieces;  // cl_W{x} for x in T, ascending x
};

// T is F_sigma in the subspace `carrier` iff cl_carrier{x} stays in T for x in T.
FSigmaDecomposition is_f_sigma_in(const FiniteSpace& space, PointSet carrier, PointSet t);
FSigmaDecomposition is_f_sigma_subset(const FiniteSpace& space, PointSet t);

struct FSigmaWitness {
  int y = 0;
  PointSet oy;
  std::vector<PointSet> pieces;
};

struct FSigmaSubmappingReport {
  bool holds = false;
  std::vector<FSigmaWitness> witnesses;
  std::optional<int> failing_y;
};

FSigmaSubmappingReport is_f_sigma_submapping(const Submapping& sub);
// Same test without building the induced map; W_y = f^{-1}U_y.
FSigmaSubmappingReport is_f_sigma_carrier(const FiberedMap& f, PointSet carrier);

}  // namespace fibertop
