#include <doctest.h>

#include "fibertop/space.hpp"
#include "oracles.hpp"

using namespace fibertop;

namespace {

SpacePtr S() { return share(FiniteSpace::sierpinski()); }

}  // namespace

TEST_CASE("sierpinski from opens") {
  FiniteSpace s = FiniteSpace::from_opens(2, {PointSet(), PointSet::of({0}), PointSet::of({0, 1})});
  CHECK(s == FiniteSpace::sierpinski());
  CHECK(s.opens().size() == 3);
}

TEST_CASE("missing union is reported") {
  try {
    FiniteSpace::from_opens(2, {PointSet(), PointSet::of({0}), PointSet::of({1})});
    FAIL("accepted a non-topology");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotClosedUnderUnion);
  }
}

TEST_CASE("missing empty set or full set") {
  CHECK_THROWS_AS(FiniteSpace::from_opens(2, {PointSet::of({0}), PointSet::of({0, 1})}), Error);
  CHECK_THROWS_AS(FiniteSpace::from_opens(2, {PointSet(), PointSet::of({0})}), Error);
}

TEST_CASE("powerset is discrete") {
  std::vector<PointSet> all;
  for (Mask m = 0; m < 8; ++m) all.emplace_back(m);
  CHECK(FiniteSpace::from_opens(3, all) == FiniteSpace::discrete(3));
}

TEST_CASE("closure interior and minimal neighborhoods") {
  FiniteSpace s = FiniteSpace::sierpinski();
  CHECK(s.closure(PointSet::of({0})) == PointSet::of({0, 1}));
  CHECK(s.closure(PointSet::of({1})) == PointSet::of({1}));
  CHECK(s.interior(PointSet::of({1})) == PointSet());
  CHECK(s.interior(PointSet::of({0, 1})) == PointSet::of({0, 1}));
  CHECK(s.interior(PointSet::of({0})) == PointSet::of({0}));
  CHECK(s.minimal_open_neighborhood(0) == PointSet::of({0}));
  CHECK(s.minimal_open_neighborhood(1) == PointSet::of({0, 1}));
  FiniteSpace d3 = FiniteSpace::discrete(3);
  CHECK(d3.closure(PointSet::of({0, 2})) == PointSet::of({0, 2}));
  CHECK(d3.minimal_open_neighborhood(2) == PointSet::of({2}));
}

TEST_CASE("subspaces") {
  FiniteSpace s = FiniteSpace::sierpinski();
  CHECK(s.subspace(PointSet::of({1})).space().size() == 1);
  CHECK(s.subspace(PointSet::of({0})).space().size() == 1);
  Subspace c = FiniteSpace::chain(3).subspace(PointSet::of({1, 2}));
  CHECK(c.space() == FiniteSpace::sierpinski());
  CHECK(c.lift(PointSet::of({0})) == PointSet::of({1}));
}

TEST_CASE("restrictions") {
  RestrictedMap r = restrict_map(FiberedMap::identity(S()), PointSet::of({0}));
  CHECK(r.map.domain().size() == 1);
  CHECK(r.map.codomain().size() == 1);

  FiberedMap to_one(share(FiniteSpace::discrete(3)), S(), {1, 1, 1});
  CHECK(restrict_map(to_one, PointSet::of({0})).map.domain().size() == 0);

  FiberedMap c(share(FiniteSpace::chain(3)), S(), {0, 0, 1});
  RestrictedMap rc = restrict_map(c, PointSet::of({0}));
  CHECK(rc.domain.carrier() == PointSet::of({0, 1}));
  CHECK(rc.map.codomain().size() == 1);
}

TEST_CASE("non-continuous table is rejected") {
  SpacePtr d2 = share(FiniteSpace::discrete(2));
  try {
    FiberedMap(S(), d2, {0, 1});
    FAIL("accepted a non-continuous map");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotContinuous);
  }
}

TEST_CASE("F_sigma subsets") {
  FiniteSpace s = FiniteSpace::sierpinski();
  FSigmaDecomposition d = is_f_sigma_subset(s, PointSet::of({1}));
  CHECK(d.holds);
  CHECK(d.pieces == std::vector<PointSet>{PointSet::of({1})});
  CHECK_FALSE(is_f_sigma_subset(s, PointSet::of({0})).holds);
  FSigmaDecomposition e = is_f_sigma_subset(s, PointSet());
  CHECK(e.holds);
  CHECK(e.pieces.empty());
}

TEST_CASE("F_sigma submappings") {
  FiberedMap id = FiberedMap::identity(S());
  FSigmaSubmappingReport open = is_f_sigma_submapping(Submapping(id, PointSet::of({0})));
  CHECK_FALSE(open.holds);
  CHECK(open.failing_y == 1);
  CHECK(is_f_sigma_submapping(Submapping(id, PointSet::of({1}))).holds);
  FiberedMap d = FiberedMap::identity(share(FiniteSpace::discrete(2)));
  for (Mask m = 0; m < 4; ++m) CHECK(is_f_sigma_submapping(Submapping(d, PointSet(m))).holds);
}

TEST_CASE("property: operators agree with brute force") {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    FiniteSpace s = gen.space(1 + gen.below(5));
    for (PointSet a : oracle::all_subsets(s.points())) {
      REQUIRE(s.closure(a) == oracle::closure(s, a));
      REQUIRE(s.interior(a) == oracle::interior(s, a));
      REQUIRE(s.is_open(a) == oracle::in_family(s.opens(), a));
      REQUIRE(s.up(a) == [&] {
        PointSet best = s.points();
        for (PointSet o : s.opens()) {
          if (a.subset_of(o) && o.size() < best.size()) best = o;
        }
        return best;
      }());
    }
    PointSet w = gen.subset(s.points());
    std::vector<PointSet> traces = oracle::trace_opens(s, w);
    for (PointSet a : oracle::all_subsets(w)) {
      REQUIRE(s.is_open_in(w, a) == oracle::in_family(traces, a));
      REQUIRE(s.closure_in(w, a) == (oracle::closure(s, a) & w));
    }
  }
}

TEST_CASE("property: opens are closed under union and intersection") {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    FiniteSpace s = gen.space(1 + gen.below(6));
    const auto& o = s.opens();
    CHECK(std::is_sorted(o.begin(), o.end()));
    CHECK(std::adjacent_find(o.begin(), o.end()) == o.end());
    for (PointSet a : o) {
      for (PointSet b : o) {
        REQUIRE(oracle::in_family(o, a | b));
        REQUIRE(oracle::in_family(o, a & b));
      }
    }
  }
}

TEST_CASE("cap is enforced") {
  CHECK_THROWS_AS(FiniteSpace::chain(kHardPointLimit + 1), Error);
  std::vector<PointSet> u;
  for (int x = 0; x < 8; ++x) u.push_back(PointSet::single(x));
  try {
    FiniteSpace::from_minimal_neighborhoods(u, 4);
    FAIL("cap ignored");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCapExceeded);
  }
}
