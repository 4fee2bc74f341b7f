#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fibertop/census.hpp"
#include "fibertop/normality.hpp"
#include "oracles.hpp"

using namespace fibertop;

namespace {

PointSet P(std::initializer_list<int> xs) { return PointSet::of(xs); }

SpacePtr S() { return share(FiniteSpace::sierpinski()); }
SpacePtr D(int n) { return share(FiniteSpace::discrete(n)); }
SpacePtr I2() { return share(FiniteSpace::indiscrete(2)); }

}  // namespace

TEST_CASE("f-separation") {
  CHECK(are_f_separated(FiberedMap::identity(D(2)), P({0}), P({1})).holds);
  SeparationReport i2 = are_f_separated(FiberedMap::identity(I2()), P({0}), P({1}));
  CHECK_FALSE(i2.holds);
  FiberedMap id = FiberedMap::identity(S());
  SeparationReport empty = are_f_separated(id, P({}), P({1}));
  REQUIRE(empty.holds);
  for (const SeparationCertificate& c : empty.certificates) {
    CHECK(c.u.empty());
    CHECK(c.v == id.preimage(c.oy));
    CHECK(verify_separation(id, c));
  }
}

TEST_CASE("prenormality and normality on small fixtures") {
  CHECK(is_prenormal(FiberedMap::identity(S())).holds);
  CHECK(is_prenormal(FiberedMap::constant(I2())).holds);
  for (int n = 1; n <= 4; ++n) {
    CHECK(is_prenormal(FiberedMap::identity(D(n))).holds);
    CHECK(is_sigma_normal(FiberedMap::identity(D(n))).holds);
    CHECK(is_perfectly_normal(FiberedMap::identity(D(n))).holds);
    CHECK(is_co_perfectly_normal(FiberedMap::identity(D(n))).holds);
    CHECK(is_co_sigma_perfectly_normal(FiberedMap::identity(D(n))).holds);
  }
  CHECK(is_hereditarily_normal(FiberedMap::constant(share(FiniteSpace::chain(1)))).holds);
}

TEST_CASE("co-perfect normality fails on the Sierpinski identity") {
  FiberedMap id = FiberedMap::identity(S());
  DeciderReport r = is_co_perfectly_normal(id);
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->carrier == P({0}));
  CHECK(r.counterexample->y == 1);
  CHECK(is_normal(id).holds);
}

TEST_CASE("small Urysohn search") {
  FiberedMap d = FiberedMap::identity(D(2));
  FiberedMap c = FiberedMap::constant(D(2));
  SmallUrysohnResult r = small_urysohn_search(c, c.codomain().points(), {P({1})}, P({1}), 0);
  CHECK(r.oy == c.codomain().points());
  CHECK(r.v == std::vector<PointSet>{P({1})});
  SmallUrysohnResult e = small_urysohn_search(d, d.codomain().points(), {P({})}, P({1}), 1);
  CHECK(e.v == std::vector<PointSet>{P({})});
  FiberedMap c3 = FiberedMap::identity(share(FiniteSpace::chain(3)));
  CHECK_THROWS_AS(small_urysohn_search(c3, c3.codomain().points(), {P({2})}, P({1, 2}), 2), Error);
}

TEST_CASE("builder on the two-point discrete space") {
  FiberedMap d = FiberedMap::identity(D(2));
  for (int y = 0; y < 2; ++y) {
    ConsistentBinaryFamily fam = build_binary_partitions(d, d.codomain().points(), P({0}), P({1}), y, {3, false});
    CHECK(fam.depth() == 3);
    for (int n = 1; n <= 3; ++n) {
      const PartitionLevel& lv = fam.level(n);
      PointSet w = d.preimage(lv.o);
      CHECK((P({0}) & w).subset_of(lv.blocks.front()));
      CHECK((P({1}) & w).subset_of(lv.blocks.back()));
    }
    CHECK(family_separates(fam, P({0}), P({1})));
  }
  ConsistentBinaryFamily triv = build_binary_partitions(d, d.codomain().points(), P({}), P({}), 0, {3, false});
  CHECK(family_separates(triv, P({}), P({})));
  CHECK_THROWS_AS(build_binary_partitions(d, d.codomain().points(), P({0}), P({0}), 0, {3, false}), Error);
}

TEST_CASE("sigma builder") {
  FiberedMap c = FiberedMap::constant(D(3));
  std::vector<ConsistentBinaryFamily> fams =
      build_binary_partitions_sigma(c, c.codomain().points(), P({0}), {P({1}), P({2})}, 0, {3, false});
  REQUIRE(fams.size() == 2);
  for (int n = 0; n <= 3; ++n) CHECK(fams[0].level(n).o == fams[1].level(n).o);
  CHECK(fams[0].level(3).o == c.codomain().points());
  for (std::size_t l = 0; l < 2; ++l) CHECK(family_separates(fams[l], P({0}), l == 0 ? P({1}) : P({2})));

  FiberedMap d = FiberedMap::identity(D(2));
  std::vector<ConsistentBinaryFamily> one =
      build_binary_partitions_sigma(d, d.codomain().points(), P({0}), {P({1})}, 1, {3, false});
  ConsistentBinaryFamily plain = build_binary_partitions(d, d.codomain().points(), P({0}), P({1}), 1, {3, false});
  REQUIRE(one.size() == 1);
  CHECK(one[0].levels() == plain.levels());
}

TEST_CASE("functional openness") {
  FiberedMap id = FiberedMap::identity(S());
  DeciderReport none = is_f_functionally_open(id, P({}));
  REQUIRE(none.holds);
  for (const Witness& w : none.witnesses) CHECK(w.functions[0] == RationalFunction::constant(id.domain_ptr(), 0));
  DeciderReport all = is_f_functionally_open(id, id.domain().points());
  REQUIRE(all.holds);
  for (const Witness& w : all.witnesses) {
    id.preimage(w.oy).for_each([&](int x) { CHECK(w.functions[0](x) > 0); });
  }
  CHECK(is_f_functionally_closed(id, id.domain().points()).holds);
}

TEST_CASE("property: normality deciders agree with the direct definition") {
  int normal_count = 0;
  for (const FiberedMap& f : enumerate_maps(5)) {
    const bool expected = oracle::normal(f);
    REQUIRE(is_normal(f).holds == expected);
    REQUIRE(is_prenormal(f).holds == oracle::prenormal_within(f, f.codomain().points()));
    normal_count += expected;
    if (f.codomain().size() == 1) REQUIRE(expected == oracle::space_normal(f.domain()));
  }
  CHECK(normal_count > 0);
}

TEST_CASE("property: decider certificates re-verify") {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 100; ++trial) {
    FiberedMap f = gen.map(1 + gen.below(4), 1 + gen.below(3));
    std::vector<PointSet> closed = oracle::closed_in(f.domain(), f.domain().points());
    PointSet a = closed[static_cast<std::size_t>(gen.below(static_cast<int>(closed.size())))];
    PointSet b = closed[static_cast<std::size_t>(gen.below(static_cast<int>(closed.size())))];
    if (a.intersects(b)) continue;
    SeparationReport r = are_f_separated(f, a, b);
    bool expected = true;
    for (int y = 0; y < f.codomain().size(); ++y) {
      expected = expected && oracle::separated_at(f, f.codomain().points(), a, b, y);
    }
    REQUIRE(r.holds == expected);
    for (const SeparationCertificate& c : r.certificates) REQUIRE(verify_separation(f, c));
  }
}

TEST_CASE("regression table for |X|, |Y| <= 2") {
  std::ifstream in(FIXTURE_DIR "/regression_2x2.txt");
  REQUIRE(in);
  std::vector<FiberedMap> maps;
  for (const FiberedMap& f : enumerate_maps(4)) {
    if (f.domain().size() <= 2 && f.codomain().size() <= 2) maps.push_back(f);
  }
  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    REQUIRE(i < maps.size());
    const FiberedMap& f = maps[i++];
    std::ostringstream key;
    for (PointSet o : f.domain().opens()) key << o.bits() << ',';
    key << '|';
    for (PointSet o : f.codomain().opens()) key << o.bits() << ',';
    key << '|';
    for (int t : f.table()) key << t;
    Classification c = classify(f);
    key << ' ' << c.prenormal << c.normal << c.sigma_prenormal << c.sigma_normal << c.perfectly_normal
        << c.co_perfect << c.co_sigma_perfect << c.hereditarily_normal;
    CHECK(key.str() == line);
    CHECK(c.normal == oracle::normal(f));
  }
  CHECK(i == maps.size());
}
