#include "fibertop/partitions.hpp"

namespace fibertop {

RegularKPartition validate_regular_partition(const FiniteSpace& space, PointSet carrier,
                                             std::vector<PointSet> blocks) {
  space.check_subset(carrier);
  if (blocks.empty()) throw Error(ErrorCode::kInvalidPartition, "partition has no blocks");
  PointSet seen;
  for (std::size_t m = 0; m < blocks.size(); ++m) {
    if (!blocks[m].subset_of(carrier)) {
      throw Error(ErrorCode::kNotCovering, "block " + std::to_string(m) + " leaves the carrier",
                  {static_cast<std::int64_t>(m)});
    }
    if (blocks[m].intersects(seen)) {
      throw Error(ErrorCode::kNotDisjoint, "block " + std::to_string(m) + " meets an earlier block",
                  {static_cast<std::int64_t>(m)});
    }
    seen |= blocks[m];
  }
  if (seen != carrier) throw Error(ErrorCode::kNotCovering, "blocks do not cover the carrier");

  const int k = static_cast<int>(blocks.size());
  std::vector<PointSet> prefix(blocks.size());
  std::vector<PointSet> suffix(blocks.size() + 1);
  for (int p = 0; p < k; ++p) prefix[p] = (p ? prefix[p - 1] : PointSet()) | blocks[p];
  for (int p = k - 1; p >= 0; --p) suffix[p] = suffix[p + 1] | blocks[p];

  for (int p = 0; p < k; ++p) {
    if (!space.is_closed_in(carrier, prefix[p])) {
      throw Error(ErrorCode::kPrefixNotClosed, "prefix union up to " + std::to_string(p) + " is not closed",
                  {p});
    }
  }
  for (int p = 0; p + 2 < k; ++p) {
    if (prefix[p].intersects(space.closure_in(carrier, suffix[p + 2]))) {
      throw Error(ErrorCode::kCondition2Violated,
                  "prefix up to " + std::to_string(p) + " touches the closure of the tail from " +
                      std::to_string(p + 2),
                  {p});
    }
  }
  return RegularKPartition{carrier, std::move(blocks)};
}

bool interiors_cover_check(const FiniteSpace& space, const RegularKPartition& partition) {
  if (partition.k() < 3) {
    throw Error(ErrorCode::kInvalidPartition, "the covering property is stated for k >= 3", {partition.k()});
  }
  try {
    validate_regular_partition(space, partition.carrier, partition.blocks);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidPartition, std::string("not a regular partition: ") + e.what());
  }
  PointSet covered;
  for (int m = 0; m + 1 < partition.k(); ++m) {
    covered |= space.interior_in(partition.carrier, partition.blocks[m] | partition.blocks[m + 1]);
  }
  return covered == partition.carrier;
}

ConsistentBinaryFamily validate_consistent_family(FiberedMap f, int y, std::vector<PartitionLevel> levels) {
  const FiniteSpace& ys = f.codomain();
  ys.check_point(y);
  if (levels.empty()) throw Error(ErrorCode::kInvalidArgument, "family has no levels");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const PartitionLevel& lv = levels[n];
    const std::int64_t ni = static_cast<std::int64_t>(n);
    if (!ys.is_open(lv.o) || !lv.o.contains(y)) {
      throw Error(ErrorCode::kNeighborhoodNotNested, "O_" + std::to_string(n) + " is not a neighborhood of y",
                  {ni});
    }
    if (n > 0 && !lv.o.subset_of(levels[n - 1].o)) {
      throw Error(ErrorCode::kNeighborhoodNotNested, "O_" + std::to_string(n) + " is not inside its parent",
                  {ni});
    }
    if (n >= 31 || lv.blocks.size() != (std::size_t{1} << n)) {
      throw Error(ErrorCode::kLevelNotRegular, "level " + std::to_string(n) + " has the wrong block count",
                  {ni});
    }
    PointSet w = f.preimage(lv.o);
    try {
      validate_regular_partition(f.domain(), w, lv.blocks);
    } catch (const Error& e) {
      throw Error(ErrorCode::kLevelNotRegular, "level " + std::to_string(n) + ": " + e.what(),
                  {ni, static_cast<std::int64_t>(e.code())});
    }
    if (n > 0) {
      const PartitionLevel& prev = levels[n - 1];
      for (std::size_t k = 0; k < prev.blocks.size(); ++k) {
        if ((lv.blocks[2 * k] | lv.blocks[2 * k + 1]) != (prev.blocks[k] & w)) {
          throw Error(ErrorCode::kCoherenceViolated,
                      "children of block " + std::to_string(k) + " at level " + std::to_string(n - 1) +
                          " do not split it",
                      {ni - 1, static_cast<std::int64_t>(k)});
        }
      }
    }
  }
  return ConsistentBinaryFamily(std::move(f), y, std::move(levels));
}

RationalFunction stepwise_function(const ConsistentBinaryFamily& family, int n) {
  if (n < 0 || n > family.depth()) {
    throw Error(ErrorCode::kDepthExceeded, "level " + std::to_string(n) + " beyond depth", {n});
  }
  const FiberedMap& f = family.map();
  std::vector<Rational> v(static_cast<std::size_t>(f.domain().size()), Rational(0));
  if (n == 0) return RationalFunction(f.domain_ptr(), std::move(v));
  const Rational denom = Rational((mpz_class(1) << n) - 1);
  const auto& blocks = family.level(n).blocks;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Rational value = Rational(static_cast<long>(k)) / denom;
    blocks[k].for_each([&](int x) { v[static_cast<std::size_t>(x)] = value; });
  }
  RationalFunction phi(f.domain_ptr(), std::move(v));
  PointSet w = f.preimage(family.level(n).o);
  if (osc_on_set(f.domain(), phi, w) > 1 / denom) {
    throw Error(ErrorCode::kCheckFailed, "stepwise oscillation bound violated", {n});
  }
  return phi;
}

namespace {

enum class Role { kFirst, kInterior, kLast };

struct PatternEntry {
  PointSet set;
  Role role;
  bool operator==(const PatternEntry&) const = default;
};

std::vector<PatternEntry> pattern(const PartitionLevel& lv) {
  std::vector<PatternEntry> out;
  const std::size_t last = lv.blocks.size() - 1;
  for (std::size_t k = 0; k < lv.blocks.size(); ++k) {
    if (lv.blocks[k].empty()) continue;
    Role r = k == 0 ? Role::kFirst : (k == last ? Role::kLast : Role::kInterior);
    out.push_back(PatternEntry{lv.blocks[k], r});
  }
  return out;
}

int block_of(const PartitionLevel& lv, int x) {
  for (std::size_t k = 0; k < lv.blocks.size(); ++k) {
    if (lv.blocks[k].contains(x)) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

bool levels_repeat(const PartitionLevel& a, const PartitionLevel& b) {
  return a.o == b.o && pattern(a) == pattern(b);
}

int stationary_level(const ConsistentBinaryFamily& family) {
  const int depth = family.depth();
  int s = depth;
  while (s - 1 >= 1 && levels_repeat(family.level(s - 1), family.level(s))) --s;
  return s < depth ? s : -1;
}

ApproximateLimitFunction assemble_limit(const ConsistentBinaryFamily& family) {
  const int depth = family.depth();
  if (depth < 1) throw Error(ErrorCode::kHypothesisFailed, "limit needs depth >= 1", {0, 0});
  const FiberedMap& f = family.map();
  const FiniteSpace& xs = f.domain();

  std::vector<RationalFunction> phis;
  for (int n = 0; n <= depth; ++n) phis.push_back(stepwise_function(family, n));

  for (int n = 1; n <= depth; ++n) {
    if (!family.level(n).o.subset_of(family.level(n - 1).o)) {
      throw Error(ErrorCode::kHypothesisFailed, "neighborhoods not nested", {0, n});
    }
    const Rational bound = 1 / Rational((mpz_class(1) << n) - 1);
    if (osc_on_set(xs, phis[n], f.preimage(family.level(n).o)) > bound) {
      throw Error(ErrorCode::kHypothesisFailed, "oscillation bound fails", {1, n});
    }
  }
  for (int n = 0; n < depth; ++n) {
    const Rational bound = 1 / Rational((mpz_class(1) << (n + 1)) - 1);
    bool ok = true;
    f.preimage(family.level(n + 1).o).for_each([&](int x) {
      if (abs_of(phis[n + 1](x) - phis[n](x)) > bound) ok = false;
    });
    if (!ok) throw Error(ErrorCode::kHypothesisFailed, "increment bound fails", {2, n});
  }

  const int s = stationary_level(family);
  std::vector<Rational> v(static_cast<std::size_t>(xs.size()), Rational(0));
  for (int x = 0; x < xs.size(); ++x) {
    int n = 0;
    while (n < depth && f.preimage(family.level(n + 1).o).contains(x)) ++n;
    if (n < depth || s < 0) {
      v[static_cast<std::size_t>(x)] = phis[n](x);
      continue;
    }
    const int ks = block_of(family.level(s), x);
    const int d = block_of(family.level(s + 1), x) - 2 * ks;
    v[static_cast<std::size_t>(x)] = Rational(ks + d) / Rational(mpz_class(1) << s);
  }
  ApproximateLimitFunction out{RationalFunction(f.domain_ptr(), std::move(v)),
                               1 / Rational((mpz_class(1) << depth) - 1), s >= 0, s};
  return out;
}

}  // namespace fibertop
