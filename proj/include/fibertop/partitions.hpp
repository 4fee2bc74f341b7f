#pragma once

#include <vector>

#include "fibertop/oscillation.hpp"
#include "fibertop/space.hpp"

namespace fibertop {

// Ordered blocks U^0..U^{k-1} of a carrier subset, with closed prefix unions
// and no closure contact between blocks two or more apart.
struct RegularKPartition {
  PointSet carrier;
  std::vector<PointSet> blocks;

  int k() const { return static_cast<int>(blocks.size()); }
  bool operator==(const RegularKPartition&) const = default;
};

RegularKPartition validate_regular_partition(const FiniteSpace& space, PointSet carrier,
                                             std::vector<PointSet> blocks);

// Union over m of int(U^m | U^{m+1}) equals the carrier. Throws
// kInvalidPartition for k < 3 or an invalid partition.
bool interiors_cover_check(const FiniteSpace& space, const RegularKPartition& partition);

struct PartitionLevel {
  PointSet o;                    // O_n, open in Y, contains y
  std::vector<PointSet> blocks;  // 2^n blocks partitioning f^{-1} O_n

  bool operator==(const PartitionLevel&) const = default;
};

// Level 0 is (O_0, {f^{-1} O_0}); O_0 = Y for the unrestricted map and the
// restriction target otherwise.
class ConsistentBinaryFamily {
 public:
  ConsistentBinaryFamily(FiberedMap f, int y, std::vector<PartitionLevel> levels)
      : f_(std::move(f)), y_(y), levels_(std::move(levels)) {}

  const FiberedMap& map() const { return f_; }
  int y() const { return y_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<PartitionLevel>& levels() const { return levels_; }
  const PartitionLevel& level(int n) const { return levels_[static_cast<std::size_t>(n)]; }

 private:
  FiberedMap f_;
  int y_;
  std::vector<PartitionLevel> levels_;
};

ConsistentBinaryFamily validate_consistent_family(FiberedMap f, int y, std::vector<PartitionLevel> levels);

// k/(2^n - 1) on U_n^k, zero off f^{-1} O_n; identically zero for n = 0.
RationalFunction stepwise_function(const ConsistentBinaryFamily& family, int n);

// Same O and the same ordered nonempty blocks, each with the same role
// (first index, last index, or interior).
bool levels_repeat(const PartitionLevel& a, const PartitionLevel& b);

// Index of the first level s >= 1 from which every later level repeats the
// nonempty-block pattern of its predecessor (same O, same sets, same roles);
// -1 when the data never settles before the last level.
int stationary_level(const ConsistentBinaryFamily& family);

struct ApproximateLimitFunction {
  RationalFunction phi;
  Rational error_bound;  // 1/(2^N - 1)
  bool stabilized = false;
  int stabilization_depth = -1;
};

ApproximateLimitFunction assemble_limit(const ConsistentBinaryFamily& family);

}  // namespace fibertop
