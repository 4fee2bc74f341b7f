#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fibertop/space.hpp"

namespace fibertop {

// Sorted open masks after the relabeling that makes the sequence
// lexicographically smallest; equal forms mean homeomorphic spaces.
std::vector<Mask> canonical_form(const FiniteSpace& space);

// One representative per homeomorphism class, in ascending canonical form.
std::vector<FiniteSpace> enumerate_topologies(int n);

// All continuous maps X -> Y with 1 <= |X|, 1 <= |Y| and |X| + |Y| <= max_total,
// X and Y ranging over the class representatives. Order is deterministic.
std::vector<FiberedMap> enumerate_maps(int max_total);

// Random continuous maps with |X| + |Y| = total (both sides nonempty).
std::vector<FiberedMap> sample_maps(int total, int count, std::uint64_t seed);

struct Classification {
  bool prenormal = false;
  bool normal = false;
  bool sigma_prenormal = false;
  bool sigma_normal = false;
  bool perfectly_normal = false;
  bool co_perfect = false;
  bool co_sigma_perfect = false;
  bool hereditarily_normal = false;
};

Classification classify(const FiberedMap& f, int depth = 6);

struct CensusOptions {
  int depth = 6;
  bool check_heredity = true;  // perfect normality of every submapping
};

struct CensusRecord {
  std::size_t id = 0;
  FiberedMap map;
  Classification cls;
  std::vector<std::string> violations;
};

// Classifies one map and checks every implication between the classes.
CensusRecord census_record(std::size_t id, const FiberedMap& f, const CensusOptions& opt = {});

// Runs census_record over the maps, in parallel, keeping input order.
std::vector<CensusRecord> run_census(const std::vector<FiberedMap>& maps, const CensusOptions& opt = {});

// Applies fn to 0..count-1 on worker threads; fn writes only to its own slot.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn);

}  // namespace fibertop

#include "fibertop/detail/parallel.hpp"
