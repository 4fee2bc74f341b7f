#pragma once

#include <string>
#include <vector>

#include "fibertop/normality.hpp"
#include "fibertop/urysohn_tietze.hpp"

namespace fibertop {

struct HarnessOptions {
  int depth = 6;
  Rational tolerance = Rational(1, 1024);
  bool sigma = true;        // the F_sigma equivalence
  bool functional = true;   // co-sigma-perfect normality vs its functional condition
};

// One (O, F, T, y) evaluation of conditions (A)-(D).
struct TripleOutcome {
  PointSet o;
  PointSet f_set;
  PointSet t_set;
  int y = 0;
  bool a = false;  // separated by neighborhoods at y
  bool b = false;  // partition family built and validated
  bool c = false;  // separator passes verify_condition_C
  bool d = false;  // extension passes verify_condition_D and yields a separation
  std::string note;
};

struct SigmaOutcome {
  PointSet o;
  PointSet f_set;
  PointSet t_set;
  int y = 0;
  bool a = false;
  bool b = false;
  bool c = false;
};

// Contract checks on every extension run (residual law, norm, agreement).
struct ExtensionStats {
  int runs = 0;
  int exact = 0;
  int residual_violations = 0;
  int norm_violations = 0;
  int agreement_violations = 0;
  int bound_violations = 0;
};

// Stepwise bounds on every builder-produced family.
struct StepwiseStats {
  int families = 0;
  int osc_violations = 0;
  int increment_violations = 0;
};

struct HarnessReport {
  // Instance-level truth values.
  bool normal = false;          // (A)
  bool all_b = true;
  bool all_c = true;
  bool all_d = true;
  bool sigma_normal = false;
  bool sigma_all_b = true;
  bool sigma_all_c = true;
  bool co_sigma_perfect = false;
  bool functional_condition = false;

  std::vector<TripleOutcome> triples;
  std::vector<SigmaOutcome> sigma_triples;
  ExtensionStats extensions;
  StepwiseStats stepwise;
  std::vector<std::string> mismatches;
  std::vector<std::string> notes;  // per-triple disagreements on non-normal maps

  bool consistent() const { return mismatches.empty(); }
};

// Evaluates (A)-(D) per triple for every nonempty open O of Y, ordered pair of
// disjoint closed subsets of f^{-1}O and y in O, then compares at the
// instance level.
HarnessReport equivalence_harness(const FiberedMap& f, const HarnessOptions& opt = {});

}  // namespace fibertop
