#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibertop/oscillation.hpp"
#include "fibertop/partitions.hpp"
#include "fibertop/space.hpp"

namespace fibertop {

struct SeparationCertificate {
  int y = 0;
  PointSet oy;
  PointSet u;        // open in f^{-1} oy, contains a_trace
  PointSet v;        // open in f^{-1} oy, contains b_trace
  PointSet a_trace;  // A & f^{-1} oy
  PointSet b_trace;
};

// Independent re-check of the certificate invariants against f.
bool verify_separation(const FiberedMap& f, const SeparationCertificate& c);

// Separation of A and B at y for the restriction f_O: neighborhoods of y
// inside O are tried in ascending order, and for each one every pair of
// disjoint subspace opens is searched.
std::optional<SeparationCertificate> separate_at(const FiberedMap& f, PointSet o, PointSet a, PointSet b, int y);

struct SeparationReport {
  bool holds = false;
  std::vector<SeparationCertificate> certificates;
  std::optional<int> failing_y;
};

SeparationReport are_f_separated(const FiberedMap& f, PointSet a, PointSet b);

// Generic evidence record shared by the deciders. `o` is the restriction
// target in Y, `carrier` an X-side set (open set, subspace, ...), `f_set` /
// `t_set` the offending pair when there is one.
struct Counterexample {
  std::string kind;
  PointSet o;
  PointSet carrier;
  PointSet f_set;
  PointSet t_set;
  int y = -1;
};

struct Witness {
  int y = 0;
  PointSet oy;
  std::vector<PointSet> sets;
  std::vector<RationalFunction> functions;
};

struct DeciderReport {
  bool holds = false;
  std::vector<Witness> witnesses;
  std::optional<Counterexample> counterexample;
};

struct DeciderOptions {
  int max_witnesses = 32;
  int depth = 6;  // partition depth for constructive routes
};

// Closed subsets of the subspace `w` (w open), ascending by mask.
std::vector<PointSet> closed_sets_in(const FiniteSpace& space, PointSet w);

DeciderReport is_prenormal(const FiberedMap& f, const DeciderOptions& opt = {});
DeciderReport is_prenormal_within(const FiberedMap& f, PointSet o, const DeciderOptions& opt = {});
DeciderReport is_normal(const FiberedMap& f, const DeciderOptions& opt = {});

struct SigmaSeparationCertificate {
  int y = 0;
  PointSet oy;
  std::vector<PointSet> t_pieces;  // T_l
  std::vector<PointSet> v;         // V_l, open in f^{-1} oy
};

bool verify_sigma_separation(const FiberedMap& f, PointSet f_set, const SigmaSeparationCertificate& c);

std::optional<SigmaSeparationCertificate> sigma_separate_at(const FiberedMap& f, PointSet o, PointSet f_set,
                                                            const std::vector<PointSet>& t_pieces, int y);

DeciderReport is_sigma_prenormal_within(const FiberedMap& f, PointSet o, const DeciderOptions& opt = {});
DeciderReport is_sigma_prenormal(const FiberedMap& f, const DeciderOptions& opt = {});
DeciderReport is_sigma_normal(const FiberedMap& f, const DeciderOptions& opt = {});

struct SmallUrysohnResult {
  PointSet oy;
  std::vector<PointSet> v;
};

// T_l closed in f^{-1}O, union inside U, U open in f^{-1}O. Throws kNotFound.
SmallUrysohnResult small_urysohn_search(const FiberedMap& f, PointSet o, const std::vector<PointSet>& t_list,
                                        PointSet u, int y);

struct BuildOptions {
  int depth = 6;
  // Stop once two consecutive levels repeat; the limit is then exact.
  bool stop_when_stationary = false;
};

ConsistentBinaryFamily build_binary_partitions(const FiberedMap& f, PointSet o, PointSet f_set, PointSet t_set,
                                               int y, const BuildOptions& opt = {});

std::vector<ConsistentBinaryFamily> build_binary_partitions_sigma(const FiberedMap& f, PointSet o,
                                                                  PointSet f_set,
                                                                  const std::vector<PointSet>& t_list, int y,
                                                                  const BuildOptions& opt = {});

// Conditions (a)/(b) of the partition lemma on every level n >= 1.
bool family_separates(const ConsistentBinaryFamily& family, PointSet f_set, PointSet t_set);

DeciderReport is_perfectly_normal(const FiberedMap& f, const DeciderOptions& opt = {});

DeciderReport is_f_functionally_open(const FiberedMap& f, PointSet u, const DeciderOptions& opt = {});
DeciderReport is_f_functionally_closed(const FiberedMap& f, PointSet c, const DeciderOptions& opt = {});

DeciderReport is_co_perfectly_normal(const FiberedMap& f, const DeciderOptions& opt = {});
DeciderReport is_co_sigma_perfectly_normal(const FiberedMap& f, const DeciderOptions& opt = {});
DeciderReport is_hereditarily_normal(const FiberedMap& f, const DeciderOptions& opt = {});

// Functional condition characterizing co-sigma-perfect normality: families
// phi_l (from separators) and psi_l (open-set families) for every O, open
// U in f^{-1}O, F_sigma F inside U and y in O.
DeciderReport co_sigma_functional_condition(const FiberedMap& f, const DeciderOptions& opt = {});

}  // namespace fibertop
