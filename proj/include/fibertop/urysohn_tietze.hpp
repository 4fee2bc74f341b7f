#pragma once

#include <optional>
#include <vector>

#include "fibertop/normality.hpp"
#include "fibertop/oscillation.hpp"
#include "fibertop/partitions.hpp"

namespace fibertop {

struct ConditionCReport {
  bool neighborhood_ok = false;  // oy open, y in oy, oy inside O
  Rational osc;                  // osc_phi(f^{-1} oy)
  bool osc_ok = false;           // osc < 1/2
  bool range_ok = false;         // phi(X) inside [0,1]
  bool f_side_zero = false;      // F & W inside phi^{-1}(0)
  bool t_side_one = false;       // T & W inside phi^{-1}(1)
  bool f_side_misses_closure = false;  // F & W misses cl_W(phi^{-1}[1/2,1] & W)
  bool t_side_in_interior = false;     // T & W inside int_W(phi^{-1}[1/2,1] & W)

  bool all() const {
    return neighborhood_ok && osc_ok && range_ok && f_side_zero && t_side_one && f_side_misses_closure &&
           t_side_in_interior;
  }
};

ConditionCReport verify_condition_C(const FiberedMap& f, PointSet o, PointSet f_set, PointSet t_set, int y,
                                    const RationalFunction& phi, PointSet oy);

struct SeparatorResult {
  ApproximateLimitFunction phi;
  PointSet oy;
  ConditionCReport checks;
  ConsistentBinaryFamily family;
};

// Partition family, then the limit function; oy is the level-2 neighborhood.
// Throws kCheckFailed when the condition (C) checks do not all pass.
SeparatorResult build_separator(const FiberedMap& f, PointSet o, PointSet f_set, PointSet t_set, int y,
                                const BuildOptions& opt = {});

struct TietzeOptions {
  std::optional<int> max_iter;  // default: smallest N with (2/3)^N mu_0 < tolerance
  Rational tolerance = Rational(1, 1024);
  BuildOptions build{6, true};
  bool fail_on_truncation = false;  // throw kMaxIterReached instead of certifying
};

struct ExtensionResult {
  RationalFunction phi;          // the extension reported
  RationalFunction partial_sum;  // sum of psi_n, n < N
  PointSet agreement_set;        // F points where phi equals phi_tilde
  bool norm_ok = false;          // ||phi|| <= ||phi_tilde||
  std::vector<Rational> residuals;  // mu_0 .. mu_N
  int iterations = 0;
  // phi is the exact infinite sum on f^{-1}U_y (partial sum elsewhere);
  // otherwise phi is the partial sum.
  bool exact = false;
  PointSet unresolved;  // points of f^{-1}U_y whose limit was not identified
  std::vector<PointSet> neighborhoods;  // O_0 .. O_{N-1}
  Rational error_bound;  // mu_N
};

// phi_tilde is read on F only (a table over X whose other values are ignored).
ExtensionResult tietze_extend(const FiberedMap& f, PointSet o, PointSet f_set, const RationalFunction& phi_tilde,
                              int y, const TietzeOptions& opt = {});

struct ConditionDReport {
  bool a = false;  // phi = phi_tilde on F & f^{-1}G for an open G containing y
  PointSet g;
  bool b = false;  // ||phi|| <= ||phi_tilde|| (norm of phi_tilde taken over F)
  bool c = false;  // epsilon sweep and the minimal-neighborhood form both hold
  std::vector<std::pair<Rational, PointSet>> eps_neighborhoods;
  bool c_minimal = false;
  bool continuous = false;  // osc_phi(f^{-1}U_y) = 0

  bool all() const { return a && b && c && continuous; }
};

ConditionDReport verify_condition_D(const FiberedMap& f, PointSet o, PointSet f_set,
                                    const RationalFunction& phi_tilde, const RationalFunction& phi, int y);

struct ExtensionSeparation {
  SeparationCertificate certificate;
  std::optional<ExtensionResult> extension;  // absent when F and T are both empty
};

// Two-valued phi_tilde (0 on F, 1 on T), its extension, then the interiors
// of phi^{-1}[0,1/4] and phi^{-1}[3/4,1] near y.
ExtensionSeparation separation_from_extension(const FiberedMap& f, PointSet o, PointSet f_set, PointSet t_set,
                                              int y, const TietzeOptions& opt = {});

struct SigmaSeparatorResult {
  PointSet oy;
  std::vector<PointSet> t_pieces;
  std::vector<ApproximateLimitFunction> phis;
  bool pieces_closed = false;  // (a)
  bool osc_ok = false;         // (b)
  bool values_ok = false;      // (c)
  bool int_cl_ok = false;      // (d)
  bool equicontinuous = false;

  bool all() const { return pieces_closed && osc_ok && values_ok && int_cl_ok && equicontinuous; }
};

SigmaSeparatorResult sigma_separator_family(const FiberedMap& f, PointSet o, PointSet f_set,
                                            const std::vector<PointSet>& t_list, int y,
                                            const BuildOptions& opt = {});

}  // namespace fibertop
