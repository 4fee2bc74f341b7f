#include "fibertop/harness.hpp"

#include <algorithm>

namespace fibertop {

namespace {

std::string describe(const char* what, PointSet o, PointSet f_set, PointSet t_set, int y) {
  return std::string(what) + " at O=" + to_string(o) + " F=" + to_string(f_set) + " T=" + to_string(t_set) +
         " y=" + std::to_string(y);
}

void record_stepwise(const ConsistentBinaryFamily& family, StepwiseStats& stats) {
  const FiberedMap& f = family.map();
  ++stats.families;
  std::vector<RationalFunction> phis;
  for (int n = 0; n <= family.depth(); ++n) {
    try {
      phis.push_back(stepwise_function(family, n));
    } catch (const Error&) {
      ++stats.osc_violations;
      return;
    }
  }
  for (int n = 1; n <= family.depth(); ++n) {
    const Rational bound = 1 / Rational((mpz_class(1) << n) - 1);
    if (osc_on_set(f.domain(), phis[static_cast<std::size_t>(n)], f.preimage(family.level(n).o)) > bound) {
      ++stats.osc_violations;
    }
  }
  for (int n = 0; n < family.depth(); ++n) {
    const Rational bound = 1 / Rational((mpz_class(1) << (n + 1)) - 1);
    bool ok = true;
    f.preimage(family.level(n + 1).o).for_each([&](int x) {
      auto i = static_cast<std::size_t>(n);
      if (abs_of(phis[i + 1](x) - phis[i](x)) > bound) ok = false;
    });
    if (!ok) ++stats.increment_violations;
  }
}

void record_extension(const FiberedMap& f, PointSet f_set, const RationalFunction& tilde, int y,
                      const ExtensionResult& ext, ExtensionStats& stats) {
  ++stats.runs;
  if (ext.exact) ++stats.exact;
  for (std::size_t n = 0; n + 1 < ext.residuals.size(); ++n) {
    if (ext.residuals[n + 1] > Rational(2, 3) * ext.residuals[n]) {
      ++stats.residual_violations;
      break;
    }
  }
  const Rational mu0 = norm_on(tilde, f_set);
  if (!(norm(ext.phi) <= mu0)) ++stats.norm_violations;
  const PointSet core = f_set & f.fiber_neighborhood(y);
  bool agree = true;
  bool within = true;
  Rational geometric = mu0;
  for (int n = 0; n < ext.iterations; ++n) geometric *= Rational(2, 3);
  core.for_each([&](int x) {
    if (ext.exact && ext.phi(x) != tilde(x)) agree = false;
    if (abs_of(ext.partial_sum(x) - tilde(x)) > ext.error_bound) within = false;
  });
  if (ext.error_bound > geometric) within = false;
  if (!agree) ++stats.agreement_violations;
  if (!within) ++stats.bound_violations;
}

}  // namespace

HarnessReport equivalence_harness(const FiberedMap& f, const HarnessOptions& opt) {
  const FiniteSpace& xs = f.domain();
  const FiniteSpace& ys = f.codomain();
  HarnessReport r;
  DeciderOptions dopt;
  dopt.depth = opt.depth;
  dopt.max_witnesses = 0;
  r.normal = is_normal(f, dopt).holds;

  const BuildOptions full{opt.depth, false};
  TietzeOptions topt;
  topt.tolerance = opt.tolerance;
  topt.build = BuildOptions{opt.depth, true};

  for (PointSet o : ys.opens()) {
    if (o.empty()) continue;
    const PointSet w = f.preimage(o);
    const std::vector<PointSet> closed = closed_sets_in(xs, w);
    for (PointSet fs : closed) {
      for (PointSet ts : closed) {
        if (fs.intersects(ts)) continue;
        for (int y : o.points()) {
          TripleOutcome t{o, fs, ts, y, false, false, false, false, {}};
          t.a = separate_at(f, o, fs, ts, y).has_value();
          try {
            ConsistentBinaryFamily family = build_binary_partitions(f, o, fs, ts, y, full);
            t.b = true;
            record_stepwise(family, r.stepwise);
            ApproximateLimitFunction phi = assemble_limit(family);
            t.c = verify_condition_C(f, o, fs, ts, y, phi.phi, family.level(2).o).all();
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kSearchFailed) t.note = e.what();
          }
          try {
            ExtensionSeparation sep = separation_from_extension(f, o, fs, ts, y, topt);
            t.d = verify_separation(f, sep.certificate);
            if (sep.extension) {
              RationalFunction tilde = RationalFunction::indicator(f.domain_ptr(), ts);
              record_extension(f, fs | ts, tilde, y, *sep.extension, r.extensions);
              t.d = t.d && verify_condition_D(f, o, fs | ts, tilde, sep.extension->phi, y).all();
            }
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kSearchFailed) t.note += std::string(t.note.empty() ? "" : "; ") + e.what();
          }
          r.all_b = r.all_b && t.b;
          r.all_c = r.all_c && t.c;
          r.all_d = r.all_d && t.d;
          if (t.b != t.c) r.mismatches.push_back(describe("B and C differ", o, fs, ts, y));
          if (t.c && !t.a) r.mismatches.push_back(describe("C holds without A", o, fs, ts, y));
          if (t.d && !t.a) r.mismatches.push_back(describe("D holds without A", o, fs, ts, y));
          if (r.normal && !(t.a && t.b && t.c && t.d)) {
            r.mismatches.push_back(describe("normal map fails a condition", o, fs, ts, y) +
                                   (t.note.empty() ? "" : " (" + t.note + ")"));
          } else if (!r.normal && !(t.a == t.b && t.b == t.d)) {
            r.notes.push_back(describe("conditions differ", o, fs, ts, y));
          }
          r.triples.push_back(std::move(t));
        }
      }
    }
  }
  if (r.normal != r.all_b) r.mismatches.push_back("instance: A and B differ");
  if (r.normal != r.all_c) r.mismatches.push_back("instance: A and C differ");
  if (r.normal != r.all_d) r.mismatches.push_back("instance: A and D differ");

  if (opt.sigma) {
    r.sigma_normal = is_sigma_normal(f, dopt).holds;
    for (PointSet o : ys.opens()) {
      if (o.empty()) continue;
      const PointSet w = f.preimage(o);
      for (PointSet fs : closed_sets_in(xs, w)) {
        const Mask rest = (w - fs).bits();
        for (Mask sub = rest;; sub = (sub - 1) & rest) {
          PointSet ts(sub);
          FSigmaDecomposition dec = is_f_sigma_in(xs, w, ts);
          if (!ts.empty() && dec.holds) {
            std::vector<PointSet> pieces = dec.pieces;
            std::sort(pieces.begin(), pieces.end());
            pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
            for (int y : o.points()) {
              SigmaOutcome s{o, fs, ts, y};
              s.a = sigma_separate_at(f, o, fs, pieces, y).has_value();
              try {
                SigmaSeparatorResult res = sigma_separator_family(f, o, fs, pieces, y, full);
                s.b = true;
                s.c = res.all();
              } catch (const Error&) {
              }
              r.sigma_all_b = r.sigma_all_b && s.b;
              r.sigma_all_c = r.sigma_all_c && s.c;
              if (s.b != s.c) r.mismatches.push_back(describe("sigma: B and C differ", o, fs, ts, y));
              if (s.c && !s.a) r.mismatches.push_back(describe("sigma: C holds without A", o, fs, ts, y));
              if (r.sigma_normal && !(s.a && s.b && s.c)) {
                r.mismatches.push_back(describe("sigma-normal map fails a condition", o, fs, ts, y));
              }
              r.sigma_triples.push_back(s);
            }
          }
          if (sub == 0) break;
        }
      }
    }
    if (r.sigma_normal != r.sigma_all_b) r.mismatches.push_back("instance: sigma A and B differ");
    if (r.sigma_normal != r.sigma_all_c) r.mismatches.push_back("instance: sigma A and C differ");
  }

  if (opt.functional) {
    r.co_sigma_perfect = is_co_sigma_perfectly_normal(f, dopt).holds;
    r.functional_condition = co_sigma_functional_condition(f, dopt).holds;
    if (r.co_sigma_perfect != r.functional_condition) {
      r.mismatches.push_back("instance: co-sigma-perfect normality and the functional condition differ");
    }
  }
  return r;
}

}  // namespace fibertop
