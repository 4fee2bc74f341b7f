// Acceptance run: one PASS/FAIL line per criterion, plus a JSON report.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibertop/census.hpp"
#include "fibertop/commands.hpp"
#include "fibertop/harness.hpp"
#include "fibertop/normality.hpp"
#include "fibertop/partitions.hpp"
#include "fibertop/urysohn_tietze.hpp"
#include "oracles.hpp"

using namespace fibertop;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 20261018;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every labeled topology on n points: one minimal neighborhood per point,
// kept when the choice is transitive.
std::vector<FiniteSpace> labeled_topologies(int n) {
  std::vector<FiniteSpace> out;
  std::vector<PointSet> u(static_cast<std::size_t>(n));
  const Mask full = PointSet::full(n).bits();
  auto visit = [&](auto&& self, int x) -> void {
    if (x == n) {
      for (int a = 0; a < n; ++a) {
        bool ok = true;
        u[static_cast<std::size_t>(a)].for_each([&](int z) {
          ok = ok && u[static_cast<std::size_t>(z)].subset_of(u[static_cast<std::size_t>(a)]);
        });
        if (!ok) return;
      }
      out.push_back(FiniteSpace::from_minimal_neighborhoods(u, n));
      return;
    }
    const Mask self_bit = Mask{1} << x;
    const Mask others = full & ~self_bit;
    for (Mask sub = 0;; sub = (sub - others) & others) {
      u[static_cast<std::size_t>(x)] = PointSet(sub | self_bit);
      self(self, x + 1);
      if (sub == others) break;
    }
  };
  visit(visit, 0);
  return out;
}

struct Line {
  int id;
  bool pass;
  std::string detail;
};

json criterion_1(std::vector<Line>& lines) {
  auto t0 = std::chrono::steady_clock::now();
  oracle::Gen gen(kSeed);
  long comparisons = 0, mismatches = 0;
  int spaces = 0;
  for (int n = 1; n <= 4; ++n) {
    for (FiniteSpace& s : labeled_topologies(n)) {
      ++spaces;
      SpacePtr sp = share(std::move(s));
      for (int k = 0; k < 200; ++k) {
        RationalFunction phi = gen.function(sp);
        for (int x = 0; x < n; ++x) {
          ++comparisons;
          if (osc_at_point(*sp, phi, x) != oracle::osc_exhaustive(*sp, phi, x)) ++mismatches;
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  lines.push_back({1, mismatches == 0 && secs < 10,
                   std::to_string(spaces) + " spaces, " + std::to_string(comparisons) + " comparisons, " +
                       std::to_string(mismatches) + " mismatches, " + std::to_string(secs) + " s"});
  return {{"spaces", spaces}, {"comparisons", comparisons}, {"mismatches", mismatches}};
}

json criterion_2(std::vector<Line>& lines) {
  auto t0 = std::chrono::steady_clock::now();
  long found = 0, violations = 0, disagreements = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const FiniteSpace& s : labeled_topologies(n)) {
      for (int k = 3; k <= 6; ++k) {
        std::vector<int> assign(static_cast<std::size_t>(n), 0);
        while (true) {
          std::vector<PointSet> blocks(static_cast<std::size_t>(k));
          for (int x = 0; x < n; ++x) blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(x)])] |= PointSet::single(x);
          std::optional<RegularKPartition> p;
          try {
            p = validate_regular_partition(s, s.points(), blocks);
          } catch (const Error&) {
          }
          // Independent reading of the definition.
          bool regular = true;
          PointSet prefix;
          for (int m = 0; m < k; ++m) {
            prefix |= blocks[static_cast<std::size_t>(m)];
            if (oracle::closure(s, prefix) != prefix) regular = false;
            PointSet tail;
            for (int j = m + 2; j < k; ++j) tail |= blocks[static_cast<std::size_t>(j)];
            if (prefix.intersects(oracle::closure(s, tail))) regular = false;
          }
          if (regular != p.has_value()) ++disagreements;
          if (p) {
            ++found;
            PointSet cover;
            for (int m = 0; m + 1 < k; ++m) {
              cover |= oracle::interior(s, blocks[static_cast<std::size_t>(m)] | blocks[static_cast<std::size_t>(m + 1)]);
            }
            if (cover != s.points() || !interiors_cover_check(s, *p)) ++violations;
          }
          int i = 0;
          while (i < n && assign[static_cast<std::size_t>(i)] == k - 1) assign[static_cast<std::size_t>(i++)] = 0;
          if (i == n) break;
          ++assign[static_cast<std::size_t>(i)];
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  lines.push_back({2, violations == 0 && disagreements == 0 && found > 0 && secs < 60,
                   std::to_string(found) + " regular partitions (k = 3..6), " + std::to_string(violations) +
                       " violations, " + std::to_string(disagreements) + " validator disagreements, " +
                       std::to_string(secs) + " s"});
  return {{"partitions", found}, {"violations", violations}, {"validator_disagreements", disagreements}};
}

struct HarnessTotals {
  std::size_t maps = 0, triples = 0, sigma_triples = 0, normal = 0, sigma_normal = 0;
  std::vector<std::string> plain, sigma, functional;
  ExtensionStats ext;
  StepwiseStats step;
  std::string digest;
};

HarnessTotals run_harness() {
  std::vector<FiberedMap> maps = enumerate_maps(6);
  std::vector<std::optional<HarnessReport>> slots(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) { slots[i] = equivalence_harness(maps[i]); });
  HarnessTotals t;
  t.maps = maps.size();
  std::string digests;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const HarnessReport& h = *slots[i];
    t.triples += h.triples.size();
    t.sigma_triples += h.sigma_triples.size();
    t.normal += h.normal;
    t.sigma_normal += h.sigma_normal;
    for (const std::string& m : h.mismatches) {
      std::string tagged = "map " + std::to_string(i) + ": " + m;
      if (m.find("functional") != std::string::npos) {
        t.functional.push_back(tagged);
      } else if (m.find("sigma") != std::string::npos) {
        t.sigma.push_back(tagged);
      } else {
        t.plain.push_back(tagged);
      }
    }
    t.ext.runs += h.extensions.runs;
    t.ext.exact += h.extensions.exact;
    t.ext.residual_violations += h.extensions.residual_violations;
    t.ext.norm_violations += h.extensions.norm_violations;
    t.ext.agreement_violations += h.extensions.agreement_violations;
    t.ext.bound_violations += h.extensions.bound_violations;
    t.step.families += h.stepwise.families;
    t.step.osc_violations += h.stepwise.osc_violations;
    t.step.increment_violations += h.stepwise.increment_violations;
    std::string row;
    for (const TripleOutcome& o : h.triples) {
      row += std::to_string(o.o.bits()) + "," + std::to_string(o.f_set.bits()) + "," + std::to_string(o.t_set.bits()) +
             "," + std::to_string(o.y) + "," + (o.a ? "1" : "0") + (o.b ? "1" : "0") + (o.c ? "1" : "0") +
             (o.d ? "1" : "0") + ";";
    }
    for (const SigmaOutcome& o : h.sigma_triples) {
      row += std::to_string(o.o.bits()) + "," + std::to_string(o.f_set.bits()) + "," + std::to_string(o.t_set.bits()) +
             "," + std::to_string(o.y) + "," + (o.a ? "1" : "0") + (o.b ? "1" : "0") + (o.c ? "1" : "0") + ";";
    }
    digests += fnv1a_hex(row);
  }
  t.digest = fnv1a_hex(digests);
  return t;
}

std::string first_or_none(const std::vector<std::string>& v) { return v.empty() ? "" : ", first: " + v.front(); }

json criteria_3_to_6(std::vector<Line>& lines, const HarnessTotals& t, double secs) {
  lines.push_back({3, t.step.families > 0 && t.step.osc_violations == 0 && t.step.increment_violations == 0,
                   std::to_string(t.step.families) + " families, " + std::to_string(t.step.osc_violations) +
                       " oscillation and " + std::to_string(t.step.increment_violations) + " increment violations"});
  lines.push_back({4, t.plain.empty() && t.triples > 0,
                   std::to_string(t.maps) + " maps, " + std::to_string(t.triples) + " triples, " +
                       std::to_string(t.normal) + " normal, " + std::to_string(t.plain.size()) + " mismatches, " +
                       std::to_string(secs) + " s" + first_or_none(t.plain)});
  const ExtensionStats& e = t.ext;
  lines.push_back({5,
                   e.runs > 0 && e.residual_violations == 0 && e.norm_violations == 0 && e.agreement_violations == 0 &&
                       e.bound_violations == 0,
                   std::to_string(e.runs) + " extensions (" + std::to_string(e.exact) + " exact), residual " +
                       std::to_string(e.residual_violations) + ", norm " + std::to_string(e.norm_violations) +
                       ", agreement " + std::to_string(e.agreement_violations) + ", bound " +
                       std::to_string(e.bound_violations) + " violations"});
  lines.push_back({6, t.sigma.empty() && t.sigma_triples > 0,
                   std::to_string(t.sigma_triples) + " sigma triples, " + std::to_string(t.sigma_normal) +
                       " sigma-normal maps, " + std::to_string(t.sigma.size()) + " mismatches" +
                       first_or_none(t.sigma)});
  return {{"maps", t.maps},
          {"triples", t.triples},
          {"sigma_triples", t.sigma_triples},
          {"normal", t.normal},
          {"sigma_normal", t.sigma_normal},
          {"mismatches", t.plain},
          {"sigma_mismatches", t.sigma},
          {"functional_mismatches", t.functional},
          {"stepwise", {{"families", t.step.families}, {"osc", t.step.osc_violations},
                        {"increment", t.step.increment_violations}}},
          {"extensions", {{"runs", e.runs}, {"exact", e.exact}, {"residual", e.residual_violations},
                          {"norm", e.norm_violations}, {"agreement", e.agreement_violations},
                          {"bound", e.bound_violations}}},
          {"digest", t.digest}};
}

json criterion_7(std::vector<Line>& lines, const HarnessTotals& t) {
  std::vector<CensusRecord> records = run_census(enumerate_maps(6), CensusOptions{6, true});
  long violations = 0;
  std::string first;
  json counts = json::object();
  for (const CensusRecord& r : records) {
    const Classification& c = r.cls;
    counts["perfectly_normal"] = counts.value("perfectly_normal", 0) + (c.perfectly_normal ? 1 : 0);
    counts["co_perfect"] = counts.value("co_perfect", 0) + (c.co_perfect ? 1 : 0);
    counts["co_sigma_perfect"] = counts.value("co_sigma_perfect", 0) + (c.co_sigma_perfect ? 1 : 0);
    counts["hereditarily_normal"] = counts.value("hereditarily_normal", 0) + (c.hereditarily_normal ? 1 : 0);
    violations += static_cast<long>(r.violations.size());
    if (first.empty() && !r.violations.empty()) first = "map " + std::to_string(r.id) + ": " + r.violations[0];
  }
  violations += static_cast<long>(t.functional.size());
  if (first.empty() && !t.functional.empty()) first = t.functional[0];
  lines.push_back({7, violations == 0,
                   std::to_string(records.size()) + " maps, " + std::to_string(violations) + " violations" +
                       (first.empty() ? "" : ", first: " + first)});
  return {{"maps", records.size()}, {"counts", counts}, {"violations", violations}};
}

// phi_tilde constant on each component of F.
RationalFunction data_on(oracle::Gen& gen, const SpacePtr& s, PointSet f_set) {
  std::vector<Rational> v(static_cast<std::size_t>(s->size()), Rational(0));
  for (PointSet c : oracle::components(*s, f_set)) {
    Rational q = gen.rational();
    c.for_each([&](int x) { v[static_cast<std::size_t>(x)] = q; });
  }
  return RationalFunction(s, v);
}

json criterion_8(std::vector<Line>& lines) {
  oracle::Gen gen(kSeed + 8);
  long spaces = 0, pairs = 0, extensions = 0, disagreements = 0;
  std::string first;
  auto disagree = [&](const std::string& what) {
    ++disagreements;
    if (first.empty()) first = what;
  };
  for (int n = 1; n <= 5; ++n) {
    for (FiniteSpace& raw : enumerate_topologies(n)) {
      if (!oracle::space_normal(raw)) continue;
      ++spaces;
      SpacePtr x = share(std::move(raw));
      FiberedMap c = FiberedMap::constant(x);
      const PointSet all = c.codomain().points();
      std::vector<PointSet> closed = oracle::closed_in(*x, x->points());
      for (PointSet a : closed) {
        for (PointSet b : closed) {
          if (a.intersects(b)) continue;
          ++pairs;
          oracle::ClassicalContract u = oracle::classical_urysohn(x, a, b);
          bool ours_zero_one = false, ours_continuous = false;
          try {
            SeparatorResult sep = build_separator(c, all, a, b, 0);
            ours_zero_one = true;
            a.for_each([&](int p) { ours_zero_one = ours_zero_one && sep.phi.phi(p) == 0; });
            b.for_each([&](int p) { ours_zero_one = ours_zero_one && sep.phi.phi(p) == 1; });
            ours_continuous = oracle::continuous_on(*x, x->points(), sep.phi.phi);
          } catch (const Error&) {
          }
          if (ours_zero_one != (u.exists && u.agrees) || ours_continuous != u.continuous) {
            disagree("separator on space " + std::to_string(spaces) + " F=" + to_string(a) + " T=" + to_string(b));
          }
        }
        for (int k = 0; k < 3; ++k) {
          RationalFunction phi_tilde = data_on(gen, x, a);
          ++extensions;
          oracle::ClassicalContract t = oracle::classical_tietze(x, a, phi_tilde);
          bool agrees = false, norm_ok = false, continuous = false;
          try {
            ExtensionResult ext = tietze_extend(c, all, a, phi_tilde, 0);
            agrees = true;
            a.for_each([&](int p) { agrees = agrees && ext.phi(p) == phi_tilde(p); });
            norm_ok = norm(ext.phi) <= norm_on(phi_tilde, a);
            continuous = oracle::continuous_on(*x, x->points(), ext.phi);
          } catch (const Error&) {
          }
          if (agrees != (t.exists && t.agrees) || norm_ok != t.norm_ok || continuous != t.continuous) {
            disagree("extension on space " + std::to_string(spaces) + " F=" + to_string(a));
          }
        }
      }
    }
  }
  lines.push_back({8, disagreements == 0 && pairs > 0,
                   std::to_string(spaces) + " normal spaces, " + std::to_string(pairs) + " separator pairs, " +
                       std::to_string(extensions) + " extensions, " + std::to_string(disagreements) +
                       " contract disagreements" + (first.empty() ? "" : ", first: " + first)});
  return {{"spaces", spaces}, {"pairs", pairs}, {"extensions", extensions}, {"disagreements", disagreements}};
}

std::string run_all(std::vector<Line>& lines) {
  json report;
  report["seed"] = kSeed;
  report["criterion_1"] = criterion_1(lines);
  report["criterion_2"] = criterion_2(lines);
  auto t0 = std::chrono::steady_clock::now();
  HarnessTotals totals = run_harness();
  report["criteria_3_to_6"] = criteria_3_to_6(lines, totals, seconds_since(t0));
  report["criterion_7"] = criterion_7(lines, totals);
  report["criterion_8"] = criterion_8(lines);
  return report.dump(2) + "\n";
}

}  // namespace

int main() {
  std::vector<Line> first, second;
  const std::string a = run_all(first);
  const std::string b = run_all(second);
  std::ofstream("acceptance_report.json") << a;
  first.push_back({9, a == b, "two runs, " + std::to_string(a.size()) + " bytes of JSON, " +
                                  (a == b ? "identical" : "different")});
  std::sort(first.begin(), first.end(), [](const Line& l, const Line& r) { return l.id < r.id; });
  bool all = true;
  for (const Line& l : first) {
    std::printf("criterion %d: %s (%s)\n", l.id, l.pass ? "PASS" : "FAIL", l.detail.c_str());
    all = all && l.pass;
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
