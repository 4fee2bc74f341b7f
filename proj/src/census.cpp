#include "fibertop/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "fibertop/normality.hpp"

namespace fibertop {

namespace {

Mask permute(Mask m, const std::vector<int>& perm) {
  Mask out = 0;
  for (Mask b = m; b != 0; b &= b - 1) out |= Mask{1} << perm[static_cast<std::size_t>(std::countr_zero(b))];
  return out;
}

bool is_continuous(const FiniteSpace& xs, const FiniteSpace& ys, const std::vector<int>& table) {
  for (PointSet v : ys.opens()) {
    PointSet pre;
    for (int x = 0; x < xs.size(); ++x) {
      if (v.contains(table[static_cast<std::size_t>(x)])) pre |= PointSet::single(x);
    }
    if (!xs.is_open(pre)) return false;
  }
  return true;
}

// Independent space-level check: disjoint closed sets have disjoint open
// neighborhoods.
bool classically_normal(const FiniteSpace& xs) {
  std::vector<PointSet> closed;
  for (PointSet o : xs.opens()) closed.push_back(xs.points() - o);
  for (PointSet a : closed) {
    for (PointSet b : closed) {
      if (a.intersects(b)) continue;
      if (xs.up(a).intersects(xs.up(b))) return false;
    }
  }
  return true;
}

bool every_open_closed_union(const FiniteSpace& xs) {
  for (PointSet o : xs.opens()) {
    if (!is_f_sigma_subset(xs, o).holds) return false;
  }
  return true;
}

}  // namespace

std::vector<Mask> canonical_form(const FiniteSpace& space) {
  const int n = space.size();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Mask> best;
  do {
    std::vector<Mask> cur;
    cur.reserve(space.opens().size());
    for (PointSet o : space.opens()) cur.push_back(permute(o.bits(), perm));
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = std::move(cur);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<FiniteSpace> enumerate_topologies(int n) {
  if (n < 1 || n > 6) throw Error(ErrorCode::kInvalidArgument, "topology enumeration supports 1..6 points", {n});
  std::map<std::vector<Mask>, FiniteSpace> classes;
  std::vector<PointSet> u(static_cast<std::size_t>(n));
  const Mask full = PointSet::full(n).bits();
  // Backtrack over minimal neighborhoods, checking transitivity at the end.
  auto visit = [&](auto&& self, int x) -> void {
    if (x == n) {
      for (int a = 0; a < n; ++a) {
        bool ok = true;
        u[static_cast<std::size_t>(a)].for_each([&](int z) {
          if (!u[static_cast<std::size_t>(z)].subset_of(u[static_cast<std::size_t>(a)])) ok = false;
        });
        if (!ok) return;
      }
      FiniteSpace s = FiniteSpace::from_minimal_neighborhoods(u, n);
      std::vector<Mask> form = canonical_form(s);
      if (!classes.count(form)) {
        std::vector<PointSet> opens;
        for (Mask m : form) opens.emplace_back(m);
        classes.emplace(form, FiniteSpace::from_opens(n, std::move(opens), n));
      }
      return;
    }
    const Mask self_bit = Mask{1} << x;
    const Mask others = full & ~self_bit;
    for (Mask sub = 0;; sub = (sub - others) & others) {
      u[static_cast<std::size_t>(x)] = PointSet(sub | self_bit);
      self(self, x + 1);
      if (((sub - others) & others) == 0) break;
    }
  };
  visit(visit, 0);
  std::vector<FiniteSpace> out;
  for (auto& [form, space] : classes) out.push_back(space);
  return out;
}

std::vector<FiberedMap> enumerate_maps(int max_total) {
  std::vector<std::vector<SpacePtr>> topo(static_cast<std::size_t>(std::max(max_total, 1)));
  for (int n = 1; n < max_total; ++n) {
    for (FiniteSpace& s : enumerate_topologies(n)) topo[static_cast<std::size_t>(n)].push_back(share(std::move(s)));
  }
  std::vector<FiberedMap> out;
  for (int nx = 1; nx < max_total; ++nx) {
    for (int ny = 1; nx + ny <= max_total; ++ny) {
      for (const SpacePtr& xs : topo[static_cast<std::size_t>(nx)]) {
        for (const SpacePtr& ys : topo[static_cast<std::size_t>(ny)]) {
          std::vector<int> table(static_cast<std::size_t>(nx), 0);
          while (true) {
            if (is_continuous(*xs, *ys, table)) out.emplace_back(xs, ys, table);
            std::size_t i = 0;
            while (i < table.size() && table[i] == ny - 1) table[i++] = 0;
            if (i == table.size()) break;
            ++table[i];
          }
        }
      }
    }
  }
  return out;
}

namespace {

FiniteSpace random_space(int n, std::mt19937_64& rng) {
  std::vector<PointSet> u(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    u[static_cast<std::size_t>(x)] = PointSet::single(x);
    for (int z = 0; z < n; ++z) {
      if (z != x && rng() % 3 == 0) u[static_cast<std::size_t>(x)] |= PointSet::single(z);
    }
  }
  // Transitive closure of the specialization relation.
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      PointSet cur = u[static_cast<std::size_t>(x)];
      PointSet grown = cur;
      cur.for_each([&](int z) { grown |= u[static_cast<std::size_t>(z)]; });
      if (grown != cur) {
        u[static_cast<std::size_t>(x)] = grown;
        changed = true;
      }
    }
  }
  return FiniteSpace::from_minimal_neighborhoods(u, n);
}

}  // namespace

std::vector<FiberedMap> sample_maps(int total, int count, std::uint64_t seed) {
  if (total < 2 || total > 12) throw Error(ErrorCode::kInvalidArgument, "sample size must be in 2..12", {total});
  std::mt19937_64 rng(seed);
  std::vector<FiberedMap> out;
  for (int i = 0; i < count; ++i) {
    const int nx = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(total - 1));
    const int ny = total - nx;
    SpacePtr xs = share(random_space(nx, rng));
    SpacePtr ys = share(random_space(ny, rng));
    std::vector<int> table(static_cast<std::size_t>(nx));
    bool found = false;
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      for (int& t : table) t = static_cast<int>(rng() % static_cast<std::uint64_t>(ny));
      found = is_continuous(*xs, *ys, table);
    }
    if (!found) std::fill(table.begin(), table.end(), static_cast<int>(rng() % static_cast<std::uint64_t>(ny)));
    out.emplace_back(xs, ys, table);
  }
  return out;
}

Classification classify(const FiberedMap& f, int depth) {
  DeciderOptions opt;
  opt.depth = depth;
  opt.max_witnesses = 0;
  Classification c;
  c.prenormal = is_prenormal(f, opt).holds;
  c.normal = is_normal(f, opt).holds;
  c.sigma_prenormal = is_sigma_prenormal(f, opt).holds;
  c.sigma_normal = is_sigma_normal(f, opt).holds;
  c.perfectly_normal = is_perfectly_normal(f, opt).holds;
  c.co_perfect = is_co_perfectly_normal(f, opt).holds;
  c.co_sigma_perfect = is_co_sigma_perfectly_normal(f, opt).holds;
  c.hereditarily_normal = is_hereditarily_normal(f, opt).holds;
  return c;
}

CensusRecord census_record(std::size_t id, const FiberedMap& f, const CensusOptions& opt) {
  CensusRecord r{id, f, classify(f, opt.depth), {}};
  const Classification& c = r.cls;
  auto expect = [&](bool ok, const char* what) {
    if (!ok) r.violations.emplace_back(what);
  };
  expect(!c.co_sigma_perfect || c.perfectly_normal, "co-sigma-perfect without perfect normality");
  expect(!c.perfectly_normal || c.co_perfect, "perfect normality without co-perfect normality");
  expect(!c.perfectly_normal || c.prenormal, "perfect normality without prenormality");
  expect(!c.perfectly_normal || c.hereditarily_normal, "perfect normality without hereditary normality");
  expect(!c.sigma_normal || c.normal, "sigma-normal but not normal");
  expect(!c.normal || c.prenormal, "normal but not prenormal");
  expect(!c.sigma_normal || c.sigma_prenormal, "sigma-normal but not sigma-prenormal");

  DeciderOptions dopt;
  dopt.depth = opt.depth;
  dopt.max_witnesses = 0;
  if (opt.check_heredity && (c.perfectly_normal || c.sigma_normal)) {
    const Mask all = f.domain().points().bits();
    for (Mask sub = 0;; sub = (sub - all) & all) {
      Submapping s(f, PointSet(sub));
      if (c.perfectly_normal && !is_perfectly_normal(s.induced_map(), dopt).holds) {
        r.violations.push_back("submapping on " + to_string(PointSet(sub)) + " is not perfectly normal");
      }
      if (c.sigma_normal && is_f_sigma_carrier(f, PointSet(sub)).holds &&
          !is_sigma_normal(s.induced_map(), dopt).holds) {
        r.violations.push_back("F_sigma submapping on " + to_string(PointSet(sub)) + " is not sigma-normal");
      }
      if (((sub - all) & all) == 0) break;
    }
  }

  if (f.codomain().size() == 1) {
    const bool classical = classically_normal(f.domain());
    const bool vedenisov = classical && every_open_closed_union(f.domain());
    expect(c.prenormal == c.normal && c.normal == c.sigma_prenormal && c.sigma_prenormal == c.sigma_normal,
           "constant map: normality notions differ");
    expect(c.normal == classical, "constant map: normality differs from the space-level check");
    expect(c.perfectly_normal == c.co_perfect && c.co_perfect == c.co_sigma_perfect,
           "constant map: perfect normality notions differ");
    expect(c.perfectly_normal == vedenisov, "constant map: perfect normality differs from the Vedenisov check");
  }
  return r;
}

std::vector<CensusRecord> run_census(const std::vector<FiberedMap>& maps, const CensusOptions& opt) {
  std::vector<std::optional<CensusRecord>> slots(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) { slots[i] = census_record(i, maps[i], opt); });
  std::vector<CensusRecord> out;
  out.reserve(maps.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace fibertop
