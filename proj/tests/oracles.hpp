// Brute-force reference implementations and random generators for the tests.
// Nothing here calls the library's topology operators; only the data types
// (PointSet, FiniteSpace::opens(), Rational) are shared.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "fibertop/oscillation.hpp"
#include "fibertop/space.hpp"

namespace oracle {

using fibertop::FiberedMap;
using fibertop::FiniteSpace;
using fibertop::Mask;
using fibertop::PointSet;
using fibertop::Rational;
using fibertop::RationalFunction;

inline bool in_family(const std::vector<PointSet>& opens, PointSet s) {
  return std::find(opens.begin(), opens.end(), s) != opens.end();
}

inline std::vector<PointSet> all_subsets(PointSet of) {
  std::vector<PointSet> out;
  const Mask all = of.bits();
  for (Mask sub = 0;; sub = (sub - all) & all) {
    out.emplace_back(sub);
    if (sub == all) break;
  }
  return out;
}

// Intersection of all closed supersets.
inline PointSet closure(const FiniteSpace& s, PointSet a) {
  PointSet out = s.points();
  for (PointSet o : s.opens()) {
    PointSet c = s.points() - o;
    if (a.subset_of(c)) out &= c;
  }
  return out;
}

// Union of all opens inside a.
inline PointSet interior(const FiniteSpace& s, PointSet a) {
  PointSet out;
  for (PointSet o : s.opens()) {
    if (o.subset_of(a)) out |= o;
  }
  return out;
}

// Opens of the subspace topology on w: traces of ambient opens.
inline std::vector<PointSet> trace_opens(const FiniteSpace& s, PointSet w) {
  std::vector<PointSet> out;
  for (PointSet o : s.opens()) {
    if (!in_family(out, o & w)) out.push_back(o & w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational abs_diff(const Rational& a, const Rational& b) { return a > b ? Rational(a - b) : Rational(b - a); }

// inf over every open N containing x of sup_{z in N} |phi(x) - phi(z)|.
inline Rational osc_exhaustive(const FiniteSpace& s, const RationalFunction& phi, int x) {
  bool first = true;
  Rational best;
  for (PointSet o : s.opens()) {
    if (!o.contains(x)) continue;
    Rational sup = 0;
    o.for_each([&](int z) { sup = std::max(sup, abs_diff(phi(x), phi(z))); });
    if (first || sup < best) best = sup;
    first = false;
  }
  return best;
}

// The same in the subspace topology on w (x in w).
inline Rational osc_exhaustive_in(const FiniteSpace& s, PointSet w, const RationalFunction& phi, int x) {
  bool first = true;
  Rational best;
  for (PointSet o : trace_opens(s, w)) {
    if (!o.contains(x)) continue;
    Rational sup = 0;
    o.for_each([&](int z) { sup = std::max(sup, abs_diff(phi(x), phi(z))); });
    if (first || sup < best) best = sup;
    first = false;
  }
  return best;
}

inline PointSet preimage(const FiberedMap& f, PointSet b) {
  PointSet out;
  for (int x = 0; x < f.domain().size(); ++x) {
    if (b.contains(f(x))) out |= PointSet::single(x);
  }
  return out;
}

inline std::vector<PointSet> closed_in(const FiniteSpace& s, PointSet w) {
  std::vector<PointSet> out;
  for (PointSet o : trace_opens(s, w)) out.push_back(w - o);
  std::sort(out.begin(), out.end());
  return out;
}

// A and B are separated at y inside o: some open oy with y in oy inside o and
// disjoint opens of f^{-1}oy around the traces.
inline bool separated_at(const FiberedMap& f, PointSet o, PointSet a, PointSet b, int y) {
  for (PointSet oy : f.codomain().opens()) {
    if (!oy.contains(y) || !oy.subset_of(o)) continue;
    PointSet w = preimage(f, oy);
    std::vector<PointSet> ops = trace_opens(f.domain(), w);
    for (PointSet u : ops) {
      if (!(a & w).subset_of(u)) continue;
      for (PointSet v : ops) {
        if ((b & w).subset_of(v) && !u.intersects(v)) return true;
      }
    }
  }
  return false;
}

inline bool prenormal_within(const FiberedMap& f, PointSet o) {
  PointSet w = preimage(f, o);
  std::vector<PointSet> closed = closed_in(f.domain(), w);
  for (PointSet a : closed) {
    for (PointSet b : closed) {
      if (a.intersects(b)) continue;
      for (int y = 0; y < f.codomain().size(); ++y) {
        if (o.contains(y) && !separated_at(f, o, a, b, y)) return false;
      }
    }
  }
  return true;
}

inline bool normal(const FiberedMap& f) {
  for (PointSet o : f.codomain().opens()) {
    if (!prenormal_within(f, o)) return false;
  }
  return true;
}

// Space-level normality: disjoint closed sets have disjoint neighborhoods.
inline bool space_normal(const FiniteSpace& s) {
  std::vector<PointSet> closed;
  for (PointSet o : s.opens()) closed.push_back(s.points() - o);
  for (PointSet a : closed) {
    for (PointSet b : closed) {
      if (a.intersects(b)) continue;
      bool ok = false;
      for (PointSet u : s.opens()) {
        if (!a.subset_of(u)) continue;
        for (PointSet v : s.opens()) {
          if (b.subset_of(v) && !u.intersects(v)) ok = true;
        }
      }
      if (!ok) return false;
    }
  }
  return true;
}

// Components of the specialization relation restricted to w.
inline std::vector<PointSet> components(const FiniteSpace& s, PointSet w) {
  std::vector<int> parent(static_cast<std::size_t>(s.size()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  w.for_each([&](int x) {
    w.for_each([&](int z) {
      bool below = true;  // z in every open containing x
      for (PointSet o : s.opens()) {
        if (o.contains(x) && !o.contains(z)) below = false;
      }
      if (below) parent[static_cast<std::size_t>(find(x))] = find(z);
    });
  });
  std::vector<PointSet> out;
  std::vector<int> roots;
  w.for_each([&](int x) {
    int r = find(x);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      out.push_back(PointSet::single(x));
    } else {
      out[static_cast<std::size_t>(it - roots.begin())] |= PointSet::single(x);
    }
  });
  return out;
}

// A real function on a finite space is continuous iff it is constant on the
// components of the specialization relation.
inline bool continuous_on(const FiniteSpace& s, PointSet w, const RationalFunction& phi) {
  for (PointSet c : components(s, w)) {
    const Rational v = phi(c.first());
    bool same = true;
    c.for_each([&](int x) { same = same && phi(x) == v; });
    if (!same) return false;
  }
  return true;
}

struct ClassicalContract {
  bool exists = false;
  bool agrees = false;
  bool norm_ok = false;
  bool continuous = false;
};

// Classical Urysohn: 0 on components meeting F, 1 elsewhere.
inline ClassicalContract classical_urysohn(const fibertop::SpacePtr& s, PointSet f_set, PointSet t_set,
                                           RationalFunction* out = nullptr) {
  std::vector<Rational> v(static_cast<std::size_t>(s->size()), Rational(1));
  bool clash = false;
  for (PointSet c : components(*s, s->points())) {
    if (c.intersects(f_set)) {
      if (c.intersects(t_set)) clash = true;
      c.for_each([&](int x) { v[static_cast<std::size_t>(x)] = 0; });
    }
  }
  RationalFunction phi(s, v);
  ClassicalContract r;
  r.exists = !clash;
  r.agrees = !clash;
  f_set.for_each([&](int x) { r.agrees = r.agrees && phi(x) == 0; });
  t_set.for_each([&](int x) { r.agrees = r.agrees && phi(x) == 1; });
  r.norm_ok = true;
  r.continuous = continuous_on(*s, s->points(), phi);
  if (out) *out = phi;
  return r;
}

// Classical Tietze: the value of the F-point in each component, 0 where a
// component misses F. Requires phi_tilde continuous on F.
inline ClassicalContract classical_tietze(const fibertop::SpacePtr& s, PointSet f_set,
                                          const RationalFunction& phi_tilde, RationalFunction* out = nullptr) {
  std::vector<Rational> v(static_cast<std::size_t>(s->size()), Rational(0));
  bool clash = false;
  for (PointSet c : components(*s, s->points())) {
    PointSet hit = c & f_set;
    if (hit.empty()) continue;
    const Rational val = phi_tilde(hit.first());
    hit.for_each([&](int x) { clash = clash || phi_tilde(x) != val; });
    c.for_each([&](int x) { v[static_cast<std::size_t>(x)] = val; });
  }
  RationalFunction phi(s, v);
  ClassicalContract r;
  r.exists = !clash;
  r.agrees = true;
  Rational tilde_norm = 0, norm = 0;
  f_set.for_each([&](int x) {
    r.agrees = r.agrees && phi(x) == phi_tilde(x);
    tilde_norm = std::max(tilde_norm, fibertop::abs_of(phi_tilde(x)));
  });
  for (const Rational& q : phi.values()) norm = std::max(norm, fibertop::abs_of(q));
  r.norm_ok = norm <= tilde_norm;
  r.continuous = continuous_on(*s, s->points(), phi);
  if (out) *out = phi;
  return r;
}

// Hand-rolled generators.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

  Rational rational(int max_num = 8, int max_den = 8) {
    const int p = below(2 * max_num + 1) - max_num;
    const int q = 1 + below(max_den);
    Rational r(p, q);
    r.canonicalize();
    return r;
  }

  RationalFunction function(const fibertop::SpacePtr& s) {
    std::vector<Rational> v;
    for (int x = 0; x < s->size(); ++x) v.push_back(rational());
    return RationalFunction(s, std::move(v));
  }

  // Random topology via a random preorder (transitive closure).
  FiniteSpace space(int n) {
    std::vector<PointSet> u(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      u[static_cast<std::size_t>(x)] = PointSet::single(x);
      for (int z = 0; z < n; ++z) {
        if (z != x && below(3) == 0) u[static_cast<std::size_t>(x)] |= PointSet::single(z);
      }
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (int x = 0; x < n; ++x) {
        PointSet grown = u[static_cast<std::size_t>(x)];
        u[static_cast<std::size_t>(x)].for_each([&](int z) { grown |= u[static_cast<std::size_t>(z)]; });
        if (grown != u[static_cast<std::size_t>(x)]) {
          u[static_cast<std::size_t>(x)] = grown;
          changed = true;
        }
      }
    }
    return FiniteSpace::from_minimal_neighborhoods(u, n);
  }

  // Random continuous map; falls back to a constant table.
  FiberedMap map(int nx, int ny) {
    fibertop::SpacePtr x = fibertop::share(space(nx));
    fibertop::SpacePtr y = fibertop::share(space(ny));
    std::vector<int> table(static_cast<std::size_t>(nx));
    for (int attempt = 0; attempt < 32; ++attempt) {
      for (int& t : table) t = below(ny);
      bool ok = true;
      for (PointSet v : y->opens()) {
        PointSet pre;
        for (int p = 0; p < nx; ++p) {
          if (v.contains(table[static_cast<std::size_t>(p)])) pre |= PointSet::single(p);
        }
        ok = ok && in_family(x->opens(), pre);
      }
      if (ok) return FiberedMap(x, y, table);
    }
    std::fill(table.begin(), table.end(), below(ny));
    return FiberedMap(x, y, table);
  }

  PointSet subset(PointSet of) {
    PointSet out;
    of.for_each([&](int x) {
      if (below(2)) out |= PointSet::single(x);
    });
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
