#include "fibertop/normality.hpp"

#include <algorithm>

#include "fibertop/urysohn_tietze.hpp"

namespace fibertop {

namespace {

void require_neighborhood(const FiberedMap& f, PointSet o, int y) {
  f.codomain().check_point(y);
  f.codomain().check_subset(o);
  if (!f.codomain().is_open(o)) throw Error(ErrorCode::kPrecondition, "O is not open in Y", {o.bits()});
  if (!o.contains(y)) throw Error(ErrorCode::kPrecondition, "y is not in O", {y});
}

// Submasks of m, ascending.
std::vector<PointSet> subsets_of(PointSet m) {
  std::vector<PointSet> out;
  Mask bits = m.bits();
  Mask s = 0;
  do {
    out.emplace_back(s);
    s = (s - bits) & bits;
  } while (s != 0);
  std::sort(out.begin(), out.end());
  return out;
}

void add_witness(DeciderReport& r, const DeciderOptions& opt, Witness w) {
  if (static_cast<int>(r.witnesses.size()) < opt.max_witnesses) r.witnesses.push_back(std::move(w));
}

DeciderReport fail(Counterexample c) {
  DeciderReport r;
  r.holds = false;
  r.counterexample = std::move(c);
  return r;
}

std::vector<PointSet> dedup(std::vector<PointSet> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<PointSet> closed_sets_in(const FiniteSpace& space, PointSet w) {
  std::vector<PointSet> out;
  for (PointSet o : space.opens_within(w)) out.push_back(w - o);
  return dedup(std::move(out));
}

bool verify_separation(const FiberedMap& f, const SeparationCertificate& c) {
  const FiniteSpace& xs = f.domain();
  if (!f.codomain().is_open(c.oy) || !c.oy.contains(c.y)) return false;
  PointSet w = f.preimage(c.oy);
  return c.u.subset_of(w) && c.v.subset_of(w) && xs.is_open_in(w, c.u) && xs.is_open_in(w, c.v) &&
         !c.u.intersects(c.v) && c.a_trace.subset_of(c.u) && c.b_trace.subset_of(c.v) &&
         c.a_trace.subset_of(w) && c.b_trace.subset_of(w);
}

std::optional<SeparationCertificate> separate_at(const FiberedMap& f, PointSet o, PointSet a, PointSet b, int y) {
  const FiniteSpace& xs = f.domain();
  for (PointSet oy : f.codomain().neighborhoods_of(y, o)) {
    PointSet w = f.preimage(oy);
    PointSet at = a & w;
    PointSet bt = b & w;
    if (at.intersects(bt)) continue;
    if (at.empty()) return SeparationCertificate{y, oy, PointSet(), w, at, bt};
    if (bt.empty()) return SeparationCertificate{y, oy, w, PointSet(), at, bt};
    std::vector<PointSet> opens = xs.opens_within(w);
    for (PointSet u : opens) {
      if (!at.subset_of(u)) continue;
      for (PointSet v : opens) {
        if (bt.subset_of(v) && !u.intersects(v)) return SeparationCertificate{y, oy, u, v, at, bt};
      }
    }
  }
  return std::nullopt;
}

SeparationReport are_f_separated(const FiberedMap& f, PointSet a, PointSet b) {
  f.domain().check_subset(a);
  f.domain().check_subset(b);
  SeparationReport r;
  r.holds = true;
  for (int y = 0; y < f.codomain().size(); ++y) {
    auto c = separate_at(f, f.codomain().points(), a, b, y);
    if (!c) {
      r.holds = false;
      r.failing_y = y;
      return r;
    }
    r.certificates.push_back(*c);
  }
  return r;
}

DeciderReport is_prenormal_within(const FiberedMap& f, PointSet o, const DeciderOptions& opt) {
  PointSet w = f.preimage(o);
  std::vector<PointSet> closed = closed_sets_in(f.domain(), w);
  DeciderReport r;
  r.holds = true;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    if (closed[i].empty()) continue;
    for (std::size_t j = i + 1; j < closed.size(); ++j) {
      if (closed[j].empty() || closed[i].intersects(closed[j])) continue;
      for (int y : o.points()) {
        auto c = separate_at(f, o, closed[i], closed[j], y);
        if (!c) return fail(Counterexample{"prenormal", o, w, closed[i], closed[j], y});
        add_witness(r, opt, Witness{y, c->oy, {closed[i], closed[j], c->u, c->v}, {}});
      }
    }
  }
  return r;
}

DeciderReport is_prenormal(const FiberedMap& f, const DeciderOptions& opt) {
  return is_prenormal_within(f, f.codomain().points(), opt);
}

DeciderReport is_normal(const FiberedMap& f, const DeciderOptions& opt) {
  DeciderReport r;
  r.holds = true;
  for (PointSet o : f.codomain().opens()) {
    if (o.empty()) continue;
    DeciderReport part = is_prenormal_within(f, o, opt);
    if (!part.holds) {
      part.counterexample->kind = "normal";
      return part;
    }
    for (auto& w : part.witnesses) add_witness(r, opt, std::move(w));
  }
  return r;
}

bool verify_sigma_separation(const FiberedMap& f, PointSet f_set, const SigmaSeparationCertificate& c) {
  const FiniteSpace& xs = f.domain();
  if (!f.codomain().is_open(c.oy) || !c.oy.contains(c.y) || c.v.size() != c.t_pieces.size()) return false;
  PointSet w = f.preimage(c.oy);
  PointSet closures;
  for (std::size_t l = 0; l < c.v.size(); ++l) {
    if (!c.v[l].subset_of(w) || !xs.is_open_in(w, c.v[l])) return false;
    if (!(c.t_pieces[l] & w).subset_of(c.v[l])) return false;
    closures |= xs.closure_in(w, c.v[l]);
  }
  return !closures.intersects(f_set);
}

std::optional<SigmaSeparationCertificate> sigma_separate_at(const FiberedMap& f, PointSet o, PointSet f_set,
                                                            const std::vector<PointSet>& t_pieces, int y) {
  const FiniteSpace& xs = f.domain();
  for (PointSet oy : f.codomain().neighborhoods_of(y, o)) {
    PointSet w = f.preimage(oy);
    std::vector<PointSet> opens = xs.opens_within(w);
    SigmaSeparationCertificate c{y, oy, t_pieces, {}};
    for (PointSet t : t_pieces) {
      PointSet trace = t & w;
      auto it = std::find_if(opens.begin(), opens.end(), [&](PointSet v) {
        return trace.subset_of(v) && !xs.closure_in(w, v).intersects(f_set);
      });
      if (it == opens.end()) break;
      c.v.push_back(*it);
    }
    if (c.v.size() == t_pieces.size()) return c;
  }
  return std::nullopt;
}

DeciderReport is_sigma_prenormal_within(const FiberedMap& f, PointSet o, const DeciderOptions& opt) {
  const FiniteSpace& xs = f.domain();
  PointSet w = f.preimage(o);
  DeciderReport r;
  r.holds = true;
  for (PointSet fs : closed_sets_in(xs, w)) {
    for (PointSet t : subsets_of(w - fs)) {
      if (t.empty()) continue;
      FSigmaDecomposition d = is_f_sigma_in(xs, w, t);
      if (!d.holds) continue;
      std::vector<PointSet> pieces = dedup(d.pieces);
      for (int y : o.points()) {
        auto c = sigma_separate_at(f, o, fs, pieces, y);
        if (!c) return fail(Counterexample{"sigma-prenormal", o, w, fs, t, y});
        std::vector<PointSet> sets{fs, t};
        sets.insert(sets.end(), c->v.begin(), c->v.end());
        add_witness(r, opt, Witness{y, c->oy, std::move(sets), {}});
      }
    }
  }
  return r;
}

DeciderReport is_sigma_prenormal(const FiberedMap& f, const DeciderOptions& opt) {
  return is_sigma_prenormal_within(f, f.codomain().points(), opt);
}

DeciderReport is_sigma_normal(const FiberedMap& f, const DeciderOptions& opt) {
  DeciderReport r;
  r.holds = true;
  for (PointSet o : f.codomain().opens()) {
    if (o.empty()) continue;
    DeciderReport part = is_sigma_prenormal_within(f, o, opt);
    if (!part.holds) {
      part.counterexample->kind = "sigma-normal";
      return part;
    }
    for (auto& w : part.witnesses) add_witness(r, opt, std::move(w));
  }
  return r;
}

SmallUrysohnResult small_urysohn_search(const FiberedMap& f, PointSet o, const std::vector<PointSet>& t_list,
                                        PointSet u, int y) {
  require_neighborhood(f, o, y);
  const FiniteSpace& xs = f.domain();
  PointSet w = f.preimage(o);
  PointSet all_t;
  for (PointSet t : t_list) {
    if (!t.subset_of(w) || !xs.is_closed_in(w, t)) {
      throw Error(ErrorCode::kPrecondition, "T_l " + to_string(t) + " is not closed in f^-1 O", {t.bits()});
    }
    all_t |= t;
  }
  if (!u.subset_of(w) || !xs.is_open_in(w, u)) {
    throw Error(ErrorCode::kPrecondition, "U " + to_string(u) + " is not open in f^-1 O", {u.bits()});
  }
  if (!all_t.subset_of(u)) throw Error(ErrorCode::kPrecondition, "U does not contain the T_l");

  for (PointSet oy : f.codomain().neighborhoods_of(y, o)) {
    PointSet w2 = f.preimage(oy);
    std::vector<PointSet> opens = xs.opens_within(w2);
    SmallUrysohnResult res{oy, {}};
    for (PointSet t : t_list) {
      PointSet trace = t & w2;
      auto it = std::find_if(opens.begin(), opens.end(), [&](PointSet v) {
        return trace.subset_of(v) && xs.closure_in(w2, v).subset_of(u & w2);
      });
      if (it == opens.end()) break;
      res.v.push_back(*it);
    }
    if (res.v.size() == t_list.size()) return res;
  }
  throw Error(ErrorCode::kNotFound, "no neighborhoods V_l for y = " + std::to_string(y), {y});
}

namespace {

struct Constraint {
  std::size_t l;
  std::size_t p;
  PointSet lower;  // must lie inside V
  PointSet upper;  // must contain cl V
};

const char* step_name(std::size_t n, std::size_t p, std::size_t blocks) {
  if (n == 0) return "base";
  if (p == 0) return "firstly";
  if (p + 1 == blocks) return "thirdly";
  return "secondly";
}

}  // namespace

std::vector<ConsistentBinaryFamily> build_binary_partitions_sigma(const FiberedMap& f, PointSet o,
                                                                  PointSet f_set,
                                                                  const std::vector<PointSet>& t_list, int y,
                                                                  const BuildOptions& opt) {
  require_neighborhood(f, o, y);
  if (opt.depth < 1 || opt.depth > 24) throw Error(ErrorCode::kInvalidArgument, "depth must be in 1..24");
  const FiniteSpace& xs = f.domain();
  const FiniteSpace& ys = f.codomain();
  const PointSet w0 = f.preimage(o);
  if (!f_set.subset_of(w0) || !xs.is_closed_in(w0, f_set)) {
    throw Error(ErrorCode::kPrecondition, "F is not closed in f^-1 O", {f_set.bits()});
  }
  for (PointSet t : t_list) {
    if (!t.subset_of(w0) || !xs.is_closed_in(w0, t)) {
      throw Error(ErrorCode::kPrecondition, "T_l " + to_string(t) + " is not closed in f^-1 O", {t.bits()});
    }
    if (t.intersects(f_set)) throw Error(ErrorCode::kPrecondition, "F and T are not disjoint");
  }

  const std::size_t count = t_list.size();
  std::vector<std::vector<PartitionLevel>> levels(count, {PartitionLevel{o, {w0}}});
  PointSet o_cur = o;
  for (int n = 0; n < opt.depth; ++n) {
    const PointSet w = f.preimage(o_cur);
    std::vector<Constraint> cons;
    for (std::size_t l = 0; l < count; ++l) {
      const auto& blocks = levels[l].back().blocks;
      if (n == 0) {
        cons.push_back({l, 0, t_list[l] & w, w - f_set});
        continue;
      }
      const std::size_t last = blocks.size() - 1;
      std::vector<PointSet> suffix(blocks.size() + 1);
      for (std::size_t j = blocks.size(); j-- > 0;) suffix[j] = suffix[j + 1] | blocks[j];
      PointSet prefix;  // blocks 0..p-2
      for (std::size_t p = 0; p <= last; ++p) {
        if (p >= 2) prefix |= blocks[p - 2];
        // An empty block has empty children whatever V is.
        if (blocks[p].empty()) continue;
        if (p == last) {
          cons.push_back({l, p, t_list[l] & w, blocks[last]});
        } else if (p == 0) {
          cons.push_back({l, p, xs.closure_in(w, suffix[1]), w - f_set});
        } else {
          cons.push_back({l, p, xs.closure_in(w, suffix[p + 1]), w - prefix});
        }
      }
    }

    std::vector<PointSet> chosen(cons.size());
    PointSet o_next = o_cur;
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const Constraint& c = cons[i];
      bool found = false;
      for (PointSet cand : ys.neighborhoods_of(y, o_cur)) {
        PointSet w2 = f.preimage(cand);
        PointSet v = xs.up(c.lower & w2);
        if (xs.closure_in(w2, v).subset_of(c.upper & w2)) {
          chosen[i] = cand;
          found = true;
          break;
        }
      }
      if (!found) {
        const std::size_t blocks = levels[c.l].back().blocks.size();
        throw Error(ErrorCode::kSearchFailed,
                    std::string("no neighborhood for the ") + step_name(static_cast<std::size_t>(n), c.p, blocks) +
                        " step at level " + std::to_string(n) + ", block " + std::to_string(c.p) +
                        ", family " + std::to_string(c.l),
                    {n, static_cast<std::int64_t>(c.p), static_cast<std::int64_t>(c.l)});
      }
      o_next &= chosen[i];
    }

    const PointSet w_next = f.preimage(o_next);
    std::vector<std::vector<PointSet>> vs(count);
    for (std::size_t l = 0; l < count; ++l) vs[l].assign(levels[l].back().blocks.size(), PointSet());
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const Constraint& c = cons[i];
      vs[c.l][c.p] = xs.up(c.lower & f.preimage(chosen[i])) & w_next;
    }
    bool all_repeat = n >= 1;
    for (std::size_t l = 0; l < count; ++l) {
      const auto& blocks = levels[l].back().blocks;
      PartitionLevel next{o_next, {}};
      next.blocks.reserve(blocks.size() * 2);
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        next.blocks.push_back((blocks[k] - vs[l][k]) & w_next);
        next.blocks.push_back((blocks[k] & vs[l][k]) & w_next);
      }
      all_repeat = all_repeat && levels_repeat(levels[l].back(), next);
      levels[l].push_back(std::move(next));
    }
    o_cur = o_next;
    if (opt.stop_when_stationary && all_repeat) break;
  }

  std::vector<ConsistentBinaryFamily> out;
  for (std::size_t l = 0; l < count; ++l) {
    try {
      out.push_back(validate_consistent_family(f, y, std::move(levels[l])));
    } catch (const Error& e) {
      throw Error(ErrorCode::kCheckFailed, std::string("builder produced an invalid family: ") + e.what());
    }
    if (!family_separates(out.back(), f_set, t_list[l])) {
      throw Error(ErrorCode::kCheckFailed, "builder family violates the separation conditions",
                  {static_cast<std::int64_t>(l)});
    }
  }
  return out;
}

ConsistentBinaryFamily build_binary_partitions(const FiberedMap& f, PointSet o, PointSet f_set, PointSet t_set,
                                               int y, const BuildOptions& opt) {
  return std::move(build_binary_partitions_sigma(f, o, f_set, {t_set}, y, opt).front());
}

bool family_separates(const ConsistentBinaryFamily& family, PointSet f_set, PointSet t_set) {
  const FiberedMap& f = family.map();
  const FiniteSpace& xs = f.domain();
  for (int n = 1; n <= family.depth(); ++n) {
    const PartitionLevel& lv = family.level(n);
    const PointSet w = f.preimage(lv.o);
    const std::size_t last = lv.blocks.size() - 1;
    PointSet head;
    PointSet tail;
    for (std::size_t k = 0; k < lv.blocks.size(); ++k) {
      if (k >= 1) tail |= lv.blocks[k];
      if (k < last) head |= lv.blocks[k];
    }
    if (!(f_set & w).subset_of(lv.blocks[0]) || !(t_set & w).subset_of(lv.blocks[last])) return false;
    if (f_set.intersects(xs.closure_in(w, tail)) || t_set.intersects(xs.closure_in(w, head))) return false;
  }
  return true;
}

namespace {

// Conditions (1), (2) and equicontinuity of a perfect-normality family.
bool verify_open_family(const FiberedMap& f, PointSet open_set, int y, PointSet oy,
                        const std::vector<RationalFunction>& family) {
  if (!f.codomain().is_open(oy) || !oy.contains(y)) return false;
  PointSet w = f.preimage(oy);
  PointSet ones;
  for (const RationalFunction& phi : family) {
    for (int x = 0; x < f.domain().size(); ++x) {
      if (phi(x) < 0 || phi(x) > 1) return false;
    }
    if (!(w - open_set).subset_of(phi.level_set(0))) return false;
    ones |= phi.level_set(1) & w;
  }
  if (ones != (open_set & w)) return false;
  return is_f_equicontinuous_at(f, family, y).holds;
}

struct FamilyWitness {
  PointSet oy;
  std::vector<RationalFunction> family;
};

// One separator per point x of the open set: 1 on cl{x}, 0 off the open set.
std::optional<FamilyWitness> constructive_open_family(const FiberedMap& f, PointSet open_set, int y, PointSet oy,
                                                      int depth) {
  const FiniteSpace& xs = f.domain();
  PointSet w = f.preimage(oy);
  PointSet outside = w - open_set;
  FamilyWitness out{oy, {}};
  bool ok = true;
  (open_set & w).for_each([&](int x) {
    if (!ok) return;
    PointSet t = xs.closure_in(w, PointSet::single(x));
    if (t.intersects(outside)) {
      ok = false;
      return;
    }
    try {
      SeparatorResult s = build_separator(f, oy, outside, t, y, BuildOptions{depth, true});
      out.oy &= s.oy;
      out.family.push_back(s.phi.phi);
    } catch (const Error&) {
      ok = false;
    }
  });
  if (!ok || !verify_open_family(f, open_set, y, out.oy, out.family)) return std::nullopt;
  return out;
}

// Enumerates phi with values {0, 1/2, 1} on `free` points of f^{-1}oy (the
// rest fixed by `base`), calling visit for each one whose oscillation on
// f^{-1}U_y vanishes. visit returns true to stop.
template <class Visit>
void enumerate_three_valued(const FiberedMap& f, int y, PointSet free, const RationalFunction& base, Visit&& visit) {
  const FiniteSpace& xs = f.domain();
  const PointSet wmin = f.fiber_neighborhood(y);
  std::vector<int> pts = free.points();
  const Rational values[3] = {Rational(0), Rational(1, 2), Rational(1)};
  std::vector<int> digit(pts.size(), 0);
  RationalFunction phi = base;
  while (true) {
    for (std::size_t i = 0; i < pts.size(); ++i) phi.at(pts[i]) = values[digit[i]];
    if (osc_vanishes_in(xs, xs.points(), phi, wmin) && visit(phi)) return;
    std::size_t i = 0;
    while (i < digit.size() && digit[i] == 2) digit[i++] = 0;
    if (i == digit.size()) return;
    ++digit[i];
  }
}

std::optional<FamilyWitness> exhaustive_open_family(const FiberedMap& f, PointSet open_set, int y, PointSet oy) {
  PointSet w = f.preimage(oy);
  FamilyWitness out{oy, {}};
  PointSet ones;
  const PointSet target = open_set & w;
  RationalFunction base = RationalFunction::constant(f.domain_ptr(), 0);
  enumerate_three_valued(f, y, target, base, [&](const RationalFunction& phi) {
    PointSet gain = phi.level_set(1) & w;
    if (!gain.subset_of(ones)) {
      ones |= gain;
      out.family.push_back(phi);
    }
    return ones == target;
  });
  if (ones != target || !verify_open_family(f, open_set, y, oy, out.family)) return std::nullopt;
  return out;
}

std::optional<FamilyWitness> open_family_at(const FiberedMap& f, PointSet open_set, int y, int depth) {
  for (PointSet oy : f.codomain().neighborhoods_of(y, f.codomain().points())) {
    if (auto w = constructive_open_family(f, open_set, y, oy, depth)) return w;
    if (auto w = exhaustive_open_family(f, open_set, y, oy)) return w;
  }
  return std::nullopt;
}

}  // namespace

DeciderReport is_perfectly_normal(const FiberedMap& f, const DeciderOptions& opt) {
  DeciderReport r;
  r.holds = true;
  for (PointSet open_set : f.domain().opens()) {
    for (int y = 0; y < f.codomain().size(); ++y) {
      auto w = open_family_at(f, open_set, y, opt.depth);
      if (!w) return fail(Counterexample{"perfectly-normal", f.codomain().points(), open_set, {}, {}, y});
      add_witness(r, opt, Witness{y, w->oy, {open_set}, std::move(w->family)});
    }
  }
  return r;
}

namespace {

bool verify_functional_open(const FiberedMap& f, PointSet u, int y, PointSet oy, const RationalFunction& phi) {
  if (!f.codomain().is_open(oy) || !oy.contains(y)) return false;
  PointSet w = f.preimage(oy);
  PointSet positive;
  for (int x = 0; x < f.domain().size(); ++x) {
    if (phi(x) < 0 || phi(x) > 1) return false;
    if (phi(x) > 0) positive |= PointSet::single(x);
  }
  return (positive & w) == (u & w) && is_f_continuous_at(f, phi, y).holds;
}

}  // namespace

DeciderReport is_f_functionally_open(const FiberedMap& f, PointSet u, const DeciderOptions& opt) {
  f.domain().check_subset(u);
  DeciderReport r;
  r.holds = true;
  const bool open = f.domain().is_open(u);
  for (int y = 0; y < f.codomain().size(); ++y) {
    std::optional<Witness> found;
    for (PointSet oy : f.codomain().neighborhoods_of(y, f.codomain().points())) {
      if (open) {
        if (auto fam = constructive_open_family(f, u, y, oy, opt.depth)) {
          std::vector<Rational> weights;
          Rational wgt(1, 2);
          for (std::size_t l = 0; l < fam->family.size(); ++l, wgt /= 2) weights.push_back(wgt);
          try {
            WeightedSumResult s = weighted_sum(f, fam->family, weights, y);
            if (verify_functional_open(f, u, y, fam->oy, s.sum)) {
              found = Witness{y, fam->oy, {u}, {s.sum}};
              break;
            }
          } catch (const Error&) {
          }
        }
      }
      PointSet w = f.preimage(oy);
      RationalFunction base = RationalFunction::constant(f.domain_ptr(), 0);
      enumerate_three_valued(f, y, u & w, base, [&](const RationalFunction& phi) {
        if (!verify_functional_open(f, u, y, oy, phi)) return false;
        found = Witness{y, oy, {u}, {phi}};
        return true;
      });
      if (found) break;
    }
    if (!found) return fail(Counterexample{"f-functionally-open", f.codomain().points(), u, {}, {}, y});
    add_witness(r, opt, std::move(*found));
  }
  return r;
}

DeciderReport is_f_functionally_closed(const FiberedMap& f, PointSet c, const DeciderOptions& opt) {
  f.domain().check_subset(c);
  DeciderReport r = is_f_functionally_open(f, f.domain().points() - c, opt);
  if (r.counterexample) {
    r.counterexample->kind = "f-functionally-closed";
    r.counterexample->carrier = c;
  }
  for (auto& w : r.witnesses) w.sets = {c};
  return r;
}

namespace {

DeciderReport open_submappings_f_sigma(const FiberedMap& f, DeciderReport r, const DeciderOptions& opt) {
  for (PointSet u : f.domain().opens()) {
    FSigmaSubmappingReport s = is_f_sigma_carrier(f, u);
    if (!s.holds) {
      return fail(Counterexample{"open-submapping-not-f-sigma", f.codomain().points(), u, {}, {}, *s.failing_y});
    }
    for (auto& w : s.witnesses) add_witness(r, opt, Witness{w.y, w.oy, std::move(w.pieces), {}});
  }
  return r;
}

}  // namespace

DeciderReport is_co_perfectly_normal(const FiberedMap& f, const DeciderOptions& opt) {
  DeciderReport r = is_normal(f, opt);
  if (!r.holds) return r;
  r.witnesses.clear();
  return open_submappings_f_sigma(f, std::move(r), opt);
}

DeciderReport is_co_sigma_perfectly_normal(const FiberedMap& f, const DeciderOptions& opt) {
  DeciderReport r = is_sigma_normal(f, opt);
  if (!r.holds) return r;
  r.witnesses.clear();
  return open_submappings_f_sigma(f, std::move(r), opt);
}

DeciderReport is_hereditarily_normal(const FiberedMap& f, const DeciderOptions& opt) {
  DeciderReport r;
  r.holds = true;
  for (PointSet x0 : subsets_of(f.domain().points())) {
    Submapping sub(f, x0);
    DeciderReport part = is_normal(sub.induced_map(), opt);
    if (!part.holds) {
      const Counterexample& inner = *part.counterexample;
      return fail(Counterexample{"hereditarily-normal", inner.o, x0, sub.induced().lift(inner.f_set),
                                 sub.induced().lift(inner.t_set), inner.y});
    }
  }
  return r;
}

namespace {

// phi for one closed piece P inside U: 0 off U, 1 on P, oscillation zero on
// f^{-1}U_y (hence below 1/2 on f^{-1}oy).
std::optional<std::pair<PointSet, RationalFunction>> piece_function(const FiberedMap& f, PointSet u, PointSet piece,
                                                                    int y, PointSet oy, int depth) {
  PointSet w = f.preimage(oy);
  PointSet outside = w - u;
  auto good = [&](const RationalFunction& phi, PointSet at) {
    PointSet wa = f.preimage(at);
    for (int x = 0; x < f.domain().size(); ++x) {
      if (phi(x) < 0 || phi(x) > 1) return false;
    }
    return (wa - u).subset_of(phi.level_set(0)) && (piece & wa).subset_of(phi.level_set(1)) &&
           osc_on_set(f.domain(), phi, wa) < Rational(1, 2) && is_f_continuous_at(f, phi, y).holds;
  };
  try {
    SeparatorResult s = build_separator(f, oy, outside, piece & w, y, BuildOptions{depth, true});
    if (good(s.phi.phi, s.oy)) return std::make_pair(s.oy, s.phi.phi);
  } catch (const Error&) {
  }
  RationalFunction base = RationalFunction::constant(f.domain_ptr(), 0);
  piece.for_each([&](int x) { base.at(x) = 1; });
  std::optional<std::pair<PointSet, RationalFunction>> found;
  enumerate_three_valued(f, y, (u & w) - piece, base, [&](const RationalFunction& phi) {
    if (!good(phi, oy)) return false;
    found = std::make_pair(oy, phi);
    return true;
  });
  return found;
}

}  // namespace

DeciderReport co_sigma_functional_condition(const FiberedMap& f, const DeciderOptions& opt) {
  const FiniteSpace& xs = f.domain();
  const FiniteSpace& ys = f.codomain();
  DeciderReport r;
  r.holds = true;
  for (PointSet o : ys.opens()) {
    if (o.empty()) continue;
    const PointSet w = f.preimage(o);
    for (PointSet u : xs.opens_within(w)) {
      // Every F_sigma subset of U is a union of pieces cl_W{x} inside U, and
      // the conditions are per piece, so the single pieces are decisive.
      std::vector<PointSet> pieces;
      u.for_each([&](int x) {
        PointSet p = xs.closure_in(w, PointSet::single(x));
        if (p.subset_of(u)) pieces.push_back(p);
      });
      pieces = dedup(std::move(pieces));
      for (int y : o.points()) {
        bool ok = false;
        for (PointSet oy : ys.neighborhoods_of(y, o)) {
          PointSet shared = oy;
          std::vector<RationalFunction> phis;
          bool all = true;
          for (PointSet p : pieces) {
            auto pf = piece_function(f, u, p, y, oy, opt.depth);
            if (!pf) {
              all = false;
              break;
            }
            shared &= pf->first;
            phis.push_back(std::move(pf->second));
          }
          if (!all) continue;
          std::optional<FamilyWitness> psi = constructive_open_family(f, u, y, oy, opt.depth);
          if (!psi) psi = exhaustive_open_family(f, u, y, oy);
          if (!psi) continue;
          shared &= psi->oy;
          if (!verify_open_family(f, u, y, shared, psi->family)) continue;
          std::vector<RationalFunction> everything = phis;
          everything.insert(everything.end(), psi->family.begin(), psi->family.end());
          if (!is_f_equicontinuous_at(f, everything, y).holds) continue;
          add_witness(r, opt, Witness{y, shared, pieces, std::move(everything)});
          ok = true;
          break;
        }
        if (!ok) return fail(Counterexample{"co-sigma-functional", o, u, {}, {}, y});
      }
    }
  }
  return r;
}

}  // namespace fibertop
