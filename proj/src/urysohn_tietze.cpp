#include "fibertop/urysohn_tietze.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace fibertop {

namespace {

PointSet at_least(const RationalFunction& phi, const Rational& c, PointSet within) {
  PointSet out;
  within.for_each([&](int x) {
    if (phi(x) >= c) out |= PointSet::single(x);
  });
  return out;
}

PointSet at_most(const RationalFunction& phi, const Rational& c, PointSet within) {
  PointSet out;
  within.for_each([&](int x) {
    if (phi(x) <= c) out |= PointSet::single(x);
  });
  return out;
}

void require_closed_in(const FiberedMap& f, PointSet o, PointSet a, const char* what) {
  PointSet w = f.preimage(o);
  if (!a.subset_of(w) || !f.domain().is_closed_in(w, a)) {
    throw Error(ErrorCode::kPrecondition, std::string(what) + " " + to_string(a) + " is not closed in f^-1 O",
                {a.bits()});
  }
}

void require_point_in_open(const FiberedMap& f, PointSet o, int y) {
  f.codomain().check_point(y);
  f.codomain().check_subset(o);
  if (!f.codomain().is_open(o)) throw Error(ErrorCode::kPrecondition, "O is not open in Y", {o.bits()});
  if (!o.contains(y)) throw Error(ErrorCode::kPrecondition, "y is not in O", {y});
}

}  // namespace

ConditionCReport verify_condition_C(const FiberedMap& f, PointSet o, PointSet f_set, PointSet t_set, int y,
                                    const RationalFunction& phi, PointSet oy) {
  const FiniteSpace& xs = f.domain();
  ConditionCReport r;
  r.neighborhood_ok = f.codomain().is_open(oy) && oy.contains(y) && oy.subset_of(o);
  PointSet w = f.preimage(oy);
  r.osc = osc_on_set(xs, phi, w);
  r.osc_ok = r.osc < Rational(1, 2);
  r.range_ok = at_least(phi, 0, xs.points()) == xs.points() && at_most(phi, 1, xs.points()) == xs.points();
  r.f_side_zero = (f_set & w).subset_of(phi.level_set(0));
  r.t_side_one = (t_set & w).subset_of(phi.level_set(1));
  PointSet upper = at_least(phi, Rational(1, 2), w);
  r.f_side_misses_closure = !(f_set & w).intersects(xs.closure_in(w, upper));
  r.t_side_in_interior = (t_set & w).subset_of(xs.interior_in(w, upper));
  return r;
}

SeparatorResult build_separator(const FiberedMap& f, PointSet o, PointSet f_set, PointSet t_set, int y,
                                const BuildOptions& opt) {
  if (opt.depth < 2) throw Error(ErrorCode::kInvalidArgument, "separator needs depth >= 2", {opt.depth});
  ConsistentBinaryFamily family = build_binary_partitions(f, o, f_set, t_set, y, opt);
  ApproximateLimitFunction phi = assemble_limit(family);
  PointSet oy = family.level(2).o;
  ConditionCReport checks = verify_condition_C(f, o, f_set, t_set, y, phi.phi, oy);
  if (!checks.all()) {
    throw Error(ErrorCode::kCheckFailed, "separator fails condition (C) for F = " + to_string(f_set) +
                                             ", T = " + to_string(t_set) + ", y = " + std::to_string(y));
  }
  return SeparatorResult{std::move(phi), oy, checks, std::move(family)};
}

ExtensionResult tietze_extend(const FiberedMap& f, PointSet o, PointSet f_set, const RationalFunction& phi_tilde,
                              int y, const TietzeOptions& opt) {
  require_point_in_open(f, o, y);
  require_closed_in(f, o, f_set, "F");
  const FiniteSpace& xs = f.domain();
  const FiniteSpace& ys = f.codomain();
  if (!(phi_tilde.space() == xs)) throw Error(ErrorCode::kInvalidArgument, "phi_tilde lives on another space");
  if (!(opt.tolerance > 0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  const PointSet wmin = f.fiber_neighborhood(y);
  if (!osc_vanishes_in(xs, f_set, phi_tilde, f_set & wmin)) {
    throw Error(ErrorCode::kPreconditionNotFContinuous, "phi_tilde is not f|F-continuous at y", {y});
  }

  const std::size_t n_pts = static_cast<std::size_t>(xs.size());
  const PointSet w_o = f.preimage(o);
  const Rational mu0 = norm_on(phi_tilde, f_set);

  int max_iter = 0;
  if (opt.max_iter) {
    if (*opt.max_iter < 0) throw Error(ErrorCode::kInvalidArgument, "max_iter must be non-negative");
    max_iter = *opt.max_iter;
  } else {
    for (Rational bound = mu0; bound >= opt.tolerance; bound *= Rational(2, 3)) ++max_iter;
  }
  // The limit is identified from a longer run than the reported truncation.
  const int horizon = std::max(max_iter, 48);

  std::map<std::tuple<Mask, Mask, Mask>, SeparatorResult> memo;
  std::vector<Rational> phi_n(n_pts, Rational(0));
  f_set.for_each([&](int x) { phi_n[static_cast<std::size_t>(x)] = phi_tilde(x); });
  PointSet o_n = o;
  Rational mu = mu0;
  std::vector<std::vector<Rational>> partial{std::vector<Rational>(n_pts, Rational(0))};
  std::vector<std::vector<Rational>> digits;  // psi_n / mu_n
  std::vector<Rational> residuals{mu0};
  std::vector<PointSet> neighborhoods;

  for (int n = 0; n < horizon && mu != 0; ++n) {
    const PointSet domain = f_set & f.preimage(o_n);
    RationalFunction current(f.domain_ptr(), phi_n);
    PointSet o_prime;
    for (PointSet cand : ys.neighborhoods_of(y, o_n)) {
      if (osc_on_set_in(xs, domain, current, f_set & f.preimage(cand)) < mu / 3) {
        o_prime = cand;
        break;
      }
    }
    if (o_prime.empty()) throw Error(ErrorCode::kCheckFailed, "no neighborhood with small oscillation", {n});
    const PointSet w_prime = f.preimage(o_prime);
    const PointSet p_set = xs.closure_in(w_prime, at_most(current, -mu / 3, f_set & w_prime));
    const PointSet q_set = xs.closure_in(w_prime, at_least(current, mu / 3, f_set & w_prime));
    auto key = std::make_tuple(o_prime.bits(), p_set.bits(), q_set.bits());
    auto found = memo.find(key);
    if (found == memo.end()) {
      found = memo.emplace(key, build_separator(f, o_prime, p_set, q_set, y, opt.build)).first;
    }
    const SeparatorResult& sep = found->second;

    std::vector<Rational> digit(n_pts, Rational(0));
    w_o.for_each([&](int x) { digit[static_cast<std::size_t>(x)] = (2 * sep.phi.phi(x) - 1) / 3; });
    o_n = sep.oy;
    neighborhoods.push_back(o_n);
    std::vector<Rational> sum = partial.back();
    std::vector<Rational> next(n_pts, Rational(0));
    Rational next_mu = 0;
    for (std::size_t i = 0; i < n_pts; ++i) sum[i] += mu * digit[i];
    (f_set & f.preimage(o_n)).for_each([&](int x) {
      auto i = static_cast<std::size_t>(x);
      next[i] = phi_n[i] - mu * digit[i];
      if (abs_of(next[i]) > next_mu) next_mu = abs_of(next[i]);
    });
    if (next_mu > Rational(2, 3) * mu) {
      throw Error(ErrorCode::kCheckFailed, "residual law violated at step " + std::to_string(n), {n});
    }
    partial.push_back(std::move(sum));
    digits.push_back(std::move(digit));
    residuals.push_back(next_mu);
    phi_n = std::move(next);
    mu = next_mu;
  }

  const int reached = static_cast<int>(digits.size());
  const int big_n = std::min(max_iter, reached);
  ExtensionResult out{RationalFunction(f.domain_ptr(), partial[static_cast<std::size_t>(big_n)]),
                      RationalFunction(f.domain_ptr(), partial[static_cast<std::size_t>(big_n)]),
                      PointSet(),
                      false,
                      std::vector<Rational>(residuals.begin(), residuals.begin() + big_n + 1),
                      big_n,
                      false,
                      PointSet(),
                      std::vector<PointSet>(neighborhoods.begin(), neighborhoods.begin() + big_n),
                      residuals[static_cast<std::size_t>(big_n)]};

  std::vector<Rational> limit = partial.back();
  if (mu != 0) {
    // On f^{-1}U_y a point whose digits agree with those of a point z of F
    // has the limit phi_tilde(z); a tail of constant digits +-1/3 under
    // exact 2/3 decay sums to S_p +- mu_p.
    limit = partial[static_cast<std::size_t>(big_n)];
    auto same_digits = [&](int a, int b) {
      for (const auto& d : digits) {
        if (d[static_cast<std::size_t>(a)] != d[static_cast<std::size_t>(b)]) return false;
      }
      return true;
    };
    wmin.for_each([&](int x) {
      const auto i = static_cast<std::size_t>(x);
      std::vector<Rational> candidates;
      (f_set & wmin).for_each([&](int z) {
        if (same_digits(x, z)) candidates.push_back(phi_tilde(z));
      });
      int p = reached - 1;
      while (p > 0 && digits[static_cast<std::size_t>(p - 1)][i] == digits[static_cast<std::size_t>(p)][i] &&
             residuals[static_cast<std::size_t>(p)] == Rational(2, 3) * residuals[static_cast<std::size_t>(p - 1)]) {
        --p;
      }
      const Rational& d = digits[static_cast<std::size_t>(p)][i];
      if (2 * p <= reached && abs_of(d) == Rational(1, 3)) {
        candidates.push_back(partial[static_cast<std::size_t>(p)][i] + 3 * d * residuals[static_cast<std::size_t>(p)]);
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      if (candidates.size() == 1) {
        limit[i] = candidates.front();
      } else {
        out.unresolved |= PointSet::single(x);
      }
    });
  }

  if (out.unresolved.empty()) {
    RationalFunction candidate(f.domain_ptr(), limit);
    bool ok = osc_on_set(xs, candidate, wmin) == 0 && norm(candidate) <= mu0;
    (f_set & wmin).for_each([&](int x) { ok = ok && candidate(x) == phi_tilde(x); });
    wmin.for_each([&](int x) { ok = ok && abs_of(candidate(x) - out.partial_sum(x)) <= out.error_bound; });
    if (ok) {
      out.phi = std::move(candidate);
      out.exact = true;
    } else {
      out.unresolved = wmin;
    }
  }
  if (!out.exact && opt.fail_on_truncation) {
    throw Error(ErrorCode::kMaxIterReached, "residual " + format_rational(out.error_bound) + " after " +
                                                std::to_string(big_n) + " iterations",
                {big_n});
  }
  f_set.for_each([&](int x) {
    if (out.phi(x) == phi_tilde(x)) out.agreement_set |= PointSet::single(x);
  });
  out.norm_ok = norm(out.phi) <= mu0;
  return out;
}

ConditionDReport verify_condition_D(const FiberedMap& f, PointSet o, PointSet f_set,
                                    const RationalFunction& phi_tilde, const RationalFunction& phi, int y) {
  const FiniteSpace& xs = f.domain();
  const FiniteSpace& ys = f.codomain();
  ConditionDReport r;
  auto sup_diff = [&](PointSet g) {
    Rational best = 0;
    (f_set & f.preimage(g)).for_each([&](int x) {
      Rational d = abs_of(phi(x) - phi_tilde(x));
      if (d > best) best = d;
    });
    return best;
  };
  std::vector<PointSet> nbhds = ys.neighborhoods_of(y, o);
  for (PointSet g : nbhds) {
    if (sup_diff(g) == 0) {
      r.a = true;
      r.g = g;
      break;
    }
  }
  r.b = norm(phi) <= norm_on(phi_tilde, f_set);
  bool sweep = true;
  for (int k = 0; k <= 12; ++k) {
    Rational eps(1, 1UL << k);
    auto it = std::find_if(nbhds.begin(), nbhds.end(), [&](PointSet g) { return sup_diff(g) < eps; });
    if (it == nbhds.end()) {
      sweep = false;
      continue;
    }
    r.eps_neighborhoods.emplace_back(eps, *it);
  }
  const PointSet umin = ys.minimal_open_neighborhood(y);
  r.c_minimal = umin.subset_of(o) && sup_diff(umin) == 0;
  r.c = sweep && r.c_minimal;
  r.continuous = osc_on_set(xs, phi, f.fiber_neighborhood(y)) == 0;
  return r;
}

ExtensionSeparation separation_from_extension(const FiberedMap& f, PointSet o, PointSet f_set, PointSet t_set,
                                              int y, const TietzeOptions& opt) {
  require_point_in_open(f, o, y);
  require_closed_in(f, o, f_set, "F");
  require_closed_in(f, o, t_set, "T");
  if (f_set.intersects(t_set)) throw Error(ErrorCode::kPrecondition, "F and T are not disjoint");
  const FiniteSpace& xs = f.domain();
  const PointSet both = f_set | t_set;
  if (both.empty()) {
    PointSet oy = f.codomain().minimal_open_neighborhood(y);
    return ExtensionSeparation{SeparationCertificate{y, oy, {}, {}, {}, {}}, std::nullopt};
  }
  RationalFunction tilde = RationalFunction::indicator(f.domain_ptr(), t_set);
  ExtensionResult ext = tietze_extend(f, o, both, tilde, y, opt);
  const RationalFunction& phi = ext.phi;

  std::optional<PointSet> chosen;
  for (PointSet cand : f.codomain().neighborhoods_of(y, o)) {
    PointSet w = f.preimage(cand);
    bool ok = osc_on_set(xs, phi, w) < Rational(1, 4);
    (both & w).for_each([&](int x) { ok = ok && abs_of(phi(x) - tilde(x)) < Rational(1, 4); });
    if (ok) {
      chosen = cand;
      break;
    }
  }
  if (!chosen) throw Error(ErrorCode::kCheckFailed, "extension is not close to phi_tilde near y", {y});
  const PointSet w = f.preimage(*chosen);
  const PointSet low = at_most(phi, Rational(1, 4), at_least(phi, 0, w));
  const PointSet high = at_least(phi, Rational(3, 4), at_most(phi, 1, w));
  SeparationCertificate cert{y, *chosen, xs.interior_in(w, low), xs.interior_in(w, high), f_set & w, t_set & w};
  if (!verify_separation(f, cert)) {
    throw Error(ErrorCode::kCheckFailed, "extension does not yield a separation", {y});
  }
  return ExtensionSeparation{cert, std::move(ext)};
}

SigmaSeparatorResult sigma_separator_family(const FiberedMap& f, PointSet o, PointSet f_set,
                                            const std::vector<PointSet>& t_list, int y, const BuildOptions& opt) {
  if (opt.depth < 2) throw Error(ErrorCode::kInvalidArgument, "separator needs depth >= 2", {opt.depth});
  std::vector<ConsistentBinaryFamily> families = build_binary_partitions_sigma(f, o, f_set, t_list, y, opt);
  SigmaSeparatorResult r;
  r.t_pieces = t_list;
  r.oy = families.empty() ? f.codomain().minimal_open_neighborhood(y) : families.front().level(2).o;
  r.pieces_closed = true;
  PointSet w0 = f.preimage(o);
  for (PointSet t : t_list) {
    r.pieces_closed = r.pieces_closed && t.subset_of(w0) && f.domain().is_closed_in(w0, t) && !t.intersects(f_set);
  }
  r.osc_ok = r.values_ok = r.int_cl_ok = true;
  std::vector<RationalFunction> phis;
  for (std::size_t l = 0; l < families.size(); ++l) {
    r.phis.push_back(assemble_limit(families[l]));
    const RationalFunction& phi = r.phis.back().phi;
    phis.push_back(phi);
    ConditionCReport c = verify_condition_C(f, o, f_set, t_list[l], y, phi, r.oy);
    r.osc_ok = r.osc_ok && c.neighborhood_ok && c.osc_ok;
    r.values_ok = r.values_ok && c.range_ok && c.f_side_zero && c.t_side_one;
    r.int_cl_ok = r.int_cl_ok && c.f_side_misses_closure && c.t_side_in_interior;
  }
  r.equicontinuous = is_f_equicontinuous_at(f, phis, y).holds;
  return r;
}

}  // namespace fibertop
