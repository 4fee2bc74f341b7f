#include "fibertop/commands.hpp"

#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fibertop/census.hpp"
#include "fibertop/harness.hpp"
#include "fibertop/normality.hpp"
#include "fibertop/urysohn_tietze.hpp"

namespace fibertop {

using nlohmann::json;

namespace {

json set_json(PointSet s) { return s.points(); }

json function_json(const RationalFunction& phi) {
  json out = json::array();
  for (const Rational& v : phi.values()) out.push_back(format_rational(v));
  return out;
}

json space_json(const FiniteSpace& s) {
  json opens = json::array();
  for (PointSet o : s.opens()) opens.push_back(set_json(o));
  return {{"points", s.size()}, {"opens", opens}};
}

json map_json(const FiberedMap& f) {
  return {{"X", space_json(f.domain())}, {"Y", space_json(f.codomain())}, {"table", f.table()}};
}

std::string dump_line(const json& j) { return j.dump() + "\n"; }

void require_cap(const FiberedMap& f, const RunConfig& config) {
  const int total = f.domain().size() + f.codomain().size();
  if (total > config.max_points) {
    throw Error(ErrorCode::kCapExceeded,
                "|X| + |Y| = " + std::to_string(total) + " exceeds max-points " + std::to_string(config.max_points),
                {total, config.max_points});
  }
}

using Decider = DeciderReport (*)(const FiberedMap&, const DeciderOptions&);

Decider decider_for(const std::string& cls) {
  static const std::map<std::string, Decider> table = {
      {"prenormal", [](const FiberedMap& f, const DeciderOptions& o) { return is_prenormal(f, o); }},
      {"normal", [](const FiberedMap& f, const DeciderOptions& o) { return is_normal(f, o); }},
      {"sigma-normal", [](const FiberedMap& f, const DeciderOptions& o) { return is_sigma_normal(f, o); }},
      {"perfectly-normal", [](const FiberedMap& f, const DeciderOptions& o) { return is_perfectly_normal(f, o); }},
      {"co-perfect", [](const FiberedMap& f, const DeciderOptions& o) { return is_co_perfectly_normal(f, o); }},
      {"co-sigma-perfect",
       [](const FiberedMap& f, const DeciderOptions& o) { return is_co_sigma_perfectly_normal(f, o); }},
      {"hereditarily-normal",
       [](const FiberedMap& f, const DeciderOptions& o) { return is_hereditarily_normal(f, o); }},
  };
  auto it = table.find(cls);
  if (it == table.end()) throw Error(ErrorCode::kInvalidArgument, "unknown class '" + cls + "'");
  return it->second;
}

json witness_json(const Witness& w) {
  json j = {{"y", w.y}, {"Oy", set_json(w.oy)}};
  if (!w.sets.empty()) {
    json sets = json::array();
    for (PointSet s : w.sets) sets.push_back(set_json(s));
    j["sets"] = sets;
  }
  if (!w.functions.empty()) {
    json fns = json::array();
    for (const RationalFunction& phi : w.functions) fns.push_back(function_json(phi));
    j["functions"] = fns;
  }
  return j;
}

json counterexample_json(const Counterexample& c) {
  return {{"kind", c.kind}, {"O", set_json(c.o)}, {"carrier", set_json(c.carrier)},
          {"F", set_json(c.f_set)}, {"T", set_json(c.t_set)}, {"y", c.y}};
}

std::string function_text(const RationalFunction& phi) {
  std::string out;
  for (int x = 0; x < phi.space().size(); ++x) {
    if (x) out += ' ';
    out += std::to_string(x) + ":" + format_rational(phi(x));
  }
  return out;
}

std::string func_stanza(const std::string& name, const std::string& space, const RationalFunction& phi) {
  std::string out = "func " + name + " on " + space + "\n";
  for (int x = 0; x < phi.space().size(); ++x) out += std::to_string(x) + ": " + format_rational(phi(x)) + "\n";
  return out;
}

[[noreturn]] void check_failed(const std::string& what) {
  throw Error(ErrorCode::kCheckFailed, "re-verification failed: " + what);
}

PointSet resolve_set(const InstanceFile& inst, const std::string& name, const std::string& space,
                     const char* role) {
  const NamedSet& s = inst.set(name);
  if (s.space != space) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(role) + " '" + name + "' lives in '" + s.space + "', expected '" + space + "'");
  }
  return s.set;
}

void require_operands(const BuildRequest& r, std::size_t min, std::size_t max, const char* usage) {
  if (r.operands.size() < min || r.operands.size() > max) {
    throw Error(ErrorCode::kInvalidArgument, "build " + r.kind + " expects " + usage);
  }
}

int require_y(const BuildRequest& r, const FiberedMap& f) {
  if (!r.y) throw Error(ErrorCode::kInvalidArgument, "build " + r.kind + " needs --y");
  f.codomain().check_point(*r.y);
  return *r.y;
}

// Closure of every level check the builder promises, recomputed here.
bool stepwise_ok(const ConsistentBinaryFamily& fam, Rational* osc_out, Rational* bound_out) {
  const FiberedMap& f = fam.map();
  bool ok = true;
  for (int n = 1; n <= fam.depth(); ++n) {
    PointSet w = f.preimage(fam.level(n).o);
    RationalFunction phi = stepwise_function(fam, n);
    Rational osc = osc_on_set_in(f.domain(), w, phi, w);
    mpz_class den = (mpz_class(1) << n) - 1;
    Rational bound(mpz_class(1), den);
    if (osc > bound) ok = false;
    if (n == fam.depth()) {
      *osc_out = osc;
      *bound_out = bound;
    }
  }
  return ok;
}

CommandResult build_partitions(const InstanceFile& inst, const BuildRequest& r, const RunConfig& config,
                               const NamedMap& nm, PointSet o) {
  require_operands(r, 2, 2, "F T");
  const FiberedMap& f = nm.map;
  PointSet fs = resolve_set(inst, r.operands[0], nm.domain, "F");
  PointSet ts = resolve_set(inst, r.operands[1], nm.domain, "T");
  int y = require_y(r, f);
  ConsistentBinaryFamily fam = build_binary_partitions(f, o, fs, ts, y, BuildOptions{config.depth, false});
  try {
    validate_consistent_family(f, y, fam.levels());
  } catch (const Error& e) {
    check_failed(std::string("family: ") + e.what());
  }
  if (!family_separates(fam, fs, ts)) check_failed("family does not separate F and T");
  Rational osc, bound;
  if (!stepwise_ok(fam, &osc, &bound)) check_failed("stepwise oscillation bound");
  if (config.json) {
    json levels = json::array();
    for (const PartitionLevel& lv : fam.levels()) {
      json blocks = json::array();
      for (PointSet b : lv.blocks) blocks.push_back(set_json(b));
      levels.push_back({{"O", set_json(lv.o)}, {"blocks", blocks}});
    }
    return {0, dump_line({{"kind", "partitions"}, {"map", r.map}, {"y", y}, {"depth", fam.depth()},
                          {"stationary_level", stationary_level(fam)}, {"levels", levels}})};
  }
  return {0, "# partitions of " + r.map + " separating " + r.operands[0] + " from " + r.operands[1] + "\n" +
                 format_family("G", r.map, fam)};
}

CommandResult build_separator_cmd(const InstanceFile& inst, const BuildRequest& r, const RunConfig& config,
                                  const NamedMap& nm, PointSet o) {
  require_operands(r, 2, 2, "F T");
  const FiberedMap& f = nm.map;
  PointSet fs = resolve_set(inst, r.operands[0], nm.domain, "F");
  PointSet ts = resolve_set(inst, r.operands[1], nm.domain, "T");
  int y = require_y(r, f);
  SeparatorResult res = build_separator(f, o, fs, ts, y, BuildOptions{config.depth, false});
  ConditionCReport c = verify_condition_C(f, o, fs, ts, y, res.phi.phi, res.oy);
  if (!c.all()) check_failed("separator conditions");
  Rational osc, bound;
  if (!stepwise_ok(res.family, &osc, &bound)) check_failed("stepwise oscillation bound");
  if (config.json) {
    return {0, dump_line({{"kind", "separator"},
                          {"map", r.map},
                          {"y", y},
                          {"Oy", set_json(res.oy)},
                          {"phi", function_json(res.phi.phi)},
                          {"osc_Oy", format_rational(c.osc)},
                          {"depth", res.family.depth()},
                          {"stepwise_osc", format_rational(osc)},
                          {"osc_bound", format_rational(bound)},
                          {"error_bound", format_rational(res.phi.error_bound)},
                          {"stabilized", res.phi.stabilized},
                          {"checks", {{"neighborhood", c.neighborhood_ok}, {"osc", c.osc_ok}, {"range", c.range_ok},
                                      {"F_zero", c.f_side_zero}, {"T_one", c.t_side_one},
                                      {"F_misses_closure", c.f_side_misses_closure},
                                      {"T_in_interior", c.t_side_in_interior}}}})};
  }
  std::string out = "# separator at y=" + std::to_string(y) + ", Oy=" + to_string(res.oy) +
                    ", osc=" + format_rational(c.osc) + "\n# depth " + std::to_string(res.family.depth()) +
                    ": stepwise osc " + format_rational(osc) + " <= " + format_rational(bound) + "\n";
  return {0, out + func_stanza("phi", nm.domain, res.phi.phi)};
}

CommandResult build_extend(const InstanceFile& inst, const BuildRequest& r, const RunConfig& config,
                           const NamedMap& nm, PointSet o) {
  require_operands(r, 2, 2, "F phi");
  const FiberedMap& f = nm.map;
  PointSet fs = resolve_set(inst, r.operands[0], nm.domain, "F");
  const NamedFunction& nf = inst.func(r.operands[1]);
  if (nf.space != nm.domain) throw Error(ErrorCode::kInvalidArgument, "phi must live on " + nm.domain);
  int y = require_y(r, f);
  TietzeOptions topt;
  topt.tolerance = config.tolerance;
  topt.build = BuildOptions{config.depth, true};
  ExtensionResult res = tietze_extend(f, o, fs, nf.function, y, topt);

  for (std::size_t n = 0; n + 1 < res.residuals.size(); ++n) {
    if (res.residuals[n + 1] * 3 > res.residuals[n] * 2) check_failed("residual law at step " + std::to_string(n));
  }
  if (norm(res.phi) > norm_on(nf.function, fs)) check_failed("norm bound");
  ConditionDReport d = verify_condition_D(f, o, fs, nf.function, res.phi, y);
  PointSet local = fs & f.fiber_neighborhood(y);
  if (res.exact) {
    if (!d.all()) check_failed("extension conditions");
  } else {
    Rational worst = 0;
    local.for_each([&](int x) { worst = std::max(worst, abs_of(res.phi(x) - nf.function(x))); });
    if (worst > res.error_bound) check_failed("truncation bound");
  }
  json residuals = json::array();
  for (const Rational& m : res.residuals) residuals.push_back(format_rational(m));
  if (config.json) {
    return {0, dump_line({{"kind", "extend"},
                          {"map", r.map},
                          {"y", y},
                          {"phi", function_json(res.phi)},
                          {"partial_sum", function_json(res.partial_sum)},
                          {"iterations", res.iterations},
                          {"residuals", residuals},
                          {"error_bound", format_rational(res.error_bound)},
                          {"exact", res.exact},
                          {"agreement_set", set_json(res.agreement_set)},
                          {"conditions", {{"a", d.a}, {"G", set_json(d.g)}, {"b", d.b}, {"c", d.c},
                                          {"continuous", d.continuous}}}})};
  }
  std::string out = "# extension at y=" + std::to_string(y) + ", " + std::to_string(res.iterations) +
                    " iterations, " + (res.exact ? "exact" : "truncated, error <= " + format_rational(res.error_bound)) +
                    "\n# residuals:";
  for (const Rational& m : res.residuals) out += " " + format_rational(m);
  return {0, out + "\n" + func_stanza("phi", nm.domain, res.phi)};
}

CommandResult build_sigma_family(const InstanceFile& inst, const BuildRequest& r, const RunConfig& config,
                                 const NamedMap& nm, PointSet o) {
  require_operands(r, 2, 64, "F T_0 [T_1 ...]");
  const FiberedMap& f = nm.map;
  PointSet fs = resolve_set(inst, r.operands[0], nm.domain, "F");
  std::vector<PointSet> ts;
  for (std::size_t i = 1; i < r.operands.size(); ++i) ts.push_back(resolve_set(inst, r.operands[i], nm.domain, "T_l"));
  int y = require_y(r, f);
  SigmaSeparatorResult res = sigma_separator_family(f, o, fs, ts, y, BuildOptions{config.depth, false});
  if (!res.all()) check_failed("sigma separator family");
  std::vector<RationalFunction> fns;
  for (const auto& p : res.phis) fns.push_back(p.phi);
  EquicontinuityReport eq = is_f_equicontinuous_at(f, fns, y);
  if (!eq.holds) check_failed("equicontinuity");
  if (config.json) {
    json phis = json::array();
    json pieces = json::array();
    for (const auto& phi : fns) phis.push_back(function_json(phi));
    for (PointSet p : res.t_pieces) pieces.push_back(set_json(p));
    return {0, dump_line({{"kind", "sigma-family"}, {"map", r.map}, {"y", y}, {"Oy", set_json(res.oy)},
                          {"T_pieces", pieces}, {"phis", phis}, {"equicontinuity_bound", format_rational(eq.certificate.bound)}})};
  }
  std::string out = "# sigma family at y=" + std::to_string(y) + ", Oy=" + to_string(res.oy) + "\n";
  for (std::size_t l = 0; l < fns.size(); ++l) out += func_stanza("phi_" + std::to_string(l), nm.domain, fns[l]);
  return {0, out};
}

CommandResult build_functional_witness(const InstanceFile& inst, const BuildRequest& r, const RunConfig& config,
                                       const NamedMap& nm) {
  require_operands(r, 1, 1, "U");
  const FiberedMap& f = nm.map;
  PointSet u = resolve_set(inst, r.operands[0], nm.domain, "U");
  DeciderOptions opt;
  opt.depth = config.depth;
  opt.max_witnesses = f.codomain().size();
  DeciderReport rep = is_f_functionally_open(f, u, opt);
  for (const Witness& w : rep.witnesses) {
    if (w.functions.size() != 1) check_failed("witness shape");
    const RationalFunction& phi = w.functions[0];
    PointSet wy = f.preimage(w.oy);
    if (!osc_vanishes_in(f.domain(), wy, phi, f.fiber_neighborhood(w.y) & wy)) check_failed("f-continuity");
    PointSet positive;
    wy.for_each([&](int x) {
      if (phi(x) > 0) positive |= PointSet::single(x);
      if (phi(x) < 0 || phi(x) > 1) check_failed("range");
    });
    if (positive != (u & wy)) check_failed("positive set");
  }
  if (config.json) {
    json j = {{"kind", "functional-witness"}, {"map", r.map}, {"U", set_json(u)}, {"holds", rep.holds}};
    json ws = json::array();
    for (const Witness& w : rep.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = ws;
    if (rep.counterexample) j["counterexample"] = counterexample_json(*rep.counterexample);
    return {rep.holds ? 0 : 1, dump_line(j)};
  }
  std::string out = r.operands[0] + (rep.holds ? " is" : " is not") + " f-functionally open\n";
  for (const Witness& w : rep.witnesses) {
    out += "  y=" + std::to_string(w.y) + " Oy=" + to_string(w.oy) + " phi " + function_text(w.functions[0]) + "\n";
  }
  if (rep.counterexample) out += "  fails at y=" + std::to_string(rep.counterexample->y) + "\n";
  return {rep.holds ? 0 : 1, out};
}

json classification_json(const Classification& c) {
  return {{"prenormal", c.prenormal},
          {"normal", c.normal},
          {"sigma_prenormal", c.sigma_prenormal},
          {"sigma_normal", c.sigma_normal},
          {"perfectly_normal", c.perfectly_normal},
          {"co_perfect", c.co_perfect},
          {"co_sigma_perfect", c.co_sigma_perfect},
          {"hereditarily_normal", c.hereditarily_normal}};
}

std::string triple_digest(const HarnessReport& h) {
  std::ostringstream s;
  for (const TripleOutcome& t : h.triples) {
    s << t.o.bits() << ',' << t.f_set.bits() << ',' << t.t_set.bits() << ',' << t.y << ',' << t.a << t.b << t.c
      << t.d << ';';
  }
  s << '|';
  for (const SigmaOutcome& t : h.sigma_triples) {
    s << t.o.bits() << ',' << t.f_set.bits() << ',' << t.t_set.bits() << ',' << t.y << ',' << t.a << t.b << t.c
      << ';';
  }
  return fnv1a_hex(s.str());
}

json harness_json(std::size_t id, const FiberedMap& f, const HarnessReport& h) {
  return {{"id", id},
          {"map", map_json(f)},
          {"A", h.normal},
          {"B", h.all_b},
          {"C", h.all_c},
          {"D", h.all_d},
          {"sigma", {{"A", h.sigma_normal}, {"B", h.sigma_all_b}, {"C", h.sigma_all_c}}},
          {"co_sigma_perfect", h.co_sigma_perfect},
          {"functional_condition", h.functional_condition},
          {"triples", h.triples.size()},
          {"sigma_triples", h.sigma_triples.size()},
          {"extensions", {{"runs", h.extensions.runs}, {"exact", h.extensions.exact}}},
          {"mismatches", h.mismatches},
          {"notes", h.notes.size()},
          {"digest", triple_digest(h)}};
}

}  // namespace

int default_max_points() {
  if (const char* env = std::getenv("FIBERTOP_MAX_POINTS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1000) return static_cast<int>(v);
  }
  return 12;
}

void validate_config(const RunConfig& config) {
  if (config.depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be at least 1", {config.depth});
  if (config.depth > 12) throw Error(ErrorCode::kInvalidArgument, "depth above 12 is not supported", {config.depth});
  if (config.tolerance <= 0) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (config.max_points < 1) throw Error(ErrorCode::kInvalidArgument, "max-points must be positive");
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 15];
  return out;
}

const NamedMap& select_map(const InstanceFile& inst, const std::string& map_name) {
  if (!map_name.empty()) return inst.map(map_name);
  if (inst.maps.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "file has " + std::to_string(inst.maps.size()) + " maps; name one with --map");
  }
  return inst.maps.begin()->second;
}

CommandResult cmd_check(const InstanceFile& inst, const std::string& cls, const std::string& map_name,
                        const RunConfig& config) {
  validate_config(config);
  Decider decide = decider_for(cls);
  const FiberedMap& f = select_map(inst, map_name).map;
  require_cap(f, config);
  DeciderOptions opt;
  opt.depth = config.depth;
  DeciderReport rep = decide(f, opt);
  const int code = rep.holds ? 0 : 1;
  if (config.json) {
    json j = {{"class", cls}, {"holds", rep.holds}};
    json ws = json::array();
    for (const Witness& w : rep.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = ws;
    if (rep.counterexample) j["counterexample"] = counterexample_json(*rep.counterexample);
    return {code, dump_line(j)};
  }
  std::string out = cls + ": " + (rep.holds ? "holds" : "fails") + "\n";
  for (const Witness& w : rep.witnesses) {
    out += "  witness y=" + std::to_string(w.y) + " Oy=" + to_string(w.oy);
    for (PointSet s : w.sets) out += " " + to_string(s);
    for (const RationalFunction& phi : w.functions) out += " [" + function_text(phi) + "]";
    out += "\n";
  }
  if (rep.counterexample) {
    const Counterexample& c = *rep.counterexample;
    out += "  counterexample " + c.kind + ": O=" + to_string(c.o) + " carrier=" + to_string(c.carrier) +
           " F=" + to_string(c.f_set) + " T=" + to_string(c.t_set) + " y=" + std::to_string(c.y) + "\n";
  }
  return {code, out};
}

CommandResult cmd_build(const InstanceFile& inst, const BuildRequest& req, const RunConfig& config) {
  validate_config(config);
  const NamedMap& nm = select_map(inst, req.map);
  BuildRequest request = req;
  if (request.map.empty()) request.map = inst.maps.begin()->first;
  require_cap(nm.map, config);
  PointSet o = request.o.empty() ? nm.map.codomain().points() : resolve_set(inst, request.o, nm.codomain, "O");
  if (request.kind == "partitions") return build_partitions(inst, request, config, nm, o);
  if (request.kind == "separator") return build_separator_cmd(inst, request, config, nm, o);
  if (request.kind == "extend") return build_extend(inst, request, config, nm, o);
  if (request.kind == "sigma-family") return build_sigma_family(inst, request, config, nm, o);
  if (request.kind == "functional-witness") return build_functional_witness(inst, request, config, nm);
  throw Error(ErrorCode::kInvalidArgument, "unknown build kind '" + request.kind + "'");
}

CommandResult cmd_census(const CensusRequest& request, const RunConfig& config) {
  validate_config(config);
  std::vector<FiberedMap> maps;
  json mode;
  if (request.sample > 0) {
    if (request.n > config.max_points) {
      throw Error(ErrorCode::kCapExceeded, "n exceeds max-points", {request.n, config.max_points});
    }
    maps = sample_maps(request.n, request.sample, config.seed);
    mode = {{"sample", request.sample}, {"n", request.n}, {"seed", config.seed}};
  } else {
    if (request.n_max > config.max_points) {
      throw Error(ErrorCode::kCapExceeded, "n-max exceeds max-points", {request.n_max, config.max_points});
    }
    if (request.n_max < 2 || request.n_max > 7) {
      throw Error(ErrorCode::kInvalidArgument, "exhaustive census supports n-max in 2..7", {request.n_max});
    }
    maps = enumerate_maps(request.n_max);
    mode = {{"n_max", request.n_max}};
  }
  std::vector<CensusRecord> records = run_census(maps, CensusOptions{config.depth, request.heredity});
  std::map<std::string, int> counts;
  int violations = 0;
  std::string out;
  for (const CensusRecord& r : records) {
    json cls = classification_json(r.cls);
    for (auto& [k, v] : cls.items()) counts[k] += v.get<bool>() ? 1 : 0;
    violations += static_cast<int>(r.violations.size());
    if (config.json) {
      out += dump_line({{"id", r.id}, {"map", map_json(r.map)}, {"classes", cls}, {"violations", r.violations}});
    } else {
      for (const std::string& v : r.violations) out += "violation in map " + std::to_string(r.id) + ": " + v + "\n";
    }
  }
  json summary = {{"mode", mode}, {"maps", records.size()}, {"counts", counts}, {"violations", violations}};
  if (config.json) {
    out += dump_line({{"summary", summary}});
  } else {
    out += "maps " + std::to_string(records.size()) + ", violations " + std::to_string(violations) + "\n";
    for (const auto& [k, v] : counts) out += "  " + k + " " + std::to_string(v) + "\n";
  }
  return {violations == 0 ? 0 : 1, out};
}

CommandResult cmd_harness(const HarnessRequest& request, const RunConfig& config) {
  validate_config(config);
  std::vector<FiberedMap> maps;
  if (request.instance) {
    if (!request.map.empty()) {
      maps.push_back(request.instance->map(request.map).map);
    } else {
      for (const auto& [name, nm] : request.instance->maps) maps.push_back(nm.map);
    }
    for (const FiberedMap& f : maps) require_cap(f, config);
  } else {
    if (request.n_max > config.max_points) {
      throw Error(ErrorCode::kCapExceeded, "n-max exceeds max-points", {request.n_max, config.max_points});
    }
    if (request.n_max < 2 || request.n_max > 7) {
      throw Error(ErrorCode::kInvalidArgument, "harness census supports n-max in 2..7", {request.n_max});
    }
    maps = enumerate_maps(request.n_max);
  }
  HarnessOptions hopt;
  hopt.depth = config.depth;
  hopt.tolerance = config.tolerance;
  hopt.sigma = request.sigma;
  hopt.functional = request.functional;
  std::vector<std::optional<HarnessReport>> slots(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) { slots[i] = equivalence_harness(maps[i], hopt); });

  std::string out;
  std::string digests;
  std::size_t mismatches = 0, triples = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const HarnessReport& h = *slots[i];
    json j = harness_json(i, maps[i], h);
    digests += j["digest"].get<std::string>();
    mismatches += h.mismatches.size();
    triples += h.triples.size();
    if (config.json) {
      out += dump_line(j);
    } else {
      for (const std::string& m : h.mismatches) out += "mismatch in map " + std::to_string(i) + ": " + m + "\n";
    }
  }
  json summary = {{"maps", maps.size()}, {"triples", triples}, {"mismatches", mismatches},
                  {"digest", fnv1a_hex(digests)}};
  if (config.json) {
    out += dump_line({{"summary", summary}});
  } else {
    out += "maps " + std::to_string(maps.size()) + ", triples " + std::to_string(triples) + ", mismatches " +
           std::to_string(mismatches) + ", digest " + summary["digest"].get<std::string>() + "\n";
  }
  return {mismatches == 0 ? 0 : 1, out};
}

}  // namespace fibertop
