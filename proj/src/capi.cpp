#include "fibertop/fibertop.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fibertop/commands.hpp"
#include "fibertop/instance.hpp"
#include "fibertop/oscillation.hpp"

struct ft_space {
  fibertop::SpacePtr space;
};
struct ft_map {
  fibertop::FiberedMap map;
};
struct ft_function {
  fibertop::RationalFunction fn;
};
struct ft_instance {
  fibertop::InstanceFile file;
};

namespace {

thread_local std::string last_error;

template <class Fn>
ft_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return FT_OK;
  } catch (const fibertop::Error& e) {
    last_error = std::string(fibertop::error_code_name(e.code())) + ": " + e.what();
    return static_cast<ft_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FT_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FT_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw fibertop::Error(fibertop::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fibertop::RunConfig to_config(const ft_config* c) {
  fibertop::RunConfig rc;
  rc.max_points = fibertop::default_max_points();
  if (!c) return rc;
  rc.depth = c->depth;
  if (c->tolerance) rc.tolerance = fibertop::parse_rational(c->tolerance);
  rc.max_points = c->max_points;
  rc.seed = c->seed;
  rc.json = c->json != 0;
  return rc;
}

std::string str_or_empty(const char* s) { return s ? s : ""; }

void emit(const fibertop::CommandResult& r, char** report, int* exit_code) {
  require(report, "report");
  require(exit_code, "exit_code");
  *report = dup_string(r.output);
  *exit_code = r.exit_code;
}

}  // namespace

extern "C" {

void ft_config_default(ft_config* config) {
  if (!config) return;
  config->depth = 6;
  config->tolerance = nullptr;
  config->max_points = fibertop::default_max_points();
  config->seed = 0;
  config->json = 0;
}

const char* ft_last_error(void) { return last_error.c_str(); }

const char* ft_status_name(ft_status status) {
  if (status == FT_OK) return "Ok";
  if (status == FT_INTERNAL) return "Internal";
  return fibertop::error_code_name(static_cast<fibertop::ErrorCode>(status));
}

void ft_free_string(char* s) { std::free(s); }

ft_status ft_instance_parse(const char* text, ft_instance** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new ft_instance{fibertop::parse_instance(text, fibertop::kHardPointLimit)};
  });
}

ft_status ft_instance_load(const char* path, ft_instance** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new ft_instance{fibertop::parse_instance_file(path, fibertop::kHardPointLimit)};
  });
}

ft_status ft_instance_serialize(const ft_instance* inst, char** out) {
  return guard([&] {
    require(inst, "instance");
    require(out, "out");
    *out = dup_string(fibertop::serialize_instance(inst->file));
  });
}

void ft_instance_free(ft_instance* inst) { delete inst; }

ft_status ft_instance_space(const ft_instance* inst, const char* name, ft_space** out) {
  return guard([&] {
    require(inst, "instance");
    require(name, "name");
    require(out, "out");
    *out = new ft_space{inst->file.space(name)};
  });
}

ft_status ft_instance_map(const ft_instance* inst, const char* name, ft_map** out) {
  return guard([&] {
    require(inst, "instance");
    require(name, "name");
    require(out, "out");
    *out = new ft_map{inst->file.map(name).map};
  });
}

ft_status ft_instance_function(const ft_instance* inst, const char* name, ft_function** out) {
  return guard([&] {
    require(inst, "instance");
    require(name, "name");
    require(out, "out");
    *out = new ft_function{inst->file.func(name).function};
  });
}

ft_status ft_space_from_opens(int n, const uint32_t* opens, size_t count, ft_space** out) {
  return guard([&] {
    require(out, "out");
    if (count) require(opens, "opens");
    std::vector<fibertop::PointSet> sets;
    for (size_t i = 0; i < count; ++i) sets.emplace_back(opens[i]);
    *out = new ft_space{fibertop::share(fibertop::FiniteSpace::from_opens(n, std::move(sets), fibertop::kHardPointLimit))};
  });
}

void ft_space_free(ft_space* space) { delete space; }

int ft_space_size(const ft_space* space) { return space ? space->space->size() : -1; }

ft_status ft_space_closure(const ft_space* space, uint32_t set, uint32_t* out) {
  return guard([&] {
    require(space, "space");
    require(out, "out");
    space->space->check_subset(fibertop::PointSet(set));
    *out = space->space->closure(fibertop::PointSet(set)).bits();
  });
}

ft_status ft_space_minimal_neighborhood(const ft_space* space, int x, uint32_t* out) {
  return guard([&] {
    require(space, "space");
    require(out, "out");
    space->space->check_point(x);
    *out = space->space->minimal_open_neighborhood(x).bits();
  });
}

ft_status ft_map_create(const ft_space* domain, const ft_space* codomain, const int* table, ft_map** out) {
  return guard([&] {
    require(domain, "domain");
    require(codomain, "codomain");
    require(out, "out");
    const int n = domain->space->size();
    if (n) require(table, "table");
    *out = new ft_map{fibertop::FiberedMap(domain->space, codomain->space, std::vector<int>(table, table + n))};
  });
}

void ft_map_free(ft_map* map) { delete map; }

ft_status ft_function_create(const ft_space* space, const char* const* values, ft_function** out) {
  return guard([&] {
    require(space, "space");
    require(out, "out");
    const int n = space->space->size();
    if (n) require(values, "values");
    std::vector<fibertop::Rational> table;
    for (int i = 0; i < n; ++i) {
      require(values[i], "value");
      table.push_back(fibertop::parse_rational(values[i]));
    }
    *out = new ft_function{fibertop::RationalFunction(space->space, std::move(table))};
  });
}

void ft_function_free(ft_function* fn) { delete fn; }

ft_status ft_osc_at_point(const ft_function* fn, int x, char** out) {
  return guard([&] {
    require(fn, "function");
    require(out, "out");
    fn->fn.space().check_point(x);
    *out = dup_string(fibertop::format_rational(fibertop::osc_at_point(fn->fn.space(), fn->fn, x)));
  });
}

ft_status ft_is_f_continuous_at(const ft_map* map, const ft_function* fn, int y, int* out) {
  return guard([&] {
    require(map, "map");
    require(fn, "function");
    require(out, "out");
    if (!(fn->fn.space() == map->map.domain())) {
      throw fibertop::Error(fibertop::ErrorCode::kInvalidArgument, "function does not live on the domain");
    }
    map->map.codomain().check_point(y);
    *out = fibertop::is_f_continuous_at(map->map, fn->fn, y).holds ? 1 : 0;
  });
}

ft_status ft_check(const ft_instance* inst, const char* cls, const char* map, const ft_config* config,
                   char** report, int* exit_code) {
  return guard([&] {
    require(inst, "instance");
    require(cls, "class");
    emit(fibertop::cmd_check(inst->file, cls, str_or_empty(map), to_config(config)), report, exit_code);
  });
}

ft_status ft_build(const ft_instance* inst, const ft_build_request* request, const ft_config* config,
                   char** report, int* exit_code) {
  return guard([&] {
    require(inst, "instance");
    require(request, "request");
    require(request->kind, "kind");
    fibertop::BuildRequest r;
    r.kind = request->kind;
    r.map = str_or_empty(request->map);
    if (request->operand_count) require(request->operands, "operands");
    for (size_t i = 0; i < request->operand_count; ++i) r.operands.push_back(str_or_empty(request->operands[i]));
    if (request->has_y) r.y = request->y;
    r.o = str_or_empty(request->o);
    emit(fibertop::cmd_build(inst->file, r, to_config(config)), report, exit_code);
  });
}

ft_status ft_census(int n_max, int sample, int n, const ft_config* config, char** report, int* exit_code) {
  return guard([&] {
    fibertop::CensusRequest r;
    r.n_max = n_max;
    r.sample = sample;
    r.n = n;
    emit(fibertop::cmd_census(r, to_config(config)), report, exit_code);
  });
}

ft_status ft_harness(const ft_instance* inst, const char* map, int n_max, int sigma, int functional,
                     const ft_config* config, char** report, int* exit_code) {
  return guard([&] {
    fibertop::HarnessRequest r;
    r.instance = inst ? &inst->file : nullptr;
    r.map = str_or_empty(map);
    r.n_max = n_max;
    r.sigma = sigma != 0;
    r.functional = functional != 0;
    emit(fibertop::cmd_harness(r, to_config(config)), report, exit_code);
  });
}

}  // extern "C"
