// Command-line front end; talks to the library only through fibertop.h.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "fibertop/fibertop.h"

namespace {

int fail() {
  std::cerr << "error: " << ft_last_error() << "\n";
  return 2;
}

struct Output {
  char* text = nullptr;
  ~Output() { ft_free_string(text); }
};

struct Instance {
  ft_instance* ptr = nullptr;
  ~Instance() { ft_instance_free(ptr); }
};

int finish(ft_status st, const Output& out, const int& code) {
  if (st != FT_OK) return fail();
  std::fputs(out.text, stdout);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fiberwise normality on finite spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  ft_config config;
  ft_config_default(&config);
  std::string tolerance = "1/1024";
  app.add_option("--depth", config.depth, "Partition depth")->capture_default_str();
  app.add_option("--tol", tolerance, "Tietze truncation tolerance p/q")->capture_default_str();
  app.add_option("--max-points", config.max_points, "Cap on |X|+|Y| (env FIBERTOP_MAX_POINTS)")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for sampling")->capture_default_str();
  bool json = false;
  app.add_flag("--json", json, "Emit JSON");

  std::string cls, file, map_name;
  auto* check = app.add_subcommand("check", "Decide a normality class of a map");
  check->add_option("class", cls, "prenormal|normal|sigma-normal|perfectly-normal|co-perfect|co-sigma-perfect|"
                                  "hereditarily-normal")
      ->required();
  check->add_option("file", file, "Instance file")->required();
  check->add_option("--map", map_name, "Map name (default: the only map)");

  std::string kind, o_name;
  std::vector<std::string> operands;
  int y = -1;
  auto* build = app.add_subcommand("build", "Build and re-verify a certificate");
  build->add_option("kind", kind, "partitions|separator|extend|sigma-family|functional-witness")->required();
  build->add_option("file", file, "Instance file")->required();
  build->add_option("map", map_name, "Map name")->required();
  build->add_option("operands", operands, "Set and function names");
  auto* y_opt = build->add_option("--y", y, "Point of Y");
  build->add_option("--o", o_name, "Open set of Y to restrict to");

  int n_max = 0, sample = 0, n = 0;
  auto* census = app.add_subcommand("census", "Classify all small maps and check the implications");
  census->add_option("--n-max", n_max, "Exhaustive over |X|+|Y| <= n-max");
  census->add_option("--sample", sample, "Number of random maps");
  census->add_option("--n", n, "|X|+|Y| for sampled maps");

  bool no_sigma = false, no_functional = false;
  auto* harness = app.add_subcommand("harness", "Run the condition equivalence harness");
  harness->add_option("file", file, "Instance file (default: the census)");
  harness->add_option("--map", map_name, "Map name");
  harness->add_option("--n-max", n_max, "Census bound when no file is given");
  harness->add_flag("--no-sigma", no_sigma, "Skip the F_sigma equivalence");
  harness->add_flag("--no-functional", no_functional, "Skip the functional condition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  config.tolerance = tolerance.c_str();
  config.json = json ? 1 : 0;

  Output out;
  int code = 0;
  if (*check) {
    Instance inst;
    if (ft_instance_load(file.c_str(), &inst.ptr) != FT_OK) return fail();
    return finish(ft_check(inst.ptr, cls.c_str(), map_name.c_str(), &config, &out.text, &code), out, code);
  }
  if (*build) {
    Instance inst;
    if (ft_instance_load(file.c_str(), &inst.ptr) != FT_OK) return fail();
    std::vector<const char*> ops;
    for (const std::string& s : operands) ops.push_back(s.c_str());
    ft_build_request req{kind.c_str(), map_name.c_str(), ops.data(), ops.size(), y_opt->count() > 0 ? 1 : 0, y,
                         o_name.c_str()};
    return finish(ft_build(inst.ptr, &req, &config, &out.text, &code), out, code);
  }
  if (*census) {
    if (sample > 0 && n == 0) {
      std::cerr << "error: --sample needs --n\n";
      return 2;
    }
    return finish(ft_census(n_max, sample, n, &config, &out.text, &code), out, code);
  }
  Instance inst;
  if (!file.empty()) {
    if (ft_instance_load(file.c_str(), &inst.ptr) != FT_OK) return fail();
  }
  return finish(ft_harness(inst.ptr, map_name.c_str(), n_max, no_sigma ? 0 : 1, no_functional ? 0 : 1, &config,
                           &out.text, &code),
                out, code);
}
