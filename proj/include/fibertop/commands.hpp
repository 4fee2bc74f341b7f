#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibertop/instance.hpp"
#include "fibertop/rational.hpp"

namespace fibertop {

struct RunConfig {
  int depth = 6;
  Rational tolerance = Rational(1, 1024);
  int max_points = 12;  // bound on |X| + |Y| for the exhaustive commands
  std::uint64_t seed = 0;
  bool json = false;
};

// 12, or FIBERTOP_MAX_POINTS when it holds a positive integer.
int default_max_points();

// Throws kInvalidArgument for depth < 1 or tolerance <= 0.
void validate_config(const RunConfig& config);

struct CommandResult {
  int exit_code = 0;
  std::string output;
};

inline const std::vector<std::string> kCheckClasses = {
    "prenormal", "normal", "sigma-normal", "perfectly-normal", "co-perfect", "co-sigma-perfect", "hereditarily-normal"};

inline const std::vector<std::string> kBuildKinds = {"partitions", "separator", "extend", "sigma-family",
                                                     "functional-witness"};

// An empty map name selects the only map of the file.
const NamedMap& select_map(const InstanceFile& inst, const std::string& map_name);

// Exit 0 when the class holds (certificate), 1 when it fails (counterexample).
CommandResult cmd_check(const InstanceFile& inst, const std::string& cls, const std::string& map_name,
                        const RunConfig& config);

struct BuildRequest {
  std::string kind;
  std::string map;
  // partitions/separator: F T; extend: F phi; sigma-family: F T_0 T_1 ...;
  // functional-witness: U.
  std::vector<std::string> operands;
  std::optional<int> y;
  std::string o;  // set in Y; empty means all of Y
};

// Every artifact is re-verified before it is emitted; a failed re-check
// throws kCheckFailed. functional-witness exits 1 when no witness exists.
CommandResult cmd_build(const InstanceFile& inst, const BuildRequest& request, const RunConfig& config);

struct CensusRequest {
  int n_max = 0;   // exhaustive over |X| + |Y| <= n_max
  int sample = 0;  // otherwise this many random maps with |X| + |Y| = n
  int n = 0;
  bool heredity = true;
};

// JSON lines, one per map, then a summary line. Exit 1 on any violation.
CommandResult cmd_census(const CensusRequest& request, const RunConfig& config);

struct HarnessRequest {
  const InstanceFile* instance = nullptr;  // maps of a file, or
  std::string map;                         // one of them
  int n_max = 0;                           // the exhaustive census
  bool sigma = true;
  bool functional = true;
};

// JSON lines with per-instance condition values and a digest of all triple
// outcomes. Exit 1 on any mismatch.
CommandResult cmd_harness(const HarnessRequest& request, const RunConfig& config);

// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace fibertop
