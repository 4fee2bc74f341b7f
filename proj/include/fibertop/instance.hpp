#pragma once

#include <map>
#include <string>
#include <string_view>

#include "fibertop/oscillation.hpp"
#include "fibertop/partitions.hpp"
#include "fibertop/space.hpp"

namespace fibertop {

struct NamedSet {
  std::string space;
  PointSet set;
  bool operator==(const NamedSet&) const = default;
};

struct NamedFunction {
  std::string space;
  RationalFunction function;
  bool operator==(const NamedFunction&) const = default;
};

struct NamedMap {
  std::string domain;
  std::string codomain;
  FiberedMap map;
  bool operator==(const NamedMap&) const = default;
};

struct NamedFamily {
  std::string map;
  ConsistentBinaryFamily family;
};

// Parsed instance file. Names are unique per kind; std::map keeps the
// serialization order stable.
struct InstanceFile {
  std::map<std::string, SpacePtr> spaces;
  std::map<std::string, NamedMap> maps;
  std::map<std::string, NamedSet> sets;
  std::map<std::string, NamedFunction> funcs;
  std::map<std::string, NamedFamily> families;

  const SpacePtr& space(const std::string& name) const;
  const NamedMap& map(const std::string& name) const;
  const NamedSet& set(const std::string& name) const;
  const NamedFunction& func(const std::string& name) const;
};

bool same_content(const InstanceFile& a, const InstanceFile& b);

// Grammar (one stanza per keyword line, '#' starts a comment):
//   space <name>            points <n>      opens     <set lines>
//   map <name> <X> -> <Y>   <i> -> <j> lines
//   set <name> in <space>   <set lines> (their union)
//   func <name> on <space>  <i>: <rational> lines, every point once
//   family <name> of <map> at <y>   O: <set> / blocks: <set> | <set> | ...
// A set line is space-separated indices, or '-' for the empty set.
// Throws kSyntaxError ("line L, column C: ...") or kValidationError.
InstanceFile parse_instance(std::string_view text, int point_cap = kHardPointLimit);
InstanceFile parse_instance_file(const std::string& path, int point_cap = kHardPointLimit);

std::string serialize_instance(const InstanceFile& inst);

std::string format_set_line(PointSet s);
std::string format_family(const std::string& name, const std::string& map_name, const ConsistentBinaryFamily& f);

}  // namespace fibertop
