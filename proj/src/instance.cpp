#include "fibertop/instance.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace fibertop {

namespace {

struct Token {
  std::string text;
  int col = 0;  // 1-based
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

[[noreturn]] void syntax(int line, int col, const std::string& what) {
  throw Error(ErrorCode::kSyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what,
              {line, col});
}

[[noreturn]] void invalid(const std::string& object, const std::string& reason, std::vector<std::int64_t> w = {}) {
  throw Error(ErrorCode::kValidationError, object + ": " + reason, std::move(w));
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      line.tokens.push_back(Token{std::string(raw.substr(i, j - i)), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

int parse_index(const Line& line, const Token& t) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size() || v < 0) {
    syntax(line.number, t.col, "expected a point index, got '" + t.text + "'");
  }
  return v;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-')) return false;
  }
  return s != "-" && s != "->";
}

std::string name_at(const Line& line, std::size_t i) {
  if (i >= line.tokens.size()) syntax(line.number, 1, "missing name");
  const Token& t = line.tokens[i];
  if (!valid_name(t.text)) syntax(line.number, t.col, "invalid name '" + t.text + "'");
  return t.text;
}

void expect_word(const Line& line, std::size_t i, const char* word) {
  if (i >= line.tokens.size() || line.tokens[i].text != word) {
    int col = i < line.tokens.size() ? line.tokens[i].col : 1;
    syntax(line.number, col, std::string("expected '") + word + "'");
  }
}

void expect_count(const Line& line, std::size_t n) {
  if (line.tokens.size() != n) {
    int col = line.tokens.size() > n ? line.tokens[n].col : 1;
    syntax(line.number, col, "expected " + std::to_string(n) + " tokens");
  }
}

// Indices tokens [from, to); a lone '-' is the empty set.
PointSet parse_set(const Line& line, std::size_t from, std::size_t to, int n) {
  PointSet s;
  if (to - from == 1 && line.tokens[from].text == "-") return s;
  for (std::size_t i = from; i < to; ++i) {
    int x = parse_index(line, line.tokens[i]);
    if (x >= n) syntax(line.number, line.tokens[i].col, "point " + std::to_string(x) + " out of range");
    s |= PointSet::single(x);
  }
  return s;
}

bool is_keyword(const std::string& t) {
  return t == "space" || t == "map" || t == "set" || t == "func" || t == "family";
}

class Parser {
 public:
  Parser(std::vector<Line> lines, int cap) : lines_(std::move(lines)), cap_(cap) {}

  InstanceFile run() {
    while (i_ < lines_.size()) {
      const Line& head = lines_[i_];
      const std::string& kw = head.tokens[0].text;
      if (kw == "space") {
        parse_space();
      } else if (kw == "map") {
        parse_map();
      } else if (kw == "set") {
        parse_named_set();
      } else if (kw == "func") {
        parse_func();
      } else if (kw == "family") {
        parse_family();
      } else {
        syntax(head.number, head.tokens[0].col, "unexpected '" + kw + "'");
      }
    }
    return std::move(out_);
  }

 private:
  std::vector<Line> lines_;
  int cap_;
  std::size_t i_ = 0;
  InstanceFile out_;

  bool body_line() const { return i_ < lines_.size() && !is_keyword(lines_[i_].tokens[0].text); }

  void check_fresh(const Line& line, bool taken, const std::string& name) {
    if (taken) syntax(line.number, line.tokens[1].col, "duplicate name '" + name + "'");
  }

  const SpacePtr& lookup_space(const Line& line, std::size_t idx) {
    std::string name = name_at(line, idx);
    auto it = out_.spaces.find(name);
    if (it == out_.spaces.end()) syntax(line.number, line.tokens[idx].col, "unknown space '" + name + "'");
    return it->second;
  }

  void parse_space() {
    const Line& head = lines_[i_++];
    expect_count(head, 2);
    std::string name = name_at(head, 1);
    check_fresh(head, out_.spaces.count(name) > 0, name);
    if (i_ >= lines_.size()) syntax(head.number, 1, "space '" + name + "' needs a points line");
    const Line& pts = lines_[i_++];
    expect_word(pts, 0, "points");
    expect_count(pts, 2);
    int n = parse_index(pts, pts.tokens[1]);
    if (n > cap_) {
      throw Error(ErrorCode::kCapExceeded, "space '" + name + "' has " + std::to_string(n) + " points, cap is " +
                                               std::to_string(cap_), {n, cap_});
    }
    if (i_ >= lines_.size()) syntax(pts.number, 1, "space '" + name + "' needs an opens line");
    const Line& op = lines_[i_++];
    expect_word(op, 0, "opens");
    expect_count(op, 1);
    std::vector<PointSet> opens;
    while (body_line()) {
      const Line& l = lines_[i_++];
      opens.push_back(parse_set(l, 0, l.tokens.size(), n));
    }
    try {
      out_.spaces.emplace(name, share(FiniteSpace::from_opens(n, std::move(opens), cap_)));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kCapExceeded) throw;
      invalid("space " + name, std::string(error_code_name(e.code())) + ": " + e.what(), e.detail());
    }
  }

  void parse_map() {
    const Line& head = lines_[i_++];
    expect_count(head, 5);
    std::string name = name_at(head, 1);
    check_fresh(head, out_.maps.count(name) > 0, name);
    const SpacePtr& xs = lookup_space(head, 2);
    expect_word(head, 3, "->");
    const SpacePtr& ys = lookup_space(head, 4);
    std::vector<int> table(static_cast<std::size_t>(xs->size()), -1);
    while (body_line()) {
      const Line& l = lines_[i_++];
      expect_count(l, 3);
      expect_word(l, 1, "->");
      int x = parse_index(l, l.tokens[0]);
      int y = parse_index(l, l.tokens[2]);
      if (x >= xs->size()) syntax(l.number, l.tokens[0].col, "point " + std::to_string(x) + " out of range");
      if (y >= ys->size()) syntax(l.number, l.tokens[2].col, "point " + std::to_string(y) + " out of range");
      if (table[static_cast<std::size_t>(x)] != -1) syntax(l.number, l.tokens[0].col, "point assigned twice");
      table[static_cast<std::size_t>(x)] = y;
    }
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (table[x] == -1) invalid("map " + name, "point " + std::to_string(x) + " has no image");
    }
    try {
      out_.maps.emplace(name, NamedMap{head.tokens[2].text, head.tokens[4].text, FiberedMap(xs, ys, table)});
    } catch (const Error& e) {
      invalid("map " + name, std::string(error_code_name(e.code())) + ": " + e.what(), e.detail());
    }
  }

  void parse_named_set() {
    const Line& head = lines_[i_++];
    expect_count(head, 4);
    std::string name = name_at(head, 1);
    check_fresh(head, out_.sets.count(name) > 0, name);
    expect_word(head, 2, "in");
    const SpacePtr& s = lookup_space(head, 3);
    PointSet acc;
    while (body_line()) {
      const Line& l = lines_[i_++];
      acc |= parse_set(l, 0, l.tokens.size(), s->size());
    }
    out_.sets.emplace(name, NamedSet{head.tokens[3].text, acc});
  }

  void parse_func() {
    const Line& head = lines_[i_++];
    expect_count(head, 4);
    std::string name = name_at(head, 1);
    check_fresh(head, out_.funcs.count(name) > 0, name);
    expect_word(head, 2, "on");
    const SpacePtr& s = lookup_space(head, 3);
    std::vector<std::optional<Rational>> values(static_cast<std::size_t>(s->size()));
    while (body_line()) {
      const Line& l = lines_[i_++];
      // Accept "i: v", "i : v" and "i:v".
      std::string joined;
      for (const Token& t : l.tokens) joined += t.text + " ";
      auto colon = joined.find(':');
      if (colon == std::string::npos) syntax(l.number, l.tokens[0].col, "expected 'index: value'");
      std::string lhs = joined.substr(0, colon);
      std::string rhs = joined.substr(colon + 1);
      auto trim = [](std::string v) {
        while (!v.empty() && v.back() == ' ') v.pop_back();
        while (!v.empty() && v.front() == ' ') v.erase(v.begin());
        return v;
      };
      lhs = trim(lhs);
      rhs = trim(rhs);
      int x = parse_index(l, Token{lhs, l.tokens[0].col});
      if (x >= s->size()) syntax(l.number, l.tokens[0].col, "point " + std::to_string(x) + " out of range");
      if (values[static_cast<std::size_t>(x)]) syntax(l.number, l.tokens[0].col, "point given twice");
      try {
        values[static_cast<std::size_t>(x)] = parse_rational(rhs);
      } catch (const Error& e) {
        syntax(l.number, l.tokens.back().col, e.what());
      }
    }
    std::vector<Rational> table;
    for (std::size_t x = 0; x < values.size(); ++x) {
      if (!values[x]) invalid("func " + name, "point " + std::to_string(x) + " has no value");
      table.push_back(*values[x]);
    }
    out_.funcs.emplace(name, NamedFunction{head.tokens[3].text, RationalFunction(s, std::move(table))});
  }

  void parse_family() {
    const Line& head = lines_[i_++];
    expect_count(head, 6);
    std::string name = name_at(head, 1);
    check_fresh(head, out_.families.count(name) > 0, name);
    expect_word(head, 2, "of");
    std::string map_name = name_at(head, 3);
    auto mit = out_.maps.find(map_name);
    if (mit == out_.maps.end()) syntax(head.number, head.tokens[3].col, "unknown map '" + map_name + "'");
    expect_word(head, 4, "at");
    const FiberedMap& f = mit->second.map;
    int y = parse_index(head, head.tokens[5]);
    if (y >= f.codomain().size()) syntax(head.number, head.tokens[5].col, "point out of range");
    std::vector<PartitionLevel> levels;
    while (body_line()) {
      const Line& ol = lines_[i_++];
      expect_word(ol, 0, "O:");
      PartitionLevel lv{parse_set(ol, 1, ol.tokens.size(), f.codomain().size()), {}};
      if (ol.tokens.size() < 2) syntax(ol.number, 1, "O: needs a set");
      if (!body_line()) syntax(ol.number, 1, "O: line must be followed by a blocks: line");
      const Line& bl = lines_[i_++];
      expect_word(bl, 0, "blocks:");
      std::size_t start = 1;
      for (std::size_t k = 1; k <= bl.tokens.size(); ++k) {
        if (k == bl.tokens.size() || bl.tokens[k].text == "|") {
          if (k == start) syntax(bl.number, k < bl.tokens.size() ? bl.tokens[k].col : 1, "empty block text");
          lv.blocks.push_back(parse_set(bl, start, k, f.domain().size()));
          start = k + 1;
        }
      }
      levels.push_back(std::move(lv));
    }
    try {
      out_.families.emplace(name, NamedFamily{map_name, validate_consistent_family(f, y, std::move(levels))});
    } catch (const Error& e) {
      invalid("family " + name, std::string(error_code_name(e.code())) + ": " + e.what(), e.detail());
    }
  }
};

template <class M>
const auto& find_named(const M& m, const std::string& name, const char* kind) {
  auto it = m.find(name);
  if (it == m.end()) throw Error(ErrorCode::kNotFound, std::string("no ") + kind + " named '" + name + "'");
  return it->second;
}

}  // namespace

const SpacePtr& InstanceFile::space(const std::string& name) const { return find_named(spaces, name, "space"); }
const NamedMap& InstanceFile::map(const std::string& name) const { return find_named(maps, name, "map"); }
const NamedSet& InstanceFile::set(const std::string& name) const { return find_named(sets, name, "set"); }
const NamedFunction& InstanceFile::func(const std::string& name) const { return find_named(funcs, name, "func"); }

bool same_content(const InstanceFile& a, const InstanceFile& b) {
  if (a.spaces.size() != b.spaces.size() || a.maps != b.maps || a.sets != b.sets || a.funcs != b.funcs ||
      a.families.size() != b.families.size()) {
    return false;
  }
  for (const auto& [name, s] : a.spaces) {
    auto it = b.spaces.find(name);
    if (it == b.spaces.end() || !(*it->second == *s)) return false;
  }
  for (const auto& [name, fam] : a.families) {
    auto it = b.families.find(name);
    if (it == b.families.end() || it->second.map != fam.map || it->second.family.y() != fam.family.y() ||
        it->second.family.levels() != fam.family.levels()) {
      return false;
    }
  }
  return true;
}

InstanceFile parse_instance(std::string_view text, int point_cap) {
  return Parser(tokenize(text), point_cap).run();
}

InstanceFile parse_instance_file(const std::string& path, int point_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), point_cap);
}

std::string format_set_line(PointSet s) {
  if (s.empty()) return "-";
  std::string out;
  s.for_each([&](int x) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  });
  return out;
}

std::string format_family(const std::string& name, const std::string& map_name, const ConsistentBinaryFamily& f) {
  std::string out = "family " + name + " of " + map_name + " at " + std::to_string(f.y()) + "\n";
  for (const PartitionLevel& lv : f.levels()) {
    out += "O: " + format_set_line(lv.o) + "\nblocks:";
    for (std::size_t k = 0; k < lv.blocks.size(); ++k) {
      out += (k ? " | " : " ") + format_set_line(lv.blocks[k]);
    }
    out += "\n";
  }
  return out;
}

std::string serialize_instance(const InstanceFile& inst) {
  std::string out;
  for (const auto& [name, s] : inst.spaces) {
    out += "space " + name + "\npoints " + std::to_string(s->size()) + "\nopens\n";
    for (PointSet o : s->opens()) out += format_set_line(o) + "\n";
  }
  for (const auto& [name, m] : inst.maps) {
    out += "map " + name + " " + m.domain + " -> " + m.codomain + "\n";
    for (int x = 0; x < m.map.domain().size(); ++x) out += std::to_string(x) + " -> " + std::to_string(m.map(x)) + "\n";
  }
  for (const auto& [name, s] : inst.sets) {
    out += "set " + name + " in " + s.space + "\n";
    if (!s.set.empty()) out += format_set_line(s.set) + "\n";
  }
  for (const auto& [name, fn] : inst.funcs) {
    out += "func " + name + " on " + fn.space + "\n";
    for (int x = 0; x < fn.function.space().size(); ++x) {
      out += std::to_string(x) + ": " + format_rational(fn.function(x)) + "\n";
    }
  }
  for (const auto& [name, fam] : inst.families) out += format_family(name, fam.map, fam.family);
  return out;
}

}  // namespace fibertop
