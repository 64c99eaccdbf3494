#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "dsl.hpp"
#include "errors.hpp"

namespace atlaskit {

enum class GluingMode { cocycle, epos };

struct ChartDecl {
  std::string name;
  Predicate domain = Predicate::always();
  bool operator==(const ChartDecl&) const = default;
};

/// `[map.<from>-><to>]`: rewrites chart `from` coordinates into chart `to`
/// coordinates. In cocycle mode `where` restricts the domain inside chart
/// `from`; in epos mode the domain is the whole range of `from`.
struct MapDecl {
  std::string from;
  std::string to;
  std::optional<Predicate> where;
  MapSpec expr;
  bool operator==(const MapDecl&) const = default;
};

struct GluingFile {
  std::string algebra;
  std::size_t dim = 1;
  GluingMode mode = GluingMode::cocycle;
  std::vector<ChartDecl> charts;
  std::vector<MapDecl> maps;
  std::vector<std::pair<std::string, std::string>> equiv;  // epos mode: a ~ b
  std::vector<std::pair<std::string, std::string>> order;  // epos mode: a < b, a below b

  bool operator==(const GluingFile&) const = default;

  const ChartDecl* chart(const std::string& name) const {
    for (const auto& c : charts)
      if (c.name == name) return &c;
    return nullptr;
  }

  const MapDecl* map(const std::string& from, const std::string& to) const {
    for (const auto& m : maps)
      if (m.from == from && m.to == to) return &m;
    return nullptr;
  }
};

/// `[mor.<i>-><j>]`: component from source chart i into target chart j.
struct ComponentDecl {
  std::string from;
  std::string to;
  MapSpec expr;
  bool operator==(const ComponentDecl&) const = default;
};

/// Morphism kit: source and target kits (paths or catalog names) plus
/// chart-formula components.
struct MorphismFile {
  std::string source;
  std::string target;
  std::vector<ComponentDecl> components;
  bool operator==(const MorphismFile&) const = default;
};

namespace detail {

struct IniEntry {
  std::string key;
  std::string value;
  std::size_t line, key_col, value_col;
};

struct IniSection {
  std::string name;
  std::size_t line, col;  // position of the name inside the brackets
  std::vector<IniEntry> entries;
  std::set<std::string> used;

  const IniEntry* get(const std::string& key) {
    used.insert(key);
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }

  void reject_unknown() const {
    for (const auto& e : entries)
      if (!used.count(e.key)) throw SyntaxError(e.line, e.key_col, "unknown key '" + e.key + "' in [" + name + "]");
  }
};

inline bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool is_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_name_char);
}

inline std::vector<IniSection> read_ini(std::string_view text) {
  std::vector<IniSection> sections;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    std::size_t e = line.find_last_not_of(" \t\r") + 1;
    if (line[b] == '[') {
      if (line[e - 1] != ']') throw SyntaxError(line_no, e, "expected ']'");
      std::string name(line.substr(b + 1, e - b - 2));
      if (name.empty()) throw SyntaxError(line_no, b + 2, "empty section name");
      for (const auto& s : sections)
        if (s.name == name) throw SyntaxError(line_no, b + 2, "duplicate section [" + name + "]");
      sections.push_back(IniSection{name, line_no, b + 2, {}, {}});
    } else {
      auto eq = line.find('=');
      if (eq == std::string_view::npos || eq < b) throw SyntaxError(line_no, b + 1, "expected 'key = value'");
      if (sections.empty()) throw SyntaxError(line_no, b + 1, "entry outside of any section");
      std::string_view key = line.substr(b, eq - b);
      key = key.substr(0, key.find_last_not_of(" \t") + 1);
      if (!is_name(key)) throw SyntaxError(line_no, b + 1, "bad key '" + std::string(key) + "'");
      std::size_t vb = line.find_first_not_of(" \t", eq + 1);
      std::string value = vb == std::string_view::npos || vb >= e ? "" : std::string(line.substr(vb, e - vb));
      std::size_t value_col = (vb == std::string_view::npos ? e : vb) + 1;
      for (const auto& prev : sections.back().entries)
        if (prev.key == key) throw SyntaxError(line_no, b + 1, "duplicate key '" + std::string(key) + "'");
      sections.back().entries.push_back(IniEntry{std::string(key), value, line_no, b + 1, value_col});
    }
    if (end == text.size()) break;
  }
  return sections;
}

/// Splits `a, b, c` into trimmed items with their columns.
inline std::vector<std::pair<std::string, std::size_t>> split_list(const IniEntry& e) {
  std::vector<std::pair<std::string, std::size_t>> out;
  if (e.value.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = e.value.find(',', pos);
    std::string_view item = std::string_view(e.value).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t ib = item.find_first_not_of(" \t");
    if (ib == std::string_view::npos) throw SyntaxError(e.line, e.value_col + pos, "empty list item");
    std::size_t ie = item.find_last_not_of(" \t") + 1;
    out.emplace_back(std::string(item.substr(ib, ie - ib)), e.value_col + pos + ib);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// `a ~ b` or `a < b` items.
inline std::vector<std::pair<std::string, std::string>> split_pairs(const IniEntry& e, char sep,
                                                                    const std::set<std::string>& declared) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [item, col] : split_list(e)) {
    auto at = item.find(sep);
    if (at == std::string::npos) throw SyntaxError(e.line, col, std::string("expected 'a ") + sep + " b'");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    std::string a = trim(item.substr(0, at)), b = trim(item.substr(at + 1));
    if (!is_name(a)) throw SyntaxError(e.line, col, "bad chart name '" + a + "'");
    if (!is_name(b)) throw SyntaxError(e.line, col, "bad chart name '" + b + "'");
    if (!declared.count(a)) throw ResolutionError(e.line, col, "undeclared chart '" + a + "'");
    if (!declared.count(b)) throw ResolutionError(e.line, col, "undeclared chart '" + b + "'");
    out.emplace_back(a, b);
  }
  return out;
}

/// Splits `<prefix><a>-><b>` section names.
inline std::optional<std::pair<std::string, std::string>> arrow_name(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  std::string rest = name.substr(prefix.size());
  auto arrow = rest.find("->");
  if (arrow == std::string::npos) return std::nullopt;
  return std::make_pair(rest.substr(0, arrow), rest.substr(arrow + 2));
}

inline const IniEntry& require(IniSection& s, const std::string& key) {
  if (const IniEntry* e = s.get(key)) return *e;
  throw SyntaxError(s.line, s.col, "missing key '" + key + "' in [" + s.name + "]");
}

}  // namespace detail

/// Parses the INI-style gluing format; see docs/gluing-format.md.
inline GluingFile parse_gluing_file(std::string_view text) {
  auto sections = detail::read_ini(text);
  GluingFile g;
  auto find = [&](const std::string& name) -> detail::IniSection* {
    for (auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  };

  detail::IniSection* model = find("model");
  if (!model) throw SyntaxError(1, 1, "missing [model] section");
  {
    const auto& alg = detail::require(*model, "algebra");
    try {
      Algebra::parse(alg.value);
    } catch (const InputError& e) {
      throw SyntaxError(alg.line, alg.value_col, e.what());
    }
    g.algebra = alg.value;
    const auto& dim = detail::require(*model, "dim");
    if (dim.value.empty() || dim.value.find_first_not_of("0123456789") != std::string::npos || dim.value.size() > 3 ||
        std::stoul(dim.value) == 0)
      throw SyntaxError(dim.line, dim.value_col, "dim must be a positive integer");
    g.dim = std::stoul(dim.value);
    if (const auto* mode = model->get("mode")) {
      if (mode->value == "cocycle")
        g.mode = GluingMode::cocycle;
      else if (mode->value == "epos")
        g.mode = GluingMode::epos;
      else
        throw SyntaxError(mode->line, mode->value_col, "mode must be 'cocycle' or 'epos'");
    }
    model->reject_unknown();
  }

  detail::IniSection* charts = find("charts");
  if (!charts) throw SyntaxError(model->line, 1, "missing [charts] section");
  std::set<std::string> declared;
  {
    const auto& names = detail::require(*charts, "names");
    for (const auto& [name, col] : detail::split_list(names)) {
      if (!detail::is_name(name)) throw SyntaxError(names.line, col, "bad chart name '" + name + "'");
      if (!declared.insert(name).second) throw SyntaxError(names.line, col, "duplicate chart '" + name + "'");
      g.charts.push_back(ChartDecl{name, Predicate::always()});
    }
    if (g.charts.empty()) throw SyntaxError(names.line, names.value_col, "no charts declared");
    charts->reject_unknown();
  }

  auto check_vars = [&](const auto& parsed, const detail::IniEntry& e) {
    try {
      check_variables(parsed, g.dim);
    } catch (const InputError& err) {
      throw SyntaxError(e.line, e.value_col, err.what());
    }
  };

  for (auto& s : sections) {
    if (s.name == "model" || s.name == "charts") continue;
    if (s.name == "epos") {
      if (g.mode != GluingMode::epos) throw SyntaxError(s.line, s.col, "[epos] requires mode = epos");
      if (const auto* e = s.get("equiv")) g.equiv = detail::split_pairs(*e, '~', declared);
      if (const auto* e = s.get("order")) g.order = detail::split_pairs(*e, '<', declared);
      s.reject_unknown();
    } else if (s.name.rfind("domain.", 0) == 0) {
      std::string name = s.name.substr(7);
      if (!declared.count(name)) throw ResolutionError(s.line, s.col + 7, "undeclared chart '" + name + "'");
      const auto& w = detail::require(s, "where");
      Predicate p = parse_predicate(w.value, w.line, w.value_col);
      check_vars(p, w);
      for (auto& c : g.charts)
        if (c.name == name) c.domain = std::move(p);
      s.reject_unknown();
    } else if (auto arrow = detail::arrow_name(s.name, "map.")) {
      const auto& [from, to] = *arrow;
      if (!declared.count(from)) throw ResolutionError(s.line, s.col + 4, "undeclared chart '" + from + "'");
      if (!declared.count(to))
        throw ResolutionError(s.line, s.col + 6 + from.size(), "undeclared chart '" + to + "'");
      MapDecl m{from, to, std::nullopt, {}};
      if (const auto* w = s.get("where")) {
        if (g.mode == GluingMode::epos) throw SyntaxError(w->line, w->key_col, "'where' is not allowed in epos mode");
        m.where = parse_predicate(w->value, w->line, w->value_col);
        check_vars(*m.where, *w);
      }
      const auto& ex = detail::require(s, "expr");
      m.expr = parse_map(ex.value, ex.line, ex.value_col);
      if (m.expr.arity() != g.dim)
        throw SyntaxError(ex.line, ex.value_col,
                          "map has " + std::to_string(m.expr.arity()) + " components, dim is " + std::to_string(g.dim));
      for (const auto& c : m.expr.components) check_vars(c, ex);
      g.maps.push_back(std::move(m));
      s.reject_unknown();
    } else {
      throw SyntaxError(s.line, s.col, "unknown section [" + s.name + "]");
    }
  }
  return g;
}

inline std::string serialize(const GluingFile& g) {
  std::ostringstream os;
  os << "[model]\nalgebra = " << g.algebra << "\ndim = " << g.dim
     << "\nmode = " << (g.mode == GluingMode::epos ? "epos" : "cocycle") << "\n\n[charts]\nnames = ";
  for (std::size_t k = 0; k < g.charts.size(); ++k) os << (k ? ", " : "") << g.charts[k].name;
  os << "\n";
  if (g.mode == GluingMode::epos) {
    os << "\n[epos]\nequiv =";
    for (std::size_t k = 0; k < g.equiv.size(); ++k) os << (k ? ", " : " ") << g.equiv[k].first << " ~ " << g.equiv[k].second;
    os << "\norder =";
    for (std::size_t k = 0; k < g.order.size(); ++k) os << (k ? ", " : " ") << g.order[k].first << " < " << g.order[k].second;
    os << "\n";
  }
  for (const auto& c : g.charts) os << "\n[domain." << c.name << "]\nwhere = " << to_string(c.domain) << "\n";
  for (const auto& m : g.maps) {
    os << "\n[map." << m.from << "->" << m.to << "]\n";
    if (m.where) os << "where = " << to_string(*m.where) << "\n";
    os << "expr = " << to_string(m.expr) << "\n";
  }
  return os.str();
}

/// Sections `[morphism]` (source, target) and `[mor.<i>-><j>]` (expr).
/// Chart names are resolved later, against the loaded kits.
inline MorphismFile parse_morphism_file(std::string_view text) {
  auto sections = detail::read_ini(text);
  MorphismFile m;
  bool header = false;
  for (auto& s : sections) {
    if (s.name == "morphism") {
      header = true;
      m.source = detail::require(s, "source").value;
      m.target = detail::require(s, "target").value;
      s.reject_unknown();
    } else if (auto arrow = detail::arrow_name(s.name, "mor.")) {
      const auto& [from, to] = *arrow;
      if (!detail::is_name(from) || !detail::is_name(to)) throw SyntaxError(s.line, s.col, "bad chart name");
      const auto& ex = detail::require(s, "expr");
      m.components.push_back(ComponentDecl{from, to, parse_map(ex.value, ex.line, ex.value_col)});
      s.reject_unknown();
    } else {
      throw SyntaxError(s.line, s.col, "unknown section [" + s.name + "]");
    }
  }
  if (!header) throw SyntaxError(1, 1, "missing [morphism] section");
  return m;
}

inline std::string serialize(const MorphismFile& m) {
  std::ostringstream os;
  os << "[morphism]\nsource = " << m.source << "\ntarget = " << m.target << "\n";
  for (const auto& c : m.components)
    os << "\n[mor." << c.from << "->" << c.to << "]\nexpr = " << to_string(c.expr) << "\n";
  return os.str();
}

}  // namespace atlaskit
