#pragma once

#include <sstream>
#include <string>

#include "groupoid.hpp"
#include "reconstruct.hpp"

namespace atlaskit {

namespace detail {

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// E-edges undirected and solid, L covering edges dashed from lower to upper.
inline std::string epos_dot(const EPos& e, const std::string& title = "epos") {
  std::ostringstream os;
  os << "digraph " << detail::quoted(title) << " {\n  rankdir=BT;\n  node [shape=box];\n";
  for (Id i = 0; i < e.size(); ++i) os << "  " << detail::quoted(e.name(i)) << ";\n";
  for (auto [a, b] : e.equiv.pairs())
    if (a < b) os << "  " << detail::quoted(e.name(a)) << " -> " << detail::quoted(e.name(b)) << " [dir=none, style=solid];\n";
  for (auto [lo, hi] : e.order.hasse_covers().pairs())
    os << "  " << detail::quoted(e.name(lo)) << " -> " << detail::quoted(e.name(hi)) << " [style=dashed];\n";
  os << "}\n";
  return os.str();
}

/// Charts as boxes, classes as points, an edge for every class in a chart.
inline std::string model_dot(const ManifoldModel& m, const std::string& title = "model") {
  const GluingData& g = *m.source;
  std::ostringstream os;
  os << "digraph " << detail::quoted(title) << " {\n";
  for (std::size_t c = 0; c < m.size(); ++c)
    os << "  " << detail::quoted("p" + std::to_string(c)) << " [shape=point, xlabel="
       << detail::quoted(seed_text(g, m.representatives[c])) << "];\n";
  for (Id i = 0; i < g.size(); ++i) {
    os << "  " << detail::quoted(g.name(i)) << " [shape=box];\n";
    for (std::size_t c : m.chart_domain[i])
      os << "  " << detail::quoted(g.name(i)) << " -> " << detail::quoted("p" + std::to_string(c)) << " [dir=none];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace atlaskit
