#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "dsl.hpp"
#include "errors.hpp"
#include "gluing_file.hpp"
#include "groupoid.hpp"
#include "pseudogroup.hpp"
#include "report.hpp"

namespace atlaskit {

using PointSet = std::set<Point>;
using PointMap = std::map<Point, Point>;

/// φ_ij : V_j → V_i as an explicit table, optionally with the formula it was
/// evaluated from (in V_j coordinates).
struct Transition {
  PointMap table;
  std::optional<MapSpec> formula;
};

/// Atlas data over a finite algebra: ranges V_i, transitions φ_ij for every
/// (i, j) ∈ E (key (i, j), map V_j → V_i) and meets [i, j] keyed by (i, j).
struct GluingData {
  EPos epos;
  Algebra algebra = Algebra::prime_field(2);
  std::size_t dim = 1;
  std::vector<PointSet> ranges;
  std::vector<std::optional<Predicate>> range_predicates;
  std::map<std::pair<Id, Id>, Transition> trans;
  std::map<std::pair<Id, Id>, Id> meets;

  std::size_t size() const { return epos.size(); }
  const std::string& name(Id i) const { return epos.name(i); }

  const Transition* find_transition(Id i, Id j) const {
    auto it = trans.find({i, j});
    return it == trans.end() ? nullptr : &it->second;
  }

  std::optional<Point> apply(Id i, Id j, const Point& x) const {
    const Transition* t = find_transition(i, j);
    if (!t) return std::nullopt;
    auto it = t->table.find(x);
    if (it == t->table.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Id> meet(Id i, Id j) const {
    auto it = meets.find({i, j});
    if (it == meets.end()) return std::nullopt;
    return it->second;
  }
};

/// φ_ij as a table V_j → V_i. Throws InputError when (i, j) ∉ E.
inline const PointMap& transition_map(const GluingData& g, Id i, Id j) {
  if (i >= g.size() || j >= g.size()) throw InputError("transition: index out of range");
  if (!g.epos.equivalent(i, j)) throw InputError("transition: (" + g.name(i) + "," + g.name(j) + ") is not in E");
  const Transition* t = g.find_transition(i, j);
  if (!t) throw InputError("transition: (" + g.name(i) + "," + g.name(j) + ") missing");
  return t->table;
}

/// All of Aⁿ in lexicographic order. Throws SizeBoundError above `bound`.
inline std::vector<Point> enumerate_points(const Algebra& A, std::size_t n, std::size_t bound = 2'000'000) {
  const auto elems = A.enumerate();
  double total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= static_cast<double>(elems.size());
  if (total > static_cast<double>(bound))
    throw SizeBoundError("enumerating " + A.descriptor() + "^" + std::to_string(n) + " exceeds bound");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    Point p;
    for (auto d : digits) p.push_back(elems[d]);
    out.push_back(std::move(p));
    std::size_t k = n;
    bool done = true;
    while (k > 0) {
      --k;
      if (++digits[k] < elems.size()) {
        done = false;
        break;
      }
      digits[k] = 0;
    }
    if (done) return out;
  }
}

inline std::string pair_text(const GluingData& g, Id i, Id j) { return "(" + g.name(i) + "," + g.name(j) + ")"; }

/// Fills `meets` for every pair below a common upper bound with intersecting
/// ranges where exactly one k ≤ i, j has V_k = V_i ∩ V_j.
inline void compute_meets(GluingData& g) {
  g.meets.clear();
  const std::size_t n = g.size();
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j) {
      bool bounded = false;
      for (Id m = 0; m < n && !bounded; ++m) bounded = g.epos.leq(i, m) && g.epos.leq(j, m);
      if (!bounded) continue;
      PointSet both;
      std::set_intersection(g.ranges[i].begin(), g.ranges[i].end(), g.ranges[j].begin(), g.ranges[j].end(),
                            std::inserter(both, both.end()));
      if (both.empty()) continue;
      std::vector<Id> found;
      for (Id k = 0; k < n; ++k)
        if (g.epos.leq(k, i) && g.epos.leq(k, j) && g.ranges[k] == both) found.push_back(k);
      if (found.size() == 1) g.meets[{i, j}] = found.front();
    }
}

/// Exhaustive check of the e-pos axioms (line `EPOS`) and conditions 1 to 4
/// (lines `CONDITION <n>`), each with its first witness.
inline ValidationReport validate_gluing_data(const GluingData& g) {
  ValidationReport rep;
  const std::size_t n = g.size();
  {
    auto er = validate_epos(g.epos);
    rep.declare("EPOS");
    if (!er.valid()) {
      const auto fails = er.failures();
      rep.fail("EPOS", fails.front() + " " + er.find(fails.front())->witness);
    }
  }
  const std::string c1 = "CONDITION 1", c2 = "CONDITION 2", c3 = "CONDITION 3", c4 = "CONDITION 4";
  rep.declare(c1);
  rep.declare(c2);
  rep.declare(c3);
  rep.declare(c4);
  if (g.ranges.size() != n || g.range_predicates.size() != n) {
    rep.fail(c1, "ranges do not match the index set");
    return rep;
  }

  // (1) V_i ⊆ Aⁿ, and listed points satisfy the stored predicate.
  for (Id i = 0; i < n; ++i)
    for (const auto& x : g.ranges[i]) {
      bool ok = x.size() == g.dim && std::all_of(x.begin(), x.end(), [&](const Element& e) { return g.algebra.contains(e); });
      if (!ok) {
        rep.fail(c1, "i=" + g.name(i) + " x=" + to_string(x) + " not in A^" + std::to_string(g.dim));
        continue;
      }
      if (g.range_predicates[i] && !holds(*g.range_predicates[i], x, g.algebra))
        rep.fail(c1, "i=" + g.name(i) + " x=" + to_string(x) + " violates predicate " + to_string(*g.range_predicates[i]));
    }

  // (2) bijections, formula agreement, identity, inverse, cocycle.
  for (const auto& [key, t] : g.trans) {
    const auto [i, j] = key;
    if (i >= n || j >= n || !g.epos.equivalent(i, j)) {
      rep.fail(c2, "transition " + (i < n && j < n ? pair_text(g, i, j) : std::string("?")) + " outside E");
      continue;
    }
    PointSet dom, img;
    for (const auto& [x, y] : t.table) {
      dom.insert(x);
      img.insert(y);
    }
    if (dom != g.ranges[j]) rep.fail(c2, "phi" + pair_text(g, i, j) + " domain differs from V_" + g.name(j));
    if (img.size() != t.table.size()) rep.fail(c2, "phi" + pair_text(g, i, j) + " not injective");
    if (img != g.ranges[i]) rep.fail(c2, "phi" + pair_text(g, i, j) + " image differs from V_" + g.name(i));
    if (t.formula)
      for (const auto& [x, y] : t.table) {
        std::optional<Point> v;
        try {
          v = eval_map(*t.formula, x, g.algebra);
        } catch (const EvalError&) {
        }
        if (!v || *v != y) {
          rep.fail(c2, "phi" + pair_text(g, i, j) + " table disagrees with formula at x=" + to_string(x));
          break;
        }
      }
  }
  for (auto [i, j] : g.epos.equiv.pairs())
    if (!g.find_transition(i, j)) rep.fail(c2, "missing phi" + pair_text(g, i, j));
  for (Id i = 0; i < n; ++i)
    if (const Transition* t = g.find_transition(i, i))
      for (const auto& [x, y] : t->table)
        if (x != y) {
          rep.fail(c2, "phi" + pair_text(g, i, i) + " is not the identity at x=" + to_string(x));
          break;
        }
  for (const auto& cls : g.epos.classes())
    for (Id i : cls)
      for (Id j : cls) {
        const Transition* ij = g.find_transition(i, j);
        const Transition* ji = g.find_transition(j, i);
        if (!ij || !ji) continue;
        for (const auto& [x, y] : ij->table) {
          auto back = ji->table.find(y);
          if (back == ji->table.end() || back->second != x) {
            rep.fail(c2, "inverse i=" + g.name(i) + " j=" + g.name(j) + " x=" + to_string(x));
            break;
          }
        }
        for (Id k : cls) {
          const Transition* jk = g.find_transition(j, k);
          const Transition* ik = g.find_transition(i, k);
          if (!jk || !ik) continue;
          for (const auto& [x, y] : jk->table) {
            auto a = ij->table.find(y);
            auto b = ik->table.find(x);
            if (a == ij->table.end() || b == ik->table.end() || a->second != b->second) {
              rep.fail(c2, "cocycle i=" + g.name(i) + " j=" + g.name(j) + " k=" + g.name(k) + " x=" + to_string(x));
              break;
            }
          }
        }
      }

  // (3) monotone ranges, restriction compatibility.
  for (auto [ip, i] : g.epos.order.pairs())
    if (!std::includes(g.ranges[i].begin(), g.ranges[i].end(), g.ranges[ip].begin(), g.ranges[ip].end()))
      rep.fail(c3, "V_" + g.name(ip) + " not inside V_" + g.name(i));
  for (auto [i, j] : g.epos.equiv.pairs()) {
    const Transition* big = g.find_transition(i, j);
    if (!big) continue;
    for (Id ip : g.epos.order.column(i))
      for (Id jp : g.epos.order.column(j)) {
        if (!g.epos.equivalent(ip, jp)) continue;
        const Transition* small = g.find_transition(ip, jp);
        if (!small) continue;
        for (const auto& [x, y] : small->table) {
          auto it = big->table.find(x);
          if (it == big->table.end() || it->second != y) {
            rep.fail(c3, "phi" + pair_text(g, ip, jp) + " != phi" + pair_text(g, i, j) + " at x=" + to_string(x));
            break;
          }
        }
      }
  }

  // (4) meets exist, are unique, and realize the intersection.
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j) {
      bool bounded = false;
      for (Id m = 0; m < n && !bounded; ++m) bounded = g.epos.leq(i, m) && g.epos.leq(j, m);
      if (!bounded) continue;
      PointSet both;
      std::set_intersection(g.ranges[i].begin(), g.ranges[i].end(), g.ranges[j].begin(), g.ranges[j].end(),
                            std::inserter(both, both.end()));
      if (both.empty()) continue;
      std::vector<Id> found;
      for (Id k = 0; k < n; ++k)
        if (g.epos.leq(k, i) && g.epos.leq(k, j) && g.ranges[k] == both) found.push_back(k);
      auto stored = g.meet(i, j);
      if (found.empty())
        rep.fail(c4, "no meet for i=" + g.name(i) + " j=" + g.name(j));
      else if (found.size() > 1)
        rep.fail(c4, "meet of i=" + g.name(i) + " j=" + g.name(j) + " not unique: " + g.name(found[0]) + "," +
                         g.name(found[1]));
      else if (!stored)
        rep.fail(c4, "meet of i=" + g.name(i) + " j=" + g.name(j) + " not recorded");
      else if (*stored != found.front())
        rep.fail(c4, "recorded meet of i=" + g.name(i) + " j=" + g.name(j) + " is " + g.name(*stored) + ", expected " +
                         g.name(found.front()));
    }
  for (const auto& [key, k] : g.meets) {
    const auto [i, j] = key;
    if (i >= n || j >= n || k >= n || !g.epos.leq(k, i) || !g.epos.leq(k, j)) {
      rep.fail(c4, "recorded meet is not below both arguments");
      continue;
    }
    PointSet both;
    std::set_intersection(g.ranges[i].begin(), g.ranges[i].end(), g.ranges[j].begin(), g.ranges[j].end(),
                          std::inserter(both, both.end()));
    if (g.ranges[k] != both)
      rep.fail(c4, "recorded meet " + g.name(k) + " of i=" + g.name(i) + " j=" + g.name(j) + " is not the intersection");
  }
  return rep;
}

/// Finite set with charts φ_i: U_i → V_i ⊆ Aⁿ. Domains are the keys of `phi`.
struct ConcreteAtlas {
  struct Chart {
    std::string name;
    std::map<int, Point> phi;

    std::set<int> domain() const {
      std::set<int> d;
      for (const auto& [x, _] : phi) d.insert(x);
      return d;
    }
    PointSet range() const {
      PointSet r;
      for (const auto& [_, y] : phi) r.insert(y);
      return r;
    }
  };

  std::set<int> carrier;
  Algebra algebra = Algebra::prime_field(2);
  std::size_t dim = 1;
  std::vector<Chart> charts;

  std::set<std::map<int, Point>> chart_set() const {
    std::set<std::map<int, Point>> s;
    for (const auto& c : charts) s.insert(c.phi);
    return s;
  }
};

namespace detail {

inline bool agrees_on(const std::map<int, Point>& small, const std::map<int, Point>& big) {
  for (const auto& [x, y] : small) {
    auto it = big.find(x);
    if (it == big.end() || it->second != y) return false;
  }
  return true;
}

inline std::set<int> intersect(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace detail

/// Checks chart bijectivity and conditions (1), (2), (3), (3').
inline ValidationReport validate_concrete_atlas(const ConcreteAtlas& a) {
  ValidationReport rep;
  rep.declare("charts");
  rep.declare("(1)");
  rep.declare("(2)");
  rep.declare("(3)");
  rep.declare("(3')");
  const auto& cs = a.charts;
  for (const auto& c : cs) {
    if (c.range().size() != c.phi.size()) rep.fail("charts", c.name + " is not injective");
    for (const auto& [x, y] : c.phi) {
      if (!a.carrier.count(x)) rep.fail("charts", c.name + " domain point " + std::to_string(x) + " outside M");
      if (y.size() != a.dim ||
          !std::all_of(y.begin(), y.end(), [&](const Element& e) { return a.algebra.contains(e); }))
        rep.fail("charts", c.name + " value " + to_string(y) + " outside A^" + std::to_string(a.dim));
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (cs[i].phi == cs[j].phi) rep.fail("(1)", "charts " + cs[i].name + " and " + cs[j].name + " coincide");
  for (int x : a.carrier) {
    bool covered = std::any_of(cs.begin(), cs.end(), [&](const auto& c) { return c.phi.count(x) > 0; });
    if (!covered) rep.fail("(2)", "point " + std::to_string(x) + " uncovered");
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const auto both = detail::intersect(cs[i].domain(), cs[j].domain());
      if (both.empty()) continue;
      std::size_t count = 0;
      for (const auto& k : cs)
        if (k.domain() == both && detail::agrees_on(k.phi, cs[i].phi)) ++count;
      if (count != 1)
        rep.fail("(3)", "i=" + cs[i].name + " j=" + cs[j].name + " has " + std::to_string(count) + " candidates");
      for (int x : both) {
        bool ok = false;
        for (const auto& k : cs) {
          if (!k.phi.count(x) || !detail::agrees_on(k.phi, cs[i].phi)) continue;
          const auto kd = k.domain();
          if (std::includes(both.begin(), both.end(), kd.begin(), kd.end())) {
            ok = true;
            break;
          }
        }
        if (!ok) rep.fail("(3')", "i=" + cs[i].name + " j=" + cs[j].name + " x=" + std::to_string(x));
      }
    }
  return rep;
}

/// Condition (3') with the stronger (3) flagged alongside.
inline ValidationReport check_condition_3prime(const ConcreteAtlas& a) {
  auto full = validate_concrete_atlas(a);
  ValidationReport rep;
  rep.declare("(3')");
  rep.declare("(3)");
  if (!full.passed("(3')")) rep.fail("(3')", full.find("(3')")->witness);
  if (!full.passed("(3)")) rep.fail("(3)", full.find("(3)")->witness);
  rep.note("(3) " + std::string(full.passed("(3)") ? "also holds" : "does not hold") +
           "; reconstruction from atlas data guarantees only (3')");
  return rep;
}

/// Atlas data of a concrete atlas satisfying (1), (2), (3). E is equal
/// domains, L is chart restriction, φ_ij = φ_i∘φ_j⁻¹.
inline GluingData extract_gluing_data(const ConcreteAtlas& a) {
  auto rep = validate_concrete_atlas(a);
  for (const char* c : {"charts", "(1)", "(2)", "(3)"})
    if (!rep.passed(c)) throw ReportError("atlas does not satisfy " + std::string(c), rep);
  const std::size_t n = a.charts.size();
  GluingData g;
  std::vector<std::string> names;
  for (const auto& c : a.charts) names.push_back(c.name);
  g.epos.indices = Interner(names);
  g.epos.equiv = Relation(n, n);
  g.epos.order = Relation(n, n);
  g.algebra = a.algebra;
  g.dim = a.dim;
  std::vector<std::set<int>> doms;
  for (const auto& c : a.charts) {
    doms.push_back(c.domain());
    g.ranges.push_back(c.range());
    g.range_predicates.emplace_back();
  }
  for (Id i = 0; i < n; ++i)
    for (Id j = 0; j < n; ++j) {
      if (doms[i] == doms[j]) {
        g.epos.equiv.insert(i, j);
        Transition t;
        for (const auto& [x, y] : a.charts[j].phi) t.table[y] = a.charts[i].phi.at(x);
        g.trans[{i, j}] = std::move(t);
      }
      if (detail::agrees_on(a.charts[i].phi, a.charts[j].phi)) g.epos.order.insert(i, j);
    }
  compute_meets(g);
  return g;
}

/// True iff every range is an object and every transition a morphism of `p`.
inline bool check_type_G(const GluingData& g, const Pseudogroup<Point>& p) {
  for (const auto& r : g.ranges)
    for (const auto& x : r)
      if (!p.carrier->count(x)) throw InputError("type check: point " + to_string(x) + " outside the pseudogroup carrier");
  for (const auto& r : g.ranges)
    if (!p.objects.count(r)) return false;
  for (const auto& [key, t] : g.trans) {
    auto f = PartialBijection<Point>::from_map(p.carrier, std::map<Point, Point>(t.table));
    if (!p.morphisms.count(f)) return false;
  }
  return true;
}

namespace detail {

inline std::string subset_name(const std::vector<std::string>& names, const std::vector<std::size_t>& subset) {
  std::string s = "{";
  for (std::size_t k = 0; k < subset.size(); ++k) s += (k ? "," : "") + names[subset[k]];
  return s + "}";
}

inline std::optional<Predicate> conjoin(std::optional<Predicate> a, const std::optional<Predicate>& b) {
  if (!a || !b) return std::nullopt;
  for (const auto& atom : b->atoms)
    if (atom.kind != Predicate::Atom::Kind::always) a->atoms.push_back(atom);
  return a;
}

struct ClassicalMap {
  PointMap table;
  std::optional<MapSpec> formula;
  std::optional<Predicate> where;
};

}  // namespace detail

/// Gluing data of a classical kit: indices (t,S) for t ∈ S ⊆ T with
/// nonempty overlap, named `t|{S}`, E by equal S, (t,S') ≤ (t,S) iff S ⊆ S'.
/// Throws InvalidStructure with a witness point if the kit's maps are not
/// compatible.
inline GluingData generate_from_cocycle(const GluingFile& kit) {
  if (kit.mode != GluingMode::cocycle) throw InputError("generate_from_cocycle: kit is not in cocycle mode");
  const Algebra A = Algebra::parse(kit.algebra);
  if (!A.finite()) throw Unsupported("generate_from_cocycle: " + kit.algebra + " is infinite");
  const std::size_t T = kit.charts.size();
  if (T > 12) throw SizeBoundError("too many charts");
  std::vector<std::string> names;
  for (const auto& c : kit.charts) names.push_back(c.name);
  const auto points = enumerate_points(A, kit.dim);

  std::vector<PointSet> chart_range(T);
  for (std::size_t t = 0; t < T; ++t)
    for (const auto& x : points)
      if (holds(kit.charts[t].domain, x, A)) chart_range[t].insert(x);

  // psi[t][s]: chart t coordinates to chart s coordinates.
  std::vector<std::vector<std::optional<detail::ClassicalMap>>> psi(T, std::vector<std::optional<detail::ClassicalMap>>(T));
  auto where_text = [&](std::size_t t, const Point& x) { return names[t] + " at x=" + to_string(x); };
  for (const auto& m : kit.maps) {
    std::size_t t = 0, s = 0;
    while (names[t] != m.from) ++t;
    while (names[s] != m.to) ++s;
    detail::ClassicalMap cm;
    cm.formula = m.expr;
    cm.where = m.where;
    for (const auto& x : chart_range[t]) {
      if (m.where && !holds(*m.where, x, A)) continue;
      Point y;
      try {
        y = eval_map(m.expr, x, A);
      } catch (const EvalError& e) {
        throw InvalidStructure("map " + m.from + "->" + m.to + " undefined on its domain, " + where_text(t, x) + ": " +
                               e.what());
      }
      if (!chart_range[s].count(y))
        throw InvalidStructure("map " + m.from + "->" + m.to + " leaves chart " + m.to + " " + where_text(t, x));
      cm.table[x] = y;
    }
    psi[t][s] = std::move(cm);
  }
  for (std::size_t t = 0; t < T; ++t) {
    if (!psi[t][t]) {
      detail::ClassicalMap id;
      for (const auto& x : chart_range[t]) id.table[x] = x;
      id.formula = identity_map(kit.dim);
      id.where = Predicate::always();
      psi[t][t] = std::move(id);
    }
    for (const auto& [x, y] : psi[t][t]->table)
      if (x != y) throw InvalidStructure("map " + names[t] + "->" + names[t] + " is not the identity, " + where_text(t, x));
  }
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < T; ++s)
      if (!psi[t][s] && psi[s][t]) {
        detail::ClassicalMap inv;
        for (const auto& [x, y] : psi[s][t]->table) inv.table[y] = x;
        if (inv.table.size() != psi[s][t]->table.size())
          throw InvalidStructure("map " + names[s] + "->" + names[t] + " is not injective");
        // An involutive formula also describes the inverse.
        if (psi[s][t]->formula) {
          bool same = true;
          for (const auto& [y, x] : inv.table) {
            try {
              same = eval_map(*psi[s][t]->formula, y, A) == x;
            } catch (const EvalError&) {
              same = false;
            }
            if (!same) break;
          }
          if (same) inv.formula = psi[s][t]->formula;
        }
        if (const auto& w = psi[s][t]->where) {
          bool exact = true;
          for (const auto& x : chart_range[t])
            if (holds(*w, x, A) != (inv.table.count(x) > 0)) exact = false;
          if (exact) inv.where = w;
        }
        psi[t][s] = std::move(inv);
      }
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < T; ++s) {
      if (!psi[t][s]) {
        psi[t][s] = detail::ClassicalMap{};
        psi[t][s]->where = Predicate::never();
      }
    }
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t s = 0; s < T; ++s) {
      for (const auto& [x, y] : psi[t][s]->table) {
        auto back = psi[s][t]->table.find(y);
        if (back == psi[s][t]->table.end() || back->second != x)
          throw InvalidStructure("maps " + names[t] + "->" + names[s] + " and " + names[s] + "->" + names[t] +
                                 " are not mutually inverse, " + where_text(t, x));
      }
    }
  for (std::size_t r = 0; r < T; ++r)
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t s = 0; s < T; ++s)
        for (const auto& [x, y] : psi[r][t]->table) {
          auto direct = psi[r][s]->table.find(x);
          if (direct == psi[r][s]->table.end()) continue;
          auto via = psi[t][s]->table.find(y);
          if (via == psi[t][s]->table.end() || via->second != direct->second)
            throw InvalidStructure("cocycle fails for " + names[r] + "->" + names[t] + "->" + names[s] + ", " +
                                   where_text(r, x));
        }

  struct Index {
    std::size_t t;
    std::vector<std::size_t> S;
    PointSet range;
    std::optional<Predicate> pred;
  };
  std::vector<Index> idx;
  for (std::size_t size = 1; size <= T; ++size) {
    std::vector<bool> pick(T, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    std::vector<std::vector<std::size_t>> subsets;
    do {
      std::vector<std::size_t> S;
      for (std::size_t k = 0; k < T; ++k)
        if (pick[k]) S.push_back(k);
      subsets.push_back(S);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(subsets.begin(), subsets.end());
    for (const auto& S : subsets)
      for (std::size_t t : S) {
        Index ix{t, S, chart_range[t], kit.charts[t].domain};
        for (std::size_t s : S) {
          if (s == t) continue;
          PointSet keep;
          for (const auto& x : ix.range)
            if (psi[t][s]->table.count(x)) keep.insert(x);
          ix.range = std::move(keep);
          ix.pred = detail::conjoin(ix.pred, psi[t][s]->where);
        }
        if (!ix.range.empty()) idx.push_back(std::move(ix));
      }
  }

  GluingData g;
  g.algebra = A;
  g.dim = kit.dim;
  std::vector<std::string> index_names;
  for (const auto& ix : idx) index_names.push_back(names[ix.t] + "|" + detail::subset_name(names, ix.S));
  const std::size_t n = idx.size();
  g.epos.indices = Interner(index_names);
  g.epos.equiv = Relation(n, n);
  g.epos.order = Relation(n, n);
  for (Id a = 0; a < n; ++a) {
    g.ranges.push_back(idx[a].range);
    g.range_predicates.push_back(idx[a].pred);
    for (Id b = 0; b < n; ++b) {
      if (idx[a].S == idx[b].S) {
        g.epos.equiv.insert(a, b);
        Transition tr;
        const auto& cm = *psi[idx[b].t][idx[a].t];
        for (const auto& x : idx[b].range) tr.table[x] = cm.table.at(x);
        tr.formula = cm.formula;
        g.trans[{a, b}] = std::move(tr);
      }
      if (idx[a].t == idx[b].t &&
          std::includes(idx[a].S.begin(), idx[a].S.end(), idx[b].S.begin(), idx[b].S.end()))
        g.epos.order.insert(a, b);
    }
  }
  compute_meets(g);
  return g;
}

/// Atlas data of an epos-mode kit: E and L are closed from the generators,
/// ranges come from the domain predicates, missing transitions are derived
/// by inversion, restriction and composition, meets are computed.
inline GluingData gluing_data_from_epos_kit(const GluingFile& kit) {
  if (kit.mode != GluingMode::epos) throw InputError("kit is not in epos mode");
  const Algebra A = Algebra::parse(kit.algebra);
  if (!A.finite()) throw Unsupported("epos kit over infinite algebra " + kit.algebra);
  std::vector<std::string> names;
  for (const auto& c : kit.charts) names.push_back(c.name);
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& [lo, hi] : kit.order) order.emplace_back(lo, hi);
  GluingData g;
  g.epos = EPos::from_generators(names, kit.equiv, order);
  g.algebra = A;
  g.dim = kit.dim;
  const auto points = enumerate_points(A, kit.dim);
  const std::size_t n = names.size();
  for (Id i = 0; i < n; ++i) {
    PointSet r;
    for (const auto& x : points)
      if (holds(kit.charts[i].domain, x, A)) r.insert(x);
    g.ranges.push_back(std::move(r));
    g.range_predicates.push_back(kit.charts[i].domain);
  }
  for (const auto& m : kit.maps) {
    const Id from = g.epos.at(m.from), to = g.epos.at(m.to);
    if (!g.epos.equivalent(from, to)) throw InputError("map " + m.from + "->" + m.to + " joins charts not related by E");
    Transition t;
    t.formula = m.expr;
    for (const auto& x : g.ranges[from]) {
      try {
        t.table[x] = eval_map(m.expr, x, A);
      } catch (const EvalError& e) {
        throw InvalidStructure("map " + m.from + "->" + m.to + " undefined at x=" + to_string(x) + ": " + e.what());
      }
    }
    g.trans[{to, from}] = std::move(t);
  }
  for (Id i = 0; i < n; ++i)
    if (!g.trans.count({i, i})) {
      Transition t;
      t.formula = identity_map(kit.dim);
      for (const auto& x : g.ranges[i]) t.table[x] = x;
      g.trans[{i, i}] = std::move(t);
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [i, j] : g.epos.equiv.pairs()) {
      if (g.trans.count({i, j})) continue;
      std::optional<Transition> found;
      if (const Transition* back = g.find_transition(j, i)) {
        Transition t;
        for (const auto& [x, y] : back->table) t.table[y] = x;
        found = std::move(t);
      }
      for (Id a : g.epos.order.row(i)) {
        if (found) break;
        for (Id b : g.epos.order.row(j)) {
          const Transition* big = g.find_transition(a, b);
          if (!big || (a == i && b == j)) continue;
          Transition t;
          t.formula = big->formula;
          bool ok = true;
          for (const auto& x : g.ranges[j]) {
            auto it = big->table.find(x);
            if (it == big->table.end()) {
              ok = false;
              break;
            }
            t.table[x] = it->second;
          }
          if (ok) {
            found = std::move(t);
            break;
          }
        }
      }
      for (Id k : g.epos.equiv.row(i)) {
        if (found) break;
        const Transition* ik = g.find_transition(i, k);
        const Transition* kj = g.find_transition(k, j);
        if (!ik || !kj || k == i || k == j) continue;
        Transition t;
        for (const auto& [x, y] : kj->table)
          if (auto it = ik->table.find(y); it != ik->table.end()) t.table[x] = it->second;
        found = std::move(t);
      }
      if (found) {
        g.trans[{i, j}] = std::move(*found);
        changed = true;
      }
    }
  }
  for (auto [i, j] : g.epos.equiv.pairs())
    if (!g.trans.count({i, j})) throw InputError("no transition derivable for " + pair_text(g, i, j));
  compute_meets(g);
  return g;
}

/// Gluing data of either kit mode.
inline GluingData build_gluing_data(const GluingFile& kit) {
  return kit.mode == GluingMode::cocycle ? generate_from_cocycle(kit) : gluing_data_from_epos_kit(kit);
}

/// The data without index `drop`: the e-pos, ranges, transitions and meets
/// touching it are removed. Used to delete a meet for mutation tests.
inline GluingData delete_index(const GluingData& g, Id drop) {
  std::vector<Id> keep;
  for (Id i = 0; i < g.size(); ++i)
    if (i != drop) keep.push_back(i);
  auto renumber = [&](Id i) { return i < drop ? i : i - 1; };
  GluingData out;
  out.epos = g.epos.restrict_to(keep);
  out.algebra = g.algebra;
  out.dim = g.dim;
  for (Id i : keep) {
    out.ranges.push_back(g.ranges[i]);
    out.range_predicates.push_back(g.range_predicates[i]);
  }
  for (const auto& [key, t] : g.trans)
    if (key.first != drop && key.second != drop) out.trans[{renumber(key.first), renumber(key.second)}] = t;
  for (const auto& [key, k] : g.meets)
    if (key.first != drop && key.second != drop && k != drop)
      out.meets[{renumber(key.first), renumber(key.second)}] = renumber(k);
  return out;
}

}  // namespace atlaskit
