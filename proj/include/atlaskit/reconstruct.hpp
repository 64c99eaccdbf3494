#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atlas.hpp"
#include "pseudogroup.hpp"

namespace atlaskit {

/// (x, i) with x ∈ V_i.
struct PointSeed {
  Point x;
  Id i;
  auto operator<=>(const PointSeed&) const = default;
};

/// The quotient M = S/∼ with charts U_i = {[x,i]} and φ_i([x,i]) = x.
/// Classes are numbered in order of their least seed.
struct ManifoldModel {
  std::shared_ptr<const GluingData> source;
  std::vector<PointSeed> representatives;                 // per class
  std::vector<std::vector<std::size_t>> chart_domain;     // per index, sorted classes
  std::vector<std::map<std::size_t, Point>> chart_map;    // per index, class -> x
  std::vector<std::map<Point, std::size_t>> chart_inverse;  // per index, x -> class

  std::size_t size() const { return representatives.size(); }

  /// [x, i]; throws InputError if x ∉ V_i.
  std::size_t class_of(const Point& x, Id i) const {
    if (i >= chart_inverse.size()) throw InputError("class_of: index out of range");
    auto it = chart_inverse[i].find(x);
    if (it == chart_inverse[i].end()) throw InputError("class_of: point not in the chart range");
    return it->second;
  }

  bool in_chart(std::size_t cls, Id i) const { return chart_map[i].count(cls) > 0; }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Sorted seeds and, per index, the seed number of each point.
struct SeedTable {
  std::vector<PointSeed> seeds;
  std::vector<std::map<Point, std::size_t>> lookup;

  explicit SeedTable(const GluingData& g) : lookup(g.size()) {
    for (Id i = 0; i < g.size(); ++i)
      for (const auto& x : g.ranges[i]) seeds.push_back({x, i});
    std::sort(seeds.begin(), seeds.end());
    for (std::size_t s = 0; s < seeds.size(); ++s) lookup[seeds[s].i][seeds[s].x] = s;
  }
};

/// Calls f(seed_a, seed_b) for every generating witness: i' ≤ i, j' ≤ j,
/// (i', j') ∈ E, x = φ_{i'j'}(y), relating (x, i) and (y, j).
template <class F>
void for_each_witness(const GluingData& g, const SeedTable& st, F&& f) {
  for (auto [ip, jp] : g.epos.equiv.pairs()) {
    const Transition* t = g.find_transition(ip, jp);
    if (!t) continue;
    const auto above_i = g.epos.order.row(ip);
    const auto above_j = g.epos.order.row(jp);
    for (const auto& [y, x] : t->table)
      for (Id i : above_i) {
        auto a = st.lookup[i].find(x);
        if (a == st.lookup[i].end()) continue;
        for (Id j : above_j) {
          auto b = st.lookup[j].find(y);
          if (b == st.lookup[j].end()) continue;
          f(a->second, b->second);
        }
      }
  }
}

}  // namespace detail

/// Quotient construction by union–find over all witness pairs.
inline ManifoldModel glue(std::shared_ptr<const GluingData> g) {
  if (auto rep = validate_gluing_data(*g); !rep.valid()) throw ReportError("glue: invalid gluing data", rep);
  detail::SeedTable st(*g);
  detail::UnionFind uf(st.seeds.size());
  detail::for_each_witness(*g, st, [&](std::size_t a, std::size_t b) { uf.unite(a, b); });

  ManifoldModel m;
  m.source = g;
  const std::size_t n = g->size();
  m.chart_domain.assign(n, {});
  m.chart_map.assign(n, {});
  m.chart_inverse.assign(n, {});
  std::map<std::size_t, std::size_t> class_of_root;
  for (std::size_t s = 0; s < st.seeds.size(); ++s) {
    const std::size_t root = uf.find(s);
    auto [it, fresh] = class_of_root.emplace(root, m.representatives.size());
    if (fresh) m.representatives.push_back(st.seeds[s]);
    const std::size_t cls = it->second;
    const auto& seed = st.seeds[s];
    if (m.chart_map[seed.i].count(cls))
      throw InvalidStructure("glue: chart " + g->name(seed.i) + " is not injective on class " + std::to_string(cls));
    m.chart_map[seed.i][cls] = seed.x;
    m.chart_inverse[seed.i][seed.x] = cls;
  }
  for (Id i = 0; i < n; ++i)
    for (const auto& [cls, _] : m.chart_map[i]) m.chart_domain[i].push_back(cls);
  return m;
}

inline ManifoldModel glue(const GluingData& g) { return glue(std::make_shared<const GluingData>(g)); }

inline std::size_t count_points(const ManifoldModel& m) { return m.size(); }

inline std::string seed_text(const GluingData& g, const PointSeed& s) {
  return "(" + to_string(s.x) + "," + g.name(s.i) + ")";
}

/// The witness relation computed directly on seeds, without any closure,
/// checked for reflexivity, symmetry and transitivity. `closure` compares it
/// with the union–find classes.
inline ValidationReport relation_is_equivalence(const GluingData& g) {
  ValidationReport rep;
  detail::SeedTable st(g);
  const std::size_t n = st.seeds.size();
  Relation r(n, n);
  detail::UnionFind uf(n);
  detail::for_each_witness(g, st, [&](std::size_t a, std::size_t b) {
    r.insert(static_cast<Id>(a), static_cast<Id>(b));
    uf.unite(a, b);
  });
  auto seed = [&](std::size_t s) { return seed_text(g, st.seeds[s]); };
  rep.declare("reflexive");
  rep.declare("symmetric");
  rep.declare("transitive");
  rep.declare("closure");
  for (Id a = 0; a < n; ++a)
    if (!r.contains(a, a)) rep.fail("reflexive", seed(a));
  for (auto [a, b] : r.pairs())
    if (!r.contains(b, a)) rep.fail("symmetric", seed(a) + " " + seed(b));
  const Relation two = r.compose(r);
  for (auto [a, c] : two.pairs()) {
    if (r.contains(a, c)) continue;
    std::string mid;
    for (Id b : r.row(a))
      if (r.contains(b, c)) {
        mid = seed(b);
        break;
      }
    rep.fail("transitive", seed(a) + " " + mid + " " + seed(c));
  }
  std::size_t extra = 0;
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      if (uf.find(a) == uf.find(b) && !r.contains(a, b)) {
        if (extra++ == 0) rep.fail("closure", "union-find merges " + seed(a) + " and " + seed(b));
      }
  rep.note("seeds=" + std::to_string(n) + " direct pairs=" + std::to_string(r.size()) +
           " closure-only pairs=" + std::to_string(extra));
  return rep;
}

/// φ_i∘φ_j⁻¹ : V_j → V_i read off the quotient, for (i, j) ∈ E.
inline PointMap recovered_transition(const ManifoldModel& m, Id i, Id j) {
  const GluingData& g = *m.source;
  if (i >= g.size() || j >= g.size() || !g.epos.equivalent(i, j))
    throw InputError("recovered_transition: pair not in E");
  PointMap out;
  for (const auto& [cls, x] : m.chart_map[j]) {
    auto it = m.chart_map[i].find(cls);
    if (it == m.chart_map[i].end())
      throw InvalidStructure("recovered_transition: U_" + g.name(j) + " is not inside U_" + g.name(i));
    out[x] = it->second;
  }
  return out;
}

/// Chart bijectivity, U_i = U_j on E, and recovered transitions equal to the
/// stored ones.
inline ValidationReport validate_model(const ManifoldModel& m) {
  ValidationReport rep;
  const GluingData& g = *m.source;
  rep.declare("chart.bijective");
  rep.declare("E.domains");
  rep.declare("transitions");
  for (Id i = 0; i < g.size(); ++i) {
    if (m.chart_map[i].size() != g.ranges[i].size() || m.chart_inverse[i].size() != g.ranges[i].size())
      rep.fail("chart.bijective", "chart " + g.name(i));
  }
  for (auto [i, j] : g.epos.equiv.pairs()) {
    if (m.chart_domain[i] != m.chart_domain[j]) {
      rep.fail("E.domains", "U_" + g.name(i) + " != U_" + g.name(j));
      continue;
    }
    if (recovered_transition(m, i, j) != transition_map(g, i, j))
      rep.fail("transitions", "phi" + pair_text(g, i, j));
  }
  return rep;
}

/// Sorted class representatives and chart domains, one per line.
inline std::string dump(const ManifoldModel& m) {
  const GluingData& g = *m.source;
  std::ostringstream os;
  os << "points " << m.size() << "\n";
  for (std::size_t c = 0; c < m.size(); ++c) os << "class " << c << " " << seed_text(g, m.representatives[c]) << "\n";
  for (Id i = 0; i < g.size(); ++i) {
    os << "chart " << g.name(i) << " {";
    for (std::size_t k = 0; k < m.chart_domain[i].size(); ++k) os << (k ? "," : "") << m.chart_domain[i][k];
    os << "}\n";
  }
  return os.str();
}

/// Chart-wise dual-number extension: same e-pos, algebra A[ε], ranges
/// TV_i = {a + εb : a ∈ V_i}, transitions evaluated from the same formulas.
inline GluingData weil_transport(const GluingData& g) {
  for (const auto& [key, t] : g.trans)
    if (!t.formula)
      throw Unsupported("weil_transport: transition " + pair_text(g, key.first, key.second) + " has no formula");
  const Algebra D = Algebra::dual(g.algebra);
  const auto tangent = enumerate_points(g.algebra, g.dim);
  GluingData out;
  out.epos = g.epos;
  out.algebra = D;
  out.dim = g.dim;
  out.meets = g.meets;
  for (Id i = 0; i < g.size(); ++i) {
    PointSet r;
    for (const auto& a : g.ranges[i])
      for (const auto& b : tangent) {
        Point x;
        for (std::size_t k = 0; k < g.dim; ++k) {
          Element e = a[k];
          e.c.insert(e.c.end(), b[k].c.begin(), b[k].c.end());
          x.push_back(std::move(e));
        }
        r.insert(std::move(x));
      }
    out.ranges.push_back(std::move(r));
    out.range_predicates.emplace_back();
  }
  for (const auto& [key, t] : g.trans) {
    Transition tt;
    tt.formula = t.formula;
    for (const auto& x : out.ranges[key.second]) tt.table[x] = eval_map(*t.formula, x, D);
    out.trans[key] = std::move(tt);
  }
  return out;
}

/// The model as a concrete atlas: carrier = class numbers, one chart per
/// index with nonempty domain.
inline ConcreteAtlas as_concrete_atlas(const ManifoldModel& m) {
  const GluingData& g = *m.source;
  ConcreteAtlas a;
  a.algebra = g.algebra;
  a.dim = g.dim;
  for (std::size_t c = 0; c < m.size(); ++c) a.carrier.insert(static_cast<int>(c));
  for (Id i = 0; i < g.size(); ++i) {
    if (m.chart_map[i].empty()) continue;
    ConcreteAtlas::Chart ch{g.name(i), {}};
    for (const auto& [cls, x] : m.chart_map[i]) ch.phi[static_cast<int>(cls)] = x;
    a.charts.push_back(std::move(ch));
  }
  return a;
}

inline constexpr std::size_t kDefaultMaximalAtlasBound = 4;

/// Every nonempty chart (U, φ) with φ(U) ∈ G₀ that is G-compatible with all
/// charts of `a`, named `c0`, `c1`, ... in order of their graphs.
inline ConcreteAtlas maximal_atlas(const ConcreteAtlas& a, const Pseudogroup<Point>& p,
                                   std::size_t bound = kDefaultMaximalAtlasBound) {
  if (a.carrier.size() > bound || p.carrier->size() > bound)
    throw SizeBoundError("maximal_atlas: carrier larger than " + std::to_string(bound));
  for (const auto& c : a.charts)
    for (const auto& [x, y] : c.phi)
      if (!p.carrier->count(y)) throw InputError("maximal_atlas: chart value outside the pseudogroup carrier");
  const std::vector<int> M(a.carrier.begin(), a.carrier.end());
  const std::vector<Point> V(p.carrier->begin(), p.carrier->end());
  std::set<std::map<int, Point>> found;

  auto compatible = [&](const std::map<int, Point>& phi) {
    PointSet img;
    for (const auto& [_, y] : phi) img.insert(y);
    if (!p.objects.count(img)) return false;
    for (const auto& c : a.charts) {
      std::map<Point, Point> there, back;
      for (const auto& [x, y] : phi)
        if (auto it = c.phi.find(x); it != c.phi.end()) {
          there[it->second] = y;
          back[y] = it->second;
        }
      if (there.empty()) continue;
      if (!p.morphisms.count(PartialBijection<Point>::from_map(p.carrier, there))) return false;
      if (!p.morphisms.count(PartialBijection<Point>::from_map(p.carrier, back))) return false;
    }
    return true;
  };

  std::map<int, Point> cur;
  std::set<Point> used;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == M.size()) {
      if (!cur.empty() && compatible(cur)) found.insert(cur);
      return;
    }
    rec(k + 1);
    for (const auto& y : V) {
      if (used.count(y)) continue;
      cur[M[k]] = y;
      used.insert(y);
      rec(k + 1);
      used.erase(y);
      cur.erase(M[k]);
    }
  };
  rec(0);

  ConcreteAtlas out;
  out.carrier = a.carrier;
  out.algebra = a.algebra;
  out.dim = a.dim;
  std::size_t k = 0;
  for (const auto& phi : found) out.charts.push_back({"c" + std::to_string(k++), phi});
  return out;
}

inline ConcreteAtlas maximal_atlas(const ManifoldModel& m, const Pseudogroup<Point>& p,
                                   std::size_t bound = kDefaultMaximalAtlasBound) {
  return maximal_atlas(as_concrete_atlas(m), p, bound);
}

/// Isomorphism check between an atlas and the glued model of its extracted
/// data: x ↦ [φ_i(x), i] must not depend on i and must be bijective.
inline ValidationReport check_round_trip(const ConcreteAtlas& a, const ManifoldModel& m) {
  ValidationReport rep;
  rep.declare("well-defined");
  rep.declare("bijective");
  rep.declare("charts");
  const GluingData& g = *m.source;
  std::map<int, std::size_t> image;
  for (std::size_t c = 0; c < a.charts.size(); ++c) {
    const Id i = g.epos.at(a.charts[c].name);
    for (const auto& [x, y] : a.charts[c].phi) {
      const std::size_t cls = m.class_of(y, i);
      auto [it, fresh] = image.emplace(x, cls);
      if (!fresh && it->second != cls)
        rep.fail("well-defined", "point " + std::to_string(x) + " via chart " + a.charts[c].name);
    }
  }
  std::set<std::size_t> hit;
  for (const auto& [x, cls] : image) hit.insert(cls);
  if (image.size() != a.carrier.size() || hit.size() != image.size() || hit.size() != m.size())
    rep.fail("bijective", "|M|=" + std::to_string(a.carrier.size()) + " classes=" + std::to_string(m.size()) +
                              " image=" + std::to_string(hit.size()));
  for (const auto& c : a.charts) {
    const Id i = g.epos.at(c.name);
    std::set<std::size_t> dom;
    for (const auto& [x, _] : c.phi)
      if (image.count(x)) dom.insert(image.at(x));
    if (std::vector<std::size_t>(dom.begin(), dom.end()) != m.chart_domain[i])
      rep.fail("charts", "U_" + c.name + " is not carried onto its class domain");
  }
  return rep;
}

}  // namespace atlaskit
