#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gluing_file.hpp"
#include "reconstruct.hpp"

namespace atlaskit {

/// A map between glued models, class number to class number.
using ClassMap = std::vector<std::size_t>;

/// f_{i'i} : V_i → V_{i'}.
struct Component {
  PointMap table;
  std::optional<MapSpec> formula;
};

/// Morphism data: F ∋ (i', i), R ∋ (i, k, i', k') with (i, k) ∈ E and
/// (i', k') ∈ E', and one component per F-pair.
struct MorphismData {
  std::shared_ptr<const ManifoldModel> source;
  std::shared_ptr<const ManifoldModel> target;
  std::set<std::pair<Id, Id>> F;
  std::set<std::array<Id, 4>> R;
  std::map<std::pair<Id, Id>, Component> components;

  bool related(Id ip, Id i) const { return F.count({ip, i}) > 0; }
};

namespace detail {

inline std::string fpair(const MorphismData& d, Id ip, Id i) {
  return "(" + d.target->source->name(ip) + "," + d.source->source->name(i) + ")";
}

inline std::optional<Point> lookup(const PointMap& m, const Point& x) {
  auto it = m.find(x);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

}  // namespace detail

/// Every quadruple allowed by F: (i, k) ∈ E, (i', k') ∈ E', (i', i), (k', k) ∈ F.
inline std::set<std::array<Id, 4>> maximal_R(const GluingData& src, const GluingData& tgt,
                                             const std::set<std::pair<Id, Id>>& F) {
  std::set<std::array<Id, 4>> R;
  for (auto [ip, i] : F)
    for (auto [kp, k] : F)
      if (src.epos.equivalent(i, k) && tgt.epos.equivalent(ip, kp)) R.insert({i, k, ip, kp});
  return R;
}

/// R legs, components, the square (*), restriction (1), corestriction (2).
inline ValidationReport validate_morphism_data(const MorphismData& d) {
  ValidationReport rep;
  const GluingData& S = *d.source->source;
  const GluingData& T = *d.target->source;
  for (const char* c : {"F", "R.legs", "components", "square", "restriction", "corestriction"}) rep.declare(c);
  for (auto [ip, i] : d.F)
    if (ip >= T.size() || i >= S.size()) rep.fail("F", "pair out of range");
  if (!rep.valid()) return rep;

  for (const auto& q : d.R) {
    const auto [i, k, ip, kp] = q;
    if (i >= S.size() || k >= S.size() || ip >= T.size() || kp >= T.size()) {
      rep.fail("R.legs", "quadruple out of range");
      continue;
    }
    if (!S.epos.equivalent(i, k)) rep.fail("R.legs", "(" + S.name(i) + "," + S.name(k) + ") not in E");
    if (!T.epos.equivalent(ip, kp)) rep.fail("R.legs", "(" + T.name(ip) + "," + T.name(kp) + ") not in E'");
    if (!d.related(ip, i)) rep.fail("R.legs", detail::fpair(d, ip, i) + " not in F");
    if (!d.related(kp, k)) rep.fail("R.legs", detail::fpair(d, kp, k) + " not in F");
  }

  for (const auto& [key, c] : d.components)
    if (!d.F.count(key)) rep.fail("components", "component " + detail::fpair(d, key.first, key.second) + " outside F");
  for (auto [ip, i] : d.F) {
    auto it = d.components.find({ip, i});
    if (it == d.components.end()) {
      rep.fail("components", "missing f" + detail::fpair(d, ip, i));
      continue;
    }
    const PointMap& f = it->second.table;
    PointSet dom;
    for (const auto& [x, y] : f) {
      dom.insert(x);
      if (!T.ranges[ip].count(y))
        rep.fail("components", "f" + detail::fpair(d, ip, i) + " leaves V_" + T.name(ip) + " at x=" + to_string(x));
      if (it->second.formula) {
        std::optional<Point> v;
        try {
          v = eval_map(*it->second.formula, x, T.algebra);
        } catch (const EvalError&) {
        }
        if (!v || *v != y)
          rep.fail("components", "f" + detail::fpair(d, ip, i) + " disagrees with its formula at x=" + to_string(x));
      }
    }
    if (dom != S.ranges[i]) rep.fail("components", "f" + detail::fpair(d, ip, i) + " domain differs from V_" + S.name(i));
  }
  if (!rep.passed("components")) return rep;

  auto comp = [&](Id ip, Id i) -> const PointMap& { return d.components.at({ip, i}).table; };
  for (const auto& q : d.R) {
    const auto [i, k, ip, kp] = q;
    if (!d.related(ip, i) || !d.related(kp, k) || !S.epos.equivalent(i, k) || !T.epos.equivalent(ip, kp)) continue;
    const PointMap& phi_ki = transition_map(S, k, i);
    const PointMap& phi_kpip = transition_map(T, kp, ip);
    for (const auto& [x, y] : comp(ip, i)) {
      auto left = detail::lookup(phi_kpip, y);
      auto mid = detail::lookup(phi_ki, x);
      auto right = mid ? detail::lookup(comp(kp, k), *mid) : std::nullopt;
      if (!left || !right || *left != *right) {
        rep.fail("square", "i=" + S.name(i) + " k=" + S.name(k) + " i'=" + T.name(ip) + " k'=" + T.name(kp) +
                               " x=" + to_string(x));
        break;
      }
    }
  }

  for (auto [ip, i] : d.F) {
    for (Id k : S.epos.order.column(i)) {
      if (!d.related(ip, k)) {
        rep.fail("restriction", detail::fpair(d, ip, i) + " in F but " + detail::fpair(d, ip, k) + " is not");
        continue;
      }
      for (const auto& [x, y] : comp(ip, k)) {
        auto big = detail::lookup(comp(ip, i), x);
        if (!big || *big != y) {
          rep.fail("restriction", "f" + detail::fpair(d, ip, k) + " != f" + detail::fpair(d, ip, i) + " at x=" + to_string(x));
          break;
        }
      }
    }
    for (Id mp : T.epos.order.row(ip)) {
      if (!d.related(mp, i)) {
        rep.fail("corestriction", detail::fpair(d, ip, i) + " in F but " + detail::fpair(d, mp, i) + " is not");
        continue;
      }
      for (const auto& [x, y] : comp(ip, i)) {
        auto up = detail::lookup(comp(mp, i), x);
        if (!up || *up != y) {
          rep.fail("corestriction", "f" + detail::fpair(d, ip, i) + " != f" + detail::fpair(d, mp, i) + " at x=" + to_string(x));
          break;
        }
      }
    }
  }
  return rep;
}

/// First point witnessing non-fullness, as (class, k), if any.
inline std::optional<std::pair<std::size_t, Id>> fullness_witness(const MorphismData& d) {
  const ManifoldModel& M = *d.source;
  const GluingData& S = *M.source;
  for (Id k = 0; k < S.size(); ++k)
    for (std::size_t x : M.chart_domain[k]) {
      bool ok = false;
      for (auto [ip, i] : d.F)
        if (S.epos.leq(i, k) && M.in_chart(x, i)) {
          ok = true;
          break;
        }
      if (!ok) return std::make_pair(x, k);
    }
  return std::nullopt;
}

inline bool is_full(const MorphismData& d) { return !fullness_witness(d).has_value(); }

/// Partial reconstruction: value where some admissible (i', i) exists, and
/// a message for every point where admissible choices disagree.
struct PartialMap {
  std::vector<std::optional<std::size_t>> value;
  std::vector<std::string> conflicts;

  bool complete() const {
    return conflicts.empty() && std::all_of(value.begin(), value.end(), [](const auto& v) { return v.has_value(); });
  }
  std::vector<std::size_t> undefined() const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < value.size(); ++x)
      if (!value[x]) out.push_back(x);
    return out;
  }
};

/// f([x,i]) = [f_{i'i}(x), i'] using the least admissible (i', i), with every
/// other admissible choice compared against it.
inline PartialMap reconstruct_partial(const MorphismData& d) {
  const ManifoldModel& M = *d.source;
  const ManifoldModel& N = *d.target;
  PartialMap out;
  out.value.assign(M.size(), std::nullopt);
  for (auto [ip, i] : d.F) {
    auto cit = d.components.find({ip, i});
    if (cit == d.components.end()) continue;
    for (const auto& [x, phi_x] : M.chart_map[i]) {
      auto y = detail::lookup(cit->second.table, phi_x);
      std::optional<std::size_t> img;
      if (y && N.chart_inverse[ip].count(*y)) img = N.chart_inverse[ip].at(*y);
      if (!img) {
        out.conflicts.push_back("class " + std::to_string(x) + ": f" + detail::fpair(d, ip, i) + " gives no point");
        continue;
      }
      if (!out.value[x])
        out.value[x] = img;
      else if (*out.value[x] != *img)
        out.conflicts.push_back("class " + std::to_string(x) + ": choice " + detail::fpair(d, ip, i) + " gives " +
                                std::to_string(*img) + ", an earlier choice gives " + std::to_string(*out.value[x]));
    }
  }
  return out;
}

/// The unique map determined by full data. Throws InvalidStructure for
/// non-full data or disagreeing choices.
inline ClassMap reconstruct_map(const MorphismData& d) {
  if (auto w = fullness_witness(d))
    throw InvalidStructure("reconstruct_map: data not full at class " + std::to_string(w->first) + " in chart " +
                           d.source->source->name(w->second));
  auto p = reconstruct_partial(d);
  if (!p.conflicts.empty()) throw InvalidStructure("reconstruct_map: " + p.conflicts.front());
  ClassMap f;
  for (auto& v : p.value) f.push_back(*v);
  return f;
}

/// Data induced by a concrete map: F = {(i', i) : f(U_i) ⊆ U_{i'}}, the
/// maximal R, components φ_{i'}∘f∘φ_i⁻¹.
inline MorphismData extract_morphism_data(std::shared_ptr<const ManifoldModel> src,
                                          std::shared_ptr<const ManifoldModel> tgt, const ClassMap& f) {
  if (f.size() != src->size()) throw InputError("extract_morphism_data: map size differs from the source");
  for (auto y : f)
    if (y >= tgt->size()) throw InputError("extract_morphism_data: value outside the target");
  MorphismData d;
  d.source = src;
  d.target = tgt;
  const GluingData& S = *src->source;
  const GluingData& T = *tgt->source;
  for (Id ip = 0; ip < T.size(); ++ip)
    for (Id i = 0; i < S.size(); ++i) {
      bool inside = std::all_of(src->chart_domain[i].begin(), src->chart_domain[i].end(),
                                [&](std::size_t x) { return tgt->in_chart(f[x], ip); });
      if (!inside) continue;
      d.F.insert({ip, i});
      Component c;
      for (const auto& [x, phi_x] : src->chart_map[i]) c.table[phi_x] = tgt->chart_map[ip].at(f[x]);
      d.components[{ip, i}] = std::move(c);
    }
  d.R = maximal_R(S, T, d.F);
  return d;
}

/// First (class x, target index j) violating atlas-continuity, if any.
inline std::optional<std::pair<std::size_t, Id>> continuity_witness(const ManifoldModel& src, const ManifoldModel& tgt,
                                                                    const ClassMap& f) {
  const GluingData& S = *src.source;
  const GluingData& T = *tgt.source;
  for (std::size_t x = 0; x < src.size(); ++x)
    for (Id j = 0; j < T.size(); ++j) {
      if (!tgt.in_chart(f[x], j)) continue;
      bool ok = false;
      for (Id i = 0; i < S.size() && !ok; ++i) {
        if (!src.in_chart(x, i)) continue;
        ok = std::all_of(src.chart_domain[i].begin(), src.chart_domain[i].end(),
                         [&](std::size_t z) { return tgt.in_chart(f[z], j); });
      }
      if (!ok) return std::make_pair(x, j);
    }
  return std::nullopt;
}

inline bool atlas_continuous(const ManifoldModel& src, const ManifoldModel& tgt, const ClassMap& f) {
  return !continuity_witness(src, tgt, f).has_value();
}

/// Data of the identity map: F = {(i', i) : U_i ⊆ U_{i'}}, components
/// φ_{i'}∘φ_i⁻¹, which are the transitions φ_{i'i} on E.
inline MorphismData identity_data(std::shared_ptr<const ManifoldModel> m) {
  ClassMap id(m->size());
  for (std::size_t x = 0; x < id.size(); ++x) id[x] = x;
  return extract_morphism_data(m, m, id);
}

inline MorphismData constant_data(std::shared_ptr<const ManifoldModel> src, std::shared_ptr<const ManifoldModel> tgt,
                                  std::size_t value) {
  return extract_morphism_data(src, tgt, ClassMap(src->size(), value));
}

/// G∘F with components g_{lk}∘f_{ki} through the least mediator k; other
/// mediators must agree. Throws InputError when the models do not match.
inline MorphismData compose_morphism_data(const MorphismData& g, const MorphismData& f) {
  if (f.target != g.source && dump(*f.target) != dump(*g.source))
    throw InputError("compose_morphism_data: target of f is not the source of g");
  MorphismData out;
  out.source = f.source;
  out.target = g.target;
  const GluingData& mid = *f.target->source;
  for (Id l = 0; l < g.target->source->size(); ++l)
    for (Id i = 0; i < f.source->source->size(); ++i) {
      std::optional<Component> c;
      for (Id k = 0; k < mid.size(); ++k) {
        if (!f.related(k, i) || !g.related(l, k)) continue;
        const PointMap& fk = f.components.at({k, i}).table;
        const PointMap& gk = g.components.at({l, k}).table;
        Component cand;
        for (const auto& [x, y] : fk) {
          auto z = detail::lookup(gk, y);
          if (!z) throw InvalidStructure("compose_morphism_data: component of g undefined at " + to_string(y));
          cand.table[x] = *z;
        }
        if (!c)
          c = std::move(cand);
        else if (c->table != cand.table)
          throw InvalidStructure("compose_morphism_data: mediators disagree for (" + g.target->source->name(l) + "," +
                                 f.source->source->name(i) + ")");
      }
      if (c) {
        out.F.insert({l, i});
        out.components[{l, i}] = std::move(*c);
      }
    }
  out.R = maximal_R(*out.source->source, *out.target->source, out.F);
  return out;
}

/// Keeps the components (k', k) ∈ F with k ≤ k'. Source and target must be
/// the same model.
inline MorphismData restricted_data(const MorphismData& d) {
  if (d.source != d.target && dump(*d.source) != dump(*d.target))
    throw InputError("restricted_data: source and target differ");
  const EPos& e = d.source->source->epos;
  MorphismData out;
  out.source = d.source;
  out.target = d.target;
  for (auto [kp, k] : d.F)
    if (e.leq(k, kp)) {
      out.F.insert({kp, k});
      out.components[{kp, k}] = d.components.at({kp, k});
    }
  for (const auto& q : d.R)
    if (out.F.count({q[2], q[0]}) && out.F.count({q[3], q[1]})) out.R.insert(q);
  return out;
}

namespace detail {

inline Id resolve_chart(const GluingData& g, const std::string& name) {
  if (auto id = g.epos.indices.find(name)) return *id;
  if (auto id = g.epos.indices.find(name + "|{" + name + "}")) return *id;
  throw InputError("unknown chart '" + name + "'");
}

}  // namespace detail

/// Concrete map defined by chart formulas: each declaration s->t sends
/// [x, s] to [expr(x), t] wherever expr(x) is defined and lies in V_t. All
/// applicable declarations must agree and every point must be covered.
inline ClassMap map_from_chart_formulas(const ManifoldModel& src, const ManifoldModel& tgt,
                                        const std::vector<ComponentDecl>& decls) {
  const GluingData& S = *src.source;
  const GluingData& T = *tgt.source;
  struct Resolved {
    Id from, to;
    const MapSpec* expr;
  };
  std::vector<Resolved> rs;
  for (const auto& d : decls) {
    Resolved r{detail::resolve_chart(S, d.from), detail::resolve_chart(T, d.to), &d.expr};
    if (d.expr.arity() != T.dim) throw InputError("component " + d.from + "->" + d.to + " has the wrong arity");
    for (const auto& c : d.expr.components) check_variables(c, S.dim);
    rs.push_back(r);
  }
  ClassMap f(src.size());
  for (std::size_t x = 0; x < src.size(); ++x) {
    std::optional<std::size_t> value;
    for (const auto& r : rs) {
      auto it = src.chart_map[r.from].find(x);
      if (it == src.chart_map[r.from].end()) continue;
      Point y;
      try {
        y = eval_map(*r.expr, it->second, T.algebra);
      } catch (const EvalError&) {
        continue;
      }
      auto hit = tgt.chart_inverse[r.to].find(y);
      if (hit == tgt.chart_inverse[r.to].end()) continue;
      if (value && *value != hit->second)
        throw InvalidStructure("chart formulas disagree at class " + std::to_string(x));
      value = hit->second;
    }
    if (!value) throw InvalidStructure("chart formulas leave class " + std::to_string(x) + " undefined");
    f[x] = *value;
  }
  return f;
}

}  // namespace atlaskit
