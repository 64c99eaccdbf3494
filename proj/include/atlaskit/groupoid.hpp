#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "relation.hpp"
#include "report.hpp"

namespace atlaskit {

inline constexpr Id kNoId = std::numeric_limits<Id>::max();

/// A finite groupoid with all structure maps tabulated. The fields are public
/// because validators must be able to inspect arbitrary (possibly broken) data.
///
/// Morphism g goes from source[g] to target[g]; compose(g, h) = g ∗ h is
/// defined iff target[h] == source[g] and then runs source[h] → target[g].
struct FiniteGroupoid {
  Interner objects;
  Interner morphisms;
  std::vector<Id> source;
  std::vector<Id> target;
  std::vector<Id> unit;
  std::vector<Id> inverse;
  std::vector<Id> product;  // row-major, product[g * |G1| + h], kNoId where undefined

  std::size_t object_count() const { return objects.size(); }
  std::size_t morphism_count() const { return morphisms.size(); }

  std::optional<Id> compose(Id g, Id h) const {
    const Id r = product.at(static_cast<std::size_t>(g) * morphism_count() + h);
    if (r == kNoId) return std::nullopt;
    return r;
  }

  void set_product(Id g, Id h, Id value) { product.at(static_cast<std::size_t>(g) * morphism_count() + h) = value; }

  /// Builds the product table from a callback returning the name of g ∗ h
  /// for every pair with target(h) == source(g).
  template <class NameOfProduct>
  void tabulate(NameOfProduct&& name_of_product) {
    const std::size_t n = morphism_count();
    product.assign(n * n, kNoId);
    for (Id g = 0; g < n; ++g)
      for (Id h = 0; h < n; ++h)
        if (target[h] == source[g]) set_product(g, h, morphisms.at(name_of_product(g, h)));
  }

  std::string describe(Id g) const {
    return morphisms.name(g) + ":" + objects.name(source[g]) + "->" + objects.name(target[g]);
  }
};

/// Ordered groupoid: partial orders on objects and morphisms; a ≤ b is
/// stored as order.contains(a, b).
struct OrderedGroupoid {
  FiniteGroupoid base;
  Relation order_objects;
  Relation order_morphisms;
};

/// Equivalence-partially ordered set: `equiv` is E and `order` is L, with
/// order.contains(a, b) meaning a ≤ b.
struct EPos {
  Interner indices;
  Relation equiv;
  Relation order;

  std::size_t size() const { return indices.size(); }
  const std::string& name(Id i) const { return indices.name(i); }
  Id at(const std::string& name) const { return indices.at(name); }
  bool leq(Id a, Id b) const { return order.contains(a, b); }
  bool equivalent(Id a, Id b) const { return equiv.contains(a, b); }

  /// E-classes, each sorted, ordered by smallest member.
  std::vector<std::vector<Id>> classes() const {
    std::vector<std::vector<Id>> out;
    std::vector<bool> seen(size(), false);
    for (Id i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::vector<Id> cls;
      for (Id j = 0; j < size(); ++j)
        if (equiv.contains(i, j) && !seen[j]) {
          seen[j] = true;
          cls.push_back(j);
        }
      out.push_back(std::move(cls));
    }
    return out;
  }

  /// Builds an e-pos from generating pairs: E is closed to an equivalence and
  /// L (given as `lower ≤ upper` pairs, typically Hasse covers) to a
  /// reflexive-transitive relation.
  static EPos from_generators(std::vector<std::string> names,
                              const std::vector<std::pair<std::string, std::string>>& equiv_pairs,
                              const std::vector<std::pair<std::string, std::string>>& order_pairs) {
    EPos e;
    e.indices = Interner(std::move(names));
    const std::size_t n = e.indices.size();
    Relation eq(n, n), le(n, n);
    for (const auto& [a, b] : equiv_pairs) eq.insert(e.indices.at(a), e.indices.at(b));
    for (const auto& [lo, hi] : order_pairs) le.insert(e.indices.at(lo), e.indices.at(hi));
    e.equiv = eq.equivalence_closure();
    e.order = le.reflexive_transitive_closure();
    return e;
  }

  /// Sub-e-pos on the kept indices (relations restricted, not re-closed).
  EPos restrict_to(const std::vector<Id>& keep) const {
    EPos out;
    std::vector<std::string> names;
    for (Id k : keep) names.push_back(name(k));
    out.indices = Interner(std::move(names));
    out.equiv = equiv.restrict_to(keep);
    out.order = order.restrict_to(keep);
    return out;
  }
};

namespace detail {

inline std::string name_list(const Interner& names, const std::vector<Id>& ids) {
  std::string s = "[";
  for (std::size_t k = 0; k < ids.size(); ++k) s += (k ? "," : "") + names.name(ids[k]);
  return s + "]";
}

inline void check_reflexive(const Relation& r, const Interner& names, ValidationReport& rep, const std::string& check) {
  rep.declare(check);
  for (Id a = 0; a < r.rows(); ++a)
    if (!r.contains(a, a)) rep.fail(check, "missing (" + names.name(a) + "," + names.name(a) + ")");
}

inline void check_symmetric(const Relation& r, const Interner& names, ValidationReport& rep, const std::string& check) {
  rep.declare(check);
  for (auto [a, b] : r.pairs())
    if (!r.contains(b, a)) rep.fail(check, "(" + names.name(a) + "," + names.name(b) + ") without reverse");
}

inline void check_antisymmetric(const Relation& r, const Interner& names, ValidationReport& rep,
                                const std::string& check) {
  rep.declare(check);
  for (auto [a, b] : r.pairs())
    if (a != b && r.contains(b, a)) rep.fail(check, "(" + names.name(a) + "," + names.name(b) + ") both ways");
}

inline void check_transitive(const Relation& r, const Interner& names, ValidationReport& rep, const std::string& check) {
  rep.declare(check);
  for (Id a = 0; a < r.rows(); ++a)
    for (Id b : r.row(a))
      for (Id c : r.row(b))
        if (!r.contains(a, c))
          rep.fail(check, "(" + names.name(a) + "," + names.name(b) + "),(" + names.name(b) + "," + names.name(c) +
                              ") but not (" + names.name(a) + "," + names.name(c) + ")");
}

inline void check_partial_order(const Relation& r, const Interner& names, ValidationReport& rep,
                                const std::string& prefix) {
  check_reflexive(r, names, rep, prefix + ".reflexive");
  check_antisymmetric(r, names, rep, prefix + ".antisymmetric");
  check_transitive(r, names, rep, prefix + ".transitive");
}

}  // namespace detail

/// Checks every groupoid law by exhaustion; never throws on bad data.
inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport rep;
  const std::size_t n0 = g.object_count(), n1 = g.morphism_count();
  rep.declare("shape");
  if (g.source.size() != n1 || g.target.size() != n1 || g.inverse.size() != n1 || g.unit.size() != n0 ||
      g.product.size() != n1 * n1) {
    rep.fail("shape", "table sizes do not match the carriers");
    return rep;
  }
  auto in_range = [](Id v, std::size_t n) { return v < n; };
  for (Id m = 0; m < n1; ++m)
    if (!in_range(g.source[m], n0) || !in_range(g.target[m], n0) || !in_range(g.inverse[m], n1))
      rep.fail("shape", "morphism " + g.morphisms.name(m) + " has out-of-range structure");
  for (Id x = 0; x < n0; ++x)
    if (!in_range(g.unit[x], n1)) rep.fail("shape", "unit of " + g.objects.name(x) + " out of range");
  for (Id v : g.product)
    if (v != kNoId && !in_range(v, n1)) rep.fail("shape", "product entry out of range");
  if (!rep.valid()) return rep;

  rep.declare("compose.domain");
  rep.declare("compose.endpoints");
  for (Id a = 0; a < n1; ++a)
    for (Id b = 0; b < n1; ++b) {
      const auto ab = g.compose(a, b);
      const bool composable = g.target[b] == g.source[a];
      if (composable != ab.has_value())
        rep.fail("compose.domain", "g=" + g.morphisms.name(a) + " h=" + g.morphisms.name(b) +
                                       (composable ? " composable but undefined" : " defined but not composable"));
      if (ab && (g.source[*ab] != g.source[b] || g.target[*ab] != g.target[a]))
        rep.fail("compose.endpoints", "g=" + g.morphisms.name(a) + " h=" + g.morphisms.name(b));
    }

  rep.declare("associativity");
  for (Id a = 0; a < n1; ++a)
    for (Id b = 0; b < n1; ++b) {
      const auto ab = g.compose(a, b);
      if (!ab) continue;
      for (Id c = 0; c < n1; ++c) {
        const auto bc = g.compose(b, c);
        if (!bc) continue;
        const auto left = g.compose(*ab, c);
        const auto right = g.compose(a, *bc);
        if (left != right)
          rep.fail("associativity",
                   "(" + g.morphisms.name(a) + "," + g.morphisms.name(b) + "," + g.morphisms.name(c) + ")");
      }
    }

  rep.declare("unit");
  for (Id x = 0; x < n0; ++x) {
    const Id u = g.unit[x];
    if (g.source[u] != x || g.target[u] != x) rep.fail("unit", "unit of " + g.objects.name(x) + " is not a loop at it");
  }
  for (Id m = 0; m < n1; ++m) {
    const auto left = g.compose(g.unit[g.target[m]], m);
    const auto right = g.compose(m, g.unit[g.source[m]]);
    if (left != m || right != m) rep.fail("unit", "units do not fix " + g.morphisms.name(m));
  }

  rep.declare("inverse");
  for (Id m = 0; m < n1; ++m) {
    const Id inv = g.inverse[m];
    const auto l = g.compose(inv, m);
    const auto r = g.compose(m, inv);
    if (l != g.unit[g.source[m]] || r != g.unit[g.target[m]])
      rep.fail("inverse", "morphism " + g.morphisms.name(m) + " with inverse " + g.morphisms.name(inv));
  }
  return rep;
}

/// Checks the groupoid laws, both partial orders, and OG0–OG3 by exhaustion.
/// OG3 failures name (g, x') and the number of candidate restrictions found.
inline ValidationReport validate_ordered_groupoid(const OrderedGroupoid& og) {
  ValidationReport rep;
  const FiniteGroupoid& g = og.base;
  rep.merge(validate_groupoid(g), "groupoid.");
  const std::size_t n0 = g.object_count(), n1 = g.morphism_count();
  for (const char* name : {"objects.order", "morphisms.order", "OG0", "OG1", "OG2", "OG3"}) rep.declare(name);
  if (!rep.valid()) return rep;
  if (og.order_objects.rows() != n0 || og.order_objects.cols() != n0 || og.order_morphisms.rows() != n1 ||
      og.order_morphisms.cols() != n1) {
    rep.fail("objects.order", "order relations do not match the carriers");
    return rep;
  }
  ValidationReport orders;
  detail::check_partial_order(og.order_objects, g.objects, orders, "objects.order");
  detail::check_partial_order(og.order_morphisms, g.morphisms, orders, "morphisms.order");
  for (const auto& c : orders.checks())
    if (!c.passed) rep.fail(c.name.substr(0, c.name.rfind('.')), c.name + " " + c.witness);

  const Relation& lo = og.order_objects;
  const Relation& lm = og.order_morphisms;
  for (Id x = 0; x < n0; ++x)
    for (Id y = 0; y < n0; ++y)
      if (lo.contains(x, y) != lm.contains(g.unit[x], g.unit[y]))
        rep.fail("OG0", "x=" + g.objects.name(x) + " y=" + g.objects.name(y));

  for (Id a = 0; a < n1; ++a)
    for (Id b = 0; b < n1; ++b)
      if (lm.contains(a, b) != lm.contains(g.inverse[a], g.inverse[b]))
        rep.fail("OG1", "g=" + g.morphisms.name(a) + " h=" + g.morphisms.name(b));

  for (auto [a, b] : lm.pairs())
    for (auto [c, d] : lm.pairs()) {
      const auto ac = g.compose(a, c);
      const auto bd = g.compose(b, d);
      if (ac && bd && !lm.contains(*ac, *bd))
        rep.fail("OG2", "g=" + g.morphisms.name(a) + "<=h=" + g.morphisms.name(b) + ", g'=" + g.morphisms.name(c) +
                            "<=h'=" + g.morphisms.name(d));
    }

  std::vector<std::vector<Id>> by_source(n0);
  for (Id m = 0; m < n1; ++m) by_source[g.source[m]].push_back(m);
  for (Id m = 0; m < n1; ++m) {
    const Id x = g.source[m], y = g.target[m];
    for (Id xp : lo.column(x)) {
      std::vector<Id> candidates;
      for (Id c : by_source[xp])
        if (lm.contains(c, m) && lo.contains(g.target[c], y)) candidates.push_back(c);
      if (candidates.size() != 1)
        rep.fail("OG3", "g=" + g.morphisms.name(m) + " x'=" + g.objects.name(xp) + " candidates=" +
                            detail::name_list(g.morphisms, candidates));
    }
  }
  return rep;
}

/// Checks E (equivalence), L (partial order), the transport axiom, and the
/// two degenerate-triangle consequences independently of one another.
inline ValidationReport validate_epos(const EPos& e) {
  ValidationReport rep;
  const std::size_t n = e.size();
  if (e.equiv.rows() != n || e.equiv.cols() != n || e.order.rows() != n || e.order.cols() != n) {
    rep.fail("shape", "relations do not match the index set");
    return rep;
  }
  detail::check_reflexive(e.equiv, e.indices, rep, "E.reflexive");
  detail::check_symmetric(e.equiv, e.indices, rep, "E.symmetric");
  detail::check_transitive(e.equiv, e.indices, rep, "E.transitive");
  detail::check_partial_order(e.order, e.indices, rep, "L");

  rep.declare("Epos");
  for (auto [ip, i] : e.order.pairs())
    for (Id j : e.equiv.row(i)) {
      std::vector<Id> candidates;
      for (Id jp : e.equiv.row(ip))
        if (e.order.contains(jp, j)) candidates.push_back(jp);
      if (candidates.size() != 1)
        rep.fail("Epos", "i'=" + e.name(ip) + " i=" + e.name(i) + " j=" + e.name(j) +
                             " candidates=" + detail::name_list(e.indices, candidates));
    }

  rep.declare("triangle.comparable");
  for (auto [i, j] : e.order.pairs())
    if (i != j && e.equiv.contains(i, j)) rep.fail("triangle.comparable", "i=" + e.name(i) + " j=" + e.name(j));

  rep.declare("triangle.common-upper");
  for (Id m = 0; m < n; ++m) {
    const auto below = e.order.column(m);
    for (Id i : below)
      for (Id j : below)
        if (i != j && e.equiv.contains(i, j))
          rep.fail("triangle.common-upper", "i=" + e.name(i) + " j=" + e.name(j) + " m=" + e.name(m));
  }
  return rep;
}

/// The unique j' with (i', j') ∈ E and j' ≤ j, given i' ≤ i and (i, j) ∈ E.
inline Id epos_transport(const EPos& e, Id ip, Id i, Id j) {
  if (ip >= e.size() || i >= e.size() || j >= e.size()) throw InputError("transport: index out of range");
  if (!e.leq(ip, i)) throw InputError("transport: " + e.name(ip) + " is not below " + e.name(i));
  if (!e.equivalent(i, j)) throw InputError("transport: " + e.name(i) + " and " + e.name(j) + " are not equivalent");
  std::vector<Id> candidates;
  for (Id jp : e.equiv.row(ip))
    if (e.leq(jp, j)) candidates.push_back(jp);
  if (candidates.size() != 1)
    throw InvalidStructure("transport: " + std::to_string(candidates.size()) + " candidates for i'=" + e.name(ip) +
                           " i=" + e.name(i) + " j=" + e.name(j));
  return candidates.front();
}

/// The e-pos as an ordered groupoid: objects I, one morphism (i,j): j → i per
/// E-pair, ordered componentwise.
inline OrderedGroupoid epos_as_ordered_groupoid(const EPos& e) {
  if (auto rep = validate_epos(e); !rep.valid()) throw ReportError("invalid e-pos", rep);
  OrderedGroupoid og;
  FiniteGroupoid& g = og.base;
  g.objects = e.indices;
  const auto pairs = e.equiv.pairs();
  std::vector<std::string> names;
  for (auto [i, j] : pairs) names.push_back("(" + e.name(i) + "," + e.name(j) + ")");
  g.morphisms = Interner(names);
  for (auto [i, j] : pairs) {
    g.source.push_back(j);
    g.target.push_back(i);
  }
  auto morphism_of = [&](Id i, Id j) { return g.morphisms.at("(" + e.name(i) + "," + e.name(j) + ")"); };
  for (Id x = 0; x < e.size(); ++x) g.unit.push_back(morphism_of(x, x));
  for (auto [i, j] : pairs) g.inverse.push_back(morphism_of(j, i));
  g.tabulate([&](Id a, Id b) { return g.morphisms.name(morphism_of(pairs[a].first, pairs[b].second)); });
  og.order_objects = e.order;
  og.order_morphisms = Relation(pairs.size(), pairs.size());
  for (Id a = 0; a < pairs.size(); ++a)
    for (Id b = 0; b < pairs.size(); ++b)
      if (e.leq(pairs[a].first, pairs[b].first) && e.leq(pairs[a].second, pairs[b].second))
        og.order_morphisms.insert(a, b);
  return og;
}

/// Pair groupoid: one morphism (c,b): b → c for every ordered pair.
inline FiniteGroupoid pair_groupoid(const std::vector<std::string>& objs) {
  FiniteGroupoid g;
  g.objects = Interner(objs);
  std::vector<std::string> names;
  for (const auto& c : objs)
    for (const auto& b : objs) names.push_back("(" + c + "," + b + ")");
  g.morphisms = Interner(names);
  const Id n = static_cast<Id>(objs.size());
  for (Id c = 0; c < n; ++c)
    for (Id b = 0; b < n; ++b) {
      g.source.push_back(b);
      g.target.push_back(c);
      g.inverse.push_back(b * n + c);
    }
  for (Id x = 0; x < n; ++x) g.unit.push_back(x * n + x);
  g.product.assign(static_cast<std::size_t>(n) * n * n * n, kNoId);
  for (Id a = 0; a < n * n; ++a)
    for (Id b = 0; b < n * n; ++b)
      if (g.target[b] == g.source[a]) g.set_product(a, b, g.target[a] * n + g.source[b]);
  return g;
}

/// The cyclic group Z/n as a one-object groupoid.
inline FiniteGroupoid cyclic_group_groupoid(unsigned n) {
  if (n == 0) throw InputError("cyclic group of order 0");
  FiniteGroupoid g;
  g.objects = Interner({"*"});
  std::vector<std::string> names;
  for (unsigned k = 0; k < n; ++k) names.push_back(std::to_string(k));
  g.morphisms = Interner(names);
  g.source.assign(n, 0);
  g.target.assign(n, 0);
  g.unit = {0};
  for (Id k = 0; k < n; ++k) g.inverse.push_back((n - k) % n);
  g.product.assign(static_cast<std::size_t>(n) * n, kNoId);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) g.set_product(a, b, (a + b) % n);
  return g;
}

/// An ordered groupoid with the discrete (equality) order on both carriers.
inline OrderedGroupoid discretely_ordered(const FiniteGroupoid& g) {
  return OrderedGroupoid{g, Relation::identity(g.object_count()), Relation::identity(g.morphism_count())};
}

}  // namespace atlaskit
