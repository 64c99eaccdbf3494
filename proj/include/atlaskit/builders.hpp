#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "atlas.hpp"
#include "gluing_file.hpp"
#include "groupoid.hpp"

namespace atlaskit {

/// I = {n, s, n_s, s_n}: two charts and their restrictions to the overlap.
inline EPos sphere_epos() {
  return EPos::from_generators({"n", "s", "n_s", "s_n"}, {{"n_s", "s_n"}}, {{"n_s", "n"}, {"s_n", "s"}});
}

namespace detail {

inline std::string index_name(std::size_t t, const std::vector<std::size_t>& S) {
  std::string s = std::to_string(t) + "|{";
  for (std::size_t k = 0; k < S.size(); ++k) s += (k ? "," : "") + std::to_string(S[k]);
  return s + "}";
}

/// Nonempty subsets of {0..n}, by size then lexicographically.
inline std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t size = 1; size <= n + 1; ++size) {
    std::vector<std::vector<std::size_t>> level;
    std::vector<bool> pick(n + 1, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      std::vector<std::size_t> S;
      for (std::size_t k = 0; k <= n; ++k)
        if (pick[k]) S.push_back(k);
      level.push_back(S);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace detail

/// Edges of the (n+1)-cube: index `t|{S}` is chart t restricted to the
/// overlap of the charts in S ∋ t. E: same S. L: (t,S') ≤ (t,S) iff S ⊆ S'.
inline EPos projective_epos(unsigned n) {
  if (n < 1 || n > 6) throw InputError("projective_epos: dimension must be between 1 and 6");
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> idx;
  for (const auto& S : detail::subsets_by_size(n))
    for (std::size_t t : S) idx.emplace_back(t, S);
  std::vector<std::string> names;
  for (const auto& [t, S] : idx) names.push_back(detail::index_name(t, S));
  EPos e;
  e.indices = Interner(names);
  const std::size_t m = idx.size();
  e.equiv = Relation(m, m);
  e.order = Relation(m, m);
  for (Id a = 0; a < m; ++a)
    for (Id b = 0; b < m; ++b) {
      if (idx[a].second == idx[b].second) e.equiv.insert(a, b);
      if (idx[a].first == idx[b].first &&
          std::includes(idx[a].second.begin(), idx[a].second.end(), idx[b].second.begin(), idx[b].second.end()))
        e.order.insert(a, b);
    }
  return e;
}

/// KPⁿ with charts 0..n; chart t has coordinates X_k/X_t (k ≠ t, increasing),
/// spelled u, v when n ≤ 2 and x0, x1, ... otherwise. Map t->s is defined
/// where the X_s/X_t coordinate is invertible and sends coordinate k ≠ s to
/// inv(c_s)*c_k, and k = t to inv(c_s). Every direction is emitted with its
/// formula. For n = 2 these are valid over alternative algebras; n ≥ 3 goes
/// beyond the plane formulas and requires an associative algebra.
inline GluingFile projective_kit(const Algebra& A, unsigned n) {
  if (n < 1 || n > 4) throw InputError("projective_kit: dimension must be between 1 and 4");
  if (n >= 3 && !A.associative())
    throw Unsupported("projective_kit: dimension " + std::to_string(n) + " needs an associative algebra");
  if (n == 2 && !A.alternative()) throw Unsupported("projective_kit: the plane needs an alternative algebra");
  GluingFile g;
  g.algebra = A.descriptor();
  g.dim = n;
  g.mode = GluingMode::cocycle;
  auto var = [&](std::size_t k) -> std::string {
    if (n <= 2) return k == 0 ? "u" : "v";
    return "x" + std::to_string(k);
  };
  // Position of X_k among the coordinates of chart t.
  auto slot = [](std::size_t t, std::size_t k) { return k < t ? k : k - 1; };
  for (std::size_t t = 0; t <= n; ++t) g.charts.push_back({std::to_string(t), Predicate::always()});
  for (std::size_t t = 0; t <= n; ++t)
    for (std::size_t s = 0; s <= n; ++s) {
      if (s == t) continue;
      const Expr cs = Expr::variable(var(slot(t, s)));
      MapDecl m;
      m.from = std::to_string(t);
      m.to = std::to_string(s);
      m.where = Predicate{{Predicate::Atom{Predicate::Atom::Kind::invertible, {cs}}}};
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == s) continue;
        if (k == t)
          m.expr.components.push_back(Expr::inverse(cs));
        else
          m.expr.components.push_back(Expr::binary(Expr::Op::mul, Expr::inverse(cs), Expr::variable(var(slot(t, k)))));
      }
      g.maps.push_back(std::move(m));
    }
  return g;
}

/// The plane with exactly the three displayed maps 1->0, 2->0, 2->1:
/// (inv(u), inv(u)*v), (inv(u)*v, inv(u)), (inv(v)*u, inv(v)). The other
/// directions are left to derivation by inversion.
inline GluingFile projective_plane_kit(const Algebra& A) {
  GluingFile g = projective_kit(A, 2);
  std::erase_if(g.maps, [](const MapDecl& m) { return m.from < m.to; });
  return g;
}

inline GluingFile projective_space_kit(std::uint64_t p, unsigned n) { return projective_kit(Algebra::prime_field(p), n); }

/// Two copies of F_p glued along F_p^× by the identity.
inline GluingFile doubled_origin_kit(std::uint64_t p) {
  GluingFile g;
  g.algebra = Algebra::prime_field(p).descriptor();
  g.dim = 1;
  g.charts = {{"1", Predicate::always()}, {"2", Predicate::always()}};
  const Predicate nz{{Predicate::Atom{Predicate::Atom::Kind::nonzero, {Expr::variable("u")}}}};
  g.maps.push_back({"1", "2", nz, identity_map(1)});
  g.maps.push_back({"2", "1", nz, identity_map(1)});
  return g;
}

/// The sphere e-pos written out directly: two copies of F_p whose overlap
/// charts n_s, s_n are glued by u ↦ inv(u).
inline GluingFile sphere_kit(std::uint64_t p) {
  GluingFile g;
  g.algebra = Algebra::prime_field(p).descriptor();
  g.dim = 1;
  g.mode = GluingMode::epos;
  const Predicate nz{{Predicate::Atom{Predicate::Atom::Kind::nonzero, {Expr::variable("u")}}}};
  g.charts = {{"n", Predicate::always()}, {"s", Predicate::always()}, {"n_s", nz}, {"s_n", nz}};
  g.equiv = {{"n_s", "s_n"}};
  g.order = {{"n_s", "n"}, {"s_n", "s"}};
  g.maps.push_back({"n_s", "s_n", std::nullopt, MapSpec{{Expr::inverse(Expr::variable("u"))}}});
  return g;
}

namespace detail {

inline std::uint64_t smallest_prime_at_least(std::uint64_t k) {
  for (std::uint64_t p = std::max<std::uint64_t>(k, 2);; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (prime) return p;
  }
}

inline std::vector<Point> small_model(std::size_t k, Algebra& A) {
  A = Algebra::prime_field(smallest_prime_at_least(k));
  std::vector<Point> V;
  for (std::size_t x = 0; x < k; ++x) V.push_back({A.from_integer(static_cast<long long>(x))});
  return V;
}

inline std::string graph_name(const std::map<int, Point>& phi) {
  std::string s = "{";
  bool first = true;
  for (const auto& [x, y] : phi) {
    s += (first ? "" : ",") + std::to_string(x) + "->" + to_string(y);
    first = false;
  }
  return s + "}";
}

}  // namespace detail

/// M = V = {0..k-1} ⊆ F_p with every nonempty local bijection as a chart.
inline ConcreteAtlas full_atlas_example(std::size_t k) {
  if (k < 1 || k > 3) throw InputError("full_atlas_example: |V| must be between 1 and 3");
  ConcreteAtlas a;
  const auto V = detail::small_model(k, a.algebra);
  a.dim = 1;
  for (std::size_t x = 0; x < k; ++x) a.carrier.insert(static_cast<int>(x));
  std::set<std::map<int, Point>> graphs;
  std::map<int, Point> cur;
  std::vector<bool> used(k, false);
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (x == k) {
      if (!cur.empty()) graphs.insert(cur);
      return;
    }
    rec(x + 1);
    for (std::size_t y = 0; y < k; ++y) {
      if (used[y]) continue;
      used[y] = true;
      cur[static_cast<int>(x)] = V[y];
      rec(x + 1);
      cur.erase(static_cast<int>(x));
      used[y] = false;
    }
  };
  rec(0);
  for (const auto& phi : graphs) a.charts.push_back({detail::graph_name(phi), phi});
  return a;
}

/// M = V = {0..k-1} ⊆ F_p with one chart per bijection of V.
inline ConcreteAtlas group_atlas_example(std::size_t k) {
  if (k < 1 || k > 4) throw InputError("group_atlas_example: |V| must be between 1 and 4");
  ConcreteAtlas a;
  const auto V = detail::small_model(k, a.algebra);
  a.dim = 1;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t x = 0; x < k; ++x) a.carrier.insert(static_cast<int>(x));
  do {
    std::map<int, Point> phi;
    for (std::size_t x = 0; x < k; ++x) phi[static_cast<int>(x)] = V[perm[x]];
    a.charts.push_back({detail::graph_name(phi), phi});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a;
}

/// Three overlapping charts a, b, c on {0..4} ⊆ F_5 with U_a ∩ U_c inside
/// U_b, closed under intersection; all charts restrict one coordinate.
inline ConcreteAtlas chain_atlas() {
  ConcreteAtlas a;
  a.algebra = Algebra::prime_field(5);
  a.dim = 1;
  a.carrier = {0, 1, 2, 3, 4};
  auto chart = [&](const std::string& name, std::vector<int> dom) {
    ConcreteAtlas::Chart c{name, {}};
    for (int x : dom) c.phi[x] = {a.algebra.from_integer(x)};
    a.charts.push_back(std::move(c));
  };
  chart("a", {0, 1, 2});
  chart("b", {1, 2, 3});
  chart("c", {2, 3, 4});
  chart("ab", {1, 2});
  chart("bc", {2, 3});
  chart("ac", {2});
  return a;
}

/// Single chart identifying {0..k-1} with the first k points of F_p.
inline ConcreteAtlas trivial_atlas(std::size_t k) {
  ConcreteAtlas a;
  const auto V = detail::small_model(k, a.algebra);
  a.dim = 1;
  ConcreteAtlas::Chart c{"e", {}};
  for (std::size_t x = 0; x < k; ++x) {
    a.carrier.insert(static_cast<int>(x));
    c.phi[static_cast<int>(x)] = V[x];
  }
  a.charts.push_back(std::move(c));
  return a;
}

/// Random atlas on |M| ≤ max_points over F_p, dim 1: random injective
/// charts, closed under restriction to pairwise intersections until (3)
/// holds, then deduplicated.
template <class Rng>
ConcreteAtlas random_atlas(Rng& rng, std::size_t max_points = 8, std::uint64_t p = 11, std::size_t base_charts = 3) {
  ConcreteAtlas a;
  a.algebra = Algebra::prime_field(p);
  a.dim = 1;
  std::uniform_int_distribution<std::size_t> size_dist(1, max_points);
  const std::size_t n = size_dist(rng);
  for (std::size_t x = 0; x < n; ++x) a.carrier.insert(static_cast<int>(x));
  const auto elems = a.algebra.enumerate();
  std::set<std::map<int, Point>> charts;
  std::vector<int> pts(a.carrier.begin(), a.carrier.end());
  std::uniform_int_distribution<std::size_t> count_dist(1, base_charts);
  const std::size_t count = count_dist(rng);
  std::set<int> covered;
  for (std::size_t c = 0; c < count || covered.size() < n; ++c) {
    std::vector<int> dom;
    std::bernoulli_distribution keep(0.6);
    for (int x : pts)
      if (keep(rng) || (c >= count && !covered.count(x))) dom.push_back(x);
    if (dom.empty()) dom.push_back(pts[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]);
    std::vector<Point> vals;
    for (const auto& e : elems) vals.push_back({e});
    std::shuffle(vals.begin(), vals.end(), rng);
    std::map<int, Point> phi;
    for (std::size_t k = 0; k < dom.size(); ++k) phi[dom[k]] = vals[k];
    charts.insert(phi);
    covered.insert(dom.begin(), dom.end());
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::map<int, Point>> cur(charts.begin(), charts.end());
    for (const auto& f : cur)
      for (const auto& g : cur) {
        std::map<int, Point> r;
        for (const auto& [x, y] : f)
          if (g.count(x)) r[x] = y;
        if (!r.empty() && charts.insert(r).second) grew = true;
      }
  }
  std::size_t k = 0;
  for (const auto& phi : charts) a.charts.push_back({"c" + std::to_string(k++), phi});
  return a;
}

}  // namespace atlaskit
