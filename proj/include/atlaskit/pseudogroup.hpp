#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "groupoid.hpp"

namespace atlaskit {

namespace detail {

template <class T>
std::string to_text(const T& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

template <class T>
std::string set_text(const std::set<T>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    out += (first ? "" : ",") + to_text(x);
    first = false;
  }
  return out + "}";
}

}  // namespace detail

template <class T>
using Carrier = std::shared_ptr<const std::set<T>>;

template <class T>
Carrier<T> make_carrier(std::set<T> points) {
  return std::make_shared<const std::set<T>>(std::move(points));
}

/// Graph of a bijection between two subsets of a finite carrier V, stored as
/// the map x ↦ y for (y, x) in the graph.
template <class T>
class PartialBijection {
 public:
  PartialBijection() = default;

  /// Validates that `pairs` (each (y, x)) is injective and locally functional
  /// and that every point lies in the carrier.
  static PartialBijection from_graph(Carrier<T> carrier, const std::vector<std::pair<T, T>>& pairs) {
    PartialBijection f;
    f.carrier_ = std::move(carrier);
    std::set<T> images;
    for (const auto& [y, x] : pairs) {
      if (!f.carrier_->count(x) || !f.carrier_->count(y))
        throw InputError("partial bijection: point outside the carrier");
      auto [it, fresh] = f.map_.emplace(x, y);
      if (!fresh && it->second != y)
        throw InvalidStructure("not locally functional at " + detail::to_text(x));
      if (fresh && !images.insert(y).second) throw InvalidStructure("not injective at " + detail::to_text(y));
    }
    return f;
  }

  static PartialBijection from_map(Carrier<T> carrier, std::map<T, T> map) {
    std::vector<std::pair<T, T>> pairs;
    for (const auto& [x, y] : map) pairs.emplace_back(y, x);
    return from_graph(std::move(carrier), pairs);
  }

  static PartialBijection identity(Carrier<T> carrier, const std::set<T>& on) {
    std::map<T, T> m;
    for (const auto& x : on) m.emplace(x, x);
    return from_map(std::move(carrier), std::move(m));
  }

  const Carrier<T>& carrier() const { return carrier_; }
  const std::map<T, T>& map() const { return map_; }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  std::optional<T> apply(const T& x) const {
    auto it = map_.find(x);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  std::set<T> domain() const {
    std::set<T> d;
    for (const auto& [x, y] : map_) d.insert(x);
    return d;
  }

  std::set<T> image() const {
    std::set<T> d;
    for (const auto& [x, y] : map_) d.insert(y);
    return d;
  }

  PartialBijection inverse() const {
    PartialBijection f;
    f.carrier_ = carrier_;
    for (const auto& [x, y] : map_) f.map_.emplace(y, x);
    return f;
  }

  /// f ≤ g: f is a restriction of g.
  bool restriction_of(const PartialBijection& g) const {
    for (const auto& [x, y] : map_) {
      auto v = g.apply(x);
      if (!v || *v != y) return false;
    }
    return true;
  }

  bool same_carrier(const PartialBijection& other) const {
    return carrier_ == other.carrier_ || (carrier_ && other.carrier_ && *carrier_ == *other.carrier_);
  }

  bool operator==(const PartialBijection& other) const { return map_ == other.map_; }
  bool operator<(const PartialBijection& other) const { return map_ < other.map_; }

  friend std::ostream& operator<<(std::ostream& os, const PartialBijection& f) {
    os << "{";
    bool first = true;
    for (const auto& [x, y] : f.map_) {
      os << (first ? "" : ",") << x << "->" << y;
      first = false;
    }
    return os << "}";
  }

 private:
  Carrier<T> carrier_;
  std::map<T, T> map_;
};

/// Relational composition f ∘ g (apply g first).
template <class T>
PartialBijection<T> compose_pb(const PartialBijection<T>& f, const PartialBijection<T>& g) {
  if (!f.same_carrier(g)) throw InputError("compose_pb: carrier mismatch");
  std::map<T, T> m;
  for (const auto& [x, y] : g.map())
    if (auto z = f.apply(y)) m.emplace(x, *z);
  return PartialBijection<T>::from_map(f.carrier(), std::move(m));
}

/// graph(f) ∩ (V × U).
template <class T>
PartialBijection<T> restrict_pb(const PartialBijection<T>& f, const std::set<T>& on) {
  std::map<T, T> m;
  for (const auto& [x, y] : f.map())
    if (on.count(x)) m.emplace(x, y);
  return PartialBijection<T>::from_map(f.carrier(), std::move(m));
}

/// Subgroupoid (G0, G1) of the local bijections of a finite carrier.
template <class T>
struct Pseudogroup {
  Carrier<T> carrier;
  std::set<std::set<T>> objects;
  std::set<PartialBijection<T>> morphisms;

  bool has_object(const std::set<T>& s) const { return objects.count(s) > 0; }
  bool has_morphism(const PartialBijection<T>& f) const { return morphisms.count(f) > 0; }
};

inline constexpr std::size_t kDefaultPseudogroupBound = 4;
inline constexpr std::size_t kDefaultCoverBound = 3;

namespace detail {

template <class T>
void for_each_partial_bijection(const std::vector<T>& points, std::size_t pos, std::map<T, T>& current,
                                std::set<T>& used, const std::function<void(const std::map<T, T>&)>& emit) {
  if (pos == points.size()) {
    emit(current);
    return;
  }
  for_each_partial_bijection(points, pos + 1, current, used, emit);
  for (const auto& y : points) {
    if (used.count(y)) continue;
    used.insert(y);
    current.emplace(points[pos], y);
    for_each_partial_bijection(points, pos + 1, current, used, emit);
    current.erase(points[pos]);
    used.erase(y);
  }
}

template <class T>
std::vector<std::set<T>> all_subsets(const std::vector<T>& points) {
  std::vector<std::set<T>> out;
  const std::size_t n = points.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::set<T> s;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (std::size_t{1} << k)) s.insert(points[k]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

/// Every subset of V as an object and every partial bijection (including the
/// empty one) as a morphism.
template <class T>
Pseudogroup<T> full_pseudogroup(const std::set<T>& points, std::size_t bound = kDefaultPseudogroupBound) {
  if (points.size() > bound)
    throw SizeBoundError("full pseudogroup: |V| = " + std::to_string(points.size()) + " exceeds bound " +
                         std::to_string(bound));
  Pseudogroup<T> p;
  p.carrier = make_carrier(points);
  const std::vector<T> pts(points.begin(), points.end());
  for (auto& s : detail::all_subsets(pts)) p.objects.insert(std::move(s));
  std::map<T, T> current;
  std::set<T> used;
  detail::for_each_partial_bijection<T>(pts, 0, current, used, [&](const std::map<T, T>& m) {
    p.morphisms.insert(PartialBijection<T>::from_map(p.carrier, m));
  });
  return p;
}

namespace detail {

/// Glues one morphism per cover member into a single partial bijection when
/// they agree on overlaps and the union is injective.
template <class T>
void for_each_gluing(const std::vector<std::vector<PartialBijection<T>>>& choices, std::size_t pos,
                     std::map<T, T>& glued,
                     const std::function<bool(const std::map<T, T>&)>& emit, bool& stop) {
  if (stop) return;
  if (pos == choices.size()) {
    std::set<T> images;
    for (const auto& [x, y] : glued)
      if (!images.insert(y).second) return;
    if (!emit(glued)) stop = true;
    return;
  }
  for (const auto& g : choices[pos]) {
    std::vector<T> added;
    bool agrees = true;
    for (const auto& [x, y] : g.map()) {
      auto it = glued.find(x);
      if (it == glued.end()) {
        glued.emplace(x, y);
        added.push_back(x);
      } else if (it->second != y) {
        agrees = false;
        break;
      }
    }
    if (agrees) for_each_gluing(choices, pos + 1, glued, emit, stop);
    for (const auto& x : added) glued.erase(x);
    if (stop) return;
  }
}

template <class T>
void for_each_cover(const std::vector<std::set<T>>& members, std::size_t max_size,
                    const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (!chosen.empty() && !visit(chosen)) return false;
    if (chosen.size() == max_size) return true;
    for (std::size_t k = start; k < members.size(); ++k) {
      chosen.push_back(k);
      if (!rec(k + 1)) return false;
      chosen.pop_back();
    }
    return true;
  };
  rec(0);
}

}  // namespace detail

/// Exhaustively checks subgroupoid closure and the local-to-global gluing
/// property over covers of at most `cover_bound` members of G0.
template <class T>
ValidationReport check_psg(const Pseudogroup<T>& p, std::size_t cover_bound = kDefaultCoverBound) {
  ValidationReport rep;
  for (const char* name : {"objects", "endpoints", "units", "inverse", "composition", "PsG"}) rep.declare(name);
  rep.note("PsG checked over covers of at most " + std::to_string(cover_bound) + " members");
  const auto& V = *p.carrier;
  for (const auto& U : p.objects)
    for (const auto& x : U)
      if (!V.count(x)) rep.fail("objects", detail::set_text(U) + " leaves the carrier");

  std::map<std::set<T>, std::vector<PartialBijection<T>>> by_domain;
  for (const auto& f : p.morphisms) {
    by_domain[f.domain()].push_back(f);
    if (!p.has_object(f.domain()) || !p.has_object(f.image()))
      rep.fail("endpoints", detail::to_text(f));
    if (!p.has_morphism(f.inverse())) rep.fail("inverse", detail::to_text(f));
  }
  for (const auto& U : p.objects)
    if (!p.has_morphism(PartialBijection<T>::identity(p.carrier, U))) rep.fail("units", detail::set_text(U));
  for (const auto& f : p.morphisms) {
    auto it = by_domain.find(f.image());
    if (it == by_domain.end()) continue;
    for (const auto& g : it->second)
      if (!p.has_morphism(compose_pb(g, f)))
        rep.fail("composition", detail::to_text(g) + " o " + detail::to_text(f));
  }

  std::vector<std::set<T>> members;
  for (const auto& U : p.objects)
    if (!U.empty()) members.push_back(U);
  detail::for_each_cover<T>(members, cover_bound, [&](const std::vector<std::size_t>& cover) {
    std::vector<std::vector<PartialBijection<T>>> choices;
    for (std::size_t k : cover) {
      auto it = by_domain.find(members[k]);
      if (it == by_domain.end()) return true;
      choices.push_back(it->second);
    }
    std::map<T, T> glued;
    bool stop = false;
    detail::for_each_gluing<T>(choices, 0, glued, [&](const std::map<T, T>& m) {
      auto f = PartialBijection<T>::from_map(p.carrier, m);
      if (p.has_morphism(f)) return true;
      std::string cover_text = "cover=[";
      for (std::size_t k = 0; k < cover.size(); ++k) cover_text += (k ? "," : "") + detail::set_text(members[cover[k]]);
      rep.fail("PsG", cover_text + "] f=" + detail::to_text(f));
      return false;
    }, stop);
    return !stop;
  });
  return rep;
}

/// Smallest pseudogroup containing `generators`: closes under inverses,
/// composition, units, restriction to objects, and gluing over bounded covers.
template <class T>
Pseudogroup<T> generate_pseudogroup(Carrier<T> carrier, const std::vector<PartialBijection<T>>& generators,
                                    std::size_t cover_bound = kDefaultCoverBound) {
  Pseudogroup<T> p;
  p.carrier = carrier;
  for (const auto& g : generators) p.morphisms.insert(g);
  bool changed = true;
  while (changed) {
    changed = false;
    auto add_morphism = [&](const PartialBijection<T>& f) {
      if (p.morphisms.insert(f).second) changed = true;
    };
    auto add_object = [&](const std::set<T>& s) {
      if (p.objects.insert(s).second) changed = true;
    };
    const auto snapshot = p.morphisms;
    for (const auto& f : snapshot) {
      add_object(f.domain());
      add_object(f.image());
      add_morphism(f.inverse());
    }
    for (const auto& U : std::set<std::set<T>>(p.objects)) add_morphism(PartialBijection<T>::identity(carrier, U));
    for (const auto& f : snapshot)
      for (const auto& g : snapshot)
        if (g.image() == f.domain()) add_morphism(compose_pb(f, g));
    for (const auto& f : snapshot)
      for (const auto& U : std::set<std::set<T>>(p.objects)) {
        const auto d = f.domain();
        if (std::includes(d.begin(), d.end(), U.begin(), U.end())) add_morphism(restrict_pb(f, U));
      }
    if (changed) continue;
    {
      std::vector<std::set<T>> members;
      for (const auto& U : p.objects)
        if (!U.empty()) members.push_back(U);
      std::map<std::set<T>, std::vector<PartialBijection<T>>> by_domain;
      for (const auto& f : p.morphisms) by_domain[f.domain()].push_back(f);
      detail::for_each_cover<T>(members, cover_bound, [&](const std::vector<std::size_t>& cover) {
        std::vector<std::vector<PartialBijection<T>>> choices;
        for (std::size_t k : cover) {
          auto it = by_domain.find(members[k]);
          if (it == by_domain.end()) return true;
          choices.push_back(it->second);
        }
        std::map<T, T> glued;
        bool stop = false;
        detail::for_each_gluing<T>(choices, 0, glued, [&](const std::map<T, T>& m) {
          add_morphism(PartialBijection<T>::from_map(carrier, m));
          return true;
        }, stop);
        return true;
      });
    }
  }
  return p;
}

/// Inclusion-ordered groupoid of a pseudogroup; ids follow the sorted order
/// of objects and morphisms.
template <class T>
OrderedGroupoid as_ordered_groupoid(const Pseudogroup<T>& p) {
  OrderedGroupoid og;
  FiniteGroupoid& g = og.base;
  const std::vector<std::set<T>> objs(p.objects.begin(), p.objects.end());
  const std::vector<PartialBijection<T>> mors(p.morphisms.begin(), p.morphisms.end());
  std::vector<std::string> onames, mnames;
  for (const auto& U : objs) onames.push_back(detail::set_text(U));
  for (const auto& f : mors) mnames.push_back(detail::to_text(f));
  g.objects = Interner(onames);
  g.morphisms = Interner(mnames);
  auto object_id = [&](const std::set<T>& s) -> Id {
    auto it = std::lower_bound(objs.begin(), objs.end(), s);
    if (it == objs.end() || *it != s) throw InvalidStructure("pseudogroup object missing: " + detail::set_text(s));
    return static_cast<Id>(it - objs.begin());
  };
  auto morphism_id = [&](const PartialBijection<T>& f) -> std::optional<Id> {
    auto it = std::lower_bound(mors.begin(), mors.end(), f);
    if (it == mors.end() || !(*it == f)) return std::nullopt;
    return static_cast<Id>(it - mors.begin());
  };
  for (const auto& f : mors) {
    g.source.push_back(object_id(f.domain()));
    g.target.push_back(object_id(f.image()));
    auto inv = morphism_id(f.inverse());
    g.inverse.push_back(inv ? *inv : kNoId);
  }
  for (const auto& U : objs) {
    auto u = morphism_id(PartialBijection<T>::identity(p.carrier, U));
    g.unit.push_back(u ? *u : kNoId);
  }
  const std::size_t n = mors.size();
  g.product.assign(n * n, kNoId);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      if (g.target[b] == g.source[a])
        if (auto c = morphism_id(compose_pb(mors[a], mors[b]))) g.set_product(a, b, *c);
  og.order_objects = Relation(objs.size(), objs.size());
  for (Id a = 0; a < objs.size(); ++a)
    for (Id b = 0; b < objs.size(); ++b)
      if (std::includes(objs[b].begin(), objs[b].end(), objs[a].begin(), objs[a].end())) og.order_objects.insert(a, b);
  og.order_morphisms = Relation(n, n);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      if (mors[a].restriction_of(mors[b])) og.order_morphisms.insert(a, b);
  return og;
}

}  // namespace atlaskit
