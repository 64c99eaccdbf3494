#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "groupoid.hpp"
#include "relation.hpp"
#include "report.hpp"

namespace atlaskit {

/// (F, K; R) between G (source) and G' (target). Every relation stores
/// pairs as (target side, source side): F.contains(x', x), R.contains(h, g).
struct NaturalRelation {
  std::shared_ptr<const FiniteGroupoid> source;
  std::shared_ptr<const FiniteGroupoid> target;
  Relation F;
  Relation K;
  Relation R;
  bool special = false;
};

/// (F, K; R) with empty relations of the right shapes.
inline NaturalRelation empty_relation(std::shared_ptr<const FiniteGroupoid> src,
                                      std::shared_ptr<const FiniteGroupoid> tgt) {
  NaturalRelation n;
  n.F = Relation(tgt->object_count(), src->object_count());
  n.K = Relation(tgt->object_count(), src->object_count());
  n.R = Relation(tgt->morphism_count(), src->morphism_count());
  n.source = std::move(src);
  n.target = std::move(tgt);
  return n;
}

/// (NR): (h, g) ∈ R forces (π₀h, π₀g) ∈ F and (π₁h, π₁g) ∈ K. The two
/// containments behind π₀∘R = F∘π₀ and π₁∘R = K∘π₁ are reported as notes.
inline ValidationReport validate_nr(const NaturalRelation& n) {
  ValidationReport rep;
  rep.declare("shape");
  rep.declare("NR");
  rep.declare("special");
  const FiniteGroupoid& G = *n.source;
  const FiniteGroupoid& H = *n.target;
  if (n.F.rows() != H.object_count() || n.F.cols() != G.object_count() || n.K.rows() != H.object_count() ||
      n.K.cols() != G.object_count() || n.R.rows() != H.morphism_count() || n.R.cols() != G.morphism_count()) {
    rep.fail("shape", "relations do not match the groupoids");
    return rep;
  }
  for (auto [h, g] : n.R.pairs()) {
    if (!n.F.contains(H.source[h], G.source[g]))
      rep.fail("NR", "h=" + H.describe(h) + " g=" + G.describe(g) + " sources not in F");
    if (!n.K.contains(H.target[h], G.target[g]))
      rep.fail("NR", "h=" + H.describe(h) + " g=" + G.describe(g) + " targets not in K");
  }
  if (n.special && !(n.F == n.K)) rep.fail("special", "flagged special but F != K");

  // Both sides as relations from G1 to G0'.
  auto side = [&](bool src_side) {
    const Relation& obj = src_side ? n.F : n.K;
    Relation via_r(H.object_count(), G.morphism_count()), via_obj(H.object_count(), G.morphism_count());
    for (auto [h, g] : n.R.pairs()) via_r.insert(src_side ? H.source[h] : H.target[h], g);
    for (Id g = 0; g < G.morphism_count(); ++g)
      for (Id x = 0; x < H.object_count(); ++x)
        if (obj.contains(x, src_side ? G.source[g] : G.target[g])) via_obj.insert(x, g);
    const std::string name = src_side ? "pi0" : "pi1";
    rep.note(name + "∘R ⊆ " + (src_side ? "F" : "K") + "∘" + name + ": " + (via_r.subset_of(via_obj) ? "yes" : "no") +
             ", ⊇: " + (via_obj.subset_of(via_r) ? "yes" : "no"));
  };
  if (rep.passed("NR")) {
    side(true);
    side(false);
  }
  return rep;
}

/// (F₂∘F₁, K₂∘K₁; R₂∘R₁).
inline NaturalRelation compose_relational(const NaturalRelation& n2, const NaturalRelation& n1) {
  if (n1.target != n2.source && !(n1.target->morphisms == n2.source->morphisms && n1.target->objects == n2.source->objects))
    throw InputError("compose_relational: target of the first relation is not the source of the second");
  NaturalRelation out;
  out.source = n1.source;
  out.target = n2.target;
  out.F = n2.F.compose(n1.F);
  out.K = n2.K.compose(n1.K);
  out.R = n2.R.compose(n1.R);
  out.special = n1.special && n2.special;
  return out;
}

/// (F, K'; R'∗R) on one groupoid pair, where R'∗R collects (h'∗h, g'∗g) for
/// (h', g') ∈ R', (h, g) ∈ R with both products defined. Requires K = F'.
inline NaturalRelation compose_star(const NaturalRelation& n2, const NaturalRelation& n1) {
  if (n1.source != n2.source && !(n1.source->morphisms == n2.source->morphisms))
    throw InputError("compose_star: different source groupoids");
  if (n1.target != n2.target && !(n1.target->morphisms == n2.target->morphisms))
    throw InputError("compose_star: different target groupoids");
  if (!(n1.K == n2.F)) throw InputError("compose_star: K of the first relation differs from F of the second");
  const FiniteGroupoid& G = *n1.source;
  const FiniteGroupoid& H = *n1.target;
  NaturalRelation out;
  out.source = n1.source;
  out.target = n1.target;
  out.F = n1.F;
  out.K = n2.K;
  out.R = Relation(H.morphism_count(), G.morphism_count());
  const auto first = n1.R.pairs();
  const auto second = n2.R.pairs();
  for (auto [hp, gp] : second)
    for (auto [h, g] : first) {
      auto hh = H.compose(hp, h);
      if (!hh) continue;
      auto gg = G.compose(gp, g);
      if (!gg) continue;
      out.R.insert(*hh, *gg);
    }
  out.special = out.F == out.K;
  return out;
}

/// Ř = {(x, g) : (δ(x), g) ∈ R}, x an object of the target groupoid.
inline std::vector<std::pair<Id, Id>> check_relation(const NaturalRelation& n) {
  std::vector<std::pair<Id, Id>> out;
  const FiniteGroupoid& H = *n.target;
  for (Id x = 0; x < H.object_count(); ++x)
    for (Id g : n.R.row(H.unit[x])) out.emplace_back(x, g);
  return out;
}

/// (F, F; {(δx, δy) : (x, y) ∈ F}) on one groupoid.
inline NaturalRelation unit_relation(std::shared_ptr<const FiniteGroupoid> g, const Relation& F) {
  NaturalRelation n = empty_relation(g, g);
  n.F = F;
  n.K = F;
  for (auto [x, y] : F.pairs()) n.R.insert(g->unit[x], g->unit[y]);
  n.special = true;
  return n;
}

inline NaturalRelation identity_relation(std::shared_ptr<const FiniteGroupoid> g) {
  NaturalRelation n = empty_relation(g, g);
  n.F = Relation::identity(g->object_count());
  n.K = n.F;
  n.R = Relation::identity(g->morphism_count());
  n.special = true;
  return n;
}

/// The order of an ordered groupoid as a special endorelation.
inline NaturalRelation order_relation(const OrderedGroupoid& og) {
  auto g = std::make_shared<const FiniteGroupoid>(og.base);
  NaturalRelation n = empty_relation(g, g);
  n.F = og.order_objects;
  n.K = og.order_objects;
  n.R = og.order_morphisms;
  n.special = true;
  return n;
}

struct ProbeReport {
  enum class Outcome { equal, left_in_right, right_in_left, incomparable };
  Outcome outcome = Outcome::equal;
  std::size_t left_size = 0;
  std::size_t right_size = 0;
  std::string left_only;   // first pair only in (b∗a)∘(d∗c)
  std::string right_only;  // first pair only in (b∘d)∗(a∘c)

  static const char* name(Outcome o) {
    switch (o) {
      case Outcome::equal: return "equal";
      case Outcome::left_in_right: return "subset";
      case Outcome::right_in_left: return "superset";
      case Outcome::incomparable: return "incomparable";
    }
    return "?";
  }

  std::string to_text() const {
    std::ostringstream os;
    os << name(outcome) << " |left|=" << left_size << " |right|=" << right_size;
    if (!left_only.empty()) os << " left-only " << left_only;
    if (!right_only.empty()) os << " right-only " << right_only;
    return os.str();
  }
};

/// Compares (b∗a)∘(d∗c) with (b∘d)∗(a∘c) for four endorelations of one
/// groupoid. Throws InputError when the grid is not composable.
inline ProbeReport interchange_probe(const NaturalRelation& a, const NaturalRelation& b, const NaturalRelation& c,
                                     const NaturalRelation& d) {
  const NaturalRelation left = compose_relational(compose_star(b, a), compose_star(d, c));
  const NaturalRelation right = compose_star(compose_relational(b, d), compose_relational(a, c));
  const FiniteGroupoid& G = *a.source;
  ProbeReport p;
  p.left_size = left.R.size();
  p.right_size = right.R.size();
  for (auto [h, g] : left.R.pairs())
    if (!right.R.contains(h, g)) {
      p.left_only = "(" + G.morphisms.name(h) + "," + G.morphisms.name(g) + ")";
      break;
    }
  for (auto [h, g] : right.R.pairs())
    if (!left.R.contains(h, g)) {
      p.right_only = "(" + G.morphisms.name(h) + "," + G.morphisms.name(g) + ")";
      break;
    }
  if (p.left_only.empty() && p.right_only.empty())
    p.outcome = ProbeReport::Outcome::equal;
  else if (p.left_only.empty())
    p.outcome = ProbeReport::Outcome::left_in_right;
  else if (p.right_only.empty())
    p.outcome = ProbeReport::Outcome::right_in_left;
  else
    p.outcome = ProbeReport::Outcome::incomparable;
  return p;
}

}  // namespace atlaskit
