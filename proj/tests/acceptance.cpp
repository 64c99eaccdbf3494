// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "test_support.hpp"

using namespace atlaskit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> lines;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = what;
      pass = false;
    }
  }
};

using ModelPtr = std::shared_ptr<const ManifoldModel>;

template <class T>
T pick(std::mt19937_64& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t below(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

ClassMap compose_maps(const ClassMap& g, const ClassMap& f) {
  ClassMap out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = g[f[x]];
  return out;
}

std::size_t ipow(std::size_t q, unsigned n) {
  std::size_t r = 1;
  for (unsigned k = 0; k < n; ++k) r *= q;
  return r;
}

Outcome ac1() {
  Outcome o;
  std::ostringstream sizes;
  for (unsigned n = 1; n <= 6; ++n) {
    const auto e = projective_epos(n);
    const std::size_t expect = (n + 1) * ipow(2, n);
    sizes << (n > 1 ? " " : "") << e.size();
    o.require(e.size() == expect, "n=" + std::to_string(n) + " gave " + std::to_string(e.size()));
    if (n <= 3) o.require(oracle::naive_epos_ok(e), "n=" + std::to_string(n) + " is not an e-pos");
  }
  o.lines.push_back("|I| for n=1..6: " + sizes.str());
  return o;
}

Outcome ac2() {
  Outcome o;
  auto check = [&](std::uint64_t q, unsigned n) {
    const auto m = glue(build_gluing_data(projective_space_kit(q, n)));
    const auto cmp = oracle::compare_with_projective(m, oracle::SmallRing{static_cast<long>(q), false}, n);
    std::size_t expect = 0;
    for (unsigned k = 0; k <= n; ++k) expect += ipow(q, k);
    const std::string tag = "KP" + std::to_string(n) + "/F" + std::to_string(q);
    o.require(cmp.well_defined && cmp.bijective, tag + ": " + cmp.problem);
    o.require(m.size() == expect && cmp.oracle_points == expect, tag + " count " + std::to_string(m.size()));
    o.lines.push_back(tag + ": " + std::to_string(m.size()) + " points, bijection with oracle");
  };
  for (std::uint64_t q : {2u, 3u, 5u, 7u}) check(q, 2);
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u}) check(q, 1);
  check(2, 3);
  return o;
}

Outcome ac3() {
  Outcome o;
  const std::uint64_t seed = 20240601;
  const std::size_t samples = 1000;
  const auto O = Algebra::parse("cd:Q:3");
  const auto battery = alternative_battery(O, samples, seed);
  o.require(battery.all_hold() && battery.samples_checked == samples, "octonion identities: " + battery.to_text());
  o.lines.push_back("octonion identities: " + battery.to_text());

  const auto kit = projective_plane_kit(O);
  const MapDecl* m10 = kit.map("1", "0");
  const MapDecl* m21 = kit.map("2", "1");
  const MapDecl* m20 = kit.map("2", "0");
  o.require(m10 && m21 && m20, "plane kit lacks a map");
  if (!o.pass) return o;
  std::mt19937_64 rng(seed);
  std::size_t checked = 0, failures = 0;
  while (checked < samples) {
    const Point x{O.random_element(rng), O.random_element(rng)};
    if (!O.is_invertible(x[0]) || !O.is_invertible(x[1])) continue;
    if (!holds(*m21->where, x, O) || !holds(*m20->where, x, O)) continue;
    const Point y = eval_map(m21->expr, x, O);
    if (!holds(*m10->where, y, O)) continue;
    ++checked;
    if (eval_map(m10->expr, y, O) != eval_map(m20->expr, x, O)) ++failures;
  }
  o.require(failures == 0, std::to_string(failures) + " cocycle failures");
  o.lines.push_back("cocycle phi01*phi12 = phi02 on V012: " + std::to_string(checked) + " samples, " +
                    std::to_string(failures) + " failures");
  const auto sampled = sampled_kit_check(kit, samples, seed);
  o.require(sampled.valid(), "sampled kit check failed");
  o.lines.push_back("sampled kit check: " + sampled.notes().front());

  const auto S = Algebra::parse("cd:Q:4");
  const std::uint64_t sseed = 7;
  const auto sed = alternative_battery(S, 100000, sseed, true);
  o.require(sed.counterexample.has_value(), "no sedenion counterexample in 1e5 samples");
  o.lines.push_back("sedenions: violation after " + std::to_string(sed.samples_checked) + " samples (seed " +
                    std::to_string(sseed) + ", identity " + (sed.counterexample ? sed.counterexample->identity : "-") + ")");
  return o;
}

Outcome ac4() {
  Outcome o;
  for (const auto& name : oracle::finite_catalog_names()) {
    const auto g = oracle::gluing(name);
    const auto rep = relation_is_equivalence(g);
    o.require(rep.valid(), name + ": " + rep.to_text());
    if (g.meets.empty()) continue;
    auto mutated = g;
    const auto key = mutated.meets.begin()->first;
    mutated.meets.erase(key);
    o.require(!validate_gluing_data(mutated).passed("CONDITION 4"), name + ": deleted meet not detected");
  }
  o.lines.push_back(std::to_string(oracle::finite_catalog_names().size()) + " bundled models: witness relation closed");
  const auto chain = extract_gluing_data(chain_atlas());
  const auto gap = delete_index(chain, chain.epos.at("ac"));
  const auto rep = relation_is_equivalence(gap);
  const auto vrep = validate_gluing_data(gap);
  o.require(vrep.passed("CONDITION 1") && vrep.passed("CONDITION 2") && vrep.passed("CONDITION 3") && !vrep.passed("CONDITION 4"),
            "chain without ac should fail exactly the meet condition: " + vrep.to_text());
  o.require(!rep.passed("transitive") && !rep.passed("closure"), "transitivity gap not detected");
  o.lines.push_back("chain without meet chart ac: " + vrep.find("CONDITION 4")->witness + "; transitivity witness " +
                    rep.find("transitive")->witness);
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937_64 rng(5050);
  std::size_t max_points = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_atlas(rng);
    max_points = std::max(max_points, a.carrier.size());
    const auto arep = validate_concrete_atlas(a);
    o.require(arep.passed("(1)") && arep.passed("(2)") && arep.passed("(3)"), "generator produced " + arep.to_text());
    const auto m = glue(extract_gluing_data(a));
    const auto rep = check_round_trip(a, m);
    o.require(rep.valid(), "trial " + std::to_string(trial) + ": " + rep.to_text());
  }
  o.require(max_points <= 8, "atlas larger than 8 points");
  o.lines.push_back("50 atlases, largest carrier " + std::to_string(max_points));
  return o;
}

Outcome ac6() {
  Outcome o;
  for (auto [n, q] : {std::pair{1u, 2L}, {1u, 3L}, {2u, 2L}, {2u, 3L}}) {
    const auto g = weil_transport(build_gluing_data(projective_space_kit(static_cast<std::uint64_t>(q), n)));
    const auto m = glue(g);
    std::size_t base = 0;
    for (unsigned k = 0; k <= n; ++k) base += ipow(static_cast<std::size_t>(q), k);
    const std::size_t expect = base * ipow(static_cast<std::size_t>(q), n);
    const auto cmp = oracle::compare_with_projective(m, oracle::SmallRing{q, true}, n);
    const std::string tag = "T KP" + std::to_string(n) + "/F" + std::to_string(q);
    o.require(validate_gluing_data(g).valid(), tag + ": transported data invalid");
    o.require(m.size() == expect, tag + " count " + std::to_string(m.size()));
    o.require(cmp.well_defined && cmp.bijective && cmp.oracle_points == expect, tag + ": " + cmp.problem);
    o.lines.push_back(tag + ": " + std::to_string(m.size()) + " points");
  }
  for (long p : {2L, 3L, 5L}) {
    const auto D = Algebra::dual(Algebra::prime_field(static_cast<std::uint64_t>(p)));
    const oracle::SmallRing R{p, true};
    std::size_t units = 0;
    for (const auto& x : D.enumerate()) {
      const auto d = oracle::to_dual(x);
      o.require(D.is_invertible(x) == R.unit(d), "invertibility mismatch over F" + std::to_string(p) + "[e]");
      if (!R.unit(d)) continue;
      ++units;
      const auto y = D.inv(x);
      o.require(D.mul(x, y) == D.one() && D.mul(y, x) == D.one(), "inverse law fails over F" + std::to_string(p) + "[e]");
      const auto expect = R.inv(d);
      o.require(oracle::to_dual(y).a == expect.a && oracle::to_dual(y).b == expect.b, "inverse differs from a^-1 - e b a^-2");
    }
    o.lines.push_back("F" + std::to_string(p) + "[e]: inverse law on all " + std::to_string(units) + " units");
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  std::size_t models = 0;
  for (const auto& name : oracle::finite_catalog_names()) {
    const auto m = oracle::model(name);
    ClassMap id(m->size());
    std::iota(id.begin(), id.end(), std::size_t{0});
    const auto d = identity_data(m);
    o.require(validate_morphism_data(d).valid() && is_full(d) && reconstruct_map(d) == id, name + ": identity");
    ++models;
  }
  o.lines.push_back("identity data reconstructs the identity on " + std::to_string(models) + " models");

  std::mt19937_64 rng(7070);
  std::vector<std::string> names;
  for (const auto& name : oracle::finite_catalog_names())
    if (oracle::model(name)->size() <= 13) names.push_back(name);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = oracle::model(pick(rng, names)), b = oracle::model(pick(rng, names)), c = oracle::model(pick(rng, names));
    const auto f = oracle::random_chart_map(rng, *a, *b);
    const auto h = oracle::random_chart_map(rng, *b, *c);
    const auto df = extract_morphism_data(a, b, f), dh = extract_morphism_data(b, c, h);
    o.require(is_full(df) && is_full(dh), "random chart map gave non-full data");
    if (!is_full(df) || !is_full(dh)) continue;
    const auto comp = compose_morphism_data(dh, df);
    o.require(validate_morphism_data(comp).valid() && is_full(comp), "composite invalid in trial " + std::to_string(trial));
    if (!is_full(comp)) continue;
    o.require(reconstruct_map(comp) == compose_maps(h, f), "reconstruct(g.f) != g.f in trial " + std::to_string(trial));
    o.require(reconstruct_map(dh) == h && reconstruct_map(df) == f, "factor reconstruction in trial " + std::to_string(trial));
  }
  o.lines.push_back("100 random composable pairs on models with <= 13 points (" + std::to_string(names.size()) + " models)");

  const auto m = oracle::model("doubled_origin_f3");
  const std::size_t n = m->size();
  std::size_t continuous = 0, total = 0;
  for (std::size_t code = 0; code < ipow(n, static_cast<unsigned>(n)); ++code) {
    ClassMap f(n);
    std::size_t c = code;
    for (auto& y : f) {
      y = c % n;
      c /= n;
    }
    ++total;
    if (!atlas_continuous(*m, *m, f)) continue;
    ++continuous;
    const auto d = extract_morphism_data(m, m, f);
    o.require(validate_morphism_data(d).valid() && is_full(d), "continuous map with bad data, code " + std::to_string(code));
    if (is_full(d)) o.require(reconstruct_map(d) == f, "round trip fails, code " + std::to_string(code));
  }
  o.lines.push_back("doubled origin/F3: " + std::to_string(continuous) + " of " + std::to_string(total) +
                    " self-maps are atlas-continuous, all round-trip");
  return o;
}

Outcome ac8() {
  Outcome o;
  using GPtr = std::shared_ptr<const FiniteGroupoid>;
  std::mt19937_64 rng(8080);
  std::size_t violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GPtr g = std::make_shared<const FiniteGroupoid>(oracle::random_groupoid(rng, 5));
    const GPtr h = std::make_shared<const FiniteGroupoid>(oracle::random_groupoid(rng, 5));
    const GPtr k = std::make_shared<const FiniteGroupoid>(oracle::random_groupoid(rng, 5));
    const auto n1 = oracle::random_nr(rng, g, h), n2 = oracle::random_nr(rng, h, k);
    if (!validate_nr(compose_relational(n2, n1)).valid()) ++violations;
    const auto m1 = oracle::random_nr(rng, g, h);
    const auto m2 = oracle::random_nr(rng, g, h, m1.K);
    if (!validate_nr(compose_star(m2, m1)).valid()) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " NR violations");
  o.lines.push_back("200 pairs each for relational and star composition: " + std::to_string(violations) + " violations");

  std::map<std::string, int> table;
  for (int trial = 0; trial < 100; ++trial) {
    const GPtr g = std::make_shared<const FiniteGroupoid>(oracle::random_groupoid(rng, 4));
    const auto a = oracle::random_nr(rng, g, g), c = oracle::random_nr(rng, g, g);
    const auto b = oracle::random_nr(rng, g, g, a.K), d = oracle::random_nr(rng, g, g, c.K);
    ++table[ProbeReport::name(interchange_probe(a, b, c, d).outcome)];
  }
  std::ostringstream t;
  t << "interchange probe over 100 grids:";
  for (const char* key : {"equal", "subset", "superset", "incomparable"}) t << " " << key << "=" << table[key];
  o.lines.push_back(t.str());
  return o;
}

Outcome ac9() {
  Outcome o;
  const auto a = trivial_atlas(2);
  std::set<Point> pts;
  for (const auto& c : a.charts)
    for (const auto& [_, y] : c.phi) pts.insert(y);
  const auto P = full_pseudogroup(pts);
  const auto max = maximal_atlas(a, P);
  std::size_t nonempty = 0;
  for (const auto& c : max.charts)
    if (!c.phi.empty()) ++nonempty;
  o.require(nonempty == 6 && max.charts.size() == 6, "maximal atlas has " + std::to_string(nonempty) + " charts");
  o.require(maximal_atlas(max, P).chart_set() == max.chart_set(), "not idempotent");
  const auto full = full_atlas_example(2);
  o.require(maximal_atlas(full, P).chart_set() == full.chart_set(), "full atlas example is not maximal");
  o.lines.push_back("|M|=2: " + std::to_string(nonempty) + " nonempty charts, idempotent, full example maximal");
  return o;
}

// Single-entry corruptions. Each returns false when it could not apply.

Point random_point(std::mt19937_64& rng, const Algebra& A, std::size_t dim) {
  const auto elems = A.enumerate();
  Point x;
  for (std::size_t k = 0; k < dim; ++k) x.push_back(pick(rng, elems));
  return x;
}

bool mutate_epos(std::mt19937_64& rng, EPos& e, std::string& what) {
  const Id a = static_cast<Id>(below(rng, e.size())), b = static_cast<Id>(below(rng, e.size()));
  Relation& r = below(rng, 2) ? e.equiv : e.order;
  const bool had = r.contains(a, b);
  if (had)
    r.erase(a, b);
  else
    r.insert(a, b);
  what = std::string(&r == &e.equiv ? "E" : "L") + (had ? " drop " : " add ") + e.name(a) + "," + e.name(b);
  return true;
}

template <class Table>
bool mutate_table(std::mt19937_64& rng, Table& table, const PointSet& targets, std::size_t kind, std::string& what) {
  if (table.empty()) return false;
  auto it = std::next(table.begin(), static_cast<long>(below(rng, table.size())));
  switch (kind) {
    case 0: {
      if (table.size() < 2) return false;
      auto jt = std::next(table.begin(), static_cast<long>(below(rng, table.size())));
      if (it == jt || it->second == jt->second) return false;
      std::swap(it->second, jt->second);
      what = "swap values";
      return true;
    }
    case 1: {
      if (targets.size() < 2) return false;
      Point y = *std::next(targets.begin(), static_cast<long>(below(rng, targets.size())));
      if (y == it->second) return false;
      it->second = y;
      what = "redirect value";
      return true;
    }
    default:
      table.erase(it);
      what = "erase entry";
      return true;
  }
}

bool mutate_gluing(std::mt19937_64& rng, GluingData& g, std::string& what) {
  const std::size_t kind = below(rng, 8);
  switch (kind) {
    case 0:
    case 1:
    case 2: {
      if (g.trans.empty()) return false;
      auto it = std::next(g.trans.begin(), static_cast<long>(below(rng, g.trans.size())));
      const bool ok = mutate_table(rng, it->second.table, g.ranges[it->first.first], kind, what);
      it->second.formula.reset();
      what = "transition " + g.name(it->first.first) + "<-" + g.name(it->first.second) + ": " + what;
      return ok;
    }
    case 3: {
      if (g.trans.empty()) return false;
      auto it = std::next(g.trans.begin(), static_cast<long>(below(rng, g.trans.size())));
      what = "drop transition " + g.name(it->first.first) + "<-" + g.name(it->first.second);
      g.trans.erase(it);
      return true;
    }
    case 4: {
      if (g.meets.empty()) return false;
      auto it = std::next(g.meets.begin(), static_cast<long>(below(rng, g.meets.size())));
      if (below(rng, 2)) {
        what = "drop meet";
        g.meets.erase(it);
      } else {
        const Id k = static_cast<Id>(below(rng, g.size()));
        if (k == it->second) return false;
        it->second = k;
        what = "redirect meet";
      }
      return true;
    }
    case 5: {
      const Id i = static_cast<Id>(below(rng, g.size()));
      if (g.ranges[i].empty()) return false;
      g.ranges[i].erase(std::next(g.ranges[i].begin(), static_cast<long>(below(rng, g.ranges[i].size()))));
      g.range_predicates[i].reset();
      what = "shrink range " + g.name(i);
      return true;
    }
    case 6: {
      const Id i = static_cast<Id>(below(rng, g.size()));
      const Point x = random_point(rng, g.algebra, g.dim);
      if (!g.ranges[i].insert(x).second) return false;
      g.range_predicates[i].reset();
      what = "grow range " + g.name(i);
      return true;
    }
    default:
      return mutate_epos(rng, g.epos, what);
  }
}

bool mutate_morphism(std::mt19937_64& rng, MorphismData& d, std::string& what) {
  const auto& src = *d.source->source;
  const auto& tgt = *d.target->source;
  const std::size_t kind = below(rng, 7);
  switch (kind) {
    case 0:
    case 1:
    case 2: {
      if (d.components.empty()) return false;
      auto it = std::next(d.components.begin(), static_cast<long>(below(rng, d.components.size())));
      const bool ok = mutate_table(rng, it->second.table, tgt.ranges[it->first.first], kind, what);
      it->second.formula.reset();
      what = "component " + tgt.name(it->first.first) + "<-" + src.name(it->first.second) + ": " + what;
      return ok;
    }
    case 3: {
      if (d.F.empty()) return false;
      auto it = std::next(d.F.begin(), static_cast<long>(below(rng, d.F.size())));
      what = "drop F pair, keep component";
      d.F.erase(it);
      return true;
    }
    case 4: {
      const Id ip = static_cast<Id>(below(rng, tgt.size())), i = static_cast<Id>(below(rng, src.size()));
      if (d.F.count({ip, i})) return false;
      d.F.insert({ip, i});
      what = "add F pair without component";
      return true;
    }
    case 5: {
      const std::array<Id, 4> q{static_cast<Id>(below(rng, src.size())), static_cast<Id>(below(rng, src.size())),
                                static_cast<Id>(below(rng, tgt.size())), static_cast<Id>(below(rng, tgt.size()))};
      if (!d.R.insert(q).second) return false;
      what = "add R quadruple";
      return true;
    }
    default: {
      if (d.components.empty()) return false;
      auto it = std::next(d.components.begin(), static_cast<long>(below(rng, d.components.size())));
      what = "drop component, keep F pair";
      d.components.erase(it);
      return true;
    }
  }
}

bool has_witness(const ValidationReport& rep) {
  if (rep.valid()) return false;
  for (const auto& name : rep.failures()) {
    const Check* c = rep.find(name);
    if (!c || c->witness.empty()) return false;
  }
  return true;
}

Outcome ac10() {
  Outcome o;
  std::mt19937_64 rng(1010);
  const std::vector<std::string> kit_names{"kp1_f3", "kp2_f2", "doubled_origin_f5", "sphere_f5", "chain", "full2", "group3"};
  std::vector<EPos> eposes{sphere_epos(), projective_epos(1), projective_epos(2), projective_epos(3)};
  std::vector<GluingData> gluings;
  std::vector<ModelPtr> models;
  for (const auto& name : kit_names) {
    gluings.push_back(oracle::gluing(name));
    eposes.push_back(gluings.back().epos);
    models.push_back(oracle::model(name));
  }
  std::vector<MorphismData> morphisms;
  for (const auto& m : models) morphisms.push_back(identity_data(m));
  while (morphisms.size() < models.size() + 12) {
    const auto a = pick(rng, models), b = pick(rng, models);
    morphisms.push_back(extract_morphism_data(a, b, oracle::random_chart_map(rng, *a, *b)));
  }

  std::size_t invalid = 0, silent = 0, false_alarms = 0, benign = 0, threw = 0;
  std::map<std::string, std::size_t> per_family;
  std::string first_problem;
  auto note = [&](const std::string& s) {
    if (first_problem.empty()) first_problem = s;
  };
  while (invalid < 500) {
    const std::size_t family = invalid % 3;
    std::string what;
    bool naive_ok = true;
    ValidationReport rep;
    try {
      if (family == 0) {
        EPos e = pick(rng, eposes);
        if (!mutate_epos(rng, e, what)) continue;
        naive_ok = oracle::naive_epos_ok(e);
        rep = validate_epos(e);
        what = "e-pos " + what;
      } else if (family == 1) {
        GluingData g = pick(rng, gluings);
        if (!mutate_gluing(rng, g, what)) continue;
        naive_ok = oracle::naive_gluing_ok(g);
        rep = validate_gluing_data(g);
        what = "gluing " + what;
      } else {
        MorphismData d = pick(rng, morphisms);
        if (!mutate_morphism(rng, d, what)) continue;
        naive_ok = oracle::naive_morphism_ok(d);
        rep = validate_morphism_data(d);
        what = "morphism " + what;
      }
    } catch (const std::exception& e) {
      ++threw;
      note(what + ": validator threw " + e.what());
      ++invalid;
      continue;
    }
    if (naive_ok) {
      ++benign;
      if (!rep.valid()) {
        ++false_alarms;
        note(what + ": validator rejects data the oracle accepts: " + rep.to_text());
      }
      continue;
    }
    ++invalid;
    ++per_family[family == 0 ? "e-pos" : family == 1 ? "gluing" : "morphism"];
    if (!has_witness(rep)) {
      ++silent;
      note(what + ": silent pass");
    }
  }
  o.require(silent == 0 && threw == 0 && false_alarms == 0, first_problem);
  std::ostringstream s;
  s << invalid << " invalid mutations (";
  bool first = true;
  for (const auto& [k, v] : per_family) {
    s << (first ? "" : ", ") << k << " " << v;
    first = false;
  }
  s << "), caught with witness " << invalid - silent - threw << ", silent " << silent << ", threw " << threw
    << "; benign mutations " << benign << ", false alarms " << false_alarms;
  o.lines.push_back(s.str());
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "e-pos cardinalities", 1, ac1},
      {"AC2", "point counts via reconstruction", 5, ac2},
      {"AC3", "octonion plane identities", 30, ac3},
      {"AC4", "transitivity oracle", 5, ac4},
      {"AC5", "extract/glue round trip", 10, ac5},
      {"AC6", "dual-number transport", 10, ac6},
      {"AC7", "morphism layer", 60, ac7},
      {"AC8", "natural relations", 30, ac8},
      {"AC9", "maximal atlas", 1, ac9},
      {"AC10", "validator soundness sweep", 60, ac10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.budget_s) {
      o.pass = false;
      o.detail = "over time budget";
    }
    for (const auto& line : o.lines) std::cout << "    " << line << "\n";
    std::cout << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.title << " (" << std::fixed << std::setprecision(2)
              << secs << "s / " << c.budget_s << "s)";
    if (!o.pass) std::cout << ": " << o.detail;
    std::cout << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
            << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
