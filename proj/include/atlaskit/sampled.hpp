#pragma once

#include <random>
#include <string>

#include "gluing_file.hpp"
#include "report.hpp"

namespace atlaskit {

/// Sampled compatibility checks for a cocycle kit over any algebra: random
/// points of each chart are pushed through declared maps. Checks `inverse`
/// (t->s then s->t returns the point) and `cocycle` (r->t then t->s equals
/// r->s wherever all three are defined).
inline ValidationReport sampled_kit_check(const GluingFile& kit, std::size_t samples, std::uint64_t seed,
                                          int height = 5) {
  const Algebra A = Algebra::parse(kit.algebra);
  ValidationReport rep;
  rep.declare("inverse");
  rep.declare("cocycle");
  std::mt19937_64 rng(seed);
  std::size_t inverse_checked = 0, cocycle_checked = 0;
  auto try_map = [&](const MapDecl& m, const Point& x) -> std::optional<Point> {
    if (m.where && !holds(*m.where, x, A)) return std::nullopt;
    try {
      return eval_map(m.expr, x, A);
    } catch (const EvalError&) {
      return std::nullopt;
    }
  };
  for (std::size_t n = 0; n < samples; ++n) {
    for (const auto& r : kit.charts) {
      Point x;
      for (std::size_t k = 0; k < kit.dim; ++k) x.push_back(A.random_element(rng, height));
      if (!holds(r.domain, x, A)) continue;
      for (const auto& m : kit.maps) {
        if (m.from != r.name) continue;
        auto y = try_map(m, x);
        if (!y) continue;
        if (const MapDecl* back = kit.map(m.to, m.from)) {
          auto z = try_map(*back, *y);
          ++inverse_checked;
          if (!z || *z != x)
            rep.fail("inverse", m.from + "->" + m.to + "->" + m.from + " seed=" + std::to_string(seed) +
                                    " sample=" + std::to_string(n) + " x=" + to_string(x));
        }
        for (const auto& second : kit.maps) {
          if (second.from != m.to || second.to == m.from) continue;
          const MapDecl* direct = kit.map(m.from, second.to);
          if (!direct) continue;
          auto d = try_map(*direct, x);
          if (!d) continue;
          auto via = try_map(second, *y);
          if (!via) continue;
          ++cocycle_checked;
          if (*via != *d)
            rep.fail("cocycle", m.from + "->" + m.to + "->" + second.to + " seed=" + std::to_string(seed) +
                                    " sample=" + std::to_string(n) + " x=" + to_string(x));
        }
      }
    }
  }
  rep.note("samples=" + std::to_string(samples) + " seed=" + std::to_string(seed) +
           " inverse comparisons=" + std::to_string(inverse_checked) +
           " cocycle comparisons=" + std::to_string(cocycle_checked));
  return rep;
}

}  // namespace atlaskit
