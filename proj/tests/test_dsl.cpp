#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace atlaskit;

namespace {

Element fp(const Algebra& A, long long v) { return A.from_integer(v); }

const char* kPlaneKit = R"(# projective plane over F_3
[model]
algebra = Fp:3
dim = 2

[charts]
names = 0, 1, 2

[map.1->0]
where = invertible(u)
expr = (inv(u), inv(u)*v)

[map.2->0]
where = invertible(u)
expr = (inv(u)*v, inv(u))

[map.2->1]
where = invertible(v)
expr = (inv(v)*u, inv(v))
)";

Expr random_expr(std::mt19937_64& rng, int depth, bool allow_inv) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 0: return Expr::variable(std::bernoulli_distribution(0.5)(rng) ? "u" : "v");
    case 1: return Expr::literal(std::uniform_int_distribution<long long>(0, 12)(rng));
    case 2: return Expr::negate(random_expr(rng, depth - 1, allow_inv));
    case 3:
      if (allow_inv) return Expr::inverse(random_expr(rng, depth - 1, allow_inv));
      return Expr::variable("u");
    case 4: return Expr::binary(Expr::Op::add, random_expr(rng, depth - 1, allow_inv), random_expr(rng, depth - 1, allow_inv));
    case 5: return Expr::binary(Expr::Op::sub, random_expr(rng, depth - 1, allow_inv), random_expr(rng, depth - 1, allow_inv));
    default:
      return Expr::binary(Expr::Op::mul, random_expr(rng, depth - 1, allow_inv), random_expr(rng, depth - 1, allow_inv));
  }
}

long reduce_mod(const Rational& r, long p) {
  const long num = static_cast<long>(numerator(r) % p);
  const long den = static_cast<long>(denominator(r) % p);
  oracle::SmallRing R{p, false};
  return R.mod(R.mod(num) * R.inv_field(R.mod(den)));
}

}  // namespace

TEST(Dsl, ParsesTupleMap) {
  const auto m = parse_map("(inv(u), inv(u)*v)");
  ASSERT_EQ(m.arity(), 2u);
  EXPECT_EQ(m.components[0], Expr::inverse(Expr::variable("u")));
  EXPECT_EQ(m.components[1], Expr::binary(Expr::Op::mul, Expr::inverse(Expr::variable("u")), Expr::variable("v")));
  EXPECT_EQ(parse_map("u").arity(), 1u);
}

TEST(Dsl, SyntaxErrorCarriesPosition) {
  try {
    parse_expr("inv(u*");
    FAIL() << "no error";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 7u);
    EXPECT_EQ(std::string(e.what()).rfind("line:1:col:7:", 0), 0u) << e.what();
  }
  EXPECT_THROW(parse_expr("u $ v"), SyntaxError);
  EXPECT_THROW(parse_expr("(u, v"), SyntaxError);
  EXPECT_THROW(parse_expr("u v"), SyntaxError);
  EXPECT_THROW(parse_predicate("maybe(u)"), SyntaxError);
  try {
    parse_expr("u +", 4, 10);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 13u);
  }
}

TEST(Dsl, EvaluatesOverPrimeField) {
  const auto F5 = Algebra::prime_field(5);
  const auto m = parse_map("(inv(u), inv(u)*v)");
  const Point x{fp(F5, 2), fp(F5, 3)};
  EXPECT_EQ(eval_map(m, x, F5), (Point{fp(F5, 3), fp(F5, 4)}));
  const Point zero{fp(F5, 0), fp(F5, 1)};
  try {
    eval_map(m, zero, F5);
    FAIL();
  } catch (const EvalError& e) {
    EXPECT_EQ(e.subexpression(), "inv(u)");
  }
  EXPECT_TRUE(holds(parse_predicate("invertible(u) && eq(v, 3)"), x, F5));
  EXPECT_FALSE(holds(parse_predicate("invertible(u) && eq(v, 2)"), x, F5));
  EXPECT_FALSE(holds(parse_predicate("false"), x, F5));
  EXPECT_FALSE(holds(parse_predicate("nonzero(inv(u))"), zero, F5));
  EXPECT_THROW(eval_expr(parse_expr("x7"), x, F5), InputError);
}

TEST(Dsl, ProductsAssociateLeft) {
  const auto e = parse_expr("a*b*c");
  const auto a = Expr::variable("a"), b = Expr::variable("b"), c = Expr::variable("c");
  EXPECT_EQ(e, Expr::binary(Expr::Op::mul, Expr::binary(Expr::Op::mul, a, b), c));
  EXPECT_EQ(parse_expr("a-b-c"), Expr::binary(Expr::Op::sub, Expr::binary(Expr::Op::sub, a, b), c));
  EXPECT_EQ(parse_expr("a+b*c"), Expr::binary(Expr::Op::add, a, Expr::binary(Expr::Op::mul, b, c)));
}

TEST(Dsl, PrintsMinimalParentheses) {
  EXPECT_EQ(to_string(parse_expr("(a*b)*c")), "a*b*c");
  EXPECT_EQ(to_string(parse_expr("a*(b*c)")), "a*(b*c)");
  EXPECT_EQ(to_string(parse_expr("(u+v)*w")), "(u+v)*w");
  EXPECT_EQ(to_string(parse_expr("(u-v)-w")), "u-v-w");
  EXPECT_EQ(to_string(parse_expr("u-(v-w)")), "u-(v-w)");
  EXPECT_EQ(to_string(parse_expr("-(u*v)")), "-(u*v)");
  EXPECT_EQ(to_string(parse_expr("((inv((u))))")), "inv(u)");
  EXPECT_EQ(to_string(parse_map("(inv(v)*u, inv(v))")), "(inv(v)*u, inv(v))");
  EXPECT_EQ(to_string(parse_predicate("invertible(u)&&eq(v,1)")), "invertible(u) && eq(v, 1)");
}

TEST(Dsl, RandomExpressionsRoundTrip) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 500; ++k) {
    const auto e = random_expr(rng, 5, true);
    const auto text = to_string(e);
    ASSERT_EQ(parse_expr(text), e) << text;
  }
}

TEST(Dsl, PrimeFieldEvaluationIsReductionOfRationalEvaluation) {
  std::mt19937_64 rng(23);
  const auto Q = Algebra::rationals();
  int compared = 0;
  for (long p : {5L, 7L, 11L}) {
    const auto F = Algebra::prime_field(static_cast<std::uint64_t>(p));
    std::uniform_int_distribution<long long> d(-30, 30);
    for (int k = 0; k < 300; ++k) {
      const auto e = random_expr(rng, 4, true);
      const long long u = d(rng), v = d(rng);
      std::optional<Element> in_f;
      try {
        in_f = eval_expr(e, Point{fp(F, u), fp(F, v)}, F);
      } catch (const EvalError&) {
        continue;
      }
      const auto in_q = eval_expr(e, Point{Q.from_integer(u), Q.from_integer(v)}, Q);
      ASSERT_EQ(oracle::to_long(in_f->c[0]), reduce_mod(in_q.c[0], p)) << to_string(e) << " u=" << u << " v=" << v;
      ++compared;
    }
  }
  EXPECT_GT(compared, 500);
}

TEST(Dsl, GroupingIsRespectedInOctonions) {
  const auto O = Algebra::parse("cd:Q:3");
  const auto left = parse_expr("x0*x1*x2"), right = parse_expr("x0*(x1*x2)");
  std::mt19937_64 rng(4);
  bool witness = false;
  for (int k = 0; k < 50 && !witness; ++k) {
    const Point x{O.random_element(rng), O.random_element(rng), O.random_element(rng)};
    const auto l = eval_expr(left, x, O), r = eval_expr(right, x, O);
    EXPECT_EQ(l, O.mul(O.mul(x[0], x[1]), x[2]));
    EXPECT_EQ(r, O.mul(x[0], O.mul(x[1], x[2])));
    witness = l != r;
  }
  EXPECT_TRUE(witness);
}

TEST(GluingFile, ParsesPlaneKit) {
  const auto g = parse_gluing_file(kPlaneKit);
  EXPECT_EQ(g.algebra, "Fp:3");
  EXPECT_EQ(g.dim, 2u);
  EXPECT_EQ(g.mode, GluingMode::cocycle);
  ASSERT_EQ(g.charts.size(), 3u);
  ASSERT_EQ(g.maps.size(), 3u);
  ASSERT_NE(g.map("2", "0"), nullptr);
  EXPECT_EQ(to_string(g.map("2", "0")->expr), "(inv(u)*v, inv(u))");
  EXPECT_EQ(g, projective_plane_kit(Algebra::prime_field(3)));
}

TEST(GluingFile, SingleChartWithTrivialDomain) {
  const auto g = parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 1\n[charts]\nnames = e\n[domain.e]\nwhere = true\n");
  ASSERT_EQ(g.charts.size(), 1u);
  EXPECT_EQ(g.charts[0].domain, Predicate::always());
  EXPECT_TRUE(g.maps.empty());
  EXPECT_EQ(count_points(glue(build_gluing_data(g))), 2u);
}

TEST(GluingFile, UndeclaredChartIsAResolutionError) {
  std::string text = kPlaneKit;
  text += "\n[map.2->3]\nexpr = (u, v)\n";
  try {
    parse_gluing_file(text);
    FAIL();
  } catch (const ResolutionError& e) {
    EXPECT_EQ(e.column(), 9u);
    EXPECT_NE(std::string(e.what()).find("undeclared chart '3'"), std::string::npos);
  }
}

TEST(GluingFile, RejectsMalformedInput) {
  EXPECT_THROW(parse_gluing_file("[charts]\nnames = a\n"), SyntaxError);
  EXPECT_THROW(parse_gluing_file("[model]\nalgebra = Fp:4\ndim = 1\n[charts]\nnames = a\n"), SyntaxError);
  EXPECT_THROW(parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 0\n[charts]\nnames = a\n"), SyntaxError);
  EXPECT_THROW(parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 1\ncolour = red\n[charts]\nnames = a\n"), SyntaxError);
  EXPECT_THROW(parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 1\n[charts]\nnames = a, a\n"), SyntaxError);
  EXPECT_THROW(parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 1\n[charts]\nnames = a\n[map.a->a]\nexpr = (u, u)\n"),
               SyntaxError);
  EXPECT_THROW(parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 1\n[charts]\nnames = a\n[map.a->a]\nexpr = v\n"),
               SyntaxError);
  EXPECT_THROW(
      parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 1\nmode = epos\n[charts]\nnames = a\n[map.a->a]\nwhere = true\nexpr = u\n"),
      SyntaxError);
  EXPECT_THROW(parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 1\n[charts]\nnames = a\n[epos]\nequiv = a ~ a\n"),
               SyntaxError);
  EXPECT_THROW(parse_gluing_file("[model]\nalgebra = Fp:2\ndim = 1\n[model]\n"), SyntaxError);
}

TEST(GluingFile, SerializeRoundTripsCatalogKits) {
  for (const auto& e : catalog_entries()) {
    auto k = catalog_kit(e.name);
    if (!k) continue;
    EXPECT_EQ(parse_gluing_file(serialize(*k)), *k) << e.name;
  }
  for (std::uint64_t p : {2u, 7u}) {
    EXPECT_EQ(parse_gluing_file(serialize(projective_space_kit(p, 3))), projective_space_kit(p, 3));
  }
}

TEST(GluingFile, EmptyDomainAndAllOperatorsRoundTrip) {
  GluingFile g;
  g.algebra = "Fp:5";
  g.dim = 2;
  g.charts = {{"a", Predicate::always()}, {"z", Predicate::never()}};
  g.maps.push_back({"a", "a", parse_predicate("nonzero(u-v) && eq(u*v, 1) && invertible(-u+2)"),
                    parse_map("(-(u*inv(v-1)), u-(v-u*3))")});
  EXPECT_EQ(parse_gluing_file(serialize(g)), g);
  const auto data = build_gluing_data(parse_gluing_file("[model]\nalgebra = Fp:3\ndim = 1\n[charts]\nnames = a, z\n"
                                                        "[domain.z]\nwhere = false\n"));
  EXPECT_EQ(data.size(), 1u);
  EXPECT_FALSE(data.epos.indices.find("z|{z}").has_value());
}

TEST(GluingFile, RandomMapsRoundTrip) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 100; ++k) {
    GluingFile g;
    g.algebra = "Fp:7";
    g.dim = 2;
    g.charts = {{"p", Predicate::always()}, {"q", Predicate::always()}};
    g.maps.push_back({"p", "q", std::nullopt, MapSpec{{random_expr(rng, 4, true), random_expr(rng, 4, true)}}});
    ASSERT_EQ(parse_gluing_file(serialize(g)), g) << serialize(g);
  }
}

TEST(MorphismFile, RoundTrip) {
  const char* text = "[morphism]\nsource = kp1_f3\ntarget = kp2_f3\n\n[mor.0->0]\nexpr = (u, 0)\n\n[mor.1->1]\nexpr = (u, 0)\n";
  const auto m = parse_morphism_file(text);
  EXPECT_EQ(m.source, "kp1_f3");
  EXPECT_EQ(m.target, "kp2_f3");
  ASSERT_EQ(m.components.size(), 2u);
  EXPECT_EQ(m.components[1].from, "1");
  EXPECT_EQ(serialize(m), text);
  EXPECT_EQ(parse_morphism_file(serialize(m)), m);
  EXPECT_THROW(parse_morphism_file("[mor.0->0]\nexpr = u\n"), SyntaxError);
}
