#include <catch2/catch_amalgamated.hpp>

#include "ordv/codec.hpp"
#include "ordv/complex.hpp"
#include "ordv/knots.hpp"

using namespace ordv;

namespace {

BigradedComplex trefoil_bigraded() {
  return realize_bigraded(*parse_knot_expr("T(2,3)"));
}

// Structural equality ignoring generator names: same gradings and the same
// differential under the positional correspondence.
bool same_shape(const GradedComplex& a, const GradedComplex& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (a.generator(i).alexander != b.generator(i).alexander) return false;
    if (a.arrows(i) != b.arrows(i)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("validate accepts the bigraded trefoil staircase") {
  BigradedComplex c = trefoil_bigraded();
  REQUIRE(c.size() == 3);
  REQUIRE(!validate(c).has_value());
}

TEST_CASE("validate accepts a single generator with no arrows") {
  GradedComplex c;
  c.add_generator("a", 0);
  REQUIRE(!validate(c).has_value());
}

TEST_CASE("validate reports d2 != 0 with a witness pair") {
  GradedComplex c;
  c.add_generator("a", 2);
  c.add_generator("b", 1);
  c.add_generator("c", 0);
  c.toggle_arrow(0, 1, 1);  // da = v b
  c.toggle_arrow(1, 2, 1);  // db = v c
  auto violation = validate(c);
  REQUIRE(violation.has_value());
  REQUIRE(violation->message.find("d2 != 0") != std::string::npos);
  REQUIRE(violation->message.find("a") != std::string::npos);
  REQUIRE(violation->message.find("c") != std::string::npos);
}

TEST_CASE("validate reports inhomogeneous arrows") {
  SECTION("graded Alexander") {
    GradedComplex c;
    c.add_generator("a", 0);
    c.add_generator("b", 0);
    c.toggle_arrow(0, 1, 2);  // would need A(b) = -2
    auto violation = validate(c);
    REQUIRE(violation.has_value());
    REQUIRE(violation->message.find("inhomogeneous") != std::string::npos);
  }
  SECTION("graded Maslov") {
    GradedComplex c;
    c.add_generator("a", 1, 0);
    c.add_generator("b", 0, 5);
    c.toggle_arrow(0, 1, 1);
    auto violation = validate(c);
    REQUIRE(violation.has_value());
    REQUIRE(violation->message.find("Maslov") != std::string::npos);
  }
  SECTION("bigraded") {
    BigradedComplex c;
    c.add_generator("a", 0, 0);
    c.add_generator("b", 0, 0);
    c.toggle_arrow(0, 1, MonoUV{1, 0});
    auto violation = validate(c);
    REQUIRE(violation.has_value());
    REQUIRE(violation->message.find("inhomogeneous") != std::string::npos);
  }
}

TEST_CASE("tensor with the unknot complex is the identity") {
  GradedComplex u = realize_graded(*parse_knot_expr("U"));
  GradedComplex c = realize_graded(*parse_knot_expr("T(3,4)"));
  REQUIRE(same_shape(tensor(u, c), c));
  REQUIRE(same_shape(tensor(c, u), c));
}

TEST_CASE("tensor of two trefoil staircases") {
  GradedComplex c = realize_graded(*parse_knot_expr("T(2,3)"));
  GradedComplex t = tensor(c, c);
  REQUIRE(t.size() == 9);
  REQUIRE(!validate(t).has_value());
}

TEST_CASE("tensor is associative up to renaming") {
  GradedComplex a = realize_graded(*parse_knot_expr("T(2,3)"));
  GradedComplex b = realize_graded(*parse_knot_expr("T(2,5)"));
  GradedComplex c = dual(a);
  REQUIRE(same_shape(tensor(tensor(a, b), c), tensor(a, tensor(b, c))));
}

TEST_CASE("dual is an involution and the unknot is self-dual") {
  GradedComplex u = realize_graded(*parse_knot_expr("U"));
  REQUIRE(dual(u) == u);
  GradedComplex c = realize_graded(*parse_knot_expr("T(3,4)"));
  REQUIRE(dual(dual(c)) == c);
  BigradedComplex bc = realize_bigraded(*parse_knot_expr("T(3,4)"));
  REQUIRE(dual(dual(bc)) == bc);
}

TEST_CASE("dual of the bigraded trefoil reverses the staircase arrows") {
  BigradedComplex d = dual(trefoil_bigraded());
  REQUIRE(!validate(d).has_value());
  // dual arrows: x0 -> x1 weighted u, x2 -> x1 weighted v
  int x0 = *d.find("x0");
  int x1 = *d.find("x1");
  int x2 = *d.find("x2");
  REQUIRE(d.arrows(x0).size() == 1);
  REQUIRE(d.arrows(x0)[0].target == x1);
  REQUIRE(d.arrows(x0)[0].mono == MonoUV{1, 0});
  REQUIRE(d.arrows(x2).size() == 1);
  REQUIRE(d.arrows(x2)[0].target == x1);
  REQUIRE(d.arrows(x2)[0].mono == MonoUV{0, 1});
  REQUIRE(d.arrows(x1).empty());
}

TEST_CASE("set_u_zero collapses the trefoil staircase") {
  GradedComplex g = set_u_zero(trefoil_bigraded());
  REQUIRE(!validate(g).has_value());
  std::size_t arrows = 0;
  for (int i = 0; i < g.size(); ++i) arrows += g.arrows(i).size();
  REQUIRE(arrows == 1);
  int x1 = *g.find("x1");
  REQUIRE(g.arrows(x1).size() == 1);
  REQUIRE(g.arrows(x1)[0].v == 1);
  REQUIRE(g.generator(g.arrows(x1)[0].target).name == "x2");
}

TEST_CASE("set_u_zero drops a complex with only u-arrows to zero differential") {
  BigradedComplex c;
  c.add_generator("a", 1, -1);
  c.add_generator("b", 2, -2);  // arrow a -> b weighted u: grU(b)=grU(a)+2-1
  c.toggle_arrow(0, 1, MonoUV{1, 0});
  REQUIRE(!validate(c).has_value());
  GradedComplex g = set_u_zero(c);
  for (int i = 0; i < g.size(); ++i) REQUIRE(g.arrows(i).empty());
}

TEST_CASE("set_u_zero of T(5,6) keeps the even gaps") {
  BigradedComplex c = realize_bigraded(*parse_knot_expr("T(5,6)"));
  GradedComplex g = set_u_zero(c);
  REQUIRE(!validate(g).has_value());
  // surviving arrows from the odd generators carry v^{d_even}, d_even = 4,3,2,1
  std::vector<int> exps;
  for (int i = 0; i < g.size(); ++i)
    for (const auto& a : g.arrows(i)) exps.push_back(a.v);
  REQUIRE(exps == std::vector<int>{4, 3, 2, 1});
}

TEST_CASE("codec round trips") {
  SECTION("unknot is byte-identical") {
    GradedComplex u = realize_graded(*parse_knot_expr("U"));
    std::string doc = encode(u);
    GradedComplex back = decode_graded(doc);
    REQUIRE(encode(back) == doc);
  }
  SECTION("graded T(3,4)") {
    GradedComplex c = realize_graded(*parse_knot_expr("T(3,4)"));
    std::string doc = encode(c);
    GradedComplex back = decode_graded(doc);
    REQUIRE(encode(back) == doc);
    REQUIRE(back.size() == c.size());
  }
  SECTION("bigraded T(3,4) # m(T(2,3))") {
    BigradedComplex c =
        realize_bigraded(*parse_knot_expr("T(3,4) # m(T(2,3))"));
    std::string doc = encode(c);
    BigradedComplex back = decode_bigraded(doc);
    REQUIRE(encode(back) == doc);
  }
}

TEST_CASE("decode rejects malformed documents with locations") {
  SECTION("unknown generator reference") {
    std::string doc = R"({
      "kind": "graded",
      "generators": [{"name": "a", "alexander": 0}],
      "arrows": [{"from": "a", "to": "x9", "v": 0}]
    })";
    try {
      decode_graded(doc);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      REQUIRE(std::string(e.what()).find("x9") != std::string::npos);
      REQUIRE(std::string(e.what()).find("arrows[0]") != std::string::npos);
    }
  }
  SECTION("negative exponent") {
    std::string doc = R"({
      "kind": "graded",
      "generators": [{"name": "a", "alexander": 0}, {"name": "b", "alexander": 2}],
      "arrows": [{"from": "b", "to": "a", "v": -2}]
    })";
    REQUIRE_THROWS_WITH(decode_graded(doc),
                        Catch::Matchers::ContainsSubstring("negative exponent"));
  }
  SECTION("unknown field") {
    std::string doc = R"({
      "kind": "graded",
      "generators": [{"name": "a", "alexander": 0, "bogus": 1}],
      "arrows": []
    })";
    REQUIRE_THROWS_WITH(decode_graded(doc),
                        Catch::Matchers::ContainsSubstring("bogus"));
  }
  SECTION("u exponent not allowed in graded documents") {
    std::string doc = R"({
      "kind": "graded",
      "generators": [{"name": "a", "alexander": 0}],
      "arrows": [{"from": "a", "to": "a", "u": 1, "v": 0}]
    })";
    REQUIRE_THROWS_WITH(decode_graded(doc),
                        Catch::Matchers::ContainsSubstring("unknown field 'u'"));
  }
  SECTION("invalid complexes are rejected at decode time") {
    std::string doc = R"({
      "kind": "graded",
      "generators": [{"name": "a", "alexander": 0}, {"name": "b", "alexander": 0}],
      "arrows": [{"from": "a", "to": "b", "v": 2}]
    })";
    REQUIRE_THROWS_WITH(decode_graded(doc),
                        Catch::Matchers::ContainsSubstring("inhomogeneous"));
  }
  SECTION("not json") {
    REQUIRE_THROWS_AS(decode_graded("not json at all"), ParseError);
  }
  SECTION("kind mismatch") {
    BigradedComplex c = realize_bigraded(*parse_knot_expr("T(2,3)"));
    REQUIRE_THROWS_WITH(decode_graded(encode(c)),
                        Catch::Matchers::ContainsSubstring("kind mismatch"));
  }
}

TEST_CASE("all realized complexes validate") {
  for (const char* text :
       {"U", "T(2,3)", "T(5,6)", "m(T(3,4))", "T(2,3) # m(T(2,3))",
        "T(2,3) # T(4,5) # m(T(2,5))", "L[3;2;0;-2;-3]"}) {
    auto e = parse_knot_expr(text);
    REQUIRE(!validate(realize_graded(*e)).has_value());
    REQUIRE(!validate(realize_bigraded(*e)).has_value());
  }
}
