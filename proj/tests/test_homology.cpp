#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "ordv/bounds.hpp"
#include "ordv/homology.hpp"
#include "ordv/knots.hpp"

using namespace ordv;

namespace {

ModuleDecomp decomp_of(const char* text) {
  return decompose_graded(realize_graded(*parse_knot_expr(text)));
}

std::vector<int> orders(const ModuleDecomp& m) {
  std::vector<int> out;
  for (const auto& t : m.torsion) out.push_back(t.order);
  return out;
}

}  // namespace

TEST_CASE("decompose_graded examples") {
  SECTION("trefoil: F2[v] + F2[v]/(v)") {
    ModuleDecomp m = decomp_of("T(2,3)");
    REQUIRE(m.free_rank == 1);
    REQUIRE(orders(m) == std::vector<int>{1});
    REQUIRE(m.torsion[0].alexander == -1);
    REQUIRE(m.to_string() == "F2[v] + F2[v]/(v)");
  }
  SECTION("unknot") {
    ModuleDecomp m = decomp_of("U");
    REQUIRE(m.free_rank == 1);
    REQUIRE(m.torsion.empty());
    REQUIRE(ord_v(m) == 0);
  }
  SECTION("T(5,6): torsion multiset {4,3,2,1}") {
    ModuleDecomp m = decomp_of("T(5,6)");
    REQUIRE(m.free_rank == 1);
    REQUIRE(orders(m) == std::vector<int>{4, 3, 2, 1});
    REQUIRE(ord_v(m) == 4);
  }
  SECTION("empty complex") {
    GradedComplex c;
    ModuleDecomp m = decompose_graded(c);
    REQUIRE(m.free_rank == 0);
    REQUIRE(m.torsion.empty());
  }
  SECTION("invalid complexes are rejected") {
    GradedComplex c;
    c.add_generator("a", 0);
    c.add_generator("b", 0);
    c.toggle_arrow(0, 1, 3);
    REQUIRE_THROWS_AS(decompose_graded(c), std::invalid_argument);
  }
}

TEST_CASE("ord_v examples") {
  REQUIRE(ord_v(decomp_of("T(3,4)")) == 2);
  REQUIRE(ord_v(decomp_of("U")) == 0);
  REQUIRE(ord_v(decomp_of("T(2,3) # T(4,5)")) == 3);
}

TEST_CASE("torsion gradings of the torus staircases") {
  // torsion summand of order d_{2k+2} sits at Alexander alpha_{2k+2}
  StaircaseSpec s = staircase_from_alexander(torus_alexander(5, 6));
  ModuleDecomp m = decomp_of("T(5,6)");
  REQUIRE(m.torsion.size() == 4);
  for (const auto& t : m.torsion) {
    bool found = false;
    for (int k = 0; 2 * k + 2 < static_cast<int>(s.alphas.size()); ++k)
      if (s.gaps[2 * k + 1] == t.order &&
          s.alphas[2 * k + 2] == t.alexander)
        found = true;
    REQUIRE(found);
  }
}

TEST_CASE("torsion_distance examples") {
  SECTION("d_t(T(2,3), U) = 1 = ord_v") {
    auto d = torsion_distance(decomp_of("T(2,3)"), decomp_of("U"));
    REQUIRE(d == 1);
  }
  SECTION("d_t(m, m) = 0") {
    ModuleDecomp m = decomp_of("T(4,5)");
    REQUIRE(torsion_distance(m, m) == 0);
  }
  SECTION("{1,3} vs {3} at equal rank -> 1") {
    ModuleDecomp a{1, {{3, 0}, {1, 0}}};
    ModuleDecomp b{1, {{3, 0}}};
    REQUIRE(torsion_distance(a, b) == 1);
  }
  SECTION("free ranks differ -> infinite") {
    ModuleDecomp a{1, {}};
    ModuleDecomp b{2, {}};
    REQUIRE(!torsion_distance(a, b).has_value());
  }
  SECTION("graded variant distinguishes gradings") {
    ModuleDecomp a{1, {{2, 5}}};
    ModuleDecomp b{1, {{2, 0}}};
    REQUIRE(torsion_distance(a, b, /*graded=*/false) == 0);
    REQUIRE(torsion_distance(a, b, /*graded=*/true) == 2);
  }
}

TEST_CASE("d_t(K, U) equals ord_v(K)") {
  ModuleDecomp unknot = decomp_of("U");
  for (const char* text :
       {"U", "T(2,3)", "T(3,4)", "T(5,6)", "m(T(4,5))",
        "T(2,3) # T(4,5)", "T(3,5) # m(T(3,5))"}) {
    ModuleDecomp m = decomp_of(text);
    REQUIRE(torsion_distance(m, unknot) == ord_v(m));
  }
}

TEST_CASE("Kunneth max rule and mirror invariance on sampled staircases") {
  std::vector<std::pair<int, int>> pairs;
  for (int p = 2; p <= 7; ++p)
    for (int q = p + 1; q <= 7; ++q)
      if (std::gcd(p, q) == 1) pairs.push_back({p, q});
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    auto [p1, q1] = pairs[rng() % pairs.size()];
    auto [p2, q2] = pairs[rng() % pairs.size()];
    GradedComplex a = staircase_graded(
        staircase_from_alexander(torus_alexander(p1, q1)));
    GradedComplex b = staircase_graded(
        staircase_from_alexander(torus_alexander(p2, q2)));
    int oa = ord_v(decompose_graded(a));
    int ob = ord_v(decompose_graded(b));
    REQUIRE(ord_v(decompose_graded(tensor(a, b))) == std::max(oa, ob));
    REQUIRE(ord_v(decompose_graded(dual(a))) == oa);
    REQUIRE(ord_v(decompose_graded(tensor(a, dual(a)))) == oa);
  }
}

TEST_CASE("free rank of knot expression homology is 1") {
  for (const char* text :
       {"U", "T(2,3)", "T(6,7)", "m(T(3,4))", "T(2,3) # m(T(2,3))",
        "T(2,3) # T(4,5) # m(T(2,7))"}) {
    REQUIRE(decomp_of(text).free_rank == 1);
  }
}

TEST_CASE("ord_v(T(p,q)) = min{p,q} - 1 over the sweep") {
  for (int p = 2; p <= 12; ++p)
    for (int q = p + 1; q <= 12; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto e = make_torus(p, q);
      REQUIRE(ord_v_of(*e) == p - 1);
    }
}

TEST_CASE("torsion distance triangle inequality on random decompositions") {
  std::mt19937 rng(77);
  auto random_decomp = [&rng]() {
    ModuleDecomp m{1, {}};
    int k = rng() % 5;
    for (int i = 0; i < k; ++i)
      m.torsion.push_back({1 + static_cast<int>(rng() % 6), 0});
    return m;
  };
  for (int trial = 0; trial < 300; ++trial) {
    ModuleDecomp a = random_decomp(), b = random_decomp(), c = random_decomp();
    auto ab = torsion_distance(a, b);
    auto bc = torsion_distance(b, c);
    auto ac = torsion_distance(a, c);
    REQUIRE(ab.has_value());
    REQUIRE(bc.has_value());
    REQUIRE(ac.has_value());
    REQUIRE(*ac <= *ab + *bc);
    REQUIRE(*ac <= std::max(*ab, *bc));  // ultrametric-style sharpening
  }
}
