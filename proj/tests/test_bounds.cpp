#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "ordv/bounds.hpp"

using namespace ordv;

namespace {

const BoundEntry& entry_for(const BoundReport& r, const std::string& prefix) {
  for (const auto& e : r.entries)
    if (e.quantity.starts_with(prefix)) return e;
  FAIL("no bound entry for " + prefix);
  static BoundEntry dummy;
  return dummy;
}

}  // namespace

TEST_CASE("bound_report examples") {
  SECTION("T(7,9): bridge bound is sharp") {
    BoundReport r = bound_report(*parse_knot_expr("T(7,9)"));
    REQUIRE(r.ord == 6);
    const auto& bridge = entry_for(r, "bridge index");
    REQUIRE(bridge.lower_bound == 7);
    REQUIRE(bridge.known == 7);
    REQUIRE(bridge.sharp);
    REQUIRE(r.lspace_n_alias == 6);
  }
  SECTION("T(5,7) # m(T(5,7)): fusion bound is sharp") {
    BoundReport r = bound_report(*parse_knot_expr("T(5,7) # m(T(5,7))"));
    REQUIRE(r.ord == 4);
    const auto& fusion = entry_for(r, "fusion number");
    REQUIRE(fusion.lower_bound == 4);
    REQUIRE(fusion.known == 4);
    REQUIRE(fusion.sharp);
  }
  SECTION("unknot: all lower bounds trivial") {
    BoundReport r = bound_report(*parse_knot_expr("U"));
    REQUIRE(r.ord == 0);
    REQUIRE(entry_for(r, "bridge index").lower_bound == 1);
    REQUIRE(entry_for(r, "fusion number").lower_bound == 0);
    REQUIRE(entry_for(r, "band-unlinking").lower_bound == 0);
    REQUIRE(entry_for(r, "slice-disk").lower_bound == 1);
    REQUIRE(entry_for(r, "ribbon distance").lower_bound == 0);
  }
  SECTION("band-unlinking bound is strictly below ul_b for p,q >= 3") {
    for (auto [p, q] :
         std::vector<std::pair<int, int>>{{3, 4}, {3, 5}, {4, 5}}) {
      BoundReport r = bound_report(
          *parse_knot_expr("T(" + std::to_string(p) + "," + std::to_string(q) + ")"));
      const auto& ulb = entry_for(r, "band-unlinking");
      REQUIRE(ulb.known == (p - 1) * (q - 1));
      REQUIRE(ulb.lower_bound < *ulb.known);
      REQUIRE(!ulb.sharp);
    }
  }
  SECTION("chain entries appear with --bigraded") {
    BoundReport r = bound_report(*parse_knot_expr("T(2,3)"), true);
    REQUIRE(r.chain.has_value());
    REQUIRE(r.chain->lo == 1);
    REQUIRE(r.chain_entries.size() == 2);
    REQUIRE(r.chain_entries[0].lower_bound == 1);
  }
}

TEST_CASE("refined_distance_lower examples") {
  REQUIRE(refined_distance_lower(*parse_knot_expr("T(2,3)"),
                                 *parse_knot_expr("T(4,5)")) == 2);
  REQUIRE(refined_distance_lower(*parse_knot_expr("T(3,4)"),
                                 *parse_knot_expr("T(3,4)")) == 0);
  REQUIRE(refined_distance_lower(*parse_knot_expr("T(7,9)"),
                                 *parse_knot_expr("U")) == 6);
}

TEST_CASE("ribbon_distance_lower examples") {
  REQUIRE(ribbon_distance_lower(*parse_knot_expr("T(3,5) # m(T(3,5))"),
                                *parse_knot_expr("U")) == 2);
  REQUIRE(ribbon_distance_lower(*parse_knot_expr("T(4,5)"),
                                *parse_knot_expr("T(4,5)")) == 0);
  REQUIRE(ribbon_distance_lower(*parse_knot_expr("T(2,3)"),
                                *parse_knot_expr("U")) == 1);
}

TEST_CASE("cobordism_consistency") {
  REQUIRE(cobordism_consistency(2, 0, 1, 1).consistent);
  REQUIRE(!cobordism_consistency(5, 0, 1, 0).consistent);
  REQUIRE(cobordism_consistency(0, 4, 0, 0).consistent);
  REQUIRE_THROWS_AS(cobordism_consistency(-1, 0, 0, 0),
                    std::invalid_argument);
  SECTION("monotone in M and g") {
    for (int ord0 = 0; ord0 <= 5; ++ord0)
      for (int ord1 = 0; ord1 <= 5; ++ord1)
        for (int M = 0; M <= 5; ++M)
          for (int g = 0; g <= 3; ++g) {
            bool base = cobordism_consistency(ord0, ord1, M, g).consistent;
            if (base) {
              REQUIRE(cobordism_consistency(ord0, ord1, M + 1, g).consistent);
              REQUIRE(cobordism_consistency(ord0, ord1, M, g + 1).consistent);
            }
          }
  }
}

TEST_CASE("cobordism_consistency_chain") {
  ChainOrderInterval lo5{5, 5, true};
  ChainOrderInterval lo0{0, 0, true};
  ChainOrderInterval unknown{3, std::nullopt, false};
  REQUIRE(!cobordism_consistency_chain(lo5, lo0, 1, 0).consistent);
  REQUIRE(cobordism_consistency_chain(lo5, lo0, 1, 2).consistent);
  // unknown upper bound on K1 can never obstruct
  REQUIRE(cobordism_consistency_chain(lo5, unknown, 0, 0).consistent);
}

TEST_CASE("ribbon_concordance_check") {
  REQUIRE(ribbon_concordance_check(1, 3, 5).consistent);   // 1 <= 3 <= 5
  REQUIRE(ribbon_concordance_check(2, 2, 1).consistent);   // b <= ord0 = ord1
  REQUIRE(!ribbon_concordance_check(3, 1, 10).consistent); // neither branch
  REQUIRE_THROWS_AS(ribbon_concordance_check(0, 0, -2),
                    std::invalid_argument);
}

TEST_CASE("ribbon_cobordism_check") {
  REQUIRE(ribbon_cobordism_check(3, 1, 1).consistent);   // 3 - 1 <= 2
  REQUIRE(!ribbon_cobordism_check(4, 1, 1).consistent);  // 3 > 2
  REQUIRE(ribbon_cobordism_check(0, 5, 0).consistent);
}

TEST_CASE("surface_norm") {
  SECTION("m=2, b=7, M=3, g=1 -> 5") {
    SurfaceNorm n = surface_norm({2, 7, 3, 1});
    REQUIRE(n.value == 5);
    REQUIRE(n.via_saddles == 5);
  }
  SECTION("identity cobordism") {
    SurfaceNorm n = surface_norm({0, 0, 0, 0});
    REQUIRE(n.value == 0);
    REQUIRE(n.via_saddles == 0);
  }
  SECTION("single birth + saddle") {
    SurfaceNorm n = surface_norm({1, 1, 0, 0});
    REQUIRE(n.value == 1);
    REQUIRE(n.via_saddles == 1);
  }
  SECTION("saddles optional") {
    SurfaceNorm n = surface_norm({2, std::nullopt, 3, 1});
    REQUIRE(n.value == 5);
    REQUIRE(!n.via_saddles.has_value());
  }
  SECTION("Euler inconsistency is an error naming the identity") {
    REQUIRE_THROWS_WITH(surface_norm({1, 1, 1, 1}),
                        Catch::Matchers::ContainsSubstring("2g != b - m - M"));
  }
  SECTION("negative inputs are errors") {
    REQUIRE_THROWS_AS(surface_norm({-1, std::nullopt, 0, 0}),
                      std::invalid_argument);
  }
}

TEST_CASE("max-sum inequality behind the metric triangle") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(0, 100);
  for (int trial = 0; trial < 2000; ++trial) {
    int a = d(rng), a2 = d(rng), b = d(rng), b2 = d(rng);
    REQUIRE(std::max(a + a2, b + b2) <= std::max(a, b) + std::max(a2, b2));
  }
}

TEST_CASE("torus concordance rule") {
  CheckResult r = torus_concordance_bridge_bound(5, 7);
  REQUIRE(r.consistent);
  REQUIRE(r.detail.find("br(K) >= br(T(p,q)) = min{p,q} = 5") !=
          std::string::npos);
}
