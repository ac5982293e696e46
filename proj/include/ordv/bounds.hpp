// Topological lower bounds and consistency rules derived from torsion
// orders. The checkers are one-sided: they certify an obstruction, never the
// existence of a cobordism. Every reported inequality carries the rule it
// was instantiated from.
#pragma once

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ordv/bigraded.hpp"
#include "ordv/homology.hpp"
#include "ordv/knots.hpp"

namespace ordv {

// Critical point counts of a knot cobordism. When the saddle count is
// supplied it must satisfy 2g = b - m - M.
struct CobordismData {
  int births = 0;                // m, local minima
  std::optional<int> saddles;    // b
  int deaths = 0;                // M, local maxima
  int genus = 0;                 // g
};

struct SurfaceNorm {
  int value = 0;                       // max{m, M} + 2g
  std::optional<int> via_saddles;      // max{b-m, b-M}, when b is supplied
};

inline SurfaceNorm surface_norm(const CobordismData& d) {
  if (d.births < 0 || d.deaths < 0 || d.genus < 0 ||
      (d.saddles && *d.saddles < 0))
    throw std::invalid_argument("cobordism data must be non-negative");
  SurfaceNorm out;
  out.value = std::max(d.births, d.deaths) + 2 * d.genus;
  if (d.saddles) {
    int b = *d.saddles;
    if (2 * d.genus != b - d.births - d.deaths) {
      std::ostringstream ss;
      ss << "Euler inconsistency: 2g != b - m - M (" << 2 * d.genus
         << " != " << b << " - " << d.births << " - " << d.deaths << ")";
      throw std::invalid_argument(ss.str());
    }
    out.via_saddles = std::max(b - d.births, b - d.deaths);
  }
  return out;
}

struct CheckResult {
  bool consistent = true;
  std::string detail;  // the instantiated inequality
};

// Ord_v(K0) <= max{M, Ord_v(K1)} + 2g(S)
inline CheckResult cobordism_consistency(int ord0, int ord1, int maxima,
                                         int genus) {
  if (ord0 < 0 || ord1 < 0 || maxima < 0 || genus < 0)
    throw std::invalid_argument("inputs must be non-negative");
  int rhs = std::max(maxima, ord1) + 2 * genus;
  std::ostringstream ss;
  ss << "Ord_v(K0) <= max{M, Ord_v(K1)} + 2g: " << ord0 << " <= max{" << maxima
     << ", " << ord1 << "} + " << 2 * genus << " = " << rhs;
  return {ord0 <= rhs, ss.str()};
}

// Same rule for chain torsion orders, applied to sandwich intervals. The
// check obstructs only when the interval lower bound for K0 already exceeds
// the best case allowed by the interval upper bound for K1; with an unknown
// upper bound nothing can be ruled out.
inline CheckResult cobordism_consistency_chain(const ChainOrderInterval& k0,
                                               const ChainOrderInterval& k1,
                                               int maxima, int genus) {
  if (maxima < 0 || genus < 0)
    throw std::invalid_argument("inputs must be non-negative");
  std::ostringstream ss;
  ss << "ChainOrd(K0) <= max{M, ChainOrd(K1)} + 2g with ChainOrd(K0) >= "
     << k0.lo << ", ChainOrd(K1) <= "
     << (k1.hi ? std::to_string(*k1.hi) : std::string("unknown"));
  if (!k1.hi) return {true, ss.str()};
  int rhs = std::max(maxima, *k1.hi) + 2 * genus;
  ss << ": " << k0.lo << " <= max{" << maxima << ", " << *k1.hi << "} + "
     << 2 * genus << " = " << rhs;
  return {k0.lo <= rhs, ss.str()};
}

// Either b <= Ord_v(K0) = Ord_v(K1), or Ord_v(K0) <= Ord_v(K1) <= b.
inline CheckResult ribbon_concordance_check(int ord0, int ord1, int saddles) {
  if (ord0 < 0 || ord1 < 0 || saddles < 0)
    throw std::invalid_argument("inputs must be non-negative");
  bool first = saddles <= ord0 && ord0 == ord1;
  bool second = ord0 <= ord1 && ord1 <= saddles;
  std::ostringstream ss;
  ss << "b <= Ord_v(K0) = Ord_v(K1) or Ord_v(K0) <= Ord_v(K1) <= b "
     << "with Ord_v(K0) = " << ord0 << ", Ord_v(K1) = " << ord1
     << ", b = " << saddles;
  return {first || second, ss.str()};
}

// Ord_v(K0) - Ord_v(K1) <= 2g for a ribbon cobordism of genus g.
inline CheckResult ribbon_cobordism_check(int ord0, int ord1, int genus) {
  if (ord0 < 0 || ord1 < 0 || genus < 0)
    throw std::invalid_argument("inputs must be non-negative");
  std::ostringstream ss;
  ss << "Ord_v(K0) - Ord_v(K1) <= 2g: " << ord0 << " - " << ord1
     << " <= " << 2 * genus;
  return {ord0 - ord1 <= 2 * genus, ss.str()};
}

// --- distances ---------------------------------------------------------------

inline int ord_v_of(const KnotExpr& e) {
  return ord_v(decompose_graded(realize_graded(e)));
}

// |Ord_v(K0) - Ord_v(K1)|: lower bound for the refined cobordism distance
// and for the number of oriented band moves between the knots.
inline int refined_distance_lower(const KnotExpr& e1, const KnotExpr& e2) {
  return std::abs(ord_v_of(e1) - ord_v_of(e2));
}

// Torsion distance of the two decompositions; lower bound for the ribbon
// distance. nullopt renders as infinity (free ranks differ).
inline std::optional<int> ribbon_distance_lower(const KnotExpr& e1,
                                                const KnotExpr& e2,
                                                bool graded = false) {
  return torsion_distance(decompose_graded(realize_graded(e1)),
                          decompose_graded(realize_graded(e2)), graded);
}

// --- bound report ------------------------------------------------------------

struct BoundEntry {
  std::string quantity;        // e.g. "bridge index br(K)"
  int lower_bound = 0;
  std::string rule;            // the inequality the bound comes from
  std::optional<int> known;    // known exact value (torus closed forms)
  bool sharp = false;          // lower bound meets the known value
};

struct BoundReport {
  std::string expression;
  ModuleDecomp decomp;
  int ord = 0;
  int dt_unknot = 0;
  std::optional<int> lspace_n_alias;  // N(K) = Ord_v(K) for L-space leaves
  std::vector<BoundEntry> entries;
  std::vector<std::string> notes;     // instantiated known-value chains
  std::optional<ChainOrderInterval> chain;
  std::vector<BoundEntry> chain_entries;
};

namespace detail {

inline std::optional<std::pair<int, int>> plain_torus_params(
    const KnotExpr& e) {
  bool mirrored = false;
  return torus_params(e, mirrored);
}

}  // namespace detail

inline BoundReport bound_report(const KnotExpr& e, bool with_bigraded = false) {
  BoundReport r;
  r.expression = to_string(e);
  r.decomp = decompose_graded(realize_graded(e));
  r.ord = ord_v(r.decomp);
  ModuleDecomp unknot_decomp{1, {}};
  r.dt_unknot = torsion_distance(r.decomp, unknot_decomp).value_or(0);

  auto torus = detail::plain_torus_params(e);
  std::optional<int> known_bridge, known_ulb;
  if (torus) {
    known_bridge = std::min(torus->first, torus->second);
    known_ulb = (torus->first - 1) * (torus->second - 1);
  }
  auto pair_staircase = detail::mirror_pair_staircase(e);
  std::optional<int> known_fusion_upper;
  if (pair_staircase) known_fusion_upper = pair_staircase->max_gap();

  r.entries.push_back({"bridge index br(K)", r.ord + 1,
                       "Ord_v(K) <= br(K) - 1", known_bridge,
                       known_bridge && r.ord + 1 == *known_bridge});
  r.entries.push_back({"fusion number Fus(K), K ribbon", r.ord,
                       "Ord_v(K) <= Fus(K)", known_fusion_upper,
                       known_fusion_upper && r.ord == *known_fusion_upper});
  r.entries.push_back({"band-unlinking number ul_b(K)", r.ord,
                       "Ord_v(K) <= ul_b(K)", known_ulb,
                       known_ulb && r.ord == *known_ulb});
  r.entries.push_back({"slice-disk local minima", r.ord + 1,
                       "Ord_v(K) <= m - 1", std::nullopt, false});
  r.entries.push_back({"ribbon distance d_r(K, U)", r.dt_unknot,
                       "d_t(K, K') <= d_r(K, K')", std::nullopt, false});

  if (torus) {
    int p = torus->first, q = torus->second;
    int g = (p - 1) * (q - 1) / 2;
    std::ostringstream ss;
    ss << "torus closed forms: br = min{p,q} = " << std::min(p, q)
       << ", ul_b = (p-1)(q-1) = " << (p - 1) * (q - 1)
       << ", g3 = g4 = (p-1)(q-1)/2 = " << g;
    r.notes.push_back(ss.str());
    std::ostringstream chain;
    chain << "2*g4 <= 2*g_r <= ul_b <= u_b <= 2*g3: " << 2 * g
          << " <= 2*g_r <= " << (p - 1) * (q - 1) << " <= u_b <= " << 2 * g;
    r.notes.push_back(chain.str());
    r.lspace_n_alias = r.ord;  // N(K) = Ord_v(K) for L-space knots
  }
  if (const auto* l = std::get_if<KnotExpr::LSpace>(&e.node)) {
    (void)l;
    r.lspace_n_alias = r.ord;
  }
  if (pair_staircase) {
    std::ostringstream ss;
    ss << "K # m(K) closed form: Fus = br(K) - 1 = "
       << *known_fusion_upper;
    r.notes.push_back(ss.str());
  }

  if (with_bigraded) {
    r.chain = chain_torsion_interval(e);
    r.chain_entries.push_back({"band-unlinking number ul_b(K)", r.chain->lo,
                               "ChainOrd_{u,v}(K) <= ul_b(K)", std::nullopt,
                               false});
    r.chain_entries.push_back({"fusion number Fus(K), K ribbon", r.chain->lo,
                               "ChainOrd_{u,v}(K) <= Fus(K)", std::nullopt,
                               false});
  }
  return r;
}

// Conditional rule: if K is concordant to T(p,q), then br(K) >= br(T(p,q)).
inline CheckResult torus_concordance_bridge_bound(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("p,q must be positive");
  std::ostringstream ss;
  ss << "if K is concordant to T(" << p << "," << q
     << ") then br(K) >= br(T(p,q)) = min{p,q} = " << std::min(p, q);
  return {true, ss.str()};
}

}  // namespace ordv
