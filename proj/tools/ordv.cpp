// ordv — torsion orders of knot Floer complexes and the lower bounds they
// give on bridge index, fusion number, band moves, and ribbon distance.
//
// Exit codes: 0 success/consistent, 1 usage or parse error,
//             2 obstruction or audit failure.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ordv/bounds.hpp"
#include "ordv/table.hpp"

namespace {

constexpr const char* kGrammarHelp =
    "Knot expressions: U, T(p,q), m(E), E # E, L[a0;a1;...], file:PATH.\n"
    "'#' is the connected sum (left-associative), m(...) the mirror.\n"
    "L[...] lists the Alexander exponents of an L-space knot in decreasing\n"
    "order (coefficients alternate +1, -1 starting from +1).";

ordv::KnotExprPtr parse_or_exit(const std::string& text) {
  try {
    return ordv::parse_knot_expr(text);
  } catch (const ordv::ExprParseError& e) {
    std::cerr << "error: " << e.what() << " at position " << e.position
              << "\n  " << text << "\n  " << std::string(e.position, ' ')
              << "^\n";
    std::exit(1);
  }
}

std::string render_optional(const std::optional<int>& v) {
  return v ? std::to_string(*v) : "inf";
}

void print_bound_entry(std::ostream& out, const ordv::BoundEntry& e) {
  out << "  " << e.quantity << " >= " << e.lower_bound << "   [" << e.rule
      << "]";
  if (e.known) {
    out << "  (known: " << *e.known;
    if (e.sharp) out << ", sharp";
    out << ")";
  }
  out << "\n";
}

std::string chain_interval_str(const ordv::ChainOrderInterval& c) {
  std::ostringstream ss;
  ss << "[" << c.lo << ", " << (c.hi ? std::to_string(*c.hi) : "unknown")
     << "]" << (c.exact ? " (exact)" : "");
  return ss.str();
}

int cmd_knot(const std::string& expr_text, bool bigraded, bool graded_distance,
             const std::string& format) {
  auto expr = parse_or_exit(expr_text);
  ordv::BoundReport report;
  try {
    report = ordv::bound_report(*expr, bigraded);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (graded_distance) {
    auto d = ordv::ribbon_distance_lower(*expr, *ordv::make_unknot(),
                                         /*graded=*/true);
    report.dt_unknot = d.value_or(report.dt_unknot);
  }

  if (format == "json") {
    std::ostringstream ss;
    ss << "{\"expression\": \"" << report.expression << "\""
       << ", \"ord_v\": " << report.ord << ", \"d_t_unknot\": "
       << report.dt_unknot << ", \"free_rank\": " << report.decomp.free_rank
       << ", \"torsion\": [";
    for (std::size_t i = 0; i < report.decomp.torsion.size(); ++i) {
      if (i) ss << ", ";
      ss << report.decomp.torsion[i].order;
    }
    ss << "]";
    if (report.chain) {
      ss << ", \"chain_lo\": " << report.chain->lo << ", \"chain_hi\": "
         << (report.chain->hi ? std::to_string(*report.chain->hi)
                              : std::string("null"))
         << ", \"chain_exact\": " << (report.chain->exact ? "true" : "false");
    }
    ss << "}";
    std::cout << ss.str() << "\n";
    return 0;
  }

  std::cout << "knot: " << report.expression << "\n";
  std::cout << "decomposition: " << report.decomp.to_string() << "\n";
  std::cout << "ord_v: " << report.ord << "\n";
  std::cout << "d_t(K, U): " << report.dt_unknot << "\n";
  if (report.lspace_n_alias)
    std::cout << "N(K) = ord_v = " << *report.lspace_n_alias
              << " (L-space knot alias)\n";
  std::cout << "lower bounds:\n";
  for (const auto& e : report.entries) print_bound_entry(std::cout, e);
  for (const auto& n : report.notes) std::cout << "  " << n << "\n";
  if (report.chain) {
    ordv::BigradedModule h =
        ordv::bigraded_homology(ordv::realize_bigraded(*expr));
    std::cout << "bigraded (over F2[u,v]):\n";
    std::cout << "  Ord_v: " << render_optional(h.v_order()) << "\n";
    std::cout << "  Ord_{u,v}: " << render_optional(h.uv_order()) << "\n";
    std::cout << "  chain order interval: " << chain_interval_str(*report.chain)
              << "\n";
    for (const auto& e : report.chain_entries) print_bound_entry(std::cout, e);
  }
  return 0;
}

int cmd_dist(const std::string& e1_text, const std::string& e2_text,
             bool graded) {
  auto e1 = parse_or_exit(e1_text);
  auto e2 = parse_or_exit(e2_text);
  try {
    int refined = ordv::refined_distance_lower(*e1, *e2);
    auto ribbon = ordv::ribbon_distance_lower(*e1, *e2, graded);
    std::cout << "refined cobordism distance d(K0,K1) >= " << refined
              << "   [|Ord_v(K0) - Ord_v(K1)| <= d(K0,K1)]\n";
    std::cout << "oriented band moves between K0 and K1 >= " << refined
              << "\n";
    std::cout << "ribbon distance d_r(K0,K1) >= " << render_optional(ribbon)
              << "   [d_t(K,K') <= d_r(K,K')]\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int report_check(const ordv::CheckResult& result) {
  std::cout << (result.consistent ? "consistent" : "obstructed") << ": "
            << result.detail << "\n";
  return result.consistent ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ordv: torsion orders of knot Floer complexes and cobordism bounds"};
  app.footer(kGrammarHelp);
  app.require_subcommand(1);

  // knot
  std::string knot_expr, knot_format = "txt";
  bool knot_bigraded = false, knot_graded_distance = false;
  auto* knot = app.add_subcommand(
      "knot", "Decomposition, ord_v and bound report for an expression");
  knot->add_option("expr", knot_expr, "knot expression")->required();
  knot->add_flag("--bigraded", knot_bigraded,
                 "also compute the two-variable torsion orders");
  knot->add_flag("--graded-distance", knot_graded_distance,
                 "compare graded isomorphism type in d_t");
  knot->add_option("--format", knot_format, "txt|json")
      ->check(CLI::IsMember({"txt", "json"}));

  // dist
  std::string dist_e1, dist_e2;
  bool dist_graded = false;
  auto* dist = app.add_subcommand(
      "dist", "Distance lower bounds between two expressions");
  dist->add_option("expr1", dist_e1)->required();
  dist->add_option("expr2", dist_e2)->required();
  dist->add_flag("--graded", dist_graded,
                 "compare graded isomorphism type in d_t");

  // check
  auto* check = app.add_subcommand("check", "Consistency rules");
  check->require_subcommand(1);
  int ord0 = 0, ord1 = 0, maxima = 0, genus = 0, saddles = 0, births = 0;
  int tp = 0, tq = 0;

  auto* cob = check->add_subcommand(
      "cobordism", "Ord_v(K0) <= max{M, Ord_v(K1)} + 2g(S)");
  cob->add_option("--ord0", ord0, "Ord_v of the source knot")->required();
  cob->add_option("--ord1", ord1, "Ord_v of the target knot")->required();
  cob->add_option("-M,--maxima", maxima, "local maxima")->required();
  cob->add_option("-g,--genus", genus, "genus")->required();

  auto* rc = check->add_subcommand(
      "ribbon-concordance",
      "b <= Ord_v(K0) = Ord_v(K1), or Ord_v(K0) <= Ord_v(K1) <= b");
  rc->add_option("--ord0", ord0)->required();
  rc->add_option("--ord1", ord1)->required();
  rc->add_option("-b,--saddles", saddles)->required();

  auto* rcg = check->add_subcommand("ribbon-cobordism",
                                    "Ord_v(K0) - Ord_v(K1) <= 2g");
  rcg->add_option("--ord0", ord0)->required();
  rcg->add_option("--ord1", ord1)->required();
  rcg->add_option("-g,--genus", genus)->required();

  auto* movie = check->add_subcommand(
      "movie", "surface norm |S| = max{m, M} + 2g of a movie");
  movie->add_option("-m,--minima", births)->required();
  movie->add_option("-b,--saddles", saddles);
  bool movie_has_saddles = false;
  movie->callback([&] { movie_has_saddles = movie->count("-b") > 0; });
  movie->add_option("-M,--maxima", maxima)->required();
  movie->add_option("-g,--genus", genus)->required();

  auto* tcon = check->add_subcommand(
      "torus-concordance",
      "bridge bound for knots concordant to a torus knot");
  tcon->add_option("-p", tp)->required();
  tcon->add_option("-q", tq)->required();

  // table
  auto* table = app.add_subcommand("table", "Table generation and audit");
  table->require_subcommand(1);
  int table_max = 12;
  std::string table_format = "txt", ingest_path;
  auto* torus = table->add_subcommand("torus", "ord_v over the torus family");
  torus->add_option("--max", table_max, "largest q in the sweep")
      ->check(CLI::PositiveNumber);
  torus->add_option("--format", table_format, "txt|csv|md|json-lines");
  auto* ingest = table->add_subcommand(
      "ingest", "audit a CSV knot table (name,ord_v,bridge)");
  ingest->add_option("path", ingest_path, "CSV file")->required();
  ingest->add_option("--format", table_format, "txt|csv|md|json-lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (*knot)
      return cmd_knot(knot_expr, knot_bigraded, knot_graded_distance,
                      knot_format);
    if (*dist) return cmd_dist(dist_e1, dist_e2, dist_graded);
    if (*cob)
      return report_check(
          ordv::cobordism_consistency(ord0, ord1, maxima, genus));
    if (*rc)
      return report_check(ordv::ribbon_concordance_check(ord0, ord1, saddles));
    if (*rcg)
      return report_check(ordv::ribbon_cobordism_check(ord0, ord1, genus));
    if (*movie) {
      ordv::CobordismData data{births,
                               movie_has_saddles
                                   ? std::optional<int>(saddles)
                                   : std::nullopt,
                               maxima, genus};
      ordv::SurfaceNorm norm = ordv::surface_norm(data);
      std::cout << "|S| = max{m, M} + 2g = " << norm.value << "\n";
      if (norm.via_saddles)
        std::cout << "|S| = max{b-m, b-M} = " << *norm.via_saddles << "\n";
      return 0;
    }
    if (*tcon) return report_check(ordv::torus_concordance_bridge_bound(tp, tq));
    if (*torus) {
      auto fmt = ordv::parse_table_format(table_format);
      if (!fmt) {
        std::cerr << "error: unknown format '" << table_format << "'\n";
        return 1;
      }
      auto rows = ordv::torus_table(table_max);
      std::cout << ordv::render_torus_table(rows, *fmt);
      for (const auto& row : rows)
        if (!row.sharp) {
          std::cerr << "error: ord_v(T(" << row.p << "," << row.q
                    << ")) failed the sharpness self-check\n";
          return 2;
        }
      return 0;
    }
    if (*ingest) {
      auto fmt = ordv::parse_table_format(table_format);
      if (!fmt) {
        std::cerr << "error: unknown format '" << table_format << "'\n";
        return 1;
      }
      std::ifstream in(ingest_path);
      if (!in) {
        std::cerr << "error: cannot open '" << ingest_path << "'\n";
        return 1;
      }
      ordv::IngestReport report = ordv::audit_table_csv(in);
      std::cout << ordv::render_ingest_report(report, *fmt);
      return report.ok() ? 0 : 2;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
