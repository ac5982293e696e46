// Text serialization of complexes. The document format is JSON with a fixed
// schema (see README, "Complex document format"); decoding is strict and
// rejects unknown fields, bad references, and negative exponents with an
// error naming the offending location.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ordv/complex.hpp"

namespace ordv {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

namespace detail {

using json = nlohmann::json;

// Canonical generator order: Alexander grading descending, name ascending.
// For bigraded complexes the Alexander grading is (grU - grV)/2.
inline std::vector<int> canonical_order(const GradedComplex& c) {
  std::vector<int> order(c.size());
  for (int i = 0; i < c.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ga = c.generator(a);
    const auto& gb = c.generator(b);
    if (ga.alexander != gb.alexander) return ga.alexander > gb.alexander;
    return ga.name < gb.name;
  });
  return order;
}

inline std::vector<int> canonical_order(const BigradedComplex& c) {
  std::vector<int> order(c.size());
  for (int i = 0; i < c.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ga = c.generator(a);
    const auto& gb = c.generator(b);
    int da = ga.gr_u - ga.gr_v, db = gb.gr_u - gb.gr_v;
    if (da != db) return da > db;
    return ga.name < gb.name;
  });
  return order;
}

inline void expect_keys(const json& obj, const std::vector<std::string>& keys,
                        const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw ParseError(where, "unknown field '" + it.key() + "'");
  }
}

inline int require_int(const json& obj, const std::string& key,
                       const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where, "missing field '" + key + "'");
  if (!obj[key].is_number_integer())
    throw ParseError(where + "." + key, "expected an integer");
  return obj[key].get<int>();
}

inline std::string require_string(const json& obj, const std::string& key,
                                  const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where, "missing field '" + key + "'");
  if (!obj[key].is_string())
    throw ParseError(where + "." + key, "expected a string");
  return obj[key].get<std::string>();
}

inline int resolve_generator(const auto& complex, const json& obj,
                             const std::string& key, const std::string& where) {
  std::string name = require_string(obj, key, where);
  auto id = complex.find(name);
  if (!id) throw ParseError(where + "." + key, "unknown generator '" + name + "'");
  return *id;
}

inline int exponent_field(const json& obj, const std::string& key,
                          const std::string& where, bool required) {
  if (!obj.contains(key)) {
    if (required) throw ParseError(where, "missing field '" + key + "'");
    return 0;
  }
  if (!obj[key].is_number_integer())
    throw ParseError(where + "." + key, "expected an integer");
  int e = obj[key].get<int>();
  if (e < 0)
    throw ParseError(where + "." + key,
                     "negative exponent " + std::to_string(e));
  return e;
}

}  // namespace detail

inline std::string encode(const GradedComplex& c) {
  using detail::json;
  json doc;
  doc["kind"] = "graded";
  doc["generators"] = json::array();
  doc["arrows"] = json::array();
  auto order = detail::canonical_order(c);
  std::vector<int> rank(c.size());
  for (int pos = 0; pos < c.size(); ++pos) rank[order[pos]] = pos;
  for (int i : order) {
    const auto& g = c.generator(i);
    json jg;
    jg["name"] = g.name;
    jg["alexander"] = g.alexander;
    if (g.maslov) jg["maslov"] = *g.maslov;
    doc["generators"].push_back(jg);
  }
  struct Row {
    int from_rank, to_rank, v;
    std::string from, to;
  };
  std::vector<Row> rows;
  for (int i = 0; i < c.size(); ++i)
    for (const auto& a : c.arrows(i))
      rows.push_back({rank[i], rank[a.target], a.v, c.generator(i).name,
                      c.generator(a.target).name});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.from_rank, a.to_rank, a.v) <
           std::tie(b.from_rank, b.to_rank, b.v);
  });
  for (const auto& r : rows) {
    json ja;
    ja["from"] = r.from;
    ja["to"] = r.to;
    ja["v"] = r.v;
    doc["arrows"].push_back(ja);
  }
  return doc.dump(2) + "\n";
}

inline std::string encode(const BigradedComplex& c) {
  using detail::json;
  json doc;
  doc["kind"] = "bigraded";
  doc["generators"] = json::array();
  doc["arrows"] = json::array();
  auto order = detail::canonical_order(c);
  std::vector<int> rank(c.size());
  for (int pos = 0; pos < c.size(); ++pos) rank[order[pos]] = pos;
  for (int i : order) {
    const auto& g = c.generator(i);
    json jg;
    jg["name"] = g.name;
    jg["gr_u"] = g.gr_u;
    jg["gr_v"] = g.gr_v;
    doc["generators"].push_back(jg);
  }
  struct Row {
    int from_rank, to_rank, u, v;
    std::string from, to;
  };
  std::vector<Row> rows;
  for (int i = 0; i < c.size(); ++i)
    for (const auto& a : c.arrows(i))
      rows.push_back({rank[i], rank[a.target], a.mono.u, a.mono.v,
                      c.generator(i).name, c.generator(a.target).name});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.from_rank, a.to_rank, a.u, a.v) <
           std::tie(b.from_rank, b.to_rank, b.u, b.v);
  });
  for (const auto& r : rows) {
    json ja;
    ja["from"] = r.from;
    ja["to"] = r.to;
    if (r.u != 0) ja["u"] = r.u;
    ja["v"] = r.v;
    doc["arrows"].push_back(ja);
  }
  return doc.dump(2) + "\n";
}

using AnyComplex = std::variant<GradedComplex, BigradedComplex>;

inline AnyComplex decode_complex(const std::string& text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "document must be a JSON object");
  detail::expect_keys(doc, {"kind", "generators", "arrows"}, "document");
  std::string kind = detail::require_string(doc, "kind", "document");
  if (kind != "graded" && kind != "bigraded")
    throw ParseError("document.kind",
                     "expected \"graded\" or \"bigraded\", got \"" + kind + "\"");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw ParseError("document", "missing or non-array field 'generators'");
  if (!doc.contains("arrows") || !doc["arrows"].is_array())
    throw ParseError("document", "missing or non-array field 'arrows'");

  auto check_complex = [](const auto& c) {
    if (auto v = validate(c)) throw ParseError("document", v->message);
  };

  if (kind == "graded") {
    GradedComplex c;
    int gi = 0;
    for (const auto& jg : doc["generators"]) {
      std::string where = "generators[" + std::to_string(gi++) + "]";
      if (!jg.is_object()) throw ParseError(where, "expected an object");
      detail::expect_keys(jg, {"name", "alexander", "maslov"}, where);
      std::string name = detail::require_string(jg, "name", where);
      int alexander = detail::require_int(jg, "alexander", where);
      std::optional<int> maslov;
      if (jg.contains("maslov")) maslov = detail::require_int(jg, "maslov", where);
      try {
        c.add_generator(name, alexander, maslov);
      } catch (const std::invalid_argument& e) {
        throw ParseError(where, e.what());
      }
    }
    int ai = 0;
    for (const auto& ja : doc["arrows"]) {
      std::string where = "arrows[" + std::to_string(ai++) + "]";
      if (!ja.is_object()) throw ParseError(where, "expected an object");
      detail::expect_keys(ja, {"from", "to", "v"}, where);
      int from = detail::resolve_generator(c, ja, "from", where);
      int to = detail::resolve_generator(c, ja, "to", where);
      int v = detail::exponent_field(ja, "v", where, /*required=*/true);
      c.toggle_arrow(from, to, v);
    }
    check_complex(c);
    return c;
  }

  BigradedComplex c;
  int gi = 0;
  for (const auto& jg : doc["generators"]) {
    std::string where = "generators[" + std::to_string(gi++) + "]";
    if (!jg.is_object()) throw ParseError(where, "expected an object");
    detail::expect_keys(jg, {"name", "gr_u", "gr_v"}, where);
    std::string name = detail::require_string(jg, "name", where);
    int gr_u = detail::require_int(jg, "gr_u", where);
    int gr_v = detail::require_int(jg, "gr_v", where);
    try {
      c.add_generator(name, gr_u, gr_v);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
  }
  int ai = 0;
  for (const auto& ja : doc["arrows"]) {
    std::string where = "arrows[" + std::to_string(ai++) + "]";
    if (!ja.is_object()) throw ParseError(where, "expected an object");
    detail::expect_keys(ja, {"from", "to", "u", "v"}, where);
    int from = detail::resolve_generator(c, ja, "from", where);
    int to = detail::resolve_generator(c, ja, "to", where);
    int u = detail::exponent_field(ja, "u", where, /*required=*/false);
    int v = detail::exponent_field(ja, "v", where, /*required=*/true);
    c.toggle_arrow(from, to, MonoUV{u, v});
  }
  check_complex(c);
  return c;
}

inline GradedComplex decode_graded(const std::string& text) {
  AnyComplex any = decode_complex(text);
  if (auto* g = std::get_if<GradedComplex>(&any)) return std::move(*g);
  throw ParseError("document", "kind mismatch: expected a graded document");
}

inline BigradedComplex decode_bigraded(const std::string& text) {
  AnyComplex any = decode_complex(text);
  if (auto* b = std::get_if<BigradedComplex>(&any)) return std::move(*b);
  throw ParseError("document", "kind mismatch: expected a bigraded document");
}

}  // namespace ordv
