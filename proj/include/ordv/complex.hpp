// Free graded chain complexes over F2[v] and bigraded complexes over
// F2[u,v] with monomial differentials, plus the operations used to combine
// them: tensor product, dual, and the u = 0 collapse.
//
// Grading conventions. A graded generator carries an Alexander grading (and
// optionally a Maslov grading); an arrow v^k from x to y requires
//   A(y) = A(x) - k          and, when both Maslov gradings are present,
//   M(y) = M(x) - 1          (the differential drops Maslov by one; v is
//                             Maslov-neutral in the v-variable convention).
// A bigraded generator carries (grU, grV); an arrow u^i v^j from x to y
// requires
//   grU(y) = grU(x) + 2i - 1 and grV(y) = grV(x) + 2j - 1,
// i.e. u acts with bidegree (-2, 0), v with (0, -2), and the differential
// drops both gradings by one. Alexander = (grU - grV)/2, Maslov = grU.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordv/algebra.hpp"

namespace ordv {

struct Violation {
  std::string message;
};

using ValidationResult = std::optional<Violation>;  // nullopt means ok

class GradedComplex {
 public:
  struct Generator {
    std::string name;
    int alexander = 0;
    std::optional<int> maslov;
  };
  struct Arrow {
    int v = 0;
    int target = -1;
    auto operator<=>(const Arrow&) const = default;
  };

  int add_generator(std::string name, int alexander,
                    std::optional<int> maslov = std::nullopt) {
    if (index_.count(name))
      throw std::invalid_argument("duplicate generator name '" + name + "'");
    int id = static_cast<int>(gens_.size());
    index_[name] = id;
    gens_.push_back({std::move(name), alexander, maslov});
    diff_.emplace_back();
    return id;
  }

  // Formal sums are xor-canonical: toggling an existing arrow removes it.
  void toggle_arrow(int from, int to, int vexp) {
    check_ids(from, to);
    if (vexp < 0) throw std::invalid_argument("negative exponent");
    auto& arrows = diff_[from];
    Arrow a{vexp, to};
    auto it = std::find(arrows.begin(), arrows.end(), a);
    if (it != arrows.end())
      arrows.erase(it);
    else
      arrows.insert(std::upper_bound(arrows.begin(), arrows.end(), a), a);
  }

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int i) const { return gens_.at(i); }
  const std::vector<Arrow>& arrows(int i) const { return diff_.at(i); }

  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const GradedComplex& o) const {
    return gens_size_eq(o) && diff_ == o.diff_;
  }

 private:
  bool gens_size_eq(const GradedComplex& o) const {
    if (gens_.size() != o.gens_.size()) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].name != o.gens_[i].name ||
          gens_[i].alexander != o.gens_[i].alexander ||
          gens_[i].maslov != o.gens_[i].maslov)
        return false;
    }
    return true;
  }

  void check_ids(int from, int to) const {
    if (from < 0 || from >= size() || to < 0 || to >= size())
      throw std::out_of_range("generator id out of range");
  }

  std::vector<Generator> gens_;
  std::vector<std::vector<Arrow>> diff_;
  std::map<std::string, int> index_;
};

class BigradedComplex {
 public:
  struct Generator {
    std::string name;
    int gr_u = 0;
    int gr_v = 0;
  };
  struct Arrow {
    MonoUV mono;
    int target = -1;
    auto operator<=>(const Arrow&) const = default;
  };

  int add_generator(std::string name, int gr_u, int gr_v) {
    if (index_.count(name))
      throw std::invalid_argument("duplicate generator name '" + name + "'");
    int id = static_cast<int>(gens_.size());
    index_[name] = id;
    gens_.push_back({std::move(name), gr_u, gr_v});
    diff_.emplace_back();
    return id;
  }

  void toggle_arrow(int from, int to, MonoUV mono) {
    if (from < 0 || from >= size() || to < 0 || to >= size())
      throw std::out_of_range("generator id out of range");
    if (mono.u < 0 || mono.v < 0)
      throw std::invalid_argument("negative exponent");
    auto& arrows = diff_[from];
    Arrow a{mono, to};
    auto it = std::find(arrows.begin(), arrows.end(), a);
    if (it != arrows.end())
      arrows.erase(it);
    else
      arrows.insert(std::upper_bound(arrows.begin(), arrows.end(), a), a);
  }

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int i) const { return gens_.at(i); }
  const std::vector<Arrow>& arrows(int i) const { return diff_.at(i); }

  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const BigradedComplex& o) const {
    if (gens_.size() != o.gens_.size() || diff_ != o.diff_) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].name != o.gens_[i].name || gens_[i].gr_u != o.gens_[i].gr_u ||
          gens_[i].gr_v != o.gens_[i].gr_v)
        return false;
    }
    return true;
  }

 private:
  std::vector<Generator> gens_;
  std::vector<std::vector<Arrow>> diff_;
  std::map<std::string, int> index_;
};

// --- validation ------------------------------------------------------------

inline ValidationResult validate(const GradedComplex& c) {
  // d o d = 0 over F2[v]
  for (int x = 0; x < c.size(); ++x) {
    std::map<int, PolyV> acc;
    for (const auto& a1 : c.arrows(x))
      for (const auto& a2 : c.arrows(a1.target))
        acc[a2.target] += PolyV::monomial(a1.v + a2.v);
    for (const auto& [z, p] : acc) {
      if (!p.is_zero())
        return Violation{"d2 != 0: d(d(" + c.generator(x).name + ")) hits " +
                         c.generator(z).name + " with coefficient " +
                         p.to_string()};
    }
  }
  for (int x = 0; x < c.size(); ++x) {
    const auto& gx = c.generator(x);
    for (const auto& a : c.arrows(x)) {
      const auto& gy = c.generator(a.target);
      if (gy.alexander != gx.alexander - a.v)
        return Violation{"inhomogeneous arrow v^" + std::to_string(a.v) +
                         " from " + gx.name + " (A=" +
                         std::to_string(gx.alexander) + ") to " + gy.name +
                         " (A=" + std::to_string(gy.alexander) + ")"};
      if (gx.maslov && gy.maslov && *gy.maslov != *gx.maslov - 1)
        return Violation{"inhomogeneous arrow (Maslov) from " + gx.name +
                         " to " + gy.name};
    }
  }
  return std::nullopt;
}

inline ValidationResult validate(const BigradedComplex& c) {
  for (int x = 0; x < c.size(); ++x) {
    std::set<std::pair<int, MonoUV>> acc;  // xor set
    for (const auto& a1 : c.arrows(x))
      for (const auto& a2 : c.arrows(a1.target)) {
        std::pair<int, MonoUV> key{a2.target, a1.mono * a2.mono};
        auto it = acc.find(key);
        if (it != acc.end())
          acc.erase(it);
        else
          acc.insert(key);
      }
    if (!acc.empty()) {
      const auto& [z, mono] = *acc.begin();
      return Violation{"d2 != 0: d(d(" + c.generator(x).name + ")) hits " +
                       c.generator(z).name + " with coefficient " +
                       mono.to_string()};
    }
  }
  for (int x = 0; x < c.size(); ++x) {
    const auto& gx = c.generator(x);
    for (const auto& a : c.arrows(x)) {
      const auto& gy = c.generator(a.target);
      if (gy.gr_u != gx.gr_u + 2 * a.mono.u - 1 ||
          gy.gr_v != gx.gr_v + 2 * a.mono.v - 1)
        return Violation{"inhomogeneous arrow " + a.mono.to_string() +
                         " from " + gx.name + " to " + gy.name};
    }
  }
  return std::nullopt;
}

// --- tensor product ---------------------------------------------------------

namespace detail {
inline std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "*" + b + ")";
}
}  // namespace detail

inline GradedComplex tensor(const GradedComplex& a, const GradedComplex& b) {
  GradedComplex out;
  auto id = [&](int i, int j) { return i * b.size() + j; };
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      const auto& ga = a.generator(i);
      const auto& gb = b.generator(j);
      std::optional<int> maslov;
      if (ga.maslov && gb.maslov) maslov = *ga.maslov + *gb.maslov;
      out.add_generator(detail::pair_name(ga.name, gb.name),
                        ga.alexander + gb.alexander, maslov);
    }
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      for (const auto& ar : a.arrows(i))
        out.toggle_arrow(id(i, j), id(ar.target, j), ar.v);
      for (const auto& br : b.arrows(j))
        out.toggle_arrow(id(i, j), id(i, br.target), br.v);
    }
  return out;
}

inline BigradedComplex tensor(const BigradedComplex& a,
                              const BigradedComplex& b) {
  BigradedComplex out;
  auto id = [&](int i, int j) { return i * b.size() + j; };
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      const auto& ga = a.generator(i);
      const auto& gb = b.generator(j);
      out.add_generator(detail::pair_name(ga.name, gb.name),
                        ga.gr_u + gb.gr_u, ga.gr_v + gb.gr_v);
    }
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      for (const auto& ar : a.arrows(i))
        out.toggle_arrow(id(i, j), id(ar.target, j), ar.mono);
      for (const auto& br : b.arrows(j))
        out.toggle_arrow(id(i, j), id(i, br.target), br.mono);
    }
  return out;
}

// --- dual -------------------------------------------------------------------

inline GradedComplex dual(const GradedComplex& c) {
  GradedComplex out;
  for (int i = 0; i < c.size(); ++i) {
    const auto& g = c.generator(i);
    std::optional<int> maslov;
    if (g.maslov) maslov = -*g.maslov;
    out.add_generator(g.name, -g.alexander, maslov);
  }
  for (int i = 0; i < c.size(); ++i)
    for (const auto& a : c.arrows(i)) out.toggle_arrow(a.target, i, a.v);
  return out;
}

inline BigradedComplex dual(const BigradedComplex& c) {
  BigradedComplex out;
  for (int i = 0; i < c.size(); ++i) {
    const auto& g = c.generator(i);
    out.add_generator(g.name, -g.gr_u, -g.gr_v);
  }
  for (int i = 0; i < c.size(); ++i)
    for (const auto& a : c.arrows(i)) out.toggle_arrow(a.target, i, a.mono);
  return out;
}

// --- u = 0 collapse ---------------------------------------------------------

inline GradedComplex set_u_zero(const BigradedComplex& c) {
  GradedComplex out;
  for (int i = 0; i < c.size(); ++i) {
    const auto& g = c.generator(i);
    if ((g.gr_u - g.gr_v) % 2 != 0)
      throw std::invalid_argument("generator '" + g.name +
                                  "' has odd grU - grV");
    out.add_generator(g.name, (g.gr_u - g.gr_v) / 2, g.gr_u);
  }
  for (int i = 0; i < c.size(); ++i)
    for (const auto& a : c.arrows(i))
      if (a.mono.u == 0) out.toggle_arrow(i, a.target, a.mono.v);
  return out;
}

}  // namespace ordv
