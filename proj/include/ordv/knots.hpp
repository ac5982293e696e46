// Knot expressions and their realization as chain complexes.
//
// Grammar (left-associative '#', 'm' binds tightest):
//   expr  := atom ('#' atom)*
//   atom  := 'U' | 'T' '(' int ',' int ')' | 'm' '(' expr ')'
//          | 'L' '[' int (';' int)* ']' | 'file:' path | '(' expr ')'
// 'L[a0;a1;...]' lists the exponents of an L-space knot Alexander polynomial
// in decreasing order; the coefficients alternate +1, -1 starting from +1.
#pragma once

#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "ordv/alexander.hpp"
#include "ordv/codec.hpp"
#include "ordv/complex.hpp"

namespace ordv {

struct KnotExpr;
using KnotExprPtr = std::shared_ptr<const KnotExpr>;

struct KnotExpr {
  struct Unknot {};
  struct Torus {
    int p = 0, q = 0;
  };
  struct LSpace {
    AlexPoly delta;
  };
  struct FileRef {
    std::string path;
  };
  struct Mirror {
    KnotExprPtr inner;
  };
  struct Sum {
    KnotExprPtr left, right;
  };

  std::variant<Unknot, Torus, LSpace, FileRef, Mirror, Sum> node;
};

inline KnotExprPtr make_unknot() {
  return std::make_shared<KnotExpr>(KnotExpr{KnotExpr::Unknot{}});
}
inline KnotExprPtr make_torus(int p, int q) {
  return std::make_shared<KnotExpr>(KnotExpr{KnotExpr::Torus{p, q}});
}
inline KnotExprPtr make_lspace(AlexPoly delta) {
  return std::make_shared<KnotExpr>(KnotExpr{KnotExpr::LSpace{std::move(delta)}});
}
inline KnotExprPtr make_file(std::string path) {
  return std::make_shared<KnotExpr>(KnotExpr{KnotExpr::FileRef{std::move(path)}});
}
inline KnotExprPtr make_mirror(KnotExprPtr e) {
  return std::make_shared<KnotExpr>(KnotExpr{KnotExpr::Mirror{std::move(e)}});
}
inline KnotExprPtr make_sum(KnotExprPtr a, KnotExprPtr b) {
  return std::make_shared<KnotExpr>(
      KnotExpr{KnotExpr::Sum{std::move(a), std::move(b)}});
}

class ExprParseError : public std::runtime_error {
 public:
  ExprParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg)), position(pos) {}
  std::size_t position;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  KnotExprPtr parse() {
    KnotExprPtr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprParseError(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(text_[start]))))
      fail("expected an integer");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  KnotExprPtr parse_sum() {
    KnotExprPtr e = parse_atom();
    for (;;) {
      skip_ws();
      if (!eat('#')) return e;
      e = make_sum(e, parse_atom());
    }
  }

  KnotExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected an expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      KnotExprPtr e = parse_sum();
      expect(')');
      return e;
    }
    if (c == 'U') {
      ++pos_;
      return make_unknot();
    }
    if (c == 'T') {
      ++pos_;
      expect('(');
      int p = parse_int();
      expect(',');
      int q = parse_int();
      expect(')');
      if (p < 1 || q < 1) fail("torus parameters must be positive");
      return make_torus(p, q);
    }
    if (c == 'm') {
      ++pos_;
      expect('(');
      KnotExprPtr e = parse_sum();
      expect(')');
      return make_mirror(e);
    }
    if (c == 'L') {
      ++pos_;
      expect('[');
      AlexPoly delta;
      int sign = 1;
      int exp = parse_int();
      delta.set(exp, sign);
      while (eat(';')) {
        sign = -sign;
        exp = parse_int();
        if (delta.coeff(exp) != 0) fail("repeated exponent in L[...]");
        delta.set(exp, sign);
      }
      expect(']');
      return make_lspace(std::move(delta));
    }
    if (text_.substr(pos_).starts_with("file:")) {
      pos_ += 5;
      std::size_t start = pos_;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
             text_[pos_] != ')' && text_[pos_] != '#')
        ++pos_;
      if (pos_ == start) fail("expected a file path after 'file:'");
      return make_file(std::string(text_.substr(start, pos_ - start)));
    }
    fail("expected 'U', 'T(p,q)', 'm(...)', 'L[...]', 'file:PATH' or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline KnotExprPtr parse_knot_expr(std::string_view text) {
  return detail::ExprParser(text).parse();
}

inline std::string to_string(const KnotExpr& e) {
  struct V {
    std::string operator()(const KnotExpr::Unknot&) const { return "U"; }
    std::string operator()(const KnotExpr::Torus& t) const {
      return "T(" + std::to_string(t.p) + "," + std::to_string(t.q) + ")";
    }
    std::string operator()(const KnotExpr::LSpace& l) const {
      std::string out = "L[";
      bool first = true;
      for (auto it = l.delta.terms().rbegin(); it != l.delta.terms().rend(); ++it) {
        if (!first) out += ";";
        first = false;
        out += std::to_string(it->first);
      }
      return out + "]";
    }
    std::string operator()(const KnotExpr::FileRef& f) const {
      return "file:" + f.path;
    }
    std::string operator()(const KnotExpr::Mirror& m) const {
      return "m(" + to_string(*m.inner) + ")";
    }
    std::string operator()(const KnotExpr::Sum& s) const {
      return to_string(*s.left) + " # " + to_string(*s.right);
    }
  };
  return std::visit(V{}, e.node);
}

// --- staircase realizations --------------------------------------------------

// Bigradings along the staircase: grU(x_0) = 0, grV(x_0) = -2*alpha_0, then
// each u^d step raises grU of the target by 2d - 1 and each v^d step raises
// grV by 2d - 1 (both drop by one through the differential itself).
namespace detail {
inline void staircase_gradings(const StaircaseSpec& s, std::vector<int>& gr_u,
                               std::vector<int>& gr_v) {
  int m = static_cast<int>(s.alphas.size());
  gr_u.assign(m, 0);
  gr_v.assign(m, 0);
  gr_v[0] = -2 * s.alphas[0];
  for (int i = 1; i <= s.steps(); ++i) {
    int odd = 2 * i - 1, even = 2 * i;
    int du = s.gaps[odd - 1];   // d_{2i-1}
    int dv = s.gaps[even - 1];  // d_{2i}
    gr_u[odd] = gr_u[even - 2] - (2 * du - 1);
    gr_v[odd] = gr_v[even - 2] + 1;
    gr_u[even] = gr_u[odd] - 1;
    gr_v[even] = gr_v[odd] + 2 * dv - 1;
  }
}
}  // namespace detail

inline GradedComplex staircase_graded(const StaircaseSpec& s) {
  GradedComplex c;
  std::vector<int> gr_u, gr_v;
  detail::staircase_gradings(s, gr_u, gr_v);
  int m = static_cast<int>(s.alphas.size());
  for (int i = 0; i < m; ++i)
    c.add_generator("y" + std::to_string(i), s.alphas[i], gr_u[i]);
  for (int k = 0; 2 * k + 2 < m; ++k)
    c.toggle_arrow(2 * k + 1, 2 * k + 2, s.gaps[2 * k + 1]);  // d_{2k+2}
  return c;
}

inline BigradedComplex staircase_bigraded(const StaircaseSpec& s) {
  BigradedComplex c;
  std::vector<int> gr_u, gr_v;
  detail::staircase_gradings(s, gr_u, gr_v);
  int m = static_cast<int>(s.alphas.size());
  for (int i = 0; i < m; ++i)
    c.add_generator("x" + std::to_string(i), gr_u[i], gr_v[i]);
  for (int i = 1; 2 * i - 1 < m; ++i) {
    c.toggle_arrow(2 * i - 1, 2 * i - 2, MonoUV{s.gaps[2 * i - 2], 0});
    c.toggle_arrow(2 * i - 1, 2 * i, MonoUV{0, s.gaps[2 * i - 1]});
  }
  return c;
}

// --- expression evaluation ----------------------------------------------------

namespace detail {
inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline StaircaseSpec staircase_of_leaf(const KnotExpr& e) {
  if (const auto* t = std::get_if<KnotExpr::Torus>(&e.node))
    return staircase_from_alexander(torus_alexander(t->p, t->q));
  if (const auto* l = std::get_if<KnotExpr::LSpace>(&e.node))
    return staircase_from_alexander(l->delta);
  StaircaseSpec unknot;
  unknot.alphas = {0};
  return unknot;
}
}  // namespace detail

inline GradedComplex realize_graded(const KnotExpr& e) {
  struct V {
    GradedComplex operator()(const KnotExpr::Unknot&) const {
      GradedComplex c;
      c.add_generator("y0", 0, 0);
      return c;
    }
    GradedComplex operator()(const KnotExpr::Torus& t) const {
      return staircase_graded(
          staircase_from_alexander(torus_alexander(t.p, t.q)));
    }
    GradedComplex operator()(const KnotExpr::LSpace& l) const {
      return staircase_graded(staircase_from_alexander(l.delta));
    }
    GradedComplex operator()(const KnotExpr::FileRef& f) const {
      return decode_graded(detail::read_file(f.path));
    }
    GradedComplex operator()(const KnotExpr::Mirror& m) const {
      return dual(realize_graded(*m.inner));
    }
    GradedComplex operator()(const KnotExpr::Sum& s) const {
      return tensor(realize_graded(*s.left), realize_graded(*s.right));
    }
  };
  return std::visit(V{}, e.node);
}

inline BigradedComplex realize_bigraded(const KnotExpr& e) {
  struct V {
    BigradedComplex operator()(const KnotExpr::Unknot&) const {
      BigradedComplex c;
      c.add_generator("x0", 0, 0);
      return c;
    }
    BigradedComplex operator()(const KnotExpr::Torus& t) const {
      return staircase_bigraded(
          staircase_from_alexander(torus_alexander(t.p, t.q)));
    }
    BigradedComplex operator()(const KnotExpr::LSpace& l) const {
      return staircase_bigraded(staircase_from_alexander(l.delta));
    }
    BigradedComplex operator()(const KnotExpr::FileRef& f) const {
      return decode_bigraded(detail::read_file(f.path));
    }
    BigradedComplex operator()(const KnotExpr::Mirror& m) const {
      return dual(realize_bigraded(*m.inner));
    }
    BigradedComplex operator()(const KnotExpr::Sum& s) const {
      return tensor(realize_bigraded(*s.left), realize_bigraded(*s.right));
    }
  };
  return std::visit(V{}, e.node);
}

}  // namespace ordv
