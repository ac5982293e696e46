// Exact arithmetic over F2[v], bivariate monomials u^i v^j, sparse matrices,
// and Smith normal form over the PID F2[v].
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ordv/f2linalg.hpp"

namespace ordv {

// Polynomial in F2[v], coefficients packed as bits indexed by exponent.
// Addition is xor; every nonzero polynomial is monic.
class PolyV {
 public:
  PolyV() = default;

  static PolyV zero() { return PolyV{}; }
  static PolyV one() { return monomial(0); }

  static PolyV monomial(int exp) {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    PolyV p;
    p.flip(exp);
    return p;
  }

  static PolyV from_exponents(std::initializer_list<int> exps) {
    PolyV p;
    for (int e : exps) p.flip(e);
    return p;
  }

  bool is_zero() const { return w_.empty(); }

  // Degree of the polynomial, -1 for zero.
  int degree() const {
    if (w_.empty()) return -1;
    int k = static_cast<int>(w_.size()) - 1;
    return k * 64 + 63 - __builtin_clzll(w_[k]);
  }

  bool coeff(int exp) const {
    if (exp < 0) return false;
    std::size_t word = exp >> 6;
    if (word >= w_.size()) return false;
    return (w_[word] >> (exp & 63)) & 1u;
  }

  void flip(int exp) {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    std::size_t word = exp >> 6;
    if (word >= w_.size()) w_.resize(word + 1, 0);
    w_[word] ^= std::uint64_t{1} << (exp & 63);
    trim();
  }

  bool is_monomial() const {
    int total = 0;
    for (auto w : w_) total += __builtin_popcountll(w);
    return total == 1;
  }

  // Lowest exponent with nonzero coefficient; -1 for zero.
  int min_exponent() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return static_cast<int>(k) * 64 + __builtin_ctzll(w_[k]);
    return -1;
  }

  PolyV& operator+=(const PolyV& o) {
    if (o.w_.size() > w_.size()) w_.resize(o.w_.size(), 0);
    for (std::size_t k = 0; k < o.w_.size(); ++k) w_[k] ^= o.w_[k];
    trim();
    return *this;
  }

  friend PolyV operator+(PolyV a, const PolyV& b) {
    a += b;
    return a;
  }

  // Multiply by v^exp.
  PolyV times_monomial(int exp) const {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    if (is_zero() || exp == 0) return exp == 0 ? *this : PolyV{};
    PolyV out;
    int shift_words = exp >> 6, shift_bits = exp & 63;
    out.w_.assign(w_.size() + shift_words + 1, 0);
    for (std::size_t k = 0; k < w_.size(); ++k) {
      out.w_[k + shift_words] |= w_[k] << shift_bits;
      if (shift_bits)
        out.w_[k + shift_words + 1] |= w_[k] >> (64 - shift_bits);
    }
    out.trim();
    return out;
  }

  friend PolyV operator*(const PolyV& a, const PolyV& b) {
    PolyV out;
    if (a.is_zero() || b.is_zero()) return out;
    for (std::size_t k = 0; k < a.w_.size(); ++k) {
      std::uint64_t w = a.w_[k];
      while (w) {
        int bit = __builtin_ctzll(w);
        w &= w - 1;
        out += b.times_monomial(static_cast<int>(k) * 64 + bit);
      }
    }
    return out;
  }

  bool operator==(const PolyV& o) const { return w_ == o.w_; }

  std::vector<int> exponents() const {
    std::vector<int> out;
    for (std::size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t w = w_[k];
      while (w) {
        int bit = __builtin_ctzll(w);
        w &= w - 1;
        out.push_back(static_cast<int>(k) * 64 + bit);
      }
    }
    return out;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    auto exps = exponents();
    for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
      if (!out.empty()) out += " + ";
      if (*it == 0)
        out += "1";
      else if (*it == 1)
        out += "v";
      else
        out += "v^" + std::to_string(*it);
    }
    return out;
  }

 private:
  void trim() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
  }

  std::vector<std::uint64_t> w_;
};

// Euclidean division in F2[v]: a = q*b + r with deg r < deg b.
inline std::pair<PolyV, PolyV> poly_divmod(PolyV a, const PolyV& b) {
  if (b.is_zero()) throw std::invalid_argument("zero divisor");
  PolyV q;
  const int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    int shift = a.degree() - db;
    q.flip(shift);
    a += b.times_monomial(shift);
  }
  return {q, a};
}

inline PolyV poly_gcd(PolyV a, PolyV b) {
  if (a.is_zero() && b.is_zero())
    throw std::invalid_argument("gcd(0,0) undefined");
  while (!b.is_zero()) {
    PolyV r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline bool divides(const PolyV& d, const PolyV& a) {
  if (a.is_zero()) return true;
  return poly_divmod(a, d).second.is_zero();
}

// Monomial u^i v^j in F2[u,v].
struct MonoUV {
  int u = 0;
  int v = 0;

  friend MonoUV operator*(MonoUV a, MonoUV b) { return {a.u + b.u, a.v + b.v}; }
  int total_degree() const { return u + v; }
  auto operator<=>(const MonoUV&) const = default;

  std::string to_string() const {
    if (u == 0 && v == 0) return "1";
    std::string out;
    if (u == 1) out += "u";
    if (u > 1) out += "u^" + std::to_string(u);
    if (v >= 1 && !out.empty()) out += " ";
    if (v == 1) out += "v";
    if (v > 1) out += "v^" + std::to_string(v);
    return out;
  }
};

// Sparse matrix; only nonzero entries are stored.
template <class E>
struct SparseMat {
  int rows = 0;
  int cols = 0;
  std::map<std::pair<int, int>, E> entries;

  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(c) {}

  void set(int r, int c, E value) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::out_of_range("matrix index out of range");
    if (value == E{})
      entries.erase({r, c});
    else
      entries[{r, c}] = std::move(value);
  }

  const E* get(int r, int c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? nullptr : &it->second;
  }
};

struct SmithResult {
  std::vector<PolyV> factors;     // invariant factors d_1 | d_2 | ... | d_r
  std::vector<int> row_degrees;   // grading of the coker summand generators
  bool degrees_valid = false;
};

namespace detail {

// Working form: row-major maps plus a per-column index of nonzero rows.
class SmithWorker {
 public:
  SmithWorker(const SparseMat<PolyV>& m, std::vector<int> row_degrees)
      : nrows_(m.rows),
        ncols_(m.cols),
        rows_(m.rows),
        col_rows_(m.cols),
        degs_(std::move(row_degrees)) {
    track_ = static_cast<int>(degs_.size()) == nrows_;
    for (const auto& [rc, e] : m.entries) {
      if (e.is_zero()) continue;
      rows_[rc.first][rc.second] = e;
      col_rows_[rc.second].insert(rc.first);
    }
  }

  SmithResult run() {
    SmithResult out;
    int steps = std::min(nrows_, ncols_);
    for (int t = 0; t < steps; ++t) {
      if (!select_pivot(t)) break;
      reduce_step(t);
      out.factors.push_back(rows_[t].at(t));
      if (track_) out.row_degrees.push_back(degs_[t]);
    }
    out.degrees_valid = track_;
    return out;
  }

 private:
  // Smallest-degree nonzero entry in the active region; ties broken by
  // lowest (row, col). Moves it to (t, t). Returns false if region is zero.
  bool select_pivot(int t) {
    int best_r = -1, best_c = -1, best_deg = -1;
    for (int r = t; r < nrows_; ++r) {
      for (auto it = rows_[r].lower_bound(t); it != rows_[r].end(); ++it) {
        int d = it->second.degree();
        if (best_deg < 0 || d < best_deg) {
          best_deg = d;
          best_r = r;
          best_c = it->first;
        }
      }
    }
    if (best_r < 0) return false;
    swap_rows(t, best_r);
    swap_cols(t, best_c);
    return true;
  }

  void reduce_step(int t) {
    for (;;) {
      if (!clear_column(t)) continue;
      if (!clear_row(t)) continue;
      if (!enforce_divisibility(t)) continue;
      return;
    }
  }

  // Clear entries below the pivot. Returns false if the pivot moved (a
  // remainder of smaller degree was swapped up) and the step must restart.
  bool clear_column(int t) {
    for (;;) {
      int victim = -1;
      for (int r : col_rows_[t]) {
        if (r > t) {
          victim = r;
          break;
        }
      }
      if (victim < 0) return true;
      auto [q, rem] = poly_divmod(rows_[victim].at(t), rows_[t].at(t));
      if (!q.is_zero()) add_row(victim, t, q);
      if (!rem.is_zero()) {
        swap_rows(t, victim);
        return false;
      }
    }
  }

  bool clear_row(int t) {
    for (;;) {
      int victim = -1;
      for (auto it = rows_[t].upper_bound(t); it != rows_[t].end(); ++it) {
        victim = it->first;
        break;
      }
      if (victim < 0) return true;
      auto [q, rem] = poly_divmod(rows_[t].at(victim), rows_[t].at(t));
      if (!q.is_zero()) add_col(victim, t, q);
      if (!rem.is_zero()) {
        swap_cols(t, victim);
        return false;
      }
    }
  }

  // Make the pivot divide every remaining entry; merging a bad row into the
  // pivot row loses homogeneity, so degree tracking is switched off.
  bool enforce_divisibility(int t) {
    const PolyV& d = rows_[t].at(t);
    for (int r = t + 1; r < nrows_; ++r) {
      for (auto it = rows_[r].upper_bound(t); it != rows_[r].end(); ++it) {
        if (!divides(d, it->second)) {
          add_row(t, r, PolyV::one());
          track_ = false;
          return false;
        }
      }
    }
    return true;
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (const auto& [c, e] : rows_[a]) col_rows_[c].erase(a);
    for (const auto& [c, e] : rows_[b]) col_rows_[c].erase(b);
    std::swap(rows_[a], rows_[b]);
    for (const auto& [c, e] : rows_[a]) col_rows_[c].insert(a);
    for (const auto& [c, e] : rows_[b]) col_rows_[c].insert(b);
    if (track_) std::swap(degs_[a], degs_[b]);
  }

  void swap_cols(int a, int b) {
    if (a == b) return;
    std::set<int> touched = col_rows_[a];
    touched.insert(col_rows_[b].begin(), col_rows_[b].end());
    for (int r : touched) {
      PolyV ea, eb;
      if (auto it = rows_[r].find(a); it != rows_[r].end()) ea = it->second;
      if (auto it = rows_[r].find(b); it != rows_[r].end()) eb = it->second;
      set_entry(r, a, eb);
      set_entry(r, b, ea);
    }
  }

  // row[dst] += q * row[src]
  void add_row(int dst, int src, const PolyV& q) {
    for (const auto& [c, e] : std::map<int, PolyV>(rows_[src])) {
      PolyV cur;
      if (auto it = rows_[dst].find(c); it != rows_[dst].end()) cur = it->second;
      set_entry(dst, c, cur + q * e);
    }
  }

  // col[dst] += q * col[src]
  void add_col(int dst, int src, const PolyV& q) {
    std::set<int> rows_with_src = col_rows_[src];
    for (int r : rows_with_src) {
      PolyV cur;
      if (auto it = rows_[r].find(dst); it != rows_[r].end()) cur = it->second;
      set_entry(r, dst, cur + q * rows_[r].at(src));
    }
  }

  void set_entry(int r, int c, const PolyV& value) {
    if (value.is_zero()) {
      rows_[r].erase(c);
      col_rows_[c].erase(r);
    } else {
      rows_[r][c] = value;
      col_rows_[c].insert(r);
    }
  }

  int nrows_, ncols_;
  std::vector<std::map<int, PolyV>> rows_;
  std::vector<std::set<int>> col_rows_;
  std::vector<int> degs_;
  bool track_ = false;
};

}  // namespace detail

// Smith normal form with graded bookkeeping: row_degrees[i] is the grading of
// the i-th target basis vector; the result reports, for each invariant
// factor, the grading of the corresponding cokernel summand generator.
// Tracking survives as long as all operations stay homogeneous (always the
// case for matrices of valid graded differentials).
inline SmithResult smith_normal_form_graded(const SparseMat<PolyV>& m,
                                            std::vector<int> row_degrees) {
  return detail::SmithWorker(m, std::move(row_degrees)).run();
}

inline std::vector<PolyV> smith_normal_form(const SparseMat<PolyV>& m) {
  return detail::SmithWorker(m, {}).run().factors;
}

// Echelonized basis of the null space of an F2 matrix.
inline std::vector<BitVec> kernel_basis_f2(const SparseMat<bool>& m) {
  std::vector<BitVec> columns(m.cols, BitVec(m.rows));
  for (const auto& [rc, e] : m.entries)
    if (e) columns[rc.second].flip(rc.first);
  return kernel_basis(columns);
}

}  // namespace ordv
