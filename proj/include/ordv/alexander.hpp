// Alexander polynomials (integer Laurent polynomials in t) and staircase
// data of L-space knots: the exponent sequence alpha_0 > ... > alpha_2n of
// the Alexander polynomial together with its gap sequence d_i.
#pragma once

#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordv {

class AlexPoly {
 public:
  AlexPoly() = default;

  static AlexPoly one() {
    AlexPoly p;
    p.terms_[0] = 1;
    return p;
  }

  void set(int exp, int coeff) {
    if (coeff == 0)
      terms_.erase(exp);
    else
      terms_[exp] = coeff;
  }

  int coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? 0 : it->second;
  }

  const std::map<int, int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int top_exponent() const {
    if (terms_.empty()) throw std::logic_error("zero polynomial");
    return terms_.rbegin()->first;
  }

  bool is_symmetric() const {
    for (const auto& [e, c] : terms_)
      if (coeff(-e) != c) return false;
    return true;
  }

  long long evaluate_at_one() const {
    long long s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  bool operator==(const AlexPoly& o) const { return terms_ == o.terms_; }

  // Canonical rendering: terms in decreasing exponent order, unit
  // coefficients implicit, e.g. "t^10 - t^9 + t^5 - t^3 + 1 - t^-3 + ...".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      int c = it->second;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      int mag = std::abs(c);
      int e = it->first;
      if (mag != 1 || e == 0) out += std::to_string(mag);
      if (e != 0) {
        if (mag != 1) out += "*";
        out += e == 1 ? "t" : "t^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  std::map<int, int> terms_;  // exponent -> nonzero coefficient
};

// Symmetrized Alexander polynomial of the torus knot T(p,q); T(1,q) and
// T(p,1) give the unknot polynomial 1.
inline AlexPoly torus_alexander(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("p,q must be positive");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("p,q not coprime");
  if (p == 1 || q == 1) return AlexPoly::one();

  // (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)), then shift by t^{-d}.
  // First factor out t^p - 1 via the geometric sum, then divide the
  // remaining product by t^q - 1 exactly.
  std::vector<long long> num((q - 1) * p + 2, 0);  // sum_{k<q} t^{pk} * (t-1)
  for (int k = 0; k < q; ++k) {
    num[p * k + 1] += 1;
    num[p * k] -= 1;
  }
  int deg_num = static_cast<int>(num.size()) - 1;
  while (deg_num > 0 && num[deg_num] == 0) --deg_num;
  int deg_den = q;
  std::vector<long long> quot(deg_num - deg_den + 1, 0);
  std::vector<long long> rem = num;
  for (int d = deg_num; d >= deg_den; --d) {
    long long c = rem[d];  // divisor t^q - 1 is monic
    if (c == 0) continue;
    quot[d - deg_den] = c;
    rem[d] -= c;
    rem[d - deg_den] += c;
  }
  for (long long c : rem)
    if (c != 0) throw std::logic_error("torus polynomial division not exact");

  const int d = (p - 1) * (q - 1) / 2;
  AlexPoly out;
  for (int e = 0; e < static_cast<int>(quot.size()); ++e)
    if (quot[e] != 0) out.set(e - d, static_cast<int>(quot[e]));
  return out;
}

// The staircase data of an L-space knot: exponents of its Alexander
// polynomial in decreasing order, and the gaps d_i = alpha_{i-1} - alpha_i.
struct StaircaseSpec {
  std::vector<int> alphas;
  std::vector<int> gaps;

  int steps() const { return static_cast<int>(gaps.size()) / 2; }  // n
  int genus() const { return alphas.front(); }

  int max_gap() const {
    int m = 0;
    for (int g : gaps) m = std::max(m, g);
    return m;
  }
};

inline StaircaseSpec staircase_from_alexander(const AlexPoly& delta) {
  const std::string prefix = "not an L-space-knot Alexander polynomial: ";
  if (delta.is_zero()) throw std::invalid_argument(prefix + "zero polynomial");
  std::vector<int> alphas;
  for (auto it = delta.terms().rbegin(); it != delta.terms().rend(); ++it)
    alphas.push_back(it->first);
  if (alphas.size() % 2 == 0)
    throw std::invalid_argument(prefix + "even number of terms (" +
                                std::to_string(alphas.size()) + ")");
  int sign = 1;
  for (int e : alphas) {
    int c = delta.coeff(e);
    if (c != 1 && c != -1)
      throw std::invalid_argument(prefix + "coefficient " + std::to_string(c) +
                                  " at t^" + std::to_string(e));
    if (c != sign)
      throw std::invalid_argument(prefix + "non-alternating sign at t^" +
                                  std::to_string(e));
    sign = -sign;
  }
  std::size_t m = alphas.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (alphas[i] != -alphas[m - 1 - i])
      throw std::invalid_argument(prefix + "exponents not symmetric (t^" +
                                  std::to_string(alphas[i]) + " vs t^" +
                                  std::to_string(alphas[m - 1 - i]) + ")");
  }
  StaircaseSpec s;
  s.alphas = std::move(alphas);
  for (std::size_t i = 1; i < s.alphas.size(); ++i)
    s.gaps.push_back(s.alphas[i - 1] - s.alphas[i]);
  return s;
}

// Inverse of staircase_from_alexander: sum of (-1)^k t^{alpha_k}.
inline AlexPoly alexander_from_staircase(const StaircaseSpec& s) {
  AlexPoly out;
  int sign = 1;
  for (int a : s.alphas) {
    out.set(a, sign);
    sign = -sign;
  }
  return out;
}

}  // namespace ordv
