// Dense bit-vector linear algebra over F2. Rows are packed into 64-bit words;
// everything downstream (kernel bases, per-bidegree homology) sits on top of
// the small routines here.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

namespace ordv {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

  int size() const { return n_; }

  bool get(int i) const {
    assert(i >= 0 && i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(int i, bool value) {
    assert(i >= 0 && i < n_);
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }

  void flip(int i) {
    assert(i >= 0 && i < n_);
    w_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }

  BitVec& operator^=(const BitVec& o) {
    assert(n_ == o.n_);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }

  bool is_zero() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }

  // Index of the lowest set bit, or -1.
  int first_set() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return static_cast<int>(k) * 64 + __builtin_ctzll(w_[k]);
    return -1;
  }

  int popcount() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Row echelon form in place (pivot = lowest set bit of each row). Zero rows
// are dropped. Returns the rank; rows come out sorted by pivot column.
inline int echelonize(std::vector<BitVec>& rows) {
  std::vector<BitVec> out;
  for (BitVec row : rows) {
    for (const BitVec& r : out) {
      int p = r.first_set();
      if (p >= 0 && row.get(p)) row ^= r;
    }
    if (!row.is_zero()) out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end(), [](const BitVec& a, const BitVec& b) {
    return a.first_set() < b.first_set();
  });
  rows = std::move(out);
  return static_cast<int>(rows.size());
}

inline int rank_of(std::vector<BitVec> rows) { return echelonize(rows); }

// Kernel of the linear map sending source coordinate j to `columns[j]`.
// Returns an echelonized basis of the null space, as vectors of length
// `columns.size()`.
inline std::vector<BitVec> kernel_basis(const std::vector<BitVec>& columns) {
  int ncols = static_cast<int>(columns.size());
  if (ncols == 0) return {};
  [[maybe_unused]] int nrows = columns[0].size();
  // Augmented column reduction: track, for every reduced column, the source
  // combination that produced it. Columns that reduce to zero give kernel
  // vectors directly.
  std::vector<BitVec> reduced;
  std::vector<BitVec> combo;
  std::vector<BitVec> kernel;
  for (int j = 0; j < ncols; ++j) {
    BitVec col = columns[j];
    assert(col.size() == nrows);
    BitVec src(ncols);
    src.flip(j);
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      int p = reduced[k].first_set();
      if (p >= 0 && col.get(p)) {
        col ^= reduced[k];
        src ^= combo[k];
      }
    }
    if (col.is_zero()) {
      kernel.push_back(std::move(src));
    } else {
      reduced.push_back(std::move(col));
      combo.push_back(std::move(src));
    }
  }
  echelonize(kernel);
  return kernel;
}

}  // namespace ordv
