#pragma once

// Linear algebra over the two-element field.
//
// BitVector / BitMatrix are dense and word-packed. SparseColumns carries the
// large cellular boundary operators, which are far too big for a dense
// representation once n >= 3.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tcg::gf2 {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitVector unit(std::size_t size, std::size_t index) {
    BitVector v(size);
    v.set(index);
    return v;
  }

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool value) { value ? set(i) : reset(i); }

  BitVector& operator^=(const BitVector& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  BitVector& operator&=(const BitVector& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  BitVector& operator|=(const BitVector& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  // Parity of the intersection with `other`, i.e. the dot product mod 2.
  bool dot(const BitVector& other) const {
    check_same_size(other);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return (std::popcount(acc) & 1) != 0;
  }

  // Lowest set index, or size() when empty.
  std::size_t find_first() const { return find_next_from(0); }
  std::size_t find_next(std::size_t i) const { return find_next_from(i + 1); }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = find_first(); i < size_; i = find_next(i)) out.push_back(i);
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const BitVector& a, const BitVector& b) = default;

 private:
  std::size_t find_next_from(std::size_t i) const {
    if (i >= size_) return size_;
    std::size_t w = i >> 6;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (word != 0) {
        std::size_t idx = (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
        return idx < size_ ? idx : size_;
      }
      if (++w >= words_.size()) return size_;
      word = words_[w];
    }
  }

  void check_same_size(const BitVector& other) const {
    if (other.size_ != size_) throw std::invalid_argument("gf2: bit vector size mismatch");
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const {
    std::size_t h = std::hash<std::size_t>{}(v.size());
    for (auto w : v.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Dense row-major matrix over GF(2).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  static BitMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw std::invalid_argument("gf2: ragged matrix literal");
      for (std::size_t c = 0; c < cols; ++c)
        if (rows[r][c] & 1) m.set(r, c);
    }
    return m;
  }

  // Columns given as vectors of length `rows`.
  static BitMatrix from_columns(std::size_t rows, const std::vector<BitVector>& columns) {
    BitMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (std::size_t r = columns[c].find_first(); r < rows; r = columns[c].find_next(r)) m.set(r, c);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool test(std::size_t r, std::size_t c) const { return (bits_[r * stride_ + (c >> 6)] >> (c & 63)) & 1U; }
  void set(std::size_t r, std::size_t c) { bits_[r * stride_ + (c >> 6)] |= std::uint64_t{1} << (c & 63); }
  void flip(std::size_t r, std::size_t c) { bits_[r * stride_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63); }

  bool is_zero() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  }

  BitVector row(std::size_t r) const {
    BitVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
      if (test(r, c)) v.set(c);
    return v;
  }

  BitVector column(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (test(r, c)) v.set(r);
    return v;
  }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (test(r, c)) t.set(c, r);
    return t;
  }

  // this * x for a column vector x of length cols().
  BitVector apply(const BitVector& x) const {
    BitVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t acc = 0;
      const std::uint64_t* row = &bits_[r * stride_];
      for (std::size_t w = 0; w < stride_; ++w) acc ^= row[w] & x.words()[w];
      if (std::popcount(acc) & 1) out.set(r);
    }
    return out;
  }

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("gf2: product shape mismatch");
    BitMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a.test(r, k))
          for (std::size_t w = 0; w < out.stride_; ++w) out.bits_[r * out.stride_ + w] ^= b.bits_[k * b.stride_ + w];
    return out;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

 private:
  friend struct RowEchelon;
  std::uint64_t* row_ptr(std::size_t r) { return &bits_[r * stride_]; }
  const std::uint64_t* row_ptr(std::size_t r) const { return &bits_[r * stride_]; }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Reduced row echelon form, pivots chosen left to right.
struct RowEchelon {
  BitMatrix reduced;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i

  explicit RowEchelon(BitMatrix m) : reduced(std::move(m)) {
    const std::size_t stride = reduced.stride_;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < reduced.cols_ && pivot_row < reduced.rows_; ++c) {
      std::size_t found = reduced.rows_;
      for (std::size_t r = pivot_row; r < reduced.rows_; ++r)
        if (reduced.test(r, c)) {
          found = r;
          break;
        }
      if (found == reduced.rows_) continue;
      if (found != pivot_row) {
        std::swap_ranges(reduced.row_ptr(found), reduced.row_ptr(found) + stride, reduced.row_ptr(pivot_row));
      }
      const std::uint64_t* prow = reduced.row_ptr(pivot_row);
      for (std::size_t r = 0; r < reduced.rows_; ++r) {
        if (r == pivot_row || !reduced.test(r, c)) continue;
        std::uint64_t* target = reduced.row_ptr(r);
        for (std::size_t w = 0; w < stride; ++w) target[w] ^= prow[w];
      }
      pivot_cols.push_back(c);
      ++pivot_row;
    }
  }

  std::size_t rank() const { return pivot_cols.size(); }
};

inline std::size_t rank(const BitMatrix& m) { return RowEchelon(m).rank(); }

inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
  RowEchelon ech(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector x(m.cols());
    x.set(free);
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r)
      if (ech.reduced.test(r, free)) x.set(ech.pivot_cols[r]);
    basis.push_back(std::move(x));
  }
  return basis;
}

// Incremental basis keyed by lowest set bit; used to test span membership.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim), slot_(dim, npos) {}

  // Reduces v against the basis; returns the residue.
  BitVector reduce(BitVector v) const {
    for (std::size_t p = v.find_first(); p < dim_; p = v.find_first()) {
      if (slot_[p] == npos) break;
      v ^= rows_[slot_[p]];
    }
    return v;
  }

  // Inserts v; returns false when v was already in the span.
  bool insert(const BitVector& v) {
    BitVector r = reduce(v);
    std::size_t p = r.find_first();
    if (p >= dim_) return false;
    slot_[p] = rows_.size();
    rows_.push_back(std::move(r));
    return true;
  }

  bool contains(const BitVector& v) const { return reduce(v).none(); }
  std::size_t size() const { return rows_.size(); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t dim_;
  std::vector<std::size_t> slot_;
  std::vector<BitVector> rows_;
};

// Representatives of span(cycles) / span(boundaries), picked greedily in the
// order given.
inline std::vector<BitVector> quotient_basis(const std::vector<BitVector>& cycles,
                                             const std::vector<BitVector>& boundaries) {
  std::size_t dim = 0;
  if (!cycles.empty()) dim = cycles.front().size();
  else if (!boundaries.empty()) dim = boundaries.front().size();

  EchelonBasis cycle_span(dim);
  for (const auto& z : cycles) cycle_span.insert(z);
  for (const auto& b : boundaries)
    if (!cycle_span.contains(b)) throw std::invalid_argument("gf2: boundary outside the cycle span");

  EchelonBasis acc(dim);
  for (const auto& b : boundaries) acc.insert(b);
  std::vector<BitVector> reps;
  for (const auto& z : cycles)
    if (acc.insert(z)) reps.push_back(z);
  return reps;
}

// Sparse matrix stored as columns of sorted row indices.
struct SparseColumns {
  std::size_t rows = 0;
  std::vector<std::vector<std::uint32_t>> cols;
};

// Symmetric difference of two sorted index lists.
inline std::vector<std::uint32_t> sym_diff(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Rank by the standard column reduction (pivot = lowest nonzero, i.e. the
// largest row index).
inline std::size_t sparse_rank(const SparseColumns& m) {
  constexpr std::uint32_t none = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> owner(m.rows, none);
  std::vector<std::vector<std::uint32_t>> reduced;
  reduced.reserve(m.cols.size());
  std::size_t r = 0;
  for (const auto& col : m.cols) {
    std::vector<std::uint32_t> c = col;
    while (!c.empty() && owner[c.back()] != none) c = sym_diff(c, reduced[owner[c.back()]]);
    if (!c.empty()) {
      owner[c.back()] = static_cast<std::uint32_t>(reduced.size());
      ++r;
    }
    reduced.push_back(std::move(c));
  }
  return r;
}

}  // namespace tcg::gf2
