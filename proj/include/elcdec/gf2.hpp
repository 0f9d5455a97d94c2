#pragma once

// Dense GF(2) linear algebra on bit-packed rows: echelon forms, standard
// form, nullspace bases, and the weight/4-cycle metrics used to rate
// parity-check matrices.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "elcdec/errors.hpp"

namespace elcdec {

inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for_bits(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Bit vector over GF(2), packed 64 bits per word. Trailing bits of the last
// word are kept zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_(words_for_bits(n), 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (v)
      w_[i / kWordBits] |= mask;
    else
      w_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) { w_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

  std::size_t weight() const {
    std::size_t t = 0;
    for (auto w : w_) t += static_cast<std::size_t>(std::popcount(w));
    return t;
  }

  void xor_with(std::span<const std::uint64_t> other) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= other[i];
  }

  std::span<const std::uint64_t> words() const { return w_; }
  std::span<std::uint64_t> words() { return w_; }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  bool operator==(const BitVec&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Parity of <a, b> over GF(2); spans must have equal length.
inline bool dot_parity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1u;
}

// Dense binary matrix with bit-packed rows. Values are immutable once shared;
// operations below return fresh matrices.
class BinMatrix {
 public:
  BinMatrix() = default;
  BinMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_(words_for_bits(cols)), bits_(rows * wpr_, 0) {}

  // Rows given as strings of '0'/'1', e.g. {"110", "011"}. Test convenience.
  static BinMatrix from_rows(const std::vector<std::string>& rows) {
    BinMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c)
        if (rows[r][c] == '1') m.set(r, c, true);
    return m;
  }

  static BinMatrix identity(std::size_t n) {
    BinMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * wpr_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
    if (v)
      bits_[r * wpr_ + c / kWordBits] |= mask;
    else
      bits_[r * wpr_ + c / kWordBits] &= ~mask;
  }

  std::span<const std::uint64_t> row(std::size_t r) const {
    return {bits_.data() + r * wpr_, wpr_};
  }
  std::span<std::uint64_t> row(std::size_t r) { return {bits_.data() + r * wpr_, wpr_}; }

  // row[dst] ^= row[src]
  void xor_row_into(std::size_t src, std::size_t dst) {
    auto* s = bits_.data() + src * wpr_;
    auto* d = bits_.data() + dst * wpr_;
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < wpr_; ++i)
      std::swap(bits_[a * wpr_ + i], bits_[b * wpr_ + i]);
  }

  std::size_t row_weight(std::size_t r) const {
    std::size_t t = 0;
    for (auto w : row(r)) t += static_cast<std::size_t>(std::popcount(w));
    return t;
  }

  bool row_empty(std::size_t r) const {
    for (auto w : row(r))
      if (w) return false;
    return true;
  }

  BitVec row_as_vec(std::size_t r) const {
    BitVec v(cols_);
    auto src = row(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
  }

  void set_row(std::size_t r, const BitVec& v) {
    auto dst = row(r);
    std::copy(v.words().begin(), v.words().end(), dst.begin());
  }

  bool operator==(const BinMatrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline BinMatrix transpose(const BinMatrix& m) {
  BinMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) t.set(c, r, true);
  return t;
}

// A (a x b) times B (b x c); row-major accumulate keeps this at one word-XOR
// pass per set bit of A.
inline BinMatrix multiply(const BinMatrix& a, const BinMatrix& b) {
  BinMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.get(r, j)) {
        auto src = b.row(j);
        auto dst = out.row(r);
        for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
      }
  return out;
}

inline bool is_zero(const BinMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row_empty(r)) return false;
  return true;
}

// c * H^T == 0, computed without materializing the transpose.
inline bool syndrome_is_zero(const BitVec& c, const BinMatrix& h) {
  for (std::size_t j = 0; j < h.rows(); ++j)
    if (dot_parity(h.row(j), c.words())) return false;
  return true;
}

struct RrefResult {
  BinMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Unique reduced row echelon form over GF(2); row space preserved.
inline RrefResult rref(BinMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (m.get(i, c)) {
        sel = i;
        break;
      }
    if (sel == m.rows()) continue;
    m.swap_rows(sel, r);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.xor_row_into(r, i);
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), pivots.size(), std::move(pivots)};
}

inline std::size_t rank(const BinMatrix& m) { return rref(m).rank; }

// Pivot bookkeeping for a standard-form matrix: row j owns unit column
// pivot_of_row[j]; info_cols are the remaining k columns.
struct StandardFormInfo {
  std::vector<std::size_t> pivot_of_row;
  std::vector<std::size_t> info_cols;
};

// Row operations only; pivots are chosen by a left-to-right column scan, so
// the output is deterministic (it is the RREF of the input).
inline std::pair<BinMatrix, StandardFormInfo> standard_form(const BinMatrix& h) {
  RrefResult r = rref(h);
  if (r.rank < h.rows())
    throw RankDeficient("standard_form: matrix has rank " + std::to_string(r.rank) +
                        " < " + std::to_string(h.rows()) + " rows");
  StandardFormInfo info;
  info.pivot_of_row = r.pivot_cols;
  std::vector<char> is_pivot(h.cols(), 0);
  for (auto c : r.pivot_cols) is_pivot[c] = 1;
  for (std::size_t c = 0; c < h.cols(); ++c)
    if (!is_pivot[c]) info.info_cols.push_back(c);
  return {std::move(r.matrix), std::move(info)};
}

// Nullspace basis of H: a k x n matrix G with G H^T = 0 and rank k.
inline BinMatrix generator_from_h(const BinMatrix& h) {
  auto [r, info] = standard_form(h);
  const std::size_t k = info.info_cols.size();
  BinMatrix g(k, h.cols());
  for (std::size_t gi = 0; gi < k; ++gi) {
    const std::size_t f = info.info_cols[gi];
    g.set(gi, f, true);
    for (std::size_t j = 0; j < r.rows(); ++j)
      if (r.get(j, f)) g.set(gi, info.pivot_of_row[j], true);
  }
  return g;
}

inline bool row_space_equal(const BinMatrix& a, const BinMatrix& b) {
  if (a.cols() != b.cols()) throw Error("row_space_equal: column counts differ");
  RrefResult ra = rref(a), rb = rref(b);
  if (ra.rank != rb.rank) return false;
  for (std::size_t j = 0; j < ra.rank; ++j)
    if (!std::equal(ra.matrix.row(j).begin(), ra.matrix.row(j).end(),
                    rb.matrix.row(j).begin()))
      return false;
  return true;
}

inline std::size_t weight(const BinMatrix& m) {
  std::size_t t = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) t += m.row_weight(r);
  return t;
}

// Number of 4-cycles in the Tanner graph of H: pairs of rows sharing a pair
// of columns. Counting over row pairs is equivalent to the column-pair sum
// of C(overlap, 2) and maps directly onto the row-major packing.
inline std::uint64_t four_cycles(const BinMatrix& m) {
  std::uint64_t total = 0;
  for (std::size_t a = 0; a + 1 < m.rows(); ++a) {
    auto ra = m.row(a);
    for (std::size_t b = a + 1; b < m.rows(); ++b) {
      auto rb = m.row(b);
      std::uint64_t o = 0;
      for (std::size_t w = 0; w < ra.size(); ++w)
        o += static_cast<std::uint64_t>(std::popcount(ra[w] & rb[w]));
      total += o * (o - 1) / 2;
    }
  }
  return total;
}

inline constexpr std::size_t kMinDistanceMaxK = 26;

// Minimum Hamming weight over all 2^k - 1 nonzero codewords of the code
// spanned by G, visited in Gray-code order (one row XOR per step).
inline std::size_t min_distance(const BinMatrix& g) {
  const std::size_t k = g.rows();
  if (k == 0) throw Error("min_distance: empty generator");
  if (k > kMinDistanceMaxK)
    throw TooLarge("min_distance: k = " + std::to_string(k) + " exceeds enumeration budget");
  if (rank(g) < k) throw RankDeficient("min_distance: generator rows are dependent");

  BitVec cur(g.cols());
  std::size_t best = g.cols() + 1;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    cur.xor_with(g.row(static_cast<std::size_t>(std::countr_zero(i))));
    best = std::min(best, cur.weight());
  }
  return best;
}

}  // namespace elcdec
