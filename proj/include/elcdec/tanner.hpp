#pragma once

// Tanner graph of a standard-form parity-check matrix, the edge local
// complementation (ELC) operation, and orbit machinery built on it:
// labeled-orbit enumeration and the brute-force information-set counter.
//
// ELC on edge (check j, bit v) is implemented as a Gaussian pivot: every
// other check incident to v absorbs row j, after which column v is the unit
// column of check j. Standard form is therefore preserved by construction,
// and the touched incidences are confined to rows N_v \ {j} and the support
// of row j.

#include <cstdint>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "elcdec/errors.hpp"
#include "elcdec/gf2.hpp"

namespace elcdec {

struct EdgeRef {
  std::uint32_t check;
  std::uint32_t bit;
  bool operator==(const EdgeRef&) const = default;
};

// Incidences created/removed by one ELC, for message bookkeeping in the
// decoder. old_pivot is the bit that lost its pivot role.
struct ElcDelta {
  std::vector<EdgeRef> created;
  std::vector<EdgeRef> removed;
  std::uint32_t check = 0;
  std::uint32_t old_pivot = 0;
  std::uint32_t new_pivot = 0;
};

class TannerGraph {
 public:
  TannerGraph() = default;

  // H must already be in standard form: the constructor pairs each check
  // with the leftmost unit column that can serve as its pivot.
  static TannerGraph from_matrix(const BinMatrix& h) {
    TannerGraph tg;
    tg.init_incidence(h);
    const std::size_t m = h.rows();
    tg.pairing_.assign(m, kUnpaired);
    for (std::size_t c = 0; c < h.cols(); ++c) {
      if (tg.bit_degree(c) != 1) continue;
      std::size_t j = tg.first_check_of(c);
      if (tg.pairing_[j] == kUnpaired) tg.pairing_[j] = static_cast<std::uint32_t>(c);
    }
    for (std::size_t j = 0; j < m; ++j)
      if (tg.pairing_[j] == kUnpaired)
        throw Error("TannerGraph: matrix is not in standard form (check " +
                    std::to_string(j) + " has no unit column)");
    return tg;
  }

  static TannerGraph from_matrix(const BinMatrix& h, const StandardFormInfo& info) {
    TannerGraph tg;
    tg.init_incidence(h);
    tg.pairing_.resize(h.rows());
    for (std::size_t j = 0; j < h.rows(); ++j) {
      std::size_t c = info.pivot_of_row[j];
      if (tg.bit_degree(c) != 1 || !tg.incidence(j, c))
        throw Error("TannerGraph: pivot map does not match matrix");
      tg.pairing_[j] = static_cast<std::uint32_t>(c);
    }
    return tg;
  }

  BinMatrix to_matrix() const {
    BinMatrix h(m_, n_);
    for (std::size_t j = 0; j < m_; ++j) {
      auto dst = h.row(j);
      for (std::size_t w = 0; w < wn_; ++w) dst[w] = rows_[j * wn_ + w];
    }
    return h;
  }

  std::size_t bit_count() const { return n_; }
  std::size_t check_count() const { return m_; }
  std::size_t edge_count() const { return edges_; }

  bool incidence(std::size_t check, std::size_t bit) const {
    return (rows_[check * wn_ + bit / kWordBits] >> (bit % kWordBits)) & 1u;
  }
  std::uint32_t pairing(std::size_t check) const { return pairing_[check]; }

  std::span<const std::uint64_t> check_row(std::size_t j) const {
    return {rows_.data() + j * wn_, wn_};
  }
  std::span<const std::uint64_t> bit_col(std::size_t i) const {
    return {cols_.data() + i * wm_, wm_};
  }

  std::size_t check_degree(std::size_t j) const {
    std::size_t t = 0;
    for (auto w : check_row(j)) t += static_cast<std::size_t>(std::popcount(w));
    return t;
  }
  std::size_t bit_degree(std::size_t i) const {
    std::size_t t = 0;
    for (auto w : bit_col(i)) t += static_cast<std::size_t>(std::popcount(w));
    return t;
  }

  template <typename F>
  void for_each_bit_of_check(std::size_t j, F&& f) const {
    for_each_set(check_row(j), n_, std::forward<F>(f));
  }
  template <typename F>
  void for_each_check_of_bit(std::size_t i, F&& f) const {
    for_each_set(bit_col(i), m_, std::forward<F>(f));
  }

  bool syndrome_zero(const BitVec& word) const {
    for (std::size_t j = 0; j < m_; ++j)
      if (dot_parity(check_row(j), word.words())) return false;
    return true;
  }

  // Pivot on (check, bit). Throws NoSuchEdge / PivotBit on ineligible input.
  ElcDelta apply_elc(std::uint32_t check, std::uint32_t bit) {
    if (check >= m_ || bit >= n_ || !incidence(check, bit))
      throw NoSuchEdge("elc: no edge (" + std::to_string(check) + ", " +
                       std::to_string(bit) + ")");
    if (pairing_[check] == bit)
      throw PivotBit("elc: bit " + std::to_string(bit) + " is the pivot of check " +
                     std::to_string(check));

    ElcDelta delta;
    delta.check = check;
    delta.old_pivot = pairing_[check];
    delta.new_pivot = bit;

    std::vector<std::uint32_t> support;
    support.reserve(check_degree(check));
    for_each_bit_of_check(check, [&](std::size_t i) {
      support.push_back(static_cast<std::uint32_t>(i));
    });

    std::vector<std::uint32_t> sharers;
    for_each_check_of_bit(bit, [&](std::size_t j2) {
      if (j2 != check) sharers.push_back(static_cast<std::uint32_t>(j2));
    });

    for (std::uint32_t j2 : sharers) {
      for (std::uint32_t i : support) {
        const std::uint64_t mask = std::uint64_t{1} << (j2 % kWordBits);
        std::uint64_t& cw = cols_[i * wm_ + j2 / kWordBits];
        if (cw & mask) {
          delta.removed.push_back({j2, i});
          --edges_;
        } else {
          delta.created.push_back({j2, i});
          ++edges_;
        }
        cw ^= mask;
      }
      auto* dst = rows_.data() + j2 * wn_;
      const auto* src = rows_.data() + check * wn_;
      for (std::size_t w = 0; w < wn_; ++w) dst[w] ^= src[w];
    }
    pairing_[check] = bit;
    return delta;
  }

  // Eligible ELC edges are all incidences except check/own-pivot pairs.
  std::size_t eligible_edge_count() const { return edges_ - m_; }

  // k-th eligible edge in (check-major, bit-minor) order; k < eligible_edge_count().
  EdgeRef eligible_edge(std::size_t k) const {
    for (std::size_t j = 0; j < m_; ++j) {
      std::size_t d = check_degree(j) - 1;
      if (k >= d) {
        k -= d;
        continue;
      }
      std::uint32_t found = kUnpaired;
      std::size_t idx = 0;
      for_each_bit_of_check(j, [&](std::size_t i) {
        if (i == pairing_[j]) return;
        if (idx == k && found == kUnpaired) found = static_cast<std::uint32_t>(i);
        ++idx;
      });
      return {static_cast<std::uint32_t>(j), found};
    }
    throw Error("eligible_edge: index out of range");
  }

  // Dedup key for labeled-orbit search: (row bytes, pivot) pairs sorted, so
  // that check order is not part of graph identity. The pivot must be part
  // of the key: a row owning several weight-1 columns yields one matrix but
  // several graphs, one per choice of pivot bit, and each corresponds to its
  // own information set.
  std::string sorted_row_key() const {
    std::vector<std::string> rows;
    rows.reserve(m_);
    for (std::size_t j = 0; j < m_; ++j) {
      std::string r(reinterpret_cast<const char*>(rows_.data() + j * wn_),
                    wn_ * sizeof(std::uint64_t));
      r.push_back(static_cast<char>(pairing_[j] & 0xff));
      r.push_back(static_cast<char>((pairing_[j] >> 8) & 0xff));
      rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end());
    std::string key;
    key.reserve(m_ * (wn_ * sizeof(std::uint64_t) + 2));
    for (auto& r : rows) key += r;
    return key;
  }

  bool operator==(const TannerGraph&) const = default;

 private:
  static constexpr std::uint32_t kUnpaired = 0xffffffffu;

  void init_incidence(const BinMatrix& h) {
    n_ = h.cols();
    m_ = h.rows();
    wn_ = words_for_bits(n_);
    wm_ = words_for_bits(m_);
    rows_.assign(m_ * wn_, 0);
    cols_.assign(n_ * wm_, 0);
    edges_ = 0;
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t i = 0; i < n_; ++i)
        if (h.get(j, i)) {
          rows_[j * wn_ + i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
          cols_[i * wm_ + j / kWordBits] |= std::uint64_t{1} << (j % kWordBits);
          ++edges_;
        }
  }

  std::size_t first_check_of(std::size_t bit) const {
    auto col = bit_col(bit);
    for (std::size_t w = 0; w < col.size(); ++w)
      if (col[w]) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(col[w]));
    throw Error("bit has no incident check");
  }

  template <typename F>
  static void for_each_set(std::span<const std::uint64_t> words, std::size_t limit, F&& f) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t x = words[w];
      while (x) {
        std::size_t idx = w * kWordBits + static_cast<std::size_t>(std::countr_zero(x));
        if (idx < limit) f(idx);
        x &= x - 1;
      }
    }
  }

  std::size_t n_ = 0, m_ = 0, wn_ = 0, wm_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint64_t> rows_;  // m x wn incidence
  std::vector<std::uint64_t> cols_;  // n x wm transpose view
  std::vector<std::uint32_t> pairing_;
};

inline TannerGraph elc(const TannerGraph& tg, std::uint32_t check, std::uint32_t bit) {
  TannerGraph out = tg;
  out.apply_elc(check, bit);
  return out;
}

struct OrbitCount {
  std::uint64_t size = 0;
  bool overflowed = false;
};

// BFS over the vertex-labeled ELC orbit, deduplicated by sorted row bytes.
// Stops (with the flag set) as soon as the count exceeds cap.
inline OrbitCount labeled_orbit_size(const TannerGraph& start, std::uint64_t cap) {
  std::unordered_set<std::string> seen;
  std::queue<TannerGraph> frontier;
  seen.insert(start.sorted_row_key());
  frontier.push(start);
  while (!frontier.empty()) {
    TannerGraph g = std::move(frontier.front());
    frontier.pop();
    for (std::size_t j = 0; j < g.check_count(); ++j) {
      std::vector<std::uint32_t> bits;
      g.for_each_bit_of_check(j, [&](std::size_t i) {
        if (i != g.pairing(j)) bits.push_back(static_cast<std::uint32_t>(i));
      });
      for (std::uint32_t v : bits) {
        TannerGraph ng = elc(g, static_cast<std::uint32_t>(j), v);
        if (seen.insert(ng.sorted_row_key()).second) {
          if (seen.size() > cap) return {seen.size(), true};
          frontier.push(std::move(ng));
        }
      }
    }
  }
  return {seen.size(), false};
}

// Number of (n-k)-subsets of columns with full rank, k = n - rank(H).
// Enumerates independent subsets only, so dependent prefixes prune early.
inline std::uint64_t count_information_sets(const BinMatrix& h) {
  const std::size_t n = h.cols();
  if (n > 32) throw TooLarge("count_information_sets: n > 32");
  const std::size_t m = h.rows();
  const std::size_t r = rank(h);

  std::vector<std::uint32_t> colmask(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (h.get(j, i)) colmask[i] |= std::uint32_t{1} << j;

  std::vector<std::uint32_t> basis;  // reduced: distinct leading bits
  std::uint64_t count = 0;

  auto reduce = [&](std::uint32_t v) {
    for (std::uint32_t b : basis) {
      std::uint32_t lead = std::uint32_t{1} << (31 - std::countl_zero(b));
      if (v & lead) v ^= b;
    }
    return v;
  };

  auto recur = [&](auto&& self, std::size_t next, std::size_t depth) -> void {
    if (depth == r) {
      ++count;
      return;
    }
    for (std::size_t c = next; c + (r - depth) <= n; ++c) {
      std::uint32_t v = reduce(colmask[c]);
      if (!v) continue;
      basis.push_back(v);
      self(self, c + 1, depth + 1);
      basis.pop_back();
    }
  };
  if (r == 0) return 0;
  recur(recur, 0, 0);
  return count;
}

}  // namespace elcdec
