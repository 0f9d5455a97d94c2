#pragma once

// Canonical labeling of check/bit incidence structures under independent
// row and column permutations (the two parts are never mixed), plus the
// structure-orbit BFS built on it.
//
// The canonical form is the lexicographically minimal packed adjacency over
// the leaves of an individualization-refinement tree. Three sound prunings
// keep the tree small on the highly symmetric graphs seen here:
//   - equitable refinement (neighbor-count splitting) between branchings,
//   - abort of a sibling subtree as soon as one of its leaves ties the
//     minimum of an already-explored sibling (the tie yields an automorphism
//     fixing the common prefix, so the two subtrees have equal minima),
//   - orbit pruning at the root cell using automorphisms discovered from
//     equal leaf encodings.

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "elcdec/gf2.hpp"
#include "elcdec/tanner.hpp"

namespace elcdec {

struct StructureId {
  std::string canonical;
  std::size_t weight = 0;
  std::uint64_t four_cycles = 0;

  std::uint64_t hash() const { return std::hash<std::string>{}(canonical); }
  bool operator==(const StructureId& o) const { return canonical == o.canonical; }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void merge(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

class CanonSearch {
 public:
  explicit CanonSearch(const BinMatrix& h)
      : m_(h.rows()), n_(h.cols()), v_(m_ + n_), words_(words_for_bits(v_)),
        adj_(v_ * words_, 0), uf_(v_) {
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t i = 0; i < n_; ++i)
        if (h.get(j, i)) {
          set_adj(j, m_ + i);
          set_adj(m_ + i, j);
        }
    h_ = &h;
  }

  std::string run() {
    Partition p = initial_partition();
    frames_.clear();
    search(p, 0);
    return best_.value();
  }

 private:
  struct Partition {
    std::vector<int> order;       // vertices by position
    std::vector<int> pos;         // vertex -> position
    std::vector<int> cell_start;  // position -> start of containing cell
    std::vector<int> cell_len;    // valid at cell starts
  };

  struct Frame {
    std::optional<std::string> node_best;
  };

  // Returns the subtree minimum; abort_depth_ >= 0 on the way out means an
  // ancestor at that depth already knows this value.
  std::string search(Partition p, int depth) {
    refine(p);
    int target = first_nonsingleton(p);
    if (target < 0) {
      std::string enc = encode(p);
      on_leaf(enc, p);
      return enc;
    }

    frames_.push_back(Frame{});
    std::vector<int> members(p.order.begin() + target,
                             p.order.begin() + target + p.cell_len[target]);
    std::sort(members.begin(), members.end());

    std::vector<int> explored;
    for (int v : members) {
      if (depth == 0) {
        bool pruned = false;
        for (int u : explored)
          if (uf_.find(static_cast<std::size_t>(u)) ==
              uf_.find(static_cast<std::size_t>(v))) {
            pruned = true;
            break;
          }
        if (pruned) continue;
      }
      Partition child = p;
      individualize(child, target, v);
      std::string enc = search(std::move(child), depth + 1);
      explored.push_back(v);

      Frame& me = frames_[depth];
      if (abort_depth_ >= 0) {
        if (abort_depth_ < depth) {
          frames_.pop_back();
          return enc;  // keep unwinding
        }
        abort_depth_ = -1;  // tie resolved at this level
      }
      if (!me.node_best || enc < *me.node_best) me.node_best = std::move(enc);
    }
    std::string out = std::move(*frames_[depth].node_best);
    frames_.pop_back();
    return out;
  }

  void on_leaf(const std::string& enc, const Partition& p) {
    if (!best_ || enc < *best_) {
      best_ = enc;
      best_order_ = p.order;
    } else if (enc == *best_) {
      // Equal encodings compose to an automorphism; feed the orbit partition.
      std::vector<int> pos1(v_);
      for (std::size_t i = 0; i < v_; ++i) pos1[best_order_[i]] = static_cast<int>(i);
      for (std::size_t x = 0; x < v_; ++x)
        uf_.merge(x, static_cast<std::size_t>(p.order[pos1[x]]));
    }
    for (std::size_t d = 0; d < frames_.size(); ++d)
      if (frames_[d].node_best && *frames_[d].node_best == enc) {
        abort_depth_ = static_cast<int>(d);
        return;
      }
  }

  Partition initial_partition() const {
    Partition p;
    p.order.resize(v_);
    p.pos.resize(v_);
    p.cell_start.assign(v_, 0);
    p.cell_len.assign(v_, 0);
    for (std::size_t i = 0; i < v_; ++i) {
      p.order[i] = static_cast<int>(i);
      p.pos[i] = static_cast<int>(i);
    }
    // rows first, cols second; the two parts are separate cells from the start
    for (std::size_t i = 0; i < v_; ++i) p.cell_start[i] = i < m_ ? 0 : static_cast<int>(m_);
    p.cell_len[0] = static_cast<int>(m_);
    if (n_ > 0) p.cell_len[m_] = static_cast<int>(n_);
    return p;
  }

  // Equitable refinement: repeat full (splitter cell, target cell) passes,
  // splitting targets by neighbor count, until a pass changes nothing.
  // Cells are visited in position order, so the result is invariant under
  // consistent relabeling.
  void refine(Partition& p) const {
    std::vector<std::uint64_t> mask(words_);
    std::vector<std::pair<int, int>> keyed;  // (count, vertex)
    bool changed = true;
    while (changed) {
      changed = false;
      for (int ws = 0; ws < static_cast<int>(v_); ws += p.cell_len[ws]) {
        std::fill(mask.begin(), mask.end(), 0);
        for (int t = ws; t < ws + p.cell_len[ws]; ++t) {
          int u = p.order[t];
          mask[u / kWordBits] |= std::uint64_t{1} << (u % kWordBits);
        }
        for (int xs = 0; xs < static_cast<int>(v_); xs += p.cell_len[xs]) {
          const int len = p.cell_len[xs];
          if (len == 1) continue;
          keyed.clear();
          int first_count = -1;
          bool uniform = true;
          for (int t = xs; t < xs + len; ++t) {
            int c = count_in(p.order[t], mask);
            if (first_count < 0)
              first_count = c;
            else if (c != first_count)
              uniform = false;
            keyed.emplace_back(c, p.order[t]);
          }
          if (uniform) continue;
          std::stable_sort(keyed.begin(), keyed.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
          int start = xs;
          for (int t = 0; t < len; ++t) {
            if (t > 0 && keyed[t].first != keyed[t - 1].first) start = xs + t;
            p.order[xs + t] = keyed[t].second;
            p.pos[keyed[t].second] = xs + t;
            p.cell_start[xs + t] = start;
          }
          for (int t = xs; t < xs + len; ++t)
            if (p.cell_start[t] == t) {
              int end = t + 1;
              while (end < xs + len && p.cell_start[end] == t) ++end;
              p.cell_len[t] = end - t;
            }
          changed = true;
        }
      }
    }
  }

  static void individualize(Partition& p, int cell, int v) {
    int vp = p.pos[v];
    std::swap(p.order[cell], p.order[vp]);
    p.pos[p.order[vp]] = vp;
    p.pos[v] = cell;
    int len = p.cell_len[cell];
    p.cell_len[cell] = 1;
    p.cell_start[cell] = cell;
    if (len > 1) {
      for (int t = cell + 1; t < cell + len; ++t) p.cell_start[t] = cell + 1;
      p.cell_len[cell + 1] = len - 1;
    }
  }

  int first_nonsingleton(const Partition& p) const {
    for (int s = 0; s < static_cast<int>(v_); s += p.cell_len[s])
      if (p.cell_len[s] > 1) return s;
    return -1;
  }

  std::string encode(const Partition& p) const {
    std::vector<int> rows, cols;
    rows.reserve(m_);
    cols.reserve(n_);
    for (std::size_t t = 0; t < v_; ++t) {
      int u = p.order[t];
      if (u < static_cast<int>(m_))
        rows.push_back(u);
      else
        cols.push_back(u - static_cast<int>(m_));
    }
    const std::size_t row_bytes = (n_ + 7) / 8;
    std::string enc(8 + m_ * row_bytes, '\0');
    enc[0] = static_cast<char>(m_ & 0xff);
    enc[1] = static_cast<char>((m_ >> 8) & 0xff);
    enc[2] = static_cast<char>(n_ & 0xff);
    enc[3] = static_cast<char>((n_ >> 8) & 0xff);
    for (std::size_t r = 0; r < m_; ++r)
      for (std::size_t c = 0; c < n_; ++c)
        if (h_->get(rows[r], cols[c]))
          enc[8 + r * row_bytes + c / 8] |= static_cast<char>(1 << (c % 8));
    return enc;
  }

  int count_in(int v, const std::vector<std::uint64_t>& mask) const {
    const std::uint64_t* a = adj_.data() + static_cast<std::size_t>(v) * words_;
    int c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w] & mask[w]);
    return c;
  }

  void set_adj(std::size_t a, std::size_t b) {
    adj_[a * words_ + b / kWordBits] |= std::uint64_t{1} << (b % kWordBits);
  }

  std::size_t m_, n_, v_, words_;
  std::vector<std::uint64_t> adj_;
  const BinMatrix* h_ = nullptr;
  UnionFind uf_;
  std::vector<Frame> frames_;
  std::optional<std::string> best_;
  std::vector<int> best_order_;
  int abort_depth_ = -1;
};

}  // namespace detail

inline StructureId canonical_form(const BinMatrix& h) {
  detail::CanonSearch cs(h);
  return {cs.run(), weight(h), four_cycles(h)};
}

inline StructureId canonical_form(const TannerGraph& tg) {
  return canonical_form(tg.to_matrix());
}

struct SOrbitEntry {
  StructureId id;
  std::uint64_t multiplicity = 0;  // BFS encounters, discovery included
};

struct SOrbitResult {
  std::vector<SOrbitEntry> structures;
  bool overflowed = false;
};

// BFS over structures: expand one representative per structure along every
// eligible edge, canonicalize, insert if new. Expanding a single
// representative suffices because ELC commutes with relabeling.
inline SOrbitResult s_orbit(const TannerGraph& start, std::size_t cap) {
  SOrbitResult out;
  std::unordered_map<std::string, std::size_t> index;
  std::deque<TannerGraph> frontier;

  auto intern = [&](const TannerGraph& g) -> std::pair<std::size_t, bool> {
    StructureId sid = canonical_form(g);
    auto it = index.find(sid.canonical);
    if (it != index.end()) {
      ++out.structures[it->second].multiplicity;
      return {it->second, false};
    }
    std::size_t idx = out.structures.size();
    index.emplace(sid.canonical, idx);
    out.structures.push_back({std::move(sid), 1});
    return {idx, true};
  };

  intern(start);
  frontier.push_back(start);
  while (!frontier.empty()) {
    TannerGraph g = std::move(frontier.front());
    frontier.pop_front();
    for (std::size_t j = 0; j < g.check_count(); ++j) {
      std::vector<std::uint32_t> bits;
      g.for_each_bit_of_check(j, [&](std::size_t i) {
        if (i != g.pairing(j)) bits.push_back(static_cast<std::uint32_t>(i));
      });
      for (std::uint32_t v : bits) {
        TannerGraph ng = elc(g, static_cast<std::uint32_t>(j), v);
        auto [idx, fresh] = intern(ng);
        if (fresh) {
          if (out.structures.size() > cap) {
            out.overflowed = true;
            return out;
          }
          frontier.push_back(std::move(ng));
        }
      }
    }
  }
  return out;
}

}  // namespace elcdec
