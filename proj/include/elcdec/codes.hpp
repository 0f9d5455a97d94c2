#pragma once

// Code constructions and parity-check-matrix optimization: binary quadratic
// residue codes of prime length (2 a residue mod p), the overall-parity
// extension, alist-backed load/save, and the greedy weight/4-cycle reduction
// heuristics (unrestricted row additions, or ELC moves that keep the matrix
// in standard form).

#include <cstdint>
#include <filesystem>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "elcdec/alist.hpp"
#include "elcdec/errors.hpp"
#include "elcdec/gf2.hpp"
#include "elcdec/gf2m.hpp"
#include "elcdec/numtheory.hpp"
#include "elcdec/tanner.hpp"

namespace elcdec {

struct Provenance {
  enum class Kind { constructed, loaded, reduced };
  Kind kind = Kind::constructed;
  std::string detail;

  std::string to_string() const {
    switch (kind) {
      case Kind::constructed: return "constructed(" + detail + ")";
      case Kind::loaded: return "loaded(" + detail + ")";
      case Kind::reduced: return "reduced(" + detail + ")";
    }
    return detail;
  }
};

struct CodeSpec {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  std::optional<std::size_t> d;  // set only when verified by enumeration
  BinMatrix H;
  Provenance provenance;

  double rate() const { return static_cast<double>(k) / static_cast<double>(n); }
};

// Generator and check polynomials of the length-p QR code, as 0/1 coefficient
// vectors in ascending degree order. g has the nonzero quadratic residues as
// root exponents; h = (x^p - 1)/g picks up the non-residues and x - 1.
struct QrPolynomials {
  std::vector<std::uint8_t> g;
  std::vector<std::uint8_t> h;
};

inline QrPolynomials qr_polynomials(std::uint32_t p) {
  if (!detail::is_prime(p) || p == 2)
    throw NotQrPrime(std::to_string(p) + " is not an odd prime");
  auto qr = detail::quadratic_residues(p);
  if (!qr[2 % p])
    throw NotQrPrime("2 is not a quadratic residue mod " + std::to_string(p));

  const unsigned m = detail::multiplicative_order(2, p);
  GF2m field(m);
  const std::uint64_t exp = field.order() / p;  // exact: ord_p(2) = m

  std::uint64_t alpha = 0;
  for (std::uint64_t beta = 2;; ++beta) {
    alpha = field.pow(beta, exp);
    if (alpha != 1) break;  // order is then exactly p
  }

  // multiply out prod (x + alpha^r) over the chosen root exponents
  auto build = [&](auto&& want_root, bool with_x_plus_1) {
    std::vector<std::uint64_t> poly{1};
    auto mul_linear = [&](std::uint64_t root) {
      std::vector<std::uint64_t> next(poly.size() + 1, 0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] ^= poly[i];
        next[i] ^= field.mul(poly[i], root);
      }
      poly = std::move(next);
    };
    for (std::uint32_t r = 1; r < p; ++r)
      if (want_root(r)) mul_linear(field.pow(alpha, r));
    if (with_x_plus_1) mul_linear(1);  // root alpha^0 = 1
    std::vector<std::uint8_t> out(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (poly[i] > 1)
        throw Error("qr construction: coefficient not in GF(2)");
      out[i] = static_cast<std::uint8_t>(poly[i]);
    }
    return out;
  };

  QrPolynomials out;
  out.g = build([&](std::uint32_t r) { return qr[r] != 0; }, false);
  out.h = build([&](std::uint32_t r) { return qr[r] == 0; }, true);
  return out;
}

// Cyclic QR code of prime length p with dimension (p+1)/2. H rows are the
// cyclic shifts of the reversed check polynomial.
inline CodeSpec qr_code(std::uint32_t p) {
  QrPolynomials poly = qr_polynomials(p);
  const std::size_t n = p;
  const std::size_t k = (p + 1) / 2;
  const std::size_t deg_h = poly.h.size() - 1;  // == k

  BinMatrix h(n - k, n);
  for (std::size_t j = 0; j < n - k; ++j)
    for (std::size_t s = 0; s <= deg_h; ++s)
      if (poly.h[deg_h - s]) h.set(j, j + s, true);

  if (rank(h) != n - k) throw Error("qr construction: check matrix rank mismatch");

  CodeSpec code;
  code.name = "qr" + std::to_string(p);
  code.n = n;
  code.k = k;
  code.H = std::move(h);
  code.provenance = {Provenance::Kind::constructed, "qr(" + std::to_string(p) + ")"};
  return code;
}

// Append an overall parity coordinate: one extra column plus an all-ones row.
inline CodeSpec extend(const CodeSpec& code) {
  const std::size_t n = code.n, m = code.H.rows();
  BinMatrix h(m + 1, n + 1);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (code.H.get(j, i)) h.set(j, i, true);
  for (std::size_t i = 0; i <= n; ++i) h.set(m, i, true);

  CodeSpec out;
  if (code.name.rfind("qr", 0) == 0)
    out.name = "eqr" + std::to_string(n + 1);
  else
    out.name = code.name + "_ext";
  out.n = n + 1;
  out.k = code.k;
  out.H = std::move(h);
  out.provenance = {Provenance::Kind::constructed, "extend(" + code.name + ")"};
  return out;
}

inline CodeSpec load_alist(const std::string& path) {
  CodeSpec code;
  code.H = alist::load(path);
  code.n = code.H.cols();
  code.k = code.n - rank(code.H);
  code.name = std::filesystem::path(path).stem().string();
  code.provenance = {Provenance::Kind::loaded, path};
  return code;
}

inline void save_alist(const CodeSpec& code, const std::string& path) {
  alist::save(code.H, path);
}

struct ReductionReport {
  std::size_t initial_weight = 0;
  std::uint64_t initial_cycles = 0;
  std::size_t final_weight = 0;
  std::uint64_t final_cycles = 0;
  std::uint64_t moves = 0;  // candidate moves evaluated
  bool restricted_to_standard_form = false;
};

namespace detail {

struct Objective {
  std::size_t w;
  std::uint64_t c;
  bool operator<(const Objective& o) const {
    return w != o.w ? w < o.w : c < o.c;
  }
};

inline Objective objective(const BinMatrix& h) { return {weight(h), four_cycles(h)}; }

inline std::uint64_t pair_choose2(std::uint64_t o) { return o * (o - 1) / 2; }

// Cycle contribution of the pairs involving row i.
inline std::uint64_t cycles_through_row(const BinMatrix& h, std::size_t i,
                                        std::span<const std::uint64_t> row_i) {
  std::uint64_t total = 0;
  for (std::size_t t = 0; t < h.rows(); ++t) {
    if (t == i) continue;
    auto rt = h.row(t);
    std::uint64_t o = 0;
    for (std::size_t w = 0; w < rt.size(); ++w)
      o += static_cast<std::uint64_t>(std::popcount(rt[w] & row_i[w]));
    total += pair_choose2(o);
  }
  return total;
}

// Greedy steepest descent over single row additions: every sweep evaluates
// all ordered pairs and applies the lexicographically best improving move.
// At a local minimum the best matrix is perturbed by adding a few random
// rows into its heaviest row; the subsequent descent has to rebuild that row
// from scratch, which is what lets the search leave basins where no single
// addition improves.
inline std::pair<BinMatrix, std::uint64_t> reduce_rows(const BinMatrix& start,
                                                       std::uint64_t budget,
                                                       std::mt19937_64& rng) {
  const std::size_t m = start.rows();
  BinMatrix cur = start;
  Objective cur_obj = objective(cur);
  BinMatrix best = cur;
  Objective best_obj = cur_obj;
  std::uint64_t evaluated = 0;

  std::vector<std::uint64_t> cand(start.words_per_row());
  while (evaluated < budget && m > 1) {
    bool any = true;
    while (any && evaluated < budget) {
      any = false;
      std::size_t bi = 0, bj = 0;
      long best_dw = 0;
      long long best_dc = 0;
      bool have = false;
      for (std::size_t i = 0; i < m && evaluated < budget; ++i) {
        auto ri = cur.row(i);
        const std::size_t w_old = cur.row_weight(i);
        const std::uint64_t c_old = cycles_through_row(cur, i, ri);
        for (std::size_t j = 0; j < m; ++j) {
          if (i == j) continue;
          if (evaluated >= budget) break;
          ++evaluated;
          auto rj = cur.row(j);
          std::size_t w_new = 0;
          for (std::size_t w = 0; w < cand.size(); ++w) {
            cand[w] = ri[w] ^ rj[w];
            w_new += static_cast<std::size_t>(std::popcount(cand[w]));
          }
          const long dw = static_cast<long>(w_new) - static_cast<long>(w_old);
          if (dw > 0) continue;
          const long long dc = static_cast<long long>(cycles_through_row(cur, i, cand)) -
                               static_cast<long long>(c_old);
          if (dw == 0 && dc >= 0) continue;
          if (!have || dw < best_dw || (dw == best_dw && dc < best_dc)) {
            have = true;
            best_dw = dw;
            best_dc = dc;
            bi = i;
            bj = j;
          }
        }
      }
      if (have) {
        cur.xor_row_into(bj, bi);
        cur_obj.w = static_cast<std::size_t>(static_cast<long>(cur_obj.w) + best_dw);
        cur_obj.c = static_cast<std::uint64_t>(static_cast<long long>(cur_obj.c) + best_dc);
        any = true;
        if (cur_obj < best_obj) {
          best = cur;
          best_obj = cur_obj;
        }
      }
    }
    if (evaluated < budget) {
      cur = best;
      std::size_t heavy = 0;
      for (std::size_t i = 1; i < m; ++i)
        if (cur.row_weight(i) > cur.row_weight(heavy)) heavy = i;
      const std::size_t adds = 1 + static_cast<std::size_t>(rng() % 3);
      for (std::size_t t = 0; t < adds; ++t) {
        std::size_t j = rng() % m;
        if (j != heavy) cur.xor_row_into(j, heavy);
      }
      cur_obj = objective(cur);
    }
  }
  return {std::move(best), evaluated};
}

inline std::uint64_t cycles_among(const BinMatrix& h, const std::vector<std::uint32_t>& rows) {
  // pairs with at least one endpoint in `rows`
  std::vector<char> inset(h.rows(), 0);
  for (auto r : rows) inset[r] = 1;
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < h.rows(); ++a) {
    if (!inset[a]) continue;
    auto ra = h.row(a);
    for (std::size_t b = 0; b < h.rows(); ++b) {
      if (b == a) continue;
      if (inset[b] && b < a) continue;  // count in-set pairs once
      auto rb = h.row(b);
      std::uint64_t o = 0;
      for (std::size_t w = 0; w < ra.size(); ++w)
        o += static_cast<std::uint64_t>(std::popcount(ra[w] & rb[w]));
      total += pair_choose2(o);
    }
  }
  return total;
}

// Same objective, but moves are ELC operations, which preserve standard form.
inline std::pair<BinMatrix, std::uint64_t> reduce_elc(const BinMatrix& standard,
                                                      std::uint64_t budget,
                                                      std::mt19937_64& rng) {
  TannerGraph tg = TannerGraph::from_matrix(standard);
  BinMatrix cur = standard;
  Objective cur_obj = objective(cur);
  BinMatrix best = cur;
  Objective best_obj = cur_obj;
  std::uint64_t evaluated = 0;

  auto try_edge = [&](EdgeRef e) -> std::optional<Objective> {
    // Apply, measure the delta over changed rows, revert unless improving.
    std::vector<std::uint32_t> changed;
    tg.for_each_check_of_bit(e.bit, [&](std::size_t j2) {
      if (j2 != e.check) changed.push_back(static_cast<std::uint32_t>(j2));
    });
    std::uint64_t w_before = 0, c_before = 0;
    for (std::uint32_t r : changed) w_before += tg.check_degree(r);
    c_before = cycles_among(cur, changed);
    const std::uint32_t old_pivot = tg.pairing(e.check);
    tg.apply_elc(e.check, e.bit);
    std::uint64_t w_after = 0;
    for (std::uint32_t r : changed) w_after += tg.check_degree(r);
    BinMatrix after = tg.to_matrix();
    const std::uint64_t c_after = cycles_among(after, changed);
    Objective obj{cur_obj.w - w_before + w_after, cur_obj.c - c_before + c_after};
    if (obj < cur_obj) {
      cur = std::move(after);
      return obj;
    }
    tg.apply_elc(e.check, old_pivot);  // ELC is an involution
    return std::nullopt;
  };

  while (evaluated < budget) {
    bool improved_in_sweep = false;
    std::vector<EdgeRef> edges;
    for (std::size_t j = 0; j < tg.check_count(); ++j)
      tg.for_each_bit_of_check(j, [&](std::size_t i) {
        if (i != tg.pairing(j))
          edges.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)});
      });
    std::shuffle(edges.begin(), edges.end(), rng);
    for (EdgeRef e : edges) {
      if (evaluated >= budget) break;
      ++evaluated;
      if (auto obj = try_edge(e)) {
        cur_obj = *obj;
        improved_in_sweep = true;
        if (cur_obj < best_obj) {
          best = cur;
          best_obj = cur_obj;
        }
        break;  // edge list is stale after a structural move
      }
    }
    if (!improved_in_sweep && evaluated < budget) {
      tg = TannerGraph::from_matrix(best);
      cur = best;
      cur_obj = best_obj;
      std::size_t kicks = 1 + static_cast<std::size_t>(rng() % 8);
      for (std::size_t t = 0; t < kicks && tg.eligible_edge_count() > 0; ++t) {
        EdgeRef e = tg.eligible_edge(rng() % tg.eligible_edge_count());
        tg.apply_elc(e.check, e.bit);
      }
      cur = tg.to_matrix();
      cur_obj = objective(cur);
    }
  }
  return {std::move(best), evaluated};
}

}  // namespace detail

// Lexicographic (weight, 4-cycles) descent. Unrestricted mode moves are
// single row additions; restricted mode ("IP") moves are ELC operations,
// which keep the matrix in standard form. The budget caps candidate-move
// evaluations; restarts perturb the best matrix found so far.
inline std::pair<CodeSpec, ReductionReport> reduce_weight(const CodeSpec& code,
                                                          bool restrict_standard_form,
                                                          std::uint64_t budget,
                                                          std::uint64_t seed) {
  if (rank(code.H) != code.H.rows())
    throw RankDeficient("reduce_weight: H does not have full row rank");

  std::mt19937_64 rng(seed);
  ReductionReport report;
  report.restricted_to_standard_form = restrict_standard_form;

  BinMatrix start = code.H;
  if (restrict_standard_form) start = standard_form(code.H).first;
  report.initial_weight = weight(start);
  report.initial_cycles = four_cycles(start);

  auto [best, evaluated] =
      restrict_standard_form ? detail::reduce_elc(start, budget, rng)
                             : detail::reduce_rows(start, budget, rng);
  report.moves = evaluated;
  report.final_weight = weight(best);
  report.final_cycles = four_cycles(best);

  CodeSpec out;
  out.name = code.name;
  out.n = code.n;
  out.k = code.k;
  out.d = code.d;
  out.H = std::move(best);
  out.provenance = {Provenance::Kind::reduced, code.name};
  return {std::move(out), report};
}

// Row bits as hex, leftmost digit covering columns 0..3 (column 0 is the
// most significant bit of its digit).
inline std::string row_hex(const BinMatrix& h, std::size_t r) {
  static const char* digits = "0123456789abcdef";
  const std::size_t nd = (h.cols() + 3) / 4;
  std::string out(nd, '0');
  for (std::size_t t = 0; t < nd; ++t) {
    int v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      std::size_t c = 4 * t + b;
      if (c < h.cols() && h.get(r, c)) v |= 1 << (3 - b);
    }
    out[t] = digits[v];
  }
  return out;
}

}  // namespace elcdec
