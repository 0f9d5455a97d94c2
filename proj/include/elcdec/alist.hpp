#pragma once

// MacKay alist interchange format for sparse binary matrices.
//
//   n m
//   max_col_deg max_row_deg
//   per-column degrees (n values)
//   per-row degrees (m values)
//   n lines of 1-based row indices, zero-padded to max_col_deg
//   m lines of 1-based column indices, zero-padded to max_row_deg
//
// The writer always pads; the reader accepts both padded and unpadded lists
// (padding zeros are never valid 1-based indices).

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "elcdec/errors.hpp"
#include "elcdec/gf2.hpp"
#include "elcdec/io.hpp"

namespace elcdec::alist {

namespace detail {

class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) toks_.push_back({tok, lineno});
    }
    last_line_ = lineno;
  }

  long next_int(const char* what) {
    if (pos_ >= toks_.size())
      throw ParseError(std::string("unexpected end of file, expected ") + what,
                       last_line_ == 0 ? 1 : last_line_);
    const auto& [tok, line] = toks_[pos_++];
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError("invalid integer '" + tok + "' while reading " + what, line);
    }
  }

  bool peek_is_zero() const {
    return pos_ < toks_.size() && toks_[pos_].first == "0";
  }
  void skip() { ++pos_; }
  bool exhausted() const { return pos_ >= toks_.size(); }
  int line_here() const {
    return pos_ < toks_.size() ? toks_[pos_].second : last_line_;
  }

 private:
  std::vector<std::pair<std::string, int>> toks_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

}  // namespace detail

inline BinMatrix read(std::istream& in) {
  detail::Tokens t(in);
  const long n = t.next_int("column count");
  const long m = t.next_int("row count");
  if (n <= 0 || m <= 0 || n > 1'000'000 || m > 1'000'000)
    throw ParseError("implausible dimensions", 1);
  const long maxcd = t.next_int("max column degree");
  const long maxrd = t.next_int("max row degree");
  if (maxcd < 0 || maxrd < 0 || maxcd > m || maxrd > n)
    throw InconsistentDegrees("declared max degree out of range");

  std::vector<long> col_deg(n), row_deg(m);
  for (long i = 0; i < n; ++i) {
    col_deg[i] = t.next_int("column degree");
    if (col_deg[i] < 0 || col_deg[i] > maxcd)
      throw InconsistentDegrees("column degree exceeds declared maximum");
  }
  for (long j = 0; j < m; ++j) {
    row_deg[j] = t.next_int("row degree");
    if (row_deg[j] < 0 || row_deg[j] > maxrd)
      throw InconsistentDegrees("row degree exceeds declared maximum");
  }

  BinMatrix h(static_cast<std::size_t>(m), static_cast<std::size_t>(n));

  // Column lists define the matrix; subsequent padding zeros are skipped.
  for (long i = 0; i < n; ++i) {
    for (long d = 0; d < col_deg[i]; ++d) {
      long r = t.next_int("row index");
      if (r < 1 || r > m)
        throw InconsistentDegrees("column " + std::to_string(i + 1) +
                                  " names row " + std::to_string(r) +
                                  " outside 1.." + std::to_string(m));
      if (h.get(r - 1, i))
        throw InconsistentDegrees("duplicate entry in column " + std::to_string(i + 1));
      h.set(r - 1, i, true);
    }
    for (long d = col_deg[i]; d < maxcd && t.peek_is_zero(); ++d) t.skip();
  }

  // Row lists must mirror the column lists exactly.
  BinMatrix check(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (long j = 0; j < m; ++j) {
    for (long d = 0; d < row_deg[j]; ++d) {
      long c = t.next_int("column index");
      if (c < 1 || c > n)
        throw InconsistentDegrees("row " + std::to_string(j + 1) + " names column " +
                                  std::to_string(c) + " outside 1.." + std::to_string(n));
      if (check.get(j, c - 1))
        throw InconsistentDegrees("duplicate entry in row " + std::to_string(j + 1));
      check.set(j, c - 1, true);
    }
    for (long d = row_deg[j]; d < maxrd && t.peek_is_zero(); ++d) t.skip();
  }
  if (!(h == check))
    throw InconsistentDegrees("row lists disagree with column lists");
  return h;
}

inline void write(std::ostream& out, const BinMatrix& h) {
  const std::size_t m = h.rows(), n = h.cols();
  std::vector<std::vector<std::size_t>> by_col(n), by_row(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (h.get(j, i)) {
        by_col[i].push_back(j + 1);
        by_row[j].push_back(i + 1);
      }
  std::size_t maxcd = 0, maxrd = 0;
  for (const auto& c : by_col) maxcd = std::max(maxcd, c.size());
  for (const auto& r : by_row) maxrd = std::max(maxrd, r.size());

  out << n << " " << m << "\n" << maxcd << " " << maxrd << "\n";
  for (std::size_t i = 0; i < n; ++i) out << by_col[i].size() << (i + 1 < n ? " " : "\n");
  for (std::size_t j = 0; j < m; ++j) out << by_row[j].size() << (j + 1 < m ? " " : "\n");
  auto emit = [&out](const std::vector<std::size_t>& idx, std::size_t pad) {
    for (std::size_t d = 0; d < pad; ++d) {
      out << (d < idx.size() ? idx[d] : 0);
      out << (d + 1 < pad ? " " : "\n");
    }
  };
  for (std::size_t i = 0; i < n; ++i) emit(by_col[i], maxcd);
  for (std::size_t j = 0; j < m; ++j) emit(by_row[j], maxrd);
}

inline BinMatrix load(const std::string& path) {
  std::istringstream in(read_file(path));
  return read(in);
}

inline void save(const BinMatrix& h, const std::string& path) {
  std::ostringstream out;
  write(out, h);
  write_file_atomic(path, out.str());
}

}  // namespace elcdec::alist
