#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "latdist/code.hpp"
#include "latdist/error.hpp"
#include "latdist/gf.hpp"
#include "latdist/integer.hpp"

// Plain matrix format:
//   line 1: "rows cols q"   (q = 0 or omitted for an unrestricted integer matrix)
//   then one line per row with `cols` whitespace-separated integers.
// Blank lines and lines starting with '#' are ignored.
//
// Alist format (parity-check matrices):
//   "n m" (binary) or "n m q" (nonbinary)
//   "max_col_weight max_row_weight"
//   n column weights, m row weights
//   n lines listing each column's 1-based row indices (zero padding allowed)
//   m lines listing each row's 1-based column indices
// Nonbinary files write "index value" pairs instead of bare indices, with
// values in [1, q) read as polynomial-basis bit patterns.

namespace latdist {

struct RawMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::optional<std::uint32_t> q;
  std::vector<std::vector<Integer>> entries;
  std::vector<std::size_t> lines;  // source line of each row
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  for (std::size_t number = 1; std::getline(in, text); ++number) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos || text[first] == '#') continue;
    std::istringstream ss(text);
    Line l{number, {}};
    for (std::string tok; ss >> tok;) l.tokens.push_back(tok);
    out.push_back(std::move(l));
  }
  return out;
}

inline Integer parse_integer(const std::string& tok, const std::string& source, std::size_t line) {
  const std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (start == tok.size() || tok.find_first_not_of("0123456789", start) != std::string::npos)
    throw parse_error(source, line, "expected an integer, got '" + tok + "'");
  return Integer(tok[0] == '+' ? tok.substr(1) : tok);
}

inline std::uint64_t parse_count(const std::string& tok, const std::string& source, std::size_t line,
                                 const char* what) {
  const Integer v = parse_integer(tok, source, line);
  if (v < 0 || v > Integer(1u << 30)) throw parse_error(source, line, std::string("invalid ") + what + " '" + tok + "'");
  return v.convert_to<std::uint64_t>();
}

}  // namespace detail

inline RawMatrix read_plain_matrix(std::istream& in, const std::string& source) {
  const auto lines = detail::read_lines(in);
  if (lines.empty()) throw parse_error(source, 1, "empty input, expected header 'rows cols q'");
  const auto& head = lines.front();
  if (head.tokens.size() < 2 || head.tokens.size() > 3)
    throw parse_error(source, head.number, "header must be 'rows cols q'");
  RawMatrix m;
  m.rows = detail::parse_count(head.tokens[0], source, head.number, "row count");
  m.cols = detail::parse_count(head.tokens[1], source, head.number, "column count");
  if (m.rows == 0 || m.cols == 0) throw parse_error(source, head.number, "matrix dimensions must be positive");
  if (head.tokens.size() == 3) {
    const auto q = detail::parse_count(head.tokens[2], source, head.number, "field order");
    if (q != 0) m.q = static_cast<std::uint32_t>(q);
  }
  if (lines.size() - 1 < m.rows)
    throw parse_error(source, lines.back().number,
                      "expected " + std::to_string(m.rows) + " rows, found " + std::to_string(lines.size() - 1));
  if (lines.size() - 1 > m.rows) throw parse_error(source, lines[m.rows + 1].number, "unexpected extra row");
  for (std::size_t r = 0; r < m.rows; ++r) {
    const auto& l = lines[r + 1];
    if (l.tokens.size() != m.cols)
      throw parse_error(source, l.number,
                        "expected " + std::to_string(m.cols) + " entries, found " + std::to_string(l.tokens.size()));
    std::vector<Integer> row;
    row.reserve(m.cols);
    for (const auto& tok : l.tokens) {
      row.push_back(detail::parse_integer(tok, source, l.number));
      if (m.q && (row.back() < 0 || row.back() >= *m.q))
        throw parse_error(source, l.number, "entry '" + tok + "' outside [0, " + std::to_string(*m.q) + ")");
    }
    m.entries.push_back(std::move(row));
    m.lines.push_back(l.number);
  }
  return m;
}

/// Converts a parsed matrix to field symbols, checking the declared q.
inline SymbolMatrix to_symbols(const RawMatrix& m, const Field& f, const std::string& source) {
  if (m.q && *m.q != f.q())
    throw parse_error(source, 1,
                      "file declares q = " + std::to_string(*m.q) + " but field is GF(" + std::to_string(f.q()) + ")");
  SymbolMatrix out(m.rows, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) {
      const Integer& v = m.entries[r][c];
      if (v < 0 || v >= f.q())
        throw parse_error(source, m.lines[r], "entry " + v.str() + " outside [0, " + std::to_string(f.q()) + ")");
      out(r, c) = v.convert_to<Symbol>();
    }
  return out;
}

/// Parity-check matrix (m x n) from an alist file.
inline SymbolMatrix read_alist(std::istream& in, const std::string& source, const Field& f) {
  const auto lines = detail::read_lines(in);
  auto need = [&](std::size_t i, const char* what) -> const detail::Line& {
    if (i >= lines.size())
      throw parse_error(source, lines.empty() ? 1 : lines.back().number, std::string("missing ") + what);
    return lines[i];
  };
  const auto& head = need(0, "header");
  if (head.tokens.size() != 2 && head.tokens.size() != 3)
    throw parse_error(source, head.number, "alist header must be 'n m' or 'n m q'");
  const auto n = detail::parse_count(head.tokens[0], source, head.number, "n");
  const auto m = detail::parse_count(head.tokens[1], source, head.number, "m");
  std::uint32_t q = 2;
  if (head.tokens.size() == 3) q = static_cast<std::uint32_t>(detail::parse_count(head.tokens[2], source, head.number, "q"));
  if (q != f.q())
    throw parse_error(source, head.number,
                      "alist declares q = " + std::to_string(q) + " but field is GF(" + std::to_string(f.q()) + ")");
  const bool pairs = head.tokens.size() == 3;
  if (n == 0 || m == 0) throw parse_error(source, head.number, "alist dimensions must be positive");

  const auto& maxw = need(1, "max weight line");
  if (maxw.tokens.size() != 2) throw parse_error(source, maxw.number, "expected 'max_col_weight max_row_weight'");

  auto weights = [&](std::size_t idx, std::size_t count, const char* what) {
    const auto& l = need(idx, what);
    if (l.tokens.size() != count)
      throw parse_error(source, l.number,
                        std::string("expected ") + std::to_string(count) + " " + what + ", found " +
                            std::to_string(l.tokens.size()));
    std::vector<std::size_t> w;
    for (const auto& t : l.tokens) w.push_back(detail::parse_count(t, source, l.number, what));
    return w;
  };
  const auto col_w = weights(2, n, "column weights");
  const auto row_w = weights(3, m, "row weights");

  SymbolMatrix h(m, n, 0);
  SymbolMatrix from_rows(m, n, 0);
  auto read_lists = [&](std::size_t first, std::size_t count, std::size_t bound, const std::vector<std::size_t>& w,
                        bool by_column) {
    for (std::size_t i = 0; i < count; ++i) {
      const auto& l = need(first + i, by_column ? "column list" : "row list");
      const std::size_t stride = pairs ? 2 : 1;
      if (l.tokens.size() % stride != 0) throw parse_error(source, l.number, "odd token count in index/value list");
      std::size_t seen = 0;
      for (std::size_t t = 0; t < l.tokens.size(); t += stride) {
        const auto idx = detail::parse_count(l.tokens[t], source, l.number, "index");
        if (idx == 0) continue;  // padding
        if (idx > bound) throw parse_error(source, l.number, "index " + std::to_string(idx) + " out of range");
        Symbol value = 1;
        if (pairs) {
          const auto v = detail::parse_count(l.tokens[t + 1], source, l.number, "value");
          if (v == 0 || v >= q) throw parse_error(source, l.number, "value " + std::to_string(v) + " outside [1, q)");
          value = static_cast<Symbol>(v);
        }
        auto& target = by_column ? h(idx - 1, i) : from_rows(i, idx - 1);
        if (target != 0) throw parse_error(source, l.number, "duplicate index " + std::to_string(idx));
        target = value;
        ++seen;
      }
      if (seen != w[i])
        throw parse_error(source, l.number,
                          "list has " + std::to_string(seen) + " entries but weight is " + std::to_string(w[i]));
    }
  };
  read_lists(4, n, m, col_w, true);
  read_lists(4 + n, m, n, row_w, false);
  if (lines.size() > 4 + n + m) throw parse_error(source, lines[4 + n + m].number, "unexpected trailing data");
  if (!(h == from_rows)) throw parse_error(source, lines[4 + n].number, "row lists disagree with column lists");
  return h;
}

/// Writes an integer matrix in the plain format.
template <class Int>
void write_plain_matrix(std::ostream& out, const std::vector<std::vector<Int>>& rows, std::uint32_t q = 0) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  out << rows.size() << ' ' << cols << ' ' << q << '\n';
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << r[j];
    out << '\n';
  }
}

inline void write_plain_matrix(std::ostream& out, const SymbolMatrix& m, std::uint32_t q) {
  out << m.rows() << ' ' << m.cols() << ' ' << q << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

}  // namespace latdist
