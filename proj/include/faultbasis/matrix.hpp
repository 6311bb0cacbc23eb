#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "faultbasis/errors.hpp"
#include "faultbasis/signature.hpp"
#include "faultbasis/verdict.hpp"

namespace faultbasis {

/// Binary code-test matrix of one problem: rows are wrong-code failure
/// signatures, columns are golden tests. Rows keep input order and all
/// index-based results refer to that order.
struct VerdictMatrix {
  std::string problem_id;
  std::vector<std::string> row_ids;
  std::vector<Signature> rows;
  int width = 0;

  int n() const noexcept { return static_cast<int>(rows.size()); }
  int d() const noexcept { return width; }
};

using VerdictRecord = std::pair<std::string, std::vector<Verdict>>;

/// Builds the matrix from per-code verdict lists. Bit j of row i is set
/// exactly when code i's verdict on test j is not AC.
inline VerdictMatrix build_matrix(std::string problem_id,
                                  const std::vector<VerdictRecord>& records) {
  if (records.empty()) throw EmptyTests("no records for '" + problem_id + "'");
  const int d = static_cast<int>(records.front().second.size());
  if (d == 0) throw EmptyTests("empty verdict list for '" + records.front().first + "'");

  VerdictMatrix m;
  m.problem_id = std::move(problem_id);
  m.width = d;
  std::unordered_set<std::string> seen;
  for (const auto& [code_id, verdicts] : records) {
    if (static_cast<int>(verdicts.size()) != d) {
      throw WidthMismatch(d, static_cast<int>(verdicts.size()));
    }
    if (!seen.insert(code_id).second) throw DuplicateCodeId(code_id);
    Signature row(d);
    for (int j = 0; j < d; ++j) {
      if (is_failing(verdicts[static_cast<std::size_t>(j)])) row.set(j);
    }
    if (row.is_zero()) throw AllPassRow(code_id);
    m.row_ids.push_back(code_id);
    m.rows.push_back(std::move(row));
  }
  return m;
}

namespace detail {

inline bool is_id_char(char c) noexcept { return c > 0x20 && c < 0x7f; }

inline bool valid_identifier(std::string_view s) noexcept {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_id_char(c)) return false;
  }
  return true;
}

// One LF-terminated line starting at `pos`; rejects CR and other control
// or non-ASCII bytes outright.
inline std::string_view take_line(std::string_view text, std::size_t& pos,
                                  std::size_t lineno) {
  const std::size_t start = pos;
  while (pos < text.size() && text[pos] != '\n') {
    const char c = text[pos];
    if ((c < 0x20 && c != '\n') || static_cast<unsigned char>(c) >= 0x7f) {
      throw ParseError(lineno, "illegal character");
    }
    ++pos;
  }
  if (pos == text.size()) throw ParseError(lineno, "missing trailing newline");
  const std::string_view line = text.substr(start, pos - start);
  ++pos;  // past '\n'
  return line;
}

inline std::size_t parse_count(std::string_view token, std::size_t lineno,
                               const char* what) {
  if (token.empty()) throw ParseError(lineno, std::string("empty ") + what);
  std::size_t value = 0;
  for (char c : token) {
    if (c < '0' || c > '9') {
      throw ParseError(lineno, std::string("invalid ") + what + " '" +
                                   std::string(token) + "'");
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
    if (value > 100'000'000) throw ParseError(lineno, std::string(what) + " too large");
  }
  return value;
}

}  // namespace detail

namespace detail {

inline VerdictMatrix parse_matrix_block(std::string_view text, std::size_t& pos,
                                        std::size_t& lineno) {
  const std::string_view header = take_line(text, pos, lineno);

  const std::size_t sp1 = header.find(' ');
  const std::size_t sp2 = header.find(' ', sp1 == std::string_view::npos ? sp1 : sp1 + 1);
  if (sp1 == std::string_view::npos || sp2 == std::string_view::npos ||
      header.find(' ', sp2 + 1) != std::string_view::npos) {
    throw ParseError(lineno, "header must be '<problem_id> <n> <d>'");
  }
  const std::string_view id = header.substr(0, sp1);
  if (!valid_identifier(id)) throw ParseError(lineno, "invalid problem id");
  const std::size_t n = parse_count(header.substr(sp1 + 1, sp2 - sp1 - 1), lineno, "row count");
  const std::size_t d = parse_count(header.substr(sp2 + 1), lineno, "column count");
  if (d == 0) throw ParseError(lineno, "column count must be at least 1");
  ++lineno;

  VerdictMatrix m;
  m.problem_id = std::string(id);
  m.width = static_cast<int>(d);
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i, ++lineno) {
    const std::string_view line = take_line(text, pos, lineno);
    const std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos || line.find(' ', sp + 1) != std::string_view::npos) {
      throw ParseError(lineno, "row must be '<code_id> <bits>'");
    }
    const std::string_view code_id = line.substr(0, sp);
    if (!valid_identifier(code_id)) throw ParseError(lineno, "invalid code id");
    const std::string_view bits = line.substr(sp + 1);
    if (bits.size() != d) {
      throw ParseError(lineno, "expected " + std::to_string(d) + " bit characters, got " +
                                   std::to_string(bits.size()));
    }
    Signature row(static_cast<int>(d));
    for (std::size_t j = 0; j < d; ++j) {
      if (bits[j] == '1') {
        row.set(static_cast<int>(j));
      } else if (bits[j] != '0') {
        throw ParseError(lineno, "bit characters must be '0' or '1'");
      }
    }
    if (row.is_zero()) throw ParseError(lineno, "all-zero row: not a wrong code");
    if (!seen.insert(std::string(code_id)).second) {
      throw DuplicateCodeId(std::string(code_id), lineno);
    }
    m.row_ids.emplace_back(code_id);
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace detail

/// Parses the matrix text form:
///   line 1:      <problem_id> <n> <d>
///   lines 2..n+1: <code_id> <d bit characters>
/// ASCII only, single spaces, every line LF-terminated. Any other byte,
/// a duplicate code id, or an all-zero row is rejected.
inline VerdictMatrix parse_matrix(std::string_view text) {
  std::size_t pos = 0;
  std::size_t lineno = 1;
  VerdictMatrix m = detail::parse_matrix_block(text, pos, lineno);
  if (pos != text.size()) throw ParseError(lineno, "content after last row");
  return m;
}

/// A file of one or more matrix blocks back to back; problem ids must be
/// unique across blocks.
inline std::vector<VerdictMatrix> parse_matrices(std::string_view text) {
  std::vector<VerdictMatrix> out;
  std::unordered_set<std::string> seen;
  std::size_t pos = 0;
  std::size_t lineno = 1;
  if (pos == text.size()) throw ParseError(1, "empty matrix file");
  while (pos != text.size()) {
    const std::size_t header_line = lineno;
    VerdictMatrix m = detail::parse_matrix_block(text, pos, lineno);
    if (!seen.insert(m.problem_id).second) {
      throw ParseError(header_line, "duplicate problem id '" + m.problem_id + "'");
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline std::string format_matrix(const VerdictMatrix& m) {
  if (!detail::valid_identifier(m.problem_id)) {
    throw Error("problem id '" + m.problem_id + "' not representable in matrix text form");
  }
  std::string out = m.problem_id;
  out += ' ';
  out += std::to_string(m.n());
  out += ' ';
  out += std::to_string(m.d());
  out += '\n';
  for (int i = 0; i < m.n(); ++i) {
    const std::string& code_id = m.row_ids[static_cast<std::size_t>(i)];
    if (!detail::valid_identifier(code_id)) {
      throw Error("code id '" + code_id + "' not representable in matrix text form");
    }
    out += code_id;
    out += ' ';
    out += m.rows[static_cast<std::size_t>(i)].to_string();
    out += '\n';
  }
  return out;
}

inline VerdictMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

inline std::vector<VerdictMatrix> read_matrices_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrices(buf.str());
}

inline void write_matrix_file(const VerdictMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << format_matrix(m);
}

}  // namespace faultbasis
