#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace faultbasis {

/// Base class for errors caused by bad input data or bad arguments.
/// Internal invariant violations use std::logic_error instead.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

namespace detail {
inline std::string with_line(std::size_t line, const std::string& reason) {
  if (line == 0) return reason;
  return "line " + std::to_string(line) + ": " + reason;
}
}  // namespace detail

/// Malformed input text. `line` is 1-based; 0 means "not tied to a line".
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(detail::with_line(line, reason)), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Two bit vectors (or a vector and a matrix) disagree on column count.
class WidthMismatch : public Error {
public:
  WidthMismatch(int expected, int got)
      : Error("width mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

/// A matrix was requested with zero test columns.
class EmptyTests : public Error {
public:
  explicit EmptyTests(const std::string& detail)
      : Error("no test columns: " + detail) {}
};

/// A record passed every test; it is not a wrong code.
class AllPassRow : public Error {
public:
  explicit AllPassRow(const std::string& code_id)
      : Error("code '" + code_id + "' fails no test"), code_id_(code_id) {}
  const std::string& code_id() const noexcept { return code_id_; }

private:
  std::string code_id_;
};

/// Jaccard similarity of two all-zero signatures is undefined.
class BothEmpty : public Error {
public:
  BothEmpty() : Error("jaccard of two all-zero signatures is undefined") {}
};

class DuplicateCodeId : public Error {
public:
  explicit DuplicateCodeId(const std::string& code_id, std::size_t line = 0)
      : Error(detail::with_line(line, "duplicate code id '" + code_id + "'")),
        code_id_(code_id), line_(line) {}
  const std::string& code_id() const noexcept { return code_id_; }
  std::size_t line() const noexcept { return line_; }

private:
  std::string code_id_;
  std::size_t line_;
};

/// Verdict lists of differing length within one problem.
class MixedWidth : public Error {
public:
  MixedWidth(const std::string& problem_id, int expected, int got,
             std::size_t line = 0)
      : Error(detail::with_line(
            line, "problem '" + problem_id + "': verdict list of length " +
                      std::to_string(got) + ", expected " +
                      std::to_string(expected))) {}
};

class NoCorrectCodes : public Error {
public:
  NoCorrectCodes() : Error("validity undecidable: no correct-code verdicts") {}
};

class UnknownCode : public Error {
public:
  explicit UnknownCode(const std::string& code_id)
      : Error("code '" + code_id + "' missing from a test's verdict map"),
        code_id_(code_id) {}
  const std::string& code_id() const noexcept { return code_id_; }

private:
  std::string code_id_;
};

/// Exhaustive enumeration would exceed the configured cap.
class TooLarge : public Error {
public:
  explicit TooLarge(const std::string& detail)
      : Error("enumeration too large: " + detail) {}
};

/// A synthetic-instance request that no matrix can satisfy.
class InfeasibleSpec : public Error {
public:
  explicit InfeasibleSpec(const std::string& detail)
      : Error("infeasible synthetic spec: " + detail) {}
};

}  // namespace faultbasis
