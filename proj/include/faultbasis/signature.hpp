#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "faultbasis/errors.hpp"

namespace faultbasis {

/// Failure signature of one wrong code: a fixed-width bit vector over the
/// golden tests, bit j set = failed test j. Column 0 is the leftmost
/// character of the text form.
class Signature {
public:
  Signature() = default;

  explicit Signature(int width) : width_(width), words_(word_count(width), 0) {
    if (width < 0) throw Error("negative signature width");
  }

  static Signature from_string(std::string_view bits) {
    Signature s(static_cast<int>(bits.size()));
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j] == '1') {
        s.set(static_cast<int>(j));
      } else if (bits[j] != '0') {
        throw Error("invalid bit character in signature string");
      }
    }
    return s;
  }

  int width() const noexcept { return width_; }

  bool test(int col) const {
    check_col(col);
    return (words_[static_cast<std::size_t>(col) >> 6] >> (col & 63)) & 1u;
  }

  void set(int col, bool value = true) {
    check_col(col);
    const std::uint64_t mask = std::uint64_t{1} << (col & 63);
    if (value) {
      words_[static_cast<std::size_t>(col) >> 6] |= mask;
    } else {
      words_[static_cast<std::size_t>(col) >> 6] &= ~mask;
    }
  }

  int popcount() const noexcept {
    int n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  bool is_zero() const noexcept {
    for (std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  /// Smallest set column, or -1 when all zero. This is the pivot position
  /// for leftmost-pivot elimination.
  int leading_column() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] != 0) {
        return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
      }
    }
    return -1;
  }

  /// |a AND b|: number of jointly set columns.
  int and_popcount(const Signature& other) const {
    check_same_width(other);
    int n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      n += std::popcount(words_[i] & other.words_[i]);
    }
    return n;
  }

  Signature& operator^=(const Signature& other) {
    check_same_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] ^= other.words_[i];
    }
    return *this;
  }

  friend Signature operator^(Signature a, const Signature& b) {
    a ^= b;
    return a;
  }

  bool operator==(const Signature&) const = default;

  std::string to_string() const {
    std::string out(static_cast<std::size_t>(width_), '0');
    for (int j = 0; j < width_; ++j) {
      if (test(j)) out[static_cast<std::size_t>(j)] = '1';
    }
    return out;
  }

private:
  static std::size_t word_count(int width) {
    return (static_cast<std::size_t>(width) + 63) / 64;
  }

  void check_col(int col) const {
    if (col < 0 || col >= width_) throw Error("signature column out of range");
  }

  void check_same_width(const Signature& other) const {
    if (width_ != other.width_) throw WidthMismatch(width_, other.width_);
  }

  int width_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace faultbasis
