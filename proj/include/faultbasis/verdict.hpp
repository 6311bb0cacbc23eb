#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace faultbasis {

/// Judge outcome of running one code on one test.
enum class Verdict : std::uint8_t { AC, WA, RE, TLE, MLE, CE, OTHER };

inline constexpr std::array<Verdict, 7> kAllVerdicts = {
    Verdict::AC,  Verdict::WA, Verdict::RE,   Verdict::TLE,
    Verdict::MLE, Verdict::CE, Verdict::OTHER};

/// A code fails a test exactly when the verdict is anything but AC.
constexpr bool is_failing(Verdict v) noexcept { return v != Verdict::AC; }

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::AC: return "AC";
    case Verdict::WA: return "WA";
    case Verdict::RE: return "RE";
    case Verdict::TLE: return "TLE";
    case Verdict::MLE: return "MLE";
    case Verdict::CE: return "CE";
    case Verdict::OTHER: return "OTHER";
  }
  return "OTHER";
}

constexpr std::optional<Verdict> parse_verdict(std::string_view s) noexcept {
  for (Verdict v : kAllVerdicts) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

/// Rank used when one code fails with different verdicts on different
/// tests and a single category must be attributed. Lower wins.
constexpr int exclusion_precedence(Verdict v) noexcept {
  switch (v) {
    case Verdict::WA: return 0;
    case Verdict::RE: return 1;
    case Verdict::TLE: return 2;
    case Verdict::MLE: return 3;
    case Verdict::CE: return 4;
    case Verdict::OTHER: return 5;
    case Verdict::AC: return 6;
  }
  return 6;
}

}  // namespace faultbasis
