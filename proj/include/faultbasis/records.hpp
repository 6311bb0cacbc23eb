#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "faultbasis/errors.hpp"
#include "faultbasis/metrics.hpp"
#include "faultbasis/verdict.hpp"

namespace faultbasis {

struct ProblemBundle {
  std::string problem_id;
  std::vector<std::pair<std::string, std::vector<Verdict>>> wrong;  // verdicts over golden tests
  std::vector<std::pair<std::string, double>> correct;              // runtime in milliseconds
};

namespace detail {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class Fn>
inline void for_each_record_line(const std::string& content, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    const std::size_t end = nl == std::string::npos ? content.size() : nl;
    ++lineno;
    const std::string line = content.substr(pos, end - pos);
    pos = nl == std::string::npos ? content.size() : nl + 1;
    if (line.empty()) throw ParseError(lineno, "empty record line");
    fn(line, lineno);
  }
}

inline nlohmann::json parse_record_object(const std::string& line, std::size_t lineno) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ParseError(lineno, "not a well-formed record");
  if (!j.is_object()) throw ParseError(lineno, "record must be an object");
  return j;
}

inline void reject_unknown_keys(const nlohmann::json& j,
                                std::initializer_list<const char*> allowed,
                                std::size_t lineno) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok) throw ParseError(lineno, "unexpected field '" + key + "'");
  }
}

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key,
                                           std::size_t lineno) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(lineno, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string require_id(const nlohmann::json& j, const char* key, std::size_t lineno) {
  const nlohmann::json& v = require_field(j, key, lineno);
  if (!v.is_string() || v.get_ref<const std::string&>().empty())
    throw ParseError(lineno, std::string("field '") + key + "' must be a nonempty string");
  return v.get<std::string>();
}

inline Verdict require_verdict(const nlohmann::json& v, std::size_t lineno) {
  if (!v.is_string()) throw ParseError(lineno, "verdict must be a string");
  const std::string& s = v.get_ref<const std::string&>();
  const std::optional<Verdict> parsed = parse_verdict(s);
  if (!parsed) throw ParseError(lineno, "unknown verdict '" + s + "'");
  return *parsed;
}

}  // namespace detail

/// Line-delimited verdict records, one object per line:
///   {"problem_id", "code_id", "label": "wrong",   "verdicts": [...]}
///   {"problem_id", "code_id", "label": "correct", "runtime_ms": number}
/// Bundles come back grouped by problem in order of first appearance; code
/// ids are unique per problem and wrong rows share one verdict width.
inline std::vector<ProblemBundle> parse_bundles(const std::string& content) {
  std::vector<ProblemBundle> bundles;
  std::map<std::string, std::size_t> slot;
  std::map<std::string, std::set<std::string>> ids_seen;
  detail::for_each_record_line(content, [&](const std::string& line, std::size_t lineno) {
    const nlohmann::json j = detail::parse_record_object(line, lineno);
    const std::string problem_id = detail::require_id(j, "problem_id", lineno);
    const std::string code_id = detail::require_id(j, "code_id", lineno);
    const std::string label = detail::require_id(j, "label", lineno);

    auto it = slot.find(problem_id);
    if (it == slot.end()) {
      it = slot.emplace(problem_id, bundles.size()).first;
      bundles.push_back(ProblemBundle{problem_id, {}, {}});
    }
    ProblemBundle& b = bundles[it->second];
    if (!ids_seen[problem_id].insert(code_id).second) throw DuplicateCodeId(code_id, lineno);

    if (label == "wrong") {
      detail::reject_unknown_keys(j, {"problem_id", "code_id", "label", "verdicts"}, lineno);
      const nlohmann::json& arr = detail::require_field(j, "verdicts", lineno);
      if (!arr.is_array() || arr.empty())
        throw ParseError(lineno, "field 'verdicts' must be a nonempty array");
      std::vector<Verdict> verdicts;
      verdicts.reserve(arr.size());
      for (const nlohmann::json& v : arr) verdicts.push_back(detail::require_verdict(v, lineno));
      if (!b.wrong.empty() && b.wrong.front().second.size() != verdicts.size()) {
        throw MixedWidth(problem_id, static_cast<int>(b.wrong.front().second.size()),
                         static_cast<int>(verdicts.size()), lineno);
      }
      b.wrong.emplace_back(code_id, std::move(verdicts));
    } else if (label == "correct") {
      detail::reject_unknown_keys(j, {"problem_id", "code_id", "label", "runtime_ms"}, lineno);
      const nlohmann::json& rt = detail::require_field(j, "runtime_ms", lineno);
      if (!rt.is_number()) throw ParseError(lineno, "field 'runtime_ms' must be a number");
      const double ms = rt.get<double>();
      if (!std::isfinite(ms) || ms < 0.0)
        throw ParseError(lineno, "field 'runtime_ms' must be finite and nonnegative");
      b.correct.emplace_back(code_id, ms);
    } else {
      throw ParseError(lineno, "label must be 'wrong' or 'correct'");
    }
  });
  return bundles;
}

inline std::vector<ProblemBundle> ingest(const std::filesystem::path& path) {
  return parse_bundles(detail::read_text_file(path));
}

inline std::string format_bundle_records(const std::vector<ProblemBundle>& bundles) {
  std::string out;
  for (const ProblemBundle& b : bundles) {
    for (const auto& [code_id, verdicts] : b.wrong) {
      nlohmann::ordered_json j;
      j["problem_id"] = b.problem_id;
      j["code_id"] = code_id;
      j["label"] = "wrong";
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (Verdict v : verdicts) arr.push_back(to_string(v));
      j["verdicts"] = std::move(arr);
      out += j.dump();
      out += '\n';
    }
    for (const auto& [code_id, ms] : b.correct) {
      nlohmann::ordered_json j;
      j["problem_id"] = b.problem_id;
      j["code_id"] = code_id;
      j["label"] = "correct";
      j["runtime_ms"] = ms;
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

/// Line-delimited generated-test records:
///   {"problem_id", "test_id", "correct_verdicts": [...],
///    "wrong_verdicts": {code_id: verdict, ...}}
inline std::vector<GeneratedTestResult> parse_test_records(const std::string& content) {
  std::vector<GeneratedTestResult> out;
  detail::for_each_record_line(content, [&](const std::string& line, std::size_t lineno) {
    const nlohmann::json j = detail::parse_record_object(line, lineno);
    detail::reject_unknown_keys(
        j, {"problem_id", "test_id", "correct_verdicts", "wrong_verdicts"}, lineno);
    GeneratedTestResult t;
    t.problem_id = detail::require_id(j, "problem_id", lineno);
    t.test_id = detail::require_id(j, "test_id", lineno);

    const nlohmann::json& corr = detail::require_field(j, "correct_verdicts", lineno);
    if (!corr.is_array() || corr.empty())
      throw ParseError(lineno, "field 'correct_verdicts' must be a nonempty array");
    for (const nlohmann::json& v : corr)
      t.correct_verdicts.push_back(detail::require_verdict(v, lineno));

    const nlohmann::json& wrong = detail::require_field(j, "wrong_verdicts", lineno);
    if (!wrong.is_object()) throw ParseError(lineno, "field 'wrong_verdicts' must be an object");
    for (const auto& [code_id, v] : wrong.items()) {
      if (code_id.empty()) throw ParseError(lineno, "empty code id in 'wrong_verdicts'");
      t.wrong_verdicts.emplace(code_id, detail::require_verdict(v, lineno));
    }
    out.push_back(std::move(t));
  });
  return out;
}

inline std::vector<GeneratedTestResult> read_test_records(const std::filesystem::path& path) {
  return parse_test_records(detail::read_text_file(path));
}

inline std::string format_test_records(const std::vector<GeneratedTestResult>& tests) {
  std::string out;
  for (const GeneratedTestResult& t : tests) {
    nlohmann::ordered_json j;
    j["problem_id"] = t.problem_id;
    j["test_id"] = t.test_id;
    nlohmann::ordered_json corr = nlohmann::ordered_json::array();
    for (Verdict v : t.correct_verdicts) corr.push_back(to_string(v));
    j["correct_verdicts"] = std::move(corr);
    nlohmann::ordered_json wrong = nlohmann::ordered_json::object();
    for (const auto& [code_id, v] : t.wrong_verdicts) wrong[code_id] = to_string(v);
    j["wrong_verdicts"] = std::move(wrong);
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace faultbasis
