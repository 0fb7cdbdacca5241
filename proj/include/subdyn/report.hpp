#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subdyn/words.hpp"

namespace subdyn {

//! Line-oriented `key: value` output. Keys keep insertion order, so a
//! report is a pure function of the calls that built it.
class Report {
 public:
  explicit Report(std::string command);

  void add(std::string key, std::string value);
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  //! One line per letter: `<prefix>.<name>: <image>`.
  void add_substitution(const std::string& prefix, const Substitution& s);
  //! One line per text line: `<prefix>.<n>: <line>`.
  void add_block(const std::string& prefix, std::string_view text);

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

//! FNV-1a, 16 hex digits.
std::string digest(std::string_view bytes);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace subdyn
