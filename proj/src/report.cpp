#include "subdyn/report.hpp"

#include <cstdio>

#include "subdyn/errors.hpp"

namespace subdyn {

Report::Report(std::string command) { entries_.emplace_back("command", std::move(command)); }

void Report::add(std::string key, std::string value) {
  if (key.find_first_of(":\n") != std::string::npos || value.find('\n') != std::string::npos) {
    throw InputError("BadReportEntry", "report keys and values must be single-line");
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add_substitution(const std::string& prefix, const Substitution& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    add(prefix + "." + s.name(static_cast<Letter>(a)), s.format(s.image(static_cast<Letter>(a))));
  }
}

void Report::add_block(const std::string& prefix, std::string_view text) {
  std::size_t n = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    add(prefix + "." + std::to_string(n++), std::string(text.substr(0, nl)));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += ": ";
    out += v;
    out += '\n';
  }
  return out;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) h = (h ^ c) * 1099511628211ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace subdyn
