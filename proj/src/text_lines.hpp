#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "treegh/errors.hpp"

namespace treegh::detail {

struct Line {
  int number;
  std::vector<std::string> fields;
};

/// Whitespace-split non-empty lines; '#' starts a comment that runs to end of line.
inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line parsed{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) parsed.fields.emplace_back(line.substr(i, j - i));
      i = j;
    }
    if (!parsed.fields.empty()) out.push_back(std::move(parsed));
  }
  return out;
}

inline int parse_int(const std::string& s, int line) {
  int value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError("line " + std::to_string(line) + ": expected an integer, got '" + s + "'");
  }
  return value;
}

}  // namespace treegh::detail
