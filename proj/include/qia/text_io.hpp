#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qia/core.hpp"

namespace qia::text_io {

struct Token {
  std::string text;
  std::size_t line = 0;
};

inline std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

/// Whitespace-separated tokens of a `#`-commented file, with line numbers.
inline std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> tokens;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream words{std::string(strip_comment(line))};
    std::string word;
    while (words >> word) tokens.push_back({word, number});
  }
  return tokens;
}

[[noreturn]] inline void fail_at(std::string_view source, std::size_t line,
                                 const std::string& message) {
  throw InputError(std::string(source) + ":" + std::to_string(line) + ": " +
                   message);
}

inline long parse_integer(const Token& token, std::string_view source) {
  long value = 0;
  const auto* begin = token.text.data();
  const auto* end = begin + token.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail_at(source, token.line, "expected an integer, got '" + token.text + "'");
  }
  return value;
}

inline std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  return in;
}

/// First non-comment keyword of a file (`oml`, `magma`, ...), or empty.
inline std::string peek_keyword(const std::string& path) {
  auto in = open_file(path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words{std::string(strip_comment(line))};
    std::string word;
    if (words >> word) return word;
  }
  return {};
}

}  // namespace qia::text_io
