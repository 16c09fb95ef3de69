#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qia/core.hpp"
#include "qia/text_io.hpp"

namespace qia {

/// A finite set {0..n-1} with one binary operation table and no laws assumed.
class Magma {
 public:
  Magma() = default;

  Magma(std::size_t size, std::vector<Element> table,
        std::optional<Element> zero = std::nullopt)
      : size_(size), table_(std::move(table)), zero_(zero) {
    if (size_ == 0) throw InputError("magma must have at least one element");
    if (table_.size() != size_ * size_) {
      throw InputError("magma table has " + std::to_string(table_.size()) +
                       " entries, expected " + std::to_string(size_ * size_));
    }
    for (std::size_t row = 0; row < size_; ++row) {
      for (std::size_t col = 0; col < size_; ++col) {
        if (table_[row * size_ + col] >= size_) {
          throw InputError("magma entry at row " + std::to_string(row) +
                           ", column " + std::to_string(col) +
                           " is out of range");
        }
      }
    }
    if (zero_ && *zero_ >= size_) throw InputError("magma zero is out of range");
  }

  std::size_t size() const { return size_; }
  std::optional<Element> zero() const { return zero_; }

  Element operator()(Element a, Element b) const { return table_[a * size_ + b]; }

  const std::vector<Element>& table() const { return table_; }

  Magma with_zero(std::optional<Element> zero) const {
    return Magma(size_, table_, zero);
  }

  /// Value of the defined constant 1 = aa, read at a = 0.
  Element unit() const { return (*this)(0, 0); }

  friend bool operator==(const Magma&, const Magma&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Element> table_;
  std::optional<Element> zero_;
};

/// Reads `magma <n> [zero=<k>]` followed by n rows of n integers.
inline Magma parse_magma(std::istream& in, std::string_view source = "<input>") {
  using text_io::fail_at;
  auto tokens = text_io::tokenize(in);
  if (tokens.empty()) fail_at(source, 1, "empty magma file");
  if (tokens[0].text != "magma") {
    fail_at(source, tokens[0].line, "expected 'magma <n>' header");
  }
  if (tokens.size() < 2) fail_at(source, tokens[0].line, "missing magma size");
  const auto header_line = tokens[0].line;
  auto n = text_io::parse_integer(tokens[1], source);
  if (n < 1 || n > 255) fail_at(source, tokens[1].line, "magma size must be 1..255");
  std::size_t pos = 2;
  std::optional<Element> zero;
  if (pos < tokens.size() && tokens[pos].line == header_line &&
      tokens[pos].text.starts_with("zero=")) {
    text_io::Token value{tokens[pos].text.substr(5), tokens[pos].line};
    auto z = text_io::parse_integer(value, source);
    if (z < 0 || z >= n) fail_at(source, value.line, "zero out of range");
    zero = static_cast<Element>(z);
    ++pos;
  }
  const auto size = static_cast<std::size_t>(n);
  std::vector<Element> table;
  table.reserve(size * size);
  for (std::size_t row = 0; row < size; ++row) {
    for (std::size_t col = 0; col < size; ++col, ++pos) {
      if (pos >= tokens.size()) {
        fail_at(source, tokens.back().line,
                "table ends early at row " + std::to_string(row) + ", column " +
                    std::to_string(col));
      }
      auto v = text_io::parse_integer(tokens[pos], source);
      if (v < 0 || v >= n) {
        fail_at(source, tokens[pos].line,
                "entry at row " + std::to_string(row) + ", column " +
                    std::to_string(col) + " is out of range");
      }
      table.push_back(static_cast<Element>(v));
    }
  }
  if (pos != tokens.size()) fail_at(source, tokens[pos].line, "trailing data after table");
  return Magma(size, std::move(table), zero);
}

inline Magma read_magma_file(const std::string& path) {
  auto in = text_io::open_file(path);
  return parse_magma(in, path);
}

inline std::string format_magma(const Magma& m) {
  std::ostringstream out;
  out << "magma " << m.size();
  if (m.zero()) out << " zero=" << *m.zero();
  out << '\n';
  for (Element a = 0; a < m.size(); ++a) {
    for (Element b = 0; b < m.size(); ++b) {
      if (b) out << ' ';
      out << m(a, b);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qia
