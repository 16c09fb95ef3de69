#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qia {

/// Dense 0-based identifier of an element of a finite structure.
using Element = std::uint16_t;

/// The six implication polynomials of an orthomodular lattice.
enum class Implication : std::uint8_t {
  classical = 0,
  sasaki = 1,
  dishkant = 2,
  kalmbach = 3,
  non_tollens = 4,
  relevance = 5,
};

inline constexpr std::array<Implication, 6> all_implications{
    Implication::classical, Implication::sasaki,      Implication::dishkant,
    Implication::kalmbach,  Implication::non_tollens, Implication::relevance};

inline constexpr std::array<Implication, 5> quantum_implications{
    Implication::sasaki, Implication::dishkant, Implication::kalmbach,
    Implication::non_tollens, Implication::relevance};

/// Raised for malformed user input: bad tables, unparsable terms, bad files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation detects that an internal invariant is broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

constexpr int index_of(Implication i) { return static_cast<int>(i); }

inline Implication implication_from_index(int i) {
  if (i < 0 || i > 5) {
    throw InputError("unknown implication index " + std::to_string(i) +
                     " (expected 0..5)");
  }
  return static_cast<Implication>(i);
}

constexpr std::string_view implication_name(Implication i) {
  switch (i) {
    case Implication::classical: return "classical";
    case Implication::sasaki: return "Sasaki";
    case Implication::dishkant: return "Dishkant";
    case Implication::kalmbach: return "Kalmbach";
    case Implication::non_tollens: return "non-tollens";
    case Implication::relevance: return "relevance";
  }
  return "?";
}

/// A variable assignment as (variable, value) pairs in variable order.
using Assignment = std::vector<std::pair<char, Element>>;

inline std::string format_assignment(const Assignment& assignment) {
  std::string out;
  for (const auto& [var, value] : assignment) {
    if (!out.empty()) out += ", ";
    out += var;
    out += '=';
    out += std::to_string(value);
  }
  return out;
}

}  // namespace qia
