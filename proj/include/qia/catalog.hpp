#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qia/algebras.hpp"
#include "qia/core.hpp"
#include "qia/term.hpp"

// Published identities and cross-definitions, written with the generic
// operation `.` so they can be instantiated at any implication.
namespace qia::catalog {

/// An equation over `.` together with the implications it is claimed for.
struct ClaimedIdentity {
  std::string name;
  std::string text;
  std::vector<Implication> holds_for;
  std::vector<Implication> fails_for;

  Equation at(Implication i) const { return instantiate(parse_equation(text), i); }
};

inline std::vector<Implication> quantum() {
  return {quantum_implications.begin(), quantum_implications.end()};
}

inline std::vector<Implication> quantum_except(Implication skip) {
  std::vector<Implication> out;
  for (auto i : quantum_implications) {
    if (i != skip) out.push_back(i);
  }
  return out;
}

/// Identities checked by the two-variable decision procedure.
inline std::vector<ClaimedIdentity> identities() {
  std::vector<ClaimedIdentity> out = {
      {"join as implications", "a v b = (a . b) . (((a . b) . (b . a)) . a)", quantum(), {}},
      {"dishkant from any implication", "a ->2 b = (b . (b . a)) . (((a . b) . a) . b)", quantum(), {}},
      {"implication into zero", "a . 0 = a'", quantum(), {}},
      {"self implication", "a . (a . a) = a . a", quantum(), {}},
      {"complement join 1", "a v b = b' . ((b' . a')' . (b . a')')'", {Implication::sasaki}, {}},
      {"complement join 2", "a v b = (b' . (b . (b' . a')')')' . a", {Implication::dishkant}, {}},
      {"complement join 3", "a v b = b' . (b' . a)", {Implication::kalmbach},
       quantum_except(Implication::kalmbach)},
      {"complement join 4", "a v b = a' . (b' . a)", {Implication::non_tollens}, {}},
      {"complement join 5", "a v b = (a . b') . (b' . a)", {Implication::relevance}, {}},
  };
  for (auto v : all_join_variants) {
    std::vector<Implication> paired;
    for (auto i : quantum_implications) {
      auto vs = paired_variants(i);
      if (std::find(vs.begin(), vs.end(), v) != vs.end()) paired.push_back(i);
    }
    out.push_back({"join variant " + std::string(variant_label(v)),
                   render_term(join_variant_macro(v)) + " = a v b", paired, {}});
  }
  return out;
}

/// One cell of the cross-definition table: the shortest terms in `basis`
/// for a ->target b. Empty terms mean no definition exists.
struct CrossDefinition {
  Implication target;
  Implication basis;
  std::size_t size;
  std::vector<std::string> terms;  // written with `.`
};

inline std::vector<CrossDefinition> cross_definitions() {
  using I = Implication;
  return {
      {I::classical, I::sasaki, 3, {"((b . a) . a) . b"}},
      {I::classical, I::kalmbach, 2, {"a . (a . b)"}},
      {I::classical, I::non_tollens, 3, {"((a . b) . b) . b"}},
      {I::classical, I::relevance, 3, {"(b . a) . (a . b)", "a . ((b . a) . b)"}},
      {I::sasaki, I::relevance, 2, {"a . (a . b)"}},
      {I::dishkant, I::sasaki, 3, {"(b . a) . (a . b)"}},
      {I::dishkant, I::kalmbach, 3, {"(b . a) . (a . b)", "((a . b) . a) . b"}},
      {I::dishkant, I::non_tollens, 2, {"a . (a . b)"}},
      {I::dishkant, I::relevance, 3,
       {"((a . b) . b) . b", "((b . a) . a) . b", "((a . b) . a) . b"}},
      {I::kalmbach, I::sasaki, 6, {"(a . (b . a)) . ((b . a) . (a . b))"}},
      {I::kalmbach, I::relevance, 4, {"(a . (b . a)) . (a . b)"}},
      {I::non_tollens, I::sasaki, 4, {"((b . a) . a) . (a . b)"}},
      {I::non_tollens, I::relevance, 5, {"(((b . a) . b) . b) . (a . b)"}},
  };
}

/// Whether the table lists a definition of target in basis (the diagonal
/// is the trivial a . b).
inline const CrossDefinition* find_cross_definition(Implication target, Implication basis) {
  static const auto table = cross_definitions();
  for (const auto& row : table) {
    if (row.target == target && row.basis == basis) return &row;
  }
  return nullptr;
}

}  // namespace qia::catalog
