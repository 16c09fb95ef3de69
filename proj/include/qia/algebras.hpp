#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qia/core.hpp"
#include "qia/eval.hpp"
#include "qia/lattice.hpp"
#include "qia/magma.hpp"
#include "qia/term.hpp"

namespace qia {

enum class SystemName { oia, omia, qsia, qia, uqia };

/// The four ways of writing a join with the generic operation alone.
enum class JoinVariant {
  dishkant_relevance,  // (a.b).b                        for ->2, ->5
  sasaki_kalmbach,     // ((a.b).(b.a)).a                for ->1, ->3
  non_tollens,         // (a.(a.b)).b                    for ->4
  unified,             // ((((a.b).(b.a)).a).b).b        for ->1..->5
};

inline constexpr std::array<JoinVariant, 4> all_join_variants{
    JoinVariant::dishkant_relevance, JoinVariant::sasaki_kalmbach, JoinVariant::non_tollens,
    JoinVariant::unified};

inline std::string_view system_label(SystemName s) {
  switch (s) {
    case SystemName::oia: return "OIA";
    case SystemName::omia: return "OMIA";
    case SystemName::qsia: return "QSIA";
    case SystemName::qia: return "QIA";
    case SystemName::uqia: return "UQIA";
  }
  return "?";
}

inline SystemName system_from_string(std::string_view s) {
  if (s == "oia" || s == "OIA") return SystemName::oia;
  if (s == "omia" || s == "OMIA") return SystemName::omia;
  if (s == "qsia" || s == "QSIA") return SystemName::qsia;
  if (s == "qia" || s == "QIA") return SystemName::qia;
  if (s == "uqia" || s == "UQIA") return SystemName::uqia;
  throw InputError("unknown axiom system '" + std::string(s) + "'");
}

inline std::string_view variant_label(JoinVariant v) {
  switch (v) {
    case JoinVariant::dishkant_relevance: return "dishkant-relevance";
    case JoinVariant::sasaki_kalmbach: return "sasaki-kalmbach";
    case JoinVariant::non_tollens: return "non-tollens";
    case JoinVariant::unified: return "unified";
  }
  return "?";
}

inline JoinVariant variant_from_string(std::string_view s) {
  for (auto v : all_join_variants) {
    if (variant_label(v) == s) return v;
  }
  throw InputError("unknown join variant '" + std::string(s) +
                   "' (expected dishkant-relevance, sasaki-kalmbach, non-tollens or unified)");
}

inline Term join_variant_macro(JoinVariant v) {
  switch (v) {
    case JoinVariant::dishkant_relevance: return parse_term("(a . b) . b");
    case JoinVariant::sasaki_kalmbach: return parse_term("((a . b) . (b . a)) . a");
    case JoinVariant::non_tollens: return parse_term("(a . (a . b)) . b");
    case JoinVariant::unified: return parse_term("((((a . b) . (b . a)) . a) . b) . b");
  }
  throw InternalError("bad join variant");
}

/// Variants that denote the lattice join when `.` is read as ->i.
inline std::vector<JoinVariant> paired_variants(Implication i) {
  switch (i) {
    case Implication::sasaki:
    case Implication::kalmbach: return {JoinVariant::sasaki_kalmbach, JoinVariant::unified};
    case Implication::dishkant:
    case Implication::relevance: return {JoinVariant::dishkant_relevance, JoinVariant::unified};
    case Implication::non_tollens: return {JoinVariant::non_tollens, JoinVariant::unified};
    case Implication::classical: return {};
  }
  return {};
}

/// a * b := (b.(b.a)).(((a.b).a).b); evaluates to ->2 for every quantum
/// implication. Also the right-hand side of the two-step rewriting of ab
/// that holds in every OIA.
inline Term star_macro() { return parse_term("(b . (b . a)) . (((a . b) . a) . b)"); }

/// (b.a).(a.b): turns the Sasaki table into the Dishkant one.
inline Term sasaki_to_dishkant_macro() { return parse_term("(b . a) . (a . b)"); }

/// The default induced join (ab)b.
inline Term induced_join_macro() { return parse_term("(a . b) . b"); }

struct Axiom {
  std::string name;
  HornClause clause;
};

struct AxiomSystem {
  SystemName name;
  std::optional<JoinVariant> variant;
  std::vector<Axiom> axioms;
};

namespace detail {

inline Axiom axiom(std::string name, std::string_view text) {
  return {std::move(name), parse_clause(text)};
}

// Left-nested chain: first . x1 . x2 ... with every step parenthesised.
inline Term chain(std::string_view letters) {
  Term t = Term::variable(letters[0]);
  for (auto c : letters.substr(1)) t = Term::dot(t, Term::variable(c));
  return t;
}

}  // namespace detail

/// Axioms as written for the generic operation `.`; the constant 1 stands
/// for aa (checked constant by the first axiom where the system needs it).
inline AxiomSystem axiom_system(SystemName name, std::optional<JoinVariant> variant = std::nullopt) {
  using detail::axiom;
  AxiomSystem s{name, std::nullopt, {}};
  switch (name) {
    case SystemName::oia:
      s.axioms = {axiom("OI1", "(a . b) . a = a"),
                  axiom("OI2", "(a . b) . b = (b . a) . a"),
                  axiom("OI3", "a . ((b . a) . c) = a . c")};
      break;
    case SystemName::omia:
      s.axioms = {axiom("O1", "a . a = b . b"),
                  axiom("O2", "a . (b . a) = 1"),
                  axiom("O3", "(a . b) . a = a"),
                  axiom("O4", "(a . b) . b = (b . a) . a"),
                  axiom("O5", "(((a . b) . b) . c) . (a . c) = 1"),
                  {"O6", HornClause{{}, {detail::chain("abbcccaacaa"), detail::chain("abbcc")}}}};
      break;
    case SystemName::qsia:
      s.axioms = {axiom("QS1", "(a . b) . a = a"),
                  axiom("QS2", "(a . b) . (a . c) = (b . a) . (b . c)"),
                  axiom("QS3", "((a . b) . (b . a)) . a = ((b . a) . (a . b)) . b")};
      break;
    case SystemName::qia: {
      auto oia = axiom_system(SystemName::oia);
      const std::string names[3] = {"Q1", "Q2", "Q3"};
      for (std::size_t i = 0; i < oia.axioms.size(); ++i) {
        s.axioms.push_back({names[i], expand_generic(oia.axioms[i].clause, star_macro())});
      }
      break;
    }
    case SystemName::uqia: {
      if (!variant) throw InputError("UQIA needs a join variant");
      s.variant = variant;
      // `v` marks the join placeholder, replaced by the selected variant.
      const std::vector<Axiom> raw = {
          axiom("UQ1", "a . a = b . b"),
          axiom("UQ2", "a . (a v b) = 1"),
          axiom("UQ3", "b . (a v b) = 1"),
          axiom("UQ4", "a . 1 = 1"),
          axiom("UQ5(=>)", "a . b = 1 & b . a = 1 => a = b"),
          axiom("UQ5(<=)", "a = b => a . b = 1"),
          axiom("UQ6", "a . b = 1 & b . c = 1 => a . c = 1"),
          axiom("UQ7", "a . c = 1 & b . c = 1 => (a v b) . c = 1"),
          axiom("UQ8", "b . a = 1 => a v (a . b) = 1"),
          axiom("UQ9", "b . a = 1 => ((a . b) . b) . a = 1"),
          axiom("UQ10", "b . a = 1 => a . ((a . b) . b) = 1"),
          axiom("UQ11", "b . a = 1 & c . a = 1 & c . b = 1 => (a . c) . (b . c) = 1"),
          axiom("UQ12", "c . a = 1 & c . b = 1 & a . b = 1 & a v (b . c) = 1 => b . a = 1")};
      const auto macro = join_variant_macro(*variant);
      for (const auto& ax : raw) {
        s.axioms.push_back({ax.name, replace_operator(ax.clause, NodeKind::join, macro)});
      }
      break;
    }
  }
  return s;
}

/// a <= b <= c => c = (ca)b, with x <= y read as xy = 1.
inline HornClause implication_orthomodular_law() {
  return parse_clause("a . b = 1 & b . c = 1 => c = (c . a) . b");
}

struct AxiomResult {
  std::string name;
  CheckResult result;
};

struct SystemReport {
  std::string system;
  std::vector<AxiomResult> results;

  bool passed() const {
    return std::all_of(results.begin(), results.end(),
                       [](const AxiomResult& r) { return r.result.passed(); });
  }

  const AxiomResult* find(std::string_view name) const {
    for (const auto& r : results) {
      if (r.name == name) return &r;
    }
    return nullptr;
  }
};

inline SystemReport check_axiom_system(const Magma& m, const AxiomSystem& s) {
  SystemReport report;
  report.system = std::string(system_label(s.name));
  if (s.variant) report.system += "[" + std::string(variant_label(*s.variant)) + "]";
  for (const auto& ax : s.axioms) report.results.push_back({ax.name, check_horn(ax.clause, m)});
  return report;
}

inline std::string format_report(const SystemReport& r) {
  std::ostringstream out;
  for (const auto& a : r.results) {
    out << a.name << ": ";
    if (a.result.passed()) {
      out << "PASS (" << a.result.assignments << " assignments)\n";
    } else {
      const auto& w = *a.result.witness;
      out << "FAIL at " << format_assignment(w.assignment) << ": lhs " << w.lhs << ", rhs "
          << w.rhs << '\n';
    }
  }
  out << r.system << ": " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Induced order, join semilattice, filters

/// a <= b iff ab = 1, where 1 = aa must not depend on a.
class InducedOrder {
 public:
  InducedOrder(std::size_t size, Element one, std::vector<bool> leq,
               std::vector<ConditionFailure> failures)
      : size_(size), one_(one), leq_(std::move(leq)), failures_(std::move(failures)) {}

  std::size_t size() const { return size_; }
  Element one() const { return one_; }
  bool leq(Element a, Element b) const { return leq_[a * size_ + b]; }
  const std::vector<ConditionFailure>& failures() const { return failures_; }
  bool is_poset() const { return failures_.empty(); }

  std::optional<Element> bottom() const {
    for (Element c = 0; c < size_; ++c) {
      bool below_all = true;
      for (Element a = 0; a < size_ && below_all; ++a) below_all = leq(c, a);
      if (below_all) return c;
    }
    return std::nullopt;
  }


 private:
  std::size_t size_ = 0;
  Element one_ = 0;
  std::vector<bool> leq_;
  std::vector<ConditionFailure> failures_;
};

/// Throws InputError when aa is not constant.
inline InducedOrder induced_order(const Magma& m) {
  const auto n = m.size();
  const Element one = m(0, 0);
  for (Element a = 1; a < n; ++a) {
    if (m(a, a) != one) {
      throw InputError("aa is not constant: 0.0 = " + std::to_string(one) + " but " +
                       std::to_string(a) + "." + std::to_string(a) + " = " +
                       std::to_string(m(a, a)));
    }
  }
  std::vector<bool> leq(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) leq[a * n + b] = m(a, b) == one;
  }
  auto le = [&](Element a, Element b) { return leq[a * n + b]; };
  std::vector<ConditionFailure> failures;
  auto fail = [&](std::string name, Assignment w) {
    for (const auto& f : failures) {
      if (f.condition == name) return;
    }
    failures.push_back({std::move(name), std::move(w), {}});
  };
  for (Element a = 0; a < n; ++a) {
    if (!le(a, one)) fail("top", {{'a', a}});
    for (Element b = 0; b < n; ++b) {
      if (a != b && le(a, b) && le(b, a)) fail("antisymmetric", {{'a', a}, {'b', b}});
      for (Element c = 0; c < n; ++c) {
        if (le(a, b) && le(b, c) && !le(a, c)) fail("transitive", {{'a', a}, {'b', b}, {'c', c}});
      }
    }
  }
  InducedOrder order(n, one, std::move(leq), std::move(failures));
  return order;
}

struct InducedSemilattice {
  InducedOrder order;
  std::vector<Element> join;  // row-major n x n
  std::vector<ConditionFailure> failures;
  std::vector<Element> atoms;
  std::vector<Element> coatoms;
  std::vector<std::pair<Element, Element>> covers;  // (lower, upper)

  Element join_of(Element a, Element b) const { return join[a * order.size() + b]; }
  bool is_semilattice() const { return order.is_poset() && failures.empty(); }
};

/// Join given by a two-variable macro over `.`, by default (ab)b. Checks
/// it is the least upper bound in the induced order and lists the covering
/// relation.
inline InducedSemilattice induced_join_semilattice(const Magma& m,
                                                   const Term& join_macro = induced_join_macro()) {
  InducedSemilattice s{induced_order(m), {}, {}, {}, {}, {}};
  const auto n = m.size();
  const auto& le = s.order;
  s.join.resize(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      s.join[a * n + b] = evaluate(join_macro, m, Assignment{{'a', a}, {'b', b}});
    }
  }
  auto fail = [&](std::string name, Assignment w, std::string detail) {
    for (const auto& f : s.failures) {
      if (f.condition == name) return;
    }
    s.failures.push_back({std::move(name), std::move(w), std::move(detail)});
  };
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const auto j = s.join_of(a, b);
      if (!le.leq(a, j) || !le.leq(b, j)) {
        fail("upper-bound", {{'a', a}, {'b', b}}, "join = " + std::to_string(j));
      }
      for (Element c = 0; c < n; ++c) {
        if (le.leq(a, c) && le.leq(b, c) && !le.leq(j, c)) {
          fail("least", {{'a', a}, {'b', b}, {'c', c}}, "join = " + std::to_string(j));
        }
      }
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      if (x == y || !le.leq(x, y)) continue;
      bool covering = true;
      for (Element z = 0; z < n && covering; ++z) {
        if (z != x && z != y && le.leq(x, z) && le.leq(z, y)) covering = false;
      }
      if (covering) s.covers.emplace_back(x, y);
    }
  }
  const auto bottom = le.bottom();
  for (const auto& [x, y] : s.covers) {
    if (bottom && x == *bottom) s.atoms.push_back(y);
    if (y == le.one()) s.coatoms.push_back(x);
  }
  std::sort(s.atoms.begin(), s.atoms.end());
  std::sort(s.coatoms.begin(), s.coatoms.end());
  return s;
}

/// Hasse diagram in DOT, drawn bottom-up: one node per element and one
/// edge per covering pair.
inline std::string render_hasse_dot(const InducedSemilattice& s,
                                    const std::vector<std::string>& names = {}) {
  auto label = [&](Element e) {
    return e < names.size() ? names[e] : std::to_string(e);
  };
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (Element e = 0; e < s.order.size(); ++e) {
    out << "  n" << e << " [label=\"" << label(e) << "\"];\n";
  }
  for (const auto& [lo, hi] : s.covers) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

struct FilterReport {
  Element generator = 0;
  std::vector<Element> members;     // sorted
  std::vector<Element> complement;  // complement[i] = members[i] . generator
  bool closed = true;               // complement maps the filter into itself
  OmlReport oml;

  bool passed() const { return closed && oml.passed(); }
};

struct FiltersReport {
  std::vector<FilterReport> filters;
  bool is_ojs() const {
    return std::all_of(filters.begin(), filters.end(),
                       [](const FilterReport& f) { return f.passed(); });
  }
};

/// For every x: F_x = {y | x <= y} with the local complement y -> yx, and
/// whether <F_x, v, local complement> is an orthomodular lattice.
inline FiltersReport principal_filters_report(const Magma& m) {
  const auto s = induced_join_semilattice(m);
  FiltersReport report;
  const auto n = m.size();
  for (Element x = 0; x < n; ++x) {
    FilterReport f;
    f.generator = x;
    for (Element y = 0; y < n; ++y) {
      if (s.order.leq(x, y)) f.members.push_back(y);
    }
    std::vector<int> local(n, -1);
    for (std::size_t i = 0; i < f.members.size(); ++i) local[f.members[i]] = static_cast<int>(i);
    OmlTables t{f.members.size(), {}, {}, {}};
    for (auto y : f.members) {
      f.complement.push_back(m(y, x));
      t.names.push_back(std::to_string(y));
      if (local[m(y, x)] < 0) f.closed = false;
      for (auto z : f.members) {
        if (local[s.join_of(y, z)] < 0) f.closed = false;
      }
    }
    if (f.closed) {
      for (auto y : f.members) {
        t.ortho.push_back(static_cast<Element>(local[m(y, x)]));
        for (auto z : f.members) t.join.push_back(static_cast<Element>(local[s.join_of(y, z)]));
      }
      f.oml = verify_oml(t);
    }
    report.filters.push_back(std::move(f));
  }
  return report;
}

struct SolWitness {
  Element a = 0;
  Element b = 0;
  Element c = 0;
  Element local_complement = 0;  // c.b
  Element joined = 0;            // (c.a) v b
};

/// Condition C: a <= b <= c implies cb = (ca) v b. Returns the
/// lexicographically first violating chain.
inline std::optional<SolWitness> check_sol_condition(const Magma& m) {
  const auto s = induced_join_semilattice(m);
  const auto n = m.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (!s.order.leq(a, b)) continue;
      for (Element c = 0; c < n; ++c) {
        if (!s.order.leq(b, c)) continue;
        const auto lhs = m(c, b);
        const auto rhs = s.join_of(m(c, a), b);
        if (lhs != rhs) return SolWitness{a, b, c, lhs, rhs};
      }
    }
  }
  return std::nullopt;
}

/// New table with (x, y) -> macro(a := x, b := y) evaluated in m.
inline Magma translate_magma(const Magma& m, const Term& macro) {
  for (char v : variables(macro)) {
    if (v != 'a' && v != 'b') {
      throw InputError(std::string("macro may only use variables a and b, got '") + v + "'");
    }
  }
  if (has_lattice_connective(macro)) throw InputError("macro may only use the generic operation '.'");
  const auto n = m.size();
  std::vector<Element> table(n * n);
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      table[x * n + y] = evaluate(macro, m, Assignment{{'a', x}, {'b', y}});
    }
  }
  return Magma(n, std::move(table), m.zero());
}

/// The lattice <A, join, a' = a.0> of a magma with a smallest element 0
/// (0.a = 1 for all a). Throws InputError when 0 is not a bottom or the
/// result is not an orthomodular lattice.
inline FiniteOml induce_oml_from_zero(const Magma& m, const Term& join_macro = induced_join_macro()) {
  if (!m.zero()) throw InputError("magma has no designated zero");
  const Element zero = *m.zero();
  const auto order = induced_order(m);
  for (Element a = 0; a < m.size(); ++a) {
    if (m(zero, a) != order.one()) {
      throw InputError("zero is not a bottom: " + std::to_string(zero) + "." + std::to_string(a) +
                       " = " + std::to_string(m(zero, a)) + ", expected " +
                       std::to_string(order.one()));
    }
  }
  const auto s = induced_join_semilattice(m, join_macro);
  OmlTables t{m.size(), s.join, {}, {}};
  for (Element a = 0; a < m.size(); ++a) t.ortho.push_back(m(a, zero));
  return FiniteOml::from_tables(std::move(t), "induced");
}

}  // namespace qia
