#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qia/algebras.hpp"
#include "qia/core.hpp"
#include "qia/eval.hpp"
#include "qia/free2.hpp"
#include "qia/magma.hpp"
#include "qia/term.hpp"
#include "qia/text_io.hpp"

namespace qia {

// ---------------------------------------------------------------------------
// Term enumeration over one basis implication

inline constexpr std::size_t kMaxTermSize = 8;

/// Minimum-size terms over a, b (optionally 0, 1) built with one basis
/// implication, bucketed by size = number of binary operations. Every term
/// in layers[s][id] realizes free-algebra element id and no smaller term
/// does.
struct TermFrontier {
  Implication basis = Implication::dishkant;
  std::vector<std::map<Element, std::vector<Term>>> layers;
  std::map<Element, std::size_t> min_size;
  bool saturated = false;

  std::vector<Element> reached() const {
    std::vector<Element> out;
    for (const auto& [id, size] : min_size) out.push_back(id);
    return out;
  }

  const std::vector<Term>* terms_for(Element id) const {
    auto it = min_size.find(id);
    if (it == min_size.end()) return nullptr;
    return &layers[it->second].at(id);
  }
};

/// Layer s combines layers s1 and s2 with s1 + s2 + 1 = s. A minimum-size
/// term only has minimum-size subterms, so combining the stored
/// representatives loses nothing. Stops early once the closure is reached.
inline TermFrontier enumerate_terms_by_size(Implication basis, std::size_t max_size,
                                            bool include_constants = false,
                                            const Free2& f = free2()) {
  if (max_size > kMaxTermSize) {
    throw InputError("term size bound must be at most " + std::to_string(kMaxTermSize));
  }
  TermFrontier fr;
  fr.basis = basis;
  std::vector<Term> leaves{Term::variable('a'), Term::variable('b')};
  if (include_constants) {
    leaves.push_back(Term::zero());
    leaves.push_back(Term::one());
  }
  fr.layers.emplace_back();
  for (const auto& t : leaves) {
    auto id = f.evaluate(t);
    if (fr.min_size.emplace(id, 0).second || fr.min_size[id] == 0) fr.layers[0][id].push_back(t);
  }
  std::optional<std::size_t> closure_size;
  if (!include_constants) closure_size = f.closure(basis).size();
  for (std::size_t s = 1; s <= max_size; ++s) {
    if (closure_size && fr.min_size.size() == *closure_size) break;
    std::map<Element, std::vector<Term>> layer;
    for (std::size_t s1 = 0; s1 < s; ++s1) {
      const auto s2 = s - 1 - s1;
      for (const auto& [x, xs] : fr.layers[s1]) {
        for (const auto& [y, ys] : fr.layers[s2]) {
          const auto z = f.implication(basis, x, y);
          if (fr.min_size.count(z)) continue;
          auto& bucket = layer[z];
          for (const auto& tx : xs) {
            for (const auto& ty : ys) bucket.push_back(Term::implies(basis, tx, ty));
          }
        }
      }
    }
    for (const auto& [id, terms] : layer) fr.min_size.emplace(id, s);
    fr.layers.push_back(std::move(layer));
  }
  fr.saturated = closure_size && fr.min_size.size() == *closure_size;
  return fr;
}

enum class DefinitionStatus { found, not_expressible, beyond_bound };

struct ShortestDefinition {
  DefinitionStatus status = DefinitionStatus::not_expressible;
  std::size_t size = 0;  // binary operations
  std::vector<Term> terms;
};

/// All minimum-size terms over a, b in the basis implication that equal
/// a ->target b in every OML.
inline ShortestDefinition shortest_definition(Implication target, Implication basis,
                                              std::size_t max_size = kMaxTermSize,
                                              const Free2& f = free2()) {
  const auto goal = f.implication(target, f.generator_a(), f.generator_b());
  const auto closure = f.closure(basis);
  ShortestDefinition out;
  if (!std::binary_search(closure.begin(), closure.end(), goal)) return out;
  const auto fr = enumerate_terms_by_size(basis, max_size, false, f);
  const auto* terms = fr.terms_for(goal);
  if (!terms) {
    out.status = DefinitionStatus::beyond_bound;
    return out;
  }
  out.status = DefinitionStatus::found;
  out.size = fr.min_size.at(goal);
  out.terms = *terms;
  return out;
}

// ---------------------------------------------------------------------------
// Finite model search

inline constexpr std::size_t kDefaultMaxModelSize = 8;

/// Tables of the given size satisfying every `satisfy` clause and, when
/// `violate` is non-empty, failing at least one of the `violate` clauses.
struct ModelQuery {
  std::vector<HornClause> satisfy;
  std::vector<HornClause> violate;
  std::size_t size = 1;
  std::uint64_t budget = 10'000'000;
  std::size_t max_size = kDefaultMaxModelSize;
};

enum class ModelStatus { found, none, exhausted };

inline std::string_view model_status_name(ModelStatus s) {
  switch (s) {
    case ModelStatus::found: return "FOUND";
    case ModelStatus::none: return "NONE";
    case ModelStatus::exhausted: return "EXHAUSTED";
  }
  return "?";
}

struct ModelResult {
  ModelStatus status = ModelStatus::none;
  std::optional<Magma> model;
  std::uint64_t nodes = 0;
};

namespace detail {

// A term flattened for evaluation against a partially filled table.
struct FlatTerm {
  enum class Op : std::uint8_t { variable, unit, apply };
  struct Node {
    Op op;
    std::uint8_t var = 0;
    int left = -1;
    int right = -1;
  };
  std::vector<Node> nodes;
  int root = -1;

  static FlatTerm from(const Term& t) {
    FlatTerm f;
    f.root = f.add(t);
    return f;
  }

  int add(const Term& t) {
    switch (t.kind()) {
      case NodeKind::variable:
        nodes.push_back({Op::variable, static_cast<std::uint8_t>(t.name() - 'a')});
        return static_cast<int>(nodes.size()) - 1;
      case NodeKind::one:
        nodes.push_back({Op::unit});
        return static_cast<int>(nodes.size()) - 1;
      case NodeKind::generic: {
        auto l = add(t.left());
        auto r = add(t.right());
        nodes.push_back({Op::apply, 0, l, r});
        return static_cast<int>(nodes.size()) - 1;
      }
      case NodeKind::zero:
        throw InputError("model search does not support the constant 0");
      default:
        throw InputError("model search clauses may only use the generic operation '.': " +
                         render_term(t));
    }
  }
};

struct Partial {
  std::size_t n;
  std::vector<int> cells;  // -1 = unassigned

  // Value of node, or -1 with `blocked` set to the first unknown cell whose
  // arguments are known.
  int eval(const FlatTerm& f, int node, const std::array<Element, 26>& env, int& blocked) const {
    const auto& nd = f.nodes[static_cast<std::size_t>(node)];
    switch (nd.op) {
      case FlatTerm::Op::variable: return env[nd.var];
      case FlatTerm::Op::unit:
        if (cells[0] < 0) blocked = 0;
        return cells[0];
      case FlatTerm::Op::apply: {
        auto l = eval(f, nd.left, env, blocked);
        if (l < 0) return -1;
        auto r = eval(f, nd.right, env, blocked);
        if (r < 0) return -1;
        auto cell = static_cast<std::size_t>(l) * n + static_cast<std::size_t>(r);
        if (cells[cell] < 0) blocked = static_cast<int>(cell);
        return cells[cell];
      }
    }
    return -1;
  }
};

struct FlatClause {
  std::vector<std::pair<FlatTerm, FlatTerm>> premises;
  std::pair<FlatTerm, FlatTerm> conclusion;
  std::vector<char> vars;
};

struct GroundInstance {
  std::size_t clause;
  std::array<Element, 26> env;
};

class ModelSearch {
 public:
  explicit ModelSearch(const ModelQuery& q) : query_(q) {
    partial_.n = q.size;
    partial_.cells.assign(q.size * q.size, -1);
    symmetric_ = true;
    for (const auto& c : q.satisfy) {
      FlatClause fc;
      for (const auto& p : c.premises) fc.premises.emplace_back(FlatTerm::from(p.lhs), FlatTerm::from(p.rhs));
      fc.conclusion = {FlatTerm::from(c.conclusion.lhs), FlatTerm::from(c.conclusion.rhs)};
      fc.vars = variables(c);
      clauses_.push_back(std::move(fc));
    }
    // Symmetry reduction is sound only for permutation-invariant queries;
    // the constant 1 is read at cell (0,0) and breaks invariance.
    for (const auto* list : {&q.satisfy, &q.violate}) {
      for (const auto& c : *list) {
        if (any_term(c, [](const Term& t) { return has_constant(t); })) symmetric_ = false;
        // Also validates that only the generic operation occurs.
        for (const auto& p : c.premises) { FlatTerm::from(p.lhs); FlatTerm::from(p.rhs); }
        FlatTerm::from(c.conclusion.lhs);
        FlatTerm::from(c.conclusion.rhs);
      }
    }
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
      for_each_tuple(q.size, clauses_[ci].vars.size(), [&](const std::vector<Element>& tuple) {
        GroundInstance g{ci, {}};
        for (std::size_t k = 0; k < tuple.size(); ++k) {
          g.env[static_cast<std::size_t>(clauses_[ci].vars[k] - 'a')] = tuple[k];
        }
        instances_.push_back(g);
        return true;
      });
    }
  }

  ModelResult run() {
    ModelResult result;
    if (query_.budget == 0) {
      result.status = ModelStatus::exhausted;
      return result;
    }
    auto outcome = search();
    result.nodes = nodes_;
    if (outcome == Outcome::found) {
      result.status = ModelStatus::found;
      result.model = found_;
    } else if (outcome == Outcome::exhausted) {
      result.status = ModelStatus::exhausted;
    } else {
      result.status = ModelStatus::none;
    }
    return result;
  }

 private:
  enum class Outcome { found, none, exhausted };
  enum class Step { ok, conflict };

  Step propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& g : instances_) {
        const auto& c = clauses_[g.clause];
        bool premises_hold = true;
        bool vacuous = false;
        for (const auto& [l, r] : c.premises) {
          int bl = -1;
          int br = -1;
          auto lv = partial_.eval(l, l.root, g.env, bl);
          auto rv = partial_.eval(r, r.root, g.env, br);
          if (lv < 0 || rv < 0) {
            premises_hold = false;
          } else if (lv != rv) {
            vacuous = true;
            break;
          }
        }
        if (vacuous || !premises_hold) continue;
        const auto& [l, r] = c.conclusion;
        int bl = -1;
        int br = -1;
        auto lv = partial_.eval(l, l.root, g.env, bl);
        auto rv = partial_.eval(r, r.root, g.env, br);
        if (lv >= 0 && rv >= 0) {
          if (lv != rv) return Step::conflict;
          continue;
        }
        // Force the outermost unknown cell of one side to the known value.
        if (lv >= 0 && rv < 0 && is_root_blocked(r, g.env, br)) {
          assign(static_cast<std::size_t>(br), lv);
          changed = true;
        } else if (rv >= 0 && lv < 0 && is_root_blocked(l, g.env, bl)) {
          assign(static_cast<std::size_t>(bl), rv);
          changed = true;
        }
      }
    }
    return Step::ok;
  }

  bool is_root_blocked(const FlatTerm& f, const std::array<Element, 26>& env, int blocked) const {
    const auto& root = f.nodes[static_cast<std::size_t>(f.root)];
    if (root.op == FlatTerm::Op::unit) return blocked == 0;
    if (root.op != FlatTerm::Op::apply) return false;
    int ignore = -1;
    auto l = partial_.eval(f, root.left, env, ignore);
    auto r = partial_.eval(f, root.right, env, ignore);
    return l >= 0 && r >= 0 &&
           static_cast<std::size_t>(l) * partial_.n + static_cast<std::size_t>(r) ==
               static_cast<std::size_t>(blocked);
  }

  void assign(std::size_t cell, int value) {
    partial_.cells[cell] = value;
    trail_.push_back(cell);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      partial_.cells[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  bool accept_leaf() {
    std::vector<Element> table(partial_.cells.begin(), partial_.cells.end());
    Magma m(query_.size, std::move(table));
    for (const auto& c : query_.satisfy) {
      if (!check_horn(c, m).passed()) {
        throw InternalError("model search produced a table violating " + render(c));
      }
    }
    if (!query_.violate.empty()) {
      bool violates = std::any_of(query_.violate.begin(), query_.violate.end(),
                                  [&](const HornClause& c) { return !check_horn(c, m).passed(); });
      if (!violates) return false;
    }
    found_ = std::move(m);
    return true;
  }

  Outcome search() {
    const auto mark = trail_.size();
    if (propagate() == Step::conflict) {
      undo_to(mark);
      return Outcome::none;
    }
    const auto n = query_.size;
    std::size_t cell = 0;
    while (cell < partial_.cells.size() && partial_.cells[cell] >= 0) ++cell;
    if (cell == partial_.cells.size()) {
      auto ok = accept_leaf();
      undo_to(mark);
      return ok ? Outcome::found : Outcome::none;
    }
    std::vector<bool> mentioned(n, !symmetric_);
    if (symmetric_) {
      for (std::size_t k = 0; k < partial_.cells.size(); ++k) {
        if (partial_.cells[k] < 0) continue;
        mentioned[k / n] = mentioned[k % n] = true;
        mentioned[static_cast<std::size_t>(partial_.cells[k])] = true;
      }
      mentioned[cell / n] = mentioned[cell % n] = true;
    }
    bool fresh_tried = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!mentioned[v]) {
        if (fresh_tried) continue;
        fresh_tried = true;
      }
      if (nodes_ >= query_.budget) {
        undo_to(mark);
        return Outcome::exhausted;
      }
      ++nodes_;
      const auto inner = trail_.size();
      assign(cell, static_cast<int>(v));
      auto outcome = search();
      if (outcome != Outcome::none) {
        if (outcome == Outcome::exhausted) undo_to(mark);
        return outcome;
      }
      undo_to(inner);
    }
    undo_to(mark);
    return Outcome::none;
  }

  const ModelQuery& query_;
  Partial partial_;
  std::vector<FlatClause> clauses_;
  std::vector<GroundInstance> instances_;
  std::vector<std::size_t> trail_;
  std::uint64_t nodes_ = 0;
  bool symmetric_ = true;
  std::optional<Magma> found_;
};

}  // namespace detail

/// Backtracking over table cells in row-major order with propagation of
/// ground clause instances and least-number symmetry reduction. Every FOUND
/// table is re-checked against the satisfy clauses by plain evaluation.
inline ModelResult find_model(const ModelQuery& q) {
  if (q.size < 1) throw InputError("model size must be at least 1");
  if (q.size > q.max_size) {
    throw InputError("model size " + std::to_string(q.size) + " exceeds the maximum " +
                     std::to_string(q.max_size));
  }
  // A violate clause that is also required can never fail; if all of them
  // are required the query has no model by construction.
  ModelQuery pruned = q;
  pruned.violate.clear();
  for (const auto& v : q.violate) {
    if (std::find(q.satisfy.begin(), q.satisfy.end(), v) == q.satisfy.end()) pruned.violate.push_back(v);
  }
  if (!q.violate.empty() && pruned.violate.empty()) {
    throw InputError("every violate clause is also a satisfy clause, e.g. " + render(q.violate.front()));
  }
  return detail::ModelSearch(pruned).run();
}

/// A query file: `size:`, `budget:`, `satisfy:` and `violate:` headers.
/// Clauses on the lines after a `satisfy:`/`violate:` header belong to that
/// section; system names (oia, omia, qsia, qia, uqia[:variant]) may follow
/// the header on the same line. `size:` accepts `n` or `lo..hi`.
struct QueryFile {
  std::vector<HornClause> satisfy;
  std::vector<HornClause> violate;
  std::size_t size_min = 0;
  std::size_t size_max = 0;
  std::uint64_t budget = 10'000'000;

  ModelQuery query(std::size_t size) const { return {satisfy, violate, size, budget}; }
};

inline std::vector<HornClause> system_clauses(std::string_view spec) {
  std::optional<JoinVariant> variant;
  auto colon = spec.find(':');
  auto name = spec.substr(0, colon);
  if (colon != std::string_view::npos) variant = variant_from_string(spec.substr(colon + 1));
  auto system = system_from_string(name);
  if (system == SystemName::uqia && !variant) variant = JoinVariant::unified;
  std::vector<HornClause> out;
  for (const auto& ax : axiom_system(system, variant).axioms) out.push_back(ax.clause);
  return out;
}

inline QueryFile parse_query(std::istream& in, std::string_view source = "<input>") {
  QueryFile q;
  std::vector<HornClause>* section = nullptr;
  bool have_size = false;
  std::string line;
  std::size_t number = 0;
  auto fail = [&](const std::string& msg) { text_io::fail_at(source, number, msg); };
  auto integer = [&](std::string_view s) -> std::uint64_t {
    text_io::Token t{std::string(text_io::trim(s)), number};
    auto v = text_io::parse_integer(t, source);
    if (v < 0) fail("expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
  };
  while (std::getline(in, line)) {
    ++number;
    auto body = text_io::trim(text_io::strip_comment(line));
    if (body.empty()) continue;
    auto header = [&](std::string_view key) -> std::optional<std::string_view> {
      if (!body.starts_with(key)) return std::nullopt;
      return text_io::trim(body.substr(key.size()));
    };
    try {
      if (auto rest = header("size:")) {
        auto dots = rest->find("..");
        if (dots == std::string_view::npos) {
          q.size_min = q.size_max = integer(*rest);
        } else {
          q.size_min = integer(rest->substr(0, dots));
          q.size_max = integer(rest->substr(dots + 2));
        }
        if (q.size_min < 1 || q.size_max < q.size_min) fail("invalid size range");
        have_size = true;
      } else if (auto rest = header("budget:")) {
        q.budget = integer(*rest);
      } else if (auto rest = header("satisfy:")) {
        section = &q.satisfy;
        std::istringstream names{std::string(*rest)};
        for (std::string w; names >> w;) for (auto& c : system_clauses(w)) section->push_back(c);
      } else if (auto rest = header("violate:")) {
        section = &q.violate;
        std::istringstream names{std::string(*rest)};
        for (std::string w; names >> w;) for (auto& c : system_clauses(w)) section->push_back(c);
      } else {
        if (!section) fail("clause before any 'satisfy:' or 'violate:' header");
        section->push_back(parse_clause(body));
      }
    } catch (const InputError& e) {
      std::string what = e.what();
      if (what.starts_with(std::string(source) + ":")) throw;
      fail(what);
    }
  }
  if (!have_size) text_io::fail_at(source, number, "missing 'size:' header");
  return q;
}

}  // namespace qia
