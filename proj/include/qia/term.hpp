#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qia/core.hpp"
#include "qia/text_io.hpp"

namespace qia {

enum class NodeKind : std::uint8_t {
  variable,
  zero,
  one,
  ortho,
  join,
  meet,
  implication,  // a concrete ->i
  generic,      // the unspecified binary operation, written `.`
};

/// Immutable term tree. Copies share structure.
class Term {
 public:
  struct Node {
    NodeKind kind;
    char name = 0;
    Implication impl = Implication::classical;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  Term() = default;

  static Term variable(char name) {
    if (name < 'a' || name > 'z' || name == 'v') {
      throw InputError(std::string("invalid variable name '") + name + "'");
    }
    return make({NodeKind::variable, name, Implication::classical, {}, {}});
  }
  static Term zero() { return make({NodeKind::zero, 0, Implication::classical, {}, {}}); }
  static Term one() { return make({NodeKind::one, 0, Implication::classical, {}, {}}); }
  static Term ortho(const Term& t) { return make({NodeKind::ortho, 0, Implication::classical, t.node_, {}}); }
  static Term join(const Term& l, const Term& r) { return binary(NodeKind::join, l, r); }
  static Term meet(const Term& l, const Term& r) { return binary(NodeKind::meet, l, r); }
  static Term implies(Implication i, const Term& l, const Term& r) {
    Node n{NodeKind::implication, 0, i, l.node_, r.node_};
    return make(std::move(n));
  }
  static Term dot(const Term& l, const Term& r) { return binary(NodeKind::generic, l, r); }

  bool empty() const { return !node_; }
  NodeKind kind() const { return node_->kind; }
  char name() const { return node_->name; }
  Implication implication() const { return node_->impl; }
  Term left() const { return Term(node_->left); }
  Term right() const { return Term(node_->right); }
  Term child() const { return Term(node_->left); }

  bool is_binary() const {
    auto k = kind();
    return k == NodeKind::join || k == NodeKind::meet || k == NodeKind::implication ||
           k == NodeKind::generic;
  }

  friend bool operator==(const Term& x, const Term& y) {
    return same(x.node_.get(), y.node_.get());
  }

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Term make(Node n) { return Term(std::make_shared<const Node>(std::move(n))); }
  static Term binary(NodeKind k, const Term& l, const Term& r) {
    return make({k, 0, Implication::classical, l.node_, r.node_});
  }
  static bool same(const Node* x, const Node* y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case NodeKind::variable: return x->name == y->name;
      case NodeKind::zero:
      case NodeKind::one: return true;
      case NodeKind::ortho: return same(x->left.get(), y->left.get());
      case NodeKind::implication:
        if (x->impl != y->impl) return false;
        [[fallthrough]];
      default:
        return same(x->left.get(), y->left.get()) && same(x->right.get(), y->right.get());
    }
  }

  std::shared_ptr<const Node> node_;
};

struct Equation {
  Term lhs;
  Term rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

/// premises => conclusion; a plain equation has no premises.
struct HornClause {
  std::vector<Equation> premises;
  Equation conclusion;
  friend bool operator==(const HornClause&, const HornClause&) = default;
};

// ---------------------------------------------------------------------------
// Structural queries

/// Number of binary-operation occurrences.
inline std::size_t binary_op_count(const Term& t) {
  if (t.is_binary()) return 1 + binary_op_count(t.left()) + binary_op_count(t.right());
  if (t.kind() == NodeKind::ortho) return binary_op_count(t.child());
  return 0;
}

/// Number of connective occurrences, unary included.
inline std::size_t operator_count(const Term& t) {
  if (t.is_binary()) return 1 + operator_count(t.left()) + operator_count(t.right());
  if (t.kind() == NodeKind::ortho) return 1 + operator_count(t.child());
  return 0;
}

/// Number of nodes: leaves plus connectives.
inline std::size_t symbol_count(const Term& t) {
  if (t.is_binary()) return 1 + symbol_count(t.left()) + symbol_count(t.right());
  if (t.kind() == NodeKind::ortho) return 1 + symbol_count(t.child());
  return 1;
}

namespace detail {
inline void collect_variables(const Term& t, std::vector<char>& out) {
  switch (t.kind()) {
    case NodeKind::variable:
      if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
      return;
    case NodeKind::zero:
    case NodeKind::one: return;
    case NodeKind::ortho: collect_variables(t.child(), out); return;
    default:
      collect_variables(t.left(), out);
      collect_variables(t.right(), out);
  }
}

template <class Pred>
bool any_node(const Term& t, Pred&& pred) {
  if (pred(t)) return true;
  if (t.kind() == NodeKind::ortho) return any_node(t.child(), pred);
  if (t.is_binary()) return any_node(t.left(), pred) || any_node(t.right(), pred);
  return false;
}
}  // namespace detail

/// Sorted distinct variable names.
inline std::vector<char> variables(const Term& t) {
  std::vector<char> out;
  detail::collect_variables(t, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<char> variables(const HornClause& c) {
  std::vector<char> out;
  for (const auto& eq : c.premises) {
    detail::collect_variables(eq.lhs, out);
    detail::collect_variables(eq.rhs, out);
  }
  detail::collect_variables(c.conclusion.lhs, out);
  detail::collect_variables(c.conclusion.rhs, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<char> variables(const Equation& eq) {
  return variables(HornClause{{}, eq});
}

inline bool has_generic(const Term& t) {
  return detail::any_node(t, [](const Term& n) { return n.kind() == NodeKind::generic; });
}

inline bool has_lattice_connective(const Term& t) {
  return detail::any_node(t, [](const Term& n) {
    auto k = n.kind();
    return k == NodeKind::ortho || k == NodeKind::join || k == NodeKind::meet ||
           k == NodeKind::implication;
  });
}

inline bool has_constant(const Term& t) {
  return detail::any_node(t, [](const Term& n) {
    return n.kind() == NodeKind::zero || n.kind() == NodeKind::one;
  });
}

template <class F>
bool any_term(const HornClause& c, F&& f) {
  for (const auto& eq : c.premises) {
    if (f(eq.lhs) || f(eq.rhs)) return true;
  }
  return f(c.conclusion.lhs) || f(c.conclusion.rhs);
}

/// Simultaneous substitution of variables by terms.
inline Term substitute(const Term& t, const std::map<char, Term>& with) {
  switch (t.kind()) {
    case NodeKind::variable: {
      auto it = with.find(t.name());
      return it == with.end() ? t : it->second;
    }
    case NodeKind::zero:
    case NodeKind::one: return t;
    case NodeKind::ortho: return Term::ortho(substitute(t.child(), with));
    case NodeKind::join: return Term::join(substitute(t.left(), with), substitute(t.right(), with));
    case NodeKind::meet: return Term::meet(substitute(t.left(), with), substitute(t.right(), with));
    case NodeKind::implication:
      return Term::implies(t.implication(), substitute(t.left(), with), substitute(t.right(), with));
    case NodeKind::generic: return Term::dot(substitute(t.left(), with), substitute(t.right(), with));
  }
  throw InternalError("bad node kind");
}

/// Replaces every binary node of the given kind, `x op y`, by
/// macro(a := x, b := y), bottom-up.
inline Term replace_operator(const Term& t, NodeKind kind, const Term& macro) {
  auto rec = [&](const Term& x) { return replace_operator(x, kind, macro); };
  switch (t.kind()) {
    case NodeKind::variable:
    case NodeKind::zero:
    case NodeKind::one: return t;
    case NodeKind::ortho: return Term::ortho(rec(t.child()));
    default: break;
  }
  auto l = rec(t.left());
  auto r = rec(t.right());
  if (t.kind() == kind) return substitute(macro, {{'a', l}, {'b', r}});
  switch (t.kind()) {
    case NodeKind::join: return Term::join(l, r);
    case NodeKind::meet: return Term::meet(l, r);
    case NodeKind::implication: return Term::implies(t.implication(), l, r);
    default: return Term::dot(l, r);
  }
}

inline HornClause replace_operator(const HornClause& c, NodeKind kind, const Term& macro) {
  HornClause out;
  for (const auto& eq : c.premises) {
    out.premises.push_back({replace_operator(eq.lhs, kind, macro), replace_operator(eq.rhs, kind, macro)});
  }
  out.conclusion = {replace_operator(c.conclusion.lhs, kind, macro),
                    replace_operator(c.conclusion.rhs, kind, macro)};
  return out;
}

inline Term expand_generic(const Term& t, const Term& macro) {
  return replace_operator(t, NodeKind::generic, macro);
}

inline HornClause expand_generic(const HornClause& c, const Term& macro) {
  return replace_operator(c, NodeKind::generic, macro);
}

/// Replaces every generic operation by the concrete ->i.
inline Term instantiate(const Term& t, Implication i) {
  return expand_generic(t, Term::implies(i, Term::variable('a'), Term::variable('b')));
}

inline Equation instantiate(const Equation& e, Implication i) {
  return {instantiate(e.lhs, i), instantiate(e.rhs, i)};
}

inline HornClause instantiate(const HornClause& c, Implication i) {
  return expand_generic(c, Term::implies(i, Term::variable('a'), Term::variable('b')));
}

// ---------------------------------------------------------------------------
// Rendering
//
// Grammar: postfix ' binds tightest; binary connectives v, ^, ->0..->5 and `.`
// never mix without parentheses; v and ^ chain to the left.

namespace detail {
inline std::string op_text(const Term& t) {
  switch (t.kind()) {
    case NodeKind::join: return "v";
    case NodeKind::meet: return "^";
    case NodeKind::implication: return "->" + std::to_string(index_of(t.implication()));
    case NodeKind::generic: return ".";
    default: return "";
  }
}

inline bool same_operator(const Term& x, const Term& y) {
  if (x.kind() != y.kind()) return false;
  return x.kind() != NodeKind::implication || x.implication() == y.implication();
}
}  // namespace detail

inline std::string render_term(const Term& t) {
  switch (t.kind()) {
    case NodeKind::variable: return std::string(1, t.name());
    case NodeKind::zero: return "0";
    case NodeKind::one: return "1";
    case NodeKind::ortho: {
      auto c = t.child();
      auto inner = render_term(c);
      if (c.is_binary()) inner = "(" + inner + ")";
      return inner + "'";
    }
    default: break;
  }
  const bool chains = t.kind() == NodeKind::join || t.kind() == NodeKind::meet;
  auto l = t.left();
  auto r = t.right();
  auto ls = render_term(l);
  auto rs = render_term(r);
  if (l.is_binary() && !(chains && detail::same_operator(l, t))) ls = "(" + ls + ")";
  if (r.is_binary()) rs = "(" + rs + ")";
  return ls + " " + detail::op_text(t) + " " + rs;
}

inline std::string render(const Equation& eq) {
  return render_term(eq.lhs) + " = " + render_term(eq.rhs);
}

inline std::string render(const HornClause& c) {
  std::string out;
  for (std::size_t i = 0; i < c.premises.size(); ++i) {
    out += (i ? " & " : "") + render(c.premises[i]);
  }
  if (!c.premises.empty()) out += " => ";
  return out + render(c.conclusion);
}

// ---------------------------------------------------------------------------
// Parsing

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t column)
      : InputError("column " + std::to_string(column + 1) + ": " + message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_whole_term() {
    auto t = parse_expression();
    skip_space();
    if (pos_ != text_.size()) unexpected();
    return t;
  }

  HornClause parse_clause() {
    HornClause clause;
    std::vector<Equation> equations{parse_equation()};
    bool implication_seen = false;
    while (true) {
      skip_space();
      if (pos_ == text_.size()) break;
      if (peek('&') && !implication_seen) {
        ++pos_;
        equations.push_back(parse_equation());
      } else if (peek_text("=>") && !implication_seen) {
        pos_ += 2;
        implication_seen = true;
        clause.premises = std::move(equations);
        equations = {parse_equation()};
      } else {
        unexpected();
      }
    }
    if (equations.size() != 1) {
      throw ParseError("expected a single equation or a clause 'eq & ... => eq'", pos_);
    }
    clause.conclusion = equations.front();
    return clause;
  }

 private:
  Equation parse_equation() {
    auto lhs = parse_expression();
    skip_space();
    if (!peek('=') || peek_text("=>")) throw ParseError("expected '='", pos_);
    ++pos_;
    auto rhs = parse_expression();
    return {lhs, rhs};
  }

  // expression := postfix (op postfix)*, all ops identical; only v and ^ chain.
  Term parse_expression() {
    auto first = parse_postfix();
    std::optional<Term> current = first;
    std::optional<Term> op_proto;
    std::size_t count = 0;
    while (true) {
      skip_space();
      auto op_pos = pos_;
      auto op = try_operator();
      if (!op) break;
      if (op_proto && !same_operator(*op_proto, *op)) {
        throw ParseError("mixed binary operators require parentheses", op_pos);
      }
      if (count >= 1 && op->kind() != NodeKind::join && op->kind() != NodeKind::meet) {
        throw ParseError("chained '" + op_text(*op) + "' requires parentheses", op_pos);
      }
      op_proto = op;
      auto rhs = parse_postfix();
      current = rebuild(*op, *current, rhs);
      ++count;
    }
    return *current;
  }

  Term parse_postfix() {
    auto t = parse_primary();
    while (true) {
      skip_space();
      if (!peek('\'')) return t;
      ++pos_;
      t = Term::ortho(t);
    }
  }

  Term parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      auto open = pos_++;
      auto t = parse_expression();
      skip_space();
      if (!peek(')')) {
        if (pos_ >= text_.size()) throw ParseError("unbalanced parentheses: '(' is never closed", open);
        unexpected();
      }
      ++pos_;
      return t;
    }
    if (c == ')') throw ParseError("unbalanced parentheses: unexpected ')'", pos_);
    if (c == '0') { ++pos_; return Term::zero(); }
    if (c == '1') { ++pos_; return Term::one(); }
    if (c >= 'a' && c <= 'z' && c != 'v') {
      ++pos_;
      if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("variables are single letters", pos_ - 1);
      }
      return Term::variable(c);
    }
    unexpected();
  }

  // Returns a prototype binary term carrying the operator, or nothing.
  std::optional<Term> try_operator() {
    if (pos_ >= text_.size()) return std::nullopt;
    auto x = Term::variable('a');
    char c = text_[pos_];
    if (c == 'v') { ++pos_; return Term::join(x, x); }
    if (c == '^') { ++pos_; return Term::meet(x, x); }
    if (c == '.') { ++pos_; return Term::dot(x, x); }
    if (peek_text("->")) {
      auto at = pos_;
      pos_ += 2;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("'->' must be followed by an implication index 0..5", at);
      }
      int index = text_[pos_] - '0';
      ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("unknown implication index", at);
      }
      if (index > 5) throw ParseError("unknown implication index " + std::to_string(index), at);
      return Term::implies(static_cast<Implication>(index), x, x);
    }
    return std::nullopt;
  }

  static Term rebuild(const Term& proto, const Term& l, const Term& r) {
    switch (proto.kind()) {
      case NodeKind::join: return Term::join(l, r);
      case NodeKind::meet: return Term::meet(l, r);
      case NodeKind::implication: return Term::implies(proto.implication(), l, r);
      default: return Term::dot(l, r);
    }
  }

  [[noreturn]] void unexpected() const {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (text_[pos_] == ')') throw ParseError("unbalanced parentheses: unexpected ')'", pos_);
    throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  bool peek_text(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Term parse_term(std::string_view text) {
  return detail::TermParser(text).parse_whole_term();
}

/// `lhs = rhs` or `eq1 & eq2 => eq3`.
inline HornClause parse_clause(std::string_view text) {
  return detail::TermParser(text).parse_clause();
}

inline Equation parse_equation(std::string_view text) {
  auto c = parse_clause(text);
  if (!c.premises.empty()) throw InputError("expected an equation, got a Horn clause");
  return c.conclusion;
}

struct NumberedClause {
  HornClause clause;
  std::size_t line = 0;
  std::string text;
};

/// One clause per non-blank line; `#` starts a comment.
inline std::vector<NumberedClause> parse_clause_file(std::istream& in,
                                                     std::string_view source = "<input>") {
  std::vector<NumberedClause> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto body = text_io::trim(text_io::strip_comment(line));
    if (body.empty()) continue;
    try {
      out.push_back({parse_clause(body), number, std::string(body)});
    } catch (const InputError& e) {
      text_io::fail_at(source, number, e.what());
    }
  }
  return out;
}

}  // namespace qia
