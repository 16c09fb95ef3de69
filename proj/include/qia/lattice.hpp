#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qia/core.hpp"
#include "qia/magma.hpp"
#include "qia/text_io.hpp"

namespace qia {

/// Evaluates the defining polynomial of an implication over any structure
/// exposing join, meet and ortho. Each polynomial is written out exactly as
/// its textbook definition, with meet derived by De Morgan where the
/// structure does so.
template <class Ops, class Value>
Value apply_implication(Implication i, const Value& a, const Value& b,
                        const Ops& ops) {
  auto join = [&](const Value& x, const Value& y) { return ops.join(x, y); };
  auto meet = [&](const Value& x, const Value& y) { return ops.meet(x, y); };
  auto ortho = [&](const Value& x) { return ops.ortho(x); };
  const Value na = ortho(a);
  const Value nb = ortho(b);
  switch (i) {
    case Implication::classical:
      return join(na, b);
    case Implication::sasaki:
      return join(na, meet(a, b));
    case Implication::dishkant:
      return join(b, meet(na, nb));
    case Implication::kalmbach:
      return join(join(meet(na, b), meet(na, nb)), meet(a, join(na, b)));
    case Implication::non_tollens:
      return join(join(meet(a, b), meet(na, b)), meet(join(na, b), nb));
    case Implication::relevance:
      return join(join(meet(a, b), meet(na, b)), meet(na, nb));
  }
  throw InternalError("bad implication index");
}

/// Candidate lattice data: an n x n join table and an orthocomplement map.
/// Nothing about it is assumed until verify_oml says so.
struct OmlTables {
  std::size_t size = 0;
  std::vector<Element> join;   // row-major, join[a * size + b] = a v b
  std::vector<Element> ortho;  // ortho[a] = a'
  std::vector<std::string> names;

  Element join_of(Element a, Element b) const { return join[a * size + b]; }
  Element meet_of(Element a, Element b) const {
    return ortho[join_of(ortho[a], ortho[b])];
  }
  Element ortho_of(Element a) const { return ortho[a]; }
};

/// Throws InputError naming the first malformed row/column.
inline void check_shape(const OmlTables& t) {
  if (t.size == 0) throw InputError("lattice must have at least one element");
  if (t.join.size() != t.size * t.size) {
    throw InputError("join table is not square: " + std::to_string(t.join.size()) +
                     " entries for " + std::to_string(t.size) + " elements");
  }
  if (t.ortho.size() != t.size) {
    throw InputError("ortho map has " + std::to_string(t.ortho.size()) +
                     " entries, expected " + std::to_string(t.size));
  }
  for (std::size_t r = 0; r < t.size; ++r) {
    for (std::size_t c = 0; c < t.size; ++c) {
      if (t.join[r * t.size + c] >= t.size) {
        throw InputError("join entry at row " + std::to_string(r) + ", column " +
                         std::to_string(c) + " is out of range");
      }
    }
    if (t.ortho[r] >= t.size) {
      throw InputError("ortho entry " + std::to_string(r) + " is out of range");
    }
  }
  if (!t.names.empty() && t.names.size() != t.size) {
    throw InputError("names list does not match element count");
  }
}

struct ConditionFailure {
  std::string condition;
  Assignment witness;
  std::string detail;
};

struct OmlReport {
  std::vector<ConditionFailure> failures;

  bool passed() const { return failures.empty(); }

  const ConditionFailure* find(std::string_view condition) const {
    for (const auto& f : failures) {
      if (f.condition == condition) return &f;
    }
    return nullptr;
  }
};

namespace detail {

struct TableOps {
  const OmlTables& t;
  Element join(Element a, Element b) const { return t.join_of(a, b); }
  Element meet(Element a, Element b) const { return t.meet_of(a, b); }
  Element ortho(Element a) const { return t.ortho_of(a); }
};

// Scans all k-tuples over {0..n-1} in lexicographic order until `visit`
// returns false.
template <class Visit>
void for_each_tuple(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<Element> tuple(k, 0);
  if (n == 0) return;
  while (true) {
    if (!visit(tuple)) return;
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++tuple[pos] < n) break;
      tuple[pos] = 0;
      if (pos == 0) return;
    }
    if (k == 0) return;
  }
}

inline Assignment make_witness(const std::vector<Element>& tuple) {
  Assignment w;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    w.emplace_back(static_cast<char>('a' + i), tuple[i]);
  }
  return w;
}

}  // namespace detail

/// Checks the OML conditions L1-L8 (L8 for the five quantum implications
/// only) together with the table-level join laws and the constancy of
/// 1 = a v a' and 0 = a ^ a'. Reports the lexicographically first witness
/// of every failed condition.
inline OmlReport verify_oml(const OmlTables& t) {
  check_shape(t);
  OmlReport report;
  const auto n = t.size;
  const detail::TableOps ops{t};
  auto leq = [&](Element a, Element b) { return t.join_of(a, b) == b; };
  auto check = [&](std::string name, std::size_t arity, auto&& holds,
                   auto&& describe) {
    detail::for_each_tuple(n, arity, [&](const std::vector<Element>& v) {
      if (holds(v)) return true;
      report.failures.push_back({name, detail::make_witness(v), describe(v)});
      return false;
    });
  };
  auto none = [](const std::vector<Element>&) { return std::string{}; };

  check("join-idempotent", 1,
        [&](auto& v) { return t.join_of(v[0], v[0]) == v[0]; }, none);
  check("join-commutative", 2,
        [&](auto& v) { return t.join_of(v[0], v[1]) == t.join_of(v[1], v[0]); },
        none);
  check("join-associative", 3,
        [&](auto& v) {
          return t.join_of(v[0], t.join_of(v[1], v[2])) ==
                 t.join_of(t.join_of(v[0], v[1]), v[2]);
        },
        none);

  const Element one = t.join_of(0, t.ortho_of(0));
  const Element zero = t.meet_of(0, t.ortho_of(0));
  check("unit", 1,
        [&](auto& v) { return t.join_of(v[0], t.ortho_of(v[0])) == one; },
        [&](auto& v) {
          return "a v a' = " + std::to_string(t.join_of(v[0], t.ortho_of(v[0]))) +
                 " but 0 v 0' = " + std::to_string(one);
        });
  check("zero", 1,
        [&](auto& v) { return t.meet_of(v[0], t.ortho_of(v[0])) == zero; },
        [&](auto& v) {
          return "a ^ a' = " + std::to_string(t.meet_of(v[0], t.ortho_of(v[0]))) +
                 " but 0 ^ 0' = " + std::to_string(zero);
        });

  check("L1", 1,
        [&](auto& v) {
          auto aa = t.ortho_of(t.ortho_of(v[0]));
          return leq(v[0], aa) && leq(aa, v[0]);
        },
        [&](auto& v) {
          return "a'' = " + std::to_string(t.ortho_of(t.ortho_of(v[0])));
        });
  check("L2", 2,
        [&](auto& v) {
          auto j = t.join_of(v[0], v[1]);
          return leq(v[0], j) && leq(v[1], j);
        },
        none);
  check("L3", 2,
        [&](auto& v) { return !(leq(v[0], v[1]) && leq(v[1], v[0])) || v[0] == v[1]; },
        none);
  check("L4", 1, [&](auto& v) { return leq(v[0], one); }, none);
  check("L5", 2,
        [&](auto& v) {
          return !leq(v[0], v[1]) || leq(t.ortho_of(v[1]), t.ortho_of(v[0]));
        },
        none);
  check("L6", 3,
        [&](auto& v) {
          return !(leq(v[0], v[1]) && leq(v[1], v[2])) || leq(v[0], v[2]);
        },
        none);
  check("L7", 3,
        [&](auto& v) {
          return !(leq(v[0], v[2]) && leq(v[1], v[2])) ||
                 leq(t.join_of(v[0], v[1]), v[2]);
        },
        none);
  for (auto i : quantum_implications) {
    check("L8[->" + std::to_string(index_of(i)) + "]", 2,
          [&](auto& v) {
            return apply_implication(i, v[0], v[1], ops) != one || leq(v[0], v[1]);
          },
          [&](auto&) {
            return "a ->" + std::to_string(index_of(i)) + " b = 1 but not a <= b";
          });
  }
  return report;
}

/// A verified finite orthomodular lattice. Meet is derived from join and
/// ortho on demand.
class FiniteOml {
 public:
  /// Verifies the tables; throws InputError carrying the first failure.
  static FiniteOml from_tables(OmlTables tables, std::string label = {}) {
    auto report = verify_oml(tables);
    if (!report.passed()) {
      const auto& f = report.failures.front();
      throw InputError("not an orthomodular lattice: " + f.condition +
                       " fails at " + format_assignment(f.witness) +
                       (f.detail.empty() ? "" : " (" + f.detail + ")"));
    }
    return FiniteOml(std::move(tables), std::move(label));
  }

  std::size_t size() const { return tables_.size; }
  Element zero() const { return zero_; }
  Element one() const { return one_; }
  Element join(Element a, Element b) const { return tables_.join_of(a, b); }
  Element meet(Element a, Element b) const { return tables_.meet_of(a, b); }
  Element ortho(Element a) const { return tables_.ortho_of(a); }
  bool leq(Element a, Element b) const { return join(a, b) == b; }

  const OmlTables& tables() const { return tables_; }
  const std::string& label() const { return label_; }

  std::string name(Element a) const {
    if (a < tables_.names.size()) return tables_.names[a];
    return std::to_string(a);
  }

  bool contains(Element a) const { return a < size(); }

  /// Elementwise equality of the operation tables (labels and names ignored).
  bool same_tables(const FiniteOml& other) const {
    return tables_.size == other.tables_.size && tables_.join == other.tables_.join &&
           tables_.ortho == other.tables_.ortho;
  }

 private:
  FiniteOml(OmlTables tables, std::string label)
      : tables_(std::move(tables)), label_(std::move(label)) {
    one_ = tables_.join_of(0, tables_.ortho_of(0));
    zero_ = tables_.ortho_of(one_);
  }

  OmlTables tables_;
  std::string label_;
  Element zero_ = 0;
  Element one_ = 0;
};

/// Builds join tables from a partial order given as a predicate; every pair
/// must have a least upper bound.
inline OmlTables tables_from_order(std::size_t n,
                                   const std::function<bool(Element, Element)>& leq,
                                   std::vector<Element> ortho,
                                   std::vector<std::string> names = {}) {
  OmlTables t{n, std::vector<Element>(n * n), std::move(ortho), std::move(names)};
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      std::optional<Element> lub;
      for (Element c = 0; c < n; ++c) {
        if (!leq(a, c) || !leq(b, c)) continue;
        if (!lub || leq(c, *lub)) lub = c;
      }
      if (!lub) throw InputError("order has no least upper bound for a pair");
      for (Element c = 0; c < n; ++c) {
        if (leq(a, c) && leq(b, c) && !leq(*lub, c)) {
          throw InputError("order has no least upper bound for a pair");
        }
      }
      t.join[a * n + b] = *lub;
    }
  }
  return t;
}

/// The 2^k-element Boolean algebra on bitmasks.
inline FiniteOml make_boolean(int k) {
  if (k < 0 || k > 5) throw InputError("Boolean exponent must be in 0..5");
  const std::size_t n = std::size_t{1} << k;
  const auto full = static_cast<Element>(n - 1);
  OmlTables t{n, std::vector<Element>(n * n), std::vector<Element>(n), {}};
  for (Element a = 0; a < n; ++a) {
    t.ortho[a] = static_cast<Element>(full & ~a);
    for (Element b = 0; b < n; ++b) t.join[a * n + b] = static_cast<Element>(a | b);
  }
  return FiniteOml::from_tables(std::move(t), k == 1 ? "2" : "2^" + std::to_string(k));
}

/// MO_m: 0, 1 and m pairs of complementary atoms x_i, x_i'.
/// Element ids: 0, 1, then x_1, x_1', x_2, x_2', ...
inline FiniteOml make_mo(int m) {
  if (m < 1) throw InputError("MO needs at least one atom pair");
  const std::size_t n = 2 + 2 * static_cast<std::size_t>(m);
  OmlTables t{n, std::vector<Element>(n * n), std::vector<Element>(n), {"0", "1"}};
  t.ortho[0] = 1;
  t.ortho[1] = 0;
  for (int i = 0; i < m; ++i) {
    auto x = static_cast<Element>(2 + 2 * i);
    t.ortho[x] = x + 1;
    t.ortho[x + 1] = x;
    t.names.push_back("x" + std::to_string(i + 1));
    t.names.push_back("x" + std::to_string(i + 1) + "'");
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      Element j = 1;
      if (a == b || b == 0) j = a;
      else if (a == 0) j = b;
      t.join[a * n + b] = j;
    }
  }
  return FiniteOml::from_tables(std::move(t), "MO" + std::to_string(m));
}

/// Componentwise product; pair (x, y) gets id x * |r| + y.
inline FiniteOml product(const FiniteOml& l, const FiniteOml& r) {
  const auto ln = l.size();
  const auto rn = r.size();
  const auto n = ln * rn;
  OmlTables t{n, std::vector<Element>(n * n), std::vector<Element>(n), {}};
  auto id = [rn](std::size_t x, std::size_t y) { return static_cast<Element>(x * rn + y); };
  for (Element x = 0; x < ln; ++x) {
    for (Element y = 0; y < rn; ++y) {
      t.names.push_back("(" + l.name(x) + "," + r.name(y) + ")");
      t.ortho[id(x, y)] = id(l.ortho(x), r.ortho(y));
      for (Element u = 0; u < ln; ++u) {
        for (Element v = 0; v < rn; ++v) {
          t.join[id(x, y) * n + id(u, v)] = id(l.join(x, u), r.join(y, v));
        }
      }
    }
  }
  return FiniteOml::from_tables(std::move(t), l.label() + "x" + r.label());
}

/// The hexagon O6: 0 < a < b < 1 and 0 < b' < a' < 1. Orthocomplemented
/// but not orthomodular, so only the candidate tables are returned.
inline OmlTables make_benzene_tables() {
  // ids: 0, 1, a, b, a', b'
  const std::vector<std::pair<Element, Element>> strict = {
      {0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {2, 3}, {2, 1},
      {3, 1}, {5, 4}, {5, 1}, {4, 1}};
  auto leq = [&](Element x, Element y) {
    if (x == y) return true;
    return std::find(strict.begin(), strict.end(), std::pair{x, y}) != strict.end();
  };
  return tables_from_order(6, leq, {1, 0, 4, 5, 2, 3}, {"0", "1", "a", "b", "a'", "b'"});
}

/// Structure-preserving bijection search; small sizes only.
inline bool are_isomorphic(const FiniteOml& l, const FiniteOml& r) {
  if (l.size() != r.size()) return false;
  const auto n = l.size();
  std::vector<Element> map(n, 0);
  std::vector<bool> used(n, false);
  std::function<bool(Element)> extend = [&](Element a) -> bool {
    if (a == n) {
      for (Element x = 0; x < n; ++x) {
        if (map[l.ortho(x)] != r.ortho(map[x])) return false;
        for (Element y = 0; y < n; ++y) {
          if (map[l.join(x, y)] != r.join(map[x], map[y])) return false;
        }
      }
      return true;
    }
    for (Element b = 0; b < n; ++b) {
      if (used[b]) continue;
      used[b] = true;
      map[a] = b;
      if (extend(static_cast<Element>(a + 1))) return true;
      used[b] = false;
    }
    return false;
  };
  return extend(0);
}

inline Element implication_value(const FiniteOml& l, Implication i, Element a,
                                 Element b) {
  if (!l.contains(a) || !l.contains(b)) {
    throw InputError("element identifier out of range for lattice of size " +
                     std::to_string(l.size()));
  }
  return apply_implication(i, a, b, l);
}

/// Pairs with a ->i b = 1 but not a <= b.
inline std::vector<std::pair<Element, Element>> l8_witnesses(const FiniteOml& l,
                                                             Implication i) {
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < l.size(); ++a) {
    for (Element b = 0; b < l.size(); ++b) {
      if (apply_implication(i, a, b, l) == l.one() && !l.leq(a, b)) {
        out.emplace_back(a, b);
      }
    }
  }
  return out;
}

/// The operation table of ->i, with the lattice bottom as designated zero.
inline Magma derive_implication_magma(const FiniteOml& l, Implication i) {
  const auto n = l.size();
  std::vector<Element> table(n * n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) table[a * n + b] = apply_implication(i, a, b, l);
  }
  return Magma(n, std::move(table), l.zero());
}

/// {2, 2^2, 2^3, MO2, MO3, MO2x2}.
inline std::vector<FiniteOml> default_battery() {
  std::vector<FiniteOml> battery;
  battery.push_back(make_boolean(1));
  battery.push_back(make_boolean(2));
  battery.push_back(make_boolean(3));
  battery.push_back(make_mo(2));
  battery.push_back(make_mo(3));
  battery.push_back(product(make_mo(2), make_boolean(1)));
  return battery;
}

/// Named constructions accepted wherever a lattice is expected: `2`, `2^k`,
/// `MOm`, and products joined with `x` (e.g. `MO2x2`).
inline FiniteOml builtin_lattice(std::string_view spec) {
  auto single = [](std::string_view s) -> FiniteOml {
    if (s == "2") return make_boolean(1);
    if (s == "1") return make_boolean(0);
    auto number = [&](std::string_view digits) {
      if (digits.empty() || digits.size() > 3 ||
          !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw InputError("unknown lattice '" + std::string(s) + "'");
      }
      return std::stoi(std::string(digits));
    };
    if (s.starts_with("2^")) return make_boolean(number(s.substr(2)));
    if (s.starts_with("MO")) return make_mo(number(s.substr(2)));
    throw InputError("unknown lattice '" + std::string(s) + "'");
  };
  auto x = spec.find('x');
  if (x == std::string_view::npos) return single(spec);
  return product(single(spec.substr(0, x)), builtin_lattice(spec.substr(x + 1)));
}

/// Reads `oml <n>`, n join rows, then one row of n ortho values.
inline OmlTables parse_oml(std::istream& in, std::string_view source = "<input>") {
  using text_io::fail_at;
  auto tokens = text_io::tokenize(in);
  if (tokens.empty()) fail_at(source, 1, "empty lattice file");
  if (tokens[0].text != "oml") fail_at(source, tokens[0].line, "expected 'oml <n>' header");
  if (tokens.size() < 2) fail_at(source, tokens[0].line, "missing element count");
  auto n = text_io::parse_integer(tokens[1], source);
  if (n < 1 || n > 255) fail_at(source, tokens[1].line, "element count must be 1..255");
  const auto size = static_cast<std::size_t>(n);
  OmlTables t{size, {}, {}, {}};
  std::size_t pos = 2;
  auto next = [&](const std::string& where) {
    if (pos >= tokens.size()) fail_at(source, tokens.back().line, "file ends early at " + where);
    auto v = text_io::parse_integer(tokens[pos], source);
    if (v < 0 || v >= n) fail_at(source, tokens[pos].line, where + " is out of range");
    ++pos;
    return static_cast<Element>(v);
  };
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      t.join.push_back(next("join row " + std::to_string(r) + ", column " + std::to_string(c)));
    }
  }
  for (std::size_t a = 0; a < size; ++a) t.ortho.push_back(next("ortho entry " + std::to_string(a)));
  if (pos != tokens.size()) fail_at(source, tokens[pos].line, "trailing data after ortho row");

  // Bottom and top must be the unique minimum and maximum of the order.
  auto is_top = [&](Element c) {
    for (Element a = 0; a < size; ++a) if (t.join_of(a, c) != c) return false;
    return true;
  };
  auto is_bottom = [&](Element c) {
    for (Element a = 0; a < size; ++a) if (t.join_of(c, a) != a) return false;
    return true;
  };
  bool has_top = false;
  bool has_bottom = false;
  for (Element c = 0; c < size; ++c) {
    has_top = has_top || is_top(c);
    has_bottom = has_bottom || is_bottom(c);
  }
  if (!has_top) fail_at(source, tokens[0].line, "join table has no top element");
  if (!has_bottom) fail_at(source, tokens[0].line, "join table has no bottom element");
  return t;
}

inline OmlTables read_oml_file(const std::string& path) {
  auto in = text_io::open_file(path);
  return parse_oml(in, path);
}

inline std::string format_oml(const OmlTables& t) {
  std::ostringstream out;
  out << "oml " << t.size << '\n';
  for (Element a = 0; a < t.size; ++a) {
    for (Element b = 0; b < t.size; ++b) out << (b ? " " : "") << t.join_of(a, b);
    out << '\n';
  }
  for (Element a = 0; a < t.size; ++a) out << (a ? " " : "") << t.ortho[a];
  out << '\n';
  return out.str();
}

}  // namespace qia
