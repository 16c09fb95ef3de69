#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "qia/core.hpp"
#include "qia/lattice.hpp"
#include "qia/magma.hpp"
#include "qia/term.hpp"

namespace qia {

/// Variable values indexed by letter.
class Environment {
 public:
  void bind(char var, Element value) {
    values_[index(var)] = value;
    bound_ |= 1u << index(var);
  }
  Element get(char var) const {
    if (!(bound_ & (1u << index(var)))) {
      throw InputError(std::string("variable '") + var + "' is unassigned");
    }
    return values_[index(var)];
  }

  static Environment from(const Assignment& assignment) {
    Environment env;
    for (const auto& [var, value] : assignment) env.bind(var, value);
    return env;
  }

 private:
  static std::size_t index(char var) { return static_cast<std::size_t>(var - 'a'); }
  std::array<Element, 26> values_{};
  std::uint32_t bound_ = 0;
};

template <class Model>
concept LatticeModel = requires(const Model& m, Element x) {
  { m.join(x, x) } -> std::convertible_to<Element>;
  { m.meet(x, x) } -> std::convertible_to<Element>;
  { m.ortho(x) } -> std::convertible_to<Element>;
  { m.zero() } -> std::convertible_to<Element>;
  { m.one() } -> std::convertible_to<Element>;
};

/// Bottom-up evaluation. Over a lattice every connective except the generic
/// `.` is defined; over a magma only `.`, variables, 1 (= aa) and a
/// designated 0 are.
template <class Model>
Element evaluate(const Term& t, const Model& model, const Environment& env) {
  switch (t.kind()) {
    case NodeKind::variable: {
      auto v = env.get(t.name());
      if (v >= model.size()) throw InputError("assigned value out of range");
      return v;
    }
    case NodeKind::zero:
      if constexpr (LatticeModel<Model>) {
        return model.zero();
      } else {
        if (!model.zero()) throw InputError("constant 0 used over a magma without a designated zero");
        return *model.zero();
      }
    case NodeKind::one:
      if constexpr (LatticeModel<Model>) {
        return model.one();
      } else {
        return model.unit();
      }
    case NodeKind::generic:
      if constexpr (LatticeModel<Model>) {
        throw InputError("generic implication '.' must be instantiated before evaluation over a lattice");
      } else {
        return model(evaluate(t.left(), model, env), evaluate(t.right(), model, env));
      }
    default: break;
  }
  if constexpr (LatticeModel<Model>) {
    switch (t.kind()) {
      case NodeKind::ortho: return model.ortho(evaluate(t.child(), model, env));
      case NodeKind::join:
        return model.join(evaluate(t.left(), model, env), evaluate(t.right(), model, env));
      case NodeKind::meet:
        return model.meet(evaluate(t.left(), model, env), evaluate(t.right(), model, env));
      case NodeKind::implication:
        return apply_implication(t.implication(), evaluate(t.left(), model, env),
                                 evaluate(t.right(), model, env), model);
      default: break;
    }
    throw InternalError("bad node kind");
  } else {
    throw InputError("lattice connective used over a bare magma: " + render_term(t));
  }
}

template <class Model>
Element evaluate(const Term& t, const Model& model, const Assignment& assignment) {
  return evaluate(t, model, Environment::from(assignment));
}

/// A failing assignment together with both evaluated sides of the equation
/// that fails (the conclusion, for Horn clauses).
struct Witness {
  Assignment assignment;
  Element lhs = 0;
  Element rhs = 0;
};

struct CheckResult {
  std::optional<Witness> witness;
  std::uint64_t assignments = 0;
  bool passed() const { return !witness; }
};

namespace detail {

// Visits every assignment of `vars` over {0..n-1}, first variable most
// significant, until the visitor returns false.
template <class Visit>
std::uint64_t for_each_assignment(const std::vector<char>& vars, std::size_t n, Visit&& visit) {
  std::uint64_t count = 0;
  for_each_tuple(n, vars.size(), [&](const std::vector<Element>& tuple) {
    Environment env;
    Assignment assignment;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      env.bind(vars[i], tuple[i]);
      assignment.emplace_back(vars[i], tuple[i]);
    }
    ++count;
    return visit(env, assignment);
  });
  return count;
}

}  // namespace detail

/// Exhaustive scan; reports the lexicographically first witness.
template <class Model>
CheckResult check_horn(const HornClause& clause, const Model& model) {
  CheckResult result;
  const auto vars = variables(clause);
  result.assignments = detail::for_each_assignment(
      vars, model.size(), [&](const Environment& env, const Assignment& assignment) {
        for (const auto& p : clause.premises) {
          if (evaluate(p.lhs, model, env) != evaluate(p.rhs, model, env)) return true;
        }
        auto l = evaluate(clause.conclusion.lhs, model, env);
        auto r = evaluate(clause.conclusion.rhs, model, env);
        if (l == r) return true;
        result.witness = Witness{assignment, l, r};
        return false;
      });
  return result;
}

template <class Model>
CheckResult check_equation(const Equation& eq, const Model& model) {
  return check_horn(HornClause{{}, eq}, model);
}

}  // namespace qia
