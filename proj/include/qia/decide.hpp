#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qia/core.hpp"
#include "qia/eval.hpp"
#include "qia/free2.hpp"
#include "qia/lattice.hpp"
#include "qia/term.hpp"

namespace qia {

enum class Verdict { proved, refuted, no_counterexample };

inline std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::proved: return "PROVED";
    case Verdict::refuted: return "REFUTED";
    case Verdict::no_counterexample: return "NO_COUNTEREXAMPLE";
  }
  return "?";
}

/// A concrete counterexample: the model, the assignment and both sides.
struct Refutation {
  std::string model;
  std::vector<std::pair<char, std::string>> assignment;  // element names
  std::string lhs;
  std::string rhs;
};

/// PROVED is only ever issued by the free-algebra route. NO_COUNTEREXAMPLE
/// lists the models that were scanned and is not a proof.
struct Decision {
  Verdict verdict = Verdict::no_counterexample;
  std::optional<Refutation> refutation;
  std::vector<std::string> battery;

  bool proved() const { return verdict == Verdict::proved; }
  bool refuted() const { return verdict == Verdict::refuted; }
};

inline std::string format_decision(const Decision& d) {
  std::string out(verdict_name(d.verdict));
  if (d.refutation) {
    out += " in " + d.refutation->model + " at ";
    for (std::size_t i = 0; i < d.refutation->assignment.size(); ++i) {
      if (i) out += ", ";
      out += d.refutation->assignment[i].first;
      out += "=" + d.refutation->assignment[i].second;
    }
    out += " (lhs " + d.refutation->lhs + ", rhs " + d.refutation->rhs + ")";
  }
  if (d.verdict == Verdict::no_counterexample) {
    out += " over battery {";
    for (std::size_t i = 0; i < d.battery.size(); ++i) out += (i ? ", " : "") + d.battery[i];
    out += "}";
  }
  return out;
}

namespace detail {
inline void require_concrete(const Equation& eq) {
  if (has_generic(eq.lhs) || has_generic(eq.rhs)) {
    throw InputError("equation contains an uninstantiated generic implication '.'");
  }
}
}  // namespace detail

/// Exact decision of an OML identity in the variables a and b: it holds in
/// every OML iff both sides denote the same free-algebra element.
inline Decision decide_two_var_equation(const Equation& eq, const Free2& f = free2()) {
  detail::require_concrete(eq);
  for (char v : variables(eq)) {
    if (v != 'a' && v != 'b') {
      throw InputError(std::string("two-variable decision accepts only a and b, got '") + v +
                       "'; use decide_equation");
    }
  }
  const auto lhs = f.evaluate_vector(eq.lhs);
  const auto rhs = f.evaluate_vector(eq.rhs);
  Decision d;
  for (std::size_t k = 0; k < Free2::kComponents; ++k) {
    if (lhs[k] == rhs[k]) continue;
    const auto& c = f.component(k);
    d.verdict = Verdict::refuted;
    d.refutation = Refutation{c.model->label(),
                              {{'a', c.model->name(c.a)}, {'b', c.model->name(c.b)}},
                              c.model->name(lhs[k]),
                              c.model->name(rhs[k])};
    return d;
  }
  d.verdict = Verdict::proved;
  return d;
}

/// Routes equations with at most two variables to the free algebra (after
/// renaming them to a, b) and scans the model battery otherwise.
inline Decision decide_equation(const Equation& eq,
                                const std::vector<FiniteOml>& battery = default_battery()) {
  detail::require_concrete(eq);
  const auto vars = variables(eq);
  if (vars.size() <= 2) {
    std::map<char, Term> rename;
    std::map<char, char> back;
    const char targets[2] = {'a', 'b'};
    for (std::size_t i = 0; i < vars.size(); ++i) {
      rename.emplace(vars[i], Term::variable(targets[i]));
      back.emplace(targets[i], vars[i]);
    }
    auto d = decide_two_var_equation({substitute(eq.lhs, rename), substitute(eq.rhs, rename)});
    if (d.refutation) {
      std::vector<std::pair<char, std::string>> renamed;
      for (auto& [var, value] : d.refutation->assignment) {
        if (back.count(var)) renamed.emplace_back(back.at(var), value);
      }
      d.refutation->assignment = std::move(renamed);
    }
    return d;
  }
  Decision d;
  for (const auto& model : battery) {
    d.battery.push_back(model.label());
    auto result = check_equation(eq, model);
    if (result.passed()) continue;
    d.verdict = Verdict::refuted;
    Refutation r{model.label(), {}, model.name(result.witness->lhs), model.name(result.witness->rhs)};
    for (auto [var, value] : result.witness->assignment) r.assignment.emplace_back(var, model.name(value));
    d.refutation = std::move(r);
    return d;
  }
  d.verdict = Verdict::no_counterexample;
  return d;
}

}  // namespace qia
