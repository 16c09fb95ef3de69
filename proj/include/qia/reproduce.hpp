#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qia/algebras.hpp"
#include "qia/catalog.hpp"
#include "qia/decide.hpp"
#include "qia/free2.hpp"
#include "qia/lattice.hpp"
#include "qia/magma.hpp"
#include "qia/search.hpp"

namespace qia {

struct ScoreLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline ScoreLine score(std::string name, const std::function<std::string(bool&)>& body) {
  ScoreLine line{std::move(name), true, {}};
  try {
    line.detail = body(line.passed);
  } catch (const std::exception& e) {
    line.passed = false;
    line.detail = std::string("error: ") + e.what();
  }
  return line;
}

inline std::string join_ids(const std::vector<Element>& ids) {
  std::string out;
  for (auto id : ids) out += (out.empty() ? "" : " ") + std::to_string(id);
  return out;
}

}  // namespace detail

/// Every published claim that can be checked mechanically, one line each.
/// `table1` is the shipped twelve-element magma.
inline std::vector<ScoreLine> reproduce_claims(const Magma& table1) {
  using detail::score;
  std::vector<ScoreLine> lines;
  const auto& f = free2();

  lines.push_back(score("table1 satisfies OMIA", [&](bool& ok) {
    auto r = check_axiom_system(table1, axiom_system(SystemName::omia));
    ok = r.passed();
    return format_report(r);
  }));

  lines.push_back(score("table1 fails OI3 at (5,2,0) with 10 vs 4", [&](bool& ok) {
    auto r = check_axiom_system(table1, axiom_system(SystemName::oia));
    const auto* oi3 = r.find("OI3");
    ok = oi3 && oi3->result.witness && oi3->result.witness->assignment == Assignment{{'a', 5}, {'b', 2}, {'c', 0}} &&
         oi3->result.witness->lhs == 10 && oi3->result.witness->rhs == 4;
    return format_report(r);
  }));

  lines.push_back(score("table1 fails the implicational orthomodular law and condition C at (0,2,4)", [&](bool& ok) {
    auto law = check_horn(implication_orthomodular_law(), table1);
    auto sol = check_sol_condition(table1);
    ok = law.witness && law.witness->assignment == Assignment{{'a', 0}, {'b', 2}, {'c', 4}} &&
         law.witness->lhs == 4 && law.witness->rhs == 10 && sol && sol->a == 0 && sol->b == 2 &&
         sol->c == 4 && sol->local_complement == 6 && sol->joined == 8;
    std::string out = "law: ";
    out += law.witness ? format_assignment(law.witness->assignment) + " (" + std::to_string(law.witness->lhs) +
                             " vs " + std::to_string(law.witness->rhs) + ")"
                       : "holds";
    out += "; condition C: ";
    out += sol ? "a=" + std::to_string(sol->a) + ", b=" + std::to_string(sol->b) + ", c=" +
                     std::to_string(sol->c) + " (" + std::to_string(sol->local_complement) + " vs " +
                     std::to_string(sol->joined) + ")"
               : "holds";
    return out;
  }));

  lines.push_back(score("table1 induces an orthomodular join semilattice", [&](bool& ok) {
    auto s = induced_join_semilattice(table1);
    auto filters = principal_filters_report(table1);
    ok = s.is_semilattice() && s.order.one() == 1 && s.order.bottom() == Element{0} &&
         s.atoms == std::vector<Element>{2, 5, 7, 9, 11} && s.coatoms == std::vector<Element>{3, 4, 6, 8, 10} &&
         filters.is_ojs();
    return "atoms {" + detail::join_ids(s.atoms) + "}, coatoms {" + detail::join_ids(s.coatoms) + "}, " +
           std::to_string(s.covers.size()) + " covering pairs";
  }));

  lines.push_back(score("free algebra on two generators has 96 elements", [&](bool& ok) {
    auto again = Free2::build();
    bool same = again.size() == f.size();
    for (Element id = 0; same && id < f.size(); ++id) same = again.vector(id) == f.vector(id);
    ok = f.size() == 96 && same;
    return std::to_string(f.size()) + " elements, rebuild " + (same ? "identical" : "differs");
  }));

  lines.push_back(score("closure sizes 7 28 6 18 22 36", [&](bool& ok) {
    const std::size_t expected[] = {7, 28, 6, 18, 22, 36};
    std::string out;
    ok = true;
    for (auto i : all_implications) {
      auto n = f.closure(i).size();
      ok = ok && n == expected[index_of(i)];
      out += std::string(out.empty() ? "" : ", ") + "->" + std::to_string(index_of(i)) + ": " + std::to_string(n);
    }
    return out;
  }));

  lines.push_back(score("closure intersection is the ->2 closure and union is the ->5 closure", [&](bool& ok) {
    std::set<Element> inter(f.closure(Implication::sasaki).begin(), f.closure(Implication::sasaki).end());
    std::set<Element> uni;
    for (auto i : quantum_implications) {
      auto c = f.closure(i);
      std::set<Element> next;
      for (auto id : c) {
        if (inter.count(id)) next.insert(id);
        uni.insert(id);
      }
      inter = std::move(next);
    }
    auto c2 = f.closure(Implication::dishkant);
    auto c5 = f.closure(Implication::relevance);
    ok = std::vector<Element>(inter.begin(), inter.end()) == c2 && std::vector<Element>(uni.begin(), uni.end()) == c5;
    return "intersection " + std::to_string(inter.size()) + ", union " + std::to_string(uni.size());
  }));

  lines.push_back(score("cross-definition table reproduced", [&](bool& ok) {
    ok = true;
    std::size_t cells = 0;
    for (auto target : all_implications) {
      for (auto basis : all_implications) {
        if (target == basis) continue;
        auto found = shortest_definition(target, basis);
        const auto* row = catalog::find_cross_definition(target, basis);
        ++cells;
        if (!row) {
          ok = ok && found.status == DefinitionStatus::not_expressible;
          continue;
        }
        std::set<Term, bool (*)(const Term&, const Term&)> got(
            [](const Term& x, const Term& y) { return render_term(x) < render_term(y); });
        for (const auto& t : found.terms) got.insert(t);
        bool same = found.status == DefinitionStatus::found && found.size == row->size &&
                    got.size() == row->terms.size();
        for (const auto& text : row->terms) {
          auto t = instantiate(parse_term(text), basis);
          same = same && got.count(t);
          auto goal = Term::implies(target, Term::variable('a'), Term::variable('b'));
          same = same && decide_two_var_equation({goal, t}).proved();
        }
        ok = ok && same;
      }
    }
    return std::to_string(cells) + " target/basis pairs checked";
  }));

  lines.push_back(score("implication identities decided as claimed", [&](bool& ok) {
    ok = true;
    std::size_t proved = 0;
    std::size_t refuted = 0;
    for (const auto& id : catalog::identities()) {
      for (auto i : id.holds_for) {
        auto d = decide_two_var_equation(id.at(i));
        ok = ok && d.proved();
        proved += d.proved();
      }
      for (auto i : id.fails_for) {
        auto d = decide_two_var_equation(id.at(i));
        ok = ok && d.refuted();
        refuted += d.refuted();
      }
    }
    return std::to_string(proved) + " proved, " + std::to_string(refuted) + " refuted";
  }));

  lines.push_back(score("implication magmas of the battery satisfy their axiom systems", [&](bool& ok) {
    ok = true;
    std::size_t checks = 0;
    for (const auto& l : default_battery()) {
      auto require = [&](Implication i, SystemName s, std::optional<JoinVariant> v = std::nullopt) {
        ok = ok && check_axiom_system(derive_implication_magma(l, i), axiom_system(s, v)).passed();
        ++checks;
      };
      require(Implication::dishkant, SystemName::oia);
      require(Implication::dishkant, SystemName::omia);
      require(Implication::sasaki, SystemName::qsia);
      for (auto i : quantum_implications) {
        require(i, SystemName::qia);
        for (auto v : paired_variants(i)) require(i, SystemName::uqia, v);
      }
    }
    return std::to_string(checks) + " system checks";
  }));

  lines.push_back(score("structure round trips", [&](bool& ok) {
    ok = true;
    for (const auto& l : default_battery()) {
      auto back = induce_oml_from_zero(derive_implication_magma(l, Implication::dishkant));
      ok = ok && back.same_tables(l);
      auto translated = translate_magma(derive_implication_magma(l, Implication::sasaki), sasaki_to_dishkant_macro());
      ok = ok && translated.table() == derive_implication_magma(l, Implication::dishkant).table();
    }
    ok = ok && translate_magma(table1, star_macro()).table() == table1.table();
    return "battery of " + std::to_string(default_battery().size()) + " lattices";
  }));

  lines.push_back(score("model search", [&](bool& ok) {
    ModelQuery two;
    two.satisfy = system_clauses("oia");
    two.size = 2;
    auto found = find_model(two);
    ok = found.status == ModelStatus::found;
    std::string out = "OIA size 2: " + std::string(model_status_name(found.status));
    for (std::size_t n = 1; n <= 4; ++n) {
      ModelQuery q;
      q.satisfy = system_clauses("oia");
      q.violate = system_clauses("omia");
      q.size = n;
      auto r = find_model(q);
      ok = ok && r.status == ModelStatus::none;
      out += "; OIA without OMIA size " + std::to_string(n) + ": " + std::string(model_status_name(r.status));
    }
    return out;
  }));

  return lines;
}

inline std::string format_scoreboard(const std::vector<ScoreLine>& lines) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    out << (lines[k].passed ? "PASS" : "FAIL") << "  " << (k + 1) << ". " << lines[k].name << '\n';
    std::istringstream detail(lines[k].detail);
    for (std::string line; std::getline(detail, line);) {
      if (!line.empty()) out << "      " << line << '\n';
    }
    passed += lines[k].passed;
  }
  out << passed << "/" << lines.size() << " claims reproduced\n";
  return out.str();
}

}  // namespace qia
