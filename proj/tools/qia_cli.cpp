// Command-line front end for the qia library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qia/qia.hpp"
#include "qia/reproduce.hpp"

#ifndef QIA_DATA_DIR
#define QIA_DATA_DIR "data"
#endif

namespace {

using namespace qia;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

// Text for people, or `key=value` lines with --machine.
class Report {
 public:
  explicit Report(bool machine) : machine_(machine) {}

  void text(const std::string& s) {
    if (!machine_) std::cout << s;
  }
  void field(const std::string& key, const std::string& value) {
    if (machine_) std::cout << key << '=' << value << '\n';
  }
  bool machine() const { return machine_; }

 private:
  bool machine_;
};

std::string witness_text(const Assignment& a) {
  std::string out;
  for (const auto& [var, value] : a) {
    out += (out.empty() ? "" : ",") + std::string(1, var) + "=" + std::to_string(value);
  }
  return out;
}

Implication parse_index(int i) { return implication_from_index(i); }

FiniteOml load_lattice(const std::string& source) {
  if (source.starts_with("builtin:")) return builtin_lattice(source.substr(8));
  return FiniteOml::from_tables(read_oml_file(source), source);
}

// A magma file, or an OML (file or builtin:NAME) turned into its ->i table.
Magma load_magma(const std::string& source, std::optional<int> impl) {
  const bool lattice = source.starts_with("builtin:") || text_io::peek_keyword(source) == "oml";
  if (!lattice) return read_magma_file(source);
  if (!impl) throw InputError(source + ": a lattice input needs --impl to select an implication");
  return derive_implication_magma(load_lattice(source), parse_index(*impl));
}

int report_axioms(Report& out, const SystemReport& r) {
  out.text(format_report(r));
  for (const auto& a : r.results) {
    out.field(a.name + ".status", a.result.passed() ? "PASS" : "FAIL");
    if (a.result.witness) {
      out.field(a.name + ".witness", witness_text(a.result.witness->assignment));
      out.field(a.name + ".lhs", std::to_string(a.result.witness->lhs));
      out.field(a.name + ".rhs", std::to_string(a.result.witness->rhs));
    }
  }
  out.field("verdict", r.passed() ? "PASS" : "FAIL");
  return r.passed() ? kPass : kFail;
}

int report_oml(Report& out, const OmlReport& r) {
  for (const auto& f : r.failures) {
    out.text(f.condition + ": FAIL at " + format_assignment(f.witness) +
             (f.detail.empty() ? "" : " (" + f.detail + ")") + "\n");
    out.field(f.condition + ".witness", witness_text(f.witness));
  }
  out.text(std::string("orthomodular lattice: ") + (r.passed() ? "PASS" : "FAIL") + "\n");
  out.field("verdict", r.passed() ? "PASS" : "FAIL");
  return r.passed() ? kPass : kFail;
}

std::string ids_text(const std::vector<Element>& ids) {
  std::string out;
  for (auto id : ids) out += (out.empty() ? "" : " ") + std::to_string(id);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthomodular lattices and quantum implication algebras"};
  app.require_subcommand(1, 1);
  bool machine = false;
  app.add_flag("--machine", machine, "Emit key=value lines");

  std::string input;
  std::optional<int> impl;
  int target = 0;
  int basis = 0;
  std::size_t max_size = kMaxTermSize;
  bool constants = false;
  bool dot = false;
  std::string system;
  std::string sqcup;
  std::string equation;
  std::string model;
  std::string macro;
  std::string free2_action;
  std::optional<int> zero;
  std::string table1_path = std::string(QIA_DATA_DIR) + "/table1.magma";

  auto* check_oml = app.add_subcommand("check-oml", "Verify that a lattice file is an orthomodular lattice");
  check_oml->add_option("LATTICE", input, "OML file or builtin:NAME")->required();

  auto* check_axioms = app.add_subcommand("check-axioms", "Check a magma against an axiom system");
  check_axioms->add_option("--system", system, "oia, omia, qsia, qia or uqia")->required();
  check_axioms->add_option("--sqcup", sqcup, "Join variant for uqia (default unified)");
  check_axioms->add_option("--impl", impl, "Implication for lattice inputs")->check(CLI::Range(0, 5));
  check_axioms->add_option("MAGMA", input, "Magma file, OML file or builtin:NAME")->required();

  auto* derive = app.add_subcommand("derive", "Print the table of an implication in a lattice");
  derive->add_option("--impl", impl, "Implication 0..5")->required()->check(CLI::Range(0, 5));
  derive->add_option("LATTICE", input, "OML file or builtin:NAME")->required();

  auto* free2_cmd = app.add_subcommand("free2", "Query the free orthomodular lattice on a, b");
  free2_cmd->add_option("ACTION", free2_action, "count, closure or anchors")
      ->required()
      ->check(CLI::IsMember({"count", "closure", "anchors"}));
  free2_cmd->add_option("--impl", impl, "Implication for closure")->check(CLI::Range(0, 5));

  auto* shortest = app.add_subcommand("shortest", "Shortest definitions of one implication by another");
  shortest->add_option("--target", target, "Implication to define")->required()->check(CLI::Range(0, 5));
  shortest->add_option("--basis", basis, "Implication to use")->required()->check(CLI::Range(0, 5));
  shortest->add_option("--max-size", max_size, "Bound on binary operations")->check(CLI::Range(0, 8));
  shortest->add_flag("--constants", constants, "Allow 0 and 1 as leaves");

  auto* decide = app.add_subcommand("decide-eq", "Decide an orthomodular lattice equation");
  decide->add_option("EQUATION", equation, "\"lhs = rhs\"")->required();

  auto* check_horn_cmd = app.add_subcommand("check-horn", "Check every clause of a file in a model");
  check_horn_cmd->add_option("FILE", input, "Clause file")->required();
  check_horn_cmd->add_option("--model", model, "Magma file, OML file or builtin:NAME")->required();
  check_horn_cmd->add_option("--impl", impl, "Read '.' as this implication")->check(CLI::Range(0, 5));

  auto* hasse = app.add_subcommand("hasse", "Induced order of a magma as a Hasse diagram");
  hasse->add_option("MAGMA", input, "Magma file")->required();
  hasse->add_flag("--dot", dot, "Emit Graphviz DOT");
  hasse->add_option("--impl", impl, "Implication for lattice inputs")->check(CLI::Range(0, 5));

  auto* filters = app.add_subcommand("filters", "Check that every principal filter is an OML");
  filters->add_option("MAGMA", input, "Magma file")->required();
  filters->add_option("--impl", impl, "Implication for lattice inputs")->check(CLI::Range(0, 5));

  auto* sol = app.add_subcommand("sol-check", "Check the compatibility condition of filters");
  sol->add_option("MAGMA", input, "Magma file")->required();
  sol->add_option("--impl", impl, "Implication for lattice inputs")->check(CLI::Range(0, 5));

  auto* induce = app.add_subcommand("induce-oml", "Build the lattice induced by a magma with a zero");
  induce->add_option("MAGMA", input, "Magma file")->required();
  induce->add_option("--zero", zero, "Override the designated zero");
  induce->add_option("--impl", impl, "Implication for lattice inputs")->check(CLI::Range(0, 5));

  auto* translate = app.add_subcommand("translate", "Rewrite a magma through a two-variable macro");
  translate->add_option("--macro", macro, "Term in a, b and '.'")->required();
  translate->add_option("MAGMA", input, "Magma file")->required();
  translate->add_option("--impl", impl, "Implication for lattice inputs")->check(CLI::Range(0, 5));

  auto* find = app.add_subcommand("find-model", "Search for a finite model of a query file");
  find->add_option("FILE", input, "Query file")->required();

  auto* reproduce = app.add_subcommand("reproduce-paper", "Check every published claim");
  reproduce->add_option("--table1", table1_path, "Twelve-element magma file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kPass : kInputError;
  }

  Report out(machine);
  try {
    if (check_oml->parsed()) {
      if (input.starts_with("builtin:")) {
        return report_oml(out, verify_oml(load_lattice(input).tables()));
      }
      return report_oml(out, verify_oml(read_oml_file(input)));
    }

    if (check_axioms->parsed()) {
      auto name = system_from_string(system);
      std::optional<JoinVariant> variant;
      if (!sqcup.empty()) variant = variant_from_string(sqcup);
      if (name == SystemName::uqia && !variant) variant = JoinVariant::unified;
      return report_axioms(out, check_axiom_system(load_magma(input, impl), axiom_system(name, variant)));
    }

    if (derive->parsed()) {
      auto m = derive_implication_magma(load_lattice(input), parse_index(*impl));
      out.text(format_magma(m));
      out.field("size", std::to_string(m.size()));
      for (Element a = 0; a < m.size(); ++a) {
        std::string row;
        for (Element b = 0; b < m.size(); ++b) row += (b ? " " : "") + std::to_string(m(a, b));
        out.field("row" + std::to_string(a), row);
      }
      return kPass;
    }

    if (free2_cmd->parsed()) {
      const auto& f = free2();
      if (free2_action == "count") {
        out.text(std::to_string(f.size()) + "\n");
        out.field("count", std::to_string(f.size()));
      } else if (free2_action == "anchors") {
        std::vector<Element> ids;
        for (const auto& [number, id] : f.anchors()) {
          ids.push_back(id);
          out.field("beran" + std::to_string(number), std::to_string(id));
        }
        out.text(render_element_table(f, ids));
      } else {
        if (!impl) throw InputError("free2 closure needs --impl");
        auto ids = f.closure(parse_index(*impl));
        out.text(render_element_table(f, ids));
        out.text(std::to_string(ids.size()) + " elements\n");
        out.field("size", std::to_string(ids.size()));
        out.field("ids", ids_text(ids));
      }
      return kPass;
    }

    if (shortest->parsed()) {
      const auto t = parse_index(target);
      const auto b = parse_index(basis);
      ShortestDefinition d;
      if (constants) {
        const auto& f = free2();
        auto fr = enumerate_terms_by_size(b, max_size, true, f);
        auto goal = f.implication(t, f.generator_a(), f.generator_b());
        if (const auto* terms = fr.terms_for(goal)) {
          d.status = DefinitionStatus::found;
          d.size = fr.min_size.at(goal);
          d.terms = *terms;
        } else {
          d.status = DefinitionStatus::beyond_bound;
        }
      } else {
        d = shortest_definition(t, b, max_size);
      }
      const std::string goal = "a ->" + std::to_string(target) + " b";
      switch (d.status) {
        case DefinitionStatus::not_expressible:
          out.text(goal + ": NOT_EXPRESSIBLE with ->" + std::to_string(basis) + "\n");
          out.field("status", "NOT_EXPRESSIBLE");
          return kFail;
        case DefinitionStatus::beyond_bound:
          out.text(goal + ": no term with at most " + std::to_string(max_size) + " operations\n");
          out.field("status", "NOT_FOUND");
          return kFail;
        case DefinitionStatus::found: break;
      }
      out.field("status", "EXPRESSIBLE");
      out.field("operations", std::to_string(d.size));
      for (const auto& term : d.terms) {
        auto text = render_term(term);
        out.text(goal + " = " + text + "   [" + std::to_string(d.size) + " operations, " +
                 std::to_string(symbol_count(term)) + " symbols]\n");
        out.field("term", text);
      }
      return kPass;
    }

    if (decide->parsed()) {
      auto d = decide_equation(parse_equation(equation));
      out.text(format_decision(d) + "\n");
      out.field("verdict", std::string(verdict_name(d.verdict)));
      if (d.refutation) {
        out.field("model", d.refutation->model);
        std::string w;
        for (const auto& [var, value] : d.refutation->assignment) {
          w += (w.empty() ? "" : ",") + std::string(1, var) + "=" + value;
        }
        out.field("witness", w);
        out.field("lhs", d.refutation->lhs);
        out.field("rhs", d.refutation->rhs);
      }
      return d.proved() ? kPass : kFail;
    }

    if (check_horn_cmd->parsed()) {
      auto in = text_io::open_file(input);
      auto clauses = parse_clause_file(in, input);
      const bool lattice = model.starts_with("builtin:") || text_io::peek_keyword(model) == "oml";
      bool all = true;
      for (const auto& c : clauses) {
        CheckResult r;
        if (lattice) {
          auto clause = c.clause;
          if (any_term(clause, [](const Term& t) { return has_generic(t); })) {
            if (!impl) throw InputError(input + ":" + std::to_string(c.line) + ": '.' needs --impl over a lattice");
            clause = instantiate(clause, parse_index(*impl));
          }
          r = check_horn(clause, load_lattice(model));
        } else {
          r = check_horn(c.clause, read_magma_file(model));
        }
        all = all && r.passed();
        const std::string key = "line" + std::to_string(c.line);
        if (r.passed()) {
          out.text("PASS  " + c.text + "\n");
        } else {
          out.text("FAIL  " + c.text + "  at " + format_assignment(r.witness->assignment) + ": lhs " +
                   std::to_string(r.witness->lhs) + ", rhs " + std::to_string(r.witness->rhs) + "\n");
          out.field(key + ".witness", witness_text(r.witness->assignment));
        }
        out.field(key + ".status", r.passed() ? "PASS" : "FAIL");
      }
      out.field("verdict", all ? "PASS" : "FAIL");
      return all ? kPass : kFail;
    }

    if (hasse->parsed()) {
      auto s = induced_join_semilattice(load_magma(input, impl));
      if (dot) {
        std::cout << render_hasse_dot(s);
      } else {
        out.text("elements: " + std::to_string(s.order.size()) + "\n");
        out.text("atoms: " + ids_text(s.atoms) + "\n");
        out.text("coatoms: " + ids_text(s.coatoms) + "\n");
        out.text("covering pairs: " + std::to_string(s.covers.size()) + "\n");
        for (const auto& [lo, hi] : s.covers) out.text("  " + std::to_string(lo) + " < " + std::to_string(hi) + "\n");
        for (const auto& fl : s.failures) out.text(fl.condition + ": FAIL at " + format_assignment(fl.witness) + "\n");
        for (const auto& fl : s.order.failures()) out.text(fl.condition + ": FAIL at " + format_assignment(fl.witness) + "\n");
        out.text(std::string("join semilattice: ") + (s.is_semilattice() ? "PASS" : "FAIL") + "\n");
      }
      if (!dot) {
        out.field("elements", std::to_string(s.order.size()));
        out.field("atoms", ids_text(s.atoms));
        out.field("coatoms", ids_text(s.coatoms));
        out.field("covers", std::to_string(s.covers.size()));
        out.field("verdict", s.is_semilattice() ? "PASS" : "FAIL");
      }
      return s.is_semilattice() ? kPass : kFail;
    }

    if (filters->parsed()) {
      auto r = principal_filters_report(load_magma(input, impl));
      for (const auto& f : r.filters) {
        const std::string key = "F" + std::to_string(f.generator);
        out.text(key + " = {" + ids_text(f.members) + "}: " + (f.passed() ? "PASS" : "FAIL"));
        if (!f.closed) out.text(" (not closed)");
        for (const auto& fl : f.oml.failures) out.text(" " + fl.condition + " at " + format_assignment(fl.witness));
        out.text("\n");
        out.field(key + ".members", ids_text(f.members));
        out.field(key + ".status", f.passed() ? "PASS" : "FAIL");
      }
      out.text(std::string("orthomodular join semilattice: ") + (r.is_ojs() ? "PASS" : "FAIL") + "\n");
      out.field("verdict", r.is_ojs() ? "PASS" : "FAIL");
      return r.is_ojs() ? kPass : kFail;
    }

    if (sol->parsed()) {
      auto w = check_sol_condition(load_magma(input, impl));
      if (w) {
        out.text("condition C: FAIL at a=" + std::to_string(w->a) + ", b=" + std::to_string(w->b) + ", c=" +
                 std::to_string(w->c) + ": c.b = " + std::to_string(w->local_complement) +
                 ", (c.a) v b = " + std::to_string(w->joined) + "\n");
        out.field("witness", "a=" + std::to_string(w->a) + ",b=" + std::to_string(w->b) + ",c=" + std::to_string(w->c));
        out.field("lhs", std::to_string(w->local_complement));
        out.field("rhs", std::to_string(w->joined));
      } else {
        out.text("condition C: PASS\n");
      }
      out.field("verdict", w ? "FAIL" : "PASS");
      return w ? kFail : kPass;
    }

    if (induce->parsed()) {
      auto m = load_magma(input, impl);
      if (zero) {
        if (*zero < 0 || static_cast<std::size_t>(*zero) >= m.size()) throw InputError("--zero out of range");
        m = m.with_zero(static_cast<Element>(*zero));
      } else if (!m.zero() && impl) {
        m = m.with_zero(load_lattice(input).zero());
      }
      auto l = induce_oml_from_zero(m);
      out.text(format_oml(l.tables()));
      out.text("orthomodular lattice: PASS\n");
      out.field("size", std::to_string(l.size()));
      out.field("verdict", "PASS");
      return kPass;
    }

    if (translate->parsed()) {
      auto m = translate_magma(load_magma(input, impl), parse_term(macro));
      out.text(format_magma(m));
      out.field("size", std::to_string(m.size()));
      for (Element a = 0; a < m.size(); ++a) {
        std::string row;
        for (Element b = 0; b < m.size(); ++b) row += (b ? " " : "") + std::to_string(m(a, b));
        out.field("row" + std::to_string(a), row);
      }
      return kPass;
    }

    if (find->parsed()) {
      auto in = text_io::open_file(input);
      auto q = parse_query(in, input);
      bool any_found = false;
      bool exhausted = false;
      for (auto n = q.size_min; n <= q.size_max; ++n) {
        auto r = find_model(q.query(n));
        const std::string status(model_status_name(r.status));
        out.text("size " + std::to_string(n) + ": " + status + " (" + std::to_string(r.nodes) + " nodes)\n");
        out.field("size" + std::to_string(n), status);
        if (r.model) {
          out.text(format_magma(*r.model));
          any_found = true;
          break;
        }
        exhausted = exhausted || r.status == ModelStatus::exhausted;
      }
      const std::string verdict = any_found ? "FOUND" : exhausted ? "EXHAUSTED" : "NONE";
      out.field("verdict", verdict);
      return any_found ? kPass : kFail;
    }

    if (reproduce->parsed()) {
      auto lines = reproduce_claims(read_magma_file(table1_path));
      out.text(format_scoreboard(lines));
      bool all = true;
      for (std::size_t k = 0; k < lines.size(); ++k) {
        out.field("claim" + std::to_string(k + 1), lines[k].passed ? "PASS" : "FAIL");
        all = all && lines[k].passed;
      }
      out.field("verdict", all ? "PASS" : "FAIL");
      return all ? kPass : kFail;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
