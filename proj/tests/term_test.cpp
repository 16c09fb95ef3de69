#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "qia/algebras.hpp"
#include "qia/decide.hpp"
#include "qia/eval.hpp"
#include "qia/lattice.hpp"
#include "qia/magma.hpp"
#include "qia/term.hpp"

using namespace qia;

namespace {

const Magma& table1() {
  static const Magma m = read_magma_file(QIA_DATA_DIR "/table1.magma");
  return m;
}

Term a() { return Term::variable('a'); }
Term b() { return Term::variable('b'); }

Term random_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
  switch (pick(rng)) {
    case 0: return Term::variable("abcxyz"[rng() % 6]);
    case 1: return rng() % 2 ? Term::zero() : Term::one();
    case 2: return Term::variable("ab"[rng() % 2]);
    case 3: return Term::ortho(random_term(rng, depth - 1));
    case 4: return Term::join(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 5: return Term::meet(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 6:
    case 7:
      return Term::implies(implication_from_index(static_cast<int>(rng() % 6)), random_term(rng, depth - 1),
                           random_term(rng, depth - 1));
    default: return Term::dot(random_term(rng, depth - 1), random_term(rng, depth - 1));
  }
}

}  // namespace

TEST(Parse, Implication) { EXPECT_EQ(parse_term("a ->2 b"), Term::implies(Implication::dishkant, a(), b())); }

TEST(Parse, SasakiTranslationTerm) {
  auto t = parse_term("(b ->1 a) ->1 (a ->1 b)");
  auto s = Implication::sasaki;
  EXPECT_EQ(t, Term::implies(s, Term::implies(s, b(), a()), Term::implies(s, a(), b())));
}

TEST(Parse, JoinWithComplement) { EXPECT_EQ(parse_term("a v b'"), Term::join(a(), Term::ortho(b()))); }

TEST(Parse, ComplementOfParenthesised) {
  EXPECT_EQ(parse_term("(a ^ b)''"), Term::ortho(Term::ortho(Term::meet(a(), b()))));
}

TEST(Parse, JoinAndMeetChainLeft) {
  EXPECT_EQ(parse_term("a v b v c"), Term::join(Term::join(a(), b()), Term::variable('c')));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_term("a v b ^ c"), ParseError);
  EXPECT_THROW(parse_term("a ->1 b ->1 c"), ParseError);
  EXPECT_THROW(parse_term("a . b . c"), ParseError);
  EXPECT_THROW(parse_term("a ->7 b"), ParseError);
  EXPECT_THROW(parse_term("(a v b"), ParseError);
  EXPECT_THROW(parse_term("a v b)"), ParseError);
  EXPECT_THROW(parse_term("A"), ParseError);
  EXPECT_THROW(parse_term(""), ParseError);
}

TEST(Parse, ErrorReportsColumn) {
  try {
    parse_term("a v (b ^ c");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos) << e.what();
  }
}

TEST(Render, Basics) {
  EXPECT_EQ(render_term(Term::implies(Implication::relevance, a(), b())), "a ->5 b");
  EXPECT_EQ(render_term(Term::meet(a(), b())), "a ^ b");
  EXPECT_EQ(render_term(Term::dot(a(), b())), "a . b");
  EXPECT_EQ(render_term(parse_term("(a v b) v c")), "a v b v c");
  EXPECT_EQ(render_term(parse_term("a v (b v c)")), "a v (b v c)");
}

TEST(Render, RoundTripsRandomTerms) {
  std::mt19937 rng(20240607);
  for (int k = 0; k < 2000; ++k) {
    auto t = random_term(rng, 5);
    auto text = render_term(t);
    ASSERT_EQ(parse_term(text), t) << text;
  }
}

TEST(Render, ClauseRoundTrip) {
  auto c = parse_clause("a . b = 1 & b . c = 1 => c = (c . a) . b");
  EXPECT_EQ(render(c), "a . b = 1 & b . c = 1 => c = (c . a) . b");
  EXPECT_EQ(parse_clause(render(c)), c);
}

TEST(Evaluate, Table1AbsorptionAt52) {
  EXPECT_EQ(evaluate(parse_term("(a . b) . a"), table1(), Assignment{{'a', 5}, {'b', 2}}), 5);
  EXPECT_EQ(table1()(5, 2), 10);
}

TEST(Evaluate, Mo2Dishkant) {
  EXPECT_EQ(evaluate(parse_term("a ->2 b"), make_mo(2), Assignment{{'a', 2}, {'b', 4}}), 4);
}

TEST(Evaluate, ExcludedMiddle) {
  for (const auto& l : default_battery()) {
    for (Element x = 0; x < l.size(); ++x) {
      EXPECT_EQ(evaluate(parse_term("a v a'"), l, Assignment{{'a', x}}), l.one());
    }
  }
}

TEST(Evaluate, Errors) {
  EXPECT_THROW(evaluate(parse_term("a v b"), table1(), Assignment{{'a', 1}, {'b', 2}}), InputError);
  EXPECT_THROW(evaluate(parse_term("a . b"), table1(), Assignment{{'a', 1}}), InputError);
  EXPECT_THROW(evaluate(parse_term("a . b"), make_mo(2), Assignment{{'a', 1}, {'b', 1}}), InputError);
  Magma no_zero(2, {1, 1, 0, 1});
  EXPECT_THROW(evaluate(parse_term("a . 0"), no_zero, Assignment{{'a', 1}}), InputError);
  EXPECT_EQ(evaluate(parse_term("a . 1"), no_zero, Assignment{{'a', 0}}), 1);
}

TEST(CheckEquation, OI3OverTable1) {
  auto r = check_equation(parse_equation("a . ((b . a) . c) = a . c"), table1());
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.witness->assignment, (Assignment{{'a', 5}, {'b', 2}, {'c', 0}}));
  EXPECT_EQ(r.witness->lhs, 10);
  EXPECT_EQ(r.witness->rhs, 4);
}

TEST(CheckEquation, StarMacroOverTable1) {
  EXPECT_TRUE(check_equation({star_macro(), parse_term("a . b")}, table1()).passed());
}

TEST(CheckEquation, CommutativeJoinOnBattery) {
  for (const auto& l : default_battery()) {
    EXPECT_TRUE(check_equation(parse_equation("a v b = b v a"), l).passed());
  }
}

TEST(CheckEquation, WitnessReevaluates) {
  for (const auto& l : default_battery()) {
    auto r = check_equation(parse_equation("a ^ (b v c) = (a ^ b) v (a ^ c)"), l);
    if (!r.witness) continue;
    auto eq = parse_equation("a ^ (b v c) = (a ^ b) v (a ^ c)");
    EXPECT_NE(evaluate(eq.lhs, l, r.witness->assignment), evaluate(eq.rhs, l, r.witness->assignment));
  }
}

TEST(CheckHorn, OrthomodularLawOverTable1) {
  auto r = check_horn(implication_orthomodular_law(), table1());
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.witness->assignment, (Assignment{{'a', 0}, {'b', 2}, {'c', 4}}));
  EXPECT_EQ(r.witness->lhs, 4);
  EXPECT_EQ(r.witness->rhs, 10);
}

TEST(CheckHorn, ClassicalL8FailsInMo2) {
  auto r = check_horn(parse_clause("a ->0 b = 1 => a v b = b"), make_mo(2));
  ASSERT_FALSE(r.passed());
  // First atoms pair in lexicographic order: x1 = 2 and x2 = 4.
  EXPECT_EQ(r.witness->assignment, (Assignment{{'a', 2}, {'b', 4}}));
}

TEST(CheckHorn, UQ12OverMo2Dishkant) {
  auto system = axiom_system(SystemName::uqia, JoinVariant::dishkant_relevance);
  const Axiom* uq12 = nullptr;
  for (const auto& ax : system.axioms) {
    if (ax.name == "UQ12") uq12 = &ax;
  }
  ASSERT_NE(uq12, nullptr);
  EXPECT_TRUE(check_horn(uq12->clause, derive_implication_magma(make_mo(2), Implication::dishkant)).passed());
}

TEST(DecideEquation, Routes) {
  EXPECT_TRUE(decide_equation(parse_equation("a ->2 b = (b ->3 (b ->3 a)) ->3 (((a ->3 b) ->3 a) ->3 b)")).proved());
  auto oi3 = decide_equation(parse_equation("a ->2 ((b ->2 a) ->2 c) = a ->2 c"));
  EXPECT_EQ(oi3.verdict, Verdict::no_counterexample);
  EXPECT_EQ(oi3.battery.size(), 6u);
  auto classical = decide_equation(parse_equation("a ->0 b = 1"));
  ASSERT_TRUE(classical.refuted());
  EXPECT_EQ(classical.refutation->model, "2");
  EXPECT_EQ(classical.refutation->assignment,
            (std::vector<std::pair<char, std::string>>{{'a', "1"}, {'b', "0"}}));
  for (auto i : quantum_implications) {
    EXPECT_TRUE(decide_equation(instantiate(parse_equation("a . (a . a) = a . a"), i)).proved());
  }
  EXPECT_THROW(decide_equation(parse_equation("a . b = b . a")), InputError);
}

TEST(DecideEquation, RenamesVariables) {
  auto d = decide_equation(parse_equation("x v y = x"));
  ASSERT_TRUE(d.refuted());
  EXPECT_EQ(d.refutation->assignment.front().first, 'x');
}

TEST(DecideEquation, ThreeVariableRefutation) {
  auto d = decide_equation(parse_equation("a ^ (b v c) = (a ^ b) v (a ^ c)"));
  ASSERT_TRUE(d.refuted());
  EXPECT_EQ(d.refutation->model, "MO2");
}

TEST(DecideEquation, AgreesWithBatteryOnTwoVariables) {
  std::mt19937 rng(7);
  auto two_var = [&](auto&& self, int depth) -> Term {
    switch (depth <= 0 ? rng() % 2 : rng() % 5) {
      case 0: return a();
      case 1: return b();
      case 2: return Term::ortho(self(self, depth - 1));
      case 3: return Term::join(self(self, depth - 1), self(self, depth - 1));
      default:
        return Term::implies(implication_from_index(static_cast<int>(rng() % 6)), self(self, depth - 1),
                             self(self, depth - 1));
    }
  };
  for (int k = 0; k < 300; ++k) {
    Equation eq{two_var(two_var, 3), two_var(two_var, 3)};
    auto d = decide_equation(eq);
    bool battery_ok = true;
    for (const auto& l : default_battery()) battery_ok = battery_ok && check_equation(eq, l).passed();
    if (d.proved()) {
      EXPECT_TRUE(battery_ok) << render(eq);
    }
    // MO2 and the chain are in the battery and separate the free algebra.
    EXPECT_EQ(d.proved(), battery_ok) << render(eq);
  }
}

TEST(ClauseFile, ParsesWithLineNumbers) {
  std::istringstream in("# comment\n\na v b = b v a\na . b = 1 & b . a = 1 => a = b  # trailing\n");
  auto clauses = parse_clause_file(in, "x.eq");
  ASSERT_EQ(clauses.size(), 2u);
  EXPECT_EQ(clauses[0].line, 3u);
  EXPECT_EQ(clauses[1].clause.premises.size(), 2u);
  std::istringstream bad("a v b = \n");
  try {
    parse_clause_file(bad, "bad.eq");
    FAIL() << "expected a parse error";
  } catch (const InputError& e) {
    EXPECT_TRUE(std::string(e.what()).starts_with("bad.eq:1:")) << e.what();
  }
}

TEST(Measures, Counts) {
  auto t = parse_term("(a ->1 b)' v a");
  EXPECT_EQ(binary_op_count(t), 2u);
  EXPECT_EQ(variables(t), (std::vector<char>{'a', 'b'}));
}
