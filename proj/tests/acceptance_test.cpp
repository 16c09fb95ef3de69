// Acceptance suite: one test per criterion, one summary line per test.

#include <gtest/gtest.h>

#include <algorithm>
#include <iostream>
#include <set>

#include "qia/qia.hpp"

using namespace qia;

namespace {

const Magma& table1() {
  static const Magma m = read_magma_file(QIA_DATA_DIR "/table1.magma");
  return m;
}

std::set<Element> as_set(const std::vector<Element>& v) { return {v.begin(), v.end()}; }

std::set<std::string> rendered(const std::vector<Term>& terms) {
  std::set<std::string> out;
  for (const auto& t : terms) out.insert(render_term(t));
  return out;
}

class CriterionPrinter : public testing::EmptyTestEventListener {
 public:
  void OnTestPartResult(const testing::TestPartResult& r) override {
    if (r.failed()) failures_.push_back(r.summary());
  }
  void OnTestStart(const testing::TestInfo&) override { failures_.clear(); }
  void OnTestEnd(const testing::TestInfo& info) override {
    std::cout << (info.result()->Passed() ? "PASS" : "FAIL") << "  " << info.name() << '\n';
    for (const auto& f : failures_) {
      std::string line;
      for (char c : f) {
        if (c == '\n') c = ' ';
        if (c == ' ' && (line.empty() || line.back() == ' ')) continue;
        line += c;
      }
      std::cout << "      " << line << '\n';
    }
    std::cout.flush();
  }

 private:
  std::vector<std::string> failures_;
};

}  // namespace

TEST(Acceptance, C01_Table1SatisfiesOmia) {
  auto r = check_axiom_system(table1(), axiom_system(SystemName::omia));
  for (const auto& a : r.results) {
    EXPECT_TRUE(a.result.passed()) << a.name;
    EXPECT_LE(a.result.assignments, 1728u) << a.name;
  }
  EXPECT_EQ(r.results.size(), 6u);
}

TEST(Acceptance, C02_Table1FailsOI3At520) {
  auto r = check_axiom_system(table1(), axiom_system(SystemName::oia));
  const auto* oi3 = r.find("OI3");
  ASSERT_NE(oi3, nullptr);
  ASSERT_TRUE(oi3->result.witness);
  EXPECT_EQ(oi3->result.witness->assignment, (Assignment{{'a', 5}, {'b', 2}, {'c', 0}}));
  EXPECT_EQ(oi3->result.witness->lhs, 10);
  EXPECT_EQ(oi3->result.witness->rhs, 4);
}

TEST(Acceptance, C03_Table1FailsOrthomodularLawAndConditionC) {
  auto law = check_horn(implication_orthomodular_law(), table1());
  ASSERT_TRUE(law.witness);
  EXPECT_EQ(law.witness->assignment, (Assignment{{'a', 0}, {'b', 2}, {'c', 4}}));
  EXPECT_EQ(evaluate(parse_term("(c . a) . b"), table1(), law.witness->assignment), 10);
  EXPECT_EQ(law.witness->lhs, 4);
  auto sol = check_sol_condition(table1());
  ASSERT_TRUE(sol);
  EXPECT_EQ(std::vector<Element>({sol->a, sol->b, sol->c}), std::vector<Element>({0, 2, 4}));
  EXPECT_EQ(sol->local_complement, 6);
  EXPECT_EQ(sol->joined, 8);
}

TEST(Acceptance, C04_Table1InducesOrthomodularJoinSemilattice) {
  auto s = induced_join_semilattice(table1());
  EXPECT_TRUE(s.is_semilattice());
  EXPECT_EQ(s.order.one(), 1);
  EXPECT_EQ(s.order.bottom(), Element{0});
  EXPECT_EQ(s.atoms, (std::vector<Element>{2, 5, 7, 9, 11}));
  EXPECT_EQ(s.coatoms, (std::vector<Element>{3, 4, 6, 8, 10}));
  auto filters = principal_filters_report(table1());
  for (const auto& f : filters.filters) EXPECT_TRUE(f.passed()) << "filter of " << f.generator;
  EXPECT_TRUE(filters.is_ojs());
}

TEST(Acceptance, C05_FreeAlgebraHas96ElementsDeterministically) {
  auto first = Free2::build();
  auto second = Free2::build();
  EXPECT_EQ(first.size(), 96u);
  ASSERT_EQ(first.size(), second.size());
  for (Element id = 0; id < first.size(); ++id) EXPECT_EQ(first.vector(id), second.vector(id));
}

TEST(Acceptance, C06_ClosureSizes) {
  const auto& f = free2();
  EXPECT_EQ(f.closure(Implication::classical).size(), 7u);
  EXPECT_EQ(f.closure(Implication::sasaki).size(), 28u);
  EXPECT_EQ(f.closure(Implication::dishkant).size(), 6u);
  EXPECT_EQ(f.closure(Implication::kalmbach).size(), 18u);
  EXPECT_EQ(f.closure(Implication::non_tollens).size(), 22u);
  EXPECT_EQ(f.closure(Implication::relevance).size(), 36u);
  std::set<Element> expected;
  for (int n : {22, 39, 29, 46, 92, 96}) expected.insert(*f.with_anchor(n));
  EXPECT_EQ(as_set(f.closure(Implication::dishkant)), expected);
}

TEST(Acceptance, C07_ClosureIntersectionAndUnion) {
  const auto& f = free2();
  auto inter = as_set(f.closure(Implication::sasaki));
  std::set<Element> uni;
  for (auto i : quantum_implications) {
    auto c = as_set(f.closure(i));
    std::set<Element> next;
    std::set_intersection(inter.begin(), inter.end(), c.begin(), c.end(), std::inserter(next, next.end()));
    inter = next;
    uni.insert(c.begin(), c.end());
  }
  EXPECT_EQ(inter, as_set(f.closure(Implication::dishkant)));
  EXPECT_EQ(uni, as_set(f.closure(Implication::relevance)));
}

TEST(Acceptance, C08_CrossDefinitionTable) {
  for (auto target : all_implications) {
    for (auto basis : all_implications) {
      if (target == basis) continue;
      auto d = shortest_definition(target, basis);
      const auto* row = catalog::find_cross_definition(target, basis);
      const std::string cell = "a ->" + std::to_string(index_of(target)) + " b in ->" + std::to_string(index_of(basis));
      if (!row) {
        EXPECT_EQ(d.status, DefinitionStatus::not_expressible) << cell;
        continue;
      }
      auto goal = Term::implies(target, Term::variable('a'), Term::variable('b'));
      std::set<std::string> expected;
      for (const auto& text : row->terms) {
        auto t = instantiate(parse_term(text), basis);
        EXPECT_TRUE(decide_two_var_equation({goal, t}).proved()) << cell << ": " << text;
        expected.insert(render_term(t));
      }
      ASSERT_EQ(d.status, DefinitionStatus::found) << cell;
      EXPECT_EQ(d.size, row->size) << cell;
      EXPECT_EQ(rendered(d.terms), expected) << cell;
    }
  }
}

TEST(Acceptance, C09_IdentitiesProvedAndLineThreeUnique) {
  const auto ids = catalog::identities();
  for (const auto& id : ids) {
    for (auto i : id.holds_for) {
      EXPECT_TRUE(decide_two_var_equation(id.at(i)).proved()) << id.name << " at " << implication_name(i);
    }
    for (auto i : id.fails_for) {
      EXPECT_TRUE(decide_two_var_equation(id.at(i)).refuted()) << id.name << " at " << implication_name(i);
    }
  }
  const auto& line3 = ids[6];
  ASSERT_EQ(line3.name, "complement join 3");
  EXPECT_EQ(line3.fails_for.size(), 4u);
}

TEST(Acceptance, C10_BatterySoundness) {
  for (const auto& l : default_battery()) {
    auto check = [&](Implication i, SystemName s, std::optional<JoinVariant> v = std::nullopt) {
      auto r = check_axiom_system(derive_implication_magma(l, i), axiom_system(s, v));
      EXPECT_TRUE(r.passed()) << l.label() << " " << implication_name(i) << " " << r.system;
    };
    check(Implication::dishkant, SystemName::oia);
    check(Implication::dishkant, SystemName::omia);
    check(Implication::sasaki, SystemName::qsia);
    for (auto i : quantum_implications) {
      check(i, SystemName::qia);
      for (auto v : paired_variants(i)) check(i, SystemName::uqia, v);
    }
  }
}

TEST(Acceptance, C11_RoundTrips) {
  for (const auto& l : default_battery()) {
    auto dishkant = derive_implication_magma(l, Implication::dishkant);
    EXPECT_TRUE(induce_oml_from_zero(dishkant).same_tables(l)) << l.label();
    auto translated = translate_magma(derive_implication_magma(l, Implication::sasaki), sasaki_to_dishkant_macro());
    EXPECT_EQ(translated.table(), dishkant.table()) << l.label();
  }
  EXPECT_EQ(translate_magma(table1(), star_macro()).table(), table1().table());
}

TEST(Acceptance, C12_ModelSearch) {
  ModelQuery two;
  two.satisfy = system_clauses("oia");
  two.size = 2;
  auto found = find_model(two);
  ASSERT_EQ(found.status, ModelStatus::found);
  EXPECT_TRUE(check_axiom_system(*found.model, axiom_system(SystemName::oia)).passed());
  for (std::size_t n = 1; n <= 4; ++n) {
    ModelQuery q;
    q.satisfy = system_clauses("oia");
    q.violate = system_clauses("omia");
    q.size = n;
    EXPECT_EQ(find_model(q).status, ModelStatus::none) << "size " << n;
  }
}

int main(int argc, char** argv) {
  testing::InitGoogleTest(&argc, argv);
  auto& listeners = testing::UnitTest::GetInstance()->listeners();
  delete listeners.Release(listeners.default_result_printer());
  listeners.Append(new CriterionPrinter);
  int status = RUN_ALL_TESTS();
  const auto* unit = testing::UnitTest::GetInstance();
  std::cout << unit->successful_test_count() << "/" << unit->total_test_count() << " criteria passed\n";
  return status;
}
