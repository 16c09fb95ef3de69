#include <gtest/gtest.h>

#include "qia/algebras.hpp"
#include "qia/lattice.hpp"
#include "qia/magma.hpp"

using namespace qia;

namespace {

const Magma& table1() {
  static const Magma m = read_magma_file(QIA_DATA_DIR "/table1.magma");
  return m;
}

Magma dishkant_mo2() { return derive_implication_magma(make_mo(2), Implication::dishkant); }

}  // namespace

TEST(Table1, ShippedVerbatim) {
  EXPECT_EQ(table1().size(), 12u);
  EXPECT_EQ(table1().zero(), Element{0});
  EXPECT_EQ(table1()(3, 5), 8);
  EXPECT_EQ(table1()(10, 0), 11);
  EXPECT_EQ(table1()(11, 11), 1);
}

TEST(AxiomSystems, Table1IsOmia) {
  auto r = check_axiom_system(table1(), axiom_system(SystemName::omia));
  EXPECT_TRUE(r.passed()) << format_report(r);
  EXPECT_EQ(r.find("O6")->result.assignments, 1728u);
}

TEST(AxiomSystems, Table1FailsOI3) {
  auto r = check_axiom_system(table1(), axiom_system(SystemName::oia));
  EXPECT_TRUE(r.find("OI1")->result.passed());
  EXPECT_TRUE(r.find("OI2")->result.passed());
  const auto& w = r.find("OI3")->result.witness;
  ASSERT_TRUE(w);
  EXPECT_EQ(w->assignment, (Assignment{{'a', 5}, {'b', 2}, {'c', 0}}));
  EXPECT_EQ(w->lhs, 10);
  EXPECT_EQ(w->rhs, 4);
}

TEST(AxiomSystems, SoundnessOnBattery) {
  for (const auto& l : default_battery()) {
    EXPECT_TRUE(check_axiom_system(derive_implication_magma(l, Implication::dishkant), axiom_system(SystemName::oia)).passed());
    EXPECT_TRUE(check_axiom_system(derive_implication_magma(l, Implication::sasaki), axiom_system(SystemName::qsia)).passed());
  }
  for (auto i : quantum_implications) {
    EXPECT_TRUE(check_axiom_system(derive_implication_magma(make_mo(2), i), axiom_system(SystemName::qia)).passed())
        << implication_name(i);
  }
}

TEST(AxiomSystems, ClassicalImplicationFailsOiaOnMo2) {
  auto m = derive_implication_magma(make_mo(2), Implication::classical);
  EXPECT_FALSE(check_axiom_system(m, axiom_system(SystemName::oia)).passed());
}

TEST(AxiomSystems, SasakiIsNotAnOia) {
  auto m = derive_implication_magma(make_mo(2), Implication::sasaki);
  EXPECT_FALSE(check_axiom_system(m, axiom_system(SystemName::oia)).passed());
}

TEST(AxiomSystems, UqiaVariants) {
  EXPECT_THROW(axiom_system(SystemName::uqia), InputError);
  auto s = axiom_system(SystemName::uqia, JoinVariant::unified);
  EXPECT_EQ(s.axioms.size(), 13u);
  for (auto i : quantum_implications) {
    auto m = derive_implication_magma(make_mo(2), i);
    for (auto v : paired_variants(i)) {
      EXPECT_TRUE(check_axiom_system(m, axiom_system(SystemName::uqia, v)).passed())
          << implication_name(i) << " " << variant_label(v);
    }
  }
}

TEST(AxiomSystems, UnpairedVariantCanFail) {
  // (a.b).b is not the join for the Sasaki implication.
  auto m = derive_implication_magma(make_mo(2), Implication::sasaki);
  EXPECT_FALSE(check_axiom_system(m, axiom_system(SystemName::uqia, JoinVariant::dishkant_relevance)).passed());
}

TEST(AxiomSystems, QiaExpandsStar) {
  auto q = axiom_system(SystemName::qia);
  ASSERT_EQ(q.axioms.size(), 3u);
  EXPECT_EQ(q.axioms[0].clause.conclusion.rhs, Term::variable('a'));
  // The outer star has 6 operations and three occurrences of a, each a star.
  EXPECT_EQ(binary_op_count(q.axioms[0].clause.conclusion.lhs), 24u);
}

TEST(AxiomSystems, Names) {
  EXPECT_EQ(system_from_string("omia"), SystemName::omia);
  EXPECT_THROW(system_from_string("xyz"), InputError);
  EXPECT_THROW(variant_from_string("xyz"), InputError);
}

TEST(InducedOrder, Table1) {
  auto o = induced_order(table1());
  EXPECT_TRUE(o.is_poset());
  EXPECT_EQ(o.one(), 1);
  EXPECT_EQ(o.bottom(), Element{0});
  EXPECT_TRUE(o.leq(2, 4));
  EXPECT_TRUE(o.leq(9, 3));
  EXPECT_FALSE(o.leq(4, 2));
}

TEST(InducedOrder, ChainDishkant) {
  auto o = induced_order(derive_implication_magma(make_boolean(1), Implication::dishkant));
  EXPECT_TRUE(o.leq(0, 1));
  EXPECT_FALSE(o.leq(1, 0));
}

TEST(InducedOrder, RejectsNonConstantUnit) {
  Magma m(2, {0, 1, 1, 1});
  EXPECT_THROW(induced_order(m), InputError);
}

TEST(InducedOrder, ReportsNonPoset) {
  // 0 <= 1 and 1 <= 0 with unit 1.
  Magma m(2, {1, 1, 1, 1});
  auto o = induced_order(m);
  EXPECT_FALSE(o.is_poset());
}

TEST(Semilattice, Table1) {
  auto s = induced_join_semilattice(table1());
  EXPECT_TRUE(s.is_semilattice());
  EXPECT_EQ(s.atoms, (std::vector<Element>{2, 5, 7, 9, 11}));
  EXPECT_EQ(s.coatoms, (std::vector<Element>{3, 4, 6, 8, 10}));
  EXPECT_EQ(s.join_of(5, 2), 8);
  EXPECT_EQ(s.covers.size(), 22u);
}

TEST(Semilattice, RecoversMo2Join) {
  auto mo2 = make_mo(2);
  auto s = induced_join_semilattice(dishkant_mo2());
  for (Element a = 0; a < mo2.size(); ++a) {
    for (Element b = 0; b < mo2.size(); ++b) EXPECT_EQ(s.join_of(a, b), mo2.join(a, b));
  }
}

TEST(Semilattice, DotHasOneEdgePerCover) {
  auto dot = render_hasse_dot(induced_join_semilattice(table1()));
  EXPECT_NE(dot.find("rankdir=BT"), std::string::npos);
  std::size_t edges = 0;
  for (auto pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++edges;
  EXPECT_EQ(edges, 22u);
  EXPECT_NE(dot.find("n0 -> n2;"), std::string::npos);
}

TEST(Filters, Table1IsOjs) {
  auto r = principal_filters_report(table1());
  EXPECT_TRUE(r.is_ojs());
  ASSERT_EQ(r.filters.size(), 12u);
  EXPECT_EQ(r.filters[1].members, (std::vector<Element>{1}));
  EXPECT_EQ(r.filters[0].members.size(), 12u);
}

TEST(Filters, Mo2BottomFilterIsMo2) {
  auto r = principal_filters_report(dishkant_mo2());
  EXPECT_TRUE(r.is_ojs());
  const auto& f0 = r.filters[0];
  EXPECT_EQ(f0.members.size(), 6u);
  auto mo2 = make_mo(2);
  for (std::size_t k = 0; k < f0.members.size(); ++k) EXPECT_EQ(f0.complement[k], mo2.ortho(f0.members[k]));
}

TEST(Sol, Table1FailsConditionC) {
  auto w = check_sol_condition(table1());
  ASSERT_TRUE(w);
  EXPECT_EQ(w->a, 0);
  EXPECT_EQ(w->b, 2);
  EXPECT_EQ(w->c, 4);
  EXPECT_EQ(w->local_complement, 6);
  EXPECT_EQ(w->joined, 8);
}

TEST(Sol, DishkantMagmasPass) {
  EXPECT_FALSE(check_sol_condition(dishkant_mo2()));
  EXPECT_FALSE(check_sol_condition(derive_implication_magma(make_boolean(1), Implication::dishkant)));
}

TEST(Translate, SasakiToDishkant) {
  auto m = translate_magma(derive_implication_magma(make_mo(2), Implication::sasaki), sasaki_to_dishkant_macro());
  EXPECT_EQ(m.table(), dishkant_mo2().table());
}

TEST(Translate, StarIsIdentityOnTable1) {
  EXPECT_EQ(translate_magma(table1(), star_macro()).table(), table1().table());
}

TEST(Translate, IdentityMacro) {
  EXPECT_EQ(translate_magma(table1(), parse_term("a . b")).table(), table1().table());
  EXPECT_THROW(translate_magma(table1(), parse_term("a . c")), InputError);
  EXPECT_THROW(translate_magma(table1(), parse_term("a v b")), InputError);
}

TEST(InduceOml, RecoversMo2AndSquare) {
  EXPECT_TRUE(induce_oml_from_zero(dishkant_mo2()).same_tables(make_mo(2)));
  auto sq = make_boolean(2);
  EXPECT_TRUE(induce_oml_from_zero(derive_implication_magma(sq, Implication::dishkant)).same_tables(sq));
}

TEST(InduceOml, Table1GivesTwelveElementOml) {
  auto l = induce_oml_from_zero(table1());
  EXPECT_EQ(l.size(), 12u);
  EXPECT_TRUE(verify_oml(l.tables()).passed());
}

TEST(InduceOml, RejectsNonBottomZero) {
  EXPECT_THROW(induce_oml_from_zero(table1().with_zero(Element{2})), InputError);
  EXPECT_THROW(induce_oml_from_zero(table1().with_zero(std::nullopt)), InputError);
}

TEST(OmiaInvariant, StructureOfOmiaMagmas) {
  std::vector<Magma> corpus{table1()};
  for (const auto& l : default_battery()) corpus.push_back(derive_implication_magma(l, Implication::dishkant));
  for (const auto& m : corpus) {
    ASSERT_TRUE(check_axiom_system(m, axiom_system(SystemName::omia)).passed());
    EXPECT_TRUE(induced_join_semilattice(m).is_semilattice());
    EXPECT_TRUE(principal_filters_report(m).is_ojs());
    if (check_axiom_system(m, axiom_system(SystemName::oia)).passed()) {
      EXPECT_FALSE(check_sol_condition(m));
    }
  }
}
