#include <gtest/gtest.h>

#include "opetope/operad.hpp"

using namespace opetope;

TEST(OperadAxioms, InitialOperad) {
  const auto r = check_operad_axioms(initial_operad(), 3);
  EXPECT_TRUE(r.ok());
  for (const char* axiom : {"a", "b", "c", "d", "e"}) EXPECT_GT(r.instances.at(axiom), 0u) << axiom;
}

TEST(OperadAxioms, SliceOfInitialOperad) {
  const auto r = check_operad_axioms(slice(initial_operad()), 4);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.instances.at("a"), 50u);
}

TEST(OperadAxioms, TowerLevelsUpToThree) {
  for (std::size_t d = 0; d <= 3; ++d) {
    const auto r = check_operad_axioms(OperadLevel(d), 4, 4);
    EXPECT_TRUE(r.ok()) << "level " << d;
    for (const char* axiom : {"a", "b", "c", "d", "e"}) EXPECT_GT(r.instances.at(axiom), 0u) << d << axiom;
  }
}

TEST(OperadAxioms, SecondSliceWithLargerBound) {
  const auto r = check_operad_axioms(OperadLevel(2), 6, 4);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.instances.at("a"), 6u);
}

TEST(OperadAxioms, ReportIndependentOfWorkers) {
  FiniteOperad bad = FiniteOperad::from_monoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 0}}, 0);
  const auto a = check_operad_axioms(bad, 1, 1);
  const auto b = check_operad_axioms(bad, 1, 4);
  EXPECT_EQ(a.violations, b.violations);
  EXPECT_EQ(a.instances, b.instances);
}

TEST(OperadAxioms, MonoidTablesAreOperads) {
  EXPECT_TRUE(check_operad_axioms(FiniteOperad::from_monoid({{0, 1}, {1, 0}}, 0), 1).ok());
  EXPECT_TRUE(check_operad_axioms(FiniteOperad::from_monoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 0), 1).ok());
}

TEST(OperadAxioms, CorruptedTableViolatesAssociativity) {
  // Z/3 with 2*2 redirected to 0
  const auto r = check_operad_axioms(FiniteOperad::from_monoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 0}}, 0), 1);
  EXPECT_FALSE(r.ok());
  EXPECT_GE(r.count("a"), 1u);
  EXPECT_EQ(r.count("b"), 0u);
}

TEST(OperadAxioms, CorruptedUnitViolatesUnitAxiom) {
  const auto r = check_operad_axioms(FiniteOperad::from_monoid({{0, 0}, {1, 0}}, 0), 1);
  EXPECT_GE(r.count("b"), 1u);
}

TEST(OperadAxioms, ZeroBoundRejected) {
  try {
    check_operad_axioms(initial_operad(), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::bound_exceeded);
  }
}

TEST(Slice, TypesAreOperationsOfTheLevelBelow) {
  const auto I = initial_operad();
  const auto Ip = slice(I);
  const auto types = Ip.types(4);
  ASSERT_EQ(types.size(), 1u);
  EXPECT_EQ(types[0].op, unit_operation());
  const auto Ipp = slice(Ip);
  const auto ops1 = Ip.operations(4);
  const auto types2 = Ipp.types(4);
  ASSERT_EQ(types2.size(), ops1.size());
  for (std::size_t i = 0; i < ops1.size(); ++i) EXPECT_EQ(types2[i].op, ops1[i]);
}

TEST(Slice, ChainsWithKInputsNumberKFactorial) {
  const auto Ip = slice(initial_operad());
  const std::size_t fact[] = {1, 1, 2, 6, 24, 120};
  for (std::size_t k = 0; k <= 5; ++k) EXPECT_EQ(Ip.operations(k, 5).size(), fact[k]) << k;
}

TEST(Slice, FiniteOperadsAreNotSliced) {
  try {
    slice(FiniteOperad::from_monoid({{0}}, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unsupported_operad);
  }
}

TEST(Slice, CompositionIsSubstitution) {
  const auto lvl = OperadLevel(2);
  for (const auto& f : lvl.operations(3)) {
    if (f.arity() == 0) continue;
    const auto& body = f.body();
    const auto v = f.node_order()[0];
    // replace input 0 by its own corolla: nothing changes
    std::vector<Operation> gs;
    for (const auto& t : f.inputs()) gs.push_back(identity(t));
    EXPECT_EQ(*lvl.compose(f, gs), f);
    EXPECT_EQ(substitute(body, v, identity(f.inputs()[0]).body()), body);
  }
}
