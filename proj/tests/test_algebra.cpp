#include <gtest/gtest.h>

#include "opetope/algebra.hpp"
#include "test_util.hpp"

using namespace opetope;

namespace {

using Table = std::vector<std::vector<std::size_t>>;

Table cyclic(std::size_t n) {
  Table t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

}  // namespace

TEST(Algebra, SetAlgebraOfI) {
  const auto alg = set_algebra(3);
  const std::vector<std::size_t> two{2};
  EXPECT_EQ(eval_algebra(alg, unit_operation(), two), 2u);
  EXPECT_TRUE(check_algebra_axioms(initial_operad(), alg, 4).ok());
  const std::vector<std::size_t> bad{3};
  try {
    eval_algebra(alg, unit_operation(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::carrier_mismatch);
  }
  const std::vector<std::size_t> none;
  EXPECT_THROW(eval_algebra(alg, unit_operation(), none), Error);
}

TEST(Algebra, MonoidAlgebraSatisfiesAxioms) {
  const auto alg = monoid_algebra(cyclic(3), 0, 4);
  const auto r = check_algebra_axioms(OperadLevel(1), alg, 4);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.instances.at("a"), 0u);
}

TEST(Algebra, ChainsActInPathOrder) {
  // non-commutative monoid: maps {0,1} -> {0,1}, composed left to right
  // elements: 0 = id, 1 = const0, 2 = const1, 3 = swap; table[a][b] = b after a
  const Table t{{0, 1, 2, 3}, {1, 1, 2, 2}, {2, 1, 2, 1}, {3, 1, 2, 0}};
  const auto alg = monoid_algebra(t, 0, 3);
  EXPECT_TRUE(check_algebra_axioms(OperadLevel(1), alg, 3).ok());
  const auto stated = parse_operation("[(1,(1,_))|1,0|0]");
  const auto other = parse_operation("[(1,(1,_))|0,1|0]");
  const std::vector<std::size_t> args{3, 1};
  // input 0 is the deepest node and is applied first
  EXPECT_EQ(eval_algebra(alg, stated, args), t[3][1]);
  EXPECT_EQ(eval_algebra(alg, other, args), t[1][3]);
}

TEST(Algebra, RandomCompositesAgreeStepwise) {
  const auto table = cyclic(3);
  const auto alg = monoid_algebra(table, 0, 4);
  const auto ops = tower_operations(1, 4);
  const auto pool = testutil::by_output(1, 4);
  std::size_t checked = 0;
  for (int attempt = 0; attempt < 5000 && checked < 100; ++attempt) {
    const auto& f = testutil::pick_from(ops);
    std::vector<Operation> gs;
    if (!testutil::random_arguments(f, pool, gs)) continue;
    std::size_t total = 0, arity = 0;
    for (const auto& g : gs) total += g.size(), arity += g.arity();
    if (f.size() + total > 4) continue;
    const auto h = compose(f, gs);
    std::vector<std::size_t> args(arity);
    for (auto& a : args) a = testutil::pick(3);
    std::vector<std::size_t> inner;
    std::size_t at = 0;
    for (const auto& g : gs) {
      inner.push_back(eval_algebra(alg, g, std::span<const std::size_t>(args).subspan(at, g.arity())));
      at += g.arity();
    }
    EXPECT_EQ(eval_algebra(alg, h, args), eval_algebra(alg, f, inner)) << f.code();
    ++checked;
  }
  EXPECT_EQ(checked, 100u);
}

TEST(Algebra, NonAssociativeTableDoesNotExtend) {
  const Table bad{{0, 1, 2}, {1, 2, 0}, {2, 0, 0}};
  EXPECT_FALSE(extend_binary_table(bad, 0));
  const auto good = extend_binary_table(cyclic(3), 0);
  ASSERT_TRUE(good);
  EXPECT_TRUE(check_algebra_axioms(OperadLevel(1), *good, 3).ok());
}

TEST(Algebra, CorruptedActionIsReported) {
  auto alg = monoid_algebra(cyclic(2), 0, 3);
  const auto code = parse_operation("[(1,(1,_))|1,0|0]").code();
  alg.action[code][3] ^= 1;
  const auto r = check_algebra_axioms(OperadLevel(1), alg, 3);
  EXPECT_FALSE(r.ok());
  auto short_table = monoid_algebra(cyclic(2), 0, 2);
  short_table.action[code].pop_back();
  EXPECT_EQ(check_algebra_axioms(OperadLevel(1), short_table, 2).count("table"), 1u);
}
