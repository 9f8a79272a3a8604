#include <gtest/gtest.h>

#include "opetope/fixtures.hpp"
#include "opetope/universality.hpp"
#include "test_util.hpp"

using namespace opetope;

namespace {

const char* stated = "[(1,(1,_))|1,0|0]";

const OpetopicSet& fixture(const std::string& name) {
  static std::map<std::string, OpetopicSet> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_fixture(name)).first;
  return it->second;
}

CellId cell_with(const OpetopicSet& set, const std::string& shape, std::vector<std::string> faces) {
  for (auto c : set.cells_of_shape(opetope_from_code(shape))) {
    std::vector<std::string> f;
    for (auto x : set.cell(c).faces) f.push_back(set.name(x));
    if (f == faces) return c;
  }
  throw std::runtime_error("no such cell");
}

std::vector<bool> universality_of_all(const OpetopicSet& s, std::size_t n, bool memo, MirrorPolicy policy) {
  CheckContext ctx(s, n, memo);
  ctx.mirror_policy = policy;
  std::vector<bool> out;
  for (CellId c = 0; c < s.size(); ++c)
    out.push_back(s.dim(c) <= n + 1 ? is_universal(ctx, c).value : false);
  return out;
}

}  // namespace

TEST(Universal, TopDimensionalCellsOfZ2) {
  const auto& s = fixture("z2_monoid");
  CheckContext ctx(s, 1);
  for (auto c : s.cells_of_dim(2)) {
    const auto v = is_universal(ctx, c);
    EXPECT_TRUE(v.value) << s.name(c);
    ASSERT_EQ(v.witnesses.size(), 1u);
    EXPECT_EQ(v.witnesses[0], "unique occupant " + s.name(c));
  }
}

TEST(Universal, ArrowsOfZ2ByFullRecursion) {
  // Golden unfolding: for u in {e, g} and the only d' = x, the punctured
  // niches (u, ?) -> ? and (?, u) -> ? have exactly one filler per outface
  // (a group table row is a bijection), each filler is the unique occupant of
  // its niche, and the follow-up punctured niches live in dimension 3 > n+1.
  const auto& s = fixture("z2_monoid");
  CheckContext ctx(s, 1);
  EXPECT_TRUE(is_universal(ctx, s.at("e")).value);
  EXPECT_TRUE(is_universal(ctx, s.at("g")).value);
  EXPECT_TRUE(is_universal(ctx, s.at("x")).value);
  EXPECT_EQ(ctx.max_call_dim(), 3u);
}

TEST(Universal, TwoOccupantsOfOneNicheAreNotUniversal) {
  const auto& s = fixture("z2_monoid");
  const auto c = cell_with(s, stated, {"g", "g", "e"});
  const auto s2 = testutil::add_cells(s, {{"twin", stated, {"g", "g", "e"}}});
  CheckContext ctx(s2, 1);
  EXPECT_FALSE(is_universal(ctx, s2.at(s.name(c))).value);
  EXPECT_FALSE(is_universal(ctx, s2.at("twin")).value);
  EXPECT_TRUE(composites(ctx, niche_of(s2, s2.at("twin"))).empty());
}

TEST(Universal, NonInvertibleArrowIsNotUniversal) {
  const auto& s = fixture("two_parallel_arrows");
  CheckContext ctx(s, 1);
  EXPECT_FALSE(is_universal(ctx, s.at("f")).value);
  EXPECT_TRUE(is_universal(ctx, s.at("id_a")).value);
}

TEST(Universal, Errors) {
  const auto small = make_fixture("point", 1);
  CheckContext ctx(small, 1);
  try {
    is_universal(ctx, small.at("id_x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::dimension_overflow);
  }
  try {
    is_universal(ctx, 999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_cell);
  }
}

TEST(Balanced, ForcedMissingInfaceInZ2) {
  // (?, g) -> e in the stated shape: the missing first factor must be g
  const auto& s = fixture("z2_monoid");
  const auto shape = opetope_from_code(stated);
  const auto p = make_config(s, ConfigKind::punctured_niche, shape, {std::nullopt, s.at("g"), std::nullopt},
                             {{1, s.at("x")}}, 0);
  CheckContext ctx(s, 1);
  EXPECT_TRUE(is_balanced(ctx, p).value);
  auto filled = p;
  filled.faces[2] = s.at("e");
  const auto fillers = detail::matching_cells(s, filled);
  ASSERT_EQ(fillers.size(), 1u);
  EXPECT_EQ(s.name(s.face(fillers[0], 0)), "g");
}

TEST(Balanced, AboveNPlusOneIsTrivial) {
  const auto& s = fixture("z2_monoid");
  CheckContext ctx(s, 1);
  for (const auto& p : enumerate_configs(s, ConfigKind::punctured_niche, 3, 2)) {
    EXPECT_TRUE(is_balanced(ctx, p).value);
  }
  EXPECT_EQ(ctx.calls() > 0, true);
}

TEST(Balanced, NoFillerMeansNotBalanced) {
  const auto& s = fixture("z2_monoid");
  const auto gone = s.name(cell_with(s, stated, {"g", "g", "e"}));
  const auto s2 = testutil::remove_cells(s, [&](const CellSpec& c) { return c.name == gone; });
  const auto p = make_config(s2, ConfigKind::punctured_niche, opetope_from_code(stated),
                             {s2.at("g"), std::nullopt, std::nullopt}, {{2, s2.at("x")}}, 1);
  CheckContext ctx(s2, 1);
  const auto v = is_balanced(ctx, p);
  EXPECT_FALSE(v.value);
  ASSERT_FALSE(v.witnesses.empty());
  EXPECT_NE(v.witnesses[0].find("no universal filler"), std::string::npos);
  try {
    is_balanced(ctx, niche_of(s2, s2.at("e")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::malformed_config);
  }
}

TEST(Composites, Z2) {
  const auto& s = fixture("z2_monoid");
  CheckContext ctx(s, 1);
  const auto gg = niche_of(s, cell_with(s, stated, {"g", "g", "e"}));
  EXPECT_EQ(composites(ctx, gg), (std::vector<CellId>{s.at("e")}));
  // the nullary niche over x is filled by the unit
  const auto nullary = niche_of(s, cell_with(s, "[{*}||0]", {"e"}));
  EXPECT_EQ(composites(ctx, nullary), (std::vector<CellId>{s.at("e")}));
  try {
    composites(ctx, frame_of(s, s.at("g")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::malformed_config);
  }
}

TEST(Composites, UniqueAtDimensionNPlusOne) {
  const auto& s = fixture("z3_monoid");
  CheckContext ctx(s, 1);
  for (const auto& n : enumerate_configs(s, ConfigKind::niche, 2)) EXPECT_LE(composites(ctx, n).size(), 1u);
}

TEST(WeakCategory, Z3Passes) {
  const auto v = check_weak_n_category(fixture("z3_monoid"), 1, 4);
  EXPECT_TRUE(v.value);
  EXPECT_FALSE(v.first_failure);
  EXPECT_LE(v.max_call_dim, 3u);
}

TEST(WeakCategory, OtherCategoriesPass) {
  for (const auto& name : {"point", "z2_monoid", "two_parallel_arrows"})
    EXPECT_TRUE(check_weak_n_category(fixture(name), 1, 4).value) << name;
}

TEST(WeakCategory, BrokenMagmaFailsAtHH) {
  const auto& s = fixture("broken_magma");
  const auto v = check_weak_n_category(s, 1, 4);
  ASSERT_FALSE(v.value);
  ASSERT_TRUE(v.first_failure);
  const auto& st = v.niches[*v.first_failure];
  EXPECT_EQ(st.niche.shape.inface_count(), 2u);
  EXPECT_EQ(s.name(*st.niche.faces[0]), "h");
  EXPECT_EQ(s.name(*st.niche.faces[1]), "h");
  EXPECT_FALSE(st.composites_ok);
  CheckContext ctx(s, 1);
  EXPECT_FALSE(is_universal(ctx, s.at("g")).value);
  EXPECT_TRUE(is_universal(ctx, s.at("h")).value);
}

TEST(WeakCategory, DiscreteSetIsZeroCategory) {
  const auto s = category_set(testutil::discrete_category({"p", "q", "r"}), 1, 4);
  EXPECT_TRUE(check_weak_n_category(s, 0, 4).value);
  // a bare set without identity arrows has empty 1-niches
  const OpetopicSet bare(1, 4, {{"p", "*", {}}, {"q", "*", {}}});
  const auto v = check_weak_n_category(bare, 0, 4);
  EXPECT_FALSE(v.value);
  EXPECT_FALSE(v.niches[*v.first_failure].has_universal);
}

TEST(WeakCategory, Errors) {
  try {
    check_weak_n_category(make_fixture("z2_monoid", 2), 2, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::insufficient_dimension);
  }
  const OpetopicSet invalid(1, 4, {{"x", "*", {}}, {"f", "1", {"x"}}});
  try {
    check_weak_n_category(invalid, 0, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_set);
  }
}

TEST(WeakCategory, UniquenessAtTop) {
  for (const auto& name : {"z2_monoid", "z3_monoid", "two_parallel_arrows"}) {
    const auto& s = fixture(name);
    ASSERT_TRUE(check_weak_n_category(s, 1, 4).value);
    for (const auto& n : enumerate_configs(s, ConfigKind::niche, 2)) EXPECT_EQ(occupants(s, n).size(), 1u);
  }
}

TEST(WeakCategory, DeletingUniversalOccupantBreaksConditionOne) {
  const auto& s = fixture("z2_monoid");
  const auto victim = cell_with(s, stated, {"g", "g", "e"});
  const auto niche = niche_of(s, victim);
  const auto name = s.name(victim);
  const auto s2 = testutil::remove_cells(s, [&](const CellSpec& c) { return c.name == name; });
  const auto v = check_weak_n_category(s2, 1, 4);
  EXPECT_FALSE(v.value);
  bool found = false;
  for (const auto& st : v.niches) {
    if (st.niche.shape == niche.shape && st.occupants.empty() && s2.name(*st.niche.faces[0]) == "g" &&
        s2.name(*st.niche.faces[1]) == "g") {
      EXPECT_FALSE(st.has_universal);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Recursion, MemoTransparentAndMirrorSymmetric) {
  for (const auto& name : fixture_names()) {
    const auto& s = fixture(name);
    const auto base = universality_of_all(s, 1, true, MirrorPolicy::both);
    EXPECT_EQ(universality_of_all(s, 1, false, MirrorPolicy::both), base) << name;
    EXPECT_EQ(universality_of_all(s, 1, true, MirrorPolicy::both_mirror_first), base) << name;
  }
}

TEST(Recursion, DepthBound) {
  for (const auto& name : fixture_names()) {
    const auto& s = fixture(name);
    for (std::size_t n = 0; n <= 1; ++n) {
      CheckContext ctx(s, n);
      for (CellId c = 0; c < s.size(); ++c)
        if (s.dim(c) <= n + 1) is_universal(ctx, c);
      EXPECT_LE(ctx.max_call_dim(), n + 2) << name;
    }
  }
}

TEST(Recursion, WorkersDoNotChangeVerdicts) {
  for (const auto& name : {"z3_monoid", "broken_magma"}) {
    const auto& s = fixture(name);
    const auto a = check_weak_n_category(s, 1, 4, 1);
    const auto b = check_weak_n_category(s, 1, 4, 8);
    ASSERT_EQ(a.niches.size(), b.niches.size());
    EXPECT_EQ(a.first_failure, b.first_failure);
    for (std::size_t i = 0; i < a.niches.size(); ++i) {
      EXPECT_EQ(a.niches[i].universal_occupants, b.niches[i].universal_occupants);
      EXPECT_EQ(a.niches[i].failure, b.niches[i].failure);
    }
  }
}
