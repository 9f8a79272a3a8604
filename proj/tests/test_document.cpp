#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "opetope/commands.hpp"
#include "opetope/document.hpp"
#include "opetope/fixtures.hpp"

using namespace opetope;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "opetope_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Captured {
  int rc;
  std::string out, err;
};

template <class Fn>
Captured capture(Fn&& fn) {
  std::ostringstream out, err;
  const int rc = fn(Streams{out, err});
  return {rc, out.str(), err.str()};
}

std::set<std::pair<std::string, std::vector<std::string>>> cells_of_dim(const OpetopicSet& s, std::size_t d) {
  std::set<std::pair<std::string, std::vector<std::string>>> out;
  for (const auto& c : s.specs())
    if (opetope_from_code(c.shape).dim() == d) out.insert({c.name + " " + c.shape, c.faces});
  return out;
}

}  // namespace

TEST(Document, OpetopesRoundTrip) {
  for (std::size_t d = 0; d <= 3; ++d) {
    const auto ops = enumerate_opetopes(d, 3);
    const auto text = store(opetope_list_document(d, 3, ops));
    const auto back = opetopes_from_document(load(text));
    ASSERT_EQ(back.size(), ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) EXPECT_EQ(back[i].code(), ops[i].code());
    EXPECT_EQ(store(opetope_list_document(d, 3, back)), text);
  }
}

TEST(Document, NestedMetatreeForm) {
  const auto o = opetope_from_code("[(1,(1,_))|1,0|0]");
  const auto j = opetope_json(o);
  EXPECT_EQ(j.at("dim"), 2);
  EXPECT_EQ(j.at("code"), o.code());
  EXPECT_EQ(j.at("metatree").at("node_order"), json({1, 0}));
  EXPECT_EQ(j.at("metatree").at("tree").at("nodes").size(), 2u);
  EXPECT_EQ(opetope_from_json(j), o);
  EXPECT_EQ(opetope_json(Opetope::point()).at("metatree"), "*");
}

TEST(Document, SetRoundTrip) {
  for (const auto& name : fixture_names()) {
    const auto s = make_fixture(name, 2, 3);
    const auto text = store(set_document(s));
    const auto back = set_from_document(load(text));
    EXPECT_EQ(back.specs(), s.specs()) << name;
    EXPECT_EQ(store(set_document(back)), text);
  }
}

TEST(Document, RejectsBadInput) {
  auto code_of = [](const std::string& text) {
    try {
      set_from_document(load(text));
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::arity_mismatch;
  };
  EXPECT_EQ(code_of("{"), Errc::parse_error);
  EXPECT_EQ(code_of(R"({"format_version":"9","kind":"opetopic_set","payload":{}})"), Errc::unknown_format_version);
  EXPECT_EQ(code_of(R"({"format_version":"1","kind":"verdict","payload":{}})"), Errc::parse_error);
  EXPECT_EQ(code_of(R"({"format_version":"1","kind":"opetopic_set","payload":{"cells":3}})"), Errc::parse_error);
  EXPECT_EQ(code_of(R"({"format_version":"1","kind":"opetopic_set","payload":{"max_dim":1,"shape_bound":2,)"
                    R"("cells":[{"name":"f","shape":"1","faces":["x","x"]}]}})"),
            Errc::invalid_set);
  EXPECT_THROW(opetope_from_json(json{{"dim", 1}, {"metatree", {{"tree", 1}}}}), Error);
}

TEST(Document, VerdictFields) {
  const auto s = make_fixture("broken_magma");
  const auto v = check_weak_n_category(s, 1, 4);
  const auto doc = verdict_document(s, v);
  EXPECT_EQ(doc.kind, DocKind::verdict);
  const auto& p = doc.payload;
  EXPECT_FALSE(p.at("pass").get<bool>());
  EXPECT_EQ(p.at("niche_dims"), json({1, 2}));
  EXPECT_EQ(p.at("niches").size(), v.niches.size());
  EXPECT_EQ(p.at("first_failure").at("infaces"), json({"h", "h"}));
  EXPECT_EQ(p.at("max_call_dim"), 3);
}

TEST(Fixtures, Shapes) {
  const auto z2 = make_fixture("z2_monoid", 2, 2);
  std::size_t binary = 0;
  for (auto c : z2.cells_of_dim(2)) binary += z2.cell(c).shape.inface_count() == 2;
  EXPECT_EQ(binary, 8u);
  const auto point = make_fixture("point");
  EXPECT_EQ(point.cells_of_dim(0).size(), 1u);
  EXPECT_EQ(point.cells_of_dim(1).size(), 1u);
}

TEST(Fixtures, BrokenMagmaDiffersInOneFiller) {
  const auto z3 = cells_of_dim(make_fixture("z3_monoid"), 2);
  const auto broken = cells_of_dim(make_fixture("broken_magma"), 2);
  std::vector<std::pair<std::string, std::vector<std::string>>> only_z3, only_broken;
  std::set_difference(z3.begin(), z3.end(), broken.begin(), broken.end(), std::back_inserter(only_z3));
  std::set_difference(broken.begin(), broken.end(), z3.begin(), z3.end(), std::back_inserter(only_broken));
  ASSERT_EQ(only_z3.size(), 1u);
  ASSERT_EQ(only_broken.size(), 1u);
  EXPECT_EQ(only_z3[0].first, only_broken[0].first);
  EXPECT_EQ(only_z3[0].second, (std::vector<std::string>{"g", "g", "h"}));
  EXPECT_EQ(only_broken[0].second, (std::vector<std::string>{"g", "g", "e"}));
}

TEST(Fixtures, UnknownName) {
  try {
    make_fixture("klein_bottle");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_fixture);
  }
}

TEST(Commands, EnumerateText) {
  const auto r = capture([](Streams io) { return cmd_enumerate(2, 4, std::nullopt, OutputFormat::text, io); });
  EXPECT_EQ(r.rc, exit_ok);
  EXPECT_NE(r.out.find("k=3: 6\n"), std::string::npos);
  const auto zero = capture([](Streams io) { return cmd_enumerate(0, 1, std::nullopt, OutputFormat::text, io); });
  EXPECT_NE(zero.out.find("total: 1\n"), std::string::npos);
}

TEST(Commands, EnumerateFilesAreByteIdentical) {
  const auto a = scratch("enum_a.json"), b = scratch("enum_b.json");
  capture([&](Streams io) { return cmd_enumerate(3, 3, a.string(), OutputFormat::text, io); });
  capture([&](Streams io) { return cmd_enumerate(3, 3, b.string(), OutputFormat::text, io); });
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Commands, CheckExitCodesAndWorkers) {
  const auto good = scratch("z3.json"), bad = scratch("broken.json"), junk = scratch("junk.json");
  capture([&](Streams io) { return cmd_fixture("z3_monoid", good.string(), 3, 4, io); });
  capture([&](Streams io) { return cmd_fixture("broken_magma", bad.string(), 3, 4, io); });
  std::ofstream(junk) << "not json";
  auto check = [](const fs::path& p, std::size_t workers) {
    return capture([&](Streams io) { return cmd_check(p.string(), 1, 4, std::nullopt, OutputFormat::json, workers, io); });
  };
  EXPECT_EQ(check(good, 1).rc, exit_ok);
  const auto one = check(bad, 1);
  EXPECT_EQ(one.rc, exit_failed);
  EXPECT_EQ(check(bad, 4).out, one.out);
  EXPECT_EQ(check(junk, 1).rc, exit_input);
  EXPECT_EQ(check(scratch("missing.json"), 1).rc, exit_input);
  const auto high = capture(
      [&](Streams io) { return cmd_check(good.string(), 3, 4, std::nullopt, OutputFormat::text, 1, io); });
  EXPECT_EQ(high.rc, exit_input);
  EXPECT_NE(high.err.find("InsufficientDimension"), std::string::npos);
}

TEST(Commands, FixtureAndAudit) {
  const auto unknown = capture([](Streams io) { return cmd_fixture("nope", std::nullopt, 3, 4, io); });
  EXPECT_EQ(unknown.rc, exit_input);
  const auto point = capture([](Streams io) { return cmd_fixture("point", std::nullopt, 1, 2, io); });
  EXPECT_EQ(point.rc, exit_ok);
  EXPECT_EQ(set_from_document(load(point.out)).size(), 2u);
  const auto audit = capture([](Streams io) { return cmd_slice_audit(1, 3, 2, OutputFormat::text, io); });
  EXPECT_EQ(audit.rc, exit_ok);
  EXPECT_NE(audit.out.find("violations 0"), std::string::npos);
}
