// opetope: enumerate opetopes, audit operad axioms, emit fixtures and check
// opetopic sets against the weak n-category conditions.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "opetope/commands.hpp"

int main(int argc, char** argv) {
  using namespace opetope;
  CLI::App app{"Opetopes, opetopic sets and weak n-category checks"};
  app.require_subcommand(1);

  std::size_t dim = 2, bound = 4, n = 1, workers = 1, max_dim = 3;
  std::string out, format = "text", set_path, fixture;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "Standard output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* enumerate = app.add_subcommand("enumerate", "List opetopes of a dimension up to a size bound");
  enumerate->add_option("--dim", dim, "Dimension")->required();
  enumerate->add_option("--bound", bound, "Node bound (nodes of all nested trees)");
  enumerate->add_option("--out", out, "Write an opetope_list document here");
  add_format(enumerate);

  auto* check = app.add_subcommand("check", "Check an opetopic set document");
  check->add_option("set", set_path, "opetopic_set document")->required();
  check->add_option("--n", n, "Target category dimension");
  check->add_option("--bound", bound, "Shape bound for niches");
  check->add_option("--out", out, "Write a verdict document here");
  check->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_format(check);

  auto* audit = app.add_subcommand("slice-audit", "Check the operad axioms on a tower level");
  audit->add_option("--dim", dim, "Tower level d of I^{d+}")->required();
  audit->add_option("--bound", bound, "Size bound of axiom instances");
  audit->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  add_format(audit);

  auto* fix = app.add_subcommand("fixture", "Write a named golden opetopic set");
  fix->add_option("name", fixture, "point | z2_monoid | z3_monoid | two_parallel_arrows | broken_magma")->required();
  fix->add_option("--out", out, "Output path (standard output if omitted)");
  fix->add_option("--max-dim", max_dim, "Highest cell dimension");
  fix->add_option("--bound", bound, "Shape bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_input;
  }

  const auto fmt = format == "json" ? OutputFormat::json : OutputFormat::text;
  const auto out_path = out.empty() ? std::nullopt : std::optional<std::string>(out);
  Streams io{std::cout, std::cerr};
  if (*enumerate) return cmd_enumerate(dim, bound, out_path, fmt, io);
  if (*check) return cmd_check(set_path, n, bound, out_path, fmt, workers, io);
  if (*audit) return cmd_slice_audit(dim, bound, workers, fmt, io);
  return cmd_fixture(fixture, out_path, max_dim, bound, io);
}
