#pragma once

// Command implementations behind the `opetope` executable. Each returns the
// process exit status: 0 success, 1 check failed, 2 input error.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "opetope/document.hpp"
#include "opetope/fixtures.hpp"
#include "opetope/operad.hpp"
#include "opetope/opetope.hpp"
#include "opetope/universality.hpp"

namespace opetope {

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_input = 2 };

enum class OutputFormat { text, json };

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_enumerate(std::size_t dim, std::size_t node_bound, const std::optional<std::string>& out_path,
                         OutputFormat format, Streams io) {
  try {
    const auto ops = enumerate_opetopes(dim, node_bound);
    const auto doc = opetope_list_document(dim, node_bound, ops);
    if (out_path) store_file(doc, *out_path);
    if (format == OutputFormat::json) {
      io.out << store(doc);
    } else {
      io.out << "dim " << dim << ", node_bound " << node_bound << "\n";
      for (const auto& [k, n] : count_by_infaces(ops)) io.out << "k=" << k << ": " << n << "\n";
      io.out << "total: " << ops.size() << "\n";
    }
    return exit_ok;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return exit_input;
  }
}

inline int cmd_check(const std::string& set_path, std::size_t n, std::size_t shape_bound,
                     const std::optional<std::string>& out_path, OutputFormat format, std::size_t workers,
                     Streams io) {
  OpetopicSet set;
  try {
    set = set_from_document(load_file(set_path));
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return exit_input;
  }
  CategoryVerdict v;
  try {
    v = check_weak_n_category(set, n, shape_bound, workers);
  } catch (const Error& e) {
    io.err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_input;
  }
  const auto doc = verdict_document(set, v);
  try {
    if (out_path) store_file(doc, *out_path);
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return exit_input;
  }
  if (format == OutputFormat::json) {
    io.out << store(doc);
  } else {
    std::size_t c1 = 0, c2 = 0;
    for (const auto& st : v.niches) {
      c1 += !st.has_universal;
      c2 += !st.composites_ok;
    }
    io.out << "weak " << n << "-category check, shape_bound " << shape_bound << ": " << (v.value ? "PASS" : "FAIL")
           << "\n";
    io.out << "niches checked: " << v.niches.size() << ", condition 1 failures: " << c1
           << ", condition 2 failures: " << c2 << "\n";
    if (v.first_failure) {
      const auto& st = v.niches[*v.first_failure];
      io.out << "first failing niche: " << st.description << "\n" << "  " << st.failure << "\n";
    }
  }
  return v.value ? exit_ok : exit_failed;
}

inline int cmd_slice_audit(std::size_t dim, std::size_t size_bound, std::size_t workers, OutputFormat format,
                           Streams io) {
  try {
    const auto r = check_operad_axioms(OperadLevel(dim), size_bound, workers);
    if (format == OutputFormat::json) {
      json j{{"level", dim}, {"size_bound", size_bound}, {"instances", r.instances}, {"violations", json::array()}};
      for (const auto& v : r.violations) j["violations"].push_back({{"axiom", v.axiom}, {"witness", v.witness}});
      io.out << j.dump(2) << "\n";
    } else {
      io.out << "axioms of I^{" << dim << "+}, size_bound " << size_bound << "\n";
      for (const auto& [axiom, count] : r.instances)
        io.out << "(" << axiom << ") instances " << count << ", violations " << r.count(axiom) << "\n";
      for (const auto& v : r.violations) io.out << "violation (" << v.axiom << "): " << v.witness << "\n";
    }
    return r.ok() ? exit_ok : exit_failed;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return exit_input;
  }
}

inline int cmd_fixture(const std::string& name, const std::optional<std::string>& out_path, std::size_t max_dim,
                       std::size_t shape_bound, Streams io) {
  try {
    const auto doc = set_document(make_fixture(name, max_dim, shape_bound));
    if (out_path) store_file(doc, *out_path);
    else io.out << store(doc);
    return exit_ok;
  } catch (const Error& e) {
    io.err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_input;
  }
}

}  // namespace opetope
