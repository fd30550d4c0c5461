// pdtkit command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "pdtkit/pdtkit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;

struct Failure {
  int code;
};

using FunctionPtr = std::unique_ptr<pdtkit_function, decltype(&pdtkit_function_free)>;
using TreePtr = std::unique_ptr<pdtkit_tree, decltype(&pdtkit_tree_free)>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { pdtkit_string_free(s); }
  std::string str() const { return s == nullptr ? std::string() : std::string(s); }
};

// Status to exit code; not_found from a search is a failed check, the rest
// are invalid input.
void check(pdtkit_status status) {
  if (status == PDTKIT_OK) return;
  std::cerr << "pdtkit: " << pdtkit_status_name(status) << ": " << pdtkit_last_error() << "\n";
  throw Failure{status == PDTKIT_E_NOT_FOUND ? kExitCheckFailed
                : status == PDTKIT_E_INTERNAL ? kExitCheckFailed
                                              : kExitInvalid};
}

FunctionPtr load_function(const std::string& spec) {
  pdtkit_function* f = nullptr;
  check(pdtkit_function_parse(spec.c_str(), &f));
  return FunctionPtr(f, pdtkit_function_free);
}

TreePtr build_tree(const pdtkit_function* f, const std::string& strategy) {
  pdtkit_tree* t = nullptr;
  check(pdtkit_tree_build(f, strategy.c_str(), &t));
  return TreePtr(t, pdtkit_tree_free);
}

std::filesystem::path resolve(const std::string& out_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (!out_dir.empty() && p.is_relative()) p = std::filesystem::path(out_dir) / p;
  return p;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    std::cerr << "pdtkit: cannot write " << path.string() << "\n";
    throw Failure{kExitInvalid};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "pdtkit: cannot read " << path << "\n";
    throw Failure{kExitInvalid};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "A..B" or "A".
std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const unsigned v = static_cast<unsigned>(std::stoul(text));
      return {v, v};
    }
    return {static_cast<unsigned>(std::stoul(text.substr(0, dots))),
            static_cast<unsigned>(std::stoul(text.substr(dots + 2)))};
  } catch (const std::exception&) {
    std::cerr << "pdtkit: --n expects A..B, got '" << text << "'\n";
    throw Failure{kExitInvalid};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis, parity decision trees and XOR protocols for Boolean functions", "pdtkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pdtkit_version()));
  std::string out_dir;
  app.add_option("--out-dir", out_dir, "Directory for relative output paths");

  std::string fn;
  const auto function_arg = [&fn](CLI::App* cmd) {
    cmd->add_option("function", fn, "tt:<n>:<hex>, anf:<n>:<poly> or family:<kind>(...)")->required();
  };

  auto* analyze = app.add_subcommand("analyze", "Spectral statistics as JSON");
  function_arg(analyze);

  auto* pdt = app.add_subcommand("pdt", "Parity decision trees");
  pdt->require_subcommand(1);
  auto* pdt_build = pdt->add_subcommand("build", "Build a tree and print it as JSON");
  function_arg(pdt_build);
  std::string strategy;
  std::string dot_path;
  pdt_build->add_option("--strategy", strategy, "greedy-l1|heavy-hitter|span-query|degree-reduce")->required();
  pdt_build->add_option("--dot", dot_path, "Also write the tree as DOT");
  auto* pdt_check = pdt->add_subcommand("check", "Check a tree against a function");
  function_arg(pdt_check);
  std::string tree_path;
  pdt_check->add_option("tree", tree_path, "Tree JSON file")->required();

  auto* cert = app.add_subcommand("cert", "Parity certificate");
  function_arg(cert);
  std::string method;
  cert->add_option("--method", method, "greedy|norm-halving")->required();

  auto* rank = app.add_subcommand("rank", "Exact polynomial rank");
  function_arg(rank);
  unsigned max_codim = 4;
  rank->add_option("--max-codim", max_codim, "Largest codimension searched (clamped to n)");

  auto* comm = app.add_subcommand("comm", "XOR communication");
  comm->require_subcommand(1);
  auto* comm_rank = comm->add_subcommand("rank", "Rank of the XOR matrix against the Fourier sparsity");
  function_arg(comm_rank);
  auto* comm_sim = comm->add_subcommand("sim", "Simulate the two-party protocol of a tree");
  function_arg(comm_sim);
  std::string x_bits;
  std::string y_bits;
  std::string sim_strategy;
  comm_sim->add_option("--x", x_bits, "Alice's input x1...xn")->required();
  comm_sim->add_option("--y", y_bits, "Bob's input x1...xn")->required();
  comm_sim->add_option("--strategy", sim_strategy, "Tree builder")->required();

  auto* verify = app.add_subcommand("verify", "Invariant report");
  function_arg(verify);

  auto* sweep = app.add_subcommand("sweep", "CSV over a family and a range of n");
  std::string family;
  std::string n_range;
  std::string strategies;
  std::string csv_path;
  sweep->add_option("--family", family, "Family without its arity, e.g. bent_ip or random_poly(d=3,seed=1)")
      ->required();
  sweep->add_option("--n", n_range, "A..B")->required();
  sweep->add_option("--strategies", strategies, "Comma separated builders")->required();
  sweep->add_option("--out", csv_path, "CSV file (standard output when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    OwnedString out;
    int ok = 1;
    if (*analyze) {
      const auto f = load_function(fn);
      check(pdtkit_analyze(f.get(), &out.s));
    } else if (*pdt_build) {
      const auto f = load_function(fn);
      const auto t = build_tree(f.get(), strategy);
      check(pdtkit_tree_to_json(t.get(), &out.s));
      if (!dot_path.empty()) {
        OwnedString dot;
        check(pdtkit_tree_to_dot(t.get(), &dot.s));
        write_file(resolve(out_dir, dot_path), dot.str());
      }
    } else if (*pdt_check) {
      const auto f = load_function(fn);
      pdtkit_tree* raw = nullptr;
      check(pdtkit_tree_from_json(read_file(tree_path).c_str(), &raw));
      const TreePtr t(raw, pdtkit_tree_free);
      check(pdtkit_tree_check(t.get(), f.get(), &ok, &out.s));
    } else if (*cert) {
      const auto f = load_function(fn);
      check(pdtkit_certificate(f.get(), method.c_str(), &ok, &out.s));
    } else if (*rank) {
      const auto f = load_function(fn);
      const unsigned n = pdtkit_function_arity(f.get());
      check(pdtkit_rank(f.get(), max_codim < n ? max_codim : n, &out.s));
    } else if (*comm_rank) {
      const auto f = load_function(fn);
      check(pdtkit_comm_rank(f.get(), &ok, &out.s));
    } else if (*comm_sim) {
      const auto f = load_function(fn);
      const auto t = build_tree(f.get(), sim_strategy);
      check(pdtkit_comm_simulate(t.get(), f.get(), x_bits.c_str(), y_bits.c_str(), &ok, &out.s));
    } else if (*verify) {
      const auto f = load_function(fn);
      check(pdtkit_verify(f.get(), &ok, &out.s));
    } else if (*sweep) {
      const auto [lo, hi] = parse_range(n_range);
      OwnedString notes;
      check(pdtkit_sweep(family.c_str(), lo, hi, strategies.c_str(), &out.s, &notes.s));
      std::cerr << notes.str();
      if (!csv_path.empty()) {
        write_file(resolve(out_dir, csv_path), out.str());
        return kExitOk;
      }
    }
    std::cout << out.str();
    std::cout.flush();
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "pdtkit: " << e.what() << "\n";
    return kExitInvalid;
  }
}
