#include "pdtkit/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "pdtkit/comm.hpp"
#include "pdtkit/error.hpp"
#include "pdtkit/families.hpp"
#include "pdtkit/rank.hpp"
#include "pdtkit/verify.hpp"

namespace pdtkit {
namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Inserts the arity into a family given without one.
std::string with_arity(const std::string& family, unsigned n) {
  const auto open = family.find('(');
  const std::string kind = family.substr(0, open);
  const std::string key = kind == "bent_ip" ? "k=" : "n=";
  if (open == std::string::npos) return kind + "(" + key + std::to_string(n) + ")";
  const std::string params = family.substr(open + 1, family.size() - open - 2);
  if (params.find("n=") == 0 || params.find(",n=") != std::string::npos || params.find("k=") == 0 ||
      params.find(",k=") != std::string::npos) {
    fail(ErrorCode::invalid_spec, "sweep family must not fix the arity: " + family);
  }
  return kind + "(" + key + std::to_string(n) + (params.empty() ? "" : "," + params) + ")";
}

struct Row {
  std::string family;
  unsigned n = 0;
  std::uint64_t seed = 0;
  std::string strategy;
  std::string fields;  // everything after the strategy column
  std::string prefix;  // deg2,l0,l1_num,l1_den
};

}  // namespace

SweepResult sweep(const SweepOptions& options) {
  if (options.family.empty()) fail(ErrorCode::invalid_spec, "empty family");
  if (options.family.rfind("symmetric", 0) == 0) {
    fail(ErrorCode::invalid_spec, "symmetric families fix n through their value vector and cannot be swept");
  }
  if (options.n_lo < 1 || options.n_hi < options.n_lo || options.n_hi > kMaxVars) {
    fail(ErrorCode::invalid_argument, "arity range must satisfy 1 <= A <= B <= " + std::to_string(kMaxVars));
  }
  if (options.strategies.empty()) fail(ErrorCode::invalid_argument, "no strategies given");

  SweepResult result;
  std::vector<Row> rows;
  for (unsigned n = options.n_lo; n <= options.n_hi; ++n) {
    FamilySpec spec;
    try {
      spec = parse_family(with_arity(options.family, n));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::invalid_spec) throw;
      result.skipped.push_back("n=" + std::to_string(n) + ": " + e.what());
      continue;
    }
    const BooleanFunction f = generate(spec);
    const Spectrum s = wht(f);
    const auto st = spectral_stats(s);
    const auto pm = spectral_stats(to_pm_spectrum(s));
    const int d = deg2(f);

    std::int64_t num = st.l1_num;
    std::int64_t den = std::int64_t{1} << n;
    while (den > 1 && num % 2 == 0) {
      num /= 2;
      den /= 2;
    }
    if (num == 0) den = 1;

    std::string cert, rank, matrix, log2_rank, bound;
    if (!f.is_constant()) {
      cert = std::to_string(std::min(cert_greedy_l1(f).codim(), cert_norm_halving(f).codim()));
      try {
        RankOptions ro;
        ro.max_candidates = options.rank_max_candidates;
        rank = std::to_string(rank_exact(f, std::min(options.rank_max_codim, n), ro).rank);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::not_found) throw;
      }
    }
    if (n <= options.matrix_rank_max_vars) {
      const std::size_t r = matrix_rank_exact(xor_matrix(f));
      matrix = std::to_string(r);
      if (r > 0) log2_rank = fixed6(std::log2(static_cast<double>(r)));
    }
    if (d >= 3) {
      const double m = std::max(1.0, std::ldexp(static_cast<double>(pm.l1_num), -static_cast<int>(n)));
      try {
        bound = fixed6(bound_B(d, m));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::overflow) throw;
      }
    }

    for (Strategy strategy : options.strategies) {
      Row row;
      row.family = family_name(spec.kind);
      row.n = n;
      row.seed = spec.seed;
      row.strategy = strategy_name(strategy);
      row.prefix = std::to_string(d) + "," + std::to_string(st.l0) + "," + std::to_string(num) + "," +
                   std::to_string(den);
      const auto depth = build(f, strategy).tree.depth();
      row.fields = std::to_string(depth) + "," + cert + "," + rank + "," + matrix + "," + log2_rank + "," + bound;
      rows.push_back(std::move(row));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.family, a.n, a.seed, a.strategy) < std::tie(b.family, b.n, b.seed, b.strategy);
  });
  std::ostringstream out;
  out << "family,n,deg2,l0,l1_num,l1_den,strategy,depth,cert_codim,rank_exact,matrix_rank,log2_rank,bound_B\n";
  for (const auto& r : rows) {
    out << r.family << ',' << r.n << ',' << r.prefix << ',' << r.strategy << ',' << r.fields << '\n';
  }
  result.csv = out.str();
  return result;
}

}  // namespace pdtkit
