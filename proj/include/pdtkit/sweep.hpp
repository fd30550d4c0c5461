#pragma once

#include <string>
#include <vector>

#include "pdtkit/pdt.hpp"

namespace pdtkit {

struct SweepOptions {
  /// Family without its arity, e.g. "bent_ip" or "random_poly(d=3,seed=1)".
  std::string family;
  unsigned n_lo = 1;
  unsigned n_hi = 1;
  std::vector<Strategy> strategies;
  unsigned rank_max_codim = 4;
  std::size_t rank_max_candidates = 1'000'000;
  /// Largest n for the integer matrix rank column.
  unsigned matrix_rank_max_vars = 8;
};

struct SweepResult {
  std::string csv;
  /// Arities the family does not admit (e.g. odd k for bent_ip).
  std::vector<std::string> skipped;
};

/// One row per (n, strategy), sorted by family, n, seed, strategy. Columns:
/// family,n,deg2,l0,l1_num,l1_den,strategy,depth,cert_codim,rank_exact,
/// matrix_rank,log2_rank,bound_B. Fields that do not apply are empty.
SweepResult sweep(const SweepOptions& options);

}  // namespace pdtkit
