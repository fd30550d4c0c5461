#pragma once

#include <cstddef>
#include <vector>

#include "pdtkit/core.hpp"
#include "pdtkit/restrict.hpp"

namespace pdtkit {

struct RankResult {
  std::size_t rank = 0;
  /// Affine subspace of codimension `rank` on which deg2 drops.
  std::vector<AffineConstraint> witness;
};

struct RankOptions {
  /// Try every coset shift of each candidate subspace. Whether deg2 drops
  /// depends only on the linear part of the subspace, so by default only the
  /// zero shift is tested.
  bool exhaustive_shifts = false;
  /// Nonzero: give up with not_found after this many candidate subspaces.
  std::size_t max_candidates = 0;
};

/// Polynomial rank of a non-constant f: the least codimension of an affine
/// subspace on which deg2 drops. Candidate constraint spaces are enumerated
/// once each through their reduced row echelon bases (pivot = first 1 of a
/// row), by increasing codimension. Throws constant_input, or not_found when
/// nothing drops within max_codim (clamped to n).
RankResult rank_exact(const BooleanFunction& f, unsigned max_codim, RankOptions options = {});

/// Smallest independent set of linear forms such that deg2 drops on every one
/// of the 2^r cosets they cut out. Same enumeration and errors as rank_exact;
/// a nonzero max_candidates caps the number of subspaces examined (not_found
/// once exceeded).
std::vector<Mask> degree_reducing_subspace(const BooleanFunction& f, unsigned max_codim,
                                           std::size_t max_candidates = 0);

}  // namespace pdtkit
