#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pdtkit/core.hpp"
#include "pdtkit/restrict.hpp"

namespace pdtkit {

enum class FamilyKind { bent_ip, and_, or_, parity, majority, symmetric, random_poly, affine_indicator };

const char* family_name(FamilyKind kind) noexcept;

struct FamilySpec {
  FamilyKind kind = FamilyKind::and_;
  unsigned n = 0;
  /// parity: character mask (0 = all variables).
  Mask parity_mask = 0;
  /// symmetric: value at Hamming weight w, w = 0..n.
  std::vector<unsigned> values;
  /// random_poly: maximal monomial weight and seed.
  unsigned degree = 0;
  std::uint64_t seed = 0;
  /// affine_indicator: f = 1 exactly on the subspace.
  std::vector<AffineConstraint> constraints;
};

/// Throws invalid_spec.
BooleanFunction generate(const FamilySpec& spec);

/// Parameter grammar: kind(key=value,...), e.g. "bent_ip(k=4)",
/// "parity(n=4,s=1010)", "symmetric(n=3,v=0110)",
/// "random_poly(n=6,d=3,seed=1)", "affine_indicator(n=3,c=100=1;010=0)".
/// Throws parse_error (positions counted from position_base) or invalid_spec.
FamilySpec parse_family(std::string_view text, std::size_t position_base = 0);
/// Canonical form accepted by parse_family.
std::string format_family(const FamilySpec& spec);

struct CorpusEntry {
  FamilySpec spec;
  BooleanFunction f;
};

/// Every family at each n in [n_min, n_max] with fixed parameter choices,
/// including both constants.
std::vector<CorpusEntry> structured_corpus(unsigned n_min, unsigned n_max);

/// `count` random polynomials; entry i has n cycling through [n_min, n_max],
/// degree cycling through [1, d_max] (capped at n) and seed seed_base + i.
std::vector<CorpusEntry> random_corpus(std::size_t count, unsigned n_min, unsigned n_max, unsigned d_max,
                                       std::uint64_t seed_base);

}  // namespace pdtkit
