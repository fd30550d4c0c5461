#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pdtkit/bits.hpp"
#include "pdtkit/core.hpp"

namespace pdtkit {

/// Row-major bit-packed matrix over GF(2); every row is one word.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(unsigned cols, std::vector<Mask> rows);

  static Gf2Matrix identity(unsigned n);

  unsigned cols() const noexcept { return cols_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::span<const Mask> rows() const noexcept { return rows_; }
  Mask row(std::size_t i) const { return rows_[i]; }
  bool at(std::size_t i, unsigned j) const { return (rows_[i] >> j) & 1u; }

  Gf2Matrix transpose() const;
  /// y_i = <row_i, x>.
  Mask apply(Mask x) const noexcept;
  Gf2Matrix operator*(const Gf2Matrix& rhs) const;
  bool is_identity() const noexcept;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  unsigned cols_ = 0;
  std::vector<Mask> rows_;
};

/// Invertible n x n map with its cached inverse.
class LinearMap {
 public:
  /// Throws dependent_input if `forward` is singular.
  explicit LinearMap(Gf2Matrix forward);

  const Gf2Matrix& forward() const noexcept { return forward_; }
  const Gf2Matrix& inverse() const noexcept { return inverse_; }
  unsigned dimension() const noexcept { return forward_.cols(); }

 private:
  Gf2Matrix forward_;
  Gf2Matrix inverse_;
};

std::size_t gf2_rank(const Gf2Matrix& m);
std::size_t span_dim(std::span<const Mask> vectors);

/// Greedy basis of span(vectors): keeps each input vector that is independent
/// of those kept before it, in input order.
std::vector<Mask> greedy_basis(std::span<const Mask> vectors);

/// Extends the independent sequence `basis` to an invertible map whose first
/// rows are `basis`, appending e_1, e_2, ... in index order when independent.
LinearMap complete_basis(std::span<const Mask> basis, unsigned n);

/// (Lf)(x) = f(Lx).
BooleanFunction apply_linear(const BooleanFunction& f, const LinearMap& map);

/// Deterministic pseudo-random invertible map.
LinearMap random_invertible(unsigned n, std::uint64_t seed);

/// Symmetric zero-diagonal matrix of the degree-2 part of the ANF.
Gf2Matrix dickson_matrix(const Anf& anf);

}  // namespace pdtkit
