#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pdtkit/core.hpp"
#include "pdtkit/pdt.hpp"

namespace pdtkit {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> entries_;
};

inline constexpr unsigned kMaxMatrixVars = 10;
inline constexpr unsigned kMaxProtocolVars = 8;

/// M[x][y] = f(x xor y). Throws too_large above kMaxMatrixVars.
IntMatrix xor_matrix(const BooleanFunction& f);

/// Rank over the rationals by fraction-free (Bareiss) elimination on
/// arbitrary-precision integers.
std::size_t matrix_rank_exact(const IntMatrix& m);

struct ProtocolRound {
  Mask mask = 0;
  unsigned alice = 0;  // <mask, x>
  unsigned bob = 0;    // <mask, y>
};

struct Transcript {
  std::vector<ProtocolRound> rounds;
  unsigned output = 0;
  std::size_t cost_bits = 0;
};

/// Both players announce the parity of their half for every query on the path
/// to the leaf of x xor y.
Transcript simulate_protocol(const Pdt& tree, Mask x, Mask y);

struct ProtocolCheck {
  bool correct = false;
  std::size_t max_cost = 0;
};

/// Exhaustive over all (x, y); throws too_large above kMaxProtocolVars.
ProtocolCheck verify_protocol(const Pdt& tree, const BooleanFunction& f);

}  // namespace pdtkit
