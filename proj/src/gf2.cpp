#include "pdtkit/gf2.hpp"

#include <array>
#include <random>

#include "pdtkit/error.hpp"

namespace pdtkit {
namespace {

// XOR basis keyed by highest set bit.
class EchelonBasis {
 public:
  /// Returns true when v was independent and has been added.
  bool insert(Mask v) noexcept {
    while (v != 0) {
      const unsigned top = 31u - static_cast<unsigned>(std::countl_zero(v));
      if (pivots_[top] == 0) {
        pivots_[top] = v;
        ++size_;
        return true;
      }
      v ^= pivots_[top];
    }
    return false;
  }
  std::size_t size() const noexcept { return size_; }

 private:
  std::array<Mask, 32> pivots_{};
  std::size_t size_ = 0;
};

}  // namespace

Gf2Matrix::Gf2Matrix(unsigned cols, std::vector<Mask> rows) : cols_(cols), rows_(std::move(rows)) {
  if (cols > 32) fail(ErrorCode::too_large, "GF(2) matrices are limited to 32 columns");
  for (Mask r : rows_) {
    if ((r & ~full_mask(cols)) != 0) {
      fail(ErrorCode::dimension_mismatch, "matrix row has bits beyond column count");
    }
  }
}

Gf2Matrix Gf2Matrix::identity(unsigned n) {
  std::vector<Mask> rows(n);
  for (unsigned i = 0; i < n; ++i) rows[i] = Mask{1} << i;
  return Gf2Matrix(n, std::move(rows));
}

Gf2Matrix Gf2Matrix::transpose() const {
  std::vector<Mask> out(cols_, 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (unsigned j = 0; j < cols_; ++j) {
      if (at(i, j)) out[j] |= Mask{1} << i;
    }
  }
  return Gf2Matrix(static_cast<unsigned>(rows_.size()), std::move(out));
}

Mask Gf2Matrix::apply(Mask x) const noexcept {
  Mask y = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) y |= Mask(dot(rows_[i], x)) << i;
  return y;
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& rhs) const {
  if (cols_ != rhs.row_count()) fail(ErrorCode::dimension_mismatch, "matrix product shape mismatch");
  std::vector<Mask> out(rows_.size(), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (unsigned k = 0; k < cols_; ++k) {
      if (at(i, k)) out[i] ^= rhs.rows_[k];
    }
  }
  return Gf2Matrix(rhs.cols(), std::move(out));
}

bool Gf2Matrix::is_identity() const noexcept {
  if (rows_.size() != cols_) return false;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] != (Mask{1} << i)) return false;
  }
  return true;
}

LinearMap::LinearMap(Gf2Matrix forward) : forward_(std::move(forward)) {
  const unsigned n = forward_.cols();
  if (forward_.row_count() != n) fail(ErrorCode::dimension_mismatch, "linear map must be square");
  // Gauss-Jordan on [A | I].
  std::vector<Mask> a(forward_.rows().begin(), forward_.rows().end());
  std::vector<Mask> inv(n);
  for (unsigned i = 0; i < n; ++i) inv[i] = Mask{1} << i;
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot = col;
    while (pivot < n && !((a[pivot] >> col) & 1u)) ++pivot;
    if (pivot == n) fail(ErrorCode::dependent_input, "linear map is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    for (unsigned r = 0; r < n; ++r) {
      if (r != col && ((a[r] >> col) & 1u)) {
        a[r] ^= a[col];
        inv[r] ^= inv[col];
      }
    }
  }
  inverse_ = Gf2Matrix(n, std::move(inv));
}

std::size_t gf2_rank(const Gf2Matrix& m) { return span_dim(m.rows()); }

std::size_t span_dim(std::span<const Mask> vectors) {
  EchelonBasis basis;
  for (Mask v : vectors) basis.insert(v);
  return basis.size();
}

std::vector<Mask> greedy_basis(std::span<const Mask> vectors) {
  EchelonBasis basis;
  std::vector<Mask> out;
  for (Mask v : vectors) {
    if (basis.insert(v)) out.push_back(v);
  }
  return out;
}

LinearMap complete_basis(std::span<const Mask> basis, unsigned n) {
  if (n > 32) fail(ErrorCode::too_large, "dimension exceeds 32");
  EchelonBasis echelon;
  std::vector<Mask> rows;
  for (Mask v : basis) {
    if ((v & ~full_mask(n)) != 0) fail(ErrorCode::dimension_mismatch, "basis vector outside dimension");
    if (!echelon.insert(v)) fail(ErrorCode::dependent_input, "complete_basis input is linearly dependent");
    rows.push_back(v);
  }
  for (unsigned i = 0; i < n && rows.size() < n; ++i) {
    if (echelon.insert(Mask{1} << i)) rows.push_back(Mask{1} << i);
  }
  return LinearMap(Gf2Matrix(n, std::move(rows)));
}

BooleanFunction apply_linear(const BooleanFunction& f, const LinearMap& map) {
  if (map.dimension() != f.arity()) {
    fail(ErrorCode::dimension_mismatch, "linear map dimension does not match arity");
  }
  const Gf2Matrix& forward = map.forward();
  // Columns of L, so that Lx is an XOR of columns selected by x.
  const Gf2Matrix columns = forward.transpose();
  std::vector<std::uint8_t> table(f.size());
  Mask image = 0;
  Mask previous = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Mask gray = static_cast<Mask>(i ^ (i >> 1));
    if (i > 0) image ^= columns.row(lowest_bit(gray ^ previous));
    previous = gray;
    table[gray] = f(image) ? 1 : 0;
  }
  return BooleanFunction(f.arity(), std::move(table));
}

LinearMap random_invertible(unsigned n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (;;) {
    std::vector<Mask> rows(n);
    for (auto& r : rows) r = static_cast<Mask>(rng()) & full_mask(n);
    if (span_dim(rows) == n) return LinearMap(Gf2Matrix(n, std::move(rows)));
  }
}

Gf2Matrix dickson_matrix(const Anf& anf) {
  std::vector<Mask> rows(anf.n, 0);
  for (Mask m : anf.monomials) {
    if (weight(m) != 2) continue;
    const unsigned i = lowest_bit(m);
    const unsigned j = lowest_bit(m & (m - 1));
    rows[i] ^= Mask{1} << j;
    rows[j] ^= Mask{1} << i;
  }
  return Gf2Matrix(anf.n, std::move(rows));
}

}  // namespace pdtkit
