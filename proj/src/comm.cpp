#include "pdtkit/comm.hpp"

#include <gmp.h>

#include <algorithm>

#include "pdtkit/error.hpp"

namespace pdtkit {
namespace {

// RAII vector of mpz_t.
class MpzBuffer {
 public:
  explicit MpzBuffer(std::size_t size) : data_(size) {
    for (auto& z : data_) mpz_init(z);
  }
  ~MpzBuffer() {
    for (auto& z : data_) mpz_clear(z);
  }
  MpzBuffer(const MpzBuffer&) = delete;
  MpzBuffer& operator=(const MpzBuffer&) = delete;

  mpz_ptr operator[](std::size_t i) { return data_[i]; }

 private:
  std::vector<mpz_t> data_;
};

void check_arity(unsigned n, unsigned limit, const char* what) {
  if (n > limit) {
    fail(ErrorCode::too_large, std::string(what) + " supports n <= " + std::to_string(limit) + ", got " +
                                   std::to_string(n));
  }
}

}  // namespace

IntMatrix xor_matrix(const BooleanFunction& f) {
  check_arity(f.arity(), kMaxMatrixVars, "xor_matrix");
  const std::size_t size = f.size();
  IntMatrix m(size, size);
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) m.at(x, y) = f(static_cast<Mask>(x ^ y)) ? 1 : 0;
  }
  return m;
}

std::size_t matrix_rank_exact(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  MpzBuffer a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) mpz_set_si(a[i * cols + j], m.at(i, j));
  }
  mpz_t prev;
  mpz_init_set_ui(prev, 1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && mpz_sgn(a[pivot * cols + col]) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = col; j < cols; ++j) mpz_swap(a[pivot * cols + j], a[rank * cols + j]);
    }
    mpz_ptr p = a[rank * cols + col];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      mpz_ptr lead = a[i * cols + col];
      const bool zero_lead = mpz_sgn(lead) == 0;
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_ptr e = a[i * cols + j];
        // e = (p * e - lead * a[rank][j]) / prev
        mpz_mul(e, e, p);
        if (!zero_lead) mpz_submul(e, lead, a[rank * cols + j]);
        mpz_divexact(e, e, prev);
      }
      mpz_set_ui(lead, 0);
    }
    mpz_set(prev, p);
    ++rank;
  }
  mpz_clear(prev);
  return rank;
}

Transcript simulate_protocol(const Pdt& tree, Mask x, Mask y) {
  if (((x | y) & ~full_mask(tree.arity())) != 0) {
    fail(ErrorCode::dimension_mismatch, "inputs outside dimension " + std::to_string(tree.arity()));
  }
  Transcript t;
  std::int32_t i = tree.root();
  while (!tree.node(i).leaf) {
    const Mask q = tree.node(i).query;
    const ProtocolRound round{q, dot(q, x), dot(q, y)};
    t.rounds.push_back(round);
    i = tree.node(i).child[round.alice ^ round.bob];
  }
  t.output = tree.node(i).value;
  t.cost_bits = 2 * t.rounds.size();
  return t;
}

ProtocolCheck verify_protocol(const Pdt& tree, const BooleanFunction& f) {
  check_arity(f.arity(), kMaxProtocolVars, "verify_protocol");
  if (tree.arity() != f.arity()) fail(ErrorCode::dimension_mismatch, "tree and function arity differ");
  tree.validate();
  ProtocolCheck out;
  out.correct = true;
  for (std::size_t x = 0; x < f.size(); ++x) {
    for (std::size_t y = 0; y < f.size(); ++y) {
      const Transcript t = simulate_protocol(tree, static_cast<Mask>(x), static_cast<Mask>(y));
      out.max_cost = std::max(out.max_cost, t.cost_bits);
      if (t.output != static_cast<unsigned>(f(static_cast<Mask>(x ^ y)))) out.correct = false;
    }
  }
  return out;
}

}  // namespace pdtkit
