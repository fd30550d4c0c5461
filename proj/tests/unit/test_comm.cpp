#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pdtkit/comm.hpp"
#include "pdtkit/error.hpp"
#include "test_corpus.hpp"

using namespace pdtkit;

namespace {

BooleanFunction and2() { return BooleanFunction(2, {0, 0, 0, 1}); }

std::vector<std::vector<std::int64_t>> rows_of(const IntMatrix& m) {
  std::vector<std::vector<std::int64_t>> out(m.rows(), std::vector<std::int64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j);
  }
  return out;
}

}  // namespace

TEST_CASE("xor_matrix examples") {
  const IntMatrix chi = xor_matrix(BooleanFunction(1, {0, 1}));
  CHECK(rows_of(chi) == std::vector<std::vector<std::int64_t>>{{0, 1}, {1, 0}});
  const IntMatrix ones = xor_matrix(BooleanFunction::constant(3, true));
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) CHECK(ones.at(i, j) == 1);
  }
  const IntMatrix a = xor_matrix(and2());
  for (Mask x = 0; x < 4; ++x) {
    for (Mask y = 0; y < 4; ++y) CHECK(a.at(x, y) == ((x ^ y) == 0b11 ? 1 : 0));
  }
  CHECK_THROWS_AS(xor_matrix(BooleanFunction::constant(kMaxMatrixVars + 1, false)), Error);
}

TEST_CASE("matrix_rank_exact examples") {
  CHECK(matrix_rank_exact(xor_matrix(and2())) == 4);
  CHECK(matrix_rank_exact(xor_matrix(BooleanFunction::constant(4, true))) == 1);
  const auto chi = BooleanFunction::from_predicate(3, [](Mask z) { return dot(z, 0b011) == 1; });
  CHECK(matrix_rank_exact(xor_matrix(chi)) == 2);
  CHECK(matrix_rank_exact(IntMatrix(3, 5)) == 0);
  CHECK(matrix_rank_exact(IntMatrix()) == 0);
}

TEST_CASE("matrix_rank_exact agrees with elimination modulo a prime") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t rows = 1 + rng() % 9;
    const std::size_t cols = 1 + rng() % 9;
    IntMatrix m(rows, cols);
    // Low-rank products exercise dependent rows.
    const std::size_t inner = 1 + rng() % 5;
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(inner));
    std::vector<std::vector<std::int64_t>> b(inner, std::vector<std::int64_t>(cols));
    for (auto& r : a) {
      for (auto& v : r) v = static_cast<std::int64_t>(rng() % 21) - 10;
    }
    for (auto& r : b) {
      for (auto& v : r) v = static_cast<std::int64_t>(rng() % 21) - 10;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t k = 0; k < inner; ++k) m.at(i, j) += a[i][k] * b[k][j];
      }
    }
    CHECK(matrix_rank_exact(m) == oracle::rank_mod_p(rows_of(m)));
  }
}

TEST_CASE("xor matrix rank equals Fourier sparsity") {
  for (const auto& entry : test::small_corpus()) {
    if (entry.f.arity() > 6) continue;
    CHECK(matrix_rank_exact(xor_matrix(entry.f)) == spectral_stats(wht(entry.f)).l0);
  }
}

TEST_CASE("simulate_protocol examples") {
  const auto parity = BooleanFunction::from_predicate(2, [](Mask x) { return weight(x) % 2 == 1; });
  const BuildResult p = build_greedy_l1(parity);
  const Transcript t = simulate_protocol(p.tree, parse_bitstring("10"), parse_bitstring("01"));
  REQUIRE(t.rounds.size() == 1);
  CHECK(t.rounds[0].mask == parse_bitstring("11"));
  CHECK(t.rounds[0].alice == 1);
  CHECK(t.rounds[0].bob == 1);
  CHECK(t.output == 0);
  CHECK(t.cost_bits == 2);

  const Transcript empty = simulate_protocol(Pdt::constant(3, 1), 0b101, 0b011);
  CHECK(empty.rounds.empty());
  CHECK(empty.cost_bits == 0);
  CHECK(empty.output == 1);

  const BuildResult a = build_greedy_l1(and2());
  for (Mask x = 0; x < 4; ++x) {
    for (Mask y = 0; y < 4; ++y) CHECK(simulate_protocol(a.tree, x, y).output == (and2()(x ^ y) ? 1u : 0u));
  }
}

TEST_CASE("verify_protocol examples") {
  const BuildResult a = build_greedy_l1(and2());
  const ProtocolCheck ok = verify_protocol(a.tree, and2());
  CHECK(ok.correct);
  CHECK(ok.max_cost == 2 * a.tree.depth());
  CHECK_FALSE(verify_protocol(Pdt::constant(2, 0), and2()).correct);
  const BuildResult ip = build_degree_reduce(test::ip4());
  const ProtocolCheck c = verify_protocol(ip.tree, test::ip4());
  CHECK(c.correct);
  CHECK(c.max_cost == 2 * ip.tree.depth());
  CHECK(c.max_cost <= 8);
  CHECK_THROWS_AS(verify_protocol(Pdt::constant(kMaxProtocolVars + 1, 0),
                                  BooleanFunction::constant(kMaxProtocolVars + 1, false)),
                  Error);
}

TEST_CASE("protocol cost is twice the depth on every corpus tree") {
  for (const auto& entry : test::small_corpus()) {
    for (Strategy s : {Strategy::greedy_l1, Strategy::degree_reduce}) {
      const BuildResult r = build(entry.f, s);
      const ProtocolCheck c = verify_protocol(r.tree, entry.f);
      CHECK(c.correct);
      CHECK(c.max_cost == 2 * r.tree.depth());
    }
  }
}
