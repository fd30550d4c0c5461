#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pdtkit/error.hpp"
#include "pdtkit/gf2.hpp"
#include "pdtkit/restrict.hpp"
#include "test_corpus.hpp"

using namespace pdtkit;

namespace {

BooleanFunction and2() { return BooleanFunction(2, {0, 0, 0, 1}); }

AffineConstraint con(const char* mask, unsigned bit) { return {parse_bitstring(mask), bit}; }

std::vector<AffineConstraint> random_constraints(unsigned n, unsigned k, std::mt19937_64& rng) {
  std::vector<AffineConstraint> cs;
  std::vector<Mask> masks;
  while (masks.size() < k) {
    const Mask m = static_cast<Mask>(rng()) & full_mask(n);
    masks.push_back(m);
    if (m == 0 || span_dim(masks) != masks.size()) {
      masks.pop_back();
      continue;
    }
    cs.push_back({m, static_cast<unsigned>(rng() & 1)});
  }
  return cs;
}

AffineChart chart_of(unsigned n, const std::vector<AffineConstraint>& cs) {
  AffineChart chart(n);
  for (const auto& c : cs) {
    const auto [local, offset] = chart.localize(c.mask);
    chart = chart.restricted(local, c.bit ^ offset);
  }
  return chart;
}

}  // namespace

TEST_CASE("fold examples") {
  const Spectrum folded = fold(wht(and2()), 0b11, 0);
  CHECK(folded.denom_exp() == 2);
  CHECK(folded.arity() == 1);
  CHECK(folded.sparsity() == 2);
  CHECK(folded.at(0) == 2);
  CHECK(folded.at(1) == -2);
  CHECK(equivalent(folded, wht(BooleanFunction(1, {0, 1}))));

  const Spectrum single(4, 4, {{0b0110, 3}});
  for (Mask t = 1; t < 16; ++t) {
    const Spectrum s = fold(single, t, 1);
    CHECK(s.sparsity() == 1);
    CHECK(std::abs(s.terms()[0].num) == 3);
  }

  const std::vector<AffineConstraint> c{con("10", 1)};
  const Spectrum via_fold = restrict_spectrum(pm_spectrum(and2()), c);
  const Spectrum via_table = pm_spectrum(restrict_affine(and2(), c));
  CHECK(equivalent(via_fold, via_table));
  CHECK(restrict_affine(and2(), c) == BooleanFunction(1, {0, 1}));
}

TEST_CASE("restrict_affine examples") {
  const auto r = restrict_affine(test::ip4(), std::vector<AffineConstraint>{con("0100", 0), con("0001", 0)});
  CHECK(r == BooleanFunction::constant(2, false));
  CHECK(restrict_affine(and2(), std::vector<AffineConstraint>{con("10", 1)}) == BooleanFunction(1, {0, 1}));
  CHECK(restrict_affine(test::ip4(), std::vector<AffineConstraint>{}) == test::ip4());
  CHECK_THROWS_AS(restrict_affine(and2(), std::vector<AffineConstraint>{con("11", 0), con("11", 1)}), Error);
  CHECK_THROWS_AS(restrict_hyperplane(and2(), 0, 0), Error);
}

TEST_CASE("derivative examples") {
  const auto x2 = BooleanFunction::from_predicate(2, [](Mask x) { return (x & 2) != 0; });
  CHECK(derivative(and2(), parse_bitstring("10")) == x2);
  const auto lin = BooleanFunction::from_predicate(4, [](Mask x) { return dot(x, 0b1011) == 1; });
  for (Mask t = 1; t < 16; ++t) CHECK(derivative(lin, t) == BooleanFunction::constant(4, dot(t, 0b1011) == 1));
  const auto ip_x2 = BooleanFunction::from_predicate(4, [](Mask x) { return (x & 2) != 0; });
  CHECK(derivative(test::ip4(), parse_bitstring("1000")) == ip_x2);
  CHECK_THROWS_AS(derivative(and2(), 0), Error);
}

TEST_CASE("spectrum_split examples") {
  const auto split = spectrum_split(pm_spectrum(and2()), parse_bitstring("01"));
  CHECK(split.in_perp.sparsity() == 2);
  CHECK(split.in_perp.at(parse_bitstring("00")) == 2);
  CHECK(split.in_perp.at(parse_bitstring("10")) == 2);
  CHECK(split.off_perp.sparsity() == 2);
  CHECK(split.off_perp.at(parse_bitstring("01")) == 2);
  CHECK(split.off_perp.at(parse_bitstring("11")) == -2);

  const Spectrum single(3, 3, {{0b011, 5}});
  const auto s2 = spectrum_split(single, 0b011);
  CHECK(s2.in_perp == single);
  CHECK(s2.off_perp.empty());

  const auto ip = spectrum_split(pm_spectrum(test::ip4()), parse_bitstring("1000"));
  CHECK(spectral_stats(ip.in_perp).l1_num == 32);
  CHECK(spectral_stats(ip.off_perp).l1_num == 32);
  CHECK(ip.in_perp.sparsity() == 8);
}

TEST_CASE("restriction agrees with the point-set oracle") {
  std::mt19937_64 rng(17);
  for (unsigned n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 12; ++rep) {
      const auto f = oracle::random_function(n, rng);
      const unsigned k = static_cast<unsigned>(rng() % (std::min(n, 3u) + 1));
      const auto cs = random_constraints(n, k, rng);
      const auto g = restrict_affine(f, cs);
      REQUIRE(g.arity() == n - k);
      const AffineChart chart = chart_of(n, cs);
      REQUIRE(chart.dimension() == n - k);
      std::size_t seen = 0;
      for (Mask x = 0; x < f.size(); ++x) {
        if (!oracle::satisfies(x, cs)) continue;
        ++seen;
        Mask y = 0;
        for (unsigned i = 0; i < chart.dimension(); ++i) y |= ((x >> chart.coordinates()[i]) & 1u) << i;
        CHECK(g(y) == f(x));
        for (Mask local = 0; local < (Mask{1} << chart.dimension()); ++local) {
          CHECK(dot(chart.lift(local), x) == dot(local, y));
        }
        for (Mask original = 0; original < f.size(); original += 1 + static_cast<Mask>(rng() % 5)) {
          const auto [local, offset] = chart.localize(original);
          CHECK(dot(original, x) == (dot(local, y) ^ offset));
        }
      }
      CHECK(seen == g.size());
      CHECK(restrict_affine(f, std::vector<AffineConstraint>(chart.constraints().begin(), chart.constraints().end())) == g);
    }
  }
}

TEST_CASE("restrict_affine and iterated folds agree") {
  std::mt19937_64 rng(23);
  for (const auto& entry : test::small_corpus()) {
    const auto& f = entry.f;
    const unsigned n = f.arity();
    if (n == 0 || n > 8) continue;
    for (int rep = 0; rep < 4; ++rep) {
      const unsigned k = 1 + static_cast<unsigned>(rng() % std::min(n, 3u));
      const auto cs = random_constraints(n, k, rng);
      const auto g = restrict_affine(f, cs);
      CHECK(equivalent(wht(g), restrict_spectrum(wht(f), cs)));
      CHECK(equivalent(pm_spectrum(g), restrict_spectrum(pm_spectrum(f), cs)));
    }
  }
}

TEST_CASE("fold and restriction never increase l0 or l1") {
  for (const auto& entry : test::small_corpus()) {
    const auto& f = entry.f;
    const unsigned n = f.arity();
    if (n == 0) continue;
    const Spectrum pm = pm_spectrum(f);
    const SpectralStats base = spectral_stats(pm);
    for (Mask t = 1; t < f.size(); ++t) {
      for (unsigned b = 0; b < 2; ++b) {
        const Spectrum folded = fold(pm, t, b);
        const SpectralStats st = spectral_stats(folded);
        CHECK(st.l0 <= base.l0);
        CHECK(st.l1_num <= base.l1_num);
        const auto g = restrict_hyperplane(f, t, b);
        const SpectralStats gs = spectral_stats(pm_spectrum(g));
        CHECK(gs.l0 <= base.l0);
        CHECK(l1_at_denominator(pm_spectrum(g), pm.denom_exp()) <= base.l1_num);
      }
    }
  }
}

TEST_CASE("derivatives drop the degree") {
  for (const auto& entry : test::small_corpus()) {
    const auto& f = entry.f;
    const int d = deg2(f);
    if (d == 0) continue;
    for (Mask t = 1; t < f.size(); ++t) CHECK(deg2(derivative(f, t)) < d);
  }
}

TEST_CASE("spectrum_split conserves l0 and l1") {
  for (const auto& entry : test::small_corpus()) {
    const Spectrum pm = pm_spectrum(entry.f);
    const SpectralStats base = spectral_stats(pm);
    for (Mask t = 1; t < entry.f.size(); ++t) {
      const auto split = spectrum_split(pm, t);
      const SpectralStats a = spectral_stats(split.in_perp);
      const SpectralStats b = spectral_stats(split.off_perp);
      CHECK(a.l0 + b.l0 == base.l0);
      CHECK(a.l1_num + b.l1_num == base.l1_num);
    }
  }
}

TEST_CASE("constraint formatting") {
  CHECK(to_string(AffineConstraint{0b0001, 0}, 4) == "1000=0");
  CHECK(to_string(AffineConstraint{0b0110, 1}, 4) == "0110=1");
}
