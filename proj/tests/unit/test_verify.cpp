#include <doctest.h>

#include <cmath>
#include <limits>

#include "pdtkit/error.hpp"
#include "pdtkit/families.hpp"
#include "pdtkit/verify.hpp"
#include "test_corpus.hpp"

using namespace pdtkit;

namespace {

const InvariantCheck* find(const InvariantReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::int64_t min_nonzero(const Spectrum& s) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& c : s.terms()) best = std::min(best, std::abs(c.num));
  return best;
}

}  // namespace

TEST_CASE("invariant_report examples") {
  const InvariantReport ip = invariant_report(test::ip4());
  CHECK(ip.overall);
  const InvariantCheck* deg = find(ip, "degree_vs_sparsity");
  REQUIRE(deg != nullptr);
  CHECK(deg->lhs == "2");
  CHECK(deg->holds);

  const InvariantReport a = invariant_report(BooleanFunction(2, {0, 0, 0, 1}));
  CHECK(a.overall);
  CHECK(a.best_depth == 2);
  REQUIRE(find(a, "l1_vs_sqrt_l0") != nullptr);

  const InvariantReport one = invariant_report(BooleanFunction::constant(3, true));
  CHECK(one.overall);
  CHECK(one.best_depth == 0);

  const InvariantReport zero = invariant_report(BooleanFunction::constant(2, false));
  CHECK(zero.overall);
}

TEST_CASE("invariant_report holds across the small corpus") {
  for (const auto& entry : test::small_corpus()) {
    const InvariantReport r = invariant_report(entry.f);
    CAPTURE(format_family(entry.spec));
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.holds);
    }
    CHECK(r.overall);
  }
}

TEST_CASE("chang_check examples") {
  for (unsigned n = 1; n <= 8; ++n) {
    const auto f = BooleanFunction::from_predicate(n, [n](Mask x) { return x == full_mask(n); });
    const ChangResult r = chang_check(f, 1);
    CHECK(r.span == n);
    CHECK(r.bound == doctest::Approx(2.0 * n * std::log(2.0)));
    CHECK(r.holds);
  }
  const auto ip = test::ip4();
  const ChangResult vacuous = chang_check(ip, 100);
  CHECK(vacuous.span == 0);
  CHECK(vacuous.holds);
  CHECK_THROWS_AS(chang_check(BooleanFunction::constant(3, false), 1), Error);
  CHECK_THROWS_AS(chang_check(ip, 0), Error);
}

TEST_CASE("chang_check holds at the smallest nonzero coefficient") {
  for (const auto& entry : random_corpus(60, 8, 8, 4, 500)) {
    if (entry.f.ones() == 0) continue;
    CHECK(chang_check(entry.f, min_nonzero(wht(entry.f))).holds);
  }
  for (const auto& entry : test::small_corpus()) {
    if (entry.f.ones() == 0) continue;
    CHECK(chang_check(entry.f, min_nonzero(wht(entry.f))).holds);
  }
}

TEST_CASE("bound_B examples") {
  CHECK(bound_B(3, 1.0) == doctest::Approx(14.0));
  const double b3_256 = 9.0 * std::log2(257.0) + 5.0;
  const double b3_16 = 9.0 * std::log2(17.0) + 5.0;
  CHECK(bound_B(4, 16.0) == doctest::Approx(b3_256 * 4.0 + b3_16 + 1.0));
  CHECK(bound_B(3, 1.0, BoundBConfig{1.0, 0.0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(bound_B(2, 4.0), Error);
  CHECK_THROWS_AS(bound_B(3, 0.5), Error);
  CHECK(bound_B_leading(4, 16.0) == doctest::Approx(2.0 * 16.0));
}

TEST_CASE("bound_B is monotone in both arguments") {
  for (int d = 3; d <= 6; ++d) {
    double previous = 0.0;
    for (double m = 1.0; m <= 64.0; m *= 1.5) {
      const double v = bound_B(d, m);
      CHECK(v >= previous);
      previous = v;
      if (d < 6) CHECK(bound_B(d + 1, m) >= v);
    }
  }
}
