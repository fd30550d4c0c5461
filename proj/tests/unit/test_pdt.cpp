#include <doctest.h>

#include <map>
#include <set>

#include "oracle.hpp"
#include "pdtkit/error.hpp"
#include "pdtkit/families.hpp"
#include "pdtkit/gf2.hpp"
#include "pdtkit/pdt.hpp"
#include "pdtkit/rank.hpp"
#include "test_corpus.hpp"

using namespace pdtkit;

namespace {

BooleanFunction and2() { return BooleanFunction(2, {0, 0, 0, 1}); }

constexpr Strategy kAll[] = {Strategy::greedy_l1, Strategy::heavy_hitter, Strategy::span_query,
                             Strategy::degree_reduce};

std::set<std::pair<Mask, unsigned>> as_set(const std::vector<AffineConstraint>& cs) {
  std::set<std::pair<Mask, unsigned>> out;
  for (const auto& c : cs) out.insert({c.mask, c.bit});
  return out;
}

// l0/l1 after the branch leading to each subspace, keyed by its point set
// (trace paths are stored in reduced form, not as the raw queries).
void check_trace_monotone(const BuildTrace& trace, unsigned n) {
  std::map<std::vector<Mask>, std::pair<std::size_t, std::int64_t>> after;
  for (const auto& node : trace.nodes) {
    for (unsigned b = 0; b < 2; ++b) {
      CHECK(node.l0_after[b] <= node.l0_before);
      CHECK(node.l1_after[b] <= node.l1_before);
      auto path = node.path;
      path.push_back({node.query, b});
      after[oracle::points(n, path)] = {node.l0_after[b], node.l1_after[b]};
    }
  }
  for (const auto& node : trace.nodes) {
    if (node.path.empty()) continue;
    const auto it = after.find(oracle::points(n, node.path));
    REQUIRE(it != after.end());
    CHECK(node.l0_before == it->second.first);
    CHECK(node.l1_before == it->second.second);
  }
}

BooleanFunction family(FamilyKind kind, unsigned n) {
  FamilySpec spec;
  spec.kind = kind;
  spec.n = n;
  return generate(spec);
}

}  // namespace

TEST_CASE("pdt_eval examples") {
  CHECK(pdt_eval(Pdt::constant(3, 1), 0b101) == 1);
  Pdt t(2);
  const auto zero = t.add_leaf(0);
  const auto one = t.add_leaf(1);
  t.set_root(t.add_query(parse_bitstring("11"), zero, one));
  CHECK(pdt_eval(t, parse_bitstring("10")) == 1);
  CHECK(pdt_eval(t, parse_bitstring("11")) == 0);
  CHECK(t.depth() == 1);
  CHECK(t.leaf_count() == 2);
}

TEST_CASE("pdt_check examples") {
  const BuildResult a = build_greedy_l1(and2());
  const PdtCheck ca = pdt_check(a.tree, and2());
  CHECK(ca.correct);
  CHECK(ca.depth == 2);
  CHECK(ca.sparsity_bound_holds);

  const auto x1 = BooleanFunction(1, {0, 1});
  const PdtCheck bad = pdt_check(Pdt::constant(1, 0), x1);
  CHECK_FALSE(bad.correct);
  REQUIRE(bad.first_mismatch.has_value());
  CHECK(*bad.first_mismatch == 1);

  const PdtCheck constant = pdt_check(Pdt::constant(3, 1), BooleanFunction::constant(3, true));
  CHECK(constant.correct);
  CHECK(constant.depth == 0);
  CHECK(constant.sparsity_bound_holds);
}

TEST_CASE("tree validation rejects malformed trees") {
  Pdt dependent(2);
  const auto l0 = dependent.add_leaf(0);
  const auto l1 = dependent.add_leaf(1);
  const auto inner = dependent.add_query(0b11, l0, l1);
  dependent.set_root(dependent.add_query(0b11, inner, l1));
  CHECK_THROWS_AS(dependent.validate(), Error);

  Pdt zero_query(2);
  const auto a = zero_query.add_leaf(0);
  const auto b = zero_query.add_leaf(1);
  zero_query.set_root(zero_query.add_query(0, a, b));
  CHECK_THROWS_AS(zero_query.validate(), Error);

  Pdt outside(2);
  const auto c = outside.add_leaf(0);
  const auto d = outside.add_leaf(1);
  outside.set_root(outside.add_query(0b100, c, d));
  CHECK_THROWS_AS(outside.validate(), Error);
}

TEST_CASE("greedy builder examples") {
  const BuildResult a = build_greedy_l1(and2());
  CHECK(a.tree.node(a.tree.root()).query == parse_bitstring("01"));
  CHECK(a.tree.depth() == 2);
  const auto& root = a.tree.node(a.tree.root());
  CHECK(a.tree.node(root.child[0]).leaf);
  CHECK(a.tree.node(root.child[0]).value == 0);

  const Mask s = parse_bitstring("1011");
  const auto chi = BooleanFunction::from_predicate(4, [s](Mask x) { return dot(x, s) == 1; });
  const BuildResult p = build_greedy_l1(chi);
  CHECK(p.tree.depth() == 1);
  CHECK(p.tree.node(p.tree.root()).query == s);

  CHECK(pdt_check(build_greedy_l1(test::ip4()).tree, test::ip4()).correct);
  CHECK(build_greedy_l1(BooleanFunction::constant(3, true)).tree.depth() == 0);
}

TEST_CASE("heavy-hitter builder examples") {
  const BuildResult a = build_heavy_hitter(and2());
  REQUIRE_FALSE(a.trace.nodes.empty());
  const TraceNode& root = a.trace.nodes.front();
  CHECK(root.query == parse_bitstring("01"));
  CHECK(root.pair_count == 2);
  CHECK(root.l0_after[0] <= 2);
  CHECK(root.l0_after[1] <= 2);

  const auto chi = BooleanFunction::from_predicate(3, [](Mask x) { return dot(x, 0b110) == 1; });
  CHECK(build_heavy_hitter(chi).tree.depth() <= 1);

  FamilySpec spec;
  spec.kind = FamilyKind::random_poly;
  spec.n = 6;
  spec.degree = 3;
  spec.seed = 1;
  const auto f = generate(spec);
  CHECK(deg2(f) == 3);
  const BuildResult h = build_heavy_hitter(f);
  CHECK(pdt_check(h.tree, f).correct);
  for (const auto& node : h.trace.nodes) {
    for (unsigned b = 0; b < 2; ++b) CHECK(node.l0_after[b] + node.pair_count <= node.l0_before);
  }
}

TEST_CASE("span-query builder examples") {
  const auto chi = BooleanFunction::from_predicate(3, [](Mask x) { return dot(x, 0b101) == 1; });
  CHECK(build_span_query(chi).tree.depth() == 1);
  CHECK(build_span_query(and2()).tree.depth() == 2);
  for (unsigned g = 0; g < 16; ++g) {
    const auto f = BooleanFunction::from_predicate(3, [g](Mask x) {
      const unsigned u = ((x & 1) ^ ((x >> 1) & 1)) | (((x >> 2) & 1) << 1);
      return ((g >> u) & 1u) != 0;
    });
    const BuildResult r = build_span_query(f);
    CHECK(r.tree.depth() <= 2);
    CHECK(pdt_check(r.tree, f).correct);
  }
}

TEST_CASE("degree-reduce builder examples") {
  const BuildResult a = build_degree_reduce(and2());
  CHECK(a.tree.depth() == 2);
  CHECK(pdt_check(a.tree, and2()).correct);
  REQUIRE(a.trace.rounds.size() >= 2);
  CHECK(a.trace.rounds[0].degree == 2);
  CHECK(a.trace.rounds[0].queries == std::vector<Mask>{parse_bitstring("10")});
  CHECK(a.trace.rounds[1].queries.size() == 1);

  const BuildResult ip = build_degree_reduce(test::ip4());
  CHECK(pdt_check(ip.tree, test::ip4()).correct);
  CHECK(ip.tree.depth() <= 4);
  CHECK(ip.trace.rounds.front().queries ==
        std::vector<Mask>{parse_bitstring("1000"), parse_bitstring("0010")});

  const auto parity = BooleanFunction::from_predicate(4, [](Mask x) { return weight(x) % 2 == 1; });
  CHECK(build_degree_reduce(parity).tree.depth() == 1);
}

TEST_CASE("certificate examples") {
  const Certificate a = cert_greedy_l1(and2());
  CHECK(a.value == 0);
  CHECK(as_set(a.constraints) == as_set({{parse_bitstring("01"), 0}}));
  CHECK(certificate_holds(a, and2()));

  const Certificate ip = cert_greedy_l1(test::ip4());
  CHECK(ip.codim() <= 18);
  CHECK(certificate_holds(ip, test::ip4()));

  const auto parity = BooleanFunction::from_predicate(3, [](Mask x) { return weight(x) % 2 == 1; });
  CHECK(cert_greedy_l1(parity).codim() == 1);
  CHECK(cert_norm_halving(parity).codim() == 1);

  const Certificate h = cert_norm_halving(test::ip4());
  CHECK(h.value == 0);
  CHECK(as_set(h.constraints) == as_set({{parse_bitstring("0100"), 0}, {parse_bitstring("0001"), 0}}));

  FamilySpec spec;
  spec.kind = FamilyKind::random_poly;
  spec.n = 8;
  spec.degree = 4;
  spec.seed = 3;
  const auto f = generate(spec);
  CHECK(deg2(f) == 4);
  const HalvingResult traced = cert_norm_halving_traced(f);
  CHECK(certificate_holds(traced.certificate, f));
  REQUIRE_FALSE(traced.steps.empty());
  for (const auto& step : traced.steps) CHECK(2 * step.l1_after <= step.l1_before);

  CHECK_THROWS_AS(cert_greedy_l1(BooleanFunction::constant(2, false)), Error);
  CHECK_THROWS_AS(cert_norm_halving(BooleanFunction::constant(2, true)), Error);
}

TEST_CASE("Green-Sanders examples") {
  const auto one = BooleanFunction::constant(3, true);
  const auto t1 = green_sanders_decompose(Pdt::constant(3, 1), one);
  REQUIRE(t1.size() == 1);
  CHECK(t1[0].sign == 1);
  CHECK(t1[0].masks.empty());

  const BuildResult a = build_greedy_l1(and2());
  const auto ta = green_sanders_decompose(a.tree, and2());
  CHECK(ta.size() <= 2);
  for (Mask x = 0; x < 4; ++x) CHECK(evaluate_terms(ta, x) == static_cast<int>(and2()(x)));

  const BuildResult ip = build_degree_reduce(test::ip4());
  const auto tip = green_sanders_decompose(ip.tree, test::ip4());
  for (Mask x = 0; x < 16; ++x) CHECK(evaluate_terms(tip, x) == static_cast<int>(test::ip4()(x)));

  CHECK_THROWS_AS(green_sanders_decompose(Pdt::constant(2, 0), and2()), Error);
}

TEST_CASE("strategy names round trip") {
  for (Strategy s : kAll) CHECK(parse_strategy(strategy_name(s)) == s);
  CHECK_THROWS_AS(parse_strategy("bogus"), Error);
}

TEST_CASE("every builder is correct with independent paths and monotone traces") {
  for (const auto& entry : test::small_corpus()) {
    const auto& f = entry.f;
    const std::size_t l0 = spectral_stats(wht(f)).l0;
    for (Strategy s : kAll) {
      CAPTURE(format_family(entry.spec));
      const std::string name = strategy_name(s);
      CAPTURE(name);
      const BuildResult r = build(f, s);
      const PdtCheck c = pdt_check(r.tree, f);
      CHECK(c.correct);
      CHECK(c.sparsity_bound_holds);
      CHECK_NOTHROW(r.tree.validate());
      for (const auto& leaf : r.tree.leaves()) {
        std::vector<Mask> masks;
        for (const auto& con : leaf.path) masks.push_back(con.mask);
        CHECK(span_dim(masks) == masks.size());
        for (Mask x : oracle::points(f.arity(), leaf.path)) CHECK(f(x) == (leaf.value == 1));
      }
      check_trace_monotone(r.trace, f.arity());
      if (s == Strategy::heavy_hitter) {
        for (const auto& node : r.trace.nodes) {
          for (unsigned b = 0; b < 2; ++b) CHECK(node.l0_after[b] + node.pair_count <= node.l0_before);
        }
      }
      if (s == Strategy::span_query) {
        std::vector<Mask> support;
        const Spectrum spectrum = wht(f);
        for (const auto& coeff : spectrum.terms()) support.push_back(coeff.mask);
        CHECK(r.tree.depth() == span_dim(support));
        CHECK(r.tree.depth() <= std::min<std::size_t>(f.arity(), l0));
      }
    }
  }
}

TEST_CASE("degree-reduce depth is at most degree times the largest round rank") {
  for (const auto& entry : test::small_corpus()) {
    const auto& f = entry.f;
    if (f.is_constant()) continue;
    const BuildResult r = build_degree_reduce(f);
    for (const auto& leaf : r.tree.leaves()) {
      std::size_t rounds_on_path = 0;
      for (const auto& round : r.trace.rounds) {
        rounds_on_path += round.path.size() <= leaf.path.size() &&
                          std::equal(round.path.begin(), round.path.end(), leaf.path.begin());
      }
      CHECK(rounds_on_path <= static_cast<std::size_t>(deg2(f)));
    }
    std::size_t max_rank = 0;
    for (const auto& round : r.trace.rounds) {
      const auto g = restrict_affine(f, round.path);
      REQUIRE_FALSE(g.is_constant());
      CHECK(round.degree == deg2(g));
      const RankResult rk = rank_exact(g, g.arity());
      max_rank = std::max(max_rank, rk.rank);
      if (!round.fallback) CHECK(round.queries.size() == rk.rank);
    }
    CHECK(r.tree.depth() <= static_cast<std::size_t>(deg2(f)) * max_rank);
  }
}

TEST_CASE("certificates hold, obey the l1 bound, halve the norm and bound the rank") {
  for (const auto& entry : test::small_corpus()) {
    const auto& f = entry.f;
    if (f.is_constant()) continue;
    CAPTURE(format_family(entry.spec));
    const Certificate g = cert_greedy_l1(f);
    const HalvingResult h = cert_norm_halving_traced(f);
    CHECK(certificate_holds(g, f));
    CHECK(certificate_holds(h.certificate, f));
    const std::int64_t l1_num = spectral_stats(pm_spectrum(f)).l1_num;
    const std::int64_t scale = std::int64_t{1} << f.arity();
    CHECK(static_cast<std::int64_t>(g.codim()) * scale <= 4 * l1_num + 2 * scale);
    for (const auto& step : h.steps) CHECK(2 * step.l1_after <= step.l1_before);
    const std::size_t rank = rank_exact(f, f.arity()).rank;
    CHECK(rank <= g.codim());
    CHECK(rank <= h.certificate.codim());
  }
}

TEST_CASE("greedy certificate on quadratics is within half the Dickson rank plus one") {
  for (const auto& entry : test::small_corpus()) {
    const auto& f = entry.f;
    if (deg2(f) != 2) continue;
    CAPTURE(format_family(entry.spec));
    const std::size_t half = gf2_rank(dickson_matrix(anf_of(f))) / 2;
    CHECK(cert_greedy_l1(f).codim() <= half + 1);
  }
}

TEST_CASE("Green-Sanders terms sum to f on every builder tree") {
  for (const auto& entry : test::small_corpus()) {
    const auto& f = entry.f;
    for (Strategy s : kAll) {
      const BuildResult r = build(f, s);
      const auto terms = green_sanders_decompose(r.tree, f);
      CHECK(terms.size() <= (std::size_t{2} << r.tree.depth()));
      for (Mask x = 0; x < f.size(); ++x) REQUIRE(evaluate_terms(terms, x) == static_cast<int>(f(x)));
    }
  }
}

TEST_CASE("bent inner product trees") {
  for (unsigned k = 2; k <= 6; k += 2) {
    const auto f = family(FamilyKind::bent_ip, k);
    for (Strategy s : kAll) CHECK(pdt_check(build(f, s).tree, f).correct);
  }
}
