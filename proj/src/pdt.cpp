#include "pdtkit/pdt.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "pdtkit/error.hpp"
#include "pdtkit/gf2.hpp"
#include "pdtkit/rank.hpp"

namespace pdtkit {

// ---------------------------------------------------------------------------
// Tree storage

Pdt Pdt::constant(unsigned n, unsigned value) {
  Pdt t(n);
  t.set_root(t.add_leaf(value));
  return t;
}

std::int32_t Pdt::add_leaf(unsigned value) {
  Node node;
  node.value = value & 1u;
  nodes_.push_back(node);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t Pdt::add_query(Mask query, std::int32_t child0, std::int32_t child1) {
  Node node;
  node.leaf = false;
  node.query = query;
  node.child = {child0, child1};
  nodes_.push_back(node);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

unsigned Pdt::evaluate(Mask x) const {
  std::int32_t i = root_;
  while (!node(i).leaf) i = node(i).child[dot(node(i).query, x)];
  return node(i).value;
}

std::size_t Pdt::depth() const {
  std::size_t best = 0;
  for (const auto& leaf : leaves()) best = std::max(best, leaf.path.size());
  return best;
}

std::size_t Pdt::leaf_count() const { return leaves().size(); }

std::vector<Pdt::Leaf> Pdt::leaves() const {
  std::vector<Leaf> out;
  if (root_ < 0) return out;
  std::vector<AffineConstraint> path;
  std::function<void(std::int32_t)> walk = [&](std::int32_t i) {
    const Node& n = node(i);
    if (n.leaf) {
      out.push_back({n.value, path});
      return;
    }
    for (unsigned b = 0; b < 2; ++b) {
      path.push_back({n.query, b});
      walk(n.child[b]);
      path.pop_back();
    }
  };
  walk(root_);
  return out;
}

void Pdt::validate() const {
  if (n_ > kMaxVars) fail(ErrorCode::invalid_tree, "tree arity exceeds " + std::to_string(kMaxVars));
  if (root_ < 0 || static_cast<std::size_t>(root_) >= nodes_.size()) {
    fail(ErrorCode::invalid_tree, "tree has no root");
  }
  std::vector<std::uint8_t> seen(nodes_.size(), 0);
  std::vector<Mask> path;
  std::function<void(std::int32_t)> walk = [&](std::int32_t i) {
    if (i < 0 || static_cast<std::size_t>(i) >= nodes_.size()) {
      fail(ErrorCode::invalid_tree, "dangling child index " + std::to_string(i));
    }
    if (seen[static_cast<std::size_t>(i)]++) {
      fail(ErrorCode::invalid_tree, "node " + std::to_string(i) + " reachable twice");
    }
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.leaf) return;
    if (n.query == 0 || (n.query & ~full_mask(n_)) != 0) {
      fail(ErrorCode::invalid_tree, "query mask outside dimension " + std::to_string(n_));
    }
    path.push_back(n.query);
    if (span_dim(path) != path.size()) {
      fail(ErrorCode::invalid_tree, "dependent query " + to_bitstring(n.query, n_) + " on a path");
    }
    walk(n.child[0]);
    walk(n.child[1]);
    path.pop_back();
  };
  walk(root_);
}

unsigned pdt_eval(const Pdt& tree, Mask x) { return tree.evaluate(x); }

PdtCheck pdt_check(const Pdt& tree, const BooleanFunction& f) {
  PdtCheck out;
  if (tree.arity() != f.arity()) {
    fail(ErrorCode::dimension_mismatch, "tree arity " + std::to_string(tree.arity()) +
                                            " differs from function arity " + std::to_string(f.arity()));
  }
  tree.validate();
  out.depth = tree.depth();
  out.size = tree.leaf_count();
  out.correct = true;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (tree.evaluate(static_cast<Mask>(x)) != static_cast<unsigned>(f(static_cast<Mask>(x)))) {
      out.correct = false;
      out.first_mismatch = static_cast<Mask>(x);
      break;
    }
  }
  const std::size_t l0 = wht(f).sparsity();
  out.sparsity_bound_holds = 2 * out.depth >= 64 || l0 <= (std::size_t{1} << (2 * out.depth));
  return out;
}

// ---------------------------------------------------------------------------
// Builders

const char* strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::greedy_l1: return "greedy-l1";
    case Strategy::heavy_hitter: return "heavy-hitter";
    case Strategy::span_query: return "span-query";
    case Strategy::degree_reduce: return "degree-reduce";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::greedy_l1, Strategy::heavy_hitter, Strategy::span_query,
                     Strategy::degree_reduce}) {
    if (name == strategy_name(s)) return s;
  }
  fail(ErrorCode::invalid_argument, "unknown strategy '" + std::string(name) + "'");
}

namespace {

// f^pm restricted to the chart's subspace, in the chart's local coordinates,
// over the root denominator.
struct State {
  AffineChart chart;
  Spectrum pm;
};

unsigned constant_value(const Spectrum& pm) {
  // A constant +-1 function: coefficient at 0 is +-2^denom_exp.
  return pm.at(0) > 0 ? 0u : 1u;
}

std::pair<State, unsigned> child_state(const State& s, Mask original, unsigned answer) {
  const auto [local, offset] = s.chart.localize(original);
  if (local == 0) fail(ErrorCode::invalid_tree, "query is dependent on the path");
  const unsigned b = (answer ^ offset) & 1u;
  return {State{s.chart.restricted(local, b), fold(s.pm, local, b)}, b};
}

class TreeBuilder {
 public:
  TreeBuilder(unsigned n, BuildTrace& trace) : tree_(n), trace_(trace) {}

  Pdt take(std::int32_t root) {
    tree_.set_root(root);
    return std::move(tree_);
  }

  std::int32_t leaf(unsigned value) { return tree_.add_leaf(value); }

  // Queries `original`, recording the node, then builds both children.
  template <class Child>
  std::int32_t query(const State& s, Mask original, std::size_t pair_count, Child&& child) {
    TraceNode rec;
    rec.path.assign(s.chart.constraints().begin(), s.chart.constraints().end());
    rec.query = original;
    rec.pair_count = pair_count;
    const auto before = spectral_stats(s.pm);
    rec.l0_before = before.l0;
    rec.l1_before = before.l1_num;
    const std::size_t slot = trace_.nodes.size();
    trace_.nodes.push_back(rec);
    std::array<std::int32_t, 2> kids{};
    for (unsigned a = 0; a < 2; ++a) {
      auto [next, b] = child_state(s, original, a);
      const auto after = spectral_stats(next.pm);
      trace_.nodes[slot].l0_after[a] = after.l0;
      trace_.nodes[slot].l1_after[a] = after.l1_num;
      kids[a] = child(next, a, b);
    }
    return tree_.add_query(original, kids[0], kids[1]);
  }

  BuildTrace& trace() noexcept { return trace_; }

 private:
  Pdt tree_;
  BuildTrace& trace_;
};

// Two largest |coefficients|, ties to the lexicographically smaller mask.
std::pair<Coefficient, Coefficient> top_two(const Spectrum& s) {
  std::vector<Coefficient> terms(s.terms().begin(), s.terms().end());
  const auto better = [](const Coefficient& a, const Coefficient& b) {
    const auto ma = a.num < 0 ? -a.num : a.num;
    const auto mb = b.num < 0 ? -b.num : b.num;
    if (ma != mb) return ma > mb;
    return lex_less(a.mask, b.mask);
  };
  std::partial_sort(terms.begin(), terms.begin() + 2, terms.end(), better);
  return {terms[0], terms[1]};
}

// Greedy fold direction in local coordinates; 0 when the state is constant.
Mask greedy_direction(const Spectrum& pm) {
  if (pm.is_constant()) return 0;
  if (pm.sparsity() == 1) return pm.terms()[0].mask;
  const auto [a1, a2] = top_two(pm);
  return a1.mask ^ a2.mask;
}

std::int32_t greedy_node(TreeBuilder& b, const State& s) {
  const Mask beta = greedy_direction(s.pm);
  if (beta == 0) return b.leaf(constant_value(s.pm));
  return b.query(s, s.chart.lift(beta), 0,
                 [&](const State& next, unsigned, unsigned) { return greedy_node(b, next); });
}

std::int32_t heavy_node(TreeBuilder& b, const State& s) {
  if (s.pm.is_constant()) return b.leaf(constant_value(s.pm));
  const auto terms = s.pm.terms();
  const unsigned m = s.chart.dimension();
  std::vector<std::uint32_t> count(std::size_t{1} << m, 0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) ++count[terms[i].mask ^ terms[j].mask];
  }
  Mask best = 0;
  std::uint32_t best_count = 0;
  for (Mask t = 1; t < count.size(); ++t) {
    if (count[t] > best_count || (count[t] > 0 && count[t] == best_count && lex_less(t, best))) {
      best = t;
      best_count = count[t];
    }
  }
  if (best == 0) best = terms[0].mask;  // single nonzero character
  return b.query(s, s.chart.lift(best), best_count,
                 [&](const State& next, unsigned, unsigned) { return heavy_node(b, next); });
}

// Full tree over the given original forms, then `bottom` at each leaf.
template <class Bottom>
std::int32_t query_all(TreeBuilder& b, const State& s, std::span<const Mask> forms, Bottom&& bottom) {
  if (forms.empty()) return bottom(s);
  return b.query(s, forms.front(), 0, [&](const State& next, unsigned, unsigned) {
    return query_all(b, next, forms.subspan(1), bottom);
  });
}

// Basis of the support of the {0,1} spectrum, lexicographic greedy, original
// coordinates.
std::vector<Mask> support_basis(const BooleanFunction& g, const AffineChart& chart) {
  const Spectrum s = wht(g);
  std::vector<Mask> support;
  for (const auto& c : s.terms()) support.push_back(c.mask);
  std::sort(support.begin(), support.end(), LexLess{});
  auto basis = greedy_basis(support);
  for (auto& m : basis) m = chart.lift(m);
  return basis;
}

std::int32_t span_subtree(TreeBuilder& b, const State& s, const BooleanFunction& g) {
  const auto basis = support_basis(g, s.chart);
  return query_all(b, s, basis, [&](const State& leaf) {
    if (!leaf.pm.is_constant()) fail(ErrorCode::invalid_tree, "span-query leaf is not constant");
    return b.leaf(constant_value(leaf.pm));
  });
}

State root_state(const BooleanFunction& f) { return State{AffineChart(f.arity()), pm_spectrum(f)}; }

std::int32_t degree_round(TreeBuilder& b, const State& s, const BooleanFunction& root,
                          const DegreeReduceBudget& budget) {
  const BooleanFunction g = restrict_affine(root, s.chart.constraints());
  const int d = deg2(g);
  if (d == 0) return b.leaf(g(0) ? 1u : 0u);
  TraceRound round;
  round.path.assign(s.chart.constraints().begin(), s.chart.constraints().end());
  round.degree = d;
  std::vector<Mask> forms;
  if (g.arity() <= budget.max_arity) {
    try {
      forms = degree_reducing_subspace(g, budget.max_codim, budget.max_candidates);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::not_found) throw;
    }
  }
  if (forms.empty()) {
    round.fallback = true;
    round.queries = support_basis(g, s.chart);
    b.trace().rounds.push_back(std::move(round));
    return span_subtree(b, s, g);
  }
  for (auto& m : forms) m = s.chart.lift(m);
  round.queries = forms;
  b.trace().rounds.push_back(std::move(round));
  return query_all(b, s, forms, [&](const State& next) { return degree_round(b, next, root, budget); });
}

}  // namespace

BuildResult build_greedy_l1(const BooleanFunction& f) {
  BuildResult out;
  TreeBuilder b(f.arity(), out.trace);
  out.tree = b.take(greedy_node(b, root_state(f)));
  return out;
}

BuildResult build_heavy_hitter(const BooleanFunction& f) {
  BuildResult out;
  TreeBuilder b(f.arity(), out.trace);
  out.tree = b.take(heavy_node(b, root_state(f)));
  return out;
}

BuildResult build_span_query(const BooleanFunction& f) {
  BuildResult out;
  TreeBuilder b(f.arity(), out.trace);
  out.tree = b.take(span_subtree(b, root_state(f), f));
  return out;
}

BuildResult build_degree_reduce(const BooleanFunction& f, DegreeReduceBudget budget) {
  BuildResult out;
  TreeBuilder b(f.arity(), out.trace);
  out.tree = b.take(degree_round(b, root_state(f), f, budget));
  return out;
}

BuildResult build(const BooleanFunction& f, Strategy strategy) {
  switch (strategy) {
    case Strategy::greedy_l1: return build_greedy_l1(f);
    case Strategy::heavy_hitter: return build_heavy_hitter(f);
    case Strategy::span_query: return build_span_query(f);
    case Strategy::degree_reduce: return build_degree_reduce(f);
  }
  fail(ErrorCode::invalid_argument, "unknown strategy");
}

// ---------------------------------------------------------------------------
// Certificates

bool certificate_holds(const Certificate& cert, const BooleanFunction& f) {
  const BooleanFunction g = restrict_affine(f, cert.constraints);
  for (std::size_t y = 0; y < g.size(); ++y) {
    if (static_cast<unsigned>(g(static_cast<Mask>(y))) != cert.value) return false;
  }
  return true;
}

namespace {

void require_nonconstant(const BooleanFunction& f) {
  if (f.is_constant()) fail(ErrorCode::constant_input, "certificates need a non-constant function");
}

// Lifts a certificate written in the chart's local coordinates.
void append_lifted(std::vector<AffineConstraint>& out, const AffineChart& chart,
                   std::span<const AffineConstraint> local) {
  for (const auto& c : local) out.push_back({chart.lift(c.mask), c.bit});
}

// The chart obtained by imposing `local` (in `chart`'s coordinates) on it.
AffineChart impose(AffineChart chart, std::span<const AffineConstraint> local) {
  const AffineChart base = chart;
  for (const auto& c : local) {
    const auto [m, offset] = chart.localize(base.lift(c.mask));
    chart = chart.restricted(m, c.bit ^ offset);
  }
  return chart;
}

// Certificate for the value `value` from the shallowest matching greedy leaf.
Certificate shallowest_leaf(const BooleanFunction& g, unsigned value) {
  const auto tree = build_greedy_l1(g).tree;
  std::optional<Certificate> best;
  for (const auto& leaf : tree.leaves()) {
    if (leaf.value != value) continue;
    if (!best || leaf.path.size() < best->codim()) best = Certificate{leaf.path, value};
  }
  if (!best) fail(ErrorCode::invalid_tree, "no leaf with the requested value");
  return *best;
}

}  // namespace

Certificate cert_greedy_l1(const BooleanFunction& f) {
  require_nonconstant(f);
  Certificate cert;
  State s = root_state(f);
  while (!s.pm.is_constant()) {
    Mask beta = 0;
    unsigned b = 0;
    if (s.pm.sparsity() == 1) {
      beta = s.pm.terms()[0].mask;
    } else {
      const auto [a1, a2] = top_two(s.pm);
      beta = a1.mask ^ a2.mask;
      b = ((a1.num < 0) != (a2.num < 0)) ? 1u : 0u;
    }
    cert.constraints.push_back({s.chart.lift(beta), b});
    s = State{s.chart.restricted(beta, b), fold(s.pm, beta, b)};
  }
  cert.value = constant_value(s.pm);
  return cert;
}

HalvingResult cert_norm_halving_traced(const BooleanFunction& f) {
  require_nonconstant(f);
  const unsigned n = f.arity();
  HalvingResult out;
  AffineChart chart(n);
  for (;;) {
    const BooleanFunction g = restrict_affine(f, chart.constraints());
    const int d = deg2(g);
    auto& cons = out.certificate.constraints;
    if (d <= 1) {
      cons.assign(chart.constraints().begin(), chart.constraints().end());
      if (d == 1) {
        const Spectrum s = wht(g);
        const Mask linear = s.terms().back().mask;
        cons.push_back({chart.lift(linear), 0});
      }
      out.certificate.value = g(0) ? 1u : 0u;
      return out;
    }
    if (d == 2) {
      const Certificate sub = cert_greedy_l1(g);
      cons.assign(chart.constraints().begin(), chart.constraints().end());
      append_lifted(cons, chart, sub.constraints);
      out.certificate.value = sub.value;
      return out;
    }

    std::vector<Mask> order(g.size() - 1);
    std::iota(order.begin(), order.end(), Mask{1});
    std::sort(order.begin(), order.end(), LexLess{});
    Mask t = 0;
    BooleanFunction dg;
    for (Mask cand : order) {
      dg = derivative(g, cand);
      if (!dg.is_constant()) {
        t = cand;
        break;
      }
    }
    if (t == 0) fail(ErrorCode::invalid_argument, "every derivative is constant");

    const Certificate recursive = cert_norm_halving(dg);
    std::array<Certificate, 2> by_value;
    for (unsigned v = 0; v < 2; ++v) {
      Certificate leaf = shallowest_leaf(dg, v);
      by_value[v] = (recursive.value == v && recursive.codim() <= leaf.codim()) ? recursive : std::move(leaf);
    }

    const Spectrum pm = pm_spectrum(g);
    const auto split = spectrum_split(pm, t);
    const std::int64_t total = spectral_stats(pm).l1_num;
    const std::int64_t half0 = spectral_stats(split.in_perp).l1_num;
    const unsigned b = 2 * half0 <= total ? 0u : 1u;
    const Spectrum& kept = b == 0 ? split.in_perp : split.off_perp;

    HalvingStep step;
    step.direction = chart.lift(t);
    step.branch = b;
    step.derivative_cert_codim = by_value[b].codim();
    step.l1_before = l1_at_denominator(pm, static_cast<int>(n));
    step.l1_half = l1_at_denominator(kept, static_cast<int>(n));
    chart = impose(chart, by_value[b].constraints);
    step.l1_after = l1_at_denominator(pm_spectrum(restrict_affine(f, chart.constraints())), static_cast<int>(n));
    out.steps.push_back(step);
  }
}

Certificate cert_norm_halving(const BooleanFunction& f) { return cert_norm_halving_traced(f).certificate; }

// ---------------------------------------------------------------------------
// Subspace decomposition

std::vector<SubspaceTerm> green_sanders_decompose(const Pdt& tree, const BooleanFunction& f) {
  const PdtCheck check = pdt_check(tree, f);
  if (!check.correct) fail(ErrorCode::invalid_tree, "tree does not compute the function");
  std::vector<SubspaceTerm> terms;
  for (const auto& leaf : tree.leaves()) {
    if (leaf.value == 0) continue;
    std::vector<Mask> all;
    std::optional<Mask> anchor;
    std::vector<Mask> homogenized;
    for (const auto& c : leaf.path) {
      all.push_back(c.mask);
      if (c.bit == 0) {
        homogenized.push_back(c.mask);
      } else if (!anchor) {
        anchor = c.mask;
      } else {
        homogenized.push_back(c.mask ^ *anchor);
      }
    }
    if (!anchor) {
      terms.push_back({+1, std::move(all)});
      continue;
    }
    terms.push_back({+1, std::move(homogenized)});
    terms.push_back({-1, std::move(all)});
  }
  return terms;
}

int evaluate_terms(std::span<const SubspaceTerm> terms, Mask x) {
  int total = 0;
  for (const auto& term : terms) {
    bool inside = true;
    for (Mask m : term.masks) inside = inside && dot(m, x) == 0;
    if (inside) total += term.sign;
  }
  return total;
}

}  // namespace pdtkit
