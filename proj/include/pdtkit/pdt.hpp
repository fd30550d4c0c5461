#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdtkit/bits.hpp"
#include "pdtkit/core.hpp"
#include "pdtkit/restrict.hpp"

namespace pdtkit {

/// Parity decision tree. Queries are linear forms in the original n
/// coordinates; child 0 is taken when <query, x> = 0.
class Pdt {
 public:
  struct Node {
    bool leaf = true;
    unsigned value = 0;
    Mask query = 0;
    std::array<std::int32_t, 2> child{-1, -1};
  };

  struct Leaf {
    unsigned value = 0;
    std::vector<AffineConstraint> path;
  };

  Pdt() = default;
  explicit Pdt(unsigned n) : n_(n) {}

  static Pdt constant(unsigned n, unsigned value);

  std::int32_t add_leaf(unsigned value);
  std::int32_t add_query(Mask query, std::int32_t child0, std::int32_t child1);
  void set_root(std::int32_t root) noexcept { root_ = root; }

  unsigned arity() const noexcept { return n_; }
  std::int32_t root() const noexcept { return root_; }
  const Node& node(std::int32_t i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  unsigned evaluate(Mask x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
  /// Leaves in depth-first order, 0-branch first, with their paths.
  std::vector<Leaf> leaves() const;

  /// Structural checks: reachable nodes form a tree, masks are nonzero and
  /// inside the dimension, and every root-to-leaf query set is independent.
  /// Throws invalid_tree.
  void validate() const;

 private:
  unsigned n_ = 0;
  std::int32_t root_ = -1;
  std::vector<Node> nodes_;
};

unsigned pdt_eval(const Pdt& tree, Mask x);

struct PdtCheck {
  bool correct = false;
  std::size_t depth = 0;
  std::size_t size = 0;  // number of leaves
  std::optional<Mask> first_mismatch;
  /// ||f^||_0 <= 4^depth.
  bool sparsity_bound_holds = false;
};

PdtCheck pdt_check(const Pdt& tree, const BooleanFunction& f);

/// One internal node of a built tree. Norms are of the +-1 spectrum of the
/// node's restriction; l1 numerators are over the root denominator 2^n.
struct TraceNode {
  std::vector<AffineConstraint> path;
  Mask query = 0;
  std::size_t l0_before = 0;
  std::array<std::size_t, 2> l0_after{};
  std::int64_t l1_before = 0;
  std::array<std::int64_t, 2> l1_after{};
  /// Heavy-hitter pair count p(t); zero for other strategies.
  std::size_t pair_count = 0;
};

/// One round of the degree-reducing builder.
struct TraceRound {
  std::vector<AffineConstraint> path;
  int degree = 0;
  std::vector<Mask> queries;  // original coordinates
  bool fallback = false;      // subspace search over budget, span-query used
};

struct BuildTrace {
  std::vector<TraceNode> nodes;
  std::vector<TraceRound> rounds;
};

struct BuildResult {
  Pdt tree;
  BuildTrace trace;
};

enum class Strategy { greedy_l1, heavy_hitter, span_query, degree_reduce };

const char* strategy_name(Strategy s) noexcept;
/// "greedy-l1", "heavy-hitter", "span-query", "degree-reduce".
Strategy parse_strategy(std::string_view name);

BuildResult build_greedy_l1(const BooleanFunction& f);
BuildResult build_heavy_hitter(const BooleanFunction& f);
BuildResult build_span_query(const BooleanFunction& f);

struct DegreeReduceBudget {
  unsigned max_codim = 4;
  unsigned max_arity = 12;
  /// Candidate subspaces examined per round before falling back.
  std::size_t max_candidates = 1'000'000;
};

BuildResult build_degree_reduce(const BooleanFunction& f, DegreeReduceBudget budget = {});
BuildResult build(const BooleanFunction& f, Strategy strategy);

/// The constant value of f on the affine subspace cut out by `constraints`.
struct Certificate {
  std::vector<AffineConstraint> constraints;
  unsigned value = 0;

  std::size_t codim() const noexcept { return constraints.size(); }
};

/// Exhaustive check that f restricted to the certificate is its value.
bool certificate_holds(const Certificate& cert, const BooleanFunction& f);

/// Greedy folding along the sum of the two largest +-1 coefficients, always
/// keeping the half-space where they add up. Throws constant_input.
Certificate cert_greedy_l1(const BooleanFunction& f);

/// One outer iteration of the norm-halving procedure.
struct HalvingStep {
  Mask direction = 0;  // original coordinates of the derivative direction
  unsigned branch = 0;
  std::size_t derivative_cert_codim = 0;
  std::int64_t l1_before = 0;  // over 2^n
  std::int64_t l1_half = 0;    // l1 of the kept half of the split
  std::int64_t l1_after = 0;
};

struct HalvingResult {
  Certificate certificate;
  std::vector<HalvingStep> steps;
};

/// Certificate built by derivative certificates and spectrum splits; each
/// outer iteration at least halves the spectral norm. Throws constant_input.
HalvingResult cert_norm_halving_traced(const BooleanFunction& f);
Certificate cert_norm_halving(const BooleanFunction& f);

/// f = sum of sign * 1_V over the terms, V = {x : <m, x> = 0 for m in masks}.
struct SubspaceTerm {
  int sign = 1;
  std::vector<Mask> masks;
};

/// Writes each 1-leaf indicator as 1_{V1} - 1_{V2}. Throws invalid_tree if
/// the tree does not compute f.
std::vector<SubspaceTerm> green_sanders_decompose(const Pdt& tree, const BooleanFunction& f);

/// Sum of the terms at x.
int evaluate_terms(std::span<const SubspaceTerm> terms, Mask x);

}  // namespace pdtkit
