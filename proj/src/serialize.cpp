#include "pdtkit/serialize.hpp"

#include <functional>
#include <sstream>

#include "pdtkit/error.hpp"

namespace pdtkit {
namespace {

Json constraint_list(std::span<const AffineConstraint> constraints, unsigned n) {
  Json out = Json::array();
  for (const auto& c : constraints) out.push_back(to_string(c, n));
  return out;
}

Json stats_json(const SpectralStats& s, int denom_exp) {
  Json out;
  out["l0"] = s.l0;
  out["l1"] = dyadic_string(s.l1_num, denom_exp);
  out["linf"] = dyadic_string(s.linf_num, denom_exp);
  out["granularity"] = s.granularity;
  return out;
}

}  // namespace

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

Json analyze_json(const BooleanFunction& f) {
  const Spectrum s = wht(f);
  const auto st = spectral_stats(s);
  const int k = static_cast<int>(f.arity());
  Json out;
  out["n"] = f.arity();
  out["deg2"] = deg2(f);
  out["l0"] = st.l0;
  out["l1"] = dyadic_string(st.l1_num, k);
  out["linf"] = dyadic_string(st.linf_num, k);
  out["granularity"] = st.granularity;
  out["density"] = dyadic_string(static_cast<std::int64_t>(f.ones()), k);
  out["pm"] = stats_json(spectral_stats(to_pm_spectrum(s)), k);
  return out;
}

Json tree_json(const Pdt& tree, std::optional<Strategy> strategy) {
  const unsigned n = tree.arity();
  std::function<Json(std::int32_t)> node = [&](std::int32_t i) {
    const auto& nd = tree.node(i);
    Json out;
    if (nd.leaf) {
      out["leaf"] = nd.value;
    } else {
      out["query"] = to_bitstring(nd.query, n);
      out["children"] = Json::array({node(nd.child[0]), node(nd.child[1])});
    }
    return out;
  };
  Json out;
  out["n"] = n;
  if (strategy) out["strategy"] = strategy_name(*strategy);
  out["depth"] = tree.depth();
  out["size"] = tree.leaf_count();
  out["root"] = node(tree.root());
  return out;
}

Pdt tree_from_json(const Json& json) {
  try {
    if (!json.is_object() || !json.contains("n") || !json.contains("root")) {
      fail(ErrorCode::parse_error, "tree JSON needs \"n\" and \"root\"");
    }
    const auto n = json.at("n").get<unsigned>();
    if (n > kMaxVars) fail(ErrorCode::invalid_tree, "tree arity exceeds " + std::to_string(kMaxVars));
    Pdt tree(n);
    std::function<std::int32_t(const Json&, std::size_t)> node = [&](const Json& j, std::size_t depth) {
      if (depth > n) fail(ErrorCode::invalid_tree, "tree deeper than its arity");
      if (j.contains("leaf")) {
        const auto v = j.at("leaf").get<unsigned>();
        if (v > 1) fail(ErrorCode::invalid_tree, "leaf value must be 0 or 1");
        return tree.add_leaf(v);
      }
      const auto bits = j.at("query").get<std::string>();
      if (bits.size() != n) fail(ErrorCode::invalid_tree, "query \"" + bits + "\" has the wrong length");
      const Mask q = parse_bitstring(bits);
      const auto& kids = j.at("children");
      if (!kids.is_array() || kids.size() != 2) fail(ErrorCode::invalid_tree, "internal node needs two children");
      const auto c0 = node(kids[0], depth + 1);
      const auto c1 = node(kids[1], depth + 1);
      return tree.add_query(q, c0, c1);
    };
    tree.set_root(node(json.at("root"), 0));
    tree.validate();
    return tree;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("malformed tree JSON: ") + e.what());
  }
}

std::string tree_dot(const Pdt& tree) {
  std::ostringstream out;
  out << "digraph pdt {\n  node [fontname=\"monospace\"];\n";
  std::int32_t next = 0;
  std::function<std::int32_t(std::int32_t)> emit = [&](std::int32_t i) {
    const std::int32_t id = next++;
    const auto& nd = tree.node(i);
    if (nd.leaf) {
      out << "  n" << id << " [shape=box,label=\"" << nd.value << "\"];\n";
      return id;
    }
    out << "  n" << id << " [shape=ellipse,label=\"" << to_bitstring(nd.query, tree.arity()) << "\"];\n";
    for (unsigned b = 0; b < 2; ++b) {
      const std::int32_t child = emit(nd.child[b]);
      out << "  n" << id << " -> n" << child << " [label=\"" << b << "\"];\n";
    }
    return id;
  };
  emit(tree.root());
  out << "}\n";
  return out.str();
}

Json check_json(const PdtCheck& check, unsigned n) {
  Json out;
  out["correct"] = check.correct;
  out["depth"] = check.depth;
  out["size"] = check.size;
  out["first_mismatch"] = check.first_mismatch ? Json(to_bitstring(*check.first_mismatch, n)) : Json(nullptr);
  out["sparsity_bound"] = check.sparsity_bound_holds;
  return out;
}

Json certificate_json(const Certificate& cert, const BooleanFunction& f, const char* method) {
  const auto l1 = spectral_stats(pm_spectrum(f)).l1_num;
  Json out;
  out["method"] = method;
  out["value"] = cert.value;
  out["codim"] = cert.codim();
  out["constraints"] = constraint_list(cert.constraints, f.arity());
  out["verified"] = certificate_holds(cert, f);
  out["pm_l1"] = dyadic_string(l1, static_cast<int>(f.arity()));
  return out;
}

Json halving_json(const HalvingResult& result, const BooleanFunction& f) {
  Json out = certificate_json(result.certificate, f, "norm-halving");
  const int k = static_cast<int>(f.arity());
  Json steps = Json::array();
  for (const auto& s : result.steps) {
    Json step;
    step["direction"] = to_bitstring(s.direction, f.arity());
    step["branch"] = s.branch;
    step["derivative_codim"] = s.derivative_cert_codim;
    step["l1_before"] = dyadic_string(s.l1_before, k);
    step["l1_half"] = dyadic_string(s.l1_half, k);
    step["l1_after"] = dyadic_string(s.l1_after, k);
    steps.push_back(std::move(step));
  }
  out["steps"] = std::move(steps);
  return out;
}

Json rank_json(const RankResult& rank, unsigned n) {
  Json out;
  out["rank"] = rank.rank;
  out["witness"] = constraint_list(rank.witness, n);
  return out;
}

Json transcript_json(const Transcript& t, Mask x, Mask y, unsigned n, unsigned expected) {
  Json out;
  out["x"] = to_bitstring(x, n);
  out["y"] = to_bitstring(y, n);
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    Json round;
    round["mask"] = to_bitstring(r.mask, n);
    round["alice"] = r.alice;
    round["bob"] = r.bob;
    rounds.push_back(std::move(round));
  }
  out["rounds"] = std::move(rounds);
  out["output"] = t.output;
  out["expected"] = expected;
  out["cost_bits"] = t.cost_bits;
  return out;
}

Json report_json(const InvariantReport& report) {
  Json out;
  out["overall"] = report.overall;
  out["best_depth"] = report.best_depth < 0 ? Json(nullptr) : Json(report.best_depth);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json check;
    check["name"] = c.name;
    check["lhs"] = c.lhs;
    check["rhs"] = c.rhs;
    check["holds"] = c.holds;
    checks.push_back(std::move(check));
  }
  out["checks"] = std::move(checks);
  return out;
}

}  // namespace pdtkit
