#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pdtkit/comm.hpp"
#include "pdtkit/core.hpp"
#include "pdtkit/pdt.hpp"
#include "pdtkit/rank.hpp"
#include "pdtkit/verify.hpp"

namespace pdtkit {

using Json = nlohmann::ordered_json;

/// Stats of both ranges; rationals as "num/den".
Json analyze_json(const BooleanFunction& f);

/// {n, strategy?, depth, size, root}; internal nodes are
/// {"query": bits, "children": [child0, child1]}, leaves {"leaf": bit}.
Json tree_json(const Pdt& tree, std::optional<Strategy> strategy = std::nullopt);
/// Inverse of tree_json; throws parse_error or invalid_tree.
Pdt tree_from_json(const Json& json);

/// Digraph with internal nodes labeled by query bitstrings and 0/1 edges.
std::string tree_dot(const Pdt& tree);

Json check_json(const PdtCheck& check, unsigned n);
Json certificate_json(const Certificate& cert, const BooleanFunction& f, const char* method);
Json halving_json(const HalvingResult& result, const BooleanFunction& f);
Json rank_json(const RankResult& rank, unsigned n);
Json transcript_json(const Transcript& t, Mask x, Mask y, unsigned n, unsigned expected);
Json report_json(const InvariantReport& report);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& json);

}  // namespace pdtkit
