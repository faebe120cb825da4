#pragma once

#include "schreier/graph.hpp"

#include <json.hpp>

#include <string_view>

namespace schreier {

/// {"m": .., "basepoint": .., "edges": [{"from", "label", "to"}, ...]} with
/// positive labels only, vertices visited in BFS order from the basepoint.
nlohmann::json graph_to_json(const FiniteGraph& g);

/// Same layout for the explored part of a lazy graph, plus "radius" and the
/// list of "stems" (edges entering hanging branches that were not expanded).
nlohmann::json ball_to_json(const Ball& b);

/// Validates labels, determinism and connectivity; throws ParseError or
/// DomainError with the offending edge. An object without "edges" but with
/// a "graph" member is read through that member.
FiniteGraph graph_from_json(const nlohmann::json& j);
FiniteGraph graph_from_json_text(std::string_view text);

}  // namespace schreier
