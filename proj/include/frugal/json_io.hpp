#pragma once

#include "frugal/graph.hpp"
#include "frugal/rational.hpp"
#include "frugal/set_system.hpp"

#include <json.hpp>

#include <filesystem>
#include <set>
#include <string>

namespace frugal {

using Json = nlohmann::json;

/// Parses a file as JSON; unreadable or malformed files are InputErrors.
Json read_json_file(const std::filesystem::path& path);

/// A rational given as "p/q", "p" or a JSON integer.
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);

/// Float rounded to 12 significant digits.
Json approx_to_json(double value);

/// {"directed", "vertices", "edges": [{"id", "tail", "head", "cost"}], "source", "sink"}.
/// "directed" defaults to true; endpoints not listed under "vertices" are added
/// in order of first use.
Graph graph_from_json(const Json& doc);
/// The "cost" fields of the edges; edges without one are left out.
CostVector edge_costs_from_json(const Json& doc);
Json graph_to_json(const Graph& g, const CostVector& costs = {});

/// An object mapping agent ids to rationals.
CostVector costs_from_json(const Json& doc);
Json costs_to_json(const CostVector& costs);

/// {"kind": "vertex-cover" | "k-flow" | "cut", "k": int, "graph": {...}}.
SetSystem system_from_json(const Json& doc);

Json string_set_to_json(const std::set<std::string>& items);

} // namespace frugal
