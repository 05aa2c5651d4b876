#pragma once

#include "frugal/graph.hpp"
#include "frugal/rational.hpp"

#include <random>
#include <string>
#include <vector>

namespace frugal {

/// Zero-padded ids ("e00", "e01", ...) so string order matches numeric order.
std::string padded_id(char prefix, int index);

/// Every connected graph on n vertices up to isomorphism (n <= 6), as undirected
/// graphs on "v0".."v{n-1}" with edges "e00", "e01", ...
std::vector<Graph> connected_graphs_up_to_isomorphism(int n);

/// Random undirected graph on n vertices with each pair joined with probability p.
Graph random_undirected_graph(std::mt19937_64& rng, int n, double p);

/// Random connected undirected graph on n vertices (a random spanning tree plus extra edges).
Graph random_connected_graph(std::mt19937_64& rng, int n, double extra_edge_probability);

/// Random directed multigraph on "s", "a", "b", ..., "t" whose max s-t flow is at
/// least `min_flow`; at most `max_vertices` vertices and `max_edges` edges.
Graph random_flow_network(std::mt19937_64& rng, int min_flow, int max_vertices, int max_edges);

/// Random DAG from "s" to "t" (edges only go forward in a fixed vertex order),
/// parallel edges allowed, no s-t edge, at least one s-t path.
Graph random_st_dag(std::mt19937_64& rng, int max_vertices, int max_edges);

/// Random rationals p/q, p in [0, max_numerator], q in [1, max_denominator].
CostVector random_costs(std::mt19937_64& rng, const std::vector<std::string>& agents, int max_numerator = 20,
                        int max_denominator = 4);

/// Every edge of g priced from `costs`-style random draws.
CostVector random_edge_costs(std::mt19937_64& rng, const Graph& g, int max_numerator = 20, int max_denominator = 4);

/// Three edge-disjoint s-t paths: s->t (u), s->a (v), s->b (w), a->t (x), b->t (y).
Graph three_path_network();

} // namespace frugal
