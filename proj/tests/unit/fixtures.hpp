#pragma once

#include "frugal/graph.hpp"
#include "frugal/rational.hpp"

#include <initializer_list>
#include <string>
#include <tuple>

namespace fixtures {

using frugal::CostVector;
using frugal::Graph;
using frugal::Rational;

inline Graph undirected(std::initializer_list<const char*> vertices,
                        std::initializer_list<std::pair<const char*, const char*>> edges)
{
    Graph g(false);
    for (const char* v : vertices)
        g.add_vertex(v);
    for (auto [a, b] : edges)
        g.add_edge(std::string(a) + b, a, b);
    return g;
}

inline Graph triangle() { return undirected({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}); }

inline Graph star3() { return undirected({"c", "l1", "l2", "l3"}, {{"c", "l1"}, {"c", "l2"}, {"c", "l3"}}); }

inline Graph single_edge() { return undirected({"a", "b"}, {{"a", "b"}}); }

inline Graph five_cycle()
{
    return undirected({"a", "b", "c", "d", "e"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"a", "e"}});
}

/// Directed network on the given vertices with terminals s and t; edges are (id, tail, head).
inline Graph network(std::initializer_list<const char*> vertices,
                     std::initializer_list<std::tuple<const char*, const char*, const char*>> edges)
{
    Graph g(true);
    for (const char* v : vertices)
        g.add_vertex(v);
    g.set_terminals("s", "t");
    for (auto [id, tail, head] : edges)
        g.add_edge(id, tail, head);
    return g;
}

inline Graph st_path() { return network({"s", "a", "b", "t"}, {{"sa", "s", "a"}, {"ab", "a", "b"}, {"bt", "b", "t"}}); }

inline Graph diamond()
{
    return network({"s", "a", "b", "t"}, {{"sa", "s", "a"}, {"at", "a", "t"}, {"sb", "s", "b"}, {"bt", "b", "t"}});
}

inline Graph parallel(int count)
{
    Graph g(true);
    g.add_vertex("s");
    g.add_vertex("t");
    g.set_terminals("s", "t");
    for (int i = 1; i <= count; ++i)
        g.add_edge("e" + std::to_string(i), "s", "t");
    return g;
}

inline CostVector costs(std::initializer_list<std::pair<const char*, long>> items)
{
    CostVector out;
    for (auto [id, value] : items)
        out[id] = value;
    return out;
}

} // namespace fixtures
