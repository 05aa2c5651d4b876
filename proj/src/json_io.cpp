#include "frugal/json_io.hpp"

#include "frugal/errors.hpp"

#include <cstdio>
#include <fstream>
#include <string>

namespace frugal {

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read '" + path.string() + "'");
    try {
        return Json::parse(in);
    }
    catch (const Json::parse_error& error) {
        throw InputError("malformed JSON in '" + path.string() + "': " + error.what());
    }
}

Rational rational_from_json(const Json& value)
{
    if (value.is_string())
        return parse_rational(value.get<std::string>());
    if (value.is_number_integer())
        return Rational(BigInt(value.dump()));
    throw InputError("expected a rational \"p/q\" or an integer, got " + value.dump());
}

Json rational_to_json(const Rational& value) { return format_rational(value); }

Json approx_to_json(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return std::stod(buffer);
}

namespace {

const std::string& string_field(const Json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
        throw InputError(std::string("missing or non-string field '") + key + "'");
    return it->get_ref<const std::string&>();
}

void require_object(const Json& doc, const char* what)
{
    if (!doc.is_object())
        throw InputError(std::string(what) + " must be a JSON object");
}

} // namespace

Graph graph_from_json(const Json& doc)
{
    require_object(doc, "graph");
    bool directed = true;
    if (auto it = doc.find("directed"); it != doc.end()) {
        if (!it->is_boolean())
            throw InputError("'directed' must be a boolean");
        directed = it->get<bool>();
    }
    Graph g(directed);
    if (auto it = doc.find("vertices"); it != doc.end()) {
        if (!it->is_array())
            throw InputError("'vertices' must be an array");
        for (const auto& v : *it) {
            if (!v.is_string())
                throw InputError("vertex names must be strings");
            if (g.find_vertex(v.get<std::string>()))
                throw InputError("duplicate vertex '" + v.get<std::string>() + "'");
            g.add_vertex(v.get<std::string>());
        }
    }
    auto edges = doc.find("edges");
    if (edges == doc.end() || !edges->is_array())
        throw InputError("graph needs an 'edges' array");
    for (const auto& e : *edges) {
        require_object(e, "edge");
        const auto& id = string_field(e, "id");
        if (g.find_edge(id))
            throw InputError("duplicate edge id '" + id + "'");
        int tail = g.ensure_vertex(string_field(e, "tail"));
        int head = g.ensure_vertex(string_field(e, "head"));
        g.add_edge(id, tail, head);
    }
    bool has_source = doc.contains("source");
    bool has_sink = doc.contains("sink");
    if (has_source != has_sink)
        throw InputError("'source' and 'sink' must be given together");
    if (has_source) {
        const auto& s = string_field(doc, "source");
        const auto& t = string_field(doc, "sink");
        g.ensure_vertex(s);
        g.ensure_vertex(t);
        if (s == t)
            throw InputError("source and sink must differ");
        g.set_terminals(s, t);
    }
    return g;
}

CostVector edge_costs_from_json(const Json& doc)
{
    CostVector costs;
    for (const auto& e : doc.at("edges"))
        if (auto it = e.find("cost"); it != e.end())
            costs[string_field(e, "id")] = rational_from_json(*it);
    return costs;
}

Json graph_to_json(const Graph& g, const CostVector& costs)
{
    Json doc;
    doc["directed"] = g.directed();
    doc["vertices"] = g.vertex_names();
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        Json item{{"id", e.id}, {"tail", g.vertex_name(e.tail)}, {"head", g.vertex_name(e.head)}};
        if (auto it = costs.find(e.id); it != costs.end())
            item["cost"] = rational_to_json(it->second);
        edges.push_back(std::move(item));
    }
    doc["edges"] = std::move(edges);
    if (g.has_terminals()) {
        doc["source"] = g.vertex_name(g.source());
        doc["sink"] = g.vertex_name(g.sink());
    }
    return doc;
}

CostVector costs_from_json(const Json& doc)
{
    require_object(doc, "cost file");
    CostVector costs;
    for (const auto& [id, value] : doc.items()) {
        Rational c = rational_from_json(value);
        if (sgn(c) < 0)
            throw InputError("negative cost for '" + id + "'");
        costs[id] = c;
    }
    return costs;
}

Json costs_to_json(const CostVector& costs)
{
    Json doc = Json::object();
    for (const auto& [id, value] : costs)
        doc[id] = rational_to_json(value);
    return doc;
}

SetSystem system_from_json(const Json& doc)
{
    require_object(doc, "system");
    SystemKind kind = parse_system_kind(string_field(doc, "kind"));
    auto graph = doc.find("graph");
    if (graph == doc.end())
        throw InputError("system needs a 'graph'");
    Graph g = graph_from_json(*graph);
    switch (kind) {
    case SystemKind::VertexCover:
        return SetSystem::vertex_cover(std::move(g));
    case SystemKind::KFlow: {
        auto k = doc.find("k");
        if (k == doc.end() || !k->is_number_integer() || k->get<int>() < 1)
            throw InputError("k-flow system needs a positive integer 'k'");
        return SetSystem::k_flow(std::move(g), k->get<int>());
    }
    case SystemKind::Cut:
        return SetSystem::cut(std::move(g));
    }
    throw InputError("unknown system kind");
}

Json string_set_to_json(const std::set<std::string>& items)
{
    Json out = Json::array();
    for (const auto& item : items)
        out.push_back(item);
    return out;
}

} // namespace frugal
