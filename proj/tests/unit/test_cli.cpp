#include "frugal/cli.hpp"
#include "frugal/generators.hpp"
#include "frugal/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace frugal;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text)
{
    auto dir = std::filesystem::temp_directory_path() / "frugal-cli-tests";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << text;
    return path.string();
}

const char* triangle_system = R"({"kind":"vertex-cover","graph":{"directed":false,"vertices":["a","b","c"],
  "edges":[{"id":"ab","tail":"a","head":"b"},{"id":"bc","tail":"b","head":"c"},{"id":"ac","tail":"a","head":"c"}]}})";

const char* weighted_path = R"({"directed":true,"vertices":["s","a","b","t"],"source":"s","sink":"t",
  "edges":[{"id":"sa","tail":"s","head":"a","cost":1},{"id":"ab","tail":"a","head":"b","cost":"5/1"},
           {"id":"bt","tail":"b","head":"t","cost":2}]})";

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("nu on the triangle with a unit cost vector")
    {
        auto sys = write_temp("tri.json", triangle_system);
        auto costs = write_temp("unit.json", R"({"a":1,"b":"0","c":0})");
        auto r = run({"nu", "--system", sys, "--costs", costs});
        REQUIRE(r.status == ExitOk);
        auto doc = Json::parse(r.out);
        CHECK(doc["nu"] == "2/1");
        CHECK(doc["winning_set"] == Json::array({"b", "c"}));
    }

    TEST_CASE("flow auction on the three-path network keeps every edge")
    {
        auto graph = write_temp("fig.json", graph_to_json(three_path_network()).dump());
        auto bids = write_temp("fig-bids.json", R"({"u":0,"v":1,"w":0,"x":0,"y":0})");
        auto r = run({"flow-auction", "--graph", graph, "--bids", bids, "-k", "2"});
        REQUIRE(r.status == ExitOk);
        auto doc = Json::parse(r.out);
        CHECK(doc["pruned_edges"] == Json::array({"u", "v", "w", "x", "y"}));
        CHECK(doc["approx"] == true);
        CHECK(doc.contains("nu_H"));
        CHECK(doc.contains("nu_G"));
    }

    TEST_CASE("double cut of the weighted path from embedded costs")
    {
        auto graph = write_temp("path.json", weighted_path);
        auto r = run({"double-cut", "--graph", graph});
        REQUIRE(r.status == ExitOk);
        auto doc = Json::parse(r.out);
        CHECK(doc["cost"] == "3/1");
        CHECK(doc["certified"] == true);
        CHECK(doc["double_cut"] == Json::array({"bt", "sa"}));
    }

    TEST_CASE("auctions emit the documented fields")
    {
        auto graph = write_temp("path2.json", weighted_path);
        auto bids = write_temp("path-bids.json", R"({"sa":1,"ab":5,"bt":2})");
        auto cut = Json::parse(run({"cut-auction", "--graph", graph, "--bids", bids}).out);
        for (const char* key : {"double_cut", "cuts", "certified", "method", "winners", "payments"})
            CHECK(cut.contains(key));
        CHECK(cut["payments"]["sa"] == 2.0);

        auto tri = Json::parse(triangle_system)["graph"].dump();
        auto vc_graph = write_temp("tri-graph.json", tri);
        auto vc_bids = write_temp("tri-bids.json", R"({"a":1,"b":0,"c":0})");
        auto vc = Json::parse(run({"vc-auction", "--graph", vc_graph, "--bids", vc_bids}).out);
        CHECK(vc["lambda"] == 1.0);
        CHECK(vc["winners"] == Json::array({"b", "c"}));
        CHECK(vc["payments"]["b"] == 1.0);

        auto tot = write_temp("tri-tot.json", R"({"a":2,"b":2,"c":2})");
        auto with_file = run({"vc-auction", "--graph", vc_graph, "--bids", vc_bids, "--tot", tot});
        CHECK(with_file.out == run({"vc-auction", "--graph", vc_graph, "--bids", vc_bids}).out);
    }

    TEST_CASE("table output")
    {
        auto graph = write_temp("path3.json", weighted_path);
        auto r = run({"--format", "table", "double-cut", "--graph", graph});
        REQUIRE(r.status == ExitOk);
        CHECK(r.out.find("cost\t3/1\n") != std::string::npos);
    }

    TEST_CASE("exit statuses")
    {
        CHECK(run({}).status == ExitInput);
        CHECK(run({"nu", "--system", "/nonexistent.json", "--costs", "/nonexistent.json"}).status == ExitInput);
        auto bad = write_temp("bad.json", "{not json");
        auto r = run({"double-cut", "--graph", bad});
        CHECK(r.status == ExitInput);
        CHECK(!r.err.empty());

        auto monopoly = write_temp("mono.json", R"({"vertices":["s","t"],"source":"s","sink":"t",
            "edges":[{"id":"e","tail":"s","head":"t","cost":1}]})");
        CHECK(run({"double-cut", "--graph", monopoly}).status == ExitInput);

        std::string big = R"({"kind":"vertex-cover","graph":{"directed":false,"edges":[)";
        for (int i = 0; i < 24; ++i)
            big += std::string(i ? "," : "") + R"({"id":"e)" + std::to_string(i) + R"(","tail":"v)" +
                   std::to_string(i) + R"(","head":"v)" + std::to_string(i + 1) + R"("})";
        big += "]}}";
        auto sys = write_temp("big.json", big);
        std::string zero = "{";
        for (int i = 0; i <= 24; ++i)
            zero += std::string(i ? "," : "") + "\"v" + std::to_string(i) + "\":1";
        zero += "}";
        auto costs = write_temp("big-costs.json", zero);
        CHECK(run({"nu", "--system", sys, "--costs", costs}).status == ExitScale);
    }

    TEST_CASE("verify is deterministic and passes on a small run")
    {
        std::vector<std::string> args{"verify", "--suite", "all", "--seed", "5", "--trials", "3", "--instances", "1"};
        auto first = run(args);
        auto second = run(args);
        CHECK(first.status == ExitOk);
        CHECK(first.out == second.out);
        auto doc = Json::parse(first.out);
        CHECK(doc["passed"] == true);
        CHECK(doc["reports"].size() == 3);
    }

    TEST_CASE("frugality command")
    {
        auto sys = write_temp("tri-sys.json", triangle_system);
        auto r = run({"frugality", "--system", sys, "--sampler", "unit"});
        REQUIRE(r.status == ExitOk);
        CHECK(Json::parse(r.out)["ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("graph JSON round trip")
    {
        Graph g = three_path_network();
        CostVector c{{"u", 1}, {"v", make_rational(1, 2)}};
        Json doc = graph_to_json(g, c);
        Graph back = graph_from_json(Json::parse(doc.dump()));
        CHECK(back.sorted_edge_ids() == g.sorted_edge_ids());
        CHECK(edge_costs_from_json(doc) == c);
        CHECK(graph_to_json(back, c) == doc);
    }
}
