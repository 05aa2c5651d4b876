#include "frugal/cli.hpp"

#include "frugal/cut_mech.hpp"
#include "frugal/eigen_mech.hpp"
#include "frugal/errors.hpp"
#include "frugal/flow_mech.hpp"
#include "frugal/generators.hpp"
#include "frugal/json_io.hpp"
#include "frugal/oracle.hpp"
#include "frugal/set_system.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <random>

namespace frugal {

namespace {

struct RunConfig {
    std::string graph_path;
    std::string bids_path;
    std::string costs_path;
    std::string system_path;
    std::string tot = "auto";
    std::string suite = "all";
    std::string sampler = "random";
    std::string format = "json";
    int k = 1;
    int trials = 10;
    int instances = 3;
    int samples = 50;
    std::uint64_t seed = 1;
};

class VerificationFailed : public std::runtime_error {
public:
    explicit VerificationFailed(Json report) : std::runtime_error("verification failed"), report(std::move(report)) {}
    Json report;
};

std::map<std::string, Rational> tot_auto(const Graph& conflict)
{
    auto sys = SetSystem::vertex_cover(conflict);
    auto nbrs = conflict.neighbours();
    std::map<std::string, Rational> tot;
    for (int v = 0; v < conflict.vertex_count(); ++v)
        if (!nbrs[v].empty())
            tot[conflict.vertex_name(v)] = frugal::tot(sys, conflict.vertex_name(v));
    return tot;
}

VcInstance vc_instance_from(const Graph& conflict, const std::string& tot_source)
{
    std::map<std::string, Rational> tot =
        tot_source == "auto" ? tot_auto(conflict) : costs_from_json(read_json_file(tot_source));
    auto inst = VcInstance::build(conflict, tot);
    return inst.with_solver(make_brute_force_solver(inst));
}

Json payments_json(const AuctionOutcome& outcome)
{
    Json payments = Json::object();
    for (const auto& [id, pay] : outcome.payments)
        payments[id] = approx_to_json(pay);
    return payments;
}

Json outcome_json(const AuctionOutcome& outcome)
{
    Json doc;
    doc["winners"] = string_set_to_json(outcome.winners);
    doc["payments"] = payments_json(outcome);
    doc["total"] = approx_to_json(outcome.total);
    doc["approx"] = true;
    return doc;
}

Json cuts_json(const DoubleCutResult& dc)
{
    return Json{{"s1", string_set_to_json(dc.s1)}, {"s2", string_set_to_json(dc.s2)}};
}

Json double_cut_json(const DoubleCutResult& dc)
{
    Json doc;
    doc["double_cut"] = string_set_to_json(dc.double_cut);
    doc["cuts"] = cuts_json(dc);
    doc["cost"] = rational_to_json(dc.cost);
    doc["flow_value"] = rational_to_json(dc.flow_value);
    doc["total_relief"] = rational_to_json(dc.total_relief);
    doc["dual_objective"] = rational_to_json(dc.dual_objective);
    doc["certified"] = dc.certified;
    doc["method"] = to_string(dc.method);
    doc["extraction"] = to_string(dc.extraction);
    doc["cuts_disjoint"] = dc.cuts_disjoint;
    return doc;
}

Json cmd_vc_auction(const RunConfig& cfg)
{
    Graph conflict = graph_from_json(read_json_file(cfg.graph_path));
    CostVector bids = costs_from_json(read_json_file(cfg.bids_path));
    auto inst = vc_instance_from(conflict, cfg.tot);
    auto outcome = ev_run(inst, bids);
    Json doc = outcome_json(outcome);
    doc["lambda"] = approx_to_json(inst.max_lambda());
    Json lambdas = Json::array();
    for (double l : outcome.lambdas)
        lambdas.push_back(approx_to_json(l));
    doc["component_lambdas"] = std::move(lambdas);
    return doc;
}

Json cmd_flow_auction(const RunConfig& cfg)
{
    Graph g = graph_from_json(read_json_file(cfg.graph_path));
    CostVector bids = costs_from_json(read_json_file(cfg.bids_path));
    if (cfg.k < 1)
        throw InputError("-k must be positive");
    auto result = fm_run(g, cfg.k, bids);
    Json doc = outcome_json(result.outcome);
    doc["k"] = cfg.k;
    doc["pruned_edges"] = string_set_to_json(result.pruned);
    Rational nu_h = nu_flow_fast(g, result.pruned, cfg.k, bids);
    doc["nu_H"] = rational_to_json(nu_h);
    if (g.edge_count() <= default_caps().max_flow_enum_edges) {
        Rational nu_g = nu(SetSystem::k_flow(g, cfg.k), bids).value;
        doc["nu_G"] = rational_to_json(nu_g);
        if (sgn(nu_g) > 0)
            doc["ratio"] = approx_to_json(result.outcome.total / to_double(nu_g));
    }
    return doc;
}

Json cmd_cut_auction(const RunConfig& cfg)
{
    Graph g = graph_from_json(read_json_file(cfg.graph_path));
    CostVector bids = costs_from_json(read_json_file(cfg.bids_path));
    auto result = cm_run(g, bids);
    Json doc = outcome_json(result.outcome);
    doc["double_cut"] = string_set_to_json(result.double_cut.double_cut);
    doc["cuts"] = cuts_json(result.double_cut);
    doc["certified"] = result.double_cut.certified;
    doc["method"] = to_string(result.double_cut.method);
    return doc;
}

Json cmd_nu(const RunConfig& cfg)
{
    SetSystem sys = system_from_json(read_json_file(cfg.system_path));
    CostVector costs = costs_from_json(read_json_file(cfg.costs_path));
    auto result = nu(sys, costs);
    return Json{{"nu", rational_to_json(result.value)},
                {"bids", costs_to_json(result.bids)},
                {"winning_set", string_set_to_json(result.winning_set)}};
}

Json cmd_double_cut(const RunConfig& cfg)
{
    Json graph_doc = read_json_file(cfg.graph_path);
    Graph g = graph_from_json(graph_doc);
    CostVector costs =
        cfg.costs_path.empty() ? edge_costs_from_json(graph_doc) : costs_from_json(read_json_file(cfg.costs_path));
    return double_cut_json(min_double_cut(g, costs));
}

Json violation_json(const Violation& v)
{
    return Json{{"kind", v.kind},
                {"agent", v.agent},
                {"original_bid", rational_to_json(v.original_bid)},
                {"perturbed_bid", rational_to_json(v.perturbed_bid)},
                {"original_winners", string_set_to_json(v.original_winners)},
                {"perturbed_winners", string_set_to_json(v.perturbed_winners)},
                {"detail", v.detail}};
}

Json report_json(const std::string& suite, const PerturbationReport& report, std::vector<Violation> extra)
{
    Json violations = Json::array();
    for (const auto& v : report.violations)
        violations.push_back(violation_json(v));
    for (const auto& v : extra)
        violations.push_back(violation_json(v));
    return Json{{"suite", suite},
                {"instance", report.instance},
                {"seed", report.seed},
                {"trials", report.trials},
                {"checks", report.checks},
                {"max_threshold_gap", approx_to_json(report.max_threshold_gap)},
                {"violations", std::move(violations)}};
}

Violation equivalence_violation(std::string kind, std::string detail)
{
    return Violation{std::move(kind), "", 0, 0, {}, {}, std::move(detail)};
}

Json verify_vc(std::mt19937_64& rng, const RunConfig& cfg, int index)
{
    int n = std::uniform_int_distribution<int>(3, 6)(rng);
    Graph conflict = random_connected_graph(rng, n, 0.4);
    auto inst = vc_instance_from(conflict, "auto");
    std::uint64_t seed = rng();
    MechanismUnderTest mut{"vc-" + std::to_string(index), all_agents(inst),
                           [inst](const CostVector& b) { return ev_run(inst, b); }};
    auto report = check_truthfulness(mut, cfg.trials, seed);
    std::vector<Violation> extra;
    double units = ev_frugality_on_units(inst);
    if (std::abs(units - inst.max_lambda()) > 1e-9)
        extra.push_back(equivalence_violation("frugality-identity", "unit-vector ratio differs from lambda"));
    return report_json("vc", report, std::move(extra));
}

Json verify_flow(std::mt19937_64& rng, const RunConfig& cfg, int index)
{
    int k = std::uniform_int_distribution<int>(1, 2)(rng);
    Graph g = random_flow_network(rng, k + 1, 6, 9);
    std::uint64_t seed = rng();
    MechanismUnderTest mut{"flow-" + std::to_string(index) + "-k" + std::to_string(k), g.sorted_edge_ids(),
                           [g, k](const CostVector& b) { return fm_run(g, k, b).outcome; }};
    auto report = check_truthfulness(mut, cfg.trials, seed);
    std::vector<Violation> extra;
    CostVector costs = random_edge_costs(rng, g);
    auto h = min_cost_kplus1_flow(g, k, costs);
    std::vector<std::string> ids(h.begin(), h.end());
    Rational lp = nu(SetSystem::k_flow(g.edge_subgraph(ids), k), restrict_costs(costs, h)).value;
    if (lp != nu_flow_fast(g, h, k, costs))
        extra.push_back(equivalence_violation("nu-fast-mismatch", "longest-path nu differs from the LP on H"));
    return report_json("flow", report, std::move(extra));
}

Json verify_cut(std::mt19937_64& rng, const RunConfig& cfg, int index)
{
    Graph g = random_st_dag(rng, 6, 9);
    std::uint64_t seed = rng();
    MechanismUnderTest mut{"cut-" + std::to_string(index), g.sorted_edge_ids(),
                           [g](const CostVector& b) { return cm_run(g, b).outcome; }};
    auto report = check_truthfulness(mut, cfg.trials, seed);
    std::vector<Violation> extra;
    CostVector costs = random_edge_costs(rng, g);
    auto dc = min_double_cut(g, costs);
    if (dc.cost != brute_double_cut(g, costs).cost)
        extra.push_back(equivalence_violation("double-cut-mismatch", "primal-dual cost differs from enumeration"));
    if (!dc.certified)
        extra.push_back(equivalence_violation("double-cut-uncertified", "cost differs from the dual objective"));
    return report_json("cut", report, std::move(extra));
}

Json cmd_verify(const RunConfig& cfg)
{
    if (cfg.trials < 1 || cfg.instances < 1)
        throw InputError("--trials and --instances must be positive");
    std::vector<std::string> suites;
    if (cfg.suite == "all")
        suites = {"vc", "flow", "cut"};
    else
        suites = {cfg.suite};
    Json reports = Json::array();
    bool passed = true;
    for (const auto& suite : suites) {
        std::mt19937_64 rng(cfg.seed);
        for (int i = 0; i < cfg.instances; ++i) {
            Json r = suite == "vc" ? verify_vc(rng, cfg, i) : suite == "flow" ? verify_flow(rng, cfg, i)
                                                                             : verify_cut(rng, cfg, i);
            passed = passed && r["violations"].empty();
            reports.push_back(std::move(r));
        }
    }
    Json doc{{"suite", cfg.suite}, {"seed", cfg.seed}, {"passed", passed}, {"reports", std::move(reports)}};
    if (!passed)
        throw VerificationFailed(std::move(doc));
    return doc;
}

Json cmd_frugality(const RunConfig& cfg)
{
    SetSystem sys = system_from_json(read_json_file(cfg.system_path));
    MechanismUnderTest mut;
    Json doc;
    switch (sys.kind()) {
    case SystemKind::VertexCover: {
        auto inst = vc_instance_from(sys.graph(), "auto");
        mut = {"ev", all_agents(inst), [inst](const CostVector& b) { return ev_run(inst, b); }};
        doc["lambda"] = approx_to_json(inst.max_lambda());
        break;
    }
    case SystemKind::KFlow: {
        Graph g = sys.graph();
        int k = sys.k();
        mut = {"fm", sys.agents(), [g, k](const CostVector& b) { return fm_run(g, k, b).outcome; }};
        break;
    }
    case SystemKind::Cut: {
        Graph g = sys.graph();
        mut = {"cm", sys.agents(), [g](const CostVector& b) { return cm_run(g, b).outcome; }};
        break;
    }
    }
    CostSampler sampler =
        cfg.sampler == "unit" ? unit_vector_sampler(sys.agents()) : random_cost_sampler(sys.agents());
    int samples = cfg.sampler == "unit" ? sys.agent_count() : cfg.samples;
    doc["mechanism"] = mut.name;
    doc["sampler"] = cfg.sampler;
    doc["samples"] = samples;
    doc["seed"] = cfg.seed;
    doc["ratio"] = approx_to_json(measure_frugality(mut, sys, sampler, samples, cfg.seed));
    doc["approx"] = true;
    return doc;
}

void emit(const Json& doc, const std::string& format, std::ostream& out)
{
    if (format == "table") {
        for (const auto& [key, value] : doc.items())
            out << key << '\t' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        return;
    }
    out << doc.dump(2) << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Truthful frugal auctions for vertex cover, k-flow and s-t cut set systems", "frugal"};
    app.require_subcommand(1);
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    auto* vc = app.add_subcommand("vc-auction", "Run the eigenvector mechanism on a conflict graph");
    vc->add_option("--graph", cfg.graph_path, "Conflict graph JSON")->required();
    vc->add_option("--bids", cfg.bids_path, "Bids JSON (id -> p/q)")->required();
    vc->add_option("--tot", cfg.tot, "'auto' or a JSON file of Tot values")->capture_default_str();

    auto* flow = app.add_subcommand("flow-auction", "Run the k-flow mechanism");
    flow->add_option("--graph", cfg.graph_path, "Directed graph JSON with source and sink")->required();
    flow->add_option("--bids", cfg.bids_path, "Bids JSON")->required();
    flow->add_option("-k", cfg.k, "Number of edge-disjoint paths to buy")->required();

    auto* cut = app.add_subcommand("cut-auction", "Run the s-t cut mechanism");
    cut->add_option("--graph", cfg.graph_path, "Directed graph JSON with source and sink")->required();
    cut->add_option("--bids", cfg.bids_path, "Bids JSON")->required();

    auto* nu_cmd = app.add_subcommand("nu", "Compute the Nash lower bound of a set system");
    nu_cmd->add_option("--system", cfg.system_path, "System JSON {kind, k, graph}")->required();
    nu_cmd->add_option("--costs", cfg.costs_path, "Costs JSON")->required();

    auto* dc = app.add_subcommand("double-cut", "Minimum-cost double cut");
    dc->add_option("--graph", cfg.graph_path, "Directed graph JSON with source and sink")->required();
    dc->add_option("--costs", cfg.costs_path, "Costs JSON (defaults to the edges' cost fields)");

    auto* verify = app.add_subcommand("verify", "Seeded truthfulness and oracle checks");
    verify->add_option("--suite", cfg.suite, "Which mechanisms to check")
        ->check(CLI::IsMember({"vc", "flow", "cut", "all"}))
        ->capture_default_str();
    verify->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    verify->add_option("--trials", cfg.trials, "Bid vectors per instance")->capture_default_str();
    verify->add_option("--instances", cfg.instances, "Random instances per suite")->capture_default_str();

    auto* frug = app.add_subcommand("frugality", "Worst sampled payment / nu ratio of a system's mechanism");
    frug->add_option("--system", cfg.system_path, "System JSON {kind, k, graph}")->required();
    frug->add_option("--sampler", cfg.sampler, "Cost sampler")
        ->check(CLI::IsMember({"unit", "random"}))
        ->capture_default_str();
    frug->add_option("--samples", cfg.samples, "Random cost vectors")->capture_default_str();
    frug->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& error) {
        int status = app.exit(error, out, err);
        return status == 0 ? ExitOk : ExitInput;
    }

    try {
        Json doc;
        if (vc->parsed())
            doc = cmd_vc_auction(cfg);
        else if (flow->parsed())
            doc = cmd_flow_auction(cfg);
        else if (cut->parsed())
            doc = cmd_cut_auction(cfg);
        else if (nu_cmd->parsed())
            doc = cmd_nu(cfg);
        else if (dc->parsed())
            doc = cmd_double_cut(cfg);
        else if (verify->parsed())
            doc = cmd_verify(cfg);
        else
            doc = cmd_frugality(cfg);
        emit(doc, cfg.format, out);
        return ExitOk;
    }
    catch (const VerificationFailed& failure) {
        emit(failure.report, cfg.format, out);
        err << "frugal: verification found violations\n";
        return ExitVerification;
    }
    catch (const ScaleError& error) {
        err << "frugal: " << error.what() << '\n';
        return ExitScale;
    }
    catch (const FrugalError& error) {
        err << "frugal: " << error.what() << '\n';
        return ExitInput;
    }
    catch (const std::exception& error) {
        err << "frugal: " << error.what() << '\n';
        return ExitInput;
    }
}

} // namespace frugal
