#include "frugal/eigen_mech.hpp"

#include "frugal/caps.hpp"
#include "frugal/errors.hpp"
#include "frugal/perturbed.hpp"
#include "frugal/set_system.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace frugal {

namespace {

constexpr int q_grid_bits = 44;
constexpr int max_power_iterations = 1000000;
constexpr double eigen_tolerance = 1e-12;

Rational round_to_grid(double value)
{
    BigInt scaled(std::nearbyint(std::ldexp(value, q_grid_bits)));
    Rational r(scaled);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), q_grid_bits);
    return r;
}

// Dominant eigenpair of K = D A restricted to one component, via power iteration
// on the symmetric D^1/2 A D^1/2 shifted by a positive multiple of the identity so
// bipartite components (eigenvalue -lambda) still converge.
std::pair<double, std::vector<double>> dominant_eigenpair(const std::vector<std::vector<int>>& adjacency,
                                                          const std::vector<double>& d)
{
    const std::size_t n = adjacency.size();
    std::vector<double> root_d(n);
    for (std::size_t i = 0; i < n; ++i)
        root_d[i] = std::sqrt(d[i]);

    auto apply = [&](const std::vector<double>& x) {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0;
            for (int j : adjacency[i])
                sum += root_d[j] * x[j];
            y[i] = root_d[i] * sum;
        }
        return y;
    };
    auto k_residual = [&](const std::vector<double>& q, double lambda) {
        double worst = 0, scale = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double sum = 0;
            for (int j : adjacency[i])
                sum += q[j];
            worst = std::max(worst, std::abs(d[i] * sum - lambda * q[i]));
            scale = std::max(scale, std::abs(q[i]));
        }
        return worst / scale;
    };

    double shift = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0;
        for (int j : adjacency[i])
            row += root_d[i] * root_d[j];
        shift = std::max(shift, row);
    }
    shift = std::max(shift, 1e-3);

    std::vector<double> x(n, 1.0);
    double previous = std::nan("");
    for (int iteration = 0; iteration < max_power_iterations; ++iteration) {
        auto kx = apply(x);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += x[i] * kx[i];
            den += x[i] * x[i];
        }
        double rho = num / den;
        if (std::abs(rho - previous) < 1e-14 * std::max(1.0, std::abs(rho))) {
            std::vector<double> q(n);
            double top = 0;
            for (std::size_t i = 0; i < n; ++i) {
                q[i] = root_d[i] * x[i];
                top = std::max(top, q[i]);
            }
            for (auto& v : q)
                v /= top;
            if (k_residual(q, rho) <= eigen_tolerance)
                return {rho, q};
        }
        previous = rho;
        double top = 0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = kx[i] + shift * x[i];
            top = std::max(top, std::abs(x[i]));
        }
        for (auto& v : x)
            v /= top;
    }
    throw DomainError("power iteration did not reach the eigen tolerance");
}

class BruteForceSolver : public CoverSolver {
public:
    explicit BruteForceSolver(const VcInstance& inst)
    {
        for (const auto& component : inst.components()) {
            if (component.members.size() > 64)
                throw ScaleError("brute-force cover solver is limited to 64 agents per component");
            std::vector<AgentMask> local(component.members.size(), 0);
            for (std::size_t i = 0; i < component.members.size(); ++i)
                for (int u : inst.adjacency()[component.members[i]]) {
                    auto j = std::lower_bound(component.members.begin(), component.members.end(), u) -
                             component.members.begin();
                    local[i] |= AgentMask{1} << j;
                }
            const std::size_t n = component.members.size();
            AgentMask all = n == 64 ? ~AgentMask{0} : (AgentMask{1} << n) - 1;
            Block block;
            block.members = component.members;
            for (AgentMask independent : maximal_independent_sets(local, default_caps().max_cover_candidates))
                block.covers.push_back(all & ~independent);
            for (int v : component.members)
                block_of_[v] = blocks_.size();
            blocks_.push_back(std::move(block));
        }
    }

    std::vector<int> min_cover(const std::vector<Rational>& cost) const override
    {
        std::vector<int> cover;
        for (const auto& block : blocks_) {
            AgentMask best = cheapest(block, cost, -1, false).second;
            for (std::size_t i = 0; i < block.members.size(); ++i)
                if (best & (AgentMask{1} << i))
                    cover.push_back(block.members[i]);
        }
        std::sort(cover.begin(), cover.end());
        return cover;
    }

    Rational min_cost_containing(const std::vector<Rational>& cost, int u) const override
    {
        std::vector<Rational> zeroed = cost;
        zeroed[u] = 0;
        Rational total = 0;
        for (const auto& block : blocks_)
            total += cheapest(block, zeroed, -1, false).first;
        return total;
    }

    std::optional<Rational> min_cost_excluding(const std::vector<Rational>& cost, int u) const override
    {
        Rational total = 0;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            bool home = block_of_.at(u) == b;
            auto [value, mask] = cheapest(blocks_[b], cost, home ? u : -1, home);
            if (home && mask == ~AgentMask{0})
                return std::nullopt;
            total += value;
        }
        return total;
    }

private:
    struct Block {
        std::vector<int> members;
        std::vector<AgentMask> covers;
    };

    // Cheapest cover of a block, optionally avoiding agent `avoid`. Returns an
    // all-ones mask when nothing qualifies.
    static std::pair<Rational, AgentMask> cheapest(const Block& block, const std::vector<Rational>& cost,
                                                   int avoid, bool must_avoid)
    {
        AgentMask avoid_bit = 0;
        if (must_avoid) {
            auto j = std::lower_bound(block.members.begin(), block.members.end(), avoid) - block.members.begin();
            avoid_bit = AgentMask{1} << j;
        }
        std::optional<Rational> best_value;
        AgentMask best = ~AgentMask{0};
        for (AgentMask cover : block.covers) {
            if (cover & avoid_bit)
                continue;
            Rational value = 0;
            for (AgentMask rest = cover; rest; rest &= rest - 1)
                value += cost[block.members[std::countr_zero(rest)]];
            if (!best_value || value < *best_value || (value == *best_value && cover < best)) {
                best_value = value;
                best = cover;
            }
        }
        return {best_value.value_or(Rational(0)), best};
    }

    std::vector<Block> blocks_;
    std::map<int, std::size_t> block_of_;
};

} // namespace

VcInstance VcInstance::build(const Graph& conflict, const std::map<std::string, Rational>& tot)
{
    for (const auto& e : conflict.edges())
        if (e.tail == e.head)
            throw MonopolyError("conflict graph has a self-loop at '" + conflict.vertex_name(e.tail) + "'");

    VcInstance inst;
    auto neighbours = conflict.neighbours();
    for (int v = 0; v < conflict.vertex_count(); ++v)
        (neighbours[v].empty() ? inst.isolated_ : inst.agents_).push_back(conflict.vertex_name(v));
    std::sort(inst.agents_.begin(), inst.agents_.end());
    std::sort(inst.isolated_.begin(), inst.isolated_.end());

    const int n = static_cast<int>(inst.agents_.size());
    inst.adjacency_.resize(n);
    inst.tot_.resize(n);
    for (int i = 0; i < n; ++i) {
        int v = conflict.vertex_index(inst.agents_[i]);
        for (int u : neighbours[v])
            inst.adjacency_[i].push_back(inst.index(conflict.vertex_name(u)));
        std::sort(inst.adjacency_[i].begin(), inst.adjacency_[i].end());
        auto it = tot.find(inst.agents_[i]);
        if (it == tot.end())
            throw InputError("missing Tot value for agent '" + inst.agents_[i] + "'");
        if (it->second < 1)
            throw DomainError("Tot value below 1 for agent '" + inst.agents_[i] + "'");
        inst.tot_[i] = it->second;
    }

    inst.component_of_.assign(n, -1);
    inst.q_.assign(n, 0.0);
    inst.q_exact_.assign(n, Rational(0));
    for (int start = 0; start < n; ++start) {
        if (inst.component_of_[start] >= 0)
            continue;
        VcComponent component;
        int id = static_cast<int>(inst.components_.size());
        std::vector<int> stack{start};
        inst.component_of_[start] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            component.members.push_back(v);
            for (int u : inst.adjacency_[v])
                if (inst.component_of_[u] < 0) {
                    inst.component_of_[u] = id;
                    stack.push_back(u);
                }
        }
        std::sort(component.members.begin(), component.members.end());

        std::vector<std::vector<int>> local(component.members.size());
        std::vector<double> d(component.members.size());
        for (std::size_t i = 0; i < component.members.size(); ++i) {
            int v = component.members[i];
            d[i] = 1.0 / to_double(inst.tot_[v]);
            for (int u : inst.adjacency_[v])
                local[i].push_back(static_cast<int>(
                    std::lower_bound(component.members.begin(), component.members.end(), u) -
                    component.members.begin()));
        }
        auto [lambda, q] = dominant_eigenpair(local, d);
        component.lambda = lambda;
        for (std::size_t i = 0; i < component.members.size(); ++i) {
            int v = component.members[i];
            inst.q_[v] = q[i];
            inst.q_exact_[v] = round_to_grid(q[i]);
            if (sgn(inst.q_exact_[v]) <= 0)
                throw DomainError("eigenvector entry underflows the scaling grid");
        }
        inst.components_.push_back(std::move(component));
    }

    inst.solver_ = make_brute_force_solver(inst);
    return inst;
}

VcInstance VcInstance::with_solver(std::shared_ptr<const CoverSolver> solver) const
{
    VcInstance copy = *this;
    copy.solver_ = std::move(solver);
    return copy;
}

int VcInstance::index(std::string_view agent) const
{
    auto it = std::lower_bound(agents_.begin(), agents_.end(), agent);
    if (it == agents_.end() || *it != agent)
        throw InputError("agent '" + std::string(agent) + "' is not a non-isolated conflict vertex");
    return static_cast<int>(it - agents_.begin());
}

double VcInstance::max_lambda() const
{
    double best = 0;
    for (const auto& c : components_)
        best = std::max(best, c.lambda);
    return best;
}

double VcInstance::eigen_residual() const
{
    double worst = 0;
    for (const auto& c : components_) {
        double err = 0, scale = 0;
        for (int v : c.members) {
            double sum = 0;
            for (int u : adjacency_[v])
                sum += q_[u];
            err = std::max(err, std::abs(sum / to_double(tot_[v]) - c.lambda * q_[v]));
            scale = std::max(scale, std::abs(q_[v]));
        }
        worst = std::max(worst, err / scale);
    }
    return worst;
}

std::shared_ptr<const CoverSolver> make_brute_force_solver(const VcInstance& inst)
{
    return std::make_shared<BruteForceSolver>(inst);
}

std::vector<std::string> all_agents(const VcInstance& inst)
{
    std::vector<std::string> out = inst.agents();
    out.insert(out.end(), inst.isolated().begin(), inst.isolated().end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void check_bids(const VcInstance& inst, const CostVector& bids)
{
    auto expected = all_agents(inst);
    if (bids.size() != expected.size())
        throw InputError("bids must price every conflict-graph vertex exactly once");
    for (const auto& a : expected) {
        auto it = bids.find(a);
        if (it == bids.end())
            throw InputError("missing bid for agent '" + a + "'");
        if (it->second < 0)
            throw InputError("negative bid for agent '" + a + "'");
    }
}

AuctionOutcome empty_outcome(const VcInstance& inst)
{
    AuctionOutcome out;
    for (const auto& a : all_agents(inst)) {
        out.payments[a] = 0.0;
        out.exact_payments[a] = 0;
    }
    for (const auto& c : inst.components())
        out.lambdas.push_back(c.lambda);
    return out;
}

} // namespace

AuctionOutcome ev_run(const VcInstance& inst, const CostVector& bids)
{
    check_bids(inst, bids);
    AuctionOutcome out = empty_outcome(inst);
    const int n = static_cast<int>(inst.agents().size());
    std::vector<Rational> scaled(n);
    for (int v = 0; v < n; ++v) {
        scaled[v] = bids.at(inst.agents()[v]) / inst.q_exact()[v];
        out.scaled_bids[inst.agents()[v]] = to_double(scaled[v]);
    }
    for (const auto& a : inst.isolated())
        out.scaled_bids[a] = to_double(bids.at(a));

    Rational total = 0;
    for (int u : inst.solver().min_cover(scaled)) {
        const std::string& name = inst.agents()[u];
        out.winners.insert(name);
        Rational with_u = inst.solver().min_cost_containing(scaled, u);
        auto without_u = inst.solver().min_cost_excluding(scaled, u);
        if (!without_u)
            throw MonopolyError("agent '" + name + "' lies in every cover");
        Rational pay = inst.q_exact()[u] * (*without_u - with_u);
        out.exact_payments[name] = pay;
        out.payments[name] = to_double(pay);
        total += pay;
    }
    out.total = to_double(total);
    return out;
}

double ev_frugality_on_units(const VcInstance& inst)
{
    auto agents = all_agents(inst);
    double worst = 0;
    for (int v = 0; v < static_cast<int>(inst.agents().size()); ++v) {
        auto outcome = ev_run(inst, unit_costs(agents, inst.agents()[v]));
        worst = std::max(worst, outcome.total / to_double(inst.tot()[v]));
    }
    return worst;
}

ProbeResult probe_lower_bound(const VcInstance& inst, const Mechanism& mechanism)
{
    const int n = static_cast<int>(inst.agents().size());
    if (n == 0)
        throw DomainError("probe needs at least one conflict edge");
    auto agents = all_agents(inst);
    const auto& q = inst.q_exact();
    std::vector<Rational> out_weight(n), in_weight(n);
    for (int u = 0; u < n; ++u)
        for (int v : inst.adjacency()[u]) {
            if (v <= u)
                continue;
            CostVector costs;
            for (const auto& a : agents)
                costs[a] = 0;
            costs[inst.agents()[u]] = q[u];
            costs[inst.agents()[v]] = q[v];
            auto outcome = mechanism(costs);
            bool u_wins = outcome.winners.count(inst.agents()[u]) > 0;
            bool v_wins = outcome.winners.count(inst.agents()[v]) > 0;
            if (!u_wins && !v_wins)
                throw DomainError("mechanism left conflict edge " + inst.agents()[u] + "-" + inst.agents()[v] +
                                  " uncovered");
            if (v_wins) {
                out_weight[u] += q[v];
                in_weight[v] += q[u];
            }
            if (u_wins) {
                out_weight[v] += q[u];
                in_weight[u] += q[v];
            }
        }

    std::size_t widest = 0;
    for (std::size_t c = 0; c < inst.components().size(); ++c)
        if (inst.components()[c].lambda > inst.components()[widest].lambda)
            widest = c;
    std::optional<int> chosen;
    Rational best_margin;
    for (int v : inst.components()[widest].members) {
        Rational margin = out_weight[v] - in_weight[v];
        if (margin >= 0 && (!chosen || margin > best_margin)) {
            chosen = v;
            best_margin = margin;
        }
    }
    if (!chosen)
        throw DomainError("no vertex with out-weight at least its in-weight");

    int v = *chosen;
    CostVector costs;
    for (const auto& a : agents)
        costs[a] = 0;
    costs[inst.agents()[v]] = q[v];
    auto outcome = mechanism(costs);
    ProbeResult result;
    result.agent = inst.agents()[v];
    result.lambda = inst.components()[widest].lambda;
    result.ratio = outcome.total / to_double(inst.tot()[v] * q[v]);
    return result;
}

AuctionOutcome pay_your_bid_run(const VcInstance& inst, const CostVector& bids)
{
    check_bids(inst, bids);
    AuctionOutcome out = empty_outcome(inst);
    std::vector<Rational> raw(inst.agents().size());
    for (std::size_t v = 0; v < raw.size(); ++v) {
        raw[v] = bids.at(inst.agents()[v]);
        out.scaled_bids[inst.agents()[v]] = to_double(raw[v]);
    }
    Rational total = 0;
    for (int u : inst.solver().min_cover(raw)) {
        const std::string& name = inst.agents()[u];
        out.winners.insert(name);
        out.exact_payments[name] = raw[u];
        out.payments[name] = to_double(raw[u]);
        total += raw[u];
    }
    out.total = to_double(total);
    return out;
}

} // namespace frugal
