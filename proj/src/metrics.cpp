#include "peerlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace peerlab::metrics {

double info_opportunity_cost(double p_mode, double p_oracle) {
    if (p_mode < 0.0 || p_oracle < 0.0)
        throw DomainError("productivities must be >= 0");
    if (p_mode > p_oracle + 1e-9 * std::max(1.0, p_oracle))
        throw InvariantViolation("mode productivity exceeds the oracle's: oracle dominance broken upstream");
    if (p_oracle == 0.0) return 0.0;
    return std::clamp((p_oracle - p_mode) / p_oracle, 0.0, 1.0);
}

Partition complement_partition(const Population& pop, const std::vector<int>& agents_a,
                               const std::vector<int>& modules_a) {
    Partition p;
    p.agents_a = agents_a;
    p.modules_a = modules_a;
    std::set<int> in_agents(agents_a.begin(), agents_a.end());
    std::set<int> in_modules(modules_a.begin(), modules_a.end());
    for (int i = 0; i < static_cast<int>(pop.agents.size()); ++i)
        if (!in_agents.count(i)) p.agents_b.push_back(i);
    for (int m = 0; m < static_cast<int>(pop.project.modules.size()); ++m)
        if (!in_modules.count(m)) p.modules_b.push_back(m);
    return p;
}

Population sub_population(const Population& pop, const std::vector<int>& agents,
                          const std::vector<int>& modules) {
    Population sub;
    sub.project.mechanism = pop.project.mechanism;
    sub.project.per_contribution_integration_cost = pop.project.per_contribution_integration_cost;
    sub.project.fixed_integration_cost = pop.project.fixed_integration_cost;
    sub.project.reviewer_capacity = pop.project.reviewer_capacity;
    sub.project.peer_catch_probability = pop.project.peer_catch_probability;
    sub.project.trim_fraction = pop.project.trim_fraction;

    for (std::size_t new_id = 0; new_id < agents.size(); ++new_id) {
        Agent a = pop.agents.at(agents[new_id]);
        a.id = static_cast<int>(new_id);
        sub.agents.push_back(a);
    }
    for (std::size_t new_id = 0; new_id < modules.size(); ++new_id) {
        TaskModule m = pop.project.modules.at(modules[new_id]);
        Resource r = pop.resources.at(m.required_resource);
        m.id = static_cast<int>(new_id);
        m.required_resource = static_cast<int>(new_id);
        r.id = static_cast<int>(new_id);
        sub.project.modules.push_back(m);
        sub.resources.push_back(r);
    }
    sub.talent = TalentMatrix(static_cast<int>(agents.size()), static_cast<int>(modules.size()));
    for (std::size_t i = 0; i < agents.size(); ++i)
        for (std::size_t m = 0; m < modules.size(); ++m)
            sub.talent.at(static_cast<int>(i), static_cast<int>(m)) =
                pop.talent.at(agents[i], modules[m]);
    return sub;
}

namespace {

void check_partition(const Population& pop, const Partition& p) {
    auto check_cover = [](std::vector<int> a, std::vector<int> b, int total, const char* what) {
        a.insert(a.end(), b.begin(), b.end());
        std::sort(a.begin(), a.end());
        if (static_cast<int>(a.size()) != total)
            throw ConfigError(std::string("partition does not cover all ") + what);
        for (int i = 0; i < total; ++i)
            if (a[i] != i)
                throw ConfigError(std::string("partition blocks must be disjoint and exhaustive over ") + what);
    };
    check_cover(p.agents_a, p.agents_b, static_cast<int>(pop.agents.size()), "agents");
    check_cover(p.modules_a, p.modules_b, static_cast<int>(pop.project.modules.size()), "modules");
}

double block_productivity(const Population& pop, const std::vector<int>& agents,
                          const std::vector<int>& modules, const OracleOptions& options) {
    if (agents.empty() || modules.empty()) return 0.0;
    return allocate_oracle(sub_population(pop, agents, modules), options).productivity;
}

} // namespace

double superadditivity_gap(const Population& pop, const Partition& partition,
                           const OracleOptions& options) {
    check_partition(pop, partition);
    const double merged = allocate_oracle(pop, options).productivity;
    const double part_a = block_productivity(pop, partition.agents_a, partition.modules_a, options);
    const double part_b = block_productivity(pop, partition.agents_b, partition.modules_b, options);
    return merged - (part_a + part_b);
}

namespace {

double contributions_needed(const Project& project) {
    double n = 0.0;
    for (const auto& m : project.modules) n += m.redundancy;
    return n;
}

double max_module_cost(const Project& project, const std::function<double(double)>& effort_cost) {
    double c = 0.0;
    for (const auto& m : project.modules) c = std::max(c, effort_cost(m.granularity));
    return c;
}

} // namespace

double min_incentive(const Project& project, int pool_size, const Distribution& motivation,
                     const std::function<double(double)>& effort_cost) {
    if (pool_size < 0) throw ConfigError("pool_size must be >= 0");
    project.validate();

    const double needed = contributions_needed(project);
    if (static_cast<double>(pool_size) < needed)
        throw InfeasibleError("pool of " + std::to_string(pool_size) +
                              " cannot supply " + std::to_string(static_cast<long long>(needed)) +
                              " contributions even at full participation");

    const double cost = max_module_cost(project, effort_cost);
    // Expected participants = pool * P(draw + s >= cost); the smallest s hits
    // the quota exactly at the (1 - needed/pool) quantile.
    const double q = motivation.quantile(1.0 - needed / static_cast<double>(pool_size));
    return std::max(0.0, cost - q);
}

double completion_probability(const Project& project, int pool_size,
                              const Distribution& motivation, int trials, std::uint64_t seed,
                              const std::function<double(double)>& effort_cost) {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (pool_size < 0) throw ConfigError("pool_size must be >= 0");
    project.validate();

    std::function<double(double)> cost = effort_cost;
    if (!cost) cost = [](double g) { return g; };
    const int n_modules = static_cast<int>(project.modules.size());
    std::vector<double> module_cost(n_modules);
    for (int m = 0; m < n_modules; ++m) module_cost[m] = cost(project.modules[m].granularity);

    const Rng base = Rng(seed).derive("completion");
    int successes = 0;
    for (int t = 0; t < trials; ++t) {
        Rng trial = base.derive(static_cast<std::uint64_t>(t));
        bool all = true;
        for (int m = 0; m < n_modules && all; ++m) {
            int participants = 0;
            const int quota = project.modules[m].redundancy;
            Rng stream = trial.derive(static_cast<std::uint64_t>(m));
            for (int a = 0; a < pool_size && participants < quota; ++a) {
                if (motivation.sample(stream) >= module_cost[m]) ++participants;
            }
            all = participants >= quota;
        }
        if (all) ++successes;
    }
    return static_cast<double>(successes) / static_cast<double>(trials);
}

double free_riding_quality(int pool_size, double contributor_fraction, const Project& project,
                           std::uint64_t seed) {
    if (pool_size < 0) throw ConfigError("pool_size must be >= 0");
    if (contributor_fraction < 0.0 || contributor_fraction > 1.0)
        throw DomainError("contributor_fraction outside [0,1]");
    project.validate();

    // Quality is a function of the absolute contributor count; draws are
    // addressed by (contributor, module), so a large pool with a small
    // fraction and a small all-contributor pool produce the same bits.
    const int contributors =
        static_cast<int>(std::llround(static_cast<double>(pool_size) * contributor_fraction));
    if (contributors == 0) return 0.0;

    const Rng base = Rng(seed).derive("freeride");
    double total = 0.0;
    std::vector<double> draws;
    for (std::size_t m = 0; m < project.modules.size(); ++m) {
        const TaskModule& mod = project.modules[m];
        draws.clear();
        for (int i = 0; i < contributors; ++i) {
            Rng cell = base.derive(static_cast<std::uint64_t>(i)).derive(static_cast<std::uint64_t>(m));
            draws.push_back(cell.lognormal(1.0));
        }
        const int k = std::min<int>(mod.redundancy, contributors);
        std::partial_sort(draws.begin(), draws.begin() + k, draws.end(), std::greater<>());
        total += std::accumulate(draws.begin(), draws.begin() + k, 0.0) / mod.redundancy;
    }
    return total / static_cast<double>(project.modules.size());
}

const char* to_string(OrgForm f) {
    switch (f) {
    case OrgForm::pure_market: return "pure_market";
    case OrgForm::market_with_firms: return "market_with_firms";
    case OrgForm::pure_commons: return "pure_commons";
    case OrgForm::common_property_regime: return "common_property_regime";
    case OrgForm::proprietary_open_source: return "proprietary_open_source";
    case OrgForm::peer_production: return "peer_production";
    }
    return "?";
}

void CostQuadrantInput::validate() const {
    if (market_exchange_cost < 0.0 || organizing_cost < 0.0 || peering_cost < 0.0 ||
        property_implementation_cost < 0.0 || no_property_opportunity_cost < 0.0)
        throw ConfigError("all quadrant costs must be >= 0");
}

OrgForm select_org_form(const CostQuadrantInput& costs) {
    costs.validate();

    enum Row { market, organizing, peering } row = market;
    if (costs.organizing_cost < costs.market_exchange_cost) row = organizing;
    const double row_cost = row == market ? costs.market_exchange_cost : costs.organizing_cost;
    if (costs.peering_cost < row_cost) row = peering;

    const bool property =
        costs.property_implementation_cost <= costs.no_property_opportunity_cost;

    switch (row) {
    case market: return property ? OrgForm::pure_market : OrgForm::pure_commons;
    case organizing: return property ? OrgForm::market_with_firms : OrgForm::common_property_regime;
    case peering: return property ? OrgForm::proprietary_open_source : OrgForm::peer_production;
    }
    return OrgForm::pure_market;
}

} // namespace peerlab::metrics
