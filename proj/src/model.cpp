#include "peerlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace peerlab {

namespace {
constexpr std::uint64_t kTalentTag = 0x74616c656e74ULL; // "talent"
} // namespace

const char* to_string(IntegrationMechanism m) {
    switch (m) {
    case IntegrationMechanism::averaging: return "averaging";
    case IntegrationMechanism::peer_review: return "peer_review";
    case IntegrationMechanism::hierarchical_review: return "hierarchical_review";
    }
    return "?";
}

IntegrationMechanism integration_mechanism_from_string(const std::string& name) {
    if (name == "averaging") return IntegrationMechanism::averaging;
    if (name == "peer_review") return IntegrationMechanism::peer_review;
    if (name == "hierarchical_review") return IntegrationMechanism::hierarchical_review;
    throw ConfigError("unknown integration mechanism: " + name);
}

void Project::validate() const {
    if (modules.empty()) throw ConfigError("project.modules must be non-empty");
    for (const auto& m : modules) {
        if (m.granularity <= 0.0) throw ConfigError("module granularity must be > 0");
        if (m.value_weight < 0.0) throw ConfigError("module value_weight must be >= 0");
        if (m.redundancy < 1) throw ConfigError("module redundancy must be >= 1");
    }
    if (per_contribution_integration_cost < 0.0 || fixed_integration_cost < 0.0)
        throw ConfigError("integration costs must be >= 0");
    if (trim_fraction < 0.0 || trim_fraction >= 0.5)
        throw ConfigError("trim_fraction must be in [0, 0.5)");
    if (mechanism == IntegrationMechanism::hierarchical_review && reviewer_capacity < 0)
        throw ConfigError("reviewer_capacity must be >= 0");
    if (mechanism == IntegrationMechanism::peer_review &&
        (peer_catch_probability < 0.0 || peer_catch_probability > 1.0))
        throw ConfigError("peer_catch_probability must be in [0,1]");
}

TalentMatrix TalentMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw ConfigError("talent matrix needs at least one row");
    TalentMatrix t(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < t.n_; ++i) {
        if (static_cast<int>(rows[i].size()) != t.m_)
            throw ConfigError("talent matrix rows must have equal length");
        for (int m = 0; m < t.m_; ++m) t.at(i, m) = rows[i][m];
    }
    return t;
}

double TalentMatrix::row_mean(int agent) const {
    double s = 0.0;
    for (int m = 0; m < m_; ++m) s += at(agent, m);
    return m_ > 0 ? s / m_ : 0.0;
}

void PopulationConfig::validate() const {
    if (n_agents < 1) throw ConfigError("population.n_agents must be >= 1");
    if (n_modules < 1) throw ConfigError("population.n_modules must be >= 1");
    if (sigma_t < 0.0) throw ConfigError("population.sigma_t must be >= 0");
    if (sigma_self < 0.0) throw ConfigError("population.sigma_self must be >= 0");
    if (effort_budget < 0.0) throw ConfigError("population.effort_budget must be >= 0");
    if (granularity <= 0.0) throw ConfigError("project.granularity must be > 0");
    if (redundancy < 1) throw ConfigError("project.redundancy must be >= 1");
    if (!value_weights.empty() && static_cast<int>(value_weights.size()) != n_modules)
        throw ConfigError("project.value_weights must have one entry per module");
    for (double v : value_weights)
        if (v < 0.0) throw ConfigError("project.value_weights entries must be >= 0");
    if (resource_quality < 0.0) throw ConfigError("project.resource_quality must be >= 0");
    if (input_price < 0.0) throw ConfigError("project.input_price must be >= 0");
    if (per_contribution_integration_cost < 0.0 || fixed_integration_cost < 0.0)
        throw ConfigError("integration costs must be >= 0");
    if (trim_fraction < 0.0 || trim_fraction >= 0.5)
        throw ConfigError("project.trim_fraction must be in [0, 0.5)");
}

Population gen_population(const PopulationConfig& config, std::uint64_t seed) {
    config.validate();

    Population pop;
    const Rng base = Rng(seed).derive(kTalentTag);

    pop.agents.reserve(config.n_agents);
    for (int i = 0; i < config.n_agents; ++i) {
        Agent a;
        a.id = i;
        a.effort_budget = config.effort_budget;
        a.registered = true;
        a.created_index = i;
        a.self_noise_sigma = config.sigma_self;
        a.hedonic = config.hedonic;
        pop.agents.push_back(a);
    }

    pop.resources.reserve(config.n_modules);
    for (int m = 0; m < config.n_modules; ++m) {
        pop.resources.push_back(Resource{m, config.resource_quality, config.input_price, true});
    }

    pop.project.mechanism = config.mechanism;
    pop.project.per_contribution_integration_cost = config.per_contribution_integration_cost;
    pop.project.fixed_integration_cost = config.fixed_integration_cost;
    pop.project.reviewer_capacity = config.reviewer_capacity;
    pop.project.peer_catch_probability = config.peer_catch_probability;
    pop.project.trim_fraction = config.trim_fraction;
    pop.project.modules.reserve(config.n_modules);
    for (int m = 0; m < config.n_modules; ++m) {
        TaskModule t;
        t.id = m;
        t.granularity = config.granularity;
        t.value_weight = config.value_weights.empty() ? 1.0 : config.value_weights[m];
        t.required_resource = m;
        t.redundancy = config.redundancy;
        pop.project.modules.push_back(t);
    }
    pop.project.validate();

    // One draw per (agent, module) address; growing the population never
    // perturbs existing entries.
    pop.talent = TalentMatrix(config.n_agents, config.n_modules);
    for (int i = 0; i < config.n_agents; ++i) {
        for (int m = 0; m < config.n_modules; ++m) {
            Rng cell = base.derive(static_cast<std::uint64_t>(i)).derive(static_cast<std::uint64_t>(m));
            pop.talent.at(i, m) = config.sigma_t == 0.0 ? 1.0 : cell.lognormal(config.sigma_t);
        }
    }
    return pop;
}

double agent_value(double success_probability, double outcome_value) {
    if (success_probability < 0.0 || success_probability > 1.0)
        throw DomainError("success_probability outside [0,1]");
    if (outcome_value < 0.0) throw DomainError("outcome_value must be >= 0");
    return success_probability * outcome_value;
}

ProductivityResult productivity(std::span<const Contribution> contributions,
                                const Project& project,
                                const TalentMatrix& talent,
                                std::span<const Resource> resources) {
    const int n_modules = static_cast<int>(project.modules.size());
    std::vector<double> accumulated(n_modules, 0.0);

    for (const auto& c : contributions) {
        if (c.agent < 0 || c.agent >= talent.agents())
            throw IntegrityError("contribution references unknown agent " + std::to_string(c.agent));
        if (c.module < 0 || c.module >= n_modules)
            throw IntegrityError("contribution references unknown module " + std::to_string(c.module));
        if (c.resource < 0 || c.resource >= static_cast<int>(resources.size()))
            throw IntegrityError("contribution references unknown resource " + std::to_string(c.resource));
        accumulated[c.module] += c.effective_effort;
    }

    ProductivityResult out;
    for (int m = 0; m < n_modules; ++m) {
        const TaskModule& mod = project.modules[m];
        const double need = mod.granularity * mod.redundancy;
        if (accumulated[m] >= need && accumulated[m] > 0.0) {
            out.completed_modules.push_back(m);
            out.productivity += mod.value_weight * accumulated[m] / need;
        }
    }
    return out;
}

AllocationResult make_result(std::vector<Contribution> contributions,
                             const Project& project,
                             const TalentMatrix& talent,
                             std::span<const Resource> resources,
                             CostLedger costs) {
    AllocationResult r;
    auto p = productivity(contributions, project, talent, resources);
    r.contributions = std::move(contributions);
    r.productivity = p.productivity;
    r.completed_modules = std::move(p.completed_modules);
    r.costs = costs;
    return r;
}

} // namespace peerlab
