#pragma once

#include "peerlab/distribution.hpp"
#include "peerlab/errors.hpp"
#include "peerlab/rng.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace peerlab {

struct Agent {
    int id = 0;
    double effort_budget = 1.0;   // effort-units per period
    bool registered = true;
    int created_index = 0;        // creation order; reused by the moderation engine
    double self_noise_sigma = 0.0; // log-scale noise on self-perceived talent
    Distribution hedonic;          // per-task intrinsic benefit draw
};

struct Resource {
    int id = 0;
    double quality = 1.0;     // multiplier on effective effort
    double input_price = 0.0; // price of using the nonrival input under an IP regime
    bool nonrival = true;     // use never depletes availability
};

struct TaskModule {
    int id = 0;
    double granularity = 1.0;  // effort-units required per accepted contribution
    double value_weight = 1.0; // output-units at nominal completion
    int required_resource = 0;
    int redundancy = 1;        // accepted contributions sought (k)
};

enum class IntegrationMechanism { averaging, peer_review, hierarchical_review };

const char* to_string(IntegrationMechanism m);
IntegrationMechanism integration_mechanism_from_string(const std::string& name);

struct Project {
    std::vector<TaskModule> modules;
    IntegrationMechanism mechanism = IntegrationMechanism::averaging;
    double per_contribution_integration_cost = 0.0; // c_int
    double fixed_integration_cost = 0.0;            // C_fix
    int reviewer_capacity = 0;        // hierarchical_review only
    double peer_catch_probability = 0.0; // peer_review only
    double trim_fraction = 0.0;          // averaging only, in [0, 0.5)

    void validate() const;
};

class TalentMatrix {
public:
    TalentMatrix() = default;
    TalentMatrix(int n_agents, int n_modules, double fill = 1.0)
        : n_(n_agents), m_(n_modules), entries_(static_cast<std::size_t>(n_agents) * n_modules, fill) {}

    static TalentMatrix from_rows(const std::vector<std::vector<double>>& rows);

    int agents() const { return n_; }
    int modules() const { return m_; }

    double at(int agent, int module) const {
        return entries_[static_cast<std::size_t>(agent) * m_ + module];
    }
    double& at(int agent, int module) {
        return entries_[static_cast<std::size_t>(agent) * m_ + module];
    }

    double row_mean(int agent) const;

    const std::vector<double>& entries() const { return entries_; }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<double> entries_;
};

struct Contribution {
    int agent = 0;
    int module = 0;
    int resource = 0;
    double effort = 0.0;           // effort-units spent
    double effective_effort = 0.0; // effort * talent * resource quality
    bool good = true;              // false marks a purposeful defection in synthetic scenarios
};

struct CostLedger {
    double transaction = 0.0;
    double boundary = 0.0;
    double integration = 0.0;
    double input_price = 0.0;

    std::map<std::string, double> as_map() const {
        return {{"transaction", transaction},
                {"boundary", boundary},
                {"integration", integration},
                {"input_price", input_price}};
    }
};

struct AllocationResult {
    std::vector<Contribution> contributions; // accepted contributions only
    double productivity = 0.0;
    CostLedger costs;
    std::vector<int> completed_modules;
};

struct PopulationConfig {
    int n_agents = 50;
    int n_modules = 20;
    double sigma_t = 1.0;    // talent log-sd
    double sigma_self = 0.3; // self-perception log-sd
    double effort_budget = 1.0;
    Distribution hedonic = Distribution::uniform(0.0, 2.0);

    double granularity = 1.0;
    std::vector<double> value_weights; // empty = all 1.0; else one per module
    int redundancy = 3;
    IntegrationMechanism mechanism = IntegrationMechanism::averaging;
    double per_contribution_integration_cost = 0.0;
    double fixed_integration_cost = 0.0;
    int reviewer_capacity = 0;
    double peer_catch_probability = 0.0;
    double trim_fraction = 0.2;

    double resource_quality = 1.0;
    double input_price = 0.0;

    void validate() const;
};

struct Population {
    std::vector<Agent> agents;
    std::vector<Resource> resources; // one per module; module m requires resource m
    Project project;
    TalentMatrix talent;
};

// Deterministic function of (config, seed). Talent entries are
// lognormal(median 1, log-sd sigma_t); sigma_t = 0 yields all ones.
Population gen_population(const PopulationConfig& config, std::uint64_t seed);

// Expected value of an outcome: success_probability * outcome_value.
double agent_value(double success_probability, double outcome_value);

struct ProductivityResult {
    double productivity = 0.0;
    std::vector<int> completed_modules;
};

// A module is completed when the accepted effective effort on it reaches
// granularity * redundancy; a completed module yields
// value_weight * effective / (granularity * redundancy), so output keeps
// growing with talent, effort, and resource quality past the threshold.
ProductivityResult productivity(std::span<const Contribution> contributions,
                                const Project& project,
                                const TalentMatrix& talent,
                                std::span<const Resource> resources);

// Rebuilds an AllocationResult whose productivity/completed fields are the
// productivity() recomputation of its own contribution list.
AllocationResult make_result(std::vector<Contribution> contributions,
                             const Project& project,
                             const TalentMatrix& talent,
                             std::span<const Resource> resources,
                             CostLedger costs = {});

} // namespace peerlab
