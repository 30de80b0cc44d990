#pragma once

#include "peerlab/allocate.hpp"
#include "peerlab/distribution.hpp"
#include "peerlab/model.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace peerlab::metrics {

// Productivity lost by a mode relative to the perfect-information
// allocation, as a fraction of the latter. Zero when the oracle itself
// produced nothing.
double info_opportunity_cost(double p_mode, double p_oracle);

// Two disjoint, exhaustive blocks of agents and modules.
struct Partition {
    std::vector<int> agents_a;
    std::vector<int> modules_a;
    std::vector<int> agents_b;
    std::vector<int> modules_b;
};

Partition complement_partition(const Population& pop, const std::vector<int>& agents_a,
                               const std::vector<int>& modules_a);

// Population restricted to a block, ids reindexed densely.
Population sub_population(const Population& pop, const std::vector<int>& agents,
                          const std::vector<int>& modules);

// P(merged) - (P(block A) + P(block B)), every term an exhaustive oracle
// within its boundary. Never negative: the union of the block optima is one
// of the merged candidates.
double superadditivity_gap(const Population& pop, const Partition& partition,
                           const OracleOptions& options = {});

// Smallest uniform payment s such that the expected number of agents whose
// motivation draw plus s covers the effort cost reaches the number of
// contributions the project needs. Computed from the quantile function.
double min_incentive(const Project& project, int pool_size, const Distribution& motivation,
                     const std::function<double(double)>& effort_cost);

// Monte-Carlo probability that every module gathers its redundancy quota
// given independent per-(agent, module) participation draws.
double completion_probability(const Project& project, int pool_size,
                              const Distribution& motivation, int trials, std::uint64_t seed,
                              const std::function<double(double)>& effort_cost = {});

// Output quality as a function of the absolute number of contributors only:
// round(pool_size * contributor_fraction) contributors draw per-module
// qualities from streams addressed by (seed, contributor, module), and each
// module keeps its top-redundancy draws.
double free_riding_quality(int pool_size, double contributor_fraction, const Project& project,
                           std::uint64_t seed);

enum class OrgForm {
    pure_market,
    market_with_firms,
    pure_commons,
    common_property_regime,
    proprietary_open_source,
    peer_production,
};
const char* to_string(OrgForm f);

struct CostQuadrantInput {
    double market_exchange_cost = 0.0;
    double organizing_cost = 0.0;
    double peering_cost = 0.0;
    double property_implementation_cost = 0.0;
    double no_property_opportunity_cost = 0.0;

    void validate() const;
};

// Row: cheapest of market exchange / organizing / peering (ties in that
// order). Column: property iff implementing it costs no more than doing
// without. Returns the matching organizational form.
OrgForm select_org_form(const CostQuadrantInput& costs);

} // namespace peerlab::metrics
