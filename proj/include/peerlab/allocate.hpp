#pragma once

#include "peerlab/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace peerlab {

// Codification coarseness of effort types plus contract costs. Agents are
// ranked by row-mean talent into bucket_count quantile buckets; a bucket's
// public signal is its members' mean talent per module, and its wage is the
// bucket-mean row-mean times base_wage.
struct MarketParams {
    int bucket_count = 3;        // B
    double transaction_cost = 0; // tau per contract
    double base_wage = 0.0;

    void validate(int n_agents) const;
};

struct FirmParams {
    int firm_size = 1;               // m agents per firm, modules split the same way
    double manager_noise_sigma = 0;  // log-scale noise on observed talent
    double boundary_change_cost = 0; // delta per cross-boundary swap
    int max_boundary_swaps = 0;

    void validate(int n_agents) const;
};

struct PeerParams {
    int max_slots_per_agent = 1;
    double effort_unit_cost = 1.0; // currency per effort-unit of a module slot
    double indirect_benefit = 0.0; // expected non-hedonic payoff added to every draw

    void validate() const;
};

struct OracleOptions {
    int limit = 10;                // exhaustive search refused above this many agents
    bool allow_upper_bound = false; // above the limit, fall back to the relaxation bound
};

// Perfect-information benchmark: exhaustive search over agent -> module-slot
// assignments under true talent. Each agent takes at most one module and
// spends its whole budget there. Ties in productivity resolve to the
// assignment whose per-module agent-id sequence is lexicographically
// smallest. Cost ledger is all zeros.
AllocationResult allocate_oracle(const Population& pop, const OracleOptions& options = {});

// Sound upper bound on oracle productivity for instances beyond the
// exhaustive limit: min of the agent-side relaxation (every agent paid its
// best rate) and the module-side relaxation (every module served by its
// top-k contributors, agents reusable).
double oracle_upper_bound(const Population& pop);

// Oracle productivity if feasible exhaustively, otherwise the relaxation
// bound when allowed.
double oracle_productivity(const Population& pop, const OracleOptions& options);

AllocationResult allocate_market(const Population& pop, const MarketParams& params,
                                 std::uint64_t seed);

AllocationResult allocate_firm(const Population& pop, const FirmParams& params,
                               std::uint64_t seed);

AllocationResult allocate_peer(const Population& pop, const PeerParams& params,
                               std::uint64_t seed);

struct IntegrationResult {
    std::vector<Contribution> accepted;
    double cost = 0.0; // c_int per reviewed contribution + C_fix once
};

// Quality filter between raw contributions and productivity:
//   averaging            keep the trimmed band per module on effective effort
//   peer_review          bad contributions caught independently with
//                        peer_catch_probability
//   hierarchical_review  first reviewer_capacity contributions per module
//                        reviewed in arrival order (bad ones rejected),
//                        the rest discarded unseen
IntegrationResult integrate(std::span<const Contribution> contributions,
                            const Project& project, std::uint64_t seed);

} // namespace peerlab
