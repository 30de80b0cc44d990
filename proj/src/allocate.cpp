#include "peerlab/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace peerlab {

namespace {

constexpr std::uint64_t kSelfTag = 0x73656c66ULL;     // "self"
constexpr std::uint64_t kHedonicTag = 0x6865646fULL;  // "hedo"
constexpr std::uint64_t kManagerTag = 0x6d677220ULL;  // "mgr"
constexpr std::uint64_t kIntegrateTag = 0x696e7467ULL; // "intg"

double slot_need(const TaskModule& m) { return m.granularity; }
double completion_need(const TaskModule& m) { return m.granularity * m.redundancy; }

Contribution full_budget_contribution(const Population& pop, int agent, int module) {
    const TaskModule& mod = pop.project.modules[module];
    const double effort = pop.agents[agent].effort_budget;
    Contribution c;
    c.agent = agent;
    c.module = module;
    c.resource = mod.required_resource;
    c.effort = effort;
    c.effective_effort =
        effort * pop.talent.at(agent, module) * pop.resources[mod.required_resource].quality;
    return c;
}

double quality_of(const Population& pop, int module) {
    return pop.resources[pop.project.modules[module].required_resource].quality;
}

// Credit per unit of effective effort on a completed module.
double credit_rate(const TaskModule& m) {
    return m.value_weight / completion_need(m);
}

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

// An assignment is canonically represented as, per module in id order, the
// sorted agent ids contributing to it (completed modules only). Ties in
// productivity resolve to the lexicographically smallest flattened
// (module id, agent ids...) stream, which prefers filling earlier modules
// with smaller agent ids.
using ModuleAgents = std::vector<std::vector<int>>;

std::vector<int> flatten_assignment(const ModuleAgents& a) {
    std::vector<int> out;
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (a[m].empty()) continue;
        out.push_back(static_cast<int>(m));
        out.insert(out.end(), a[m].begin(), a[m].end());
    }
    return out;
}

bool canonical_less(const ModuleAgents& a, const ModuleAgents& b) {
    return flatten_assignment(a) < flatten_assignment(b);
}

struct OracleSearch {
    const Population& pop;
    int n;
    int n_modules;
    // effective[i][m] = budget_i * t(i,m) * quality_m
    std::vector<std::vector<double>> effective;

    double best_value = -1.0;
    ModuleAgents best_assignment;

    explicit OracleSearch(const Population& p)
        : pop(p), n(static_cast<int>(p.agents.size())),
          n_modules(static_cast<int>(p.project.modules.size())) {
        effective.assign(n, std::vector<double>(n_modules, 0.0));
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < n_modules; ++m)
                effective[i][m] =
                    pop.agents[i].effort_budget * pop.talent.at(i, m) * quality_of(pop, m);
    }

    double module_value(int m, double pooled) const {
        const TaskModule& mod = pop.project.modules[m];
        if (pooled < completion_need(mod) || pooled <= 0.0) return 0.0;
        return mod.value_weight * pooled / completion_need(mod);
    }

    // Optimistic value of modules m.. using any agents from `avail`:
    // top-k pooled effort per module, completion threshold ignored, agents
    // reusable across modules. Never below the true remaining optimum.
    double optimistic_tail(int m_from, const std::vector<int>& avail) const {
        double bound = 0.0;
        std::vector<double> pool;
        for (int m = m_from; m < n_modules; ++m) {
            const TaskModule& mod = pop.project.modules[m];
            pool.clear();
            for (int a : avail) pool.push_back(effective[a][m]);
            const int k = std::min<int>(mod.redundancy, static_cast<int>(pool.size()));
            std::partial_sort(pool.begin(), pool.begin() + k, pool.end(), std::greater<>());
            double pooled = std::accumulate(pool.begin(), pool.begin() + k, 0.0);
            bound += mod.value_weight * pooled / completion_need(mod);
        }
        return bound;
    }

    void consider(double value, const ModuleAgents& assignment) {
        if (value > best_value + 1e-12) {
            best_value = value;
            best_assignment = assignment;
            return;
        }
        if (std::abs(value - best_value) <= 1e-12 && canonical_less(assignment, best_assignment)) {
            best_assignment = assignment;
        }
    }

    // General search: per module choose a contributor set of size <= k (or
    // none), agents used at most once overall.
    void dfs(int module, std::vector<int>& avail, double value, ModuleAgents& current) {
        if (module == n_modules) {
            consider(value, current);
            return;
        }
        if (value + optimistic_tail(module, avail) < best_value - 1e-12) return;

        const TaskModule& mod = pop.project.modules[module];
        const int k = mod.redundancy;

        // Enumerate contributor subsets of size 1..k in lexicographic order,
        // then the empty choice.
        std::vector<int> chosen;
        enumerate_subsets(module, mod, k, 0, avail, chosen, value, current);

        dfs(module + 1, avail, value, current);
    }

    void enumerate_subsets(int module, const TaskModule& mod, int k, std::size_t start,
                           std::vector<int>& avail, std::vector<int>& chosen, double base_value,
                           ModuleAgents& current) {
        if (!chosen.empty()) {
            double pooled = 0.0;
            for (int a : chosen) pooled += effective[a][module];
            const double v = module_value(module, pooled);
            if (v > 0.0) {
                std::vector<int> removed = chosen;
                std::vector<int> next_avail;
                next_avail.reserve(avail.size() - removed.size());
                for (int a : avail)
                    if (std::find(removed.begin(), removed.end(), a) == removed.end())
                        next_avail.push_back(a);
                current[module] = chosen;
                dfs(module + 1, next_avail, base_value + v, current);
                current[module].clear();
            }
        }
        if (static_cast<int>(chosen.size()) == k) return;
        for (std::size_t i = start; i < avail.size(); ++i) {
            chosen.push_back(avail[i]);
            enumerate_subsets(module, mod, k, i + 1, avail, chosen, base_value, current);
            chosen.pop_back();
        }
    }

    // Exact subset DP over agents for the common all-redundancy-1 case.
    void run_k1() {
        const std::size_t masks = std::size_t{1} << n;
        // f[m][mask]: best value from modules m.. with agents in `mask` used.
        std::vector<std::vector<double>> f(n_modules + 1, std::vector<double>(masks, 0.0));
        for (int m = n_modules - 1; m >= 0; --m) {
            const TaskModule& mod = pop.project.modules[m];
            const double need = completion_need(mod);
            for (std::size_t mask = 0; mask < masks; ++mask) {
                double best = f[m + 1][mask];
                for (int a = 0; a < n; ++a) {
                    if (mask & (std::size_t{1} << a)) continue;
                    const double e = effective[a][m];
                    if (e < need || e <= 0.0) continue;
                    const double v =
                        mod.value_weight * e / need + f[m + 1][mask | (std::size_t{1} << a)];
                    if (v > best) best = v;
                }
                f[m][mask] = best;
            }
        }

        // Reconstruct module-ascending, preferring the smallest agent id and
        // preferring a fill over a skip when values tie exactly.
        ModuleAgents assignment(n_modules);
        std::size_t mask = 0;
        for (int m = 0; m < n_modules; ++m) {
            const TaskModule& mod = pop.project.modules[m];
            const double need = completion_need(mod);
            int pick = -1;
            for (int a = 0; a < n; ++a) {
                if (mask & (std::size_t{1} << a)) continue;
                const double e = effective[a][m];
                if (e < need || e <= 0.0) continue;
                const double v =
                    mod.value_weight * e / need + f[m + 1][mask | (std::size_t{1} << a)];
                if (v == f[m][mask]) {
                    pick = a;
                    break;
                }
            }
            if (pick >= 0) {
                assignment[m] = {pick};
                mask |= std::size_t{1} << pick;
            }
        }
        best_value = f[0][0];
        best_assignment = std::move(assignment);
    }

    ModuleAgents run() {
        // TODO: the DP fills zero-value modules when an agent is idle while
        // the general search skips them; unify if v=0 modules ever matter.
        const bool all_k1 = std::all_of(pop.project.modules.begin(), pop.project.modules.end(),
                                        [](const TaskModule& m) { return m.redundancy == 1; });
        if (all_k1 && n <= 16) { // table is (modules+1) * 2^n doubles
            run_k1();
            return best_assignment;
        }
        best_value = -1.0;
        best_assignment.assign(n_modules, {});
        std::vector<int> avail(n);
        std::iota(avail.begin(), avail.end(), 0);
        ModuleAgents current(n_modules);
        dfs(0, avail, 0.0, current);
        return best_assignment;
    }
};

} // namespace

void MarketParams::validate(int) const {
    if (bucket_count < 1) throw ConfigError("market.bucket_count must be >= 1");
    if (transaction_cost < 0.0) throw ConfigError("market.transaction_cost must be >= 0");
    if (base_wage < 0.0) throw ConfigError("market.base_wage must be >= 0");
}

void FirmParams::validate(int n_agents) const {
    if (firm_size < 1) throw ConfigError("firm.firm_size must be >= 1");
    if (firm_size > n_agents)
        throw ConfigError("firm.firm_size exceeds the number of agents");
    if (manager_noise_sigma < 0.0) throw ConfigError("firm.manager_noise_sigma must be >= 0");
    if (boundary_change_cost < 0.0) throw ConfigError("firm.boundary_change_cost must be >= 0");
    if (max_boundary_swaps < 0) throw ConfigError("firm.max_boundary_swaps must be >= 0");
}

void PeerParams::validate() const {
    if (max_slots_per_agent < 1) throw ConfigError("peer.max_slots_per_agent must be >= 1");
    if (effort_unit_cost < 0.0) throw ConfigError("peer.effort_unit_cost must be >= 0");
}

AllocationResult allocate_oracle(const Population& pop, const OracleOptions& options) {
    const int n = static_cast<int>(pop.agents.size());
    if (n > options.limit) {
        throw CapacityError("instance has " + std::to_string(n) + " agents, above the exhaustive oracle limit of " +
                            std::to_string(options.limit) + "; use the sampled upper bound (oracle_upper_bound) instead");
    }

    OracleSearch search(pop);
    ModuleAgents assignment = search.run();

    std::vector<Contribution> contributions;
    for (std::size_t m = 0; m < assignment.size(); ++m)
        for (int a : assignment[m])
            contributions.push_back(full_budget_contribution(pop, a, static_cast<int>(m)));

    return make_result(std::move(contributions), pop.project, pop.talent, pop.resources);
}

double oracle_upper_bound(const Population& pop) {
    const int n = static_cast<int>(pop.agents.size());
    const int n_modules = static_cast<int>(pop.project.modules.size());

    // Agent-side: every agent paid its single best credit rate.
    double agent_side = 0.0;
    for (int i = 0; i < n; ++i) {
        double best = 0.0;
        for (int m = 0; m < n_modules; ++m) {
            const TaskModule& mod = pop.project.modules[m];
            const double e =
                pop.agents[i].effort_budget * pop.talent.at(i, m) * quality_of(pop, m);
            best = std::max(best, e * credit_rate(mod));
        }
        agent_side += best;
    }

    // Module-side: every module served by its top-k contributors, agents
    // reusable across modules.
    double module_side = 0.0;
    std::vector<double> pool(n);
    for (int m = 0; m < n_modules; ++m) {
        const TaskModule& mod = pop.project.modules[m];
        for (int i = 0; i < n; ++i)
            pool[i] = pop.agents[i].effort_budget * pop.talent.at(i, m) * quality_of(pop, m);
        const int k = std::min(mod.redundancy, n);
        std::partial_sort(pool.begin(), pool.begin() + k, pool.end(), std::greater<>());
        const double pooled = std::accumulate(pool.begin(), pool.begin() + k, 0.0);
        if (pooled >= completion_need(mod))
            module_side += mod.value_weight * pooled / completion_need(mod);
    }

    return std::min(agent_side, module_side);
}

double oracle_productivity(const Population& pop, const OracleOptions& options) {
    const int n = static_cast<int>(pop.agents.size());
    if (n <= options.limit) return allocate_oracle(pop, options).productivity;
    if (!options.allow_upper_bound)
        throw CapacityError("oracle requested above the exhaustive limit without the upper-bound fallback enabled");
    return oracle_upper_bound(pop);
}

AllocationResult allocate_market(const Population& pop, const MarketParams& params,
                                 std::uint64_t /*seed*/) {
    const int n = static_cast<int>(pop.agents.size());
    const int n_modules = static_cast<int>(pop.project.modules.size());
    params.validate(n);

    const int buckets = std::min(params.bucket_count, n);

    // Quantile buckets over row-mean talent; ranks break ties by agent id.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return pop.talent.row_mean(a) < pop.talent.row_mean(b);
    });
    std::vector<int> bucket_of(n, 0);
    for (int rank = 0; rank < n; ++rank)
        bucket_of[order[rank]] = std::min(buckets - 1, rank * buckets / n);

    std::vector<std::vector<double>> signal(buckets, std::vector<double>(n_modules, 0.0));
    std::vector<double> scalar_signal(buckets, 0.0);
    std::vector<int> bucket_size(buckets, 0);
    for (int i = 0; i < n; ++i) {
        const int b = bucket_of[i];
        ++bucket_size[b];
        scalar_signal[b] += pop.talent.row_mean(i);
        for (int m = 0; m < n_modules; ++m) signal[b][m] += pop.talent.at(i, m);
    }
    for (int b = 0; b < buckets; ++b) {
        if (bucket_size[b] == 0) continue;
        scalar_signal[b] /= bucket_size[b];
        for (int m = 0; m < n_modules; ++m) signal[b][m] /= bucket_size[b];
    }

    std::vector<int> module_order(n_modules);
    std::iota(module_order.begin(), module_order.end(), 0);
    std::stable_sort(module_order.begin(), module_order.end(), [&](int a, int b) {
        return pop.project.modules[a].value_weight > pop.project.modules[b].value_weight;
    });

    std::vector<bool> hired(n, false);
    std::vector<Contribution> contributions;
    CostLedger costs;

    for (int m : module_order) {
        const TaskModule& mod = pop.project.modules[m];
        const double pi = pop.resources[mod.required_resource].input_price;
        const double q = quality_of(pop, m);

        // Plan all k contracts before committing any; a buyer who cannot
        // believe the module will complete walks away.
        std::vector<int> planned;
        std::vector<bool> reserved(n, false);
        for (int slot = 0; slot < mod.redundancy; ++slot) {
            int pick = -1;
            double pick_wage = 0.0;
            int pick_bucket = 0;
            for (int i = 0; i < n; ++i) {
                if (hired[i] || reserved[i]) continue;
                const int b = bucket_of[i];
                const double believed = signal[b][m] * pop.agents[i].effort_budget * q;
                if (believed < slot_need(mod)) continue; // signal does not suffice
                const double wage = scalar_signal[b] * params.base_wage;
                const double believed_credit = mod.value_weight * believed / completion_need(mod);
                if (wage + params.transaction_cost + pi > believed_credit) continue;
                const bool cheaper = pick < 0 || wage < pick_wage ||
                                     (wage == pick_wage && b < pick_bucket);
                if (cheaper) {
                    pick = i;
                    pick_wage = wage;
                    pick_bucket = b;
                }
            }
            if (pick < 0) break;
            reserved[pick] = true;
            planned.push_back(pick);
        }
        if (static_cast<int>(planned.size()) < mod.redundancy) continue; // module abandoned

        for (int i : planned) {
            hired[i] = true;
            contributions.push_back(full_budget_contribution(pop, i, m));
            costs.transaction += params.transaction_cost;
            costs.input_price += pi;
        }
    }

    return make_result(std::move(contributions), pop.project, pop.talent, pop.resources, costs);
}

AllocationResult allocate_firm(const Population& pop, const FirmParams& params,
                               std::uint64_t seed) {
    const int n = static_cast<int>(pop.agents.size());
    const int n_modules = static_cast<int>(pop.project.modules.size());
    params.validate(n);

    const int n_firms = (n + params.firm_size - 1) / params.firm_size;
    std::vector<int> agent_firm(n), module_firm(n_modules);
    for (int i = 0; i < n; ++i) agent_firm[i] = i % n_firms;
    for (int m = 0; m < n_modules; ++m) module_firm[m] = m % n_firms;

    // What each manager sees: talent times lognormal noise.
    const Rng noise = Rng(seed).derive(kManagerTag);
    std::vector<std::vector<double>> observed(n, std::vector<double>(n_modules));
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < n_modules; ++m) {
            Rng cell = noise.derive(static_cast<std::uint64_t>(i)).derive(static_cast<std::uint64_t>(m));
            const double factor =
                params.manager_noise_sigma == 0.0 ? 1.0 : cell.lognormal(params.manager_noise_sigma);
            observed[i][m] = pop.talent.at(i, m) * factor;
        }

    struct Pair {
        int agent, module;
        double observed;
    };
    std::vector<int> assigned_module(n, -1);
    std::vector<int> open_slots(n_modules);
    for (int m = 0; m < n_modules; ++m) open_slots[m] = pop.project.modules[m].redundancy;

    // Within-boundary greedy: best observed talent first, believed-feasible
    // placements only.
    std::vector<Pair> pairs;
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < n_modules; ++m) {
            if (agent_firm[i] != module_firm[m]) continue;
            if (observed[i][m] * pop.agents[i].effort_budget * quality_of(pop, m) <
                slot_need(pop.project.modules[m]))
                continue;
            pairs.push_back({i, m, observed[i][m]});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.observed != b.observed) return a.observed > b.observed;
        if (a.agent != b.agent) return a.agent < b.agent;
        return a.module < b.module;
    });
    for (const auto& p : pairs) {
        if (assigned_module[p.agent] >= 0 || open_slots[p.module] == 0) continue;
        assigned_module[p.agent] = p.module;
        --open_slots[p.module];
    }

    CostLedger costs;

    // Cross-boundary swaps: exchange two agents' modules across firms when
    // the observed gain beats the boundary-change cost.
    auto believed_credit = [&](int agent, int module) {
        const TaskModule& mod = pop.project.modules[module];
        return mod.value_weight * observed[agent][module] * pop.agents[agent].effort_budget *
               quality_of(pop, module) / completion_need(mod);
    };
    auto believed_feasible = [&](int agent, int module) {
        return observed[agent][module] * pop.agents[agent].effort_budget * quality_of(pop, module) >=
               slot_need(pop.project.modules[module]);
    };
    for (int s = 0; s < params.max_boundary_swaps; ++s) {
        double best_gain = params.boundary_change_cost;
        int best_a = -1, best_b = -1;
        for (int a = 0; a < n; ++a) {
            if (assigned_module[a] < 0) continue;
            for (int b = a + 1; b < n; ++b) {
                if (assigned_module[b] < 0) continue;
                if (agent_firm[a] == agent_firm[b]) continue;
                const int ma = assigned_module[a], mb = assigned_module[b];
                if (!believed_feasible(a, mb) || !believed_feasible(b, ma)) continue;
                const double gain = believed_credit(a, mb) + believed_credit(b, ma) -
                                    believed_credit(a, ma) - believed_credit(b, mb);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a < 0) break;
        std::swap(assigned_module[best_a], assigned_module[best_b]);
        costs.boundary += params.boundary_change_cost;
    }

    std::vector<Contribution> contributions;
    for (int i = 0; i < n; ++i)
        if (assigned_module[i] >= 0)
            contributions.push_back(full_budget_contribution(pop, i, assigned_module[i]));

    return make_result(std::move(contributions), pop.project, pop.talent, pop.resources, costs);
}

AllocationResult allocate_peer(const Population& pop, const PeerParams& params,
                               std::uint64_t seed) {
    const int n = static_cast<int>(pop.agents.size());
    const int n_modules = static_cast<int>(pop.project.modules.size());
    params.validate();

    const Rng self_noise = Rng(seed).derive(kSelfTag);
    const Rng hedonic = Rng(seed).derive(kHedonicTag);

    std::vector<int> open_slots(n_modules);
    for (int m = 0; m < n_modules; ++m) open_slots[m] = pop.project.modules[m].redundancy;

    std::vector<Contribution> raw;

    // Unbounded sets: every agent sees every module and self-selects. Claims
    // are sequential in agent id; the platform publishes remaining open
    // slots, so a volunteer never displaces an earlier one.
    for (int i = 0; i < n; ++i) {
        const Agent& agent = pop.agents[i];

        struct Option {
            int module;
            double perceived;
        };
        std::vector<Option> options;
        for (int m = 0; m < n_modules; ++m) {
            if (open_slots[m] == 0) continue;
            const TaskModule& mod = pop.project.modules[m];

            Rng hcell = hedonic.derive(static_cast<std::uint64_t>(i)).derive(static_cast<std::uint64_t>(m));
            const double benefit = agent.hedonic.sample(hcell) + params.indirect_benefit;
            if (benefit < params.effort_unit_cost * mod.granularity) continue;

            Rng scell = self_noise.derive(static_cast<std::uint64_t>(i)).derive(static_cast<std::uint64_t>(m));
            const double factor =
                agent.self_noise_sigma == 0.0 ? 1.0 : scell.lognormal(agent.self_noise_sigma);
            const double perceived = pop.talent.at(i, m) * factor;
            if (perceived * agent.effort_budget * quality_of(pop, m) < slot_need(mod)) continue;

            options.push_back({m, perceived * quality_of(pop, m)});
        }
        std::stable_sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
            if (a.perceived != b.perceived) return a.perceived > b.perceived;
            return a.module < b.module;
        });

        const int claims = std::min<int>(params.max_slots_per_agent, static_cast<int>(options.size()));
        if (claims == 0) continue;
        for (int c = 0; c < claims; ++c) {
            const int m = options[c].module;
            --open_slots[m];
            Contribution contrib = full_budget_contribution(pop, i, m);
            contrib.effort = agent.effort_budget / claims;
            contrib.effective_effort =
                contrib.effort * pop.talent.at(i, m) * quality_of(pop, m);
            raw.push_back(contrib);
        }
    }

    auto integrated = integrate(raw, pop.project, seed);
    CostLedger costs;
    costs.integration = integrated.cost; // the commons charges no input price

    return make_result(std::move(integrated.accepted), pop.project, pop.talent, pop.resources,
                       costs);
}

IntegrationResult integrate(std::span<const Contribution> contributions, const Project& project,
                            std::uint64_t seed) {
    project.validate();
    if (project.mechanism == IntegrationMechanism::hierarchical_review &&
        project.reviewer_capacity <= 0)
        throw ConfigError("hierarchical_review requires reviewer_capacity >= 1");

    const int n_modules = static_cast<int>(project.modules.size());
    IntegrationResult out;
    if (contributions.empty()) return out;

    std::size_t reviewed = 0;

    switch (project.mechanism) {
    case IntegrationMechanism::averaging: {
        // Keep, per module, the band left after trimming trim_fraction of
        // contributions from each end ranked by effective effort.
        std::vector<std::vector<std::size_t>> per_module(n_modules);
        for (std::size_t idx = 0; idx < contributions.size(); ++idx)
            per_module[contributions[idx].module].push_back(idx);

        std::vector<bool> keep(contributions.size(), false);
        for (auto& idxs : per_module) {
            if (idxs.empty()) continue;
            std::stable_sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
                if (contributions[a].effective_effort != contributions[b].effective_effort)
                    return contributions[a].effective_effort < contributions[b].effective_effort;
                return contributions[a].agent < contributions[b].agent;
            });
            const auto cut =
                static_cast<std::size_t>(project.trim_fraction * static_cast<double>(idxs.size()));
            for (std::size_t r = cut; r + cut < idxs.size(); ++r) keep[idxs[r]] = true;
        }
        reviewed = contributions.size();
        for (std::size_t idx = 0; idx < contributions.size(); ++idx)
            if (keep[idx]) out.accepted.push_back(contributions[idx]);
        break;
    }
    case IntegrationMechanism::peer_review: {
        const Rng rng = Rng(seed).derive(kIntegrateTag);
        reviewed = contributions.size();
        for (const auto& c : contributions) {
            if (!c.good) {
                Rng cell = rng.derive(static_cast<std::uint64_t>(c.module))
                               .derive(static_cast<std::uint64_t>(c.agent));
                if (cell.uniform01() < project.peer_catch_probability) continue;
            }
            out.accepted.push_back(c);
        }
        break;
    }
    case IntegrationMechanism::hierarchical_review: {
        std::vector<int> seen(n_modules, 0);
        for (const auto& c : contributions) {
            if (seen[c.module] >= project.reviewer_capacity) continue; // discarded unreviewed
            ++seen[c.module];
            ++reviewed;
            if (c.good) out.accepted.push_back(c);
        }
        break;
    }
    }

    out.cost = project.per_contribution_integration_cost * static_cast<double>(reviewed) +
               project.fixed_integration_cost;
    return out;
}

} // namespace peerlab
