#include "peerlab/allocate.hpp"
#include "peerlab/model.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

using namespace peerlab;

namespace {

// Hand-built population: one resource per module, shared budget and quality.
Population make_pop(const std::vector<std::vector<double>>& talent_rows, double granularity,
                    int redundancy, double value_weight, double budget = 1.0,
                    double quality = 1.0, double input_price = 0.0,
                    Distribution hedonic = Distribution::constant(100.0),
                    double sigma_self = 0.0) {
    Population pop;
    const int n = static_cast<int>(talent_rows.size());
    const int m = static_cast<int>(talent_rows[0].size());
    for (int i = 0; i < n; ++i) {
        Agent a;
        a.id = i;
        a.effort_budget = budget;
        a.created_index = i;
        a.self_noise_sigma = sigma_self;
        a.hedonic = hedonic;
        pop.agents.push_back(a);
    }
    for (int j = 0; j < m; ++j) {
        pop.resources.push_back(Resource{j, quality, input_price, true});
        TaskModule mod;
        mod.id = j;
        mod.granularity = granularity;
        mod.value_weight = value_weight;
        mod.required_resource = j;
        mod.redundancy = redundancy;
        pop.project.modules.push_back(mod);
    }
    pop.project.trim_fraction = 0.0;
    pop.talent = TalentMatrix::from_rows(talent_rows);
    return pop;
}

// Independent check: enumerate every one-module-per-agent assignment
// (respecting per-module redundancy caps) and recompute productivity from
// scratch. Deliberately shares no code with the allocator under test.
double brute_force_best(const Population& pop) {
    const int n = static_cast<int>(pop.agents.size());
    const int m = static_cast<int>(pop.project.modules.size());
    std::vector<int> choice(n, -1);
    std::vector<int> load(m, 0);
    double best = 0.0;

    auto value_of = [&]() {
        double total = 0.0;
        for (int j = 0; j < m; ++j) {
            const TaskModule& mod = pop.project.modules[j];
            double pooled = 0.0;
            for (int i = 0; i < n; ++i)
                if (choice[i] == j)
                    pooled += pop.agents[i].effort_budget * pop.talent.at(i, j) *
                              pop.resources[mod.required_resource].quality;
            const double need = mod.granularity * mod.redundancy;
            if (pooled >= need && pooled > 0.0) total += mod.value_weight * pooled / need;
        }
        return total;
    };

    std::function<void(int)> rec = [&](int agent) {
        if (agent == n) {
            best = std::max(best, value_of());
            return;
        }
        rec(agent + 1);
        for (int j = 0; j < m; ++j) {
            if (load[j] == pop.project.modules[j].redundancy) continue;
            choice[agent] = j;
            ++load[j];
            rec(agent + 1);
            --load[j];
            choice[agent] = -1;
        }
    };
    rec(0);
    return best;
}

std::vector<std::pair<int, int>> assignment_pairs(const AllocationResult& r) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& c : r.contributions) pairs.emplace_back(c.agent, c.module);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

Population random_instance(Rng& rng, int n, int m, int redundancy, double granularity) {
    std::vector<std::vector<double>> rows(n, std::vector<double>(m));
    for (auto& row : rows)
        for (auto& t : row) t = rng.lognormal(1.0);
    return make_pop(rows, granularity, redundancy, 1.0);
}

} // namespace

TEST_CASE("oracle: single agent, single module is forced") {
    const auto pop = make_pop({{2.0}}, 1.0, 1, 1.0);
    const auto r = allocate_oracle(pop);
    REQUIRE(r.contributions.size() == 1);
    CHECK(r.contributions[0].agent == 0);
    CHECK(r.contributions[0].module == 0);
    CHECK(r.productivity == doctest::Approx(2.0));
    CHECK(r.costs.transaction == 0.0);
    CHECK(r.costs.boundary == 0.0);
    CHECK(r.costs.integration == 0.0);
    CHECK(r.costs.input_price == 0.0);
}

TEST_CASE("oracle: flat talent resolves ties lexicographically") {
    const auto pop = make_pop({{2.0, 2.0}, {2.0, 2.0}}, 1.0, 1, 1.0);
    const auto r = allocate_oracle(pop);
    CHECK(assignment_pairs(r) == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("oracle: diagonal specialists get the diagonal") {
    const auto pop = make_pop({{3.0, 1.0}, {1.0, 3.0}}, 1.0, 1, 1.0);
    const auto r = allocate_oracle(pop);
    CHECK(assignment_pairs(r) == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
    CHECK(r.productivity == doctest::Approx(brute_force_best(pop)));
    CHECK(r.productivity == doctest::Approx(6.0));
}

TEST_CASE("oracle matches the brute-force enumeration on random instances") {
    Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        Rng t = rng.derive(static_cast<std::uint64_t>(trial));
        const int n = 2 + static_cast<int>(t.next_below(4)); // 2..5 agents
        const int m = 2 + static_cast<int>(t.next_below(3)); // 2..4 modules
        const int k = 1 + static_cast<int>(t.next_below(2)); // redundancy 1..2
        const double g = 0.3 + t.uniform01();
        auto pop = random_instance(t, n, m, k, g);
        const auto r = allocate_oracle(pop);
        CHECK(r.productivity == doctest::Approx(brute_force_best(pop)).epsilon(1e-9));
    }
}

TEST_CASE("oracle refuses instances above the limit") {
    std::vector<std::vector<double>> rows(11, std::vector<double>(2, 1.0));
    const auto pop = make_pop(rows, 1.0, 1, 1.0);
    CHECK_THROWS_AS(allocate_oracle(pop), CapacityError);

    // The relaxation bound still dominates any feasible allocation.
    const double bound = oracle_upper_bound(pop);
    OracleOptions roomy;
    roomy.limit = 16;
    CHECK(bound >= allocate_oracle(pop, roomy).productivity);
}

TEST_CASE("market: prohibitive transaction cost means no trade and no cost") {
    auto pop = make_pop({{1.0, 1.0}, {1.0, 1.0}}, 1.0, 1, 1.0);
    MarketParams params;
    params.bucket_count = 1;
    params.transaction_cost = 100.0; // above any module's value
    const auto r = allocate_market(pop, params, 7);
    CHECK(r.contributions.empty());
    CHECK(r.productivity == 0.0);
    CHECK(r.costs.transaction == 0.0);
}

TEST_CASE("market: one bucket hires in agent-id order") {
    const auto pop = make_pop({{2.0, 1.0}, {1.0, 2.0}}, 0.1, 1, 1.0);
    MarketParams params;
    params.bucket_count = 1;
    const auto r = allocate_market(pop, params, 7);
    CHECK(assignment_pairs(r) == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("market: indistinguishable agents perform like random assignment on average") {
    // With one bucket the market cannot see talent, so its mean output over
    // seeds tracks the all-permutations average computed by hand.
    MarketParams params;
    params.bucket_count = 1;

    double market_mean = 0.0;
    double random_mean = 0.0;
    const int seeds = 200;
    Rng base(1905);
    for (int s = 0; s < seeds; ++s) {
        Rng t = base.derive(static_cast<std::uint64_t>(s));
        auto pop = random_instance(t, 4, 4, 1, 0.05);
        market_mean += allocate_market(pop, params, s).productivity;

        // Average over all 4! complete assignments.
        std::vector<int> perm{0, 1, 2, 3};
        double sum = 0.0;
        int count = 0;
        do {
            double p = 0.0;
            for (int i = 0; i < 4; ++i) {
                const double pooled = pop.talent.at(i, perm[i]);
                p += 1.0 * pooled / 0.05;
            }
            sum += p;
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        random_mean += sum / count;
    }
    market_mean /= seeds;
    random_mean /= seeds;
    CHECK(market_mean == doctest::Approx(random_mean).epsilon(0.05));
}

TEST_CASE("market: full codification at zero friction matches the oracle on type talent") {
    // Talent determined by agent type (constant rows): with one bucket per
    // agent and no costs the codified signal carries everything the oracle
    // knows.
    for (double a : {0.5, 1.0, 2.0})
        for (double b : {0.5, 1.0, 2.0}) {
            const auto pop = make_pop({{a, a}, {b, b}}, 0.4, 1, 1.0);
            MarketParams params;
            params.bucket_count = 2; // >= n
            params.transaction_cost = 0.0;
            params.base_wage = 0.0;
            const auto market = allocate_market(pop, params, 3);
            const auto oracle = allocate_oracle(pop);
            CHECK(market.productivity == doctest::Approx(oracle.productivity).epsilon(1e-9));
        }
}

TEST_CASE("market charges transaction and input costs per contract") {
    auto pop = make_pop({{2.0, 2.0}, {2.0, 2.0}}, 0.5, 1, 10.0, 1.0, 1.0, 0.25);
    MarketParams params;
    params.bucket_count = 2;
    params.transaction_cost = 0.5;
    const auto r = allocate_market(pop, params, 7);
    REQUIRE(r.contributions.size() == 2);
    CHECK(r.costs.transaction == doctest::Approx(1.0));
    CHECK(r.costs.input_price == doctest::Approx(0.5));
}

TEST_CASE("firm: one firm with a clear-eyed manager is greedy on true talent") {
    const auto pop = make_pop({{3.0, 1.0}, {1.0, 3.0}}, 1.0, 1, 1.0);
    FirmParams params;
    params.firm_size = 2;
    params.manager_noise_sigma = 0.0;
    const auto r = allocate_firm(pop, params, 5);
    CHECK(assignment_pairs(r) == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
    CHECK(r.productivity == doctest::Approx(allocate_oracle(pop).productivity));
}

TEST_CASE("firm: boundaries strand talent when swaps are priced out") {
    // Round-robin pairs A0 with module 0 and A1 with module 1, where both
    // are weak; the strong cross-boundary matches are unreachable.
    const auto pop = make_pop({{1.0, 3.0}, {3.0, 1.0}}, 2.0, 1, 1.0);
    FirmParams params;
    params.firm_size = 1;
    params.manager_noise_sigma = 0.0;
    params.boundary_change_cost = 1e18; // swaps priced out
    params.max_boundary_swaps = 10;
    const auto r = allocate_firm(pop, params, 5);
    const auto oracle = allocate_oracle(pop);
    CHECK(r.productivity < oracle.productivity);
    CHECK(r.productivity == 0.0); // within-boundary pairs cannot even complete
    CHECK(oracle.productivity == doctest::Approx(3.0));
}

TEST_CASE("firm: free swaps recover the oracle on a 2x2") {
    const auto pop = make_pop({{1.0, 3.0}, {3.0, 1.0}}, 0.5, 1, 1.0);
    FirmParams params;
    params.firm_size = 1;
    params.manager_noise_sigma = 0.0;
    params.boundary_change_cost = 0.0;
    params.max_boundary_swaps = 4;
    const auto r = allocate_firm(pop, params, 5);
    CHECK(r.productivity == doctest::Approx(allocate_oracle(pop).productivity));
    CHECK(assignment_pairs(r) == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
}

TEST_CASE("firm: each executed swap charges the boundary cost") {
    const auto pop = make_pop({{1.0, 3.0}, {3.0, 1.0}}, 0.5, 1, 1.0);
    FirmParams params;
    params.firm_size = 1;
    params.manager_noise_sigma = 0.0;
    params.boundary_change_cost = 0.25;
    params.max_boundary_swaps = 4;
    const auto r = allocate_firm(pop, params, 5);
    CHECK(r.costs.boundary == doctest::Approx(0.25));
}

TEST_CASE("firm rejects oversized firms") {
    const auto pop = make_pop({{1.0}}, 1.0, 1, 1.0);
    FirmParams params;
    params.firm_size = 2;
    CHECK_THROWS_AS(allocate_firm(pop, params, 1), ConfigError);
}

TEST_CASE("peer: accurate self-knowledge with no contention equals the oracle") {
    const auto pop = make_pop({{5.0, 1.0, 1.0}, {1.0, 5.0, 1.0}, {1.0, 1.0, 5.0}}, 0.5, 1, 1.0);
    PeerParams params;
    params.max_slots_per_agent = 1;
    const auto peer = allocate_peer(pop, params, 11);
    const auto oracle = allocate_oracle(pop);
    CHECK(assignment_pairs(peer) == assignment_pairs(oracle));
    CHECK(peer.productivity == doctest::Approx(oracle.productivity));
    CHECK(peer.costs.input_price == 0.0); // the commons charges nothing
}

TEST_CASE("peer: nobody moved by the work means no contributions") {
    const auto pop = make_pop({{5.0, 5.0}, {5.0, 5.0}}, 1.0, 1, 1.0, 1.0, 1.0, 0.0,
                              Distribution::constant(0.1));
    PeerParams params;
    params.effort_unit_cost = 1.0; // cost 1 per module, hedonic only 0.1
    const auto r = allocate_peer(pop, params, 11);
    CHECK(r.contributions.empty());
    CHECK(r.productivity == 0.0);
}

TEST_CASE("peer: redundancy caps volunteers per module") {
    const auto pop = make_pop({{2.0}, {2.0}, {2.0}, {2.0}, {2.0}}, 0.5, 3, 1.0);
    PeerParams params;
    const auto r = allocate_peer(pop, params, 11);
    CHECK(r.contributions.size() == 3); // five willing, three slots
}

TEST_CASE("peer: multiple slots split the budget evenly") {
    const auto pop = make_pop({{2.0, 2.0, 1.0}}, 0.4, 1, 1.0);
    PeerParams params;
    params.max_slots_per_agent = 2;
    const auto r = allocate_peer(pop, params, 3);
    REQUIRE(r.contributions.size() == 2);
    for (const auto& c : r.contributions) {
        CHECK(c.effort == doctest::Approx(0.5));
        CHECK(c.effective_effort == doctest::Approx(0.5 * pop.talent.at(0, c.module)));
    }
    // Both halves clear the threshold: 0.5 * 2.0 >= 0.4 on the two best modules.
    CHECK(r.completed_modules == std::vector<int>{0, 1});
}

TEST_CASE("market: redundancy above the supply means the module is abandoned") {
    const auto pop = make_pop({{2.0}, {2.0}}, 0.5, 3, 1.0);
    MarketParams params;
    params.bucket_count = 2;
    params.transaction_cost = 0.1;
    const auto r = allocate_market(pop, params, 1);
    CHECK(r.contributions.empty()); // two agents cannot staff three slots
    CHECK(r.costs.transaction == 0.0);
}

TEST_CASE("market: a module with enough redundancy hires that many contracts") {
    const auto pop = make_pop({{2.0}, {2.0}, {2.0}}, 0.5, 2, 5.0);
    MarketParams params;
    params.bucket_count = 3;
    params.transaction_cost = 0.25;
    const auto r = allocate_market(pop, params, 1);
    REQUIRE(r.contributions.size() == 2);
    CHECK(r.costs.transaction == doctest::Approx(0.5));
}

TEST_CASE("peer: free riders leave output and accepted contributions untouched") {
    const auto base = make_pop({{2.0, 1.0}, {1.0, 2.0}}, 0.5, 1, 1.0);
    // Same population plus agents who never contribute (hedonic zero).
    auto extended = base;
    for (int i = 2; i < 6; ++i) {
        Agent a;
        a.id = i;
        a.effort_budget = 1.0;
        a.created_index = i;
        a.hedonic = Distribution::constant(0.0);
        extended.agents.push_back(a);
    }
    extended.talent = TalentMatrix::from_rows(
        {{2.0, 1.0}, {1.0, 2.0}, {9.0, 9.0}, {9.0, 9.0}, {9.0, 9.0}, {9.0, 9.0}});

    PeerParams params;
    const auto small = allocate_peer(base, params, 13);
    const auto big = allocate_peer(extended, params, 13);
    CHECK(assignment_pairs(small) == assignment_pairs(big));
    CHECK(small.productivity == doctest::Approx(big.productivity));
}

TEST_CASE("oracle dominance holds across modes on random instances") {
    Rng rng(606);
    for (int trial = 0; trial < 25; ++trial) {
        Rng t = rng.derive(static_cast<std::uint64_t>(trial));
        auto pop = random_instance(t, 5, 4, 1, 0.8);
        for (auto& a : pop.agents) {
            a.self_noise_sigma = 0.4;
            a.hedonic = Distribution::uniform(0.0, 4.0);
        }
        const double oracle = allocate_oracle(pop).productivity;

        MarketParams market;
        market.bucket_count = 2;
        market.transaction_cost = 0.05;
        CHECK(allocate_market(pop, market, trial).productivity <= oracle + 1e-9);

        FirmParams firm;
        firm.firm_size = 2;
        firm.manager_noise_sigma = 0.5;
        firm.max_boundary_swaps = 2;
        firm.boundary_change_cost = 0.1;
        CHECK(allocate_firm(pop, firm, trial).productivity <= oracle + 1e-9);

        PeerParams peer;
        CHECK(allocate_peer(pop, peer, trial).productivity <= oracle + 1e-9);
    }
}

TEST_CASE("all modes converge to the oracle as frictions vanish") {
    // sigma_t = 0 gives type talent (all ones); no noise, no costs.
    const auto pop = make_pop({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}}, 1.0, 1,
                              1.0);
    const double oracle = allocate_oracle(pop).productivity;
    CHECK(oracle == doctest::Approx(4.0));

    MarketParams market;
    market.bucket_count = 4;
    CHECK(allocate_market(pop, market, 3).productivity == doctest::Approx(oracle));

    FirmParams firm;
    firm.firm_size = 2;
    firm.manager_noise_sigma = 0.0;
    CHECK(allocate_firm(pop, firm, 3).productivity == doctest::Approx(oracle));

    PeerParams peer;
    CHECK(allocate_peer(pop, peer, 3).productivity == doctest::Approx(oracle));
}

TEST_CASE("firm with free swaps and clear sight matches the oracle on every feasible 2x2") {
    // Exhaustive grid where every placement is feasible: the one-swap
    // neighborhood of the round-robin assignment contains the optimum.
    const std::vector<double> grid{0.5, 1.0, 2.0};
    FirmParams params;
    params.firm_size = 1;
    params.manager_noise_sigma = 0.0;
    params.boundary_change_cost = 0.0;
    params.max_boundary_swaps = 4;
    for (double t00 : grid)
        for (double t01 : grid)
            for (double t10 : grid)
                for (double t11 : grid) {
                    const auto pop = make_pop({{t00, t01}, {t10, t11}}, 0.4, 1, 1.0);
                    const auto firm = allocate_firm(pop, params, 1);
                    const auto oracle = allocate_oracle(pop);
                    CHECK(firm.productivity ==
                          doctest::Approx(oracle.productivity).epsilon(1e-9));
                }
}

TEST_CASE("scaling all talent leaves the oracle's assignment identity unchanged") {
    Rng rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        Rng t = rng.derive(static_cast<std::uint64_t>(trial));
        auto pop = random_instance(t, 4, 4, 1, 0.1);
        const auto before = assignment_pairs(allocate_oracle(pop));

        auto scaled = pop;
        std::vector<std::vector<double>> rows(4, std::vector<double>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rows[i][j] = pop.talent.at(i, j) * 3.7;
        scaled.talent = TalentMatrix::from_rows(rows);
        CHECK(assignment_pairs(allocate_oracle(scaled)) == before);
    }
}

TEST_CASE("integrate: averaging trims the outlier band") {
    Project project;
    TaskModule mod;
    mod.id = 0;
    mod.granularity = 1.0;
    mod.redundancy = 1;
    mod.value_weight = 1.0;
    project.modules.push_back(mod);
    project.mechanism = IntegrationMechanism::averaging;
    project.trim_fraction = 0.25;

    std::vector<Contribution> cs;
    for (double e : {10.0, 10.0, 10.0, 0.0}) {
        Contribution c;
        c.agent = static_cast<int>(cs.size());
        c.module = 0;
        c.effort = e;
        c.effective_effort = e;
        c.good = e != 0.0;
        cs.push_back(c);
    }

    // Independent trimmed-band computation: sort {0,10,10,10}, drop
    // floor(0.25*4)=1 from each end, keep two middle tens.
    const auto r = integrate(cs, project, 1);
    REQUIRE(r.accepted.size() == 2);
    for (const auto& c : r.accepted) CHECK(c.effective_effort == 10.0);
}

TEST_CASE("integrate: averaging trims each module independently") {
    Project project;
    for (int m = 0; m < 2; ++m) {
        TaskModule mod;
        mod.id = m;
        mod.granularity = 1.0;
        mod.redundancy = 1;
        mod.value_weight = 1.0;
        project.modules.push_back(mod);
    }
    project.mechanism = IntegrationMechanism::averaging;
    project.trim_fraction = 0.25;

    std::vector<Contribution> cs;
    auto add = [&](int agent, int module, double e) {
        Contribution c;
        c.agent = agent;
        c.module = module;
        c.effort = e;
        c.effective_effort = e;
        cs.push_back(c);
    };
    // Module 0 carries a low outlier, module 1 a high one.
    add(0, 0, 10.0);
    add(1, 0, 10.0);
    add(2, 0, 10.0);
    add(3, 0, 0.0);
    add(0, 1, 5.0);
    add(1, 1, 5.0);
    add(2, 1, 5.0);
    add(3, 1, 50.0);

    const auto r = integrate(cs, project, 1);
    for (const auto& c : r.accepted) {
        if (c.module == 0) CHECK(c.effective_effort == 10.0);
        if (c.module == 1) CHECK(c.effective_effort == 5.0);
    }
    CHECK(r.accepted.size() == 4); // two survivors per module
}

TEST_CASE("integrate: hierarchical review accepts at most the reviewer capacity") {
    Project project;
    TaskModule mod;
    mod.id = 0;
    mod.granularity = 1.0;
    mod.redundancy = 5;
    mod.value_weight = 1.0;
    project.modules.push_back(mod);
    project.mechanism = IntegrationMechanism::hierarchical_review;
    project.reviewer_capacity = 2;
    project.per_contribution_integration_cost = 0.5;
    project.fixed_integration_cost = 1.0;

    std::vector<Contribution> cs(5);
    for (int i = 0; i < 5; ++i) {
        cs[i].agent = i;
        cs[i].module = 0;
        cs[i].effective_effort = 1.0;
    }
    const auto r = integrate(cs, project, 1);
    CHECK(r.accepted.size() == 2);
    CHECK(r.accepted[0].agent == 0); // arrival order
    CHECK(r.accepted[1].agent == 1);
    CHECK(r.cost == doctest::Approx(0.5 * 2 + 1.0)); // only reviewed ones are billed
}

TEST_CASE("integrate: certain peer review catches every bad contribution") {
    Project project;
    TaskModule mod;
    mod.id = 0;
    mod.granularity = 1.0;
    mod.redundancy = 2;
    mod.value_weight = 1.0;
    project.modules.push_back(mod);
    project.mechanism = IntegrationMechanism::peer_review;
    project.peer_catch_probability = 1.0;

    std::vector<Contribution> cs(2);
    cs[0].agent = 0;
    cs[0].module = 0;
    cs[0].effective_effort = 1.0;
    cs[1].agent = 1;
    cs[1].module = 0;
    cs[1].effective_effort = 1.0;
    cs[1].good = false;

    const auto r = integrate(cs, project, 9);
    REQUIRE(r.accepted.size() == 1);
    CHECK(r.accepted[0].agent == 0);
}

TEST_CASE("integrate: missing mechanism parameter is a configuration error") {
    Project project;
    TaskModule mod;
    mod.id = 0;
    mod.granularity = 1.0;
    mod.redundancy = 1;
    mod.value_weight = 1.0;
    project.modules.push_back(mod);
    project.mechanism = IntegrationMechanism::hierarchical_review;
    project.reviewer_capacity = 0; // never set

    std::vector<Contribution> cs(1);
    cs[0].module = 0;
    cs[0].effective_effort = 1.0;
    CHECK_THROWS_AS(integrate(cs, project, 1), ConfigError);
}

TEST_CASE("integrate: probabilistic peer review is deterministic per seed") {
    Project project;
    TaskModule mod;
    mod.id = 0;
    mod.granularity = 1.0;
    mod.redundancy = 10;
    mod.value_weight = 1.0;
    project.modules.push_back(mod);
    project.mechanism = IntegrationMechanism::peer_review;
    project.peer_catch_probability = 0.5;

    std::vector<Contribution> cs(10);
    for (int i = 0; i < 10; ++i) {
        cs[i].agent = i;
        cs[i].module = 0;
        cs[i].effective_effort = 1.0;
        cs[i].good = i % 2 == 0;
    }
    const auto a = integrate(cs, project, 42);
    const auto b = integrate(cs, project, 42);
    REQUIRE(a.accepted.size() == b.accepted.size());
    for (std::size_t i = 0; i < a.accepted.size(); ++i)
        CHECK(a.accepted[i].agent == b.accepted[i].agent);
    // Good ones always survive.
    for (const auto& c : a.accepted)
        if (c.agent % 2 == 0) CHECK(c.good);
}
