#include "peerlab/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace peerlab;

namespace {

PopulationConfig small_config(int n, int m) {
    PopulationConfig c;
    c.n_agents = n;
    c.n_modules = m;
    c.sigma_t = 1.0;
    c.sigma_self = 0.0;
    c.redundancy = 1;
    c.trim_fraction = 0.0;
    return c;
}

Project one_module_project(double granularity, int redundancy, double value) {
    Project p;
    TaskModule m;
    m.id = 0;
    m.granularity = granularity;
    m.redundancy = redundancy;
    m.value_weight = value;
    m.required_resource = 0;
    p.modules.push_back(m);
    return p;
}

} // namespace

TEST_CASE("gen_population rejects bad configs") {
    auto c = small_config(4, 4);
    c.n_agents = 0;
    CHECK_THROWS_AS(gen_population(c, 7), ConfigError);

    c = small_config(4, 0);
    CHECK_THROWS_AS(gen_population(c, 7), ConfigError);

    c = small_config(4, 4);
    c.sigma_t = -1.0;
    CHECK_THROWS_AS(gen_population(c, 7), ConfigError);

    c = small_config(4, 4);
    c.input_price = -0.5;
    CHECK_THROWS_AS(gen_population(c, 7), ConfigError);
}

TEST_CASE("sigma_t zero degenerates to all-ones talent") {
    auto c = small_config(4, 4);
    c.sigma_t = 0.0;
    const auto pop = gen_population(c, 7);
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < 4; ++m) CHECK(pop.talent.at(i, m) == 1.0);
}

TEST_CASE("gen_population is a pure function of config and seed") {
    const auto c = small_config(4, 4);
    const auto a = gen_population(c, 7);
    const auto b = gen_population(c, 7);
    CHECK(a.talent.entries() == b.talent.entries());

    const auto other = gen_population(c, 8);
    CHECK(a.talent.entries() != other.talent.entries());
}

TEST_CASE("talent entries are finite, positive, median-one-ish") {
    auto c = small_config(40, 10);
    const auto pop = gen_population(c, 3);
    int above = 0;
    for (int i = 0; i < 40; ++i)
        for (int m = 0; m < 10; ++m) {
            const double t = pop.talent.at(i, m);
            REQUIRE(std::isfinite(t));
            REQUIRE(t > 0.0);
            if (t > 1.0) ++above;
        }
    CHECK(static_cast<double>(above) / 400.0 == doctest::Approx(0.5).epsilon(0.15));
}

TEST_CASE("growing the population keeps existing talent entries") {
    auto c4 = small_config(4, 4);
    auto c6 = small_config(6, 4);
    const auto small = gen_population(c4, 11);
    const auto large = gen_population(c6, 11);
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < 4; ++m) CHECK(small.talent.at(i, m) == large.talent.at(i, m));
}

TEST_CASE("agent_value") {
    CHECK(agent_value(1.0, 10.0) == 10.0);
    CHECK(agent_value(0.0, 10.0) == 0.0);
    CHECK(agent_value(0.25, 8.0) == 2.0);
    CHECK_THROWS_AS(agent_value(1.5, 1.0), DomainError);
    CHECK_THROWS_AS(agent_value(-0.1, 1.0), DomainError);
    CHECK_THROWS_AS(agent_value(0.5, -1.0), DomainError);

    // Monotone in both arguments.
    CHECK(agent_value(0.6, 5.0) >= agent_value(0.5, 5.0));
    CHECK(agent_value(0.5, 6.0) >= agent_value(0.5, 5.0));
}

TEST_CASE("productivity completion rule") {
    const auto project = one_module_project(6.0, 1, 5.0);
    const TalentMatrix talent = TalentMatrix::from_rows({{2.0}, {1.0}});
    const std::vector<Resource> resources{{0, 1.0, 0.0, true}};

    SUBCASE("one contribution crossing the threshold exactly") {
        std::vector<Contribution> cs{{0, 0, 0, 3.0, 3.0 * 2.0 * 1.0, true}};
        const auto r = productivity(cs, project, talent, resources);
        CHECK(r.productivity == doctest::Approx(5.0));
        CHECK(r.completed_modules == std::vector<int>{0});
    }
    SUBCASE("below threshold yields nothing") {
        std::vector<Contribution> cs{{0, 0, 0, 2.0, 2.0 * 2.0, true}};
        const auto r = productivity(cs, project, talent, resources);
        CHECK(r.productivity == 0.0);
        CHECK(r.completed_modules.empty());
    }
    SUBCASE("two small contributions still below threshold") {
        std::vector<Contribution> cs{{1, 0, 0, 2.0, 2.0 * 1.0, true},
                                     {0, 0, 0, 1.0, 1.0 * 2.0, true}};
        const auto r = productivity(cs, project, talent, resources);
        CHECK(r.productivity == 0.0);
    }
}

TEST_CASE("productivity rejects dangling references") {
    const auto project = one_module_project(1.0, 1, 1.0);
    const TalentMatrix talent = TalentMatrix::from_rows({{1.0}});
    const std::vector<Resource> resources{{0, 1.0, 0.0, true}};

    std::vector<Contribution> bad_agent{{9, 0, 0, 1.0, 1.0, true}};
    CHECK_THROWS_AS(productivity(bad_agent, project, talent, resources), IntegrityError);
    std::vector<Contribution> bad_module{{0, 9, 0, 1.0, 1.0, true}};
    CHECK_THROWS_AS(productivity(bad_module, project, talent, resources), IntegrityError);
    std::vector<Contribution> bad_resource{{0, 0, 9, 1.0, 1.0, true}};
    CHECK_THROWS_AS(productivity(bad_resource, project, talent, resources), IntegrityError);
}

TEST_CASE("productivity is monotone under added contributions and talent scaling") {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        Rng t = rng.derive(static_cast<std::uint64_t>(trial));
        Project project;
        const int n_modules = 3;
        for (int m = 0; m < n_modules; ++m) {
            TaskModule mod;
            mod.id = m;
            mod.granularity = 0.5 + t.uniform01();
            mod.redundancy = 1 + static_cast<int>(t.next_below(2));
            mod.value_weight = t.uniform01() * 2.0;
            mod.required_resource = 0;
            project.modules.push_back(mod);
        }
        const TalentMatrix talent = TalentMatrix::from_rows({{1, 1, 1}, {1, 1, 1}});
        const std::vector<Resource> resources{{0, 1.0, 0.0, true}};

        std::vector<Contribution> cs;
        const int n_contrib = 1 + static_cast<int>(t.next_below(4));
        for (int i = 0; i < n_contrib; ++i) {
            Contribution c;
            c.agent = static_cast<int>(t.next_below(2));
            c.module = static_cast<int>(t.next_below(n_modules));
            c.resource = 0;
            c.effort = t.uniform01() * 2.0;
            c.effective_effort = c.effort;
            cs.push_back(c);
        }
        const double base = productivity(cs, project, talent, resources).productivity;

        // Adding a contribution never lowers output.
        auto more = cs;
        more.push_back(Contribution{0, 0, 0, 1.0, 1.0, true});
        CHECK(productivity(more, project, talent, resources).productivity >= base);

        // Scaling every effective effort up never lowers output either.
        auto scaled = cs;
        for (auto& c : scaled) c.effective_effort *= 1.5;
        CHECK(productivity(scaled, project, talent, resources).productivity >= base);
    }
}

TEST_CASE("nonrival resources serve any number of agents undiminished") {
    const auto c = small_config(3, 1);
    const auto pop = gen_population(c, 1);
    CHECK(pop.resources[0].nonrival);
    // Effective effort of agent 0 is the same whether or not others use the
    // same resource; it is a pure product of its own effort, talent, quality.
    const double quality = pop.resources[0].quality;
    const double alone = 1.0 * pop.talent.at(0, 0) * quality;
    std::vector<Contribution> crowd;
    for (int i = 0; i < 3; ++i)
        crowd.push_back({i, 0, 0, 1.0, 1.0 * pop.talent.at(i, 0) * quality, true});
    CHECK(crowd[0].effective_effort == alone);
}
