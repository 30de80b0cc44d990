#include "peerlab/distribution.hpp"
#include "peerlab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace peerlab;

TEST_CASE("counter addressing is stable and order-free") {
    Rng a(42);
    Rng b(42);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() == b.next_u64());

    // Consuming from one derived stream does not move another.
    Rng base(7);
    Rng s1 = base.derive(std::uint64_t{1});
    Rng s2 = base.derive(std::uint64_t{2});
    const auto first_of_s2 = base.derive(std::uint64_t{2}).next_u64();
    (void)s1.next_u64();
    (void)s1.next_u64();
    CHECK(s2.next_u64() == first_of_s2);
}

TEST_CASE("derived streams differ by tag and by parent") {
    Rng base(1);
    CHECK(base.derive(std::uint64_t{1}).next_u64() != base.derive(std::uint64_t{2}).next_u64());
    CHECK(Rng(1).derive("x").next_u64() != Rng(2).derive("x").next_u64());
}

TEST_CASE("uniform01 stays in [0,1) and looks flat") {
    Rng rng(9);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("inverse normal CDF round-trips the CDF") {
    for (double p : {0.001, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999}) {
        const double x = Rng::inverse_normal_cdf(p);
        CHECK(Rng::normal_cdf(x) == doctest::Approx(p).epsilon(1e-6));
    }
    CHECK(Rng::inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("normal draws have roughly unit variance") {
    Rng rng(1234);
    double sum = 0.0, ss = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        ss += z * z;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(0.03));
    CHECK(ss / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("lognormal has median one") {
    Rng rng(5);
    int above = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i)
        if (rng.lognormal(1.0) > 1.0) ++above;
    CHECK(static_cast<double>(above) / n == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("distribution quantiles") {
    const auto u = Distribution::uniform(0.0, 2.0);
    CHECK(u.quantile(0.0) == 0.0);
    CHECK(u.quantile(0.5) == 1.0);
    CHECK(u.quantile(1.0) == 2.0);
    CHECK(u.prob_at_least(1.0) == doctest::Approx(0.5));

    const auto ln = Distribution::lognormal(1.0, 1.0);
    CHECK(ln.quantile(0.5) == doctest::Approx(1.0));
    CHECK(ln.prob_at_least(1.0) == doctest::Approx(0.5));
    CHECK(ln.min_support() == 0.0);

    const auto c = Distribution::constant(3.0);
    CHECK(c.quantile(0.3) == 3.0);
    CHECK(c.prob_at_least(3.0) == 1.0);
    CHECK(c.prob_at_least(3.5) == 0.0);

    CHECK_THROWS_AS(u.quantile(1.5), DomainError);
    CHECK_THROWS_AS(Distribution::uniform(2.0, 1.0), ConfigError);
}

TEST_CASE("distribution sampling matches its quantile law") {
    const auto ln = Distribution::lognormal(2.0, 0.5);
    Rng rng(77);
    int below_median = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i)
        if (ln.sample(rng) < 2.0) ++below_median;
    CHECK(static_cast<double>(below_median) / n == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("shuffle is a permutation and seed-stable") {
    std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
    Rng a(3);
    a.shuffle(v);
    CHECK(std::set<int>(v.begin(), v.end()).size() == 8);

    std::vector<int> w{0, 1, 2, 3, 4, 5, 6, 7};
    Rng b(3);
    b.shuffle(w);
    CHECK(v == w);
}
