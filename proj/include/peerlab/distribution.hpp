#pragma once

#include "peerlab/errors.hpp"
#include "peerlab/rng.hpp"

#include <cstdio>
#include <limits>
#include <string>

namespace peerlab {

// Scalar distribution used for hedonic benefits and motivation draws.
// Sampling is inverse-CDF of a single uniform, so a draw is a pure function
// of its stream address.
struct Distribution {
    enum class Kind { constant, uniform, lognormal };

    Kind kind = Kind::constant;
    double a = 0.0; // constant: value; uniform: lo; lognormal: median
    double b = 0.0; // uniform: hi; lognormal: log-sd

    static Distribution constant(double v) { return {Kind::constant, v, 0.0}; }

    static Distribution uniform(double lo, double hi) {
        if (hi < lo) throw ConfigError("uniform distribution requires lo <= hi");
        return {Kind::uniform, lo, hi};
    }

    static Distribution lognormal(double median, double sigma) {
        if (median <= 0.0) throw ConfigError("lognormal median must be > 0");
        if (sigma < 0.0) throw ConfigError("lognormal sigma must be >= 0");
        return {Kind::lognormal, median, sigma};
    }

    double quantile(double p) const {
        if (p < 0.0 || p > 1.0) throw DomainError("quantile probability outside [0,1]");
        switch (kind) {
        case Kind::constant:
            return a;
        case Kind::uniform:
            return a + p * (b - a);
        case Kind::lognormal:
            if (p == 0.0) return 0.0;
            if (p == 1.0) return std::numeric_limits<double>::infinity();
            return a * std::exp(b * Rng::inverse_normal_cdf(p));
        }
        return a;
    }

    double min_support() const {
        switch (kind) {
        case Kind::constant: return a;
        case Kind::uniform: return a;
        case Kind::lognormal: return 0.0;
        }
        return a;
    }

    // P(draw >= x)
    double prob_at_least(double x) const {
        switch (kind) {
        case Kind::constant:
            return x <= a ? 1.0 : 0.0;
        case Kind::uniform:
            if (x <= a) return 1.0;
            if (x >= b) return 0.0;
            return (b - x) / (b - a);
        case Kind::lognormal:
            if (x <= 0.0) return 1.0;
            if (b == 0.0) return x <= a ? 1.0 : 0.0;
            return 1.0 - Rng::normal_cdf(std::log(x / a) / b);
        }
        return 0.0;
    }

    double sample(Rng& rng) const {
        switch (kind) {
        case Kind::constant:
            return a;
        case Kind::uniform:
            return rng.uniform(a, b);
        case Kind::lognormal:
            return a * rng.lognormal(b);
        }
        return a;
    }

    std::string describe() const {
        char buf[96];
        switch (kind) {
        case Kind::constant:
            std::snprintf(buf, sizeof(buf), "constant(%g)", a);
            break;
        case Kind::uniform:
            std::snprintf(buf, sizeof(buf), "uniform(%g,%g)", a, b);
            break;
        case Kind::lognormal:
            std::snprintf(buf, sizeof(buf), "lognormal(median=%g,sigma=%g)", a, b);
            break;
        }
        return buf;
    }
};

} // namespace peerlab
