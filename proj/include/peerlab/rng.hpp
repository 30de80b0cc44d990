#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace peerlab {

// Counter-based splittable generator.
//
// Algorithm: output(i) = mix64(key + i * GOLDEN), where mix64 is the
// SplitMix64 finalizer (Steele/Lea/Flood). A stream is identified by a
// 64-bit key; `derive(tag)` produces an independent stream with
// key' = mix64(key ^ mix64(tag + GOLDEN)).
//
// Draws are addressed by (seed, tag..., counter), never by global draw
// order, so adding an agent, a module, or a mode to a run leaves every
// other entity's draws untouched.
class Rng {
public:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    explicit constexpr Rng(std::uint64_t seed = 0) noexcept : key_(mix64(seed ^ kGolden)) {}

    // Independent substream; does not consume state from this stream.
    [[nodiscard]] constexpr Rng derive(std::uint64_t tag) const noexcept {
        Rng child(0);
        child.key_ = mix64(key_ ^ mix64(tag + kGolden));
        child.counter_ = 0;
        return child;
    }

    [[nodiscard]] Rng derive(std::string_view tag) const noexcept {
        // FNV-1a 64
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char c : tag) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        return derive(h);
    }

    std::uint64_t next_u64() noexcept { return mix64(key_ + (++counter_) * kGolden); }

    // Uniform in [0, 1), 53 random bits.
    double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

    // Unbiased-enough bounded draw (Lemire multiply-shift).
    std::uint64_t next_below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal by inverse-CDF of a single uniform draw. One draw per
    // variate keeps every variate addressable by its counter index.
    double normal() noexcept {
        double u = uniform01();
        if (u <= 0.0) u = 0x1.0p-60;
        return inverse_normal_cdf(u);
    }

    // exp(sigma * z): lognormal with median 1 and log-standard-deviation sigma.
    double lognormal(double sigma) noexcept { return std::exp(sigma * normal()); }

    template <typename T>
    void shuffle(std::vector<T>& v) noexcept {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

    // Acklam's rational approximation to the standard normal quantile
    // (relative error below 1.2e-9 over (0,1)).
    static double inverse_normal_cdf(double p) noexcept {
        constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
        constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
        constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
        constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
        constexpr double plow = 0.02425;

        if (p < plow) {
            const double q = std::sqrt(-2.0 * std::log(p));
            return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
                   ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
        }
        if (p > 1.0 - plow) {
            const double q = std::sqrt(-2.0 * std::log(1.0 - p));
            return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
                   ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
        }
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    static double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace peerlab
