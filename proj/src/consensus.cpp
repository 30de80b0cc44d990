#include "peerlab/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace peerlab::consensus {

void ConsensusParams::validate() const {
    if (cluster_radius <= 0.0) throw ConfigError("consensus.cluster_radius must be > 0");
    if (quorum < 1) throw ConfigError("consensus.quorum must be >= 1");
    if (trim_fraction < 0.0 || trim_fraction >= 0.5)
        throw ConfigError("consensus.trim_fraction must be in [0, 0.5)");
}

std::vector<Cluster> cluster_marks(std::span<const Mark> marks, const ConsensusParams& params) {
    params.validate();

    std::vector<Mark> sorted(marks.begin(), marks.end());
    std::sort(sorted.begin(), sorted.end(), [](const Mark& a, const Mark& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        if (a.radius != b.radius) return a.radius < b.radius;
        return a.contributor < b.contributor;
    });

    std::vector<Cluster> clusters;
    for (const Mark& mark : sorted) {
        bool joined = false;
        for (Cluster& c : clusters) {
            const double dx = mark.x - c.cx;
            const double dy = mark.y - c.cy;
            if (std::sqrt(dx * dx + dy * dy) <= params.cluster_radius) {
                c.marks.push_back(mark);
                const double inv = 1.0 / static_cast<double>(c.marks.size());
                c.cx += (mark.x - c.cx) * inv;
                c.cy += (mark.y - c.cy) * inv;
                joined = true;
                break;
            }
        }
        if (!joined) {
            Cluster c;
            c.marks.push_back(mark);
            c.cx = mark.x;
            c.cy = mark.y;
            clusters.push_back(std::move(c));
        }
    }
    return clusters;
}

namespace {

double trimmed_mean(std::vector<double> values, double trim_fraction) {
    std::sort(values.begin(), values.end());
    const auto cut = static_cast<std::size_t>(trim_fraction * static_cast<double>(values.size()));
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = cut; i + cut < values.size(); ++i) {
        sum += values[i];
        ++count;
    }
    return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

} // namespace

std::vector<ConsensusEstimate> consensus_estimate(std::span<const Cluster> clusters,
                                                  const ConsensusParams& params) {
    params.validate();

    std::vector<ConsensusEstimate> out;
    std::vector<double> xs, ys, rs;
    for (const Cluster& c : clusters) {
        if (static_cast<int>(c.marks.size()) < params.quorum) continue; // defections die here
        xs.clear();
        ys.clear();
        rs.clear();
        for (const Mark& m : c.marks) {
            xs.push_back(m.x);
            ys.push_back(m.y);
            rs.push_back(m.radius);
        }
        ConsensusEstimate e;
        e.x = trimmed_mean(xs, params.trim_fraction);
        e.y = trimmed_mean(ys, params.trim_fraction);
        e.radius = trimmed_mean(rs, params.trim_fraction);
        e.support = static_cast<int>(c.marks.size());
        out.push_back(e);
    }
    return out;
}

AccuracyReport score_accuracy(std::span<const ConsensusEstimate> estimates,
                              std::span<const Mark> ground_truth, double match_tolerance) {
    if (match_tolerance <= 0.0) throw ConfigError("match_tolerance must be > 0");

    struct Pair {
        double dist;
        std::size_t est, truth;
    };
    std::vector<Pair> pairs;
    for (std::size_t e = 0; e < estimates.size(); ++e)
        for (std::size_t t = 0; t < ground_truth.size(); ++t) {
            const double dx = estimates[e].x - ground_truth[t].x;
            const double dy = estimates[e].y - ground_truth[t].y;
            const double d = std::sqrt(dx * dx + dy * dy);
            if (d <= match_tolerance) pairs.push_back({d, e, t});
        }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.est != b.est) return a.est < b.est;
        return a.truth < b.truth;
    });

    std::vector<bool> est_used(estimates.size(), false), truth_used(ground_truth.size(), false);
    int matched = 0;
    double error_sum = 0.0;
    for (const Pair& p : pairs) {
        if (est_used[p.est] || truth_used[p.truth]) continue;
        est_used[p.est] = true;
        truth_used[p.truth] = true;
        ++matched;
        error_sum += p.dist;
    }

    AccuracyReport r;
    r.true_positives = matched;
    r.false_positives = static_cast<int>(estimates.size()) - matched;
    r.false_negatives = static_cast<int>(ground_truth.size()) - matched;
    if (matched > 0) r.mean_center_error = error_sum / matched;
    return r;
}

double one_time_share(std::span<const Mark> marks) {
    if (marks.empty()) return 0.0;
    std::size_t one_time = 0;
    for (const Mark& m : marks)
        if (m.one_time) ++one_time;
    return static_cast<double>(one_time) / static_cast<double>(marks.size());
}

std::vector<Mark> load_marks(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mark file: " + path);

    std::vector<Mark> marks;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        Mark m;
        int one_time = 0;
        if (!(fields >> m.x >> m.y >> m.radius >> m.contributor >> one_time))
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected x,y,radius,contributor,one_time");
        if (m.radius <= 0.0)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": radius must be > 0");
        m.one_time = one_time != 0;
        marks.push_back(m);
    }
    return marks;
}

std::string format_estimates(std::span<const ConsensusEstimate> estimates) {
    std::string out = "x,y,radius,support\n";
    char buf[128];
    for (const auto& e : estimates) {
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%d\n", e.x, e.y, e.radius, e.support);
        out += buf;
    }
    return out;
}

} // namespace peerlab::consensus
