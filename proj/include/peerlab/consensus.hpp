#pragma once

#include "peerlab/errors.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace peerlab::consensus {

struct Mark {
    double x = 0.0;
    double y = 0.0;
    double radius = 0.0;
    int contributor = 0;
    bool one_time = false; // contributor made a single visit
};

struct ConsensusParams {
    double cluster_radius = 6.0; // centroid-distance join threshold (epsilon)
    int quorum = 3;
    double trim_fraction = 0.2; // per coordinate, in [0, 0.5)

    void validate() const;
};

struct Cluster {
    std::vector<Mark> marks;
    double cx = 0.0; // running centroid
    double cy = 0.0;
};

struct ConsensusEstimate {
    double x = 0.0;
    double y = 0.0;
    double radius = 0.0;
    int support = 0;
};

struct AccuracyReport {
    int true_positives = 0;
    int false_positives = 0;
    int false_negatives = 0;
    std::optional<double> mean_center_error; // absent when nothing matched
};

// Deterministic greedy clustering: marks are first sorted by
// (x, y, radius, contributor); each joins the first existing cluster whose
// running centroid lies within cluster_radius, updating that centroid,
// otherwise it seeds a new cluster. Input order therefore never matters.
std::vector<Cluster> cluster_marks(std::span<const Mark> marks, const ConsensusParams& params);

// Clusters below quorum are dropped; survivors yield per-coordinate trimmed
// means of x, y, and radius.
std::vector<ConsensusEstimate> consensus_estimate(std::span<const Cluster> clusters,
                                                  const ConsensusParams& params);

// Greedy nearest-first one-to-one matching of estimates against ground
// truth within match_tolerance pixels.
AccuracyReport score_accuracy(std::span<const ConsensusEstimate> estimates,
                              std::span<const Mark> ground_truth, double match_tolerance);

double one_time_share(std::span<const Mark> marks);

// Mark files: one `x,y,radius,contributor,one_time` line per mark.
std::vector<Mark> load_marks(const std::string& path);
std::string format_estimates(std::span<const ConsensusEstimate> estimates);

} // namespace peerlab::consensus
