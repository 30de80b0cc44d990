#include "peerlab/consensus.hpp"
#include "peerlab/moderation.hpp"
#include "peerlab/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCapacity = 3;

int run_simulate(const std::string& config_path, std::uint64_t seed, const std::string& out_path,
                 bool timing) {
    auto config = config_path.empty() ? peerlab::runner::default_config()
                                      : peerlab::runner::load_config(config_path);
    auto rows = peerlab::runner::run_scenario(config, seed, timing);
    const std::string csv = peerlab::runner::rows_to_csv(rows, timing);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        peerlab::runner::write_file(out_path, csv);
        std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
    }
    return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<double>& values, const std::vector<std::uint64_t>& seeds,
              const std::string& out_path, bool timing) {
    auto config = config_path.empty() ? peerlab::runner::default_config()
                                      : peerlab::runner::load_config(config_path);
    const auto use_seeds = seeds.empty() ? config.seeds : seeds;
    auto result = peerlab::runner::run_sweep(config, axis, values, use_seeds, timing);
    if (out_path.empty()) {
        std::cout << result.csv;
    } else {
        peerlab::runner::write_file(out_path, result.csv);
        std::cerr << "wrote sweep over " << axis << " (" << values.size() << " values x "
                  << use_seeds.size() << " seeds) to " << out_path << "\n";
    }
    return kExitOk;
}

int run_consensus(const std::string& marks_path, const std::string& truth_path, double epsilon,
                  int quorum, double trim, double tolerance) {
    peerlab::consensus::ConsensusParams params;
    params.cluster_radius = epsilon;
    params.quorum = quorum;
    params.trim_fraction = trim;

    const auto marks = peerlab::consensus::load_marks(marks_path);
    const auto clusters = peerlab::consensus::cluster_marks(marks, params);
    const auto estimates = peerlab::consensus::consensus_estimate(clusters, params);

    std::cout << peerlab::consensus::format_estimates(estimates);
    std::printf("# marks=%zu clusters=%zu estimates=%zu one_time_share=%.4f\n", marks.size(),
                clusters.size(), estimates.size(),
                peerlab::consensus::one_time_share(marks));

    if (!truth_path.empty()) {
        const auto truth = peerlab::consensus::load_marks(truth_path);
        const auto report = peerlab::consensus::score_accuracy(estimates, truth, tolerance);
        const int tp = report.true_positives;
        const double precision =
            estimates.empty() ? 0.0 : static_cast<double>(tp) / static_cast<double>(estimates.size());
        const double recall =
            truth.empty() ? 0.0 : static_cast<double>(tp) / static_cast<double>(truth.size());
        std::printf("# tp=%d fp=%d fn=%d precision=%.4f recall=%.4f mean_center_error=%s\n", tp,
                    report.false_positives, report.false_negatives, precision, recall,
                    report.mean_center_error ? std::to_string(*report.mean_center_error).c_str()
                                             : "absent");
    }
    return kExitOk;
}

int run_mod_demo(const std::string& log_path) {
    auto replay = peerlab::moderation::replay_log_file(log_path);
    const auto& engine = replay.engine;

    std::printf("comments (%zu)\n", engine.comments().size());
    std::printf("%6s %6s %6s  %s\n", "id", "author", "score", "hash");
    for (const auto& c : engine.comments())
        std::printf("%6d %6d %6d  %s\n", c.id, c.author, c.score, c.body_hash.c_str());

    std::printf("\nusers (%zu)\n", engine.users().size());
    std::printf("%6s %6s %6s %8s %s\n", "id", "reg", "karma", "banned", "removed");
    for (const auto& u : engine.users())
        std::printf("%6d %6s %6d %8s %s\n", u.id, u.registered ? "yes" : "no", u.karma,
                    u.ban_until ? std::to_string(*u.ban_until).c_str() : "-",
                    u.metamod_removed ? "yes" : "no");

    std::printf("\nmoderation events: %zu\n", engine.events().size());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"peerlab: allocation-mode simulation, redundancy consensus, and karma moderation"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 1;
    bool timing = false;

    auto* simulate = app.add_subcommand("simulate", "run every configured mode on one population");
    simulate->add_option("--config", config_path, "JSON run configuration");
    simulate->add_option("--seed", seed, "population seed")->default_val(1);
    simulate->add_option("--out", out_path, "output CSV path (stdout when omitted)");
    simulate->add_flag("--timing", timing, "record wall time per row (breaks byte-identical output)");

    std::string axis;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    auto* sweep = app.add_subcommand("sweep", "cross product of axis values, seeds, and modes");
    sweep->add_option("--config", config_path, "JSON run configuration");
    sweep->add_option("--axis", axis, "sweepable field, e.g. population.sigma_t")->required();
    sweep->add_option("--values", values, "axis values")->required()->delimiter(',');
    sweep->add_option("--seeds", seeds, "seeds (default: experiment.seeds)")->delimiter(',');
    sweep->add_option("--out", out_path, "output CSV path (stdout when omitted)");
    sweep->add_flag("--timing", timing, "record wall time per row (breaks byte-identical output)");

    std::string marks_path, truth_path;
    double epsilon = 6.0, trim = 0.2, tolerance = 4.0;
    int quorum = 3;
    auto* consensus = app.add_subcommand("consensus", "cluster redundant marks and score accuracy");
    consensus->add_option("--marks", marks_path, "mark file: x,y,radius,contributor,one_time")
        ->required();
    consensus->add_option("--truth", truth_path, "ground-truth mark file");
    consensus->add_option("--epsilon", epsilon, "centroid join threshold in pixels")->default_val(6.0);
    consensus->add_option("--quorum", quorum, "minimum cluster support")->default_val(3);
    consensus->add_option("--trim", trim, "trimmed-mean fraction per side")->default_val(0.2);
    consensus->add_option("--tolerance", tolerance, "match tolerance in pixels")->default_val(4.0);

    std::string log_path;
    auto* mod_demo = app.add_subcommand("mod-demo", "replay a moderation event log");
    mod_demo->add_option("--log", log_path, "event-log file: time|op|args...")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(config_path, seed, out_path, timing);
        if (sweep->parsed()) return run_sweep(config_path, axis, values, seeds, out_path, timing);
        if (consensus->parsed())
            return run_consensus(marks_path, truth_path, epsilon, quorum, trim, tolerance);
        if (mod_demo->parsed()) return run_mod_demo(log_path);
    } catch (const peerlab::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const peerlab::ConfigError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const peerlab::DomainError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
