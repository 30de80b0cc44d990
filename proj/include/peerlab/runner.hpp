#pragma once

#include "peerlab/allocate.hpp"
#include "peerlab/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace peerlab::runner {

enum class Mode { oracle, market, firm, peer };
const char* to_string(Mode m);
Mode mode_from_string(const std::string& name);

enum class OracleKind { exhaustive, bound, automatic };

// The whole run configuration: population plus one section per mode plus
// the experiment block. Parsed from a JSON file with strict key checking.
struct RunnerConfig {
    PopulationConfig population;
    MarketParams market;
    FirmParams firm;      // firm_size <= 0 means "half the agents"
    PeerParams peer;
    std::vector<Mode> modes = {Mode::market, Mode::firm, Mode::peer};
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    OracleKind oracle_kind = OracleKind::automatic;
    int oracle_limit = 10;

    FirmParams resolved_firm() const;
    std::string canonical_json() const;
    std::string hash() const; // FNV-1a 64 of the canonical form, hex
};

RunnerConfig default_config();
RunnerConfig parse_config_text(const std::string& text);
RunnerConfig load_config(const std::string& path);

struct RunRow {
    std::string config_hash;
    std::uint64_t seed = 0;
    Mode mode = Mode::oracle;
    double productivity = 0.0;
    double oracle_productivity = 0.0;
    double info_opportunity_cost = 0.0;
    int completed_modules = 0;
    CostLedger costs;
    double wall_time_ms = 0.0; // only populated when timing is requested
};

// One population from (config, seed); oracle plus every requested mode on
// it; one row per requested mode. Identical (config, seed) yields identical
// rows.
std::vector<RunRow> run_scenario(const RunnerConfig& config, std::uint64_t seed,
                                 bool with_timing = false);

struct SweepResult {
    std::string axis;
    std::vector<double> values;
    std::vector<std::vector<RunRow>> rows; // parallel to values, sorted (seed, mode)
    std::string csv;                       // full file body incl. summary block
};

std::vector<std::string> sweepable_axes();

// Cross product of values x seeds x modes, one row each, plus a '#'-prefixed
// per-(value, mode) mean/sd summary block.
SweepResult run_sweep(const RunnerConfig& config, const std::string& axis_name,
                      const std::vector<double>& values,
                      const std::vector<std::uint64_t>& seeds, bool with_timing = false);

std::string rows_to_csv(const std::vector<RunRow>& rows, bool with_timing = false);

void write_file(const std::string& path, const std::string& body);

} // namespace peerlab::runner
