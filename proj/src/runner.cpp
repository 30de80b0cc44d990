#include "peerlab/runner.hpp"

#include "peerlab/metrics.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace peerlab::runner {

using nlohmann::json;

const char* to_string(Mode m) {
    switch (m) {
    case Mode::oracle: return "oracle";
    case Mode::market: return "market";
    case Mode::firm: return "firm";
    case Mode::peer: return "peer";
    }
    return "?";
}

Mode mode_from_string(const std::string& name) {
    if (name == "oracle") return Mode::oracle;
    if (name == "market") return Mode::market;
    if (name == "firm") return Mode::firm;
    if (name == "peer") return Mode::peer;
    throw ConfigError("experiment.modes: unknown mode '" + name + "'");
}

FirmParams RunnerConfig::resolved_firm() const {
    FirmParams f = firm;
    if (f.firm_size <= 0) f.firm_size = std::max(1, population.n_agents / 2);
    return f;
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return it.key() == k;
            }) == known.end())
            throw ConfigError("unknown key '" + where + it.key() + "'");
    }
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("'" + where + key + "' must be a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError("'" + where + key + "' must be an integer");
    return v.get<int>();
}

Distribution parse_distribution(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
    reject_unknown_keys(obj, {"kind", "lo", "hi", "median", "sigma", "value"}, where + ".");
    if (!obj.contains("kind")) throw ConfigError("'" + where + ".kind' is required");
    const std::string kind = obj.at("kind").get<std::string>();
    if (kind == "uniform")
        return Distribution::uniform(get_number(obj, "lo", 0.0, where + "."),
                                     get_number(obj, "hi", 1.0, where + "."));
    if (kind == "lognormal")
        return Distribution::lognormal(get_number(obj, "median", 1.0, where + "."),
                                       get_number(obj, "sigma", 1.0, where + "."));
    if (kind == "constant")
        return Distribution::constant(get_number(obj, "value", 0.0, where + "."));
    throw ConfigError("'" + where + ".kind' must be uniform, lognormal, or constant");
}

json distribution_to_json(const Distribution& d) {
    switch (d.kind) {
    case Distribution::Kind::uniform: return {{"kind", "uniform"}, {"lo", d.a}, {"hi", d.b}};
    case Distribution::Kind::lognormal:
        return {{"kind", "lognormal"}, {"median", d.a}, {"sigma", d.b}};
    case Distribution::Kind::constant: return {{"kind", "constant"}, {"value", d.a}};
    }
    return {};
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

json config_to_json(const RunnerConfig& c) {
    json j;
    j["population"] = {{"n_agents", c.population.n_agents},
                       {"n_modules", c.population.n_modules},
                       {"sigma_t", c.population.sigma_t},
                       {"sigma_self", c.population.sigma_self},
                       {"effort_budget", c.population.effort_budget},
                       {"hedonic", distribution_to_json(c.population.hedonic)}};
    json integration = {{"mechanism", to_string(c.population.mechanism)},
                        {"per_contribution_cost", c.population.per_contribution_integration_cost},
                        {"fixed_cost", c.population.fixed_integration_cost},
                        {"reviewer_capacity", c.population.reviewer_capacity},
                        {"peer_catch_probability", c.population.peer_catch_probability},
                        {"trim_fraction", c.population.trim_fraction}};
    json project = {{"granularity", c.population.granularity},
                    {"redundancy", c.population.redundancy},
                    {"input_price", c.population.input_price},
                    {"resource_quality", c.population.resource_quality},
                    {"integration", integration}};
    if (!c.population.value_weights.empty()) project["value_weights"] = c.population.value_weights;
    j["project"] = project;
    j["market"] = {{"bucket_count", c.market.bucket_count},
                   {"transaction_cost", c.market.transaction_cost},
                   {"base_wage", c.market.base_wage}};
    j["firm"] = {{"firm_size", c.firm.firm_size},
                 {"manager_noise_sigma", c.firm.manager_noise_sigma},
                 {"boundary_change_cost", c.firm.boundary_change_cost},
                 {"max_boundary_swaps", c.firm.max_boundary_swaps}};
    j["peer"] = {{"max_slots_per_agent", c.peer.max_slots_per_agent},
                 {"effort_unit_cost", c.peer.effort_unit_cost},
                 {"indirect_benefit", c.peer.indirect_benefit}};
    json modes = json::array();
    for (Mode m : c.modes) modes.push_back(to_string(m));
    json seeds = json::array();
    for (auto s : c.seeds) seeds.push_back(s);
    const char* oracle = c.oracle_kind == OracleKind::exhaustive ? "exhaustive"
                         : c.oracle_kind == OracleKind::bound    ? "bound"
                                                                 : "auto";
    j["experiment"] = {{"modes", modes},
                       {"seeds", seeds},
                       {"oracle", oracle},
                       {"oracle_limit", c.oracle_limit}};
    return j;
}

std::string RunnerConfig::canonical_json() const { return config_to_json(*this).dump(); }

std::string RunnerConfig::hash() const {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_json())));
    return buf;
}

RunnerConfig default_config() {
    RunnerConfig c;
    c.firm.firm_size = 0; // resolved to half the agents
    c.firm.manager_noise_sigma = 0.5;
    c.firm.boundary_change_cost = 0.1;
    c.firm.max_boundary_swaps = 2;
    return c;
}

RunnerConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(j, {"population", "project", "market", "firm", "peer", "experiment"}, "");

    RunnerConfig c = default_config();

    if (j.contains("population")) {
        const json& p = j.at("population");
        reject_unknown_keys(
            p, {"n_agents", "n_modules", "sigma_t", "sigma_self", "effort_budget", "hedonic"},
            "population.");
        c.population.n_agents = get_int(p, "n_agents", c.population.n_agents, "population.");
        c.population.n_modules = get_int(p, "n_modules", c.population.n_modules, "population.");
        c.population.sigma_t = get_number(p, "sigma_t", c.population.sigma_t, "population.");
        c.population.sigma_self = get_number(p, "sigma_self", c.population.sigma_self, "population.");
        c.population.effort_budget =
            get_number(p, "effort_budget", c.population.effort_budget, "population.");
        if (p.contains("hedonic"))
            c.population.hedonic = parse_distribution(p.at("hedonic"), "population.hedonic");
    }

    if (j.contains("project")) {
        const json& p = j.at("project");
        reject_unknown_keys(p,
                            {"granularity", "value_weights", "redundancy", "input_price",
                             "resource_quality", "integration"},
                            "project.");
        c.population.granularity = get_number(p, "granularity", c.population.granularity, "project.");
        c.population.redundancy = get_int(p, "redundancy", c.population.redundancy, "project.");
        c.population.input_price = get_number(p, "input_price", c.population.input_price, "project.");
        c.population.resource_quality =
            get_number(p, "resource_quality", c.population.resource_quality, "project.");
        if (p.contains("value_weights")) {
            const json& w = p.at("value_weights");
            if (w.is_number()) {
                c.population.value_weights.assign(c.population.n_modules, w.get<double>());
            } else if (w.is_array()) {
                c.population.value_weights = w.get<std::vector<double>>();
            } else {
                throw ConfigError("'project.value_weights' must be a number or an array");
            }
        }
        if (p.contains("integration")) {
            const json& i = p.at("integration");
            reject_unknown_keys(i,
                                {"mechanism", "per_contribution_cost", "fixed_cost",
                                 "reviewer_capacity", "peer_catch_probability", "trim_fraction"},
                                "project.integration.");
            if (i.contains("mechanism"))
                c.population.mechanism =
                    integration_mechanism_from_string(i.at("mechanism").get<std::string>());
            c.population.per_contribution_integration_cost = get_number(
                i, "per_contribution_cost", c.population.per_contribution_integration_cost,
                "project.integration.");
            c.population.fixed_integration_cost = get_number(
                i, "fixed_cost", c.population.fixed_integration_cost, "project.integration.");
            c.population.reviewer_capacity = get_int(i, "reviewer_capacity",
                                                     c.population.reviewer_capacity,
                                                     "project.integration.");
            c.population.peer_catch_probability =
                get_number(i, "peer_catch_probability", c.population.peer_catch_probability,
                           "project.integration.");
            c.population.trim_fraction = get_number(i, "trim_fraction",
                                                    c.population.trim_fraction,
                                                    "project.integration.");
        }
    }

    if (j.contains("market")) {
        const json& p = j.at("market");
        reject_unknown_keys(p, {"bucket_count", "transaction_cost", "base_wage"}, "market.");
        c.market.bucket_count = get_int(p, "bucket_count", c.market.bucket_count, "market.");
        c.market.transaction_cost =
            get_number(p, "transaction_cost", c.market.transaction_cost, "market.");
        c.market.base_wage = get_number(p, "base_wage", c.market.base_wage, "market.");
    }

    if (j.contains("firm")) {
        const json& p = j.at("firm");
        reject_unknown_keys(
            p, {"firm_size", "manager_noise_sigma", "boundary_change_cost", "max_boundary_swaps"},
            "firm.");
        c.firm.firm_size = get_int(p, "firm_size", c.firm.firm_size, "firm.");
        c.firm.manager_noise_sigma =
            get_number(p, "manager_noise_sigma", c.firm.manager_noise_sigma, "firm.");
        c.firm.boundary_change_cost =
            get_number(p, "boundary_change_cost", c.firm.boundary_change_cost, "firm.");
        c.firm.max_boundary_swaps =
            get_int(p, "max_boundary_swaps", c.firm.max_boundary_swaps, "firm.");
    }

    if (j.contains("peer")) {
        const json& p = j.at("peer");
        reject_unknown_keys(p, {"max_slots_per_agent", "effort_unit_cost", "indirect_benefit"},
                            "peer.");
        c.peer.max_slots_per_agent =
            get_int(p, "max_slots_per_agent", c.peer.max_slots_per_agent, "peer.");
        c.peer.effort_unit_cost =
            get_number(p, "effort_unit_cost", c.peer.effort_unit_cost, "peer.");
        c.peer.indirect_benefit =
            get_number(p, "indirect_benefit", c.peer.indirect_benefit, "peer.");
    }

    if (j.contains("experiment")) {
        const json& p = j.at("experiment");
        reject_unknown_keys(p, {"modes", "seeds", "oracle", "oracle_limit"}, "experiment.");
        if (p.contains("modes")) {
            if (!p.at("modes").is_array())
                throw ConfigError("'experiment.modes' must be an array of mode names");
            c.modes.clear();
            for (const auto& m : p.at("modes")) c.modes.push_back(mode_from_string(m.get<std::string>()));
            if (c.modes.empty()) throw ConfigError("'experiment.modes' must not be empty");
        }
        if (p.contains("seeds")) {
            if (!p.at("seeds").is_array())
                throw ConfigError("'experiment.seeds' must be an array of integers");
            c.seeds.clear();
            for (const auto& s : p.at("seeds")) {
                if (!s.is_number_integer()) throw ConfigError("'experiment.seeds' entries must be integers");
                c.seeds.push_back(s.get<std::uint64_t>());
            }
        }
        if (p.contains("oracle")) {
            const std::string o = p.at("oracle").get<std::string>();
            if (o == "exhaustive") c.oracle_kind = OracleKind::exhaustive;
            else if (o == "bound") c.oracle_kind = OracleKind::bound;
            else if (o == "auto") c.oracle_kind = OracleKind::automatic;
            else throw ConfigError("'experiment.oracle' must be exhaustive, bound, or auto");
        }
        c.oracle_limit = get_int(p, "oracle_limit", c.oracle_limit, "experiment.");
        if (c.oracle_limit < 1 || c.oracle_limit > 16)
            throw ConfigError("'experiment.oracle_limit' must be between 1 and 16");
    }

    c.population.validate();
    c.market.validate(c.population.n_agents);
    c.resolved_firm().validate(c.population.n_agents);
    c.peer.validate();
    return c;
}

RunnerConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return parse_config_text(body.str());
}

namespace {

std::uint64_t mode_seed(std::uint64_t seed, Mode mode) {
    // Independent stream per (seed, mode): adding a mode to the run never
    // perturbs another mode's draws.
    return Rng(seed).derive(to_string(mode)).next_u64();
}

} // namespace

std::vector<RunRow> run_scenario(const RunnerConfig& config, std::uint64_t seed,
                                 bool with_timing) {
    const Population pop = gen_population(config.population, seed);

    OracleOptions oracle_options;
    oracle_options.limit = config.oracle_limit;
    oracle_options.allow_upper_bound = config.oracle_kind != OracleKind::exhaustive;
    if (config.oracle_kind == OracleKind::bound) {
        oracle_options.limit = -1; // force the relaxation bound
    }

    const double p_oracle = oracle_productivity(pop, oracle_options);

    std::vector<RunRow> rows;
    for (Mode mode : config.modes) {
        const auto t0 = std::chrono::steady_clock::now();
        AllocationResult r;
        switch (mode) {
        case Mode::oracle:
            if (static_cast<int>(pop.agents.size()) <= oracle_options.limit)
                r = allocate_oracle(pop, oracle_options);
            else {
                r.productivity = p_oracle; // bound stands in for the full result
            }
            break;
        case Mode::market:
            r = allocate_market(pop, config.market, mode_seed(seed, mode));
            break;
        case Mode::firm:
            r = allocate_firm(pop, config.resolved_firm(), mode_seed(seed, mode));
            break;
        case Mode::peer:
            r = allocate_peer(pop, config.peer, mode_seed(seed, mode));
            break;
        }
        const auto t1 = std::chrono::steady_clock::now();

        RunRow row;
        row.config_hash = config.hash();
        row.seed = seed;
        row.mode = mode;
        row.productivity = r.productivity;
        row.oracle_productivity = p_oracle;
        row.info_opportunity_cost = metrics::info_opportunity_cost(r.productivity, p_oracle);
        row.completed_modules = static_cast<int>(r.completed_modules.size());
        row.costs = r.costs;
        if (with_timing)
            row.wall_time_ms =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::string> sweepable_axes() {
    return {
        "population.n_agents",    "population.n_modules",     "population.sigma_t",
        "population.sigma_self",  "population.effort_budget", "project.granularity",
        "project.redundancy",     "project.input_price",      "market.bucket_count",
        "market.transaction_cost", "market.base_wage",         "firm.firm_size",
        "firm.manager_noise_sigma", "firm.boundary_change_cost", "firm.max_boundary_swaps",
        "peer.max_slots_per_agent", "peer.effort_unit_cost",   "peer.indirect_benefit",
    };
}

namespace {

void set_axis(RunnerConfig& c, const std::string& axis, double value) {
    auto as_int = [&](const char* what) {
        if (value != std::floor(value))
            throw ConfigError(std::string("axis '") + what + "' takes integer values");
        return static_cast<int>(value);
    };
    if (axis == "population.n_agents") c.population.n_agents = as_int(axis.c_str());
    else if (axis == "population.n_modules") c.population.n_modules = as_int(axis.c_str());
    else if (axis == "population.sigma_t") c.population.sigma_t = value;
    else if (axis == "population.sigma_self") c.population.sigma_self = value;
    else if (axis == "population.effort_budget") c.population.effort_budget = value;
    else if (axis == "project.granularity") c.population.granularity = value;
    else if (axis == "project.redundancy") c.population.redundancy = as_int(axis.c_str());
    else if (axis == "project.input_price") c.population.input_price = value;
    else if (axis == "market.bucket_count") c.market.bucket_count = as_int(axis.c_str());
    else if (axis == "market.transaction_cost") c.market.transaction_cost = value;
    else if (axis == "market.base_wage") c.market.base_wage = value;
    else if (axis == "firm.firm_size") c.firm.firm_size = as_int(axis.c_str());
    else if (axis == "firm.manager_noise_sigma") c.firm.manager_noise_sigma = value;
    else if (axis == "firm.boundary_change_cost") c.firm.boundary_change_cost = value;
    else if (axis == "firm.max_boundary_swaps") c.firm.max_boundary_swaps = as_int(axis.c_str());
    else if (axis == "peer.max_slots_per_agent") c.peer.max_slots_per_agent = as_int(axis.c_str());
    else if (axis == "peer.effort_unit_cost") c.peer.effort_unit_cost = value;
    else if (axis == "peer.indirect_benefit") c.peer.indirect_benefit = value;
    else throw ConfigError("'" + axis + "' is not a sweepable field");
    c.population.validate();
}

const char* kHeader =
    "config_hash,seed,mode,productivity,oracle_productivity,info_opportunity_cost,"
    "completed_modules,cost_transaction,cost_boundary,cost_integration,cost_input_price,"
    "wall_time_ms";

std::string row_to_csv(const RunRow& r, bool with_timing) {
    std::string line = r.config_hash;
    line += ',';
    line += std::to_string(r.seed);
    line += ',';
    line += to_string(r.mode);
    for (double v : {r.productivity, r.oracle_productivity, r.info_opportunity_cost}) {
        line += ',';
        line += format_double(v);
    }
    line += ',';
    line += std::to_string(r.completed_modules);
    for (double v : {r.costs.transaction, r.costs.boundary, r.costs.integration,
                     r.costs.input_price}) {
        line += ',';
        line += format_double(v);
    }
    line += ',';
    line += format_double(with_timing ? r.wall_time_ms : 0.0);
    return line;
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd out;
    if (xs.empty()) return out;
    out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    return out;
}

} // namespace

std::string rows_to_csv(const std::vector<RunRow>& rows, bool with_timing) {
    std::string out = kHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += row_to_csv(r, with_timing);
        out += '\n';
    }
    return out;
}

SweepResult run_sweep(const RunnerConfig& config, const std::string& axis_name,
                      const std::vector<double>& values,
                      const std::vector<std::uint64_t>& seeds, bool with_timing) {
    if (values.empty()) throw ConfigError("sweep values must be non-empty");
    if (seeds.empty()) throw ConfigError("sweep seeds must be non-empty");
    const auto axes = sweepable_axes();
    if (std::find(axes.begin(), axes.end(), axis_name) == axes.end())
        throw ConfigError("'" + axis_name + "' is not a sweepable field");

    SweepResult result;
    result.axis = axis_name;
    result.values = values;

    std::string body = "axis,value,";
    body += kHeader;
    body += '\n';

    std::string summary;
    for (double value : values) {
        RunnerConfig point = config;
        set_axis(point, axis_name, value);

        std::vector<RunRow> value_rows;
        for (std::uint64_t seed : seeds) {
            auto rows = run_scenario(point, seed, with_timing);
            for (auto& r : rows) value_rows.push_back(std::move(r));
        }
        for (const auto& r : value_rows) {
            body += axis_name;
            body += ',';
            body += format_double(value);
            body += ',';
            body += row_to_csv(r, with_timing);
            body += '\n';
        }

        for (Mode mode : point.modes) {
            std::vector<double> prod, ioc;
            for (const auto& r : value_rows) {
                if (r.mode != mode) continue;
                prod.push_back(r.productivity);
                ioc.push_back(r.info_opportunity_cost);
            }
            const auto p = mean_sd(prod);
            const auto i = mean_sd(ioc);
            summary += "# summary axis=" + axis_name + " value=" + format_double(value) +
                       " mode=" + to_string(mode) + " rows=" + std::to_string(prod.size()) +
                       " mean_productivity=" + format_double(p.mean) +
                       " sd_productivity=" + format_double(p.sd) +
                       " mean_ioc=" + format_double(i.mean) + " sd_ioc=" + format_double(i.sd) +
                       '\n';
        }
        result.rows.push_back(std::move(value_rows));
    }

    result.csv = body + summary;
    return result;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << body;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

} // namespace peerlab::runner
