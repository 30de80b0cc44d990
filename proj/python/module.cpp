#include "peerlab/allocate.hpp"
#include "peerlab/consensus.hpp"
#include "peerlab/metrics.hpp"
#include "peerlab/model.hpp"
#include "peerlab/moderation.hpp"
#include "peerlab/runner.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace peerlab;

namespace {

TalentMatrix talent_from_rows(const std::vector<std::vector<double>>& rows) {
    return TalentMatrix::from_rows(rows);
}

void bind_model(py::module_& m) {
    py::class_<Distribution>(m, "Distribution")
        .def_static("constant", &Distribution::constant, py::arg("value"))
        .def_static("uniform", &Distribution::uniform, py::arg("lo"), py::arg("hi"))
        .def_static("lognormal", &Distribution::lognormal, py::arg("median"), py::arg("sigma"))
        .def("quantile", &Distribution::quantile)
        .def("prob_at_least", &Distribution::prob_at_least)
        .def("__repr__", &Distribution::describe);

    py::class_<Agent>(m, "Agent")
        .def_readonly("id", &Agent::id)
        .def_readwrite("effort_budget", &Agent::effort_budget)
        .def_readwrite("registered", &Agent::registered)
        .def_readwrite("self_noise_sigma", &Agent::self_noise_sigma);

    py::class_<Resource>(m, "Resource")
        .def_readonly("id", &Resource::id)
        .def_readwrite("quality", &Resource::quality)
        .def_readwrite("input_price", &Resource::input_price)
        .def_readonly("nonrival", &Resource::nonrival);

    py::class_<TaskModule>(m, "TaskModule")
        .def(py::init<>())
        .def_readwrite("id", &TaskModule::id)
        .def_readwrite("granularity", &TaskModule::granularity)
        .def_readwrite("value_weight", &TaskModule::value_weight)
        .def_readwrite("required_resource", &TaskModule::required_resource)
        .def_readwrite("redundancy", &TaskModule::redundancy);

    py::enum_<IntegrationMechanism>(m, "IntegrationMechanism")
        .value("averaging", IntegrationMechanism::averaging)
        .value("peer_review", IntegrationMechanism::peer_review)
        .value("hierarchical_review", IntegrationMechanism::hierarchical_review);

    py::class_<Project>(m, "Project")
        .def(py::init<>())
        .def_readwrite("modules", &Project::modules)
        .def_readwrite("mechanism", &Project::mechanism)
        .def_readwrite("per_contribution_integration_cost",
                       &Project::per_contribution_integration_cost)
        .def_readwrite("fixed_integration_cost", &Project::fixed_integration_cost)
        .def_readwrite("reviewer_capacity", &Project::reviewer_capacity)
        .def_readwrite("peer_catch_probability", &Project::peer_catch_probability)
        .def_readwrite("trim_fraction", &Project::trim_fraction);

    py::class_<TalentMatrix>(m, "TalentMatrix")
        .def(py::init(&talent_from_rows), py::arg("rows"))
        .def("at", py::overload_cast<int, int>(&TalentMatrix::at, py::const_))
        .def("row_mean", &TalentMatrix::row_mean)
        .def_property_readonly("n_agents", &TalentMatrix::agents)
        .def_property_readonly("n_modules", &TalentMatrix::modules);

    py::class_<Contribution>(m, "Contribution")
        .def(py::init<>())
        .def_readwrite("agent", &Contribution::agent)
        .def_readwrite("module", &Contribution::module)
        .def_readwrite("resource", &Contribution::resource)
        .def_readwrite("effort", &Contribution::effort)
        .def_readwrite("effective_effort", &Contribution::effective_effort)
        .def_readwrite("good", &Contribution::good);

    py::class_<CostLedger>(m, "CostLedger")
        .def_readonly("transaction", &CostLedger::transaction)
        .def_readonly("boundary", &CostLedger::boundary)
        .def_readonly("integration", &CostLedger::integration)
        .def_readonly("input_price", &CostLedger::input_price)
        .def("as_map", &CostLedger::as_map);

    py::class_<AllocationResult>(m, "AllocationResult")
        .def_readonly("contributions", &AllocationResult::contributions)
        .def_readonly("productivity", &AllocationResult::productivity)
        .def_readonly("costs", &AllocationResult::costs)
        .def_readonly("completed_modules", &AllocationResult::completed_modules);

    py::class_<PopulationConfig>(m, "PopulationConfig")
        .def(py::init<>())
        .def_readwrite("n_agents", &PopulationConfig::n_agents)
        .def_readwrite("n_modules", &PopulationConfig::n_modules)
        .def_readwrite("sigma_t", &PopulationConfig::sigma_t)
        .def_readwrite("sigma_self", &PopulationConfig::sigma_self)
        .def_readwrite("effort_budget", &PopulationConfig::effort_budget)
        .def_readwrite("hedonic", &PopulationConfig::hedonic)
        .def_readwrite("granularity", &PopulationConfig::granularity)
        .def_readwrite("value_weights", &PopulationConfig::value_weights)
        .def_readwrite("redundancy", &PopulationConfig::redundancy)
        .def_readwrite("mechanism", &PopulationConfig::mechanism)
        .def_readwrite("trim_fraction", &PopulationConfig::trim_fraction)
        .def_readwrite("reviewer_capacity", &PopulationConfig::reviewer_capacity)
        .def_readwrite("peer_catch_probability", &PopulationConfig::peer_catch_probability)
        .def_readwrite("resource_quality", &PopulationConfig::resource_quality)
        .def_readwrite("input_price", &PopulationConfig::input_price);

    py::class_<Population>(m, "Population")
        .def_readwrite("agents", &Population::agents)
        .def_readwrite("resources", &Population::resources)
        .def_readwrite("project", &Population::project)
        .def_readwrite("talent", &Population::talent);

    m.def("gen_population", &gen_population, py::arg("config"), py::arg("seed"));
    m.def("agent_value", &agent_value, py::arg("success_probability"), py::arg("outcome_value"));
    m.def(
        "productivity",
        [](const std::vector<Contribution>& contributions, const Project& project,
           const TalentMatrix& talent, const std::vector<Resource>& resources) {
            auto r = productivity(contributions, project, talent, resources);
            return py::make_tuple(r.productivity, r.completed_modules);
        },
        py::arg("contributions"), py::arg("project"), py::arg("talent"), py::arg("resources"));
}

void bind_allocate(py::module_& m) {
    py::class_<MarketParams>(m, "MarketParams")
        .def(py::init<>())
        .def_readwrite("bucket_count", &MarketParams::bucket_count)
        .def_readwrite("transaction_cost", &MarketParams::transaction_cost)
        .def_readwrite("base_wage", &MarketParams::base_wage);

    py::class_<FirmParams>(m, "FirmParams")
        .def(py::init<>())
        .def_readwrite("firm_size", &FirmParams::firm_size)
        .def_readwrite("manager_noise_sigma", &FirmParams::manager_noise_sigma)
        .def_readwrite("boundary_change_cost", &FirmParams::boundary_change_cost)
        .def_readwrite("max_boundary_swaps", &FirmParams::max_boundary_swaps);

    py::class_<PeerParams>(m, "PeerParams")
        .def(py::init<>())
        .def_readwrite("max_slots_per_agent", &PeerParams::max_slots_per_agent)
        .def_readwrite("effort_unit_cost", &PeerParams::effort_unit_cost)
        .def_readwrite("indirect_benefit", &PeerParams::indirect_benefit);

    py::class_<OracleOptions>(m, "OracleOptions")
        .def(py::init<>())
        .def_readwrite("limit", &OracleOptions::limit)
        .def_readwrite("allow_upper_bound", &OracleOptions::allow_upper_bound);

    m.def("allocate_oracle", &allocate_oracle, py::arg("population"),
          py::arg("options") = OracleOptions{});
    m.def("oracle_upper_bound", &oracle_upper_bound, py::arg("population"));
    m.def("allocate_market", &allocate_market, py::arg("population"), py::arg("params"),
          py::arg("seed"));
    m.def("allocate_firm", &allocate_firm, py::arg("population"), py::arg("params"),
          py::arg("seed"));
    m.def("allocate_peer", &allocate_peer, py::arg("population"), py::arg("params"),
          py::arg("seed"));
    m.def(
        "integrate",
        [](const std::vector<Contribution>& contributions, const Project& project,
           std::uint64_t seed) {
            auto r = integrate(contributions, project, seed);
            return py::make_tuple(r.accepted, r.cost);
        },
        py::arg("contributions"), py::arg("project"), py::arg("seed"));
}

void bind_consensus(py::module_& root) {
    auto m = root.def_submodule("consensus", "redundant-mark clustering and scoring");
    using namespace peerlab::consensus;

    py::class_<Mark>(m, "Mark")
        .def(py::init<>())
        .def(py::init([](double x, double y, double radius, int contributor, bool one_time) {
                 return Mark{x, y, radius, contributor, one_time};
             }),
             py::arg("x"), py::arg("y"), py::arg("radius"), py::arg("contributor") = 0,
             py::arg("one_time") = false)
        .def_readwrite("x", &Mark::x)
        .def_readwrite("y", &Mark::y)
        .def_readwrite("radius", &Mark::radius)
        .def_readwrite("contributor", &Mark::contributor)
        .def_readwrite("one_time", &Mark::one_time);

    py::class_<ConsensusParams>(m, "ConsensusParams")
        .def(py::init<>())
        .def_readwrite("cluster_radius", &ConsensusParams::cluster_radius)
        .def_readwrite("quorum", &ConsensusParams::quorum)
        .def_readwrite("trim_fraction", &ConsensusParams::trim_fraction);

    py::class_<Cluster>(m, "Cluster")
        .def_readonly("marks", &Cluster::marks)
        .def_readonly("cx", &Cluster::cx)
        .def_readonly("cy", &Cluster::cy);

    py::class_<ConsensusEstimate>(m, "ConsensusEstimate")
        .def_readonly("x", &ConsensusEstimate::x)
        .def_readonly("y", &ConsensusEstimate::y)
        .def_readonly("radius", &ConsensusEstimate::radius)
        .def_readonly("support", &ConsensusEstimate::support);

    py::class_<AccuracyReport>(m, "AccuracyReport")
        .def_readonly("true_positives", &AccuracyReport::true_positives)
        .def_readonly("false_positives", &AccuracyReport::false_positives)
        .def_readonly("false_negatives", &AccuracyReport::false_negatives)
        .def_readonly("mean_center_error", &AccuracyReport::mean_center_error);

    m.def("cluster_marks",
          [](const std::vector<Mark>& marks, const ConsensusParams& p) {
              return cluster_marks(marks, p);
          });
    m.def("consensus_estimate",
          [](const std::vector<Cluster>& clusters, const ConsensusParams& p) {
              return consensus_estimate(clusters, p);
          });
    m.def("score_accuracy",
          [](const std::vector<ConsensusEstimate>& estimates, const std::vector<Mark>& truth,
             double tolerance) { return score_accuracy(estimates, truth, tolerance); });
    m.def("one_time_share",
          [](const std::vector<Mark>& marks) { return one_time_share(marks); });
}

void bind_moderation(py::module_& root) {
    auto m = root.def_submodule("moderation", "karma-based comment moderation state machine");
    using namespace peerlab::moderation;

    py::class_<Params>(m, "Params")
        .def(py::init<>())
        .def_readwrite("karma_good", &Params::karma_good)
        .def_readwrite("karma_bad", &Params::karma_bad)
        .def_readwrite("karma_bad_floor", &Params::karma_bad_floor)
        .def_readwrite("karma_modmin", &Params::karma_modmin)
        .def_readwrite("downmods_to_ban", &Params::downmods_to_ban)
        .def_readwrite("downmod_window", &Params::downmod_window)
        .def_readwrite("min_account_age", &Params::min_account_age)
        .def_readwrite("post_spacing", &Params::post_spacing)
        .def_readwrite("ban_duration", &Params::ban_duration)
        .def_readwrite("grant_points", &Params::grant_points)
        .def_readwrite("grant_duration", &Params::grant_duration)
        .def_readwrite("metamod_sample", &Params::metamod_sample);

    py::enum_<Label>(m, "Label")
        .value("informative", Label::informative)
        .value("insightful", Label::insightful)
        .value("interesting", Label::interesting)
        .value("funny", Label::funny)
        .value("flamebait", Label::flamebait)
        .value("troll", Label::troll)
        .value("offtopic", Label::offtopic)
        .value("redundant", Label::redundant);

    py::enum_<SubmitStatus>(m, "SubmitStatus")
        .value("accepted", SubmitStatus::accepted)
        .value("rate_limited", SubmitStatus::rate_limited)
        .value("duplicate", SubmitStatus::duplicate)
        .value("banned", SubmitStatus::banned);

    py::enum_<ModerateStatus>(m, "ModerateStatus")
        .value("applied", ModerateStatus::applied)
        .value("void_expired", ModerateStatus::void_expired)
        .value("void_no_points", ModerateStatus::void_no_points)
        .value("rejected_self", ModerateStatus::rejected_self)
        .value("no_grant", ModerateStatus::no_grant);

    py::enum_<Verdict>(m, "Verdict")
        .value("unfair", Verdict::unfair)
        .value("fair", Verdict::fair)
        .value("neither", Verdict::neither);

    py::class_<UserRecord>(m, "UserRecord")
        .def_readonly("id", &UserRecord::id)
        .def_readonly("registered", &UserRecord::registered)
        .def_readonly("karma", &UserRecord::karma)
        .def_readonly("ban_until", &UserRecord::ban_until)
        .def_readonly("activity_count", &UserRecord::activity_count)
        .def_readonly("metamod_removed", &UserRecord::metamod_removed);

    py::class_<Comment>(m, "Comment")
        .def_readonly("id", &Comment::id)
        .def_readonly("author", &Comment::author)
        .def_readonly("score", &Comment::score)
        .def_readonly("body_hash", &Comment::body_hash)
        .def_readonly("posted_at", &Comment::posted_at);

    py::class_<ModerationGrant>(m, "ModerationGrant")
        .def_readonly("moderator", &ModerationGrant::moderator)
        .def_readonly("points_remaining", &ModerationGrant::points_remaining)
        .def_readonly("expires_at", &ModerationGrant::expires_at);

    py::class_<SubmitResult>(m, "SubmitResult")
        .def_readonly("status", &SubmitResult::status)
        .def_readonly("comment_id", &SubmitResult::comment_id);

    py::class_<MetamodResult>(m, "MetamodResult")
        .def_readonly("eligible", &MetamodResult::eligible)
        .def_readonly("reason", &MetamodResult::reason)
        .def_readonly("sampled_events", &MetamodResult::sampled_events);

    m.def("label_delta", &label_delta);

    py::class_<Engine>(m, "Engine")
        .def(py::init<Params>(), py::arg("params") = Params{})
        .def("create_user", &Engine::create_user, py::arg("registered"),
             py::arg("willing_to_moderate"), py::arg("activity_count"), py::arg("now"))
        .def("initial_score",
             [](const Engine& e, int user_id) { return e.initial_score(e.user(user_id)); })
        .def("submit_post", &Engine::submit_post, py::arg("user_id"), py::arg("body_hash"),
             py::arg("now"))
        .def("select_moderators", &Engine::select_moderators, py::arg("now"),
             py::arg("pool_size"), py::arg("seed"))
        .def("eligible_moderators", &Engine::eligible_moderators, py::arg("now"))
        .def("apply_moderation", &Engine::apply_moderation, py::arg("moderator_id"),
             py::arg("comment_id"), py::arg("label"), py::arg("now"))
        .def("view_filter", py::overload_cast<int>(&Engine::view_filter, py::const_))
        .def("run_metamoderation", &Engine::run_metamoderation, py::arg("user_id"),
             py::arg("now"), py::arg("seed"), py::arg("verdicts"))
        .def("user", &Engine::user, py::return_value_policy::copy)
        .def("comment", &Engine::comment, py::return_value_policy::copy)
        .def("grant_of", &Engine::grant_of)
        .def_property_readonly("comments", &Engine::comments)
        .def_property_readonly("users", &Engine::users)
        .def("state_summary", &Engine::state_summary);

    m.def("replay_log", [](const std::string& text, Params params) {
        std::istringstream in(text);
        auto r = replay_log(in, params);
        return r.engine.state_summary();
    }, py::arg("text"), py::arg("params") = Params{});
}

void bind_metrics(py::module_& root) {
    auto m = root.def_submodule("metrics", "cross-mode measurements");
    using namespace peerlab::metrics;

    m.def("info_opportunity_cost", &info_opportunity_cost, py::arg("p_mode"), py::arg("p_oracle"));

    py::class_<Partition>(m, "Partition")
        .def(py::init<>())
        .def_readwrite("agents_a", &Partition::agents_a)
        .def_readwrite("modules_a", &Partition::modules_a)
        .def_readwrite("agents_b", &Partition::agents_b)
        .def_readwrite("modules_b", &Partition::modules_b);

    m.def("complement_partition", &complement_partition);
    m.def("superadditivity_gap", &superadditivity_gap, py::arg("population"), py::arg("partition"),
          py::arg("options") = OracleOptions{});
    m.def("min_incentive", &min_incentive, py::arg("project"), py::arg("pool_size"),
          py::arg("motivation"), py::arg("effort_cost"));
    m.def("completion_probability", &completion_probability, py::arg("project"),
          py::arg("pool_size"), py::arg("motivation"), py::arg("trials"), py::arg("seed"),
          py::arg("effort_cost") = nullptr);
    m.def("free_riding_quality", &free_riding_quality, py::arg("pool_size"),
          py::arg("contributor_fraction"), py::arg("project"), py::arg("seed"));

    py::enum_<OrgForm>(m, "OrgForm")
        .value("pure_market", OrgForm::pure_market)
        .value("market_with_firms", OrgForm::market_with_firms)
        .value("pure_commons", OrgForm::pure_commons)
        .value("common_property_regime", OrgForm::common_property_regime)
        .value("proprietary_open_source", OrgForm::proprietary_open_source)
        .value("peer_production", OrgForm::peer_production);

    py::class_<CostQuadrantInput>(m, "CostQuadrantInput")
        .def(py::init<>())
        .def_readwrite("market_exchange_cost", &CostQuadrantInput::market_exchange_cost)
        .def_readwrite("organizing_cost", &CostQuadrantInput::organizing_cost)
        .def_readwrite("peering_cost", &CostQuadrantInput::peering_cost)
        .def_readwrite("property_implementation_cost",
                       &CostQuadrantInput::property_implementation_cost)
        .def_readwrite("no_property_opportunity_cost",
                       &CostQuadrantInput::no_property_opportunity_cost);

    m.def("select_org_form", &select_org_form);
}

void bind_runner(py::module_& root) {
    auto m = root.def_submodule("runner", "experiment orchestration");
    using namespace peerlab::runner;

    py::enum_<Mode>(m, "Mode")
        .value("oracle", Mode::oracle)
        .value("market", Mode::market)
        .value("firm", Mode::firm)
        .value("peer", Mode::peer);

    py::class_<RunnerConfig>(m, "RunnerConfig")
        .def_readwrite("population", &RunnerConfig::population)
        .def_readwrite("market", &RunnerConfig::market)
        .def_readwrite("firm", &RunnerConfig::firm)
        .def_readwrite("peer", &RunnerConfig::peer)
        .def_readwrite("modes", &RunnerConfig::modes)
        .def_readwrite("seeds", &RunnerConfig::seeds)
        .def("hash", &RunnerConfig::hash)
        .def("canonical_json", &RunnerConfig::canonical_json);

    py::class_<RunRow>(m, "RunRow")
        .def_readonly("config_hash", &RunRow::config_hash)
        .def_readonly("seed", &RunRow::seed)
        .def_readonly("mode", &RunRow::mode)
        .def_readonly("productivity", &RunRow::productivity)
        .def_readonly("oracle_productivity", &RunRow::oracle_productivity)
        .def_readonly("info_opportunity_cost", &RunRow::info_opportunity_cost)
        .def_readonly("completed_modules", &RunRow::completed_modules)
        .def_readonly("costs", &RunRow::costs);

    m.def("default_config", &default_config);
    m.def("parse_config_text", &parse_config_text);
    m.def("load_config", &load_config);
    m.def("run_scenario", &run_scenario, py::arg("config"), py::arg("seed"),
          py::arg("with_timing") = false);
    m.def(
        "run_sweep",
        [](const RunnerConfig& config, const std::string& axis, const std::vector<double>& values,
           const std::vector<std::uint64_t>& seeds) {
            auto r = run_sweep(config, axis, values, seeds);
            return r.csv;
        },
        py::arg("config"), py::arg("axis"), py::arg("values"), py::arg("seeds"));
    m.def("rows_to_csv", &rows_to_csv, py::arg("rows"), py::arg("with_timing") = false);
    m.def("sweepable_axes", &sweepable_axes);
}

} // namespace

PYBIND11_MODULE(peerlab, m) {
    m.doc() = "agent-based laboratory for markets, firms, and peer production as "
              "human-capital allocators, with consensus and moderation protocol engines";

    py::register_exception<ConfigError>(m, "PeerlabConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "PeerlabDomainError", PyExc_ValueError);
    py::register_exception<IntegrityError>(m, "PeerlabIntegrityError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "PeerlabCapacityError", PyExc_RuntimeError);
    py::register_exception<InvariantViolation>(m, "PeerlabInvariantViolation", PyExc_RuntimeError);
    py::register_exception<InfeasibleError>(m, "PeerlabInfeasibleError", PyExc_RuntimeError);

    bind_model(m);
    bind_allocate(m);
    bind_consensus(m);
    bind_moderation(m);
    bind_metrics(m);
    bind_runner(m);
}
