#include "peerlab/moderation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace peerlab::moderation {

void Params::validate() const {
    if (grant_points < 1) throw ConfigError("moderation.grant_points must be >= 1");
    if (grant_duration <= 0) throw ConfigError("moderation.grant_duration must be > 0");
    if (post_spacing < 0) throw ConfigError("moderation.post_spacing must be >= 0");
    if (ban_duration <= 0) throw ConfigError("moderation.ban_duration must be > 0");
    if (downmods_to_ban < 1) throw ConfigError("moderation.downmods_to_ban must be >= 1");
    if (metamod_sample < 1) throw ConfigError("moderation.metamod_sample must be >= 1");
    if (metamod_account_share <= 0.0 || metamod_account_share > 1.0)
        throw ConfigError("moderation.metamod_account_share must be in (0,1]");
    if (activity_percentile_lo < 0.0 || activity_percentile_hi > 1.0 ||
        activity_percentile_lo > activity_percentile_hi)
        throw ConfigError("moderation activity percentile band is invalid");
}

int label_delta(Label label) {
    switch (label) {
    case Label::informative:
    case Label::insightful:
    case Label::interesting:
    case Label::funny:
        return 1;
    case Label::flamebait:
    case Label::troll:
    case Label::offtopic:
    case Label::redundant:
        return -1;
    }
    return 0;
}

const char* to_string(Label label) {
    switch (label) {
    case Label::informative: return "informative";
    case Label::insightful: return "insightful";
    case Label::interesting: return "interesting";
    case Label::funny: return "funny";
    case Label::flamebait: return "flamebait";
    case Label::troll: return "troll";
    case Label::offtopic: return "offtopic";
    case Label::redundant: return "redundant";
    }
    return "?";
}

Label label_from_string(const std::string& name) {
    static const std::pair<const char*, Label> table[] = {
        {"informative", Label::informative}, {"insightful", Label::insightful},
        {"interesting", Label::interesting}, {"funny", Label::funny},
        {"flamebait", Label::flamebait},     {"troll", Label::troll},
        {"offtopic", Label::offtopic},       {"redundant", Label::redundant},
    };
    for (const auto& [n, l] : table)
        if (name == n) return l;
    throw ConfigError("unknown moderation label: " + name);
}

const char* to_string(SubmitStatus s) {
    switch (s) {
    case SubmitStatus::accepted: return "accepted";
    case SubmitStatus::rate_limited: return "rate_limited";
    case SubmitStatus::duplicate: return "duplicate";
    case SubmitStatus::banned: return "banned";
    }
    return "?";
}

const char* to_string(ModerateStatus s) {
    switch (s) {
    case ModerateStatus::applied: return "applied";
    case ModerateStatus::void_expired: return "void_expired";
    case ModerateStatus::void_no_points: return "void_no_points";
    case ModerateStatus::rejected_self: return "rejected_self";
    case ModerateStatus::no_grant: return "no_grant";
    }
    return "?";
}

Verdict verdict_from_char(char c) {
    switch (c) {
    case 'u': return Verdict::unfair;
    case 'f': return Verdict::fair;
    case 'n': return Verdict::neither;
    default: throw ConfigError(std::string("unknown verdict character: ") + c);
    }
}

Engine::Engine(Params params) : params_(params) { params_.validate(); }

const UserRecord& Engine::user(int id) const {
    if (id < 0 || id >= static_cast<int>(users_.size()))
        throw IntegrityError("unknown user id " + std::to_string(id));
    return users_[id];
}

UserRecord& Engine::user_mut(int id) {
    return const_cast<UserRecord&>(static_cast<const Engine*>(this)->user(id));
}

const Comment& Engine::comment(int id) const {
    if (id < 0 || id >= static_cast<int>(comments_.size()))
        throw IntegrityError("unknown comment id " + std::to_string(id));
    return comments_[id];
}

Comment& Engine::comment_mut(int id) {
    return const_cast<Comment&>(static_cast<const Engine*>(this)->comment(id));
}

std::optional<ModerationGrant> Engine::grant_of(int moderator_id) const {
    auto it = grants_.find(moderator_id);
    if (it == grants_.end()) return std::nullopt;
    return it->second;
}

int Engine::create_user(bool registered, bool willing_to_moderate, int activity_count, Time now) {
    if (activity_count < 0) throw ConfigError("activity_count must be >= 0");
    UserRecord u;
    u.id = static_cast<int>(users_.size());
    u.registered = registered;
    u.created_index = u.id;
    u.created_at = now;
    u.karma = registered ? params_.initial_karma : 0;
    u.willing_to_moderate = willing_to_moderate;
    u.activity_count = activity_count;
    users_.push_back(std::move(u));
    return users_.back().id;
}

int Engine::initial_score(const UserRecord& author) const {
    if (!author.registered) return 0;
    if (author.karma >= params_.karma_good) return 2;
    if (author.karma <= params_.karma_bad_floor) return -1;
    if (author.karma <= params_.karma_bad) return 0;
    return 1;
}

SubmitResult Engine::submit_post(int user_id, const std::string& body_hash, Time now) {
    UserRecord& u = user_mut(user_id);

    if (u.last_post_time && now - *u.last_post_time < params_.post_spacing)
        return {SubmitStatus::rate_limited, -1};
    if (std::find(u.recent_post_hashes.begin(), u.recent_post_hashes.end(), body_hash) !=
        u.recent_post_hashes.end())
        return {SubmitStatus::duplicate, -1};
    if (u.ban_until && now < *u.ban_until) return {SubmitStatus::banned, -1};

    Comment c;
    c.id = static_cast<int>(comments_.size());
    c.author = user_id;
    c.score = initial_score(u);
    c.body_hash = body_hash;
    c.posted_at = now;
    comments_.push_back(std::move(c));

    u.last_post_time = now;
    u.recent_post_hashes.push_back(body_hash);
    if (static_cast<int>(u.recent_post_hashes.size()) > params_.recent_hash_window)
        u.recent_post_hashes.erase(u.recent_post_hashes.begin());

    return {SubmitStatus::accepted, comments_.back().id};
}

std::vector<int> Engine::eligible_moderators(Time now) const {
    // Activity band over the whole account base, nearest-rank quantiles.
    std::vector<int> activity;
    activity.reserve(users_.size());
    for (const auto& u : users_) activity.push_back(u.activity_count);
    std::sort(activity.begin(), activity.end());

    int lo_value = 0, hi_value = 0;
    if (!activity.empty()) {
        const auto last = static_cast<double>(activity.size() - 1);
        lo_value = activity[static_cast<std::size_t>(params_.activity_percentile_lo * last)];
        hi_value = activity[static_cast<std::size_t>(
            std::min(last, std::ceil(params_.activity_percentile_hi * last)))];
    }

    std::vector<int> eligible;
    for (const auto& u : users_) {
        if (!u.registered || !u.willing_to_moderate) continue;
        if (u.karma <= 0) continue;
        if (u.metamod_removed) continue;
        if (now - u.created_at < params_.min_account_age) continue;
        if (u.activity_count < lo_value || u.activity_count > hi_value) continue;
        auto it = grants_.find(u.id);
        if (it != grants_.end() && now < it->second.expires_at && it->second.points_remaining > 0)
            continue; // one grant at a time
        eligible.push_back(u.id);
    }
    return eligible;
}

std::vector<int> Engine::select_moderators(Time now, int pool_size, std::uint64_t seed) {
    if (pool_size < 0) throw ConfigError("pool_size must be >= 0");

    std::vector<int> eligible = eligible_moderators(now);
    Rng rng = Rng(seed).derive("grants");
    rng.shuffle(eligible);
    if (static_cast<int>(eligible.size()) > pool_size) eligible.resize(pool_size);
    std::sort(eligible.begin(), eligible.end());

    for (int id : eligible) {
        grants_[id] = ModerationGrant{id, next_grant_serial_++, params_.grant_points,
                                      now + params_.grant_duration};
    }
    return eligible;
}

ModerateStatus Engine::apply_moderation(int moderator_id, int comment_id, Label label, Time now) {
    (void)user(moderator_id);
    Comment& c = comment_mut(comment_id);

    auto it = grants_.find(moderator_id);
    if (it == grants_.end()) return ModerateStatus::no_grant;
    ModerationGrant& grant = it->second;
    if (now >= grant.expires_at) return ModerateStatus::void_expired;
    if (grant.points_remaining < 1) return ModerateStatus::void_no_points;
    if (c.author == moderator_id) return ModerateStatus::rejected_self;

    const int delta = label_delta(label);
    c.score = std::clamp(c.score + delta, -1, 5);
    --grant.points_remaining;

    UserRecord& author = user_mut(c.author);
    author.karma += delta;
    if (delta < 0) {
        author.recent_downmods.push_back(now);
        // Drop entries that left the window, then apply the troll filter.
        auto& ds = author.recent_downmods;
        ds.erase(std::remove_if(ds.begin(), ds.end(),
                                [&](Time t) { return now - t > params_.downmod_window; }),
                 ds.end());
        if (static_cast<int>(ds.size()) >= params_.downmods_to_ban)
            author.ban_until = now + params_.ban_duration;
    }

    ModerationEvent ev;
    ev.id = static_cast<int>(events_.size());
    ev.moderator = moderator_id;
    ev.grant_serial = grant.serial;
    ev.comment = comment_id;
    ev.label = label;
    ev.delta = delta;
    ev.time = now;
    events_.push_back(ev);

    return ModerateStatus::applied;
}

std::vector<Comment> Engine::view_filter(const std::vector<Comment>& comments, int threshold) {
    if (threshold < -1 || threshold > 5)
        throw DomainError("view threshold must be in [-1, 5]");
    std::vector<Comment> visible;
    for (const auto& c : comments)
        if (c.score >= threshold) visible.push_back(c);
    return visible;
}

std::vector<Comment> Engine::view_filter(int threshold) const {
    return view_filter(comments_, threshold);
}

MetamodResult Engine::run_metamoderation(int user_id, Time /*now*/, std::uint64_t seed,
                                         const std::vector<Verdict>& verdicts) {
    const UserRecord& u = user(user_id);
    MetamodResult result;

    if (!u.registered) {
        result.reason = "not registered";
        return result;
    }
    // Only the first metamod_account_share of accounts ever created qualify.
    if (static_cast<double>(u.created_index) >=
        params_.metamod_account_share * static_cast<double>(users_.size())) {
        result.reason = "account in the newest share of the base";
        return result;
    }
    result.eligible = true;
    if (events_.empty()) return result;

    std::vector<int> ids(events_.size());
    std::iota(ids.begin(), ids.end(), 0);
    Rng rng = Rng(seed).derive("metamod");
    rng.shuffle(ids);
    const auto take = std::min<std::size_t>(ids.size(), params_.metamod_sample);
    ids.resize(take);

    for (std::size_t i = 0; i < ids.size(); ++i) {
        result.sampled_events.push_back(ids[i]);
        const Verdict v = i < verdicts.size() ? verdicts[i] : Verdict::neither;
        const ModerationEvent& ev = events_[ids[i]];
        UserRecord& moderator = user_mut(ev.moderator);
        if (v == Verdict::unfair) moderator.karma -= 1;
        if (v == Verdict::fair) moderator.karma += 1;
        if (moderator.karma < params_.karma_modmin) moderator.metamod_removed = true;
    }
    return result;
}

std::string Engine::state_summary() const {
    std::ostringstream out;
    out << "users " << users_.size() << "\n";
    for (const auto& u : users_) {
        out << "u " << u.id << " reg=" << u.registered << " karma=" << u.karma
            << " ban=" << (u.ban_until ? std::to_string(*u.ban_until) : std::string("-"))
            << " removed=" << u.metamod_removed
            << " last_post=" << (u.last_post_time ? std::to_string(*u.last_post_time) : std::string("-"))
            << " downmods=" << u.recent_downmods.size() << "\n";
    }
    out << "comments " << comments_.size() << "\n";
    for (const auto& c : comments_)
        out << "c " << c.id << " author=" << c.author << " score=" << c.score
            << " hash=" << c.body_hash << " at=" << c.posted_at << "\n";
    std::vector<int> moderators;
    for (const auto& [id, g] : grants_) moderators.push_back(id);
    std::sort(moderators.begin(), moderators.end());
    out << "grants " << moderators.size() << "\n";
    for (int id : moderators) {
        const auto& g = grants_.at(id);
        out << "g " << id << " serial=" << g.serial << " points=" << g.points_remaining
            << " expires=" << g.expires_at << "\n";
    }
    out << "events " << events_.size() << "\n";
    for (const auto& e : events_)
        out << "e " << e.id << " mod=" << e.moderator << " grant=" << e.grant_serial
            << " comment=" << e.comment << " label=" << to_string(e.label) << " t=" << e.time
            << "\n";
    return out.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

long long parse_int(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("log line " + std::to_string(line) + ": not an integer: " + s);
    }
}

} // namespace

ReplayResult replay_log(std::istream& in, Params params) {
    ReplayResult result{Engine(params), {}};
    Engine& engine = result.engine;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto parts = split(line, '|');
        if (parts.size() < 2)
            throw ConfigError("log line " + std::to_string(lineno) + ": expected time|op|args");
        const Time now = parse_int(parts[0], lineno);
        const std::string& op = parts[1];
        auto need = [&](std::size_t n) {
            if (parts.size() != n)
                throw ConfigError("log line " + std::to_string(lineno) + ": op '" + op +
                                  "' expects " + std::to_string(n - 2) + " arguments");
        };

        if (op == "user") {
            need(5);
            const int id = engine.create_user(parse_int(parts[2], lineno) != 0,
                                              parse_int(parts[3], lineno) != 0,
                                              static_cast<int>(parse_int(parts[4], lineno)), now);
            result.outcomes.push_back({lineno, "user " + std::to_string(id)});
        } else if (op == "post") {
            need(4);
            const auto r = engine.submit_post(static_cast<int>(parse_int(parts[2], lineno)),
                                              parts[3], now);
            std::string note = to_string(r.status);
            if (r.status == SubmitStatus::accepted)
                note += " comment " + std::to_string(r.comment_id);
            result.outcomes.push_back({lineno, note});
        } else if (op == "grants") {
            need(4);
            const auto granted = engine.select_moderators(
                now, static_cast<int>(parse_int(parts[3], lineno)),
                static_cast<std::uint64_t>(parse_int(parts[2], lineno)));
            result.outcomes.push_back({lineno, "granted " + std::to_string(granted.size())});
        } else if (op == "moderate") {
            need(5);
            const auto status = engine.apply_moderation(
                static_cast<int>(parse_int(parts[2], lineno)),
                static_cast<int>(parse_int(parts[3], lineno)), label_from_string(parts[4]), now);
            result.outcomes.push_back({lineno, to_string(status)});
        } else if (op == "metamod") {
            need(5);
            std::vector<Verdict> verdicts;
            for (char c : parts[4]) verdicts.push_back(verdict_from_char(c));
            const auto r = engine.run_metamoderation(
                static_cast<int>(parse_int(parts[2], lineno)), now,
                static_cast<std::uint64_t>(parse_int(parts[3], lineno)), verdicts);
            result.outcomes.push_back(
                {lineno, r.eligible ? "metamod sampled " + std::to_string(r.sampled_events.size())
                                    : "metamod rejected: " + r.reason});
        } else {
            throw ConfigError("log line " + std::to_string(lineno) + ": unknown op '" + op + "'");
        }
    }
    return result;
}

ReplayResult replay_log_file(const std::string& path, Params params) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open moderation log: " + path);
    return replay_log(in, params);
}

} // namespace peerlab::moderation
