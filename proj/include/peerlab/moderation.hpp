#pragma once

#include "peerlab/errors.hpp"
#include "peerlab/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace peerlab::moderation {

using Time = std::int64_t; // seconds

// Every threshold the protocol leaves unnamed is a knob here; the named
// constants (score range, five points, three days, sixty seconds, 24 h ban,
// 90% meta-moderation eligibility, ten sampled ratings) are the protocol.
struct Params {
    int karma_good = 12;       // at or above: posts start at 2
    int karma_bad = -5;        // at or below: posts start at 0
    int karma_bad_floor = -10; // at or below: posts start at -1
    int karma_modmin = -3;     // below: removed from the moderator pool
    int downmods_to_ban = 3;
    Time downmod_window = 4 * 3600;
    Time min_account_age = 14 * 86400;
    double activity_percentile_lo = 0.10;
    double activity_percentile_hi = 0.90;
    Time post_spacing = 60;
    Time ban_duration = 24 * 3600;
    int grant_points = 5;
    Time grant_duration = 3 * 86400;
    double metamod_account_share = 0.9;
    int metamod_sample = 10;
    int recent_hash_window = 16;
    int initial_karma = 1; // registered accounts start here, else the pool cannot bootstrap

    void validate() const;
};

struct UserRecord {
    int id = 0;
    bool registered = false;
    int created_index = 0;
    Time created_at = 0;
    int karma = 0;
    std::optional<Time> last_post_time;
    std::vector<std::string> recent_post_hashes; // bounded FIFO
    std::vector<Time> recent_downmods;
    std::optional<Time> ban_until;
    bool willing_to_moderate = false;
    int activity_count = 0;       // page loads per period
    bool metamod_removed = false; // karma fell below karma_modmin
};

struct Comment {
    int id = 0;
    int author = 0;
    int score = 0; // always in [-1, 5]
    std::string body_hash;
    Time posted_at = 0;
};

struct ModerationGrant {
    int moderator = 0;
    int serial = 0;
    int points_remaining = 0;
    Time expires_at = 0;
};

enum class Label {
    informative,
    insightful,
    interesting,
    funny,
    flamebait,
    troll,
    offtopic,
    redundant,
};

int label_delta(Label label); // +1 or -1
const char* to_string(Label label);
Label label_from_string(const std::string& name);

struct ModerationEvent {
    int id = 0;
    int moderator = 0;
    int grant_serial = 0;
    int comment = 0;
    Label label = Label::informative;
    int delta = 0;
    Time time = 0;
};

enum class SubmitStatus { accepted, rate_limited, duplicate, banned };
const char* to_string(SubmitStatus s);

struct SubmitResult {
    SubmitStatus status = SubmitStatus::accepted;
    int comment_id = -1; // valid when accepted
};

enum class ModerateStatus { applied, void_expired, void_no_points, rejected_self, no_grant };
const char* to_string(ModerateStatus s);

enum class Verdict { unfair, fair, neither };
Verdict verdict_from_char(char c); // u / f / n

struct MetamodResult {
    bool eligible = false;
    std::string reason;             // set when ineligible
    std::vector<int> sampled_events; // event ids, at most metamod_sample
};

// The protocol as a single-writer state machine. All mutations go through
// the operations below; replaying the same timestamped calls yields an
// identical state.
class Engine {
public:
    explicit Engine(Params params = {});

    int create_user(bool registered, bool willing_to_moderate, int activity_count, Time now);

    int initial_score(const UserRecord& author) const;

    SubmitResult submit_post(int user_id, const std::string& body_hash, Time now);

    // Grants grant_points influence points for grant_duration to a seeded
    // sample of the eligible pool: registered, willing, positive karma, old
    // enough, mid-band activity, not removed by meta-moderation, and not
    // already holding a live grant.
    std::vector<int> select_moderators(Time now, int pool_size, std::uint64_t seed);
    std::vector<int> eligible_moderators(Time now) const;

    ModerateStatus apply_moderation(int moderator_id, int comment_id, Label label, Time now);

    std::vector<Comment> view_filter(int threshold) const;
    static std::vector<Comment> view_filter(const std::vector<Comment>& comments, int threshold);

    // verdicts[i] applies to the i-th sampled event; missing entries count
    // as `neither`.
    MetamodResult run_metamoderation(int user_id, Time now, std::uint64_t seed,
                                     const std::vector<Verdict>& verdicts);

    const Params& params() const { return params_; }
    const std::vector<UserRecord>& users() const { return users_; }
    const std::vector<Comment>& comments() const { return comments_; }
    const std::vector<ModerationEvent>& events() const { return events_; }
    const UserRecord& user(int id) const;
    const Comment& comment(int id) const;
    std::optional<ModerationGrant> grant_of(int moderator_id) const;

    // Canonical dump of the full state; equal strings mean equal states.
    std::string state_summary() const;

private:
    UserRecord& user_mut(int id);
    Comment& comment_mut(int id);

    Params params_;
    std::vector<UserRecord> users_;
    std::vector<Comment> comments_;
    std::unordered_map<int, ModerationGrant> grants_; // one live grant per moderator
    std::vector<ModerationEvent> events_;
    int next_grant_serial_ = 0;
};

// Newline-delimited `time|op|args...` records sufficient to replay:
//   t|user|registered|willing|activity
//   t|post|user_id|body_hash
//   t|grants|seed|pool_size
//   t|moderate|moderator_id|comment_id|label
//   t|metamod|user_id|seed|verdicts   (verdict chars: u/f/n)
struct ReplayOutcome {
    std::size_t line = 0;
    std::string note;
};

struct ReplayResult {
    Engine engine;
    std::vector<ReplayOutcome> outcomes;
};

ReplayResult replay_log(std::istream& in, Params params = {});
ReplayResult replay_log_file(const std::string& path, Params params = {});

} // namespace peerlab::moderation
