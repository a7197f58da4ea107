#pragma once

// Activity-log ingestion: delimited exports of posts, comments and reactions,
// the two-mode incidence networks built from them, period slicing and the
// per-period activity statistics.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "copnet/netmodel.hpp"

namespace copnet {

using Timestamp = std::chrono::sys_seconds;

enum class RecordKind { Post, Comment, Reaction };

std::string_view to_string(RecordKind kind);

struct ActivityRecord {
  std::string record_id;
  RecordKind kind = RecordKind::Post;
  std::optional<std::string> parent_id;
  ActorId author_id;
  Timestamp timestamp{};
  std::optional<std::string> reaction_kind;

  bool is_publication() const noexcept { return kind != RecordKind::Reaction; }
  friend bool operator==(const ActivityRecord &, const ActivityRecord &) = default;
};

enum class DanglingPolicy { Error, Drop };

/// Chronologically ordered, validated activity records.
///
/// A log produced by period slicing may reference parents that belong to an
/// earlier period. Those parents are kept as anchors: they resolve authorship
/// but are not part of `records()` and do not enter any count.
class ActivityLog {
public:
  ActivityLog() = default;
  /// Validates and sorts `records` by (timestamp, record_id). Dangling
  /// parents either throw ParseError or are dropped together with every
  /// record attached below them, each drop leaving a warning.
  ActivityLog(std::vector<ActivityRecord> records, std::vector<ActivityRecord> anchors = {},
              DanglingPolicy on_dangling = DanglingPolicy::Error);

  const std::vector<ActivityRecord> &records() const noexcept { return records_; }
  const std::vector<ActivityRecord> &anchors() const noexcept { return anchors_; }
  /// Distinct authors of records and anchors, sorted. Anchor authors are
  /// arc targets, so the projection needs them.
  const UnitSet &actor_index() const noexcept { return actors_; }
  const std::vector<std::string> &warnings() const noexcept { return warnings_; }

  /// Record or anchor with the given id, nullptr when unknown.
  const ActivityRecord *find(const std::string &record_id) const;
  std::size_t size() const noexcept { return records_.size(); }

private:
  std::vector<ActivityRecord> records_;
  std::vector<ActivityRecord> anchors_;
  UnitSet actors_;
  std::vector<std::string> warnings_;
  std::unordered_map<std::string, std::size_t> by_id_; // index into records_, anchors offset by records_.size()
};

/// Header names of the six columns of an export, plus the field delimiter
/// ('\0' detects comma or tab from the header line).
struct LogSchema {
  std::string record_id = "record_id";
  std::string kind = "kind";
  std::string parent_id = "parent_id";
  std::string author_id = "author_id";
  std::string timestamp = "timestamp";
  std::string reaction_kind = "reaction_kind";
  char delimiter = '\0';
};

LogSchema schema_from_json(std::string_view json_text);

struct ParseOptions {
  LogSchema schema;
  DanglingPolicy on_dangling = DanglingPolicy::Error;
  /// Collapse every reaction kind into the single label "reaction".
  bool merge_reactions = true;
};

inline constexpr const char *kMergedReaction = "reaction";

ActivityLog parse_activity_log(std::string_view text, const ParseOptions &options = {});

/// ISO-8601 date or datetime, optional fractional seconds and zone offset
/// (`Z`, `+hh:mm`, `+hhmm`); no zone means UTC.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);

// -- two-mode incidence ------------------------------------------------------

/// AP: actor wrote publication; PC: publication received comment;
/// PR: publication received reaction; CA / RA: comment / reaction to its author.
enum class Relation { AP, PC, PR, CA, RA };

Relation relation_from_string(std::string_view label);
std::string_view to_string(Relation relation);

/// Unit ids are namespaced `actor:`, `pub:`, `comment:` and `reaction:`.
/// Publications include anchors so cross-period attachments resolve.
TwoModeNetwork build_two_mode(const ActivityLog &log, Relation relation);

// -- periods -----------------------------------------------------------------

struct Period {
  std::string label;
  Timestamp start; // inclusive
  Timestamp end;   // inclusive
  int months = 0;
};

class PeriodSpec {
public:
  PeriodSpec() = default;
  /// Validates contiguity, ordering and month counts.
  explicit PeriodSpec(std::vector<Period> periods);

  const std::vector<Period> &periods() const noexcept { return periods_; }
  std::size_t size() const noexcept { return periods_.size(); }
  std::vector<int> month_counts() const;
  /// Index of the period containing `t`, if any.
  std::optional<std::size_t> locate(Timestamp t) const;

private:
  std::vector<Period> periods_;
};

/// Calendar months spanned by [start, end], counting both end months.
int months_spanned(Timestamp start, Timestamp end);

/// Builds a period from month or date bounds ("2011-09", "2014-12-31", full
/// datetimes). A month start expands to its first second, a month or date end
/// to its last second. `months` <= 0 derives the count with months_spanned.
Period make_period(std::string label, std::string_view start, std::string_view end, int months = 0);

/// "label:start:end[:months]" entries separated by commas.
PeriodSpec parse_period_triples(std::string_view text);
PeriodSpec period_spec_from_json(std::string_view json_text);

/// The community's four activity periods: Sept 2011 - Dec 2014, Jan - Nov
/// 2015, Dec 2015 - May 2016, June 2016 - Jan 2018, with the month counts
/// 39 / 11 / 6 / 20 used for per-month normalization.
PeriodSpec default_period_spec();

/// One log per period; a record whose parent falls in an earlier period keeps
/// that parent as an anchor.
std::vector<ActivityLog> slice_periods(const ActivityLog &log, const PeriodSpec &spec);

// -- activity statistics -------------------------------------------------------

struct PeriodCounts {
  std::string label;
  int months = 0;
  std::int64_t posts_and_comments = 0;
  std::int64_t commenting_actors = 0;
  std::int64_t reacting_actors = 0;
};

struct StatsRow {
  PeriodCounts counts;
  std::int64_t posts_and_comments_per_month = 0;
  std::int64_t commenting_per_month = 0;
  std::int64_t reacting_per_month = 0;
};

struct StatsTable {
  std::vector<StatsRow> periods;
  StatsRow total;   // per-month columns hold the averages over all months
};

/// count / months rounded to nearest, halves away from zero.
std::int64_t per_month(std::int64_t count, int months);

/// Tabulates per-period counts. Months and posts+comments totals are column
/// sums; distinct-actor totals come from `distinct_totals` when given (actors
/// active in several periods count once), else from column sums.
StatsTable tabulate_stats(std::vector<PeriodCounts> periods,
                          std::optional<std::pair<std::int64_t, std::int64_t>> distinct_totals = std::nullopt);

StatsTable activity_stats(const std::vector<ActivityLog> &slices, const PeriodSpec &spec);

std::string stats_to_csv(const StatsTable &table);

} // namespace copnet
