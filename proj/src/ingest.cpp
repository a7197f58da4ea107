#include "copnet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace copnet {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool record_less(const ActivityRecord &a, const ActivityRecord &b) {
  if (a.timestamp != b.timestamp)
    return a.timestamp < b.timestamp;
  return a.record_id < b.record_id;
}

// RFC 4180 style splitting; quoted fields may contain the delimiter, doubled
// quotes and newlines.
std::vector<std::pair<std::size_t, std::vector<std::string>>> split_rows(std::string_view text, char delim) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  std::size_t line = 1, row_line = 1;
  auto end_row = [&] {
    if (any || !field.empty() || !fields.empty()) {
      fields.push_back(std::move(field));
      rows.emplace_back(row_line, std::move(fields));
    }
    fields.clear();
    field.clear();
    any = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n')
          ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == delim) {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      end_row();
      ++line;
      row_line = line;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted)
    throw ParseError(row_line, "unterminated quoted field");
  end_row();
  return rows;
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(0, "malformed " + std::string(what) + " in '" + std::string(s) + "'");
  return v;
}

std::chrono::sys_days civil_day(int y, int m, int d) {
  using namespace std::chrono;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok())
    throw ParseError(0, "invalid calendar date " + std::to_string(y) + "-" + std::to_string(m) + "-" + std::to_string(d));
  return sys_days{ymd};
}

// Parses "YYYY-MM" or "YYYY-MM-DD" (as_end selects the last second of the
// month/day) or a full datetime.
Timestamp parse_bound(std::string_view text, bool as_end) {
  using namespace std::chrono;
  text = trim(text);
  if (text.size() == 7 && text[4] == '-') {
    int y = parse_int(text.substr(0, 4), "year");
    int m = parse_int(text.substr(5, 2), "month");
    if (m < 1 || m > 12)
      throw ParseError(0, "invalid month in '" + std::string(text) + "'");
    if (!as_end)
      return Timestamp{civil_day(y, m, 1)};
    year_month_day_last last{year{y} / month{static_cast<unsigned>(m)} / std::chrono::last};
    return Timestamp{sys_days{last}} + hours{23} + minutes{59} + seconds{59};
  }
  if (text.size() == 10 && as_end)
    return parse_timestamp(text) + hours{23} + minutes{59} + seconds{59};
  return parse_timestamp(text);
}

} // namespace

std::string_view to_string(RecordKind kind) {
  switch (kind) {
  case RecordKind::Post:
    return "post";
  case RecordKind::Comment:
    return "comment";
  case RecordKind::Reaction:
    return "reaction";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Timestamp parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  auto s = trim(text);
  auto fail = [&](const std::string &why) -> ParseError {
    return ParseError(0, "unparseable timestamp '" + std::string(text) + "': " + why);
  };
  if (s.size() < 10 || s[4] != '-' || s[7] != '-')
    throw fail("expected YYYY-MM-DD");
  sys_days day;
  try {
    day = civil_day(parse_int(s.substr(0, 4), "year"), parse_int(s.substr(5, 2), "month"),
                    parse_int(s.substr(8, 2), "day"));
  } catch (const ParseError &) {
    throw fail("invalid date");
  }
  Timestamp t{day};
  s.remove_prefix(10);
  if (s.empty())
    return t;
  if (s.front() != 'T' && s.front() != 't' && s.front() != ' ')
    throw fail("expected 'T' between date and time");
  s.remove_prefix(1);
  auto two = [&](std::string_view what) {
    if (s.size() < 2 || !std::isdigit(static_cast<unsigned char>(s[0])) || !std::isdigit(static_cast<unsigned char>(s[1])))
      throw fail("malformed " + std::string(what));
    int v = (s[0] - '0') * 10 + (s[1] - '0');
    s.remove_prefix(2);
    return v;
  };
  int hh = two("hour");
  if (s.empty() || s.front() != ':')
    throw fail("expected ':' after hour");
  s.remove_prefix(1);
  int mm = two("minute");
  int ss = 0;
  if (!s.empty() && s.front() == ':') {
    s.remove_prefix(1);
    ss = two("second");
    if (!s.empty() && (s.front() == '.' || s.front() == ',')) {
      s.remove_prefix(1);
      while (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    }
  }
  if (hh > 23 || mm > 59 || ss > 60)
    throw fail("time out of range");
  t += hours{hh} + minutes{mm} + seconds{ss};
  if (s.empty() || s == "Z" || s == "z")
    return t;
  int sign = s.front() == '+' ? 1 : s.front() == '-' ? -1 : 0;
  if (!sign)
    throw fail("malformed zone designator");
  s.remove_prefix(1);
  int oh = two("zone hour");
  if (!s.empty() && s.front() == ':')
    s.remove_prefix(1);
  int om = s.empty() ? 0 : two("zone minute");
  if (!s.empty())
    throw fail("trailing characters");
  return t - sign * (hours{oh} + minutes{om});
}

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  auto day = floor<days>(t);
  year_month_day ymd{day};
  hh_mm_ss hms{t - day};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

// ---------------------------------------------------------------------------

ActivityLog::ActivityLog(std::vector<ActivityRecord> records, std::vector<ActivityRecord> anchors,
                         DanglingPolicy on_dangling)
    : anchors_(std::move(anchors)) {
  std::unordered_map<std::string, const ActivityRecord *> known;
  for (const auto &r : records) {
    if (r.record_id.empty())
      throw ParseError(0, "record with empty record_id");
    if (!known.emplace(r.record_id, &r).second)
      throw ParseError(0, "duplicate record_id '" + r.record_id + "'");
    if (r.author_id.empty())
      throw ParseError(0, "record '" + r.record_id + "' has no author");
    if ((r.kind == RecordKind::Post) == r.parent_id.has_value())
      throw ParseError(0, "record '" + r.record_id + "': parent_id must be present exactly for comments and reactions");
    if ((r.kind == RecordKind::Reaction) != r.reaction_kind.has_value())
      throw ParseError(0, "record '" + r.record_id + "': reaction_kind must be present exactly for reactions");
  }
  for (const auto &a : anchors_)
    if (!known.emplace(a.record_id, &a).second)
      throw ParseError(0, "anchor '" + a.record_id + "' duplicates a record");

  // Drop dangling records (and, transitively, their descendants) or reject.
  std::set<std::string> dropped;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &r : records) {
      if (!r.parent_id || dropped.count(r.record_id))
        continue;
      if (!known.count(*r.parent_id) || dropped.count(*r.parent_id)) {
        if (on_dangling == DanglingPolicy::Error)
          throw ParseError(0, "record '" + r.record_id + "' references unknown parent '" + *r.parent_id + "'");
        dropped.insert(r.record_id);
        warnings_.push_back("dropped record '" + r.record_id + "': unresolved parent '" + *r.parent_id + "'");
        changed = true;
      }
    }
  }
  for (auto &r : records)
    if (!dropped.count(r.record_id))
      records_.push_back(std::move(r));
  known.clear();
  for (const auto &r : records_)
    known.emplace(r.record_id, &r);
  for (const auto &a : anchors_)
    known.emplace(a.record_id, &a);

  for (const auto &r : records_) {
    if (!r.parent_id)
      continue;
    const ActivityRecord *parent = known.at(*r.parent_id);
    if (!parent->is_publication())
      throw ParseError(0, "record '" + r.record_id + "' attaches to reaction '" + parent->record_id + "'");
    if (parent->timestamp > r.timestamp)
      throw ParseError(0, "record '" + r.record_id + "' precedes its parent '" + parent->record_id + "'");
  }

  std::sort(records_.begin(), records_.end(), record_less);
  std::sort(anchors_.begin(), anchors_.end(), record_less);
  for (std::size_t i = 0; i < records_.size(); ++i)
    by_id_.emplace(records_[i].record_id, i);
  for (std::size_t i = 0; i < anchors_.size(); ++i)
    by_id_.emplace(anchors_[i].record_id, records_.size() + i);

  std::set<ActorId> authors;
  for (const auto &r : records_)
    authors.insert(r.author_id);
  for (const auto &a : anchors_)
    authors.insert(a.author_id);
  actors_ = UnitSet(std::vector<ActorId>(authors.begin(), authors.end()));
}

const ActivityRecord *ActivityLog::find(const std::string &record_id) const {
  auto it = by_id_.find(record_id);
  if (it == by_id_.end())
    return nullptr;
  return it->second < records_.size() ? &records_[it->second] : &anchors_[it->second - records_.size()];
}

// ---------------------------------------------------------------------------

LogSchema schema_from_json(std::string_view json_text) {
  auto j = nlohmann::json::parse(json_text);
  LogSchema s;
  auto take = [&](const char *key, std::string &field) {
    if (j.contains(key))
      field = j.at(key).get<std::string>();
  };
  take("record_id", s.record_id);
  take("kind", s.kind);
  take("parent_id", s.parent_id);
  take("author_id", s.author_id);
  take("timestamp", s.timestamp);
  take("reaction_kind", s.reaction_kind);
  if (j.contains("delimiter")) {
    auto d = j.at("delimiter").get<std::string>();
    if (d == "\\t" || d == "tab")
      s.delimiter = '\t';
    else if (d.size() == 1)
      s.delimiter = d.front();
    else
      throw InvalidArgument("delimiter must be a single character or 'tab'");
  }
  return s;
}

ActivityLog parse_activity_log(std::string_view text, const ParseOptions &options) {
  const auto &schema = options.schema;
  char delim = schema.delimiter;
  if (!delim) {
    auto header = text.substr(0, text.find('\n'));
    delim = header.find('\t') != std::string_view::npos ? '\t' : ',';
  }
  auto rows = split_rows(text, delim);
  if (rows.empty())
    throw ParseError(1, "empty activity log: missing header row");

  const auto &header = rows.front().second;
  auto column = [&](const std::string &name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == name)
        return i;
    throw ParseError(rows.front().first, "missing column '" + name + "'");
  };
  const std::size_t c_id = column(schema.record_id), c_kind = column(schema.kind),
                    c_parent = column(schema.parent_id), c_author = column(schema.author_id),
                    c_time = column(schema.timestamp), c_react = column(schema.reaction_kind);

  static const std::set<std::string> reaction_kinds{"like", "love", "wow", "haha", "sad", "angry", "thankful"};

  std::vector<ActivityRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t ri = 1; ri < rows.size(); ++ri) {
    const auto &[line, fields] = rows[ri];
    if (fields.size() == 1 && trim(fields[0]).empty())
      continue;
    if (fields.size() != header.size())
      throw ParseError(line, "expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()));
    auto field = [&](std::size_t c) { return std::string(trim(fields[c])); };
    ActivityRecord r;
    r.record_id = field(c_id);
    auto kind = lower(field(c_kind));
    if (kind == "post")
      r.kind = RecordKind::Post;
    else if (kind == "comment")
      r.kind = RecordKind::Comment;
    else if (kind == "reaction")
      r.kind = RecordKind::Reaction;
    else
      throw ParseError(line, "unknown record kind '" + field(c_kind) + "'");
    if (auto p = field(c_parent); !p.empty())
      r.parent_id = p;
    r.author_id = field(c_author);
    try {
      r.timestamp = parse_timestamp(field(c_time));
    } catch (const ParseError &e) {
      throw ParseError(line, e.what());
    }
    if (auto rk = lower(field(c_react)); !rk.empty()) {
      if (!reaction_kinds.count(rk) && rk != kMergedReaction)
        throw ParseError(line, "unknown reaction kind '" + rk + "'");
      r.reaction_kind = options.merge_reactions ? std::string(kMergedReaction) : rk;
    }
    records.push_back(std::move(r));
  }
  return ActivityLog(std::move(records), {}, options.on_dangling);
}

// ---------------------------------------------------------------------------

Relation relation_from_string(std::string_view label) {
  auto l = lower(label);
  if (l == "ap")
    return Relation::AP;
  if (l == "pc")
    return Relation::PC;
  if (l == "pr")
    return Relation::PR;
  if (l == "ca")
    return Relation::CA;
  if (l == "ra")
    return Relation::RA;
  throw InvalidArgument("unknown relation '" + std::string(label) + "' (expected AP, PC, PR, CA or RA)");
}

std::string_view to_string(Relation relation) {
  switch (relation) {
  case Relation::AP:
    return "AP";
  case Relation::PC:
    return "PC";
  case Relation::PR:
    return "PR";
  case Relation::CA:
    return "CA";
  case Relation::RA:
    return "RA";
  }
  return "?";
}

TwoModeNetwork build_two_mode(const ActivityLog &log, Relation relation) {
  std::vector<const ActivityRecord *> publications, comments, reactions;
  for (const auto &a : log.anchors())
    if (a.is_publication())
      publications.push_back(&a);
  for (const auto &r : log.records()) {
    if (r.is_publication())
      publications.push_back(&r);
    if (r.kind == RecordKind::Comment)
      comments.push_back(&r);
    else if (r.kind == RecordKind::Reaction)
      reactions.push_back(&r);
  }

  auto units = [](const std::vector<const ActivityRecord *> &recs, const char *prefix) {
    std::vector<UnitId> ids;
    ids.reserve(recs.size());
    for (const auto *r : recs)
      ids.push_back(prefix + r->record_id);
    return UnitSet(std::move(ids));
  };
  std::vector<UnitId> actor_ids;
  for (const auto &a : log.actor_index())
    actor_ids.push_back("actor:" + a);
  UnitSet actors(std::move(actor_ids));
  UnitSet pubs = units(publications, "pub:");

  std::vector<TwoModeNetwork::Entry> entries;
  switch (relation) {
  case Relation::AP:
    for (std::size_t j = 0; j < publications.size(); ++j)
      entries.push_back({actors.index_of("actor:" + publications[j]->author_id), j, 1});
    return TwoModeNetwork(std::move(actors), std::move(pubs), entries);
  case Relation::PC:
  case Relation::PR: {
    const auto &targets = relation == Relation::PC ? comments : reactions;
    UnitSet cols = units(targets, relation == Relation::PC ? "comment:" : "reaction:");
    for (std::size_t j = 0; j < targets.size(); ++j)
      entries.push_back({pubs.index_of("pub:" + *targets[j]->parent_id), j, 1});
    return TwoModeNetwork(std::move(pubs), std::move(cols), entries);
  }
  case Relation::CA:
  case Relation::RA: {
    const auto &sources = relation == Relation::CA ? comments : reactions;
    UnitSet rows = units(sources, relation == Relation::CA ? "comment:" : "reaction:");
    for (std::size_t i = 0; i < sources.size(); ++i)
      entries.push_back({i, actors.index_of("actor:" + sources[i]->author_id), 1});
    return TwoModeNetwork(std::move(rows), std::move(actors), entries);
  }
  }
  throw InvalidArgument("unknown relation");
}

// ---------------------------------------------------------------------------

int months_spanned(Timestamp start, Timestamp end) {
  using namespace std::chrono;
  year_month_day a{floor<days>(start)}, b{floor<days>(end)};
  return (static_cast<int>(b.year()) - static_cast<int>(a.year())) * 12 +
         (static_cast<int>(static_cast<unsigned>(b.month())) - static_cast<int>(static_cast<unsigned>(a.month()))) + 1;
}

Period make_period(std::string label, std::string_view start, std::string_view end, int months) {
  Period p;
  p.label = std::move(label);
  p.start = parse_bound(start, false);
  p.end = parse_bound(end, true);
  p.months = months > 0 ? months : months_spanned(p.start, p.end);
  return p;
}

PeriodSpec::PeriodSpec(std::vector<Period> periods) : periods_(std::move(periods)) {
  if (periods_.empty())
    throw InvalidArgument("period spec needs at least one period");
  std::set<std::string> labels;
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    const auto &p = periods_[i];
    if (!labels.insert(p.label).second)
      throw InvalidArgument("duplicate period label '" + p.label + "'");
    if (p.end < p.start)
      throw InvalidArgument("period '" + p.label + "' ends before it starts");
    if (p.months < 1)
      throw InvalidArgument("period '" + p.label + "' must span at least one month");
    if (i > 0 && p.start != periods_[i - 1].end + std::chrono::seconds{1})
      throw InvalidArgument("period '" + p.label + "' is not contiguous with '" + periods_[i - 1].label + "'");
  }
}

std::vector<int> PeriodSpec::month_counts() const {
  std::vector<int> out;
  for (const auto &p : periods_)
    out.push_back(p.months);
  return out;
}

std::optional<std::size_t> PeriodSpec::locate(Timestamp t) const {
  for (std::size_t i = 0; i < periods_.size(); ++i)
    if (periods_[i].start <= t && t <= periods_[i].end)
      return i;
  return std::nullopt;
}

PeriodSpec parse_period_triples(std::string_view text) {
  std::vector<Period> periods;
  std::stringstream all{std::string(text)};
  std::string item;
  while (std::getline(all, item, ',')) {
    auto t = std::string(trim(item));
    if (t.empty())
      continue;
    std::vector<std::string> parts;
    std::stringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ':'))
      parts.push_back(part);
    if (parts.size() != 3 && parts.size() != 4)
      throw ParseError(0, "period '" + t + "' is not label:start:end[:months]");
    int months = parts.size() == 4 ? parse_int(parts[3], "month count") : 0;
    periods.push_back(make_period(parts[0], parts[1], parts[2], months));
  }
  return PeriodSpec(std::move(periods));
}

PeriodSpec period_spec_from_json(std::string_view json_text) {
  auto j = nlohmann::json::parse(json_text);
  if (j.is_object() && j.contains("periods"))
    j = j.at("periods");
  std::vector<Period> periods;
  for (const auto &p : j)
    periods.push_back(make_period(p.at("label").get<std::string>(), p.at("start").get<std::string>(),
                                  p.at("end").get<std::string>(), p.value("months", 0)));
  return PeriodSpec(std::move(periods));
}

PeriodSpec default_period_spec() {
  // The first period spans 40 calendar months; the reference normalization
  // divides by 39.
  return PeriodSpec({make_period("T1", "2011-09", "2014-12", 39), make_period("T2", "2015-01", "2015-11"),
                     make_period("T3", "2015-12", "2016-05"), make_period("T4", "2016-06", "2018-01")});
}

std::vector<ActivityLog> slice_periods(const ActivityLog &log, const PeriodSpec &spec) {
  std::vector<std::vector<ActivityRecord>> buckets(spec.size());
  std::unordered_map<std::string, std::size_t> period_of;
  for (const auto &r : log.records()) {
    auto p = spec.locate(r.timestamp);
    if (!p)
      throw InvalidArgument("record '" + r.record_id + "' at " + format_timestamp(r.timestamp) +
                            " lies outside every period");
    buckets[*p].push_back(r);
    period_of.emplace(r.record_id, *p);
  }
  std::vector<ActivityLog> slices;
  slices.reserve(spec.size());
  for (std::size_t p = 0; p < spec.size(); ++p) {
    std::vector<ActivityRecord> anchors;
    std::set<std::string> seen;
    for (const auto &r : buckets[p]) {
      if (!r.parent_id)
        continue;
      auto it = period_of.find(*r.parent_id);
      if (it != period_of.end() && it->second == p)
        continue;
      if (seen.insert(*r.parent_id).second) {
        ActivityRecord anchor = *log.find(*r.parent_id);
        anchors.push_back(std::move(anchor));
      }
    }
    slices.emplace_back(std::move(buckets[p]), std::move(anchors));
  }
  return slices;
}

// ---------------------------------------------------------------------------

std::int64_t per_month(std::int64_t count, int months) {
  if (months < 1)
    throw InvalidArgument("per-month normalization needs at least one month");
  const std::int64_t m = months;
  const std::int64_t mag = (2 * (count < 0 ? -count : count) + m) / (2 * m);
  return count < 0 ? -mag : mag;
}

StatsTable tabulate_stats(std::vector<PeriodCounts> periods,
                          std::optional<std::pair<std::int64_t, std::int64_t>> distinct_totals) {
  StatsTable table;
  PeriodCounts total{"total", 0, 0, 0, 0};
  for (auto &c : periods) {
    total.months += c.months;
    total.posts_and_comments += c.posts_and_comments;
    total.commenting_actors += c.commenting_actors;
    total.reacting_actors += c.reacting_actors;
    StatsRow row{c, per_month(c.posts_and_comments, c.months), per_month(c.commenting_actors, c.months),
                 per_month(c.reacting_actors, c.months)};
    table.periods.push_back(std::move(row));
  }
  if (distinct_totals) {
    total.commenting_actors = distinct_totals->first;
    total.reacting_actors = distinct_totals->second;
  }
  table.total.counts = total;
  if (total.months > 0) {
    table.total.posts_and_comments_per_month = per_month(total.posts_and_comments, total.months);
    table.total.commenting_per_month = per_month(total.commenting_actors, total.months);
    table.total.reacting_per_month = per_month(total.reacting_actors, total.months);
  }
  return table;
}

StatsTable activity_stats(const std::vector<ActivityLog> &slices, const PeriodSpec &spec) {
  if (slices.size() != spec.size())
    throw InvalidArgument("got " + std::to_string(slices.size()) + " slices for " + std::to_string(spec.size()) +
                          " periods");
  std::vector<PeriodCounts> counts;
  std::set<ActorId> all_commenters, all_reactors;
  for (std::size_t p = 0; p < slices.size(); ++p) {
    std::set<ActorId> commenters, reactors;
    std::int64_t publications = 0;
    for (const auto &r : slices[p].records()) {
      if (r.is_publication())
        ++publications;
      if (r.kind == RecordKind::Comment)
        commenters.insert(r.author_id);
      else if (r.kind == RecordKind::Reaction)
        reactors.insert(r.author_id);
    }
    all_commenters.insert(commenters.begin(), commenters.end());
    all_reactors.insert(reactors.begin(), reactors.end());
    const auto &period = spec.periods()[p];
    counts.push_back({period.label, period.months, publications, static_cast<std::int64_t>(commenters.size()),
                      static_cast<std::int64_t>(reactors.size())});
  }
  return tabulate_stats(std::move(counts), std::pair{static_cast<std::int64_t>(all_commenters.size()),
                                                     static_cast<std::int64_t>(all_reactors.size())});
}

std::string stats_to_csv(const StatsTable &table) {
  std::ostringstream out;
  out << "period,months,posts_and_comments,posts_and_comments_per_month,commenting_actors,"
         "commenting_actors_per_month,reacting_actors,reacting_actors_per_month\n";
  auto row = [&](const StatsRow &r) {
    out << r.counts.label << ',' << r.counts.months << ',' << r.counts.posts_and_comments << ','
        << r.posts_and_comments_per_month << ',' << r.counts.commenting_actors << ',' << r.commenting_per_month << ','
        << r.counts.reacting_actors << ',' << r.reacting_per_month << '\n';
  };
  for (const auto &r : table.periods)
    row(r);
  row(table.total);
  return out.str();
}

} // namespace copnet
