#include "copnet/trajectory.hpp"

#include <algorithm>
#include <sstream>

namespace copnet {

std::vector<Perspective> Perspectives::items() const {
  std::vector<Perspective> out;
  for (auto p : {Perspective::Foothold, Perspective::Switch, Perspective::Alienation})
    if (contains(p))
      out.push_back(p);
  return out;
}

std::string_view to_string(State state) {
  switch (state) {
  case State::Core:
    return "C";
  case State::Periphery:
    return "P";
  case State::Semi:
    return "S";
  case State::Bridge:
    return "B";
  case State::NA:
    return "NA";
  }
  return "?";
}

std::string_view to_string(TrajectoryType type) {
  switch (type) {
  case TrajectoryType::Entries:
    return "entries";
  case TrajectoryType::Peripheral:
    return "peripheral";
  case TrajectoryType::Internal:
    return "internal";
  case TrajectoryType::Borderline:
    return "borderline";
  case TrajectoryType::Alienations:
    return "alienations";
  case TrajectoryType::Mixed:
    return "mixed";
  }
  return "?";
}

std::string_view to_string(Perspective perspective) {
  switch (perspective) {
  case Perspective::Foothold:
    return "foothold";
  case Perspective::Switch:
    return "switch";
  case Perspective::Alienation:
    return "alienation";
  }
  return "?";
}

std::string to_string(Perspectives perspectives) {
  std::string out;
  for (auto p : perspectives.items()) {
    if (!out.empty())
      out += '|';
    out += to_string(p);
  }
  return out;
}

State state_from_string(std::string_view text) {
  for (auto s : {State::Core, State::Periphery, State::Semi, State::Bridge, State::NA})
    if (to_string(s) == text)
      return s;
  throw InvalidArgument("unknown trajectory state '" + std::string(text) + "'");
}

TrajectoryType trajectory_type_from_string(std::string_view text) {
  for (auto t : {TrajectoryType::Entries, TrajectoryType::Peripheral, TrajectoryType::Internal,
                 TrajectoryType::Borderline, TrajectoryType::Alienations, TrajectoryType::Mixed})
    if (to_string(t) == text)
      return t;
  throw InvalidArgument("unknown trajectory type '" + std::string(text) + "'");
}

Perspectives perspectives_from_string(std::string_view text) {
  Perspectives out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, '|')) {
    bool found = false;
    for (auto p : {Perspective::Foothold, Perspective::Switch, Perspective::Alienation})
      if (to_string(p) == item) {
        out.insert(p);
        found = true;
      }
    if (!found)
      throw InvalidArgument("unknown perspective '" + item + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------

TrajectoryClass classify_trajectory(std::span<const State> states) {
  std::vector<State> active;
  for (auto s : states)
    if (s != State::NA)
      active.push_back(s);
  if (active.empty())
    throw InvalidArgument("trajectory has no active period");

  TrajectoryClass out;
  std::vector<State> folded = active;
  std::replace(folded.begin(), folded.end(), State::Bridge, State::Core);
  std::size_t folded_changes = 0;
  for (std::size_t i = 1; i < folded.size(); ++i)
    folded_changes += folded[i] != folded[i - 1];
  if (folded_changes == 0)
    out.perspectives.insert(Perspective::Foothold);
  else
    out.perspectives.insert(Perspective::Switch);
  auto first_active = std::find_if(states.begin(), states.end(), [](State s) { return s != State::NA; });
  if (std::find(first_active, states.end(), State::NA) != states.end())
    out.perspectives.insert(Perspective::Alienation);

  std::size_t changes = 0;
  for (std::size_t i = 1; i < active.size(); ++i)
    changes += active[i] != active[i - 1];
  const bool mixed = changes > 0;

  if (std::find(active.begin(), active.end(), State::Bridge) != active.end())
    out.type = TrajectoryType::Borderline;
  else if (states.front() == State::NA)
    out.type = TrajectoryType::Entries;
  else if (states.back() == State::NA && mixed)
    out.type = TrajectoryType::Alienations;
  else if (active.front() == State::Core && changes <= 1)
    out.type = TrajectoryType::Internal;
  else if ((active.front() == State::Periphery || active.front() == State::Semi) && changes <= 1)
    out.type = TrajectoryType::Peripheral;
  else
    out.type = TrajectoryType::Mixed;
  return out;
}

State state_of(Position position, bool three_state) {
  switch (position) {
  case Position::Core:
    return State::Core;
  case Position::SemiPeriphery:
    return three_state ? State::Semi : State::Periphery;
  case Position::Periphery:
    return State::Periphery;
  case Position::Bridge:
    return State::Bridge;
  }
  return State::NA;
}

std::vector<TrajectoryRecord> build_trajectories(const std::vector<std::map<ActorId, State>> &periods,
                                                 const UnitSet &universe) {
  for (std::size_t p = 0; p < periods.size(); ++p)
    for (const auto &[actor, state] : periods[p])
      if (!universe.contains(actor))
        throw InvalidArgument("actor '" + actor + "' of period " + std::to_string(p + 1) + " is not in the universe");
  std::vector<TrajectoryRecord> out;
  out.reserve(universe.size());
  for (const auto &actor : universe) {
    TrajectoryRecord r;
    r.actor = actor;
    for (const auto &period : periods) {
      auto it = period.find(actor);
      r.states.push_back(it == period.end() ? State::NA : it->second);
    }
    if (std::all_of(r.states.begin(), r.states.end(), [](State s) { return s == State::NA; }))
      throw InvalidArgument("actor '" + actor + "' is absent from every period");
    auto cls = classify_trajectory(r.states);
    r.type = cls.type;
    r.perspectives = cls.perspectives;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TrajectoryRecord> build_trajectories(const std::vector<BlockModel> &models, const UnitSet &universe,
                                                 bool three_state) {
  std::vector<std::map<ActorId, State>> periods;
  periods.reserve(models.size());
  for (const auto &bm : models) {
    std::map<ActorId, State> states;
    const auto &units = bm.partition.units();
    for (std::size_t i = 0; i < units.size(); ++i)
      states.emplace(units[i],
                     state_of(bm.positions[static_cast<std::size_t>(bm.partition.assignment()[i] - 1)], three_state));
    periods.push_back(std::move(states));
  }
  return build_trajectories(periods, universe);
}

namespace {

std::string csv_field(const std::string &text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos)
    return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

} // namespace

FlowTable flow_counts(const std::vector<TrajectoryRecord> &records) {
  if (records.empty())
    throw InvalidArgument("flow counts need at least one trajectory");
  const std::size_t periods = records.front().states.size();
  FlowTable flows(periods > 0 ? periods - 1 : 0);
  for (const auto &r : records) {
    if (r.states.size() != periods)
      throw InvalidArgument("trajectory of '" + r.actor + "' has a different period count");
    for (std::size_t p = 0; p + 1 < periods; ++p)
      ++flows[p][{r.states[p], r.states[p + 1]}];
  }
  return flows;
}

std::string trajectories_to_csv(const std::vector<TrajectoryRecord> &records,
                                const std::vector<std::string> &period_labels) {
  std::ostringstream out;
  out << "actor";
  for (const auto &l : period_labels)
    out << ',' << l;
  out << ",type,perspectives\n";
  for (const auto &r : records) {
    if (r.states.size() != period_labels.size())
      throw InvalidArgument("trajectory of '" + r.actor + "' does not match the period labels");
    out << csv_field(r.actor);
    for (auto s : r.states)
      out << ',' << to_string(s);
    out << ',' << to_string(r.type) << ',' << to_string(r.perspectives) << '\n';
  }
  return out.str();
}

std::string flows_to_csv(const FlowTable &flows, const std::vector<std::string> &period_labels) {
  if (period_labels.size() != flows.size() + 1)
    throw InvalidArgument("flow table does not match the period labels");
  std::ostringstream out;
  out << "period_pair,from,to,count\n";
  for (std::size_t p = 0; p < flows.size(); ++p)
    for (const auto &[transition, count] : flows[p])
      out << period_labels[p] << "->" << period_labels[p + 1] << ',' << to_string(transition.first) << ','
          << to_string(transition.second) << ',' << count << '\n';
  return out.str();
}

} // namespace copnet
