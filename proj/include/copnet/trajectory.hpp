#pragma once

// Per-actor position sequences across periods, their trajectory type and
// perspectives, and transition counts between consecutive periods.

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "copnet/blockmodel.hpp"
#include "copnet/netmodel.hpp"

namespace copnet {

/// NA: absent from the period's reduced network. This says nothing about
/// membership of the group itself, only about visible activity.
enum class State { Core, Periphery, Semi, Bridge, NA };

enum class TrajectoryType { Entries, Peripheral, Internal, Borderline, Alienations, Mixed };

enum class Perspective : unsigned { Foothold = 1, Switch = 2, Alienation = 4 };

/// Small set of perspectives.
class Perspectives {
public:
  constexpr Perspectives() = default;
  constexpr Perspectives(std::initializer_list<Perspective> ps) {
    for (auto p : ps)
      insert(p);
  }
  constexpr void insert(Perspective p) { bits_ |= static_cast<unsigned>(p); }
  constexpr bool contains(Perspective p) const { return bits_ & static_cast<unsigned>(p); }
  constexpr bool empty() const { return bits_ == 0; }
  std::vector<Perspective> items() const;
  friend constexpr bool operator==(Perspectives, Perspectives) = default;

private:
  unsigned bits_ = 0;
};

std::string_view to_string(State state);
std::string_view to_string(TrajectoryType type);
std::string_view to_string(Perspective perspective);
/// Perspectives joined with '|' in foothold, switch, alienation order.
std::string to_string(Perspectives perspectives);
State state_from_string(std::string_view text);
TrajectoryType trajectory_type_from_string(std::string_view text);
Perspectives perspectives_from_string(std::string_view text);

struct TrajectoryClass {
  TrajectoryType type = TrajectoryType::Mixed;
  Perspectives perspectives;
  friend bool operator==(const TrajectoryClass &, const TrajectoryClass &) = default;
};

struct TrajectoryRecord {
  ActorId actor;
  std::vector<State> states;
  TrajectoryType type = TrajectoryType::Mixed;
  Perspectives perspectives;
};

/// Rule table, first match wins:
///   borderline   any BRIDGE state
///   entries      the first period is NA
///   alienations  the last period is NA and the active states differ
///   internal     first active state CORE, at most one change afterwards
///   peripheral   first active state PERIPHERY (or SEMI), at most one change
///   mixed        everything else
/// Perspectives (BRIDGE counts as CORE here): foothold when all active states
/// agree, switch when two consecutive active states differ, alienation when
/// an NA follows an active state. Throws on an all-NA sequence.
TrajectoryClass classify_trajectory(std::span<const State> states);

/// Maps block positions to states; semi-periphery becomes PERIPHERY unless
/// `three_state`.
State state_of(Position position, bool three_state = false);

/// One record per universe actor (universe order), classified. Throws when a
/// model contains an actor outside the universe or an actor is NA throughout.
std::vector<TrajectoryRecord> build_trajectories(const std::vector<BlockModel> &models, const UnitSet &universe,
                                                 bool three_state = false);

/// Same, from explicit per-period actor -> state maps.
std::vector<TrajectoryRecord> build_trajectories(const std::vector<std::map<ActorId, State>> &periods,
                                                 const UnitSet &universe);

using Transition = std::pair<State, State>;
/// One transition count map per consecutive period pair.
using FlowTable = std::vector<std::map<Transition, std::size_t>>;

FlowTable flow_counts(const std::vector<TrajectoryRecord> &records);

/// actor, one column per period, type, perspectives.
std::string trajectories_to_csv(const std::vector<TrajectoryRecord> &records,
                                const std::vector<std::string> &period_labels);
/// period_pair, from, to, count.
std::string flows_to_csv(const FlowTable &flows, const std::vector<std::string> &period_labels);

} // namespace copnet
