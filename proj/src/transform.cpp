#include "copnet/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace copnet {

namespace {

constexpr std::string_view kActorPrefix = "actor:";

ActivityLog reactions_of_kind(const ActivityLog &log, const std::string &kind) {
  std::vector<ActivityRecord> kept;
  for (const auto &r : log.records())
    if (r.kind != RecordKind::Reaction || r.reaction_kind == kind)
      kept.push_back(r);
  return ActivityLog(std::move(kept), log.anchors());
}

} // namespace

TwoModeNetwork multiply_two_mode(const TwoModeNetwork &x, const TwoModeNetwork &y) {
  if (!(x.cols() == y.rows()))
    throw InvalidArgument("two-mode product needs matching inner unit sets (" + std::to_string(x.cols().size()) +
                          " vs " + std::to_string(y.rows().size()) + " units)");
  CountMatrix product = (x.weights() * y.weights()).pruned();
  return TwoModeNetwork(x.rows(), y.cols(), std::move(product));
}

OneModeNetwork to_one_mode(const TwoModeNetwork &square, bool transpose) {
  if (!(square.rows() == square.cols()))
    throw InvalidArgument("one-mode conversion needs identical row and column units");
  std::vector<ActorId> ids;
  ids.reserve(square.rows().size());
  for (const auto &u : square.rows())
    ids.push_back(u.rfind(kActorPrefix, 0) == 0 ? u.substr(kActorPrefix.size()) : u);
  OneModeNetwork::ArcMap arcs;
  for (const auto &e : square.entries()) {
    if (e.row == e.col)
      continue;
    auto key = transpose ? OneModeNetwork::ArcKey{e.col, e.row} : OneModeNetwork::ArcKey{e.row, e.col};
    arcs[key] = static_cast<double>(e.count);
  }
  return OneModeNetwork(UnitSet(std::move(ids)), std::move(arcs));
}

OneModeNetwork comment_network(const ActivityLog &log, bool transpose) {
  auto ac = multiply_two_mode(build_two_mode(log, Relation::AP), build_two_mode(log, Relation::PC));
  auto aa = multiply_two_mode(ac, build_two_mode(log, Relation::CA));
  // aa(owner, commenter); commenter -> owner is the transpose.
  return to_one_mode(aa, !transpose);
}

OneModeNetwork reaction_network(const ActivityLog &log, bool transpose, const std::optional<std::string> &reaction_kind) {
  if (reaction_kind)
    return reaction_network(reactions_of_kind(log, *reaction_kind), transpose);
  auto ar = multiply_two_mode(build_two_mode(log, Relation::AP), build_two_mode(log, Relation::PR));
  auto aa = multiply_two_mode(ar, build_two_mode(log, Relation::RA));
  auto weighted = to_one_mode(aa, !transpose);
  auto arcs = weighted.arcs();
  for (auto &[key, w] : arcs)
    w = 1.0;
  return OneModeNetwork(weighted.actors(), std::move(arcs));
}

Eigen::VectorXd total_strength(const OneModeNetwork &net) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(net.size()));
  for (const auto &[key, w] : net.arcs()) {
    s(static_cast<Eigen::Index>(key.first)) += w;
    s(static_cast<Eigen::Index>(key.second)) += w;
  }
  return s;
}

Reduction reduce_network(const OneModeNetwork &net, std::size_t top_n) {
  if (top_n == 0)
    throw InvalidArgument("top_n must be at least 1");
  if (top_n >= net.size())
    return {net, top_n > net.size()};

  const Eigen::VectorXd strength = total_strength(net);
  std::vector<std::size_t> order(net.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double sa = strength(static_cast<Eigen::Index>(a)), sb = strength(static_cast<Eigen::Index>(b));
    if (sa != sb)
      return sa > sb;
    return net.actors()[a] < net.actors()[b];
  });
  std::vector<std::size_t> keep(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top_n));
  std::sort(keep.begin(), keep.end());

  std::vector<std::ptrdiff_t> remap(net.size(), -1);
  std::vector<ActorId> ids;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    remap[keep[i]] = static_cast<std::ptrdiff_t>(i);
    ids.push_back(net.actors()[keep[i]]);
  }
  OneModeNetwork::ArcMap arcs;
  for (const auto &[key, w] : net.arcs())
    if (remap[key.first] >= 0 && remap[key.second] >= 0)
      arcs[{static_cast<std::size_t>(remap[key.first]), static_cast<std::size_t>(remap[key.second])}] = w;
  return {OneModeNetwork(UnitSet(std::move(ids)), std::move(arcs)), false};
}

OneModeNetwork log_normalize(const OneModeNetwork &net) {
  auto arcs = net.arcs();
  for (auto &[key, w] : arcs)
    w = std::log1p(w);
  return OneModeNetwork(net.actors(), std::move(arcs));
}

OneModeNetwork remove_loops(const OneModeNetwork &net) {
  auto arcs = net.arcs();
  std::erase_if(arcs, [](const auto &a) { return a.first.first == a.first.second; });
  return OneModeNetwork(net.actors(), std::move(arcs));
}

} // namespace copnet
