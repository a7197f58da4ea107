#include "copnet/netmodel.hpp"

#include <algorithm>

namespace copnet {

UnitSet::UnitSet(std::vector<UnitId> ids) : ids_(std::move(ids)) {
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (!index_.emplace(ids_[i], i).second)
      throw InvalidArgument("duplicate unit id '" + ids_[i] + "'");
}

std::size_t UnitSet::index_of(const UnitId &id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw InvalidArgument("unknown unit id '" + id + "'");
  return it->second;
}

// ---------------------------------------------------------------------------

TwoModeNetwork::TwoModeNetwork(UnitSet rows, UnitSet cols, CountMatrix weights)
    : rows_(std::move(rows)), cols_(std::move(cols)), weights_(std::move(weights)) {
  if (weights_.rows() != static_cast<Eigen::Index>(rows_.size()) ||
      weights_.cols() != static_cast<Eigen::Index>(cols_.size()))
    throw InvalidArgument("two-mode weight matrix does not match its unit sets");
  for (Eigen::Index r = 0; r < weights_.outerSize(); ++r)
    for (CountMatrix::InnerIterator it(weights_, r); it; ++it)
      if (it.value() < 0)
        throw InvalidArgument("two-mode weights must be nonnegative");
  weights_.prune(std::int64_t{0}, 0);
  weights_.makeCompressed();
}

TwoModeNetwork::TwoModeNetwork(UnitSet rows, UnitSet cols, std::span<const Entry> entries)
    : rows_(std::move(rows)), cols_(std::move(cols)) {
  std::vector<Eigen::Triplet<std::int64_t>> triplets;
  triplets.reserve(entries.size());
  for (const auto &e : entries) {
    if (e.row >= rows_.size() || e.col >= cols_.size())
      throw InvalidArgument("two-mode entry references a unit outside the unit sets");
    if (e.count < 0)
      throw InvalidArgument("two-mode weights must be nonnegative");
    triplets.emplace_back(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col), e.count);
  }
  weights_.resize(static_cast<Eigen::Index>(rows_.size()), static_cast<Eigen::Index>(cols_.size()));
  weights_.setFromTriplets(triplets.begin(), triplets.end());
  weights_.prune(std::int64_t{0}, 0);
  weights_.makeCompressed();
}

std::int64_t TwoModeNetwork::at(const UnitId &row, const UnitId &col) const {
  return weights_.coeff(static_cast<Eigen::Index>(rows_.index_of(row)),
                        static_cast<Eigen::Index>(cols_.index_of(col)));
}

std::vector<TwoModeNetwork::Entry> TwoModeNetwork::entries() const {
  std::vector<Entry> out;
  out.reserve(nonzeros());
  for (Eigen::Index r = 0; r < weights_.outerSize(); ++r)
    for (CountMatrix::InnerIterator it(weights_, r); it; ++it)
      out.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value()});
  return out;
}

TwoModeNetwork TwoModeNetwork::transposed() const {
  CountMatrix t = weights_.transpose();
  return TwoModeNetwork(cols_, rows_, std::move(t));
}

bool operator==(const TwoModeNetwork &a, const TwoModeNetwork &b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries() == b.entries();
}

// ---------------------------------------------------------------------------

OneModeNetwork::OneModeNetwork(UnitSet actors, ArcMap arcs) : actors_(std::move(actors)), arcs_(std::move(arcs)) {
  for (const auto &[key, w] : arcs_) {
    if (key.first >= actors_.size() || key.second >= actors_.size())
      throw InvalidArgument("arc endpoint outside the actor set");
    if (!(w > 0.0))
      throw InvalidArgument("arc weights must be positive");
  }
}

double OneModeNetwork::weight(const ActorId &source, const ActorId &target) const {
  auto it = arcs_.find({actors_.index_of(source), actors_.index_of(target)});
  return it == arcs_.end() ? 0.0 : it->second;
}

bool OneModeNetwork::has_loops() const {
  return std::any_of(arcs_.begin(), arcs_.end(), [](const auto &a) { return a.first.first == a.first.second; });
}

// ---------------------------------------------------------------------------

Partition::Partition(UnitSet units, std::vector<int> cluster_ids) : units_(std::move(units)) {
  if (cluster_ids.size() != units_.size())
    throw InvalidArgument("partition has " + std::to_string(cluster_ids.size()) + " cluster ids for " +
                          std::to_string(units_.size()) + " units");
  std::vector<int> distinct = cluster_ids;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  assignment_.reserve(cluster_ids.size());
  for (int c : cluster_ids)
    assignment_.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), c) - distinct.begin()) + 1);
  k_ = static_cast<int>(distinct.size());
}

std::vector<std::size_t> Partition::members(int c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i)
    if (assignment_[i] == c)
      out.push_back(i);
  return out;
}

std::vector<std::size_t> Partition::cluster_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
  for (int c : assignment_)
    ++sizes[static_cast<std::size_t>(c - 1)];
  return sizes;
}

} // namespace copnet
