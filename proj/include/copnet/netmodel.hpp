#pragma once

// Core graph types shared by every stage: sparse two-mode count matrices,
// directed weighted one-mode networks and partitions over explicit unit sets.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "copnet/error.hpp"

namespace copnet {

using ActorId = std::string;
using UnitId = std::string;

/// Ordered set of string ids with O(1) position lookup.
class UnitSet {
public:
  UnitSet() = default;
  explicit UnitSet(std::vector<UnitId> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  const UnitId &operator[](std::size_t i) const { return ids_[i]; }
  const std::vector<UnitId> &ids() const noexcept { return ids_; }
  bool contains(const UnitId &id) const { return index_.count(id) != 0; }
  /// Position of `id`; throws InvalidArgument when absent.
  std::size_t index_of(const UnitId &id) const;

  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  friend bool operator==(const UnitSet &a, const UnitSet &b) { return a.ids_ == b.ids_; }

private:
  std::vector<UnitId> ids_;
  std::unordered_map<UnitId, std::size_t> index_;
};

using CountMatrix = Eigen::SparseMatrix<std::int64_t, Eigen::RowMajor>;

/// Occurrence counts between two unit sets (Author x Post, Post x Comment, ...).
/// Unit ids carry a role namespace such as `actor:` or `pub:`.
class TwoModeNetwork {
public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    std::int64_t count;
    friend bool operator==(const Entry &, const Entry &) = default;
  };

  TwoModeNetwork() = default;
  /// Entries with count 0 are dropped; negative counts are rejected.
  TwoModeNetwork(UnitSet rows, UnitSet cols, CountMatrix weights);
  TwoModeNetwork(UnitSet rows, UnitSet cols, std::span<const Entry> entries);

  const UnitSet &rows() const noexcept { return rows_; }
  const UnitSet &cols() const noexcept { return cols_; }
  const CountMatrix &weights() const noexcept { return weights_; }

  std::int64_t at(const UnitId &row, const UnitId &col) const;
  /// Nonzero entries sorted by (row, col).
  std::vector<Entry> entries() const;
  std::size_t nonzeros() const { return static_cast<std::size_t>(weights_.nonZeros()); }

  TwoModeNetwork transposed() const;

  friend bool operator==(const TwoModeNetwork &a, const TwoModeNetwork &b);

private:
  UnitSet rows_;
  UnitSet cols_;
  CountMatrix weights_;
};

/// Directed weighted actor-actor network. Arc weights are strictly positive.
class OneModeNetwork {
public:
  using ArcKey = std::pair<std::size_t, std::size_t>;
  using ArcMap = std::map<ArcKey, double>;

  OneModeNetwork() = default;
  OneModeNetwork(UnitSet actors, ArcMap arcs);

  const UnitSet &actors() const noexcept { return actors_; }
  const ArcMap &arcs() const noexcept { return arcs_; }
  std::size_t size() const noexcept { return actors_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  /// Weight of source -> target, 0 when the arc is absent.
  double weight(const ActorId &source, const ActorId &target) const;
  bool has_loops() const;

  /// Dense weighted adjacency (absent arcs = 0).
  template <typename Scalar = double>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency() const {
    const auto n = static_cast<Eigen::Index>(actors_.size());
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (const auto &[key, w] : arcs_)
      x(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) =
          static_cast<Scalar>(w);
    return x;
  }

  /// 0/1 arc indicator matrix.
  template <typename Scalar = double>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> indicator() const {
    return adjacency<Scalar>().unaryExpr([](Scalar w) { return w > Scalar(0) ? Scalar(1) : Scalar(0); });
  }

  friend bool operator==(const OneModeNetwork &a, const OneModeNetwork &b) {
    return a.actors_ == b.actors_ && a.arcs_ == b.arcs_;
  }

private:
  UnitSet actors_;
  ArcMap arcs_;
};

/// Assignment of every unit to a cluster. Cluster ids are renumbered on
/// construction to 1..k, preserving the relative order of the input ids.
class Partition {
public:
  Partition() = default;
  Partition(UnitSet units, std::vector<int> cluster_ids);

  const UnitSet &units() const noexcept { return units_; }
  const std::vector<int> &assignment() const noexcept { return assignment_; }
  std::size_t size() const noexcept { return units_.size(); }
  int k() const noexcept { return k_; }

  int cluster_of(const UnitId &unit) const { return assignment_[units_.index_of(unit)]; }
  /// Units of cluster `c` (1-based), in unit order.
  std::vector<std::size_t> members(int c) const;
  std::vector<std::size_t> cluster_sizes() const;

  friend bool operator==(const Partition &a, const Partition &b) {
    return a.units_ == b.units_ && a.assignment_ == b.assignment_;
  }

private:
  UnitSet units_;
  std::vector<int> assignment_;
  int k_ = 0;
};

// Pajek .net / .clu interchange.

OneModeNetwork read_pajek_net(std::string_view text);
std::string write_pajek_net(const OneModeNetwork &net);

/// `units` supplies the labels; when empty, units are named "1".."n".
Partition read_partition_clu(std::string_view text, const UnitSet &units = {});
std::string write_partition_clu(const Partition &partition);

/// `value` rounded to `digits` significant decimal digits.
double round_significant(double value, int digits = 6);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_weight(double value);

} // namespace copnet
