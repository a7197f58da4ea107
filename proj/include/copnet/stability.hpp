#pragma once

// Stability of partitions over non-equal unit sets: pair counting on the
// units shared by two partitions.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "copnet/netmodel.hpp"

namespace copnet {

struct ContingencyTable {
  std::vector<UnitId> shared_units;
  Eigen::MatrixXd counts;     // n_rc over shared units; rows: clusters of p1, cols: clusters of p2
  Eigen::VectorXd row_sums;
  Eigen::VectorXd col_sums;
  std::vector<UnitId> outgoers; // in p1 only
  std::vector<UnitId> incomers; // in p2 only

  double total() const { return counts.sum(); }
};

/// Clusters with no shared unit keep an all-zero row or column.
ContingencyTable contingency(const Partition &p1, const Partition &p2);

struct RandScore {
  double value = 0.0;
  /// Both restricted partitions put all shared units in one cluster.
  bool degenerate = false;
  std::size_t shared = 0;
  std::size_t outgoers = 0;
  std::size_t incomers = 0;
};

/// Chance-adjusted Rand index over the shared-unit contingency table.
/// Requires at least two shared units.
RandScore adjusted_rand(const ContingencyTable &table);

/// Scoring rule for two partitions; the default is the adjusted Rand index
/// restricted to shared units.
using PartitionScorer = std::function<RandScore(const Partition &, const Partition &)>;

RandScore modified_rand(const Partition &p1, const Partition &p2);

enum class Aggregate { ConsecutiveMean, AllPairsMean, Min };

Aggregate aggregate_from_string(std::string_view text);
std::string_view to_string(Aggregate aggregate);

struct StabilitySeries {
  Eigen::MatrixXd scores; // symmetric, unit diagonal
  double series = 0.0;
  Aggregate aggregate = Aggregate::ConsecutiveMean;
};

/// Pairwise scores of all partitions plus the aggregate. The consecutive
/// mean averages scores(i, i + 1); min and all-pairs-mean run over i < j.
StabilitySeries stability_series(const std::vector<Partition> &partitions,
                                 Aggregate aggregate = Aggregate::ConsecutiveMean,
                                 const PartitionScorer &scorer = modified_rand);

} // namespace copnet
