#pragma once

// Indirect structural-equivalence blockmodeling: corrected Euclidean
// dissimilarities, Ward agglomeration, block densities and types, position
// labels and global-structure classification.

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "copnet/netmodel.hpp"

namespace copnet {

/// Corrected Euclidean dissimilarity between the rows/columns of a square
/// adjacency matrix:
///
///   d(i,j)^2 = sum_{s != i,j} [(x_is - x_js)^2 + (x_si - x_sj)^2]
///            + p [(x_ii - x_jj)^2 + (x_ij - x_ji)^2]
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
corrected_euclidean(const Eigen::MatrixBase<Derived> &x, typename Derived::Scalar p) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(x.rows() == x.cols());
  const Eigen::Index n = x.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Scalar sum(0);
      for (Eigen::Index s = 0; s < n; ++s) {
        if (s == i || s == j)
          continue;
        const Scalar out = x(i, s) - x(j, s);
        const Scalar in = x(s, i) - x(s, j);
        sum += out * out + in * in;
      }
      const Scalar loops = x(i, i) - x(j, j);
      const Scalar mutual = x(i, j) - x(j, i);
      sum += p * (loops * loops + mutual * mutual);
      d(i, j) = d(j, i) = std::sqrt(sum);
    }
  }
  return d;
}

struct DissimilarityMatrix {
  UnitSet units;
  Eigen::MatrixXd values;
};

DissimilarityMatrix structural_dissimilarity(const OneModeNetwork &net, double p = 1.0);

/// Ward agglomeration (Lance-Williams on squared dissimilarities) cut at k
/// clusters. Equal merge costs go to the pair with the smallest
/// (min unit index of A, min unit index of B). Cluster ids follow the
/// smallest unit index of each cluster.
Partition agglomerative_cluster(const DissimilarityMatrix &d, int k);

enum class Position { Core, SemiPeriphery, Periphery, Bridge };
enum class Structure { CohesiveSubgroups, CorePeriphery, Centralized, Hierarchical, Transitive, Other };

std::string_view to_string(Position position);
std::string_view to_string(Structure structure);
Position position_from_string(std::string_view text);
Structure structure_from_string(std::string_view text);

/// true = complete block, false = null block.
using BlockTypes = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct BlockModel {
  Partition partition;
  Eigen::MatrixXd density;
  BlockTypes block_types;
  std::vector<Position> positions; // indexed by cluster id - 1
  Structure structure = Structure::Other;
  double alpha = 0.5;
  double overall_density = 0.0;

  int k() const noexcept { return partition.k(); }
  Position position_of(const ActorId &actor) const {
    return positions[static_cast<std::size_t>(partition.cluster_of(actor) - 1)];
  }
};

inline constexpr double kDensityFloor = 1e-9;

/// Block densities from arc indicators (diagonal cells excluded within a
/// cluster; singleton diagonal blocks have density 0), block types against
/// alpha * max(overall density, 1e-9), then label_positions.
BlockModel image_matrix(const OneModeNetwork &net, const Partition &partition, double alpha = 0.5);

/// Fills `positions`. A singleton cluster tied by a complete row or column
/// block to at least half of the other clusters is the (single) bridge. The
/// remaining clusters rank by within-cluster density: highest core, lowest
/// periphery, anything between semi-periphery. A lone remaining cluster is
/// core if its diagonal block is complete, periphery otherwise.
BlockModel label_positions(BlockModel bm);

/// Hamming-nearest ideal pattern over all cluster orderings; ties -> Other.
Structure classify_structure(const BlockTypes &types);
inline Structure classify_structure(const BlockModel &bm) { return classify_structure(bm.block_types); }

/// The ideal complete/null pattern of `structure` for k clusters in the
/// given order (order[0] is the core, center or top of the hierarchy).
BlockTypes ideal_pattern(Structure structure, const std::vector<int> &order);

BlockModel fit_blockmodel(const OneModeNetwork &net, int k = 2, double alpha = 0.5, double p = 1.0);

nlohmann::json to_json(const BlockModel &bm);
BlockModel blockmodel_from_json(const nlohmann::json &j);

} // namespace copnet
