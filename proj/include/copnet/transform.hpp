#pragma once

// Projection of two-mode incidence networks onto directed actor networks,
// reaction binarization, reduction to the most active actors and log
// recoding of skewed weights.

#include <cstddef>
#include <optional>
#include <string>

#include "copnet/ingest.hpp"
#include "copnet/netmodel.hpp"

namespace copnet {

/// Sparse matrix product; requires `x.cols() == y.rows()` (same ids, same order).
TwoModeNetwork multiply_two_mode(const TwoModeNetwork &x, const TwoModeNetwork &y);

/// Converts a square actor x actor product to a one-mode network, stripping
/// the `actor:` namespace and dropping loops. With `transpose`, (i, j) becomes
/// the arc j -> i.
OneModeNetwork to_one_mode(const TwoModeNetwork &square, bool transpose);

/// Arc u -> v weighted by the number of comments u wrote on publications of v
/// (AP * PC * CA, transposed). `transpose` keeps the raw owner -> commenter
/// orientation instead.
OneModeNetwork comment_network(const ActivityLog &log, bool transpose = false);

/// Arc u -> v with weight 1 whenever u reacted at least once to a publication
/// of v (AP * PR * RA, transposed and binarized). When `reaction_kind` is set,
/// only reactions of that kind are counted.
OneModeNetwork reaction_network(const ActivityLog &log, bool transpose = false,
                                const std::optional<std::string> &reaction_kind = std::nullopt);

/// Weighted in-degree + weighted out-degree per actor, in actor order.
Eigen::VectorXd total_strength(const OneModeNetwork &net);

struct Reduction {
  OneModeNetwork network;
  /// Set when top_n exceeded the actor count and the input was returned as is.
  bool unchanged = false;
};

/// Induced subnetwork on the `top_n` strongest actors (ties: smaller actor id
/// first). Survivors keep their original relative order.
Reduction reduce_network(const OneModeNetwork &net, std::size_t top_n);

/// Replaces every weight w by ln(1 + w).
OneModeNetwork log_normalize(const OneModeNetwork &net);

OneModeNetwork remove_loops(const OneModeNetwork &net);

} // namespace copnet
