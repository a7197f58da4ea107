#include "copnet/blockmodel.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace copnet {

namespace {

struct MergeKey {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t other = 0;
};

// Merge costs closer than this (relative) are ties and fall back to the
// unit-index order.
bool cheaper(double cost, std::size_t other, const MergeKey &best) {
  if (best.other == 0) // no candidate yet (a real partner always has index > 0)
    return true;
  const double tol = 1e-12 * std::max(1.0, std::abs(best.cost));
  if (cost < best.cost - tol)
    return true;
  if (std::abs(cost - best.cost) <= tol)
    return other < best.other;
  return false;
}

} // namespace

DissimilarityMatrix structural_dissimilarity(const OneModeNetwork &net, double p) {
  if (net.size() < 2)
    throw InvalidArgument("structural dissimilarity needs at least 2 actors");
  if (p < 0.0)
    throw InvalidArgument("correction weight p must be nonnegative");
  return {net.actors(), corrected_euclidean(net.adjacency<double>(), p)};
}

Partition agglomerative_cluster(const DissimilarityMatrix &d, int k) {
  const std::size_t n = d.units.size();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw InvalidArgument("cluster count k=" + std::to_string(k) + " outside 1.." + std::to_string(n));
  if (d.values.rows() != static_cast<Eigen::Index>(n) || d.values.cols() != static_cast<Eigen::Index>(n))
    throw InvalidArgument("dissimilarity matrix does not match its unit set");

  // Slot i holds the cluster whose smallest unit index is i.
  Eigen::MatrixXd cost = d.values.cwiseProduct(d.values);
  std::vector<double> size(n, 1.0);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  std::vector<MergeKey> best(n);

  auto at = [&](std::size_t a, std::size_t b) -> double & {
    return cost(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  };
  auto refresh = [&](std::size_t a) {
    best[a] = MergeKey{};
    for (std::size_t b = a + 1; b < n; ++b)
      if (active[b] && cheaper(at(a, b), b, best[a]))
        best[a] = {at(a, b), b};
  };
  for (std::size_t a = 0; a < n; ++a)
    refresh(a);

  for (std::size_t clusters = n; clusters > static_cast<std::size_t>(k); --clusters) {
    std::size_t a = n;
    MergeKey pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || best[i].other == 0)
        continue;
      const double tol = 1e-12 * std::max(1.0, std::abs(pick.cost));
      if (a == n || best[i].cost < pick.cost - tol) {
        a = i;
        pick = best[i];
      }
    }
    const std::size_t b = pick.other;

    const double na = size[a], nb = size[b], dab = at(a, b);
    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || x == a || x == b)
        continue;
      const double nx = size[x];
      const double merged = ((na + nx) * at(a, x) + (nb + nx) * at(b, x) - nx * dab) / (na + nb + nx);
      at(a, x) = at(x, a) = merged;
    }
    size[a] = na + nb;
    active[b] = false;
    best[b] = MergeKey{};
    for (auto &l : label)
      if (l == b)
        l = a;

    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x])
        continue;
      if (x == a || best[x].other == a || best[x].other == b)
        refresh(x);
      else if (x < a && cheaper(at(x, a), a, best[x]))
        best[x] = {at(x, a), a};
    }
  }

  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i)
    ids[i] = static_cast<int>(label[i]);
  return Partition(d.units, std::move(ids));
}

// ---------------------------------------------------------------------------

std::string_view to_string(Position position) {
  switch (position) {
  case Position::Core:
    return "core";
  case Position::SemiPeriphery:
    return "semi-periphery";
  case Position::Periphery:
    return "periphery";
  case Position::Bridge:
    return "bridge";
  }
  return "?";
}

std::string_view to_string(Structure structure) {
  switch (structure) {
  case Structure::CohesiveSubgroups:
    return "cohesive-subgroups";
  case Structure::CorePeriphery:
    return "core-periphery";
  case Structure::Centralized:
    return "centralized";
  case Structure::Hierarchical:
    return "hierarchical";
  case Structure::Transitive:
    return "transitive";
  case Structure::Other:
    return "other";
  }
  return "?";
}

Position position_from_string(std::string_view text) {
  for (auto p : {Position::Core, Position::SemiPeriphery, Position::Periphery, Position::Bridge})
    if (to_string(p) == text)
      return p;
  throw InvalidArgument("unknown position '" + std::string(text) + "'");
}

Structure structure_from_string(std::string_view text) {
  for (auto s : {Structure::CohesiveSubgroups, Structure::CorePeriphery, Structure::Centralized,
                 Structure::Hierarchical, Structure::Transitive, Structure::Other})
    if (to_string(s) == text)
      return s;
  throw InvalidArgument("unknown structure '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

BlockModel image_matrix(const OneModeNetwork &net, const Partition &partition, double alpha) {
  if (!(partition.units() == net.actors()))
    throw InvalidArgument("partition units differ from the network's actors");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("alpha must lie in (0, 1)");

  const int k = partition.k();
  const auto sizes = partition.cluster_sizes();
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
  std::size_t arcs = 0;
  for (const auto &[key, w] : net.arcs()) {
    if (key.first == key.second)
      continue;
    ++arcs;
    counts(partition.assignment()[key.first] - 1, partition.assignment()[key.second] - 1) += 1.0;
  }

  BlockModel bm;
  bm.partition = partition;
  bm.alpha = alpha;
  bm.density = Eigen::MatrixXd::Zero(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const double nr = static_cast<double>(sizes[static_cast<std::size_t>(r)]);
      const double nc = static_cast<double>(sizes[static_cast<std::size_t>(c)]);
      const double possible = r == c ? nr * (nr - 1.0) : nr * nc;
      bm.density(r, c) = possible > 0.0 ? counts(r, c) / possible : 0.0;
    }
  }
  const double n = static_cast<double>(net.size());
  bm.overall_density = n > 1.0 ? static_cast<double>(arcs) / (n * (n - 1.0)) : 0.0;
  const double threshold = alpha * std::max(bm.overall_density, kDensityFloor);
  bm.block_types = (bm.density.array() >= threshold);
  return label_positions(std::move(bm));
}

BlockModel label_positions(BlockModel bm) {
  const int k = static_cast<int>(bm.density.rows());
  bm.positions.assign(static_cast<std::size_t>(k), Position::Periphery);
  const auto sizes = bm.partition.cluster_sizes();

  int bridge = -1;
  double bridge_strength = -1.0;
  if (k >= 2) {
    const int needed = k / 2; // ceil((k - 1) / 2)
    for (int r = 0; r < k; ++r) {
      if (sizes[static_cast<std::size_t>(r)] != 1)
        continue;
      int linked = 0;
      double strength = 0.0;
      for (int c = 0; c < k; ++c) {
        if (c == r)
          continue;
        if (bm.block_types(r, c) || bm.block_types(c, r))
          ++linked;
        strength += bm.density(r, c) + bm.density(c, r);
      }
      if (linked >= needed && strength > bridge_strength) {
        bridge = r;
        bridge_strength = strength;
      }
    }
  }

  std::vector<int> rest;
  for (int r = 0; r < k; ++r)
    if (r != bridge)
      rest.push_back(r);
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) { return bm.density(a, a) > bm.density(b, b); });

  if (bridge >= 0)
    bm.positions[static_cast<std::size_t>(bridge)] = Position::Bridge;
  if (rest.size() == 1) {
    const int r = rest.front();
    bm.positions[static_cast<std::size_t>(r)] = bm.block_types(r, r) ? Position::Core : Position::Periphery;
  } else if (!rest.empty()) {
    for (std::size_t i = 0; i < rest.size(); ++i) {
      Position p = i == 0 ? Position::Core : i + 1 == rest.size() ? Position::Periphery : Position::SemiPeriphery;
      bm.positions[static_cast<std::size_t>(rest[i])] = p;
    }
  }
  return bm;
}

// ---------------------------------------------------------------------------

BlockTypes ideal_pattern(Structure structure, const std::vector<int> &order) {
  const int k = static_cast<int>(order.size());
  std::vector<int> rank(order.size());
  for (int i = 0; i < k; ++i)
    rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
  const int top = k > 0 ? order.front() : 0;
  BlockTypes t = BlockTypes::Constant(k, k, false);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const int rr = rank[static_cast<std::size_t>(r)], rc = rank[static_cast<std::size_t>(c)];
      switch (structure) {
      case Structure::CohesiveSubgroups:
        t(r, c) = r == c;
        break;
      case Structure::CorePeriphery:
        t(r, c) = r == top || c == top;
        break;
      case Structure::Centralized:
        t(r, c) = (r == top) != (c == top);
        break;
      case Structure::Hierarchical:
        t(r, c) = rr > rc;
        break;
      case Structure::Transitive:
        t(r, c) = rr >= rc;
        break;
      case Structure::Other:
        break;
      }
    }
  }
  return t;
}

Structure classify_structure(const BlockTypes &types) {
  const int k = static_cast<int>(types.rows());
  if (types.cols() != k)
    throw InvalidArgument("block type matrix must be square");
  if (k == 0)
    return Structure::Other;
  if (k == 1)
    return types(0, 0) ? Structure::CohesiveSubgroups : Structure::Other;
  if (k > 9)
    throw InvalidArgument("structure classification supports at most 9 clusters");

  auto hamming = [&](const BlockTypes &ideal) { return static_cast<int>((ideal != types).count()); };
  constexpr std::array<Structure, 5> kinds{Structure::CohesiveSubgroups, Structure::CorePeriphery,
                                           Structure::Centralized, Structure::Hierarchical, Structure::Transitive};
  std::array<int, 5> distance;
  distance.fill(std::numeric_limits<int>::max());

  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  distance[0] = hamming(ideal_pattern(Structure::CohesiveSubgroups, order));
  for (int top = 0; top < k; ++top) {
    std::vector<int> o{top};
    for (int c = 0; c < k; ++c)
      if (c != top)
        o.push_back(c);
    distance[1] = std::min(distance[1], hamming(ideal_pattern(Structure::CorePeriphery, o)));
    distance[2] = std::min(distance[2], hamming(ideal_pattern(Structure::Centralized, o)));
  }
  do {
    distance[3] = std::min(distance[3], hamming(ideal_pattern(Structure::Hierarchical, order)));
    distance[4] = std::min(distance[4], hamming(ideal_pattern(Structure::Transitive, order)));
  } while (std::next_permutation(order.begin(), order.end()));

  const int best = *std::min_element(distance.begin(), distance.end());
  if (std::count(distance.begin(), distance.end(), best) != 1)
    return Structure::Other;
  return kinds[static_cast<std::size_t>(std::find(distance.begin(), distance.end(), best) - distance.begin())];
}

BlockModel fit_blockmodel(const OneModeNetwork &net, int k, double alpha, double p) {
  auto d = structural_dissimilarity(net, p);
  auto partition = agglomerative_cluster(d, k);
  auto bm = image_matrix(net, partition, alpha);
  bm.structure = classify_structure(bm);
  return bm;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const BlockModel &bm) {
  using nlohmann::json;
  const int k = bm.k();
  json density = json::array(), types = json::array(), positions = json::array();
  for (int r = 0; r < k; ++r) {
    json drow = json::array(), trow = json::array();
    for (int c = 0; c < k; ++c) {
      drow.push_back(round_significant(bm.density(r, c)));
      trow.push_back(bm.block_types(r, c) ? "complete" : "null");
    }
    density.push_back(std::move(drow));
    types.push_back(std::move(trow));
  }
  for (auto p : bm.positions)
    positions.push_back(std::string(to_string(p)));
  return json{{"k", k},
              {"units", bm.partition.units().ids()},
              {"partition", bm.partition.assignment()},
              {"cluster_sizes", bm.partition.cluster_sizes()},
              {"alpha", round_significant(bm.alpha)},
              {"overall_density", round_significant(bm.overall_density)},
              {"density", std::move(density)},
              {"block_types", std::move(types)},
              {"positions", std::move(positions)},
              {"structure", std::string(to_string(bm.structure))}};
}

BlockModel blockmodel_from_json(const nlohmann::json &j) {
  BlockModel bm;
  bm.partition = Partition(UnitSet(j.at("units").get<std::vector<std::string>>()), j.at("partition").get<std::vector<int>>());
  const int k = bm.partition.k();
  if (j.at("k").get<int>() != k)
    throw InvalidArgument("blockmodel JSON: k does not match the partition");
  bm.alpha = j.value("alpha", 0.5);
  bm.overall_density = j.value("overall_density", 0.0);
  bm.density = Eigen::MatrixXd::Zero(k, k);
  bm.block_types = BlockTypes::Constant(k, k, false);
  const auto &density = j.at("density");
  const auto &types = j.at("block_types");
  if (static_cast<int>(density.size()) != k || static_cast<int>(types.size()) != k)
    throw InvalidArgument("blockmodel JSON: matrices must be k x k");
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      bm.density(r, c) = density.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>();
      auto t = types.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<std::string>();
      if (t != "complete" && t != "null")
        throw InvalidArgument("blockmodel JSON: unknown block type '" + t + "'");
      bm.block_types(r, c) = t == "complete";
    }
  }
  for (const auto &p : j.at("positions"))
    bm.positions.push_back(position_from_string(p.get<std::string>()));
  if (static_cast<int>(bm.positions.size()) != k)
    throw InvalidArgument("blockmodel JSON: one position per cluster expected");
  bm.structure = structure_from_string(j.at("structure").get<std::string>());
  return bm;
}

} // namespace copnet
