#pragma once

// Slow, obviously-correct reference implementations and random generators
// shared by the unit and acceptance tests. Nothing here calls into the code
// it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "copnet/ingest.hpp"
#include "copnet/netmodel.hpp"

namespace oracle {

using ArcCounts = std::map<std::pair<std::string, std::string>, std::int64_t>;

inline const copnet::ActivityRecord *lookup(const copnet::ActivityLog &log, const std::string &id) {
  for (const auto &r : log.records())
    if (r.record_id == id)
      return &r;
  for (const auto &r : log.anchors())
    if (r.record_id == id)
      return &r;
  return nullptr;
}

// For every comment, one arc commenter -> author of the commented publication.
inline ArcCounts comment_pairs(const copnet::ActivityLog &log) {
  ArcCounts out;
  for (const auto &r : log.records()) {
    if (r.kind != copnet::RecordKind::Comment)
      continue;
    const auto *parent = lookup(log, *r.parent_id);
    if (parent->author_id != r.author_id)
      ++out[{r.author_id, parent->author_id}];
  }
  return out;
}

// Reactor -> author, present or absent.
inline ArcCounts reaction_pairs(const copnet::ActivityLog &log) {
  ArcCounts out;
  for (const auto &r : log.records()) {
    if (r.kind != copnet::RecordKind::Reaction)
      continue;
    const auto *parent = lookup(log, *r.parent_id);
    if (parent->author_id != r.author_id)
      out[{r.author_id, parent->author_id}] = 1;
  }
  return out;
}

inline ArcCounts arcs_of(const copnet::OneModeNetwork &net) {
  ArcCounts out;
  for (const auto &[key, w] : net.arcs())
    out[{net.actors()[key.first], net.actors()[key.second]}] = static_cast<std::int64_t>(std::llround(w));
  return out;
}

inline ArcCounts flipped(const ArcCounts &arcs) {
  ArcCounts out;
  for (const auto &[k, w] : arcs)
    out[{k.second, k.first}] = w;
  return out;
}

inline Eigen::MatrixXd dense_product(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index s = 0; s < a.cols(); ++s)
        c(i, j) += a(i, s) * b(s, j);
  return c;
}

// Squared corrected Euclidean distance written out term by term.
inline double corrected_distance2(const Eigen::MatrixXd &x, int i, int j, double p) {
  double sum = 0;
  for (int s = 0; s < x.rows(); ++s) {
    if (s == i || s == j)
      continue;
    sum += std::pow(x(i, s) - x(j, s), 2);
    sum += std::pow(x(s, i) - x(s, j), 2);
  }
  return sum + p * (std::pow(x(i, i) - x(j, j), 2) + std::pow(x(i, j) - x(j, i), 2));
}

// Ward from first principles: repeatedly merge the two clusters whose union
// raises the within-cluster error sum the least, where the error of a cluster
// C is sum_{i<j in C} d_ij^2 / |C|. Ties go to the lexicographically smallest
// (min member of A, min member of B). Returns cluster ids numbered 1..k by
// smallest member.
inline std::vector<int> naive_ward(const Eigen::MatrixXd &d, int k) {
  const int n = static_cast<int>(d.rows());
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i)
    clusters.push_back({i});
  auto error = [&](const std::vector<int> &c) {
    double s = 0;
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b)
        s += d(c[a], c[b]) * d(c[a], c[b]);
    return s / static_cast<double>(c.size());
  };
  while (static_cast<int>(clusters.size()) > k) {
    std::sort(clusters.begin(), clusters.end());
    double best = INFINITY;
    std::size_t ba = 0, bb = 0;
    for (std::size_t a = 0; a < clusters.size(); ++a)
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        auto u = clusters[a];
        u.insert(u.end(), clusters[b].begin(), clusters[b].end());
        const double cost = error(u) - error(clusters[a]) - error(clusters[b]);
        if (bb == 0 || cost < best - 1e-9 * std::max(1.0, best)) {
          best = cost;
          ba = a;
          bb = b;
        }
      }
    clusters[ba].insert(clusters[ba].end(), clusters[bb].begin(), clusters[bb].end());
    std::sort(clusters[ba].begin(), clusters[ba].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bb));
  }
  std::sort(clusters.begin(), clusters.end());
  std::vector<int> ids(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (int u : clusters[c])
      ids[static_cast<std::size_t>(u)] = static_cast<int>(c) + 1;
  return ids;
}

// Hubert-Arabie adjusted Rand index from explicit pair enumeration over the
// units both partitions share.
inline double pair_ari(const copnet::Partition &p, const copnet::Partition &q) {
  std::vector<std::pair<int, int>> labels;
  for (const auto &u : p.units())
    if (q.units().contains(u))
      labels.emplace_back(p.cluster_of(u), q.cluster_of(u));
  double a = 0, b = 0, c = 0, dd = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      const bool same_p = labels[i].first == labels[j].first;
      const bool same_q = labels[i].second == labels[j].second;
      if (same_p && same_q)
        ++a;
      else if (same_p)
        ++b;
      else if (same_q)
        ++c;
      else
        ++dd;
    }
  const double den = (a + b) * (b + dd) + (a + c) * (c + dd);
  if (den == 0)
    return 1.0;
  return 2.0 * (a * dd - b * c) / den;
}

// Random activity log of at most `max_records` records over `n_actors`
// actors. Parents always precede their children.
inline copnet::ActivityLog random_log(std::mt19937_64 &rng, int max_records, int n_actors) {
  using copnet::RecordKind;
  std::uniform_int_distribution<int> n_dist(1, max_records);
  std::uniform_int_distribution<int> actor(0, n_actors - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  const int n = n_dist(rng);
  std::vector<copnet::ActivityRecord> records;
  std::vector<std::size_t> publications;
  const auto t0 = copnet::parse_timestamp("2015-01-01T00:00:00Z");
  static const char *kinds[] = {"like", "love", "wow", "haha", "sad", "angry"};
  for (int i = 0; i < n; ++i) {
    copnet::ActivityRecord r;
    r.record_id = "r" + std::to_string(i);
    r.author_id = "u" + std::to_string(actor(rng));
    r.timestamp = t0 + std::chrono::seconds(60 * i);
    int kd = publications.empty() ? 0 : kind(rng);
    if (kd == 0) {
      r.kind = RecordKind::Post;
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, publications.size() - 1);
      r.parent_id = records[publications[pick(rng)]].record_id;
      r.kind = kd == 1 ? RecordKind::Comment : RecordKind::Reaction;
      if (kd == 2)
        r.reaction_kind = kinds[rng() % 6];
    }
    if (r.kind != RecordKind::Reaction)
      publications.push_back(records.size());
    records.push_back(std::move(r));
  }
  return copnet::ActivityLog(std::move(records));
}

inline copnet::OneModeNetwork random_network(std::mt19937_64 &rng, int n, double density, bool integer_weights) {
  std::vector<copnet::UnitId> ids;
  for (int i = 0; i < n; ++i)
    ids.push_back("v" + std::to_string(i) + (rng() % 3 == 0 ? " x" : ""));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> w(0.01, 50.0);
  copnet::OneModeNetwork::ArcMap arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && u(rng) < density)
        arcs[{i, j}] = integer_weights ? static_cast<double>(1 + rng() % 9) : w(rng);
  return copnet::OneModeNetwork(copnet::UnitSet(ids), std::move(arcs));
}

inline copnet::Partition random_partition(std::mt19937_64 &rng, const copnet::UnitSet &units, int k) {
  std::vector<int> ids;
  for (std::size_t i = 0; i < units.size(); ++i)
    ids.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(k)));
  return copnet::Partition(units, ids);
}

inline copnet::UnitSet numbered_units(int n, const std::string &prefix = "u") {
  std::vector<copnet::UnitId> ids;
  for (int i = 0; i < n; ++i)
    ids.push_back(prefix + std::to_string(i));
  return copnet::UnitSet(ids);
}

} // namespace oracle
