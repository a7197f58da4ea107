#include "copnet/stability.hpp"

#include <algorithm>
#include <limits>

namespace copnet {

namespace {

double pairs(double n) { return n * (n - 1.0) / 2.0; }

} // namespace

ContingencyTable contingency(const Partition &p1, const Partition &p2) {
  ContingencyTable t;
  t.counts = Eigen::MatrixXd::Zero(p1.k(), p2.k());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    const auto &unit = p1.units()[i];
    if (!p2.units().contains(unit)) {
      t.outgoers.push_back(unit);
      continue;
    }
    t.shared_units.push_back(unit);
    t.counts(p1.assignment()[i] - 1, p2.cluster_of(unit) - 1) += 1.0;
  }
  for (const auto &unit : p2.units())
    if (!p1.units().contains(unit))
      t.incomers.push_back(unit);
  if (t.shared_units.size() < 2)
    throw InvalidArgument("partitions share " + std::to_string(t.shared_units.size()) +
                          " units; at least 2 are needed");
  t.row_sums = t.counts.rowwise().sum();
  t.col_sums = t.counts.colwise().sum().transpose();
  return t;
}

RandScore adjusted_rand(const ContingencyTable &table) {
  const double n = table.total();
  if (n < 2.0)
    throw InvalidArgument("adjusted Rand index needs at least 2 shared units");
  const double index = table.counts.unaryExpr(&pairs).sum();
  const double a = table.row_sums.unaryExpr(&pairs).sum();
  const double b = table.col_sums.unaryExpr(&pairs).sum();
  const double expected = a * b / pairs(n);
  const double maximum = 0.5 * (a + b);

  RandScore s;
  s.shared = table.shared_units.size();
  s.outgoers = table.outgoers.size();
  s.incomers = table.incomers.size();
  if (maximum - expected == 0.0) {
    s.value = 1.0;
    s.degenerate = true;
  } else {
    s.value = (index - expected) / (maximum - expected);
  }
  return s;
}

RandScore modified_rand(const Partition &p1, const Partition &p2) { return adjusted_rand(contingency(p1, p2)); }

Aggregate aggregate_from_string(std::string_view text) {
  for (auto a : {Aggregate::ConsecutiveMean, Aggregate::AllPairsMean, Aggregate::Min})
    if (to_string(a) == text)
      return a;
  throw InvalidArgument("unknown aggregate '" + std::string(text) +
                        "' (expected consecutive-mean, all-pairs-mean or min)");
}

std::string_view to_string(Aggregate aggregate) {
  switch (aggregate) {
  case Aggregate::ConsecutiveMean:
    return "consecutive-mean";
  case Aggregate::AllPairsMean:
    return "all-pairs-mean";
  case Aggregate::Min:
    return "min";
  }
  return "?";
}

StabilitySeries stability_series(const std::vector<Partition> &partitions, Aggregate aggregate,
                                 const PartitionScorer &scorer) {
  const auto m = static_cast<Eigen::Index>(partitions.size());
  if (m < 2)
    throw InvalidArgument("stability series needs at least 2 partitions");
  StabilitySeries out;
  out.aggregate = aggregate;
  out.scores = Eigen::MatrixXd::Identity(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      out.scores(i, j) = out.scores(j, i) =
          scorer(partitions[static_cast<std::size_t>(i)], partitions[static_cast<std::size_t>(j)]).value;

  switch (aggregate) {
  case Aggregate::ConsecutiveMean: {
    double sum = 0.0;
    for (Eigen::Index i = 0; i + 1 < m; ++i)
      sum += out.scores(i, i + 1);
    out.series = sum / static_cast<double>(m - 1);
    break;
  }
  case Aggregate::AllPairsMean: {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j)
        sum += out.scores(i, j);
    out.series = sum / (static_cast<double>(m) * static_cast<double>(m - 1) / 2.0);
    break;
  }
  case Aggregate::Min: {
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j)
        lo = std::min(lo, out.scores(i, j));
    out.series = lo;
    break;
  }
  }
  return out;
}

} // namespace copnet
