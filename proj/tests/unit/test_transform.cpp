#include <doctest.h>

#include "copnet/transform.hpp"
#include "oracles.hpp"

using namespace copnet;

TEST_CASE("sparse product matches the dense triple loop") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 7, m = 1 + trial % 5, q = 1 + trial % 6;
    auto ids = [](int k, const char *prefix) { return oracle::numbered_units(k, prefix); };
    std::vector<TwoModeNetwork::Entry> ea, eb;
    Eigen::MatrixXd da = Eigen::MatrixXd::Zero(n, m), db = Eigen::MatrixXd::Zero(m, q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        if (rng() % 3 == 0) {
          int w = 1 + static_cast<int>(rng() % 4);
          ea.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), w});
          da(i, j) = w;
        }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < q; ++j)
        if (rng() % 2 == 0) {
          int w = 1 + static_cast<int>(rng() % 4);
          eb.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), w});
          db(i, j) = w;
        }
    TwoModeNetwork a(ids(n, "r"), ids(m, "s"), ea), b(ids(m, "s"), ids(q, "t"), eb);
    auto c = multiply_two_mode(a, b);
    auto expected = oracle::dense_product(da, db);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < q; ++j)
        CHECK(c.at("r" + std::to_string(i), "t" + std::to_string(j)) == static_cast<std::int64_t>(expected(i, j)));
    CHECK(c.nonzeros() == static_cast<std::size_t>((expected.array() != 0).count()));
  }
}

TEST_CASE("product rejects mismatched inner units") {
  TwoModeNetwork a(UnitSet({"r"}), UnitSet({"x"}), std::vector<TwoModeNetwork::Entry>{});
  TwoModeNetwork b(UnitSet({"y"}), UnitSet({"t"}), std::vector<TwoModeNetwork::Entry>{});
  CHECK_THROWS_AS(multiply_two_mode(a, b), InvalidArgument);
}

TEST_CASE("projected networks equal direct pair counting") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto log = oracle::random_log(rng, 40, 5);
    auto comments = comment_network(log);
    auto reactions = reaction_network(log);
    CHECK(oracle::arcs_of(comments) == oracle::comment_pairs(log));
    CHECK(oracle::arcs_of(reactions) == oracle::reaction_pairs(log));
    CHECK(oracle::arcs_of(comment_network(log, true)) == oracle::flipped(oracle::comment_pairs(log)));
    CHECK_FALSE(comments.has_loops());
    CHECK(comments.actors() == log.actor_index());
  }
}

TEST_CASE("reaction kind filter") {
  const char *text = "record_id,kind,parent_id,author_id,timestamp,reaction_kind\n"
                     "p,post,,a,2015-01-01,\n"
                     "r1,reaction,p,b,2015-01-02,like\n"
                     "r2,reaction,p,c,2015-01-02,love\n"
                     "r3,reaction,p,b,2015-01-03,love\n";
  ParseOptions o;
  o.merge_reactions = false;
  auto log = parse_activity_log(text, o);
  CHECK(reaction_network(log).arc_count() == 2);
  CHECK(reaction_network(log).weight("b", "a") == 1.0); // binarized
  auto love = reaction_network(log, false, std::string("love"));
  CHECK(love.weight("c", "a") == 1.0);
  CHECK(love.weight("b", "a") == 1.0);
  auto like = reaction_network(log, false, std::string("like"));
  CHECK(like.arc_count() == 1);
}

TEST_CASE("strength and reduction") {
  UnitSet actors({"a", "b", "c", "d"});
  OneModeNetwork net(actors, {{{0, 1}, 5.0}, {{1, 0}, 1.0}, {{2, 3}, 3.0}, {{3, 2}, 3.0}});
  Eigen::VectorXd s = total_strength(net);
  CHECK(s(0) == 6.0);
  CHECK(s(1) == 6.0);
  CHECK(s(2) == 6.0);

  auto r = reduce_network(net, 2);
  CHECK_FALSE(r.unchanged);
  CHECK(r.network.actors().ids() == std::vector<UnitId>{"a", "b"}); // four-way tie, smallest ids win
  CHECK(r.network.weight("a", "b") == 5.0);

  auto all = reduce_network(net, 10);
  CHECK(all.unchanged);
  CHECK(all.network == net);
  CHECK_FALSE(reduce_network(net, 4).unchanged);
  CHECK_THROWS_AS(reduce_network(net, 0), InvalidArgument);
}

TEST_CASE("reduction keeps the strongest actors") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto net = oracle::random_network(rng, 15, 0.2, true);
    auto r = reduce_network(net, 6).network;
    Eigen::VectorXd s = total_strength(net);
    double weakest_kept = INFINITY, strongest_dropped = -INFINITY;
    for (std::size_t i = 0; i < net.size(); ++i) {
      if (r.actors().contains(net.actors()[i]))
        weakest_kept = std::min(weakest_kept, s(static_cast<Eigen::Index>(i)));
      else
        strongest_dropped = std::max(strongest_dropped, s(static_cast<Eigen::Index>(i)));
    }
    CHECK(r.size() == 6);
    CHECK(weakest_kept >= strongest_dropped);
    for (const auto &[key, w] : r.arcs())
      CHECK(net.weight(r.actors()[key.first], r.actors()[key.second]) == w);
  }
}

TEST_CASE("log normalization and loop removal") {
  OneModeNetwork net(UnitSet({"a", "b"}), {{{0, 1}, 3.0}, {{1, 1}, 2.0}});
  auto ln = log_normalize(net);
  CHECK(ln.weight("a", "b") == doctest::Approx(std::log(4.0)));
  CHECK(net.has_loops());
  auto clean = remove_loops(net);
  CHECK_FALSE(clean.has_loops());
  CHECK(clean.arc_count() == 1);
}
