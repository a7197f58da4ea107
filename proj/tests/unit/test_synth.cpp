#include <doctest.h>

#include <set>

#include "copnet/synth.hpp"
#include "copnet/transform.hpp"

using namespace copnet;

TEST_CASE("rng draws") {
  SynthRng a(5), b(5);
  double sum = 0;
  for (int i = 0; i < 20000; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));
  SynthRng g(9);
  double total = 0;
  for (int i = 0; i < 20000; ++i) {
    const int k = g.geometric(3.0);
    REQUIRE(k >= 1);
    total += k;
  }
  CHECK(total / 20000 == doctest::Approx(3.0).epsilon(0.05));
  CHECK(g.geometric(1.0) == 1);
}

TEST_CASE("planted network") {
  SynthConfig cfg;
  auto a = generate_planted(cfg);
  auto b = generate_planted(cfg);
  CHECK(a.network == b.network);
  CHECK(a.truth.cluster_sizes() == std::vector<std::size_t>{10, 90});
  cfg.seed = 43;
  CHECK_FALSE(generate_planted(cfg).network == a.network);

  // block densities close to the configured ones
  Eigen::MatrixXd ind = a.network.indicator();
  const double cc = ind.topLeftCorner(10, 10).sum() / 90.0;
  const double cp = ind.topRightCorner(10, 90).sum() / 900.0;
  const double pc = ind.bottomLeftCorner(90, 10).sum() / 900.0;
  const double pp = ind.bottomRightCorner(90, 90).sum() / (90.0 * 89.0);
  CHECK(cc == doctest::Approx(0.8).epsilon(0.15));
  CHECK(cp == doctest::Approx(0.4).epsilon(0.1));
  CHECK(pc == doctest::Approx(0.4).epsilon(0.1));
  CHECK(pp == doctest::Approx(0.05).epsilon(0.15));
  CHECK_FALSE(a.network.has_loops());
}

TEST_CASE("config validation and json") {
  SynthConfig cfg;
  cfg.churn = {0.1, 0.2, 0.05};
  cfg.seed = 7;
  auto back = synth_config_from_json(to_json(cfg));
  CHECK(to_json(back) == to_json(cfg));
  CHECK(back.churn.switches == 0.05);

  auto bad = [](auto mutate) {
    SynthConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
  };
  bad([](SynthConfig &c) { c.n_actors = 2; });
  bad([](SynthConfig &c) { c.core_fraction = 0.0; });
  bad([](SynthConfig &c) { c.core_fraction = 1.0; });
  bad([](SynthConfig &c) { c.densities[1] = 1.5; });
  bad([](SynthConfig &c) { c.churn.outgoer = -0.1; });
  bad([](SynthConfig &c) { c.weight_mean = 0.5; });
  bad([](SynthConfig &c) { c.n_periods = 0; });
  CHECK_THROWS_AS(synth_config_from_json({{"densities", {0.1, 0.2}}}), InvalidArgument);
}

TEST_CASE("temporal churn") {
  SynthConfig cfg;
  cfg.churn = {0.1, 0.1, 0.05};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    cfg.seed = seed;
    auto data = generate_temporal(cfg);
    REQUIRE(data.networks.size() == 4);
    REQUIRE(data.partitions.size() == 4);
    CHECK(data.partitions[0].size() == 100);
    std::set<ActorId> seen, gone;
    for (std::size_t t = 0; t < 4; ++t) {
      CHECK(data.partitions[t].units() == data.networks[t].actors());
      std::set<ActorId> now(data.partitions[t].units().begin(), data.partitions[t].units().end());
      for (const auto &id : gone)
        CHECK(now.count(id) == 0); // outgoers never return
      for (const auto &id : seen)
        if (!now.count(id))
          gone.insert(id);
      seen.insert(now.begin(), now.end());
    }
    CHECK(data.truth.size() == seen.size());
    for (const auto &r : data.truth) {
      CAPTURE(r.actor);
      REQUIRE(r.states.size() == 4);
      auto cls = classify_trajectory(r.states);
      CHECK(cls.type == r.type);
      CHECK(cls.perspectives == r.perspectives);
      for (std::size_t t = 0; t < 4; ++t) {
        const auto &units = data.partitions[t].units();
        if (r.states[t] == State::NA)
          CHECK_FALSE(units.contains(r.actor));
        else
          CHECK(data.partitions[t].cluster_of(r.actor) == (r.states[t] == State::Core ? 1 : 2));
      }
    }
  }
}

TEST_CASE("churn that empties the core is reported") {
  SynthConfig cfg;
  cfg.n_actors = 20;
  cfg.core_fraction = 0.1;
  cfg.churn.outgoer = 1.0;
  cfg.n_periods = 2;
  CHECK_THROWS_AS(generate_temporal(cfg), InvalidArgument);
}

TEST_CASE("activity log rendering projects back to the planted networks") {
  SynthConfig cfg;
  cfg.n_actors = 30;
  cfg.churn = {0.1, 0.1, 0.1};
  auto data = generate_temporal(cfg);
  auto spec = default_period_spec();
  auto slices = slice_periods(synthesize_activity_log(data, spec), spec);
  for (std::size_t t = 0; t < 4; ++t) {
    auto comments = comment_network(slices[t]);
    auto reactions = reaction_network(slices[t]);
    const auto &net = data.networks[t];
    for (const auto &[key, w] : net.arcs()) {
      CHECK(comments.weight(net.actors()[key.first], net.actors()[key.second]) == w);
      CHECK(reactions.weight(net.actors()[key.first], net.actors()[key.second]) == 1.0);
    }
    CHECK(comments.arc_count() == net.arc_count());
    CHECK(reactions.arc_count() == net.arc_count());
  }
  CHECK(synth_actor_id(7) == "a0007");
}
