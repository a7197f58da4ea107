// Acceptance suite: one PASS/FAIL line per criterion, each with its own time
// budget. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cohort.hpp"
#include "copnet/blockmodel.hpp"
#include "copnet/ingest.hpp"
#include "copnet/pipeline.hpp"
#include "copnet/stability.hpp"
#include "copnet/synth.hpp"
#include "copnet/trajectory.hpp"
#include "copnet/transform.hpp"
#include "oracles.hpp"

using namespace copnet;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char *name;
  double budget_s;
  std::function<Outcome()> run;
};

// -- 1 ----------------------------------------------------------------------

// A log whose per-period counts are exactly the reference ones: posts by one
// owner, one comment per commenting actor, one reaction per reacting actor.
// Actors are drawn as windows on a ring so that the distinct totals come out
// as in the reference too.
Outcome table_arithmetic() {
  const std::int64_t pubs[] = {12600, 6112, 5765, 9828};
  const std::int64_t commenters[] = {416, 322, 292, 463};
  const std::int64_t reactors[] = {689, 740, 769, 1076};
  const std::int64_t ring_c = 818, ring_r = 1539;
  const auto spec = default_period_spec();

  std::vector<ActivityRecord> records;
  std::int64_t off_c = 0, off_r = 0;
  for (std::size_t p = 0; p < 4; ++p) {
    const auto t = spec.periods()[p].start;
    const std::string tag = "T" + std::to_string(p + 1) + "-";
    const std::string anchor = tag + "p0";
    for (std::int64_t i = 0; i < pubs[p] - commenters[p]; ++i)
      records.push_back({tag + "p" + std::to_string(i), RecordKind::Post, std::nullopt, "owner", t, std::nullopt});
    for (std::int64_t i = 0; i < commenters[p]; ++i)
      records.push_back({tag + "c" + std::to_string(i), RecordKind::Comment, anchor,
                         "c" + std::to_string((off_c + i) % ring_c), t + std::chrono::seconds(1), std::nullopt});
    for (std::int64_t i = 0; i < reactors[p]; ++i)
      records.push_back({tag + "r" + std::to_string(i), RecordKind::Reaction, anchor,
                         "r" + std::to_string((off_r + i) % ring_r), t + std::chrono::seconds(1),
                         std::string(kMergedReaction)});
    off_c += commenters[p];
    off_r += reactors[p];
  }
  auto stats = activity_stats(slice_periods(ActivityLog(std::move(records)), spec), spec);

  const std::int64_t norm[] = {323, 556, 961, 491};
  const std::int64_t norm_c[] = {11, 29, 49, 23};
  const std::int64_t norm_r[] = {18, 67, 128, 54};
  std::ostringstream got;
  bool ok = true;
  for (std::size_t p = 0; p < 4; ++p) {
    const auto &row = stats.periods[p];
    ok = ok && row.counts.months == spec.periods()[p].months && row.counts.posts_and_comments == pubs[p] &&
         row.posts_and_comments_per_month == norm[p] && row.commenting_per_month == norm_c[p] &&
         row.reacting_per_month == norm_r[p];
    got << (p ? "/" : "") << row.posts_and_comments_per_month;
  }
  const auto &total = stats.total;
  ok = ok && total.counts.months == 76 && total.counts.posts_and_comments == 34305 &&
       total.counts.commenting_actors == 818 && total.counts.reacting_actors == 1539 &&
       total.posts_and_comments_per_month == 451 && total.commenting_per_month == 11 && total.reacting_per_month == 20;
  got << ", averages " << total.posts_and_comments_per_month << "/" << total.commenting_per_month << "/"
      << total.reacting_per_month;
  return {ok, "norm " + got.str()};
}

// -- 2 ----------------------------------------------------------------------

Outcome projection_oracle() {
  std::mt19937_64 rng(2024);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    auto log = oracle::random_log(rng, 50, 8);
    if (oracle::arcs_of(comment_network(log)) != oracle::comment_pairs(log))
      ++bad;
    if (oracle::arcs_of(reaction_network(log)) != oracle::reaction_pairs(log))
      ++bad;
  }
  return {bad == 0, std::to_string(400 - bad) + "/400 projections match"};
}

// -- 3 ----------------------------------------------------------------------

Outcome planted_recovery() {
  int good = 0;
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    auto planted = generate_planted(cfg);
    auto bm = fit_blockmodel(planted.network, 2);
    const double ari = modified_rand(bm.partition, planted.truth).value;
    worst = std::min(worst, ari);
    good += ari >= 0.9;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d/20 seeds with ARI >= 0.9 (worst %.3f)", good, worst);
  return {good >= 18, buf};
}

// -- 4 ----------------------------------------------------------------------

Outcome structure_taxonomy() {
  const std::vector<int> sizes{5, 4, 6};
  const std::vector<int> order{2, 0, 1};
  int right = 0;
  std::string misses;
  for (auto s : {Structure::CohesiveSubgroups, Structure::CorePeriphery, Structure::Centralized,
                 Structure::Hierarchical, Structure::Transitive}) {
    const auto pattern = ideal_pattern(s, order);
    std::vector<int> cluster;
    for (std::size_t c = 0; c < sizes.size(); ++c)
      cluster.insert(cluster.end(), static_cast<std::size_t>(sizes[c]), static_cast<int>(c));
    OneModeNetwork::ArcMap arcs;
    for (std::size_t i = 0; i < cluster.size(); ++i)
      for (std::size_t j = 0; j < cluster.size(); ++j)
        if (i != j && pattern(cluster[i], cluster[j]))
          arcs[{i, j}] = 1.0;
    auto units = oracle::numbered_units(static_cast<int>(cluster.size()));
    std::vector<int> ids;
    for (int c : cluster)
      ids.push_back(c + 1);
    auto bm = image_matrix(OneModeNetwork(units, arcs), Partition(units, ids));
    if (classify_structure(bm) == s)
      ++right;
    else
      misses += " " + std::string(to_string(s));
  }
  return {right == 5, std::to_string(right) + "/5 patterns" + (misses.empty() ? "" : ", missed:" + misses)};
}

// -- 5 ----------------------------------------------------------------------

Outcome stability_properties() {
  std::mt19937_64 rng(55);
  const auto units = oracle::numbered_units(100);
  bool identity = true, symmetric = true, relabel = true;
  double sum = 0;
  for (int i = 0; i < 100; ++i) {
    auto p = oracle::random_partition(rng, units, 4);
    auto q = oracle::random_partition(rng, units, 4);
    identity = identity && modified_rand(p, p).value == 1.0;
    const double pq = modified_rand(p, q).value;
    sum += pq;
    symmetric = symmetric && std::abs(pq - modified_rand(q, p).value) <= 1e-12;
    std::vector<int> perm{0, 3, 1, 4, 2}; // cluster c becomes perm[c]
    std::vector<int> relabeled;
    for (int c : p.assignment())
      relabeled.push_back(perm[static_cast<std::size_t>(c)]);
    relabel = relabel && std::abs(modified_rand(Partition(units, relabeled), q).value - pq) <= 1e-12;
  }
  const double mean = sum / 100;
  char buf[128];
  std::snprintf(buf, sizeof buf, "identity %s, mean random %.4f, symmetry %s, relabeling %s", identity ? "ok" : "FAIL",
                mean, symmetric ? "ok" : "FAIL", relabel ? "ok" : "FAIL");
  return {identity && symmetric && relabel && std::abs(mean) <= 0.05, buf};
}

// -- 6 ----------------------------------------------------------------------

Outcome trajectory_taxonomy() {
  std::set<cohort::Cell> realized;
  int wrong = 0, unchecked_borderline = 0;
  auto note = [&](const TrajectoryClass &cls) {
    for (auto p : cls.perspectives.items()) {
      if (cls.type == TrajectoryType::Borderline && !cohort::checked_cells().count({cls.type, p}))
        ++unchecked_borderline;
    }
  };
  for (const auto &m : cohort::members()) {
    auto cls = classify_trajectory(m.states);
    Perspectives expected;
    for (auto p : m.perspectives)
      expected.insert(p);
    if (cls.type != m.type || !(cls.perspectives == expected))
      ++wrong;
    for (auto p : cls.perspectives.items()) {
      if (!cohort::checked_cells().count({cls.type, p}))
        ++wrong;
      realized.insert({cls.type, p});
    }
    note(cls);
  }
  // generator trajectories are synthetic too
  SynthConfig cfg;
  cfg.churn = {0.1, 0.1, 0.05};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cfg.seed = seed;
    for (const auto &r : generate_temporal(cfg).truth)
      note(classify_trajectory(r.states));
  }
  const bool covered = realized == cohort::checked_cells();
  return {wrong == 0 && covered && unchecked_borderline == 0,
          std::to_string(realized.size()) + "/" + std::to_string(cohort::checked_cells().size()) + " cells realized, " +
              std::to_string(wrong) + " misclassified, " + std::to_string(unchecked_borderline) +
              " unchecked borderline"};
}

// -- 7 ----------------------------------------------------------------------

Outcome temporal_oracle() {
  int seeds_ok = 0;
  std::size_t actors = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.churn = {0.1, 0.1, 0.05};
    auto data = generate_temporal(cfg);
    std::vector<std::map<ActorId, State>> periods;
    std::vector<ActorId> everyone;
    for (const auto &p : data.partitions) {
      std::map<ActorId, State> states;
      for (std::size_t i = 0; i < p.size(); ++i) {
        states[p.units()[i]] = p.assignment()[i] == 1 ? State::Core : State::Periphery;
        everyone.push_back(p.units()[i]);
      }
      periods.push_back(std::move(states));
    }
    std::sort(everyone.begin(), everyone.end());
    everyone.erase(std::unique(everyone.begin(), everyone.end()), everyone.end());
    auto classified = build_trajectories(periods, UnitSet(everyone));
    std::map<ActorId, const TrajectoryRecord *> by_actor;
    for (const auto &r : classified)
      by_actor[r.actor] = &r;
    bool ok = classified.size() == data.truth.size();
    for (const auto &t : data.truth) {
      auto it = by_actor.find(t.actor);
      ok = ok && it != by_actor.end() && it->second->states == t.states && it->second->type == t.type &&
           it->second->perspectives == t.perspectives;
    }
    seeds_ok += ok;
    actors += data.truth.size();
  }
  return {seeds_ok == 20, std::to_string(seeds_ok) + "/20 seeds agree (" + std::to_string(actors) + " trajectories)"};
}

// -- 8 ----------------------------------------------------------------------

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism_replay() {
  const fs::path root = fs::current_path() / "acceptance_replay";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream cfg(root / "config.json");
    cfg << R"({"mode": "synth", "seed": 42, "synth": {"churn": {"incomer": 0.1, "outgoer": 0.1, "switch": 0.05}}})";
  }
  std::string reports[2];
  for (int run = 0; run < 2; ++run) {
    const auto out = root / ("run" + std::to_string(run));
    const std::string cmd = std::string("\"") + COPNET_CLI + "\" pipeline --config \"" + (root / "config.json").string() +
                            "\" --out-dir \"" + out.string() + "\" --seed 42";
    if (std::system(cmd.c_str()) != 0)
      return {false, "pipeline run " + std::to_string(run + 1) + " failed"};
    reports[run] = slurp(out / "report.json");
  }
  const bool same = !reports[0].empty() && reports[0] == reports[1];
  return {same, same ? "report.json identical (" + std::to_string(reports[0].size()) + " bytes)" : "reports differ"};
}

// -- 9 ----------------------------------------------------------------------

Outcome round_trip() {
  std::mt19937_64 rng(99);
  int nets = 0, parts = 0;
  for (int i = 0; i < 50; ++i) {
    auto net = oracle::random_network(rng, 1 + i % 25, 0.25, i % 2 == 1);
    const auto text = write_pajek_net(net);
    auto back = read_pajek_net(text);
    nets += back == net && write_pajek_net(back) == text;
    auto part = oracle::random_partition(rng, net.actors(), 1 + i % 6);
    const auto clu = write_partition_clu(part);
    auto pback = read_partition_clu(clu, net.actors());
    parts += pback == part && write_partition_clu(pback) == clu;
  }
  return {nets == 50 && parts == 50, std::to_string(nets) + "/50 networks, " + std::to_string(parts) + "/50 partitions"};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "activity table arithmetic", 1.0, table_arithmetic},
      {2, "projection vs pair counting", 5.0, projection_oracle},
      {3, "planted core-periphery recovery", 10.0, planted_recovery},
      {4, "ideal structure classification", 1.0, structure_taxonomy},
      {5, "stability index properties", 5.0, stability_properties},
      {6, "trajectory taxonomy cells", 1.0, trajectory_taxonomy},
      {7, "generator truth vs classifier", 5.0, temporal_oracle},
      {8, "pipeline determinism replay", 30.0, determinism_replay},
      {9, "pajek round trip", 2.0, round_trip},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("%s [%d] %-34s %7.3fs / %4.0fs  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                o.detail.c_str(), in_time ? "" : "  (over budget)");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
