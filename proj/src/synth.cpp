#include "copnet/synth.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace copnet {

namespace {

struct Member {
  ActorId id;
  bool core = false;
};

struct History {
  std::vector<State> states;
  int entered = 0;
  bool left = false;
  int switches = 0;
  bool first_core = false;
};

OneModeNetwork draw_arcs(const std::vector<Member> &population, const SynthConfig &cfg, SynthRng &rng) {
  std::vector<ActorId> ids;
  for (const auto &m : population)
    ids.push_back(m.id);
  OneModeNetwork::ArcMap arcs;
  for (std::size_t i = 0; i < population.size(); ++i) {
    for (std::size_t j = 0; j < population.size(); ++j) {
      if (i == j)
        continue;
      const std::size_t block = (population[i].core ? 0 : 2) + (population[j].core ? 0 : 1);
      if (rng.bernoulli(cfg.densities[block]))
        arcs[{i, j}] = rng.geometric(cfg.weight_mean);
    }
  }
  return OneModeNetwork(UnitSet(std::move(ids)), std::move(arcs));
}

Partition truth_partition(const std::vector<Member> &population) {
  std::vector<ActorId> ids;
  std::vector<int> clusters;
  for (const auto &m : population) {
    ids.push_back(m.id);
    clusters.push_back(m.core ? 1 : 2);
  }
  return Partition(UnitSet(std::move(ids)), std::move(clusters));
}

std::vector<Member> initial_population(const SynthConfig &cfg) {
  std::vector<Member> population;
  const int core = cfg.core_size();
  for (int i = 0; i < cfg.n_actors; ++i)
    population.push_back({synth_actor_id(i + 1), i < core});
  return population;
}

} // namespace

std::string synth_actor_id(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "a%04d", index);
  return buf;
}

int SynthConfig::core_size() const { return static_cast<int>(std::lround(core_fraction * n_actors)); }

void SynthConfig::validate() const {
  if (n_actors < 4)
    throw InvalidArgument("synth: n_actors must be at least 4");
  if (!(core_fraction >= 0.0 && core_fraction <= 1.0))
    throw InvalidArgument("synth: core_fraction must lie in [0, 1]");
  if (core_size() < 2)
    throw InvalidArgument("synth: core must hold at least 2 actors");
  if (core_size() >= n_actors)
    throw InvalidArgument("synth: periphery must not be empty");
  for (double p : densities)
    if (!(p >= 0.0 && p <= 1.0))
      throw InvalidArgument("synth: densities must lie in [0, 1]");
  for (double r : {churn.incomer, churn.outgoer, churn.switches})
    if (!(r >= 0.0 && r <= 1.0))
      throw InvalidArgument("synth: churn rates must lie in [0, 1]");
  if (n_periods < 1)
    throw InvalidArgument("synth: n_periods must be at least 1");
  if (!(weight_mean >= 1.0))
    throw InvalidArgument("synth: weight_mean must be at least 1");
}

SynthConfig synth_config_from_json(const nlohmann::json &j) {
  SynthConfig cfg;
  cfg.n_actors = j.value("n_actors", cfg.n_actors);
  cfg.core_fraction = j.value("core_fraction", cfg.core_fraction);
  if (j.contains("densities")) {
    auto d = j.at("densities").get<std::vector<double>>();
    if (d.size() != 4)
      throw InvalidArgument("synth: densities needs 4 entries (cc, cp, pc, pp)");
    std::copy(d.begin(), d.end(), cfg.densities.begin());
  }
  cfg.n_periods = j.value("n_periods", cfg.n_periods);
  if (j.contains("churn")) {
    const auto &c = j.at("churn");
    cfg.churn.incomer = c.value("incomer", 0.0);
    cfg.churn.outgoer = c.value("outgoer", 0.0);
    cfg.churn.switches = c.value("switch", 0.0);
  }
  cfg.weight_mean = j.value("weight_mean", cfg.weight_mean);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

nlohmann::json to_json(const SynthConfig &cfg) {
  return {{"n_actors", cfg.n_actors},
          {"core_fraction", cfg.core_fraction},
          {"densities", cfg.densities},
          {"n_periods", cfg.n_periods},
          {"churn", {{"incomer", cfg.churn.incomer}, {"outgoer", cfg.churn.outgoer}, {"switch", cfg.churn.switches}}},
          {"weight_mean", cfg.weight_mean},
          {"seed", cfg.seed}};
}

double SynthRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int SynthRng::geometric(double mean) {
  const double q = 1.0 / mean;
  const double u = uniform();
  if (q >= 1.0)
    return 1;
  return 1 + static_cast<int>(std::floor(std::log1p(-u) / std::log1p(-q)));
}

PlantedNetwork generate_planted(const SynthConfig &cfg) {
  cfg.validate();
  SynthRng rng(cfg.seed);
  auto population = initial_population(cfg);
  auto net = draw_arcs(population, cfg, rng);
  return {std::move(net), truth_partition(population)};
}

TemporalPlanted generate_temporal(const SynthConfig &cfg) {
  cfg.validate();
  SynthRng rng(cfg.seed);
  TemporalPlanted out;
  auto population = initial_population(cfg);
  std::vector<ActorId> order;
  std::map<ActorId, History> history;
  int next_id = cfg.n_actors + 1;
  for (const auto &m : population) {
    order.push_back(m.id);
    history[m.id] = {{}, 0, false, 0, m.core};
  }

  for (int t = 0; t < cfg.n_periods; ++t) {
    if (t > 0) {
      const auto before = population.size();
      std::vector<Member> stay;
      for (auto &m : population) {
        if (rng.bernoulli(cfg.churn.outgoer))
          history[m.id].left = true;
        else
          stay.push_back(m);
      }
      for (auto &m : stay) {
        if (rng.bernoulli(cfg.churn.switches)) {
          m.core = !m.core;
          ++history[m.id].switches;
        }
      }
      const auto incomers = std::lround(cfg.churn.incomer * static_cast<double>(before));
      for (long i = 0; i < incomers; ++i) {
        Member m{synth_actor_id(next_id++), rng.bernoulli(0.1)};
        order.push_back(m.id);
        history[m.id] = {std::vector<State>(static_cast<std::size_t>(t), State::NA), t, false, 0, m.core};
        stay.push_back(m);
      }
      population = std::move(stay);
      const auto core = std::count_if(population.begin(), population.end(), [](const Member &m) { return m.core; });
      if (core == 0)
        throw InvalidArgument("synth: churn emptied the core in period " + std::to_string(t + 1));
      if (core == static_cast<long>(population.size()))
        throw InvalidArgument("synth: churn emptied the periphery in period " + std::to_string(t + 1));
    }
    std::map<ActorId, bool> present;
    for (const auto &m : population)
      present[m.id] = m.core;
    for (auto &[id, h] : history) {
      if (static_cast<int>(h.states.size()) > t)
        continue;
      auto it = present.find(id);
      h.states.push_back(it == present.end() ? State::NA : it->second ? State::Core : State::Periphery);
    }
    out.networks.push_back(draw_arcs(population, cfg, rng));
    out.partitions.push_back(truth_partition(population));
  }

  for (const auto &id : order) {
    const auto &h = history.at(id);
    TrajectoryRecord r;
    r.actor = id;
    r.states = h.states;
    if (h.entered > 0)
      r.type = TrajectoryType::Entries;
    else if (h.left && h.switches > 0)
      r.type = TrajectoryType::Alienations;
    else if (h.switches <= 1)
      r.type = h.first_core ? TrajectoryType::Internal : TrajectoryType::Peripheral;
    else
      r.type = TrajectoryType::Mixed;
    r.perspectives.insert(h.switches == 0 ? Perspective::Foothold : Perspective::Switch);
    if (h.left)
      r.perspectives.insert(Perspective::Alienation);
    out.truth.push_back(std::move(r));
  }
  return out;
}

ActivityLog synthesize_activity_log(const TemporalPlanted &data, const PeriodSpec &spec) {
  if (spec.size() != data.networks.size())
    throw InvalidArgument("synth: " + std::to_string(data.networks.size()) + " periods generated, " +
                          std::to_string(spec.size()) + " configured");
  std::vector<ActivityRecord> records;
  for (std::size_t p = 0; p < data.networks.size(); ++p) {
    const auto &net = data.networks[p];
    const Timestamp start = spec.periods()[p].start;
    const std::string prefix = "t" + std::to_string(p + 1) + "-";
    for (const auto &actor : net.actors())
      records.push_back({prefix + "post-" + actor, RecordKind::Post, std::nullopt, actor, start, std::nullopt});
    long seq = 0;
    for (const auto &[key, w] : net.arcs()) {
      const auto &source = net.actors()[key.first];
      const auto &target = net.actors()[key.second];
      const std::string post = prefix + "post-" + target;
      for (int c = 0; c < static_cast<int>(w); ++c, ++seq)
        records.push_back({prefix + "c" + std::to_string(seq), RecordKind::Comment, post, source,
                           start + std::chrono::seconds{60 + seq}, std::nullopt});
      records.push_back({prefix + "r" + std::to_string(seq), RecordKind::Reaction, post, source,
                         start + std::chrono::seconds{60 + seq}, std::string(kMergedReaction)});
    }
    if (start + std::chrono::seconds{60 + seq} > spec.periods()[p].end)
      throw InvalidArgument("synth: period " + spec.periods()[p].label + " is too short for the generated activity");
  }
  return ActivityLog(std::move(records));
}

} // namespace copnet
