#pragma once

// Planted core-periphery generator, static and temporal with churn. Serves
// as ground truth for the blockmodel, stability and trajectory stages.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "copnet/ingest.hpp"
#include "copnet/netmodel.hpp"
#include "copnet/trajectory.hpp"

namespace copnet {

struct Churn {
  double incomer = 0.0;  // new actors per period, as a fraction of the current population
  double outgoer = 0.0;  // per-actor probability of leaving
  double switches = 0.0; // per-actor probability of flipping core <-> periphery
};

struct SynthConfig {
  int n_actors = 100;
  double core_fraction = 0.1;
  /// Arc probabilities core->core, core->periphery, periphery->core,
  /// periphery->periphery.
  std::array<double, 4> densities{0.8, 0.4, 0.4, 0.05};
  int n_periods = 4;
  Churn churn;
  double weight_mean = 3.0; // geometric on {1, 2, ...}
  std::uint64_t seed = 42;

  int core_size() const;
  /// Throws InvalidArgument on an invalid configuration.
  void validate() const;
};

SynthConfig synth_config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const SynthConfig &cfg);

/// Seeded draws built directly on mt19937_64 output, so sequences do not
/// depend on the standard library's distribution implementations.
class SynthRng {
public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}
  double uniform(); // [0, 1)
  bool bernoulli(double p) { return uniform() < p; }
  /// Geometric on {1, 2, ...} with the given mean (>= 1).
  int geometric(double mean);

private:
  std::mt19937_64 engine_;
};

struct PlantedNetwork {
  OneModeNetwork network;
  Partition truth; // 1 = core, 2 = periphery
};

PlantedNetwork generate_planted(const SynthConfig &cfg);

struct TemporalPlanted {
  std::vector<OneModeNetwork> networks;
  std::vector<Partition> partitions; // 1 = core, 2 = periphery
  /// Labels derived from the generator's own churn events.
  std::vector<TrajectoryRecord> truth;
};

/// Period 1 is the planted population. Each later period removes outgoers,
/// flips switchers, then adds incomers (core with probability 0.1) and
/// redraws all arcs. Outgoers never return.
TemporalPlanted generate_temporal(const SynthConfig &cfg);

/// Renders temporal networks as activity: every active actor posts once at
/// the start of its period, each arc u -> v of weight w becomes w comments
/// and one like by u on v's post.
ActivityLog synthesize_activity_log(const TemporalPlanted &data, const PeriodSpec &spec);

/// Actor ids "a0001", "a0002", ...
std::string synth_actor_id(int index);

} // namespace copnet
