#include "copnet/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "copnet/transform.hpp"

namespace copnet {

namespace {

template <typename F>
auto stage(const char *name, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError &) {
    throw;
  } catch (const std::exception &e) {
    throw StageError(name, e.what());
  }
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json period_to_json(const Period &p) {
  return {{"label", p.label}, {"start", format_timestamp(p.start)}, {"end", format_timestamp(p.end)}, {"months", p.months}};
}

} // namespace

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------

int PipelineConfig::k_for(const std::string &relation) const {
  auto it = k.find(relation);
  return it == k.end() ? 2 : it->second;
}

void PipelineConfig::validate() const {
  if (relations.empty())
    throw InvalidArgument("config: 'relations' must name at least one of comments, reactions");
  std::set<std::string> seen;
  for (const auto &r : relations) {
    if (r != "comments" && r != "reactions")
      throw InvalidArgument("config: unknown relation '" + r + "'");
    if (!seen.insert(r).second)
      throw InvalidArgument("config: relation '" + r + "' listed twice");
  }
  for (const auto &[r, kk] : k)
    if (kk < 1)
      throw InvalidArgument("config: k for '" + r + "' must be at least 1");
  if (top_n < 1)
    throw InvalidArgument("config: 'top_n' must be at least 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidArgument("config: 'alpha' must lie in (0, 1)");
  if (p < 0.0)
    throw InvalidArgument("config: 'p' must be nonnegative");
  if (mode == InputMode::Log && input.empty())
    throw InvalidArgument("config: 'input' is required in log mode");
  if (output_dir.empty())
    throw InvalidArgument("config: 'output_dir' must not be empty");
  if (mode == InputMode::Log && std::filesystem::weakly_canonical(input) == std::filesystem::weakly_canonical(output_dir))
    throw InvalidArgument("config: 'input' and 'output_dir' must differ");
  if (mode == InputMode::Synth) {
    synth.validate();
  }
}

PipelineConfig pipeline_config_from_json(const nlohmann::json &j) {
  PipelineConfig cfg;
  if (j.contains("mode")) {
    auto m = j.at("mode").get<std::string>();
    if (m == "log")
      cfg.mode = InputMode::Log;
    else if (m == "synth")
      cfg.mode = InputMode::Synth;
    else
      throw InvalidArgument("config: 'mode' must be 'log' or 'synth'");
  }
  if (j.contains("input"))
    cfg.input = j.at("input").get<std::string>();
  if (j.contains("schema"))
    cfg.schema = schema_from_json(j.at("schema").dump());
  cfg.merge_reactions = j.value("merge_reactions", cfg.merge_reactions);
  if (j.contains("on_dangling")) {
    auto d = j.at("on_dangling").get<std::string>();
    if (d != "error" && d != "drop")
      throw InvalidArgument("config: 'on_dangling' must be 'error' or 'drop'");
    cfg.on_dangling = d == "drop" ? DanglingPolicy::Drop : DanglingPolicy::Error;
  }
  if (j.contains("periods")) {
    const auto &p = j.at("periods");
    cfg.periods = p.is_string() ? parse_period_triples(p.get<std::string>()) : period_spec_from_json(p.dump());
  }
  if (j.contains("relations"))
    cfg.relations = j.at("relations").get<std::vector<std::string>>();
  if (j.contains("top_n")) {
    auto n = j.at("top_n").get<long long>();
    if (n < 1)
      throw InvalidArgument("config: 'top_n' must be at least 1");
    cfg.top_n = static_cast<std::size_t>(n);
  }
  if (j.contains("k")) {
    const auto &k = j.at("k");
    if (k.is_number_integer()) {
      for (auto &[r, v] : cfg.k)
        v = k.get<int>();
    } else {
      for (const auto &[r, v] : k.items())
        cfg.k[r] = v.get<int>();
    }
  }
  cfg.alpha = j.value("alpha", cfg.alpha);
  cfg.p = j.value("p", cfg.p);
  if (j.contains("aggregate"))
    cfg.aggregate = aggregate_from_string(j.at("aggregate").get<std::string>());
  cfg.transpose = j.value("transpose", cfg.transpose);
  cfg.three_state = j.value("three_state", cfg.three_state);
  cfg.normalize = j.value("log_normalize", cfg.normalize);
  cfg.svg = j.value("svg", cfg.svg);
  if (j.contains("output_dir"))
    cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("synth"))
    cfg.synth = synth_config_from_json(j.at("synth"));
  if (j.contains("seed"))
    cfg.synth.seed = j.at("seed").get<std::uint64_t>();
  cfg.synth.n_periods = static_cast<int>(cfg.periods.size());
  return cfg;
}

nlohmann::json to_json(const PipelineConfig &cfg) {
  nlohmann::json periods = nlohmann::json::array();
  for (const auto &p : cfg.periods.periods())
    periods.push_back(period_to_json(p));
  nlohmann::json j{{"mode", cfg.mode == InputMode::Log ? "log" : "synth"},
                   {"merge_reactions", cfg.merge_reactions},
                   {"on_dangling", cfg.on_dangling == DanglingPolicy::Drop ? "drop" : "error"},
                   {"periods", std::move(periods)},
                   {"relations", cfg.relations},
                   {"top_n", cfg.top_n},
                   {"k", cfg.k},
                   {"alpha", cfg.alpha},
                   {"p", cfg.p},
                   {"aggregate", std::string(to_string(cfg.aggregate))},
                   {"transpose", cfg.transpose},
                   {"three_state", cfg.three_state},
                   {"log_normalize", cfg.normalize},
                   {"svg", cfg.svg},
                   {"output_dir", cfg.output_dir.generic_string()}};
  if (cfg.mode == InputMode::Log) {
    j["input"] = cfg.input.generic_string();
    j["schema"] = {{"record_id", cfg.schema.record_id}, {"kind", cfg.schema.kind},
                   {"parent_id", cfg.schema.parent_id}, {"author_id", cfg.schema.author_id},
                   {"timestamp", cfg.schema.timestamp}, {"reaction_kind", cfg.schema.reaction_kind}};
  } else {
    j["synth"] = to_json(cfg.synth);
  }
  return j;
}

// ---------------------------------------------------------------------------

Report run_pipeline(const PipelineConfig &cfg) {
  stage("config", [&] {
    cfg.validate();
    return 0;
  });

  Report report;
  report.config = cfg;
  // The output location is not part of the analysis.
  auto hashed = to_json(cfg);
  hashed.erase("output_dir");
  report.config_hash = fnv1a_hex(hashed.dump());

  std::optional<TemporalPlanted> planted;
  auto slices = stage("ingest", [&] {
    ActivityLog log;
    if (cfg.mode == InputMode::Synth) {
      SynthConfig sc = cfg.synth;
      sc.n_periods = static_cast<int>(cfg.periods.size());
      planted = generate_temporal(sc);
      log = synthesize_activity_log(*planted, cfg.periods);
    } else {
      ParseOptions options{cfg.schema, cfg.on_dangling, cfg.merge_reactions};
      log = parse_activity_log(read_file(cfg.input), options);
    }
    report.warnings = log.warnings();
    return slice_periods(log, cfg.periods);
  });

  report.stats = stage("stats", [&] { return activity_stats(slices, cfg.periods); });

  for (const auto &relation : cfg.relations) {
    RelationReport rel;
    rel.relation = relation;
    for (std::size_t p = 0; p < slices.size(); ++p) {
      PeriodResult pr;
      pr.label = cfg.periods.periods()[p].label;
      auto projected = stage("project", [&] {
        return relation == "comments" ? comment_network(slices[p], cfg.transpose)
                                      : reaction_network(slices[p], cfg.transpose);
      });
      pr.actors = projected.size();
      auto reduced = stage("reduce", [&] { return reduce_network(projected, cfg.top_n); });
      pr.reduction_unchanged = reduced.unchanged;
      pr.network = cfg.normalize ? stage("normalize", [&] { return log_normalize(reduced.network); })
                                 : std::move(reduced.network);
      pr.model = stage("blockmodel", [&] {
        try {
          return fit_blockmodel(pr.network, cfg.k_for(relation), cfg.alpha, cfg.p);
        } catch (const std::exception &e) {
          throw Error(relation + " " + pr.label + ": " + e.what());
        }
      });
      if (planted) {
        // Truth agreement on the shared units of fitted and planted partitions.
        const auto &truth = planted->partitions[p];
        std::vector<UnitId> ids;
        std::vector<int> labels;
        for (std::size_t i = 0; i < pr.model.partition.size(); ++i) {
          ids.push_back(pr.model.partition.units()[i]);
          labels.push_back(pr.model.positions[static_cast<std::size_t>(pr.model.partition.assignment()[i] - 1)] ==
                                   Position::Core
                               ? 1
                               : 2);
        }
        Partition by_position(UnitSet(std::move(ids)), std::move(labels));
        pr.truth_agreement = stage("truth", [&] { return modified_rand(by_position, truth).value; });
      }
      rel.periods.push_back(std::move(pr));
    }

    std::vector<Partition> partitions;
    for (const auto &pr : rel.periods)
      partitions.push_back(pr.model.partition);
    if (partitions.size() < 2) {
      rel.stability_skipped = "fewer than two periods";
    } else {
      try {
        rel.stability = stability_series(partitions, cfg.aggregate);
      } catch (const InvalidArgument &e) {
        rel.stability_skipped = e.what();
      }
    }

    stage("trajectories", [&] {
      std::set<ActorId> all;
      std::vector<BlockModel> models;
      for (const auto &pr : rel.periods) {
        all.insert(pr.network.actors().begin(), pr.network.actors().end());
        models.push_back(pr.model);
      }
      UnitSet universe(std::vector<ActorId>(all.begin(), all.end()));
      rel.trajectories = build_trajectories(models, universe, cfg.three_state);
      if (!rel.trajectories.empty())
        rel.flows = flow_counts(rel.trajectories);
      return 0;
    });
    report.relations.push_back(std::move(rel));
  }
  return report;
}

} // namespace copnet
