#pragma once

// End-to-end orchestration: ingest -> project -> slice -> reduce/normalize ->
// blockmodel -> stability -> trajectories -> report.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "copnet/blockmodel.hpp"
#include "copnet/ingest.hpp"
#include "copnet/stability.hpp"
#include "copnet/synth.hpp"
#include "copnet/trajectory.hpp"

namespace copnet {

/// Raised by run_pipeline; `stage()` names the failing stage.
class StageError : public Error {
public:
  StageError(std::string stage, const std::string &what)
      : Error("stage '" + stage + "': " + what), stage_(std::move(stage)) {}
  const std::string &stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

enum class InputMode { Log, Synth };

struct PipelineConfig {
  InputMode mode = InputMode::Log;
  std::filesystem::path input;
  LogSchema schema;
  bool merge_reactions = true;
  DanglingPolicy on_dangling = DanglingPolicy::Error;
  PeriodSpec periods = default_period_spec();
  std::vector<std::string> relations{"comments", "reactions"};
  std::size_t top_n = 80;
  std::map<std::string, int> k{{"comments", 2}, {"reactions", 2}};
  double alpha = 0.5;
  double p = 1.0;
  Aggregate aggregate = Aggregate::ConsecutiveMean;
  bool transpose = false;
  bool three_state = false;
  bool normalize = true;
  bool svg = true;
  std::filesystem::path output_dir = "copnet-out";
  SynthConfig synth;

  int k_for(const std::string &relation) const;
  /// Throws InvalidArgument naming the offending key.
  void validate() const;
};

PipelineConfig pipeline_config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const PipelineConfig &cfg);

struct PeriodResult {
  std::string label;
  std::size_t actors = 0;         // before reduction
  OneModeNetwork network;         // reduced (and normalized) network
  bool reduction_unchanged = false;
  BlockModel model;
  std::optional<double> truth_agreement; // synth mode only
};

struct RelationReport {
  std::string relation;
  std::vector<PeriodResult> periods;
  std::optional<StabilitySeries> stability;
  std::string stability_skipped; // reason, when stability is absent
  std::vector<TrajectoryRecord> trajectories;
  FlowTable flows;
};

struct Report {
  PipelineConfig config;
  StatsTable stats;
  std::vector<RelationReport> relations;
  std::vector<std::string> warnings;
  std::string config_hash;
};

Report run_pipeline(const PipelineConfig &cfg);

/// Stable-key JSON with every real number rounded to 6 significant digits.
nlohmann::json report_to_json(const Report &report);

/// Writes report.json, stats.csv, flows.csv, schema.json, per-relation
/// trajectories_<relation>.csv, networks/<relation>_<period>.net/.clu and,
/// when enabled, heatmap.svg. Files written before a failure are removed.
/// Returns the written paths relative to `dir`.
std::vector<std::filesystem::path> emit_report(const Report &report, const std::filesystem::path &dir);

/// The file set emit_report produces for `report`, relative to the output dir.
std::vector<std::filesystem::path> report_file_set(const Report &report);

/// Bundled JSON schema for report.json (also documents the CSV columns).
const std::string &report_schema();

/// Block-density heatmaps, one panel per (title, model).
std::string density_heatmap_svg(const std::vector<std::pair<std::string, const BlockModel *>> &panels);

/// Human-readable summary of a report.json document.
std::string summarize_report(const nlohmann::json &report);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

} // namespace copnet
