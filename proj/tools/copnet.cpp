// copnet command-line front end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "copnet/blockmodel.hpp"
#include "copnet/ingest.hpp"
#include "copnet/pipeline.hpp"
#include "copnet/stability.hpp"
#include "copnet/synth.hpp"
#include "copnet/trajectory.hpp"
#include "copnet/transform.hpp"

namespace fs = std::filesystem;
using namespace copnet;

namespace {

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write '" + path + "'");
  out << text;
}

PeriodSpec load_periods(const std::string &arg) {
  if (arg.empty())
    return default_period_spec();
  if (fs::is_regular_file(arg))
    return period_spec_from_json(slurp(arg));
  return parse_period_triples(arg);
}

struct LogArgs {
  std::string in;
  std::string schema;
  std::string periods;
  bool merge_reactions = true;
  std::string on_dangling = "error";

  void attach(CLI::App *cmd, bool with_periods = true) {
    cmd->add_option("--in", in, "Activity log (comma or tab delimited)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--schema", schema, "JSON column mapping")->check(CLI::ExistingFile);
    if (with_periods)
      cmd->add_option("--periods", periods, "label:start:end[:months],... or a JSON period file");
    cmd->add_flag("--merge-reactions,!--no-merge-reactions", merge_reactions, "Collapse all reaction kinds");
    cmd->add_option("--on-dangling", on_dangling, "Unresolved parent handling")
        ->check(CLI::IsMember({"error", "drop"}));
  }

  ActivityLog load() const {
    ParseOptions options;
    if (!schema.empty())
      options.schema = schema_from_json(slurp(schema));
    options.merge_reactions = merge_reactions;
    options.on_dangling = on_dangling == "drop" ? DanglingPolicy::Drop : DanglingPolicy::Error;
    auto log = parse_activity_log(slurp(in), options);
    for (const auto &w : log.warnings())
      std::cerr << "warning: " << w << '\n';
    return log;
  }
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"copnet: core-periphery analysis of online community activity"};
  app.set_version_flag("--version", std::string(COPNET_VERSION));
  app.require_subcommand(1);

  // ingest
  LogArgs ingest_args;
  std::string ingest_out;
  auto *ingest = app.add_subcommand("ingest", "Parse an activity log and tabulate per-period activity");
  ingest_args.attach(ingest);
  ingest->add_option("--out", ingest_out, "stats.csv destination (default stdout)");

  // project
  LogArgs project_args;
  std::string relation = "comments", project_out, project_dir;
  bool transpose = false;
  auto *project = app.add_subcommand("project", "Project a log onto a directed actor network");
  project_args.attach(project);
  project->add_option("--relation", relation)->check(CLI::IsMember({"comments", "reactions"}));
  project->add_flag("--transpose", transpose, "Orient arcs owner -> actor instead of actor -> owner");
  project->add_option("--out", project_out, "Whole-log .net destination (default stdout)");
  project->add_option("--out-dir", project_dir, "Per-period .net files (requires --periods)");

  // reduce
  std::string reduce_in, reduce_out;
  std::size_t top_n = 80;
  auto *reduce = app.add_subcommand("reduce", "Keep the top-N actors by total strength");
  reduce->add_option("--in", reduce_in)->required()->check(CLI::ExistingFile);
  reduce->add_option("--top-n", top_n)->check(CLI::PositiveNumber);
  reduce->add_option("--out", reduce_out);

  // normalize
  std::string normalize_in, normalize_out;
  bool use_log = false;
  auto *normalize = app.add_subcommand("normalize", "Recode arc weights");
  normalize->add_option("--in", normalize_in)->required()->check(CLI::ExistingFile);
  normalize->add_flag("--log", use_log, "w -> ln(1 + w)")->required();
  normalize->add_option("--out", normalize_out);

  // blockmodel
  std::string bm_in, bm_out, bm_clu;
  int bm_k = 2;
  double bm_alpha = 0.5, bm_p = 1.0;
  auto *blockmodel = app.add_subcommand("blockmodel", "Fit an indirect structural-equivalence blockmodel");
  blockmodel->add_option("--in", bm_in)->required()->check(CLI::ExistingFile);
  blockmodel->add_option("--k", bm_k)->check(CLI::PositiveNumber);
  blockmodel->add_option("--alpha", bm_alpha);
  blockmodel->add_option("--p", bm_p);
  blockmodel->add_option("--out", bm_out, "model.json destination (default stdout)");
  blockmodel->add_option("--clu", bm_clu, "partition.clu destination");

  // stability
  std::vector<std::string> clus, nets;
  std::string aggregate = "consecutive-mean", stability_out;
  auto *stability = app.add_subcommand("stability", "Compare partitions across periods");
  stability->add_option("--clu", clus)->required()->check(CLI::ExistingFile);
  stability->add_option("--net", nets, "Networks supplying unit labels, one per --clu")->check(CLI::ExistingFile);
  stability->add_option("--aggregate", aggregate)->check(CLI::IsMember({"consecutive-mean", "all-pairs-mean", "min"}));
  stability->add_option("--out", stability_out);

  // trajectories
  std::vector<std::string> models, labels;
  std::string traj_out, flows_out, traj_svg;
  bool three_state = false;
  auto *trajectories = app.add_subcommand("trajectories", "Classify per-actor trajectories across period models");
  trajectories->add_option("--models", models)->required()->check(CLI::ExistingFile);
  trajectories->add_option("--labels", labels, "Period labels (default T1, T2, ...)");
  trajectories->add_flag("--three-state", three_state, "Keep semi-periphery as its own state");
  trajectories->add_option("--out", traj_out, "traj.csv destination (default stdout)");
  trajectories->add_option("--flows", flows_out, "flows.csv destination");
  trajectories->add_option("--svg", traj_svg, "Block-density heatmap destination");

  // synth
  std::string synth_config, synth_dir;
  std::optional<std::uint64_t> synth_seed;
  auto *synth = app.add_subcommand("synth", "Generate planted temporal core-periphery networks");
  synth->add_option("--config", synth_config)->required()->check(CLI::ExistingFile);
  synth->add_option("--out-dir", synth_dir)->required();
  synth->add_option("--seed", synth_seed);

  // pipeline
  std::string pipeline_config, pipeline_dir, pipeline_aggregate;
  std::optional<std::uint64_t> pipeline_seed;
  std::optional<std::size_t> pipeline_top_n;
  std::optional<double> pipeline_alpha, pipeline_p;
  bool pipeline_three_state = false, no_svg = false;
  auto *pipeline = app.add_subcommand("pipeline", "Run the full analysis from a JSON config");
  pipeline->add_option("--config", pipeline_config)->required()->check(CLI::ExistingFile);
  pipeline->add_option("--out-dir", pipeline_dir);
  pipeline->add_option("--seed", pipeline_seed);
  pipeline->add_option("--top-n", pipeline_top_n);
  pipeline->add_option("--alpha", pipeline_alpha);
  pipeline->add_option("--p", pipeline_p);
  pipeline->add_option("--aggregate", pipeline_aggregate)
      ->check(CLI::IsMember({"consecutive-mean", "all-pairs-mean", "min"}));
  pipeline->add_flag("--three-state", pipeline_three_state);
  pipeline->add_flag("--no-svg", no_svg);

  // report
  std::string report_in, report_svg;
  auto *report = app.add_subcommand("report", "Summarize a report.json");
  report->add_option("--in", report_in)->required()->check(CLI::ExistingFile);
  report->add_option("--svg", report_svg, "Re-render the block-density heatmap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) {
      auto log = ingest_args.load();
      auto spec = load_periods(ingest_args.periods);
      auto stats = activity_stats(slice_periods(log, spec), spec);
      std::cerr << log.size() << " records, " << log.actor_index().size() << " actors\n";
      emit(ingest_out, stats_to_csv(stats));
    } else if (project->parsed()) {
      auto log = project_args.load();
      auto build = [&](const ActivityLog &l) {
        return relation == "comments" ? comment_network(l, transpose) : reaction_network(l, transpose);
      };
      if (!project_dir.empty()) {
        if (project_args.periods.empty())
          throw InvalidArgument("--out-dir needs --periods");
        auto spec = load_periods(project_args.periods);
        auto slices = slice_periods(log, spec);
        fs::create_directories(project_dir);
        for (std::size_t p = 0; p < slices.size(); ++p)
          emit((fs::path(project_dir) / (relation + "_" + spec.periods()[p].label + ".net")).string(),
               write_pajek_net(build(slices[p])));
      } else {
        emit(project_out, write_pajek_net(build(log)));
      }
    } else if (reduce->parsed()) {
      auto r = reduce_network(read_pajek_net(slurp(reduce_in)), top_n);
      if (r.unchanged)
        std::cerr << "warning: top-n " << top_n << " exceeds the actor count; network left unchanged\n";
      emit(reduce_out, write_pajek_net(r.network));
    } else if (normalize->parsed()) {
      emit(normalize_out, write_pajek_net(log_normalize(read_pajek_net(slurp(normalize_in)))));
    } else if (blockmodel->parsed()) {
      auto bm = fit_blockmodel(read_pajek_net(slurp(bm_in)), bm_k, bm_alpha, bm_p);
      emit(bm_out, to_json(bm).dump(2) + "\n");
      if (!bm_clu.empty())
        emit(bm_clu, write_partition_clu(bm.partition));
    } else if (stability->parsed()) {
      if (!nets.empty() && nets.size() != clus.size())
        throw InvalidArgument("give one --net per --clu");
      std::vector<Partition> partitions;
      for (std::size_t i = 0; i < clus.size(); ++i)
        partitions.push_back(read_partition_clu(slurp(clus[i]),
                                                nets.empty() ? UnitSet{} : read_pajek_net(slurp(nets[i])).actors()));
      auto s = stability_series(partitions, aggregate_from_string(aggregate));
      nlohmann::json matrix = nlohmann::json::array();
      for (Eigen::Index i = 0; i < s.scores.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < s.scores.cols(); ++j)
          row.push_back(round_significant(s.scores(i, j)));
        matrix.push_back(row);
      }
      nlohmann::json out{{"aggregate", aggregate}, {"inputs", clus}, {"matrix", matrix},
                         {"series", round_significant(s.series)}};
      emit(stability_out, out.dump(2) + "\n");
    } else if (trajectories->parsed()) {
      std::vector<BlockModel> bms;
      std::set<ActorId> all;
      for (const auto &m : models) {
        bms.push_back(blockmodel_from_json(nlohmann::json::parse(slurp(m))));
        all.insert(bms.back().partition.units().begin(), bms.back().partition.units().end());
      }
      if (labels.empty())
        for (std::size_t i = 0; i < bms.size(); ++i)
          labels.push_back("T" + std::to_string(i + 1));
      if (labels.size() != bms.size())
        throw InvalidArgument("give one label per model");
      auto records = build_trajectories(bms, UnitSet(std::vector<ActorId>(all.begin(), all.end())), three_state);
      emit(traj_out, trajectories_to_csv(records, labels));
      if (!flows_out.empty())
        emit(flows_out, flows_to_csv(flow_counts(records), labels));
      if (!traj_svg.empty()) {
        std::vector<std::pair<std::string, const BlockModel *>> panels;
        for (std::size_t i = 0; i < bms.size(); ++i)
          panels.emplace_back(labels[i], &bms[i]);
        emit(traj_svg, density_heatmap_svg(panels));
      }
    } else if (synth->parsed()) {
      auto cfg = synth_config_from_json(nlohmann::json::parse(slurp(synth_config)));
      if (synth_seed)
        cfg.seed = *synth_seed;
      auto data = generate_temporal(cfg);
      fs::create_directories(synth_dir);
      std::vector<std::string> period_labels;
      for (std::size_t p = 0; p < data.networks.size(); ++p) {
        const auto label = "T" + std::to_string(p + 1);
        period_labels.push_back(label);
        emit((fs::path(synth_dir) / (label + ".net")).string(), write_pajek_net(data.networks[p]));
        emit((fs::path(synth_dir) / (label + ".clu")).string(), write_partition_clu(data.partitions[p]));
      }
      emit((fs::path(synth_dir) / "truth.csv").string(), trajectories_to_csv(data.truth, period_labels));
    } else if (pipeline->parsed()) {
      auto j = nlohmann::json::parse(slurp(pipeline_config));
      if (!pipeline_dir.empty())
        j["output_dir"] = pipeline_dir;
      if (pipeline_seed)
        j["seed"] = *pipeline_seed;
      if (pipeline_top_n)
        j["top_n"] = *pipeline_top_n;
      if (pipeline_alpha)
        j["alpha"] = *pipeline_alpha;
      if (pipeline_p)
        j["p"] = *pipeline_p;
      if (!pipeline_aggregate.empty())
        j["aggregate"] = pipeline_aggregate;
      if (pipeline_three_state)
        j["three_state"] = true;
      if (no_svg)
        j["svg"] = false;
      PipelineConfig cfg;
      try {
        cfg = pipeline_config_from_json(j);
      } catch (const std::exception &e) {
        throw StageError("config", e.what());
      }
      auto result = run_pipeline(cfg);
      auto files = emit_report(result, cfg.output_dir);
      std::cerr << "wrote " << files.size() << " files to " << cfg.output_dir.string() << '\n';
    } else if (report->parsed()) {
      auto j = nlohmann::json::parse(slurp(report_in));
      std::cout << summarize_report(j);
      if (!report_svg.empty()) {
        std::vector<BlockModel> bms;
        std::vector<std::string> titles;
        for (const auto &rel : j.at("relations"))
          for (const auto &p : rel.at("periods")) {
            bms.push_back(blockmodel_from_json(p.at("blockmodel")));
            titles.push_back(rel.at("relation").get<std::string>() + " " + p.at("label").get<std::string>());
          }
        std::vector<std::pair<std::string, const BlockModel *>> panels;
        for (std::size_t i = 0; i < bms.size(); ++i)
          panels.emplace_back(titles[i], &bms[i]);
        emit(report_svg, density_heatmap_svg(panels));
      }
    }
  } catch (const std::exception &e) {
    std::cerr << "copnet: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
