#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "copnet/pipeline.hpp"
#include "report_schema.hpp"

namespace copnet {

namespace {

nlohmann::json stats_row_json(const StatsRow &r) {
  return {{"period", r.counts.label},
          {"months", r.counts.months},
          {"posts_and_comments", r.counts.posts_and_comments},
          {"posts_and_comments_per_month", r.posts_and_comments_per_month},
          {"commenting_actors", r.counts.commenting_actors},
          {"commenting_actors_per_month", r.commenting_per_month},
          {"reacting_actors", r.counts.reacting_actors},
          {"reacting_actors_per_month", r.reacting_per_month}};
}

std::vector<std::string> period_labels(const Report &report) {
  std::vector<std::string> out;
  for (const auto &p : report.config.periods.periods())
    out.push_back(p.label);
  return out;
}

nlohmann::json trajectories_json(const RelationReport &rel, const std::vector<std::string> &labels) {
  using nlohmann::json;
  json type_counts = json::object();
  std::map<std::pair<std::string, std::string>, int> cells;
  json records = json::array();
  for (const auto &r : rel.trajectories) {
    const std::string type(to_string(r.type));
    type_counts[type] = type_counts.value(type, 0) + 1;
    json states = json::array(), perspectives = json::array();
    for (auto s : r.states)
      states.push_back(std::string(to_string(s)));
    for (auto p : r.perspectives.items()) {
      perspectives.push_back(std::string(to_string(p)));
      ++cells[{type, std::string(to_string(p))}];
    }
    records.push_back({{"actor", r.actor}, {"states", std::move(states)}, {"type", type}, {"perspectives", std::move(perspectives)}});
  }
  json cell_list = json::array();
  for (const auto &[key, count] : cells)
    cell_list.push_back({{"type", key.first}, {"perspective", key.second}, {"count", count}});
  json flows = json::array();
  for (std::size_t p = 0; p < rel.flows.size(); ++p)
    for (const auto &[t, count] : rel.flows[p])
      flows.push_back({{"period_pair", labels[p] + "->" + labels[p + 1]},
                       {"from", std::string(to_string(t.first))},
                       {"to", std::string(to_string(t.second))},
                       {"count", count}});
  return {{"status", rel.trajectories.empty() ? "skipped" : "ok"},
          {"count", rel.trajectories.size()},
          {"type_counts", std::move(type_counts)},
          {"cells", std::move(cell_list)},
          {"records", std::move(records)},
          {"flows", std::move(flows)}};
}

std::string sanitize(std::string s) {
  for (auto &c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      c = '_';
  return s;
}

std::string xml_escape(const std::string &text) {
  std::string out;
  for (char c : text) {
    switch (c) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out.flush())
    throw Error("failed writing '" + path.string() + "'");
}

std::string flows_csv(const Report &report) {
  const auto labels = period_labels(report);
  std::ostringstream out;
  out << "relation,period_pair,from,to,count\n";
  for (const auto &rel : report.relations)
    for (std::size_t p = 0; p < rel.flows.size(); ++p)
      for (const auto &[t, count] : rel.flows[p])
        out << rel.relation << ',' << labels[p] << "->" << labels[p + 1] << ',' << to_string(t.first) << ','
            << to_string(t.second) << ',' << count << '\n';
  return out.str();
}

} // namespace

const std::string &report_schema() {
  static const std::string schema = detail::kReportSchema;
  return schema;
}

nlohmann::json report_to_json(const Report &report) {
  using nlohmann::json;
  const auto labels = period_labels(report);
  json stats_periods = json::array();
  for (const auto &r : report.stats.periods)
    stats_periods.push_back(stats_row_json(r));

  json relations = json::array();
  for (const auto &rel : report.relations) {
    json periods = json::array();
    for (const auto &pr : rel.periods) {
      json p{{"label", pr.label},
             {"actors", pr.actors},
             {"reduced_actors", pr.network.size()},
             {"arcs", pr.network.arc_count()},
             {"reduction", pr.reduction_unchanged ? "unchanged" : "applied"},
             {"blockmodel", to_json(pr.model)}};
      if (pr.truth_agreement)
        p["truth_agreement"] = round_significant(*pr.truth_agreement);
      periods.push_back(std::move(p));
    }
    json stability;
    if (rel.stability) {
      json matrix = json::array();
      for (Eigen::Index i = 0; i < rel.stability->scores.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < rel.stability->scores.cols(); ++j)
          row.push_back(round_significant(rel.stability->scores(i, j)));
        matrix.push_back(std::move(row));
      }
      stability = {{"status", "ok"},
                   {"aggregate", std::string(to_string(rel.stability->aggregate))},
                   {"period_labels", labels},
                   {"matrix", std::move(matrix)},
                   {"series", round_significant(rel.stability->series)}};
    } else {
      stability = {{"status", "skipped"}, {"reason", rel.stability_skipped}};
    }
    relations.push_back({{"relation", rel.relation},
                         {"periods", std::move(periods)},
                         {"stability", std::move(stability)},
                         {"trajectories", trajectories_json(rel, labels)}});
  }

  json config = to_json(report.config);
  config.erase("output_dir"); // keeps reports comparable across output locations
  return {{"provenance", {{"tool", "copnet"}, {"version", COPNET_VERSION}, {"config_hash", report.config_hash}}},
          {"config", std::move(config)},
          {"stats", {{"status", "ok"}, {"periods", std::move(stats_periods)}, {"total", stats_row_json(report.stats.total)}}},
          {"relations", std::move(relations)},
          {"warnings", report.warnings}};
}

std::vector<std::filesystem::path> report_file_set(const Report &report) {
  std::vector<std::filesystem::path> files{"report.json", "stats.csv", "flows.csv", "schema.json"};
  for (const auto &rel : report.relations) {
    files.emplace_back("trajectories_" + sanitize(rel.relation) + ".csv");
    for (const auto &pr : rel.periods) {
      const auto stem = sanitize(rel.relation) + "_" + sanitize(pr.label);
      files.push_back(std::filesystem::path("networks") / (stem + ".net"));
      files.push_back(std::filesystem::path("networks") / (stem + ".clu"));
    }
  }
  if (report.config.svg)
    files.emplace_back("heatmap.svg");
  return files;
}

std::vector<std::filesystem::path> emit_report(const Report &report, const std::filesystem::path &dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> written;
  std::vector<fs::path> created_dirs;
  auto ensure_dir = [&](const fs::path &d) {
    if (!fs::exists(d)) {
      fs::create_directories(d);
      created_dirs.push_back(d);
    }
  };
  auto put = [&](const fs::path &rel, const std::string &text) {
    write_text(dir / rel, text);
    written.push_back(rel);
  };
  try {
    ensure_dir(dir);
    ensure_dir(dir / "networks");
    const auto labels = period_labels(report);
    put("report.json", report_to_json(report).dump(2) + "\n");
    put("stats.csv", stats_to_csv(report.stats));
    put("flows.csv", flows_csv(report));
    put("schema.json", report_schema());
    std::vector<std::pair<std::string, const BlockModel *>> panels;
    for (const auto &rel : report.relations) {
      put("trajectories_" + sanitize(rel.relation) + ".csv", trajectories_to_csv(rel.trajectories, labels));
      for (const auto &pr : rel.periods) {
        const auto stem = sanitize(rel.relation) + "_" + sanitize(pr.label);
        put(fs::path("networks") / (stem + ".net"), write_pajek_net(pr.network));
        put(fs::path("networks") / (stem + ".clu"), write_partition_clu(pr.model.partition));
        panels.emplace_back(rel.relation + " " + pr.label, &pr.model);
      }
    }
    if (report.config.svg)
      put("heatmap.svg", density_heatmap_svg(panels));
  } catch (...) {
    std::error_code ec;
    for (const auto &f : written)
      fs::remove(dir / f, ec);
    for (auto it = created_dirs.rbegin(); it != created_dirs.rend(); ++it)
      fs::remove(*it, ec);
    throw;
  }
  return written;
}

// ---------------------------------------------------------------------------

std::string density_heatmap_svg(const std::vector<std::pair<std::string, const BlockModel *>> &panels) {
  constexpr int kPanel = 180, kTitle = 20, kPad = 10, kPerRow = 4;
  const int rows = (static_cast<int>(panels.size()) + kPerRow - 1) / kPerRow;
  const int cols = std::min<int>(kPerRow, std::max<int>(1, static_cast<int>(panels.size())));
  const int width = cols * (kPanel + kPad) + kPad;
  const int height = std::max(1, rows) * (kPanel + kTitle + kPad) + kPad;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto &[title, bm] = panels[i];
    const int x0 = kPad + static_cast<int>(i % kPerRow) * (kPanel + kPad);
    const int y0 = kPad + static_cast<int>(i / kPerRow) * (kPanel + kTitle + kPad);
    svg << "<text x=\"" << x0 << "\" y=\"" << y0 + 12 << "\">" << xml_escape(title) << " (" << to_string(bm->structure)
        << ")</text>\n";
    const int k = bm->k();
    const double cell = static_cast<double>(kPanel) / std::max(1, k);
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        const int shade = static_cast<int>(std::lround(255.0 * (1.0 - std::clamp(bm->density(r, c), 0.0, 1.0))));
        svg << "<rect x=\"" << std::fixed << std::setprecision(2) << x0 + c * cell << "\" y=\""
            << y0 + kTitle + r * cell << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb("
            << shade << ',' << shade << ',' << shade << ")\" stroke=\"#888\"/>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string summarize_report(const nlohmann::json &report) {
  std::ostringstream out;
  const auto &prov = report.at("provenance");
  out << "copnet report " << prov.at("version").get<std::string>() << " (config "
      << prov.at("config_hash").get<std::string>() << ")\n\n";
  out << std::left << std::setw(10) << "period" << std::right << std::setw(8) << "months" << std::setw(12) << "posts+com"
      << std::setw(8) << "/month" << std::setw(11) << "commenters" << std::setw(8) << "/month" << std::setw(10)
      << "reactors" << std::setw(8) << "/month" << '\n';
  auto row = [&](const nlohmann::json &r) {
    out << std::left << std::setw(10) << r.at("period").get<std::string>() << std::right << std::setw(8)
        << r.at("months").get<long long>() << std::setw(12) << r.at("posts_and_comments").get<long long>()
        << std::setw(8) << r.at("posts_and_comments_per_month").get<long long>() << std::setw(11)
        << r.at("commenting_actors").get<long long>() << std::setw(8)
        << r.at("commenting_actors_per_month").get<long long>() << std::setw(10)
        << r.at("reacting_actors").get<long long>() << std::setw(8) << r.at("reacting_actors_per_month").get<long long>()
        << '\n';
  };
  for (const auto &r : report.at("stats").at("periods"))
    row(r);
  row(report.at("stats").at("total"));

  for (const auto &rel : report.at("relations")) {
    out << "\n[" << rel.at("relation").get<std::string>() << "]\n";
    for (const auto &p : rel.at("periods")) {
      const auto &bm = p.at("blockmodel");
      out << "  " << p.at("label").get<std::string>() << ": " << p.at("reduced_actors").get<long long>() << " of "
          << p.at("actors").get<long long>() << " actors, " << bm.at("structure").get<std::string>() << ", sizes";
      const auto &positions = bm.at("positions");
      const auto &sizes = bm.at("cluster_sizes");
      for (std::size_t c = 0; c < sizes.size(); ++c)
        out << ' ' << positions.at(c).get<std::string>() << '=' << sizes.at(c).get<long long>();
      if (p.contains("truth_agreement"))
        out << ", truth agreement " << p.at("truth_agreement").get<double>();
      out << '\n';
    }
    const auto &st = rel.at("stability");
    if (st.at("status") == "ok")
      out << "  stability (" << st.at("aggregate").get<std::string>() << "): " << st.at("series").get<double>() << '\n';
    else
      out << "  stability skipped: " << st.at("reason").get<std::string>() << '\n';
    out << "  trajectories:";
    for (const auto &[type, count] : rel.at("trajectories").at("type_counts").items())
      out << ' ' << type << '=' << count.get<long long>();
    out << '\n';
  }
  return out.str();
}

} // namespace copnet
