#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "copnet/netmodel.hpp"

namespace copnet {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<Line> significant_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    auto raw = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++number;
    auto t = trim(raw);
    if (t.empty() || t.front() == '%')
      continue;
    out.push_back({number, t});
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view next_token(std::string_view &s) {
  s = trim(s);
  auto end = std::find_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  auto tok = s.substr(0, static_cast<std::size_t>(end - s.begin()));
  s.remove_prefix(tok.size());
  return tok;
}

template <typename T>
bool parse_number(std::string_view tok, T &out) {
  if (tok.empty())
    return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::size_t parse_vertices_header(const Line &line) {
  auto rest = line.text;
  auto keyword = next_token(rest);
  if (lower(keyword) != "*vertices")
    throw ParseError(line.number, "expected '*Vertices n' header");
  std::size_t n = 0;
  if (!parse_number(next_token(rest), n) || !trim(rest).empty())
    throw ParseError(line.number, "malformed '*Vertices' header");
  return n;
}

} // namespace

OneModeNetwork read_pajek_net(std::string_view text) {
  auto lines = significant_lines(text);
  if (lines.empty())
    throw ParseError(1, "missing '*Vertices' header");
  const std::size_t n = parse_vertices_header(lines.front());

  std::vector<std::string> labels(n);
  std::vector<bool> labelled(n, false);
  std::size_t pos = 1;
  for (; pos < lines.size() && lines[pos].text.front() != '*'; ++pos) {
    const auto &line = lines[pos];
    auto rest = line.text;
    std::size_t index = 0;
    if (!parse_number(next_token(rest), index) || index < 1 || index > n)
      throw ParseError(line.number, "vertex index out of range 1.." + std::to_string(n));
    if (labelled[index - 1])
      throw ParseError(line.number, "vertex " + std::to_string(index) + " listed twice");
    rest = trim(rest);
    std::string label;
    if (!rest.empty() && rest.front() == '"') {
      auto close = rest.find('"', 1);
      if (close == std::string_view::npos)
        throw ParseError(line.number, "unterminated vertex label");
      label = std::string(rest.substr(1, close - 1));
    } else {
      label = std::string(next_token(rest));
    }
    if (label.empty())
      label = std::to_string(index);
    labels[index - 1] = std::move(label);
    labelled[index - 1] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!labelled[i])
      labels[i] = std::to_string(i + 1);

  UnitSet actors;
  try {
    actors = UnitSet(std::move(labels));
  } catch (const InvalidArgument &e) {
    throw ParseError(lines.front().number, e.what());
  }

  OneModeNetwork::ArcMap arcs;
  bool in_arcs = false;
  for (; pos < lines.size(); ++pos) {
    const auto &line = lines[pos];
    if (line.text.front() == '*') {
      auto rest = line.text;
      auto section = lower(next_token(rest));
      if (section != "*arcs")
        throw ParseError(line.number, "unsupported Pajek section '" + std::string(line.text) + "'");
      in_arcs = true;
      continue;
    }
    if (!in_arcs)
      throw ParseError(line.number, "arc line outside an '*Arcs' section");
    auto rest = line.text;
    std::size_t s = 0, t = 0;
    if (!parse_number(next_token(rest), s) || !parse_number(next_token(rest), t))
      throw ParseError(line.number, "malformed arc line");
    if (s < 1 || s > n || t < 1 || t > n)
      throw ParseError(line.number, "arc endpoint out of range 1.." + std::to_string(n));
    double w = 1.0;
    auto wtok = next_token(rest);
    if (!wtok.empty() && !parse_number(wtok, w))
      throw ParseError(line.number, "malformed arc weight");
    if (!(w > 0.0))
      throw ParseError(line.number, "arc weight must be positive");
    arcs[{s - 1, t - 1}] += w;
  }
  return OneModeNetwork(std::move(actors), std::move(arcs));
}

double round_significant(double value, int digits) {
  if (value == 0.0 || !std::isfinite(value))
    return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

std::string format_weight(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string write_pajek_net(const OneModeNetwork &net) {
  std::ostringstream out;
  out << "*Vertices " << net.size() << '\n';
  for (std::size_t i = 0; i < net.size(); ++i)
    out << i + 1 << " \"" << net.actors()[i] << "\"\n";
  if (net.size() == 0)
    return out.str();
  out << "*Arcs\n";
  for (const auto &[key, w] : net.arcs())
    out << key.first + 1 << ' ' << key.second + 1 << ' ' << format_weight(w) << '\n';
  return out.str();
}

Partition read_partition_clu(std::string_view text, const UnitSet &units) {
  auto lines = significant_lines(text);
  if (lines.empty())
    throw ParseError(1, "missing '*Vertices' header");
  const std::size_t n = parse_vertices_header(lines.front());
  if (lines.size() - 1 != n)
    throw ParseError(lines.front().number, "header announces " + std::to_string(n) + " vertices but " +
                                               std::to_string(lines.size() - 1) + " cluster ids follow");
  if (!units.empty() && units.size() != n)
    throw ParseError(lines.front().number, "partition has " + std::to_string(n) + " vertices, unit set has " +
                                               std::to_string(units.size()));
  std::vector<int> ids;
  ids.reserve(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    int c = 0;
    if (!parse_number(lines[i].text, c))
      throw ParseError(lines[i].number, "cluster id is not an integer");
    ids.push_back(c);
  }
  if (!units.empty())
    return Partition(units, std::move(ids));
  std::vector<UnitId> names;
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back(std::to_string(i));
  return Partition(UnitSet(std::move(names)), std::move(ids));
}

std::string write_partition_clu(const Partition &partition) {
  std::ostringstream out;
  out << "*Vertices " << partition.size() << '\n';
  for (int c : partition.assignment())
    out << c << '\n';
  return out.str();
}

} // namespace copnet
