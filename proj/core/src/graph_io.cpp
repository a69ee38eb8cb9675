#include <greenwalk/graph.hpp>

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>

namespace greenwalk {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

Index parse_vertex(std::string_view token, std::size_t line) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "invalid vertex index '" + std::string(token) + "'");
  }
  if (value < 0) throw ParseError(line, "vertex index out of range");
  return static_cast<Index>(value);
}

double parse_weight(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError(line, "invalid weight '" + std::string(token) + "'");
  }
  if (value < 0.0) throw ParseError(line, "negative weight");
  return value;
}

WeightedDigraph parse_edge_list(std::string_view text, ParseOptions options) {
  std::vector<Arc> arcs;
  bool undirected = options.undirected;
  Index max_vertex = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto directive = trim(line.substr(1));
      if (directive == "undirected") undirected = true;
      if (directive == "directed") undirected = options.undirected;
      continue;
    }
    const auto tokens = split_ws(trim(line.substr(0, line.find('#'))));
    if (tokens.size() < 2 || tokens.size() > 3) {
      throw ParseError(line_no, "expected 'src dst [weight]'");
    }
    Arc arc;
    arc.source = parse_vertex(tokens[0], line_no);
    arc.target = parse_vertex(tokens[1], line_no);
    arc.weight = tokens.size() == 3 ? parse_weight(tokens[2], line_no) : 1.0;
    max_vertex = std::max({max_vertex, arc.source, arc.target});
    arcs.push_back(arc);
  }
  if (arcs.empty()) throw ParseError(0, "graph has no arcs");
  return WeightedDigraph(max_vertex + 1, std::move(arcs), undirected);
}

WeightedDigraph parse_json(std::string_view text, ParseOptions options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer()) {
    throw ParseError(0, "JSON graph needs an integer field \"n\"");
  }
  const auto n = doc["n"].get<long long>();
  if (n <= 0) throw ParseError(0, "\"n\" must be positive");
  bool undirected = options.undirected;
  if (doc.contains("undirected")) {
    if (!doc["undirected"].is_boolean()) throw ParseError(0, "\"undirected\" must be a boolean");
    undirected = undirected || doc["undirected"].get<bool>();
  }
  if (!doc.contains("arcs") || !doc["arcs"].is_array()) {
    throw ParseError(0, "JSON graph needs an array field \"arcs\"");
  }
  std::vector<Arc> arcs;
  std::size_t k = 0;
  for (const auto& entry : doc["arcs"]) {
    const std::string where = "arc " + std::to_string(k++);
    if (!entry.is_array() || entry.size() < 2 || entry.size() > 3) {
      throw ParseError(0, where + ": expected [src, dst, weight]");
    }
    if (!entry[0].is_number_integer() || !entry[1].is_number_integer()) {
      throw ParseError(0, where + ": invalid vertex index");
    }
    Arc arc;
    arc.source = entry[0].get<long long>();
    arc.target = entry[1].get<long long>();
    if (arc.source < 0 || arc.source >= n || arc.target < 0 || arc.target >= n) {
      throw ParseError(0, where + ": vertex index out of range");
    }
    if (entry.size() == 3) {
      if (!entry[2].is_number()) throw ParseError(0, where + ": invalid weight");
      arc.weight = entry[2].get<double>();
      if (arc.weight < 0.0) throw ParseError(0, where + ": negative weight");
    }
    arcs.push_back(arc);
  }
  return WeightedDigraph(static_cast<Index>(n), std::move(arcs), undirected);
}

}  // namespace

WeightedDigraph parse_graph(std::string_view text, GraphFormat format, ParseOptions options) {
  switch (format) {
    case GraphFormat::EdgeList:
      return parse_edge_list(text, options);
    case GraphFormat::Json:
      return parse_json(text, options);
  }
  throw ParseError(0, "unknown graph format");
}

WeightedDigraph read_graph(std::istream& in, GraphFormat format, ParseOptions options) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_graph(text, format, options);
}

}  // namespace greenwalk
