#include "dkq/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dkq/error.hpp"

namespace dkq {
namespace {

using nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

const char* format_tag(GraphFormat f) {
  switch (f) {
    case GraphFormat::EdgeList: return "dkq-edgelist";
    case GraphFormat::Dimacs: return "dkq-dimacs";
    case GraphFormat::Json: return "dkq-json";
  }
  return "";
}

std::string encoding_text(const GraphInfo& info) {
  if (info.kind == "D") {
    return "points 0..q^k-1, lines q^k..2q^k-1; id within a side = sum_j index(u_j) * q^(j-1), "
           "u_1 least significant; element index = base-p polynomial coefficients, constant term least significant";
  }
  if (info.kind == "CD") {
    return "dense relabeling of one D(k,q) component, points first in ascending D(k,q) id order, then lines; "
           "original ids in the sidecar map";
  }
  return "points 0..points-1, lines points..vertices-1";
}

template <typename T>
T require(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("graph header lacks \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("graph header field \"") + key + "\" has the wrong type");
  }
}

struct Header {
  GraphInfo info;
  std::uint64_t vertices = 0;
  std::uint64_t points = 0;
  std::uint64_t edges = 0;
};

Header parse_header(const ordered_json& j) {
  Header h;
  h.vertices = require<std::uint64_t>(j, "vertex_count");
  h.points = require<std::uint64_t>(j, "point_count");
  h.edges = require<std::uint64_t>(j, "edge_count");
  if (h.vertices > ~VertexId{0}) throw FormatError("vertex count exceeds 32-bit ids");
  if (h.points > h.vertices) throw FormatError("point count exceeds vertex count");
  h.info.kind = require<std::string>(j, "kind");
  if (j.contains("q")) {
    const auto q = require<std::uint64_t>(j, "q");
    const auto modulus = require<Poly>(j, "modulus");
    try {
      h.info.field = Field::make(q, modulus.empty() ? std::nullopt : std::optional<Poly>(modulus));
    } catch (const ParameterError& e) {
      throw FormatError(std::string("graph header has an invalid field: ") + e.what());
    }
    if (require<std::uint32_t>(j, "p") != h.info.field->p() || require<std::uint32_t>(j, "m") != h.info.field->m()) {
      throw FormatError("graph header p/m disagree with q");
    }
    h.info.k = require<int>(j, "k");
  }
  if (j.contains("component")) h.info.component = require<std::uint32_t>(j, "component");
  return h;
}

BipartiteGraph finish(Header h, const std::vector<Edge>& edges) {
  if (edges.size() != h.edges) {
    throw FormatError("edge count mismatch: header says " + std::to_string(h.edges) + ", body has " +
                      std::to_string(edges.size()));
  }
  const auto vertices = static_cast<VertexId>(h.vertices);
  const auto points = static_cast<VertexId>(h.points);
  if (h.points > 0) {
    for (const auto& [a, b] : edges) {
      if (a < vertices && b < vertices && (a < points) == (b < points)) {
        throw FormatError("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") joins two vertices of one side");
      }
    }
  }
  auto g = BipartiteGraph::from_edges(vertices, points, edges, std::move(h.info));
  if (g.vertex_count() > 0) {
    const std::size_t want = g.info().field ? g.info().field->q() : g.degree(0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.degree(v) != want) {
        throw FormatError("vertex " + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) +
                          ", expected " + std::to_string(want));
      }
    }
  }
  return g;
}

ordered_json parse_json_line(const std::string& text) {
  try {
    auto j = ordered_json::parse(text);
    if (!j.is_object()) throw FormatError("graph header is not a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed graph header: ") + e.what());
  }
}

VertexId parse_id(const std::string& token) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(token, &used);
  } catch (const std::exception&) {
    throw FormatError("bad vertex id \"" + token + "\"");
  }
  if (used != token.size() || token.empty() || token[0] == '-' || v > ~VertexId{0}) {
    throw FormatError("bad vertex id \"" + token + "\"");
  }
  return static_cast<VertexId>(v);
}

BipartiteGraph read_edgelist(std::istream& is) {
  std::string line;
  std::optional<Header> header;
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!header) header = parse_header(parse_json_line(line.substr(1)));
      continue;
    }
    if (!header) throw FormatError("edge list body before header");
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra)) throw FormatError("malformed edge line \"" + line + "\"");
    edges.emplace_back(parse_id(a), parse_id(b));
  }
  if (!header) throw FormatError("edge list has no header");
  return finish(std::move(*header), edges);
}

BipartiteGraph read_dimacs(std::istream& is) {
  std::string line;
  std::optional<Header> header;
  bool seen_problem = false;
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "c") {
      std::string marker;
      ls >> marker;
      if (marker == "dkq" && !header) {
        std::string rest;
        std::getline(ls, rest);
        header = parse_header(parse_json_line(rest));
      }
    } else if (tag == "p") {
      std::string kind;
      std::uint64_t v = 0, e = 0;
      if (!(ls >> kind >> v >> e) || kind != "edge") throw FormatError("malformed DIMACS problem line");
      if (!header) {
        header.emplace();
        header->vertices = v;
        header->edges = e;
      } else if (header->vertices != v || header->edges != e) {
        throw FormatError("DIMACS problem line disagrees with the dkq header");
      }
      seen_problem = true;
    } else if (tag == "e") {
      if (!seen_problem) throw FormatError("DIMACS edge before problem line");
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra)) throw FormatError("malformed DIMACS edge line \"" + line + "\"");
      const VertexId ia = parse_id(a), ib = parse_id(b);
      if (ia == 0 || ib == 0) throw FormatError("DIMACS ids are 1-based");
      edges.emplace_back(ia - 1, ib - 1);
    } else {
      throw FormatError("unknown DIMACS line \"" + line + "\"");
    }
  }
  if (!seen_problem) throw FormatError("DIMACS file has no problem line");
  return finish(std::move(*header), edges);
}

BipartiteGraph read_json(std::istream& is) {
  std::stringstream buffer;
  buffer << is.rdbuf();
  const auto j = parse_json_line(buffer.str());
  Header h = parse_header(j);
  std::vector<Edge> edges;
  if (!j.contains("edges") || !j["edges"].is_array()) throw FormatError("JSON graph lacks an edges array");
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
      throw FormatError("malformed JSON edge " + e.dump());
    }
    const auto a = e[0].get<std::uint64_t>(), b = e[1].get<std::uint64_t>();
    if (a > ~VertexId{0} || b > ~VertexId{0}) throw FormatError("vertex id out of range in " + e.dump());
    edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  return finish(std::move(h), edges);
}

}  // namespace

GraphFormat parse_format(std::string_view name) {
  if (name == "edgelist") return GraphFormat::EdgeList;
  if (name == "dimacs") return GraphFormat::Dimacs;
  if (name == "json") return GraphFormat::Json;
  throw ParameterError("unknown graph format \"" + std::string(name) + "\" (edgelist, dimacs, json)");
}

ordered_json graph_metadata(const BipartiteGraph& g, GraphFormat format) {
  const auto& info = g.info();
  ordered_json j;
  j["format"] = format_tag(format);
  j["version"] = kFormatVersion;
  j["kind"] = info.kind;
  if (info.field) {
    j["k"] = info.k;
    j["q"] = info.field->q();
    j["p"] = info.field->p();
    j["m"] = info.field->m();
    j["modulus"] = info.field->modulus();
  }
  if (info.component) j["component"] = *info.component;
  j["vertex_count"] = g.vertex_count();
  j["point_count"] = g.point_count();
  j["edge_count"] = g.edge_count();
  j["encoding"] = encoding_text(info);
  return j;
}

void write_graph(std::ostream& os, const BipartiteGraph& g, GraphFormat format) {
  const auto meta = graph_metadata(g, format);
  switch (format) {
    case GraphFormat::EdgeList:
      os << "# " << meta.dump() << '\n';
      for (const auto& [a, b] : g.edges()) os << a << ' ' << b << '\n';
      break;
    case GraphFormat::Dimacs:
      os << "c dkq " << meta.dump() << '\n';
      os << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
      for (const auto& [a, b] : g.edges()) os << "e " << a + 1 << ' ' << b + 1 << '\n';
      break;
    case GraphFormat::Json: {
      auto j = meta;
      auto arr = ordered_json::array();
      for (const auto& [a, b] : g.edges()) arr.push_back({a, b});
      j["edges"] = std::move(arr);
      os << j.dump() << '\n';
      break;
    }
  }
}

BipartiteGraph read_graph(std::istream& is) {
  is >> std::ws;
  const int c = is.peek();
  if (c == '#') return read_edgelist(is);
  if (c == '{') return read_json(is);
  if (c == 'c' || c == 'p') return read_dimacs(is);
  throw FormatError("unrecognized graph file format");
}

void export_graph(const std::filesystem::path& path, const BipartiteGraph& g, GraphFormat format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParameterError("cannot open " + path.string() + " for writing");
  write_graph(os, g, format);
  if (!os) throw ParameterError("failed writing " + path.string());
}

BipartiteGraph import_graph(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParameterError("cannot open " + path.string());
  return read_graph(is);
}

void write_mapping(std::ostream& os, std::span<const VertexId> new_to_old) {
  for (std::size_t i = 0; i < new_to_old.size(); ++i) os << i << ' ' << new_to_old[i] << '\n';
}

}  // namespace dkq
