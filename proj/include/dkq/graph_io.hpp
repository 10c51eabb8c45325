#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>

#include <json.hpp>

#include "dkq/graph.hpp"

namespace dkq {

enum class GraphFormat { EdgeList, Dimacs, Json };

/// "edgelist", "dimacs" or "json"; throws ParameterError otherwise.
GraphFormat parse_format(std::string_view name);

/// Header object shared by all formats: kind, k, q, p, m, modulus, counts,
/// and a description of the vertex encoding.
nlohmann::ordered_json graph_metadata(const BipartiteGraph& g, GraphFormat format);

/// Edge list: one "# {json}" header line, then "pointId lineId" per edge in
/// ascending order. DIMACS: "c dkq {json}", "p edge V E", then "e u v"
/// (1-based). JSON: the header object with an "edges" array.
void write_graph(std::ostream& os, const BipartiteGraph& g, GraphFormat format);

/// Reads any of the three formats (detected from the first character).
/// Throws FormatError on malformed headers, count mismatches, duplicate
/// edges, out-of-range ids or irregular degree.
BipartiteGraph read_graph(std::istream& is);

void export_graph(const std::filesystem::path& path, const BipartiteGraph& g, GraphFormat format);
BipartiteGraph import_graph(const std::filesystem::path& path);

/// Sidecar for extracted components: "newId oldId" per line.
void write_mapping(std::ostream& os, std::span<const VertexId> new_to_old);

}  // namespace dkq
