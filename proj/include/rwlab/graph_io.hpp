// graph_io.hpp - the plain-text graph format.
//
//   # optional comment lines (e.g. "# scheme=mindeg")
//   n m
//   u v w        (m lines; loops as "u u w"; parallel edges as repeated lines)
//
// The weight column may be omitted on read (defaults to 1). Weights are
// written with 17 significant digits so a write/read cycle is exact.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "rwlab/graph.hpp"

namespace rwlab {

Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g, const std::optional<std::string>& scheme = {});
void write_graph_file(const std::string& path, const Graph& g,
                      const std::optional<std::string>& scheme = {});

}  // namespace rwlab
