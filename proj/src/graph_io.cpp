#include "rwlab/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "rwlab/errors.hpp"

namespace rwlab {

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError("graph file is empty");
  std::istringstream header(line);
  std::size_t n = 0, m = 0;
  if (!(header >> n >> m)) throw ParseError("line " + std::to_string(lineno) + ": expected 'n m'");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_content_line(in, line, lineno)) {
      throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    std::istringstream row(line);
    Edge e;
    if (!(row >> e.u >> e.v)) throw ParseError("line " + std::to_string(lineno) + ": expected 'u v w'");
    if (!(row >> e.weight)) e.weight = 1.0;
    edges.push_back(e);
  }
  return Graph(n, std::move(edges));
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const std::optional<std::string>& scheme) {
  if (scheme) out << "# scheme=" << *scheme << '\n';
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  out << std::setprecision(17);
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
}

void write_graph_file(const std::string& path, const Graph& g, const std::optional<std::string>& scheme) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write graph file '" + path + "'");
  write_graph(out, g, scheme);
}

}  // namespace rwlab
