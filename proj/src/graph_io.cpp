#include "bbnet/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "bbnet/errors.hpp"

namespace bbnet::graph {

namespace {

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    return true;
  }
  return false;
}

}  // namespace

GraphFile load_graph(std::istream& in, const std::string& name) {
  std::string line;
  if (!next_content_line(in, line)) {
    throw parse_error(name + ": missing header line");
  }
  std::istringstream header(line);
  std::string kind;
  header >> kind;

  GraphFile out;
  if (kind == "tvg") {
    std::size_t n = 0, t = 0;
    if (!(header >> n >> t)) throw parse_error(name + ": tvg header needs <N> <T>");
    std::vector<TemporalEdge> edges;
    while (next_content_line(in, line)) {
      std::istringstream row(line);
      TemporalEdge e;
      if (!(row >> e.from >> e.send >> e.to >> e.arrive)) {
        throw parse_error(name + ": bad tvg edge line: " + line);
      }
      edges.push_back(e);
    }
    out.kind = GraphFile::Kind::Tvg;
    out.tvg = TemporalGraph::from_edges(n, t, edges);
  } else if (kind == "static") {
    std::size_t n = 0;
    if (!(header >> n)) throw parse_error(name + ": static header needs <N>");
    std::vector<std::pair<NodeId, NodeId>> edges;
    while (next_content_line(in, line)) {
      std::istringstream row(line);
      NodeId u = 0, v = 0;
      if (!(row >> u >> v)) {
        throw parse_error(name + ": bad static edge line: " + line);
      }
      edges.emplace_back(u, v);
    }
    out.kind = GraphFile::Kind::Static;
    out.static_net = StaticNetwork(n, std::move(edges));
  } else {
    throw parse_error(name + ": unknown header kind '" + kind + "'");
  }
  return out;
}

GraphFile load_graph(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw parse_error("cannot open graph file: " + file.string());
  return load_graph(in, file.string());
}

void save_static(const StaticNetwork& net, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw parse_error("cannot open for writing: " + file.string());
  out << "static " << net.node_count() << '\n';
  for (auto [u, v] : net.edges()) out << u << ' ' << v << '\n';
}

void save_tvg(std::size_t nodes, std::size_t times,
              const std::vector<TemporalEdge>& edges,
              const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw parse_error("cannot open for writing: " + file.string());
  out << "tvg " << nodes << ' ' << times << '\n';
  for (const TemporalEdge& e : edges) {
    out << e.from << ' ' << e.send << ' ' << e.to << ' ' << e.arrive << '\n';
  }
}

}  // namespace bbnet::graph
