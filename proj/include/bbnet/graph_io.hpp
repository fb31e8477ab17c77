#pragma once

#include <filesystem>
#include <iosfwd>

#include "bbnet/ba.hpp"
#include "bbnet/temporal_graph.hpp"

namespace bbnet::graph {

// Line-oriented interchange format.
//   tvg <N> <T>      followed by directed `u t_i v t_j` quadruples
//   static <N>       followed by undirected `u v` pairs
// '#' starts a comment; blank lines are skipped.
struct GraphFile {
  enum class Kind { Tvg, Static } kind = Kind::Static;
  TemporalGraph tvg;         // set when kind == Tvg
  StaticNetwork static_net;  // set when kind == Static
};

GraphFile load_graph(const std::filesystem::path& file);
GraphFile load_graph(std::istream& in, const std::string& name);

void save_static(const StaticNetwork& net, const std::filesystem::path& file);
void save_tvg(std::size_t nodes, std::size_t times,
              const std::vector<TemporalEdge>& edges,
              const std::filesystem::path& file);

}  // namespace bbnet::graph
