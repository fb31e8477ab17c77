#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "bbnet/temporal_graph.hpp"

namespace bbnet::graph {

struct BaParams {
  std::uint32_t n = 1;   // node count
  std::uint32_t m = 1;   // edges attached per new node
  std::uint32_t m0 = 1;  // seed clique size, >= m
  std::uint64_t seed = 0;

  void validate() const;  // throws config_error on n >= m0 >= m >= 1 violations
};

// Undirected simple graph with a constant-topology temporal view.
class StaticNetwork {
 public:
  StaticNetwork() = default;
  StaticNetwork(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges);

  std::size_t node_count() const { return n_; }
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
  const Adjacency& adjacency() const { return *adjacency_; }
  std::vector<std::uint32_t> degrees() const;

  // Temporal view over `times` instants sharing this adjacency.
  TemporalGraph temporal(std::size_t times) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;  // normalized u < v
  std::shared_ptr<const Adjacency> adjacency_;
};

// Preferential attachment on a seed clique of m0 nodes; every later node
// attaches m edges to distinct targets drawn from the degree-weighted urn.
// Deterministic for a fixed seed.
StaticNetwork generate_ba(const BaParams& params);

// Least-squares fit of the degree distribution tail on log-log CCDF axes.
// `exponent` is the implied density exponent (CCDF slope magnitude + 1).
struct PowerLawFit {
  double exponent = 0.0;
  double ccdf_slope = 0.0;
  std::size_t points = 0;
};

PowerLawFit fit_ccdf_powerlaw(const std::vector<std::uint32_t>& degrees,
                              std::uint32_t k_min, std::size_t min_tail_count = 5);

}  // namespace bbnet::graph
