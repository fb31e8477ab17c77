#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace bbnet::graph {

using NodeId = std::uint32_t;
using TimeIndex = std::uint32_t;

// Directed timed edge: sent by `from` at instant `send`, delivered to `to`
// for instant `arrive`. Same-instant and backward edges are rejected at
// construction; arrive == send+1 is the synchronous-round case.
struct TemporalEdge {
  NodeId from = 0;
  TimeIndex send = 0;
  NodeId to = 0;
  TimeIndex arrive = 0;

  bool operator==(const TemporalEdge&) const = default;
};

using Adjacency = std::vector<std::vector<NodeId>>;

// Time-varying graph over dense node ids 0..N-1 and instants t_0..t_{T-1}.
// Values are immutable once built and safe to share across threads.
class TemporalGraph {
 public:
  TemporalGraph() = default;

  // General TVG from explicit quadruples. Throws parse_error on invalid
  // endpoints, same-instant edges, or edges pointing backwards in time.
  static TemporalGraph from_edges(std::size_t nodes, std::size_t times,
                                  const std::vector<TemporalEdge>& edges);

  // Constant topology at every instant, shared rather than copied. The
  // adjacency must be symmetric (undirected network).
  static TemporalGraph constant_topology(std::shared_ptr<const Adjacency> adjacency,
                                         std::size_t times);

  std::size_t node_count() const { return nodes_; }
  std::size_t time_count() const { return times_; }
  bool constant_topology_mode() const { return static_adj_ != nullptr; }

  // Synchronous-round neighbors: edges (u, send, v, send+1).
  std::span<const NodeId> out_neighbors_at(NodeId u, TimeIndex send) const;
  std::span<const NodeId> in_neighbors_at(NodeId v, TimeIndex send) const;

  // Edges with arrive > send+1; they take part in reachability but not in
  // per-round snapshots.
  const std::vector<TemporalEdge>& deferred_edges() const { return deferred_; }

  // Out-adjacency restricted to edges (u, t, v, t+1), sorted per node.
  Adjacency snapshot(TimeIndex t) const;

  // True when every instant carries the same node-pair edge set and no
  // deferred edges exist. Constant-topology graphs short-circuit to true.
  bool is_static() const;

 private:
  std::size_t nodes_ = 0;
  std::size_t times_ = 1;

  std::shared_ptr<const Adjacency> static_adj_;  // constant-topology mode

  // Dynamic mode: per send instant 0..times-2.
  std::vector<Adjacency> out_by_instant_;
  std::vector<Adjacency> in_by_instant_;
  std::vector<TemporalEdge> deferred_;
};

// Earliest reach step per node for a diffusion from `source` starting at
// instant `start`; the source itself is at step 0, unreachable nodes are
// nullopt. Steps count time instants, so a node first holding the message
// at instant start+k is at step k.
std::vector<std::optional<std::uint32_t>> temporal_bfs(const TemporalGraph& g,
                                                       NodeId source,
                                                       TimeIndex start);

// Max over sources of the step count needed to reach every node; nullopt
// when some source cannot cover the graph within the available instants.
std::optional<std::uint32_t> diffusion_diameter(const TemporalGraph& g,
                                                TimeIndex start);

}  // namespace bbnet::graph
