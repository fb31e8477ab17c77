#include "bbnet/temporal_graph.hpp"

#include <algorithm>
#include <string>

#include "bbnet/errors.hpp"

namespace bbnet::graph {

namespace {

const std::vector<NodeId> kEmpty;

void sort_adjacency(Adjacency& adj) {
  for (auto& list : adj) std::sort(list.begin(), list.end());
}

}  // namespace

TemporalGraph TemporalGraph::from_edges(std::size_t nodes, std::size_t times,
                                        const std::vector<TemporalEdge>& edges) {
  if (times < 1) throw parse_error("temporal graph needs at least one time instant");
  TemporalGraph g;
  g.nodes_ = nodes;
  g.times_ = times;
  const std::size_t send_instants = times >= 2 ? times - 1 : 0;
  g.out_by_instant_.assign(send_instants, Adjacency(nodes));
  g.in_by_instant_.assign(send_instants, Adjacency(nodes));
  for (const TemporalEdge& e : edges) {
    if (e.from >= nodes || e.to >= nodes) {
      throw parse_error("edge endpoint out of range: " + std::to_string(e.from) +
                        " -> " + std::to_string(e.to));
    }
    if (e.send >= times || e.arrive >= times) {
      throw parse_error("edge time label out of range");
    }
    if (e.arrive == e.send) {
      throw parse_error("same-instant edges are rejected (synchronous rounds)");
    }
    if (e.arrive < e.send) {
      throw parse_error("edges pointing backwards in time are rejected");
    }
    if (e.arrive == e.send + 1) {
      g.out_by_instant_[e.send][e.from].push_back(e.to);
      g.in_by_instant_[e.send][e.to].push_back(e.from);
    } else {
      g.deferred_.push_back(e);
    }
  }
  for (auto& adj : g.out_by_instant_) sort_adjacency(adj);
  for (auto& adj : g.in_by_instant_) sort_adjacency(adj);
  return g;
}

TemporalGraph TemporalGraph::constant_topology(
    std::shared_ptr<const Adjacency> adjacency, std::size_t times) {
  if (times < 1) throw parse_error("temporal graph needs at least one time instant");
  TemporalGraph g;
  g.nodes_ = adjacency->size();
  g.times_ = times;
  g.static_adj_ = std::move(adjacency);
  return g;
}

std::span<const NodeId> TemporalGraph::out_neighbors_at(NodeId u, TimeIndex send) const {
  if (static_adj_) {
    if (send + 1 >= times_) return kEmpty;
    return (*static_adj_)[u];
  }
  if (send >= out_by_instant_.size()) return kEmpty;
  return out_by_instant_[send][u];
}

std::span<const NodeId> TemporalGraph::in_neighbors_at(NodeId v, TimeIndex send) const {
  if (static_adj_) {
    if (send + 1 >= times_) return kEmpty;
    return (*static_adj_)[v];
  }
  if (send >= in_by_instant_.size()) return kEmpty;
  return in_by_instant_[send][v];
}

Adjacency TemporalGraph::snapshot(TimeIndex t) const {
  if (t >= times_) throw domain_error("snapshot: time instant out of range");
  Adjacency adj(nodes_);
  for (NodeId u = 0; u < nodes_; ++u) {
    auto span = out_neighbors_at(u, t);
    adj[u].assign(span.begin(), span.end());
  }
  return adj;
}

bool TemporalGraph::is_static() const {
  if (static_adj_) return true;
  if (!deferred_.empty()) return false;
  if (times_ < 3) return true;  // at most one send instant: nothing to compare
  const Adjacency first = snapshot(0);
  for (TimeIndex t = 1; t + 1 < times_; ++t) {
    if (snapshot(t) != first) return false;
  }
  return true;
}

std::vector<std::optional<std::uint32_t>> temporal_bfs(const TemporalGraph& g,
                                                       NodeId source,
                                                       TimeIndex start) {
  const std::size_t n = g.node_count();
  const std::size_t times = g.time_count();
  if (source >= n) throw domain_error("temporal_bfs: source out of range");
  if (start >= times) throw domain_error("temporal_bfs: start instant out of range");

  std::vector<std::optional<TimeIndex>> arrival(n);
  arrival[source] = start;

  if (g.constant_topology_mode()) {
    // Time-invariant adjacency: plain BFS, one instant per level.
    std::vector<NodeId> frontier{source};
    TimeIndex t = start;
    while (!frontier.empty() && t + 1 < times) {
      std::vector<NodeId> next;
      for (NodeId u : frontier) {
        for (NodeId v : g.out_neighbors_at(u, t)) {
          if (!arrival[v]) {
            arrival[v] = t + 1;
            next.push_back(v);
          }
        }
      }
      frontier = std::move(next);
      ++t;
    }
  } else {
    // A reached node may gain new edges at any later instant, so every
    // reached node is rescanned each round.
    std::vector<std::vector<NodeId>> deferred_by_send(times);
    std::vector<std::size_t> deferred_index;
    for (std::size_t i = 0; i < g.deferred_edges().size(); ++i) {
      deferred_by_send[g.deferred_edges()[i].send].push_back(static_cast<NodeId>(i));
    }
    auto relax = [&](NodeId v, TimeIndex at) {
      if (!arrival[v] || *arrival[v] > at) arrival[v] = at;
    };
    for (TimeIndex t = start; t + 1 < times; ++t) {
      for (NodeId u = 0; u < n; ++u) {
        if (!arrival[u] || *arrival[u] > t) continue;
        for (NodeId v : g.out_neighbors_at(u, t)) relax(v, t + 1);
        for (NodeId idx : deferred_by_send[t]) {
          const TemporalEdge& e = g.deferred_edges()[idx];
          if (e.from == u) relax(e.to, e.arrive);
        }
      }
    }
  }

  std::vector<std::optional<std::uint32_t>> steps(n);
  for (NodeId v = 0; v < n; ++v) {
    if (arrival[v]) steps[v] = *arrival[v] - start;
  }
  return steps;
}

std::optional<std::uint32_t> diffusion_diameter(const TemporalGraph& g,
                                                TimeIndex start) {
  if (g.node_count() == 0) return 0;
  std::uint32_t worst = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto steps = temporal_bfs(g, u, start);
    std::uint32_t farthest = 0;
    for (const auto& s : steps) {
      if (!s) return std::nullopt;
      farthest = std::max(farthest, *s);
    }
    worst = std::max(worst, farthest);
  }
  return worst;
}

}  // namespace bbnet::graph
