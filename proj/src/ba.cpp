#include "bbnet/ba.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "bbnet/errors.hpp"
#include "bbnet/rng.hpp"

namespace bbnet::graph {

void BaParams::validate() const {
  if (!(n >= m0 && m0 >= m && m >= 1)) {
    throw config_error("BA parameters must satisfy n >= m0 >= m >= 1 (got n=" +
                       std::to_string(n) + " m0=" + std::to_string(m0) +
                       " m=" + std::to_string(m) + ")");
  }
}

StaticNetwork::StaticNetwork(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges)
    : n_(n) {
  auto adj = std::make_shared<Adjacency>(n);
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw parse_error("static edge endpoint out of range");
    if (u == v) throw parse_error("self loops are not allowed in static networks");
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
    (*adj)[u].push_back(v);
    (*adj)[v].push_back(u);
  }
  for (auto& list : *adj) std::sort(list.begin(), list.end());
  adjacency_ = std::move(adj);
}

std::vector<std::uint32_t> StaticNetwork::degrees() const {
  std::vector<std::uint32_t> deg(n_, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

TemporalGraph StaticNetwork::temporal(std::size_t times) const {
  return TemporalGraph::constant_topology(adjacency_, times);
}

StaticNetwork generate_ba(const BaParams& params) {
  params.validate();
  Rng rng(derive_seed(params.seed, "ba-generator"));

  std::vector<std::pair<NodeId, NodeId>> edges;
  // Urn with one entry per edge endpoint; uniform index draws realize the
  // degree-proportional attachment law.
  std::vector<NodeId> urn;
  edges.reserve(static_cast<std::size_t>(params.m0) * (params.m0 - 1) / 2 +
                static_cast<std::size_t>(params.m) * (params.n - params.m0));

  for (NodeId u = 0; u < params.m0; ++u) {
    for (NodeId v = u + 1; v < params.m0; ++v) {
      edges.emplace_back(u, v);
      urn.push_back(u);
      urn.push_back(v);
    }
  }

  std::vector<NodeId> picked;
  std::vector<char> is_picked(params.n, 0);
  for (NodeId node = params.m0; node < params.n; ++node) {
    picked.clear();
    while (picked.size() < params.m) {
      NodeId target;
      if (urn.empty()) {
        // Degenerate m0=1 seed: the lone seed node has degree zero, so the
        // first attachment is forced.
        target = static_cast<NodeId>(rng.next_below(node));
      } else {
        target = urn[rng.next_below(urn.size())];
      }
      if (is_picked[target]) continue;
      is_picked[target] = 1;
      picked.push_back(target);
      edges.emplace_back(target, node);
      urn.push_back(target);
    }
    for (NodeId t : picked) is_picked[t] = 0;
    for (std::uint32_t i = 0; i < params.m; ++i) urn.push_back(node);
  }

  return StaticNetwork(params.n, std::move(edges));
}

PowerLawFit fit_ccdf_powerlaw(const std::vector<std::uint32_t>& degrees,
                              std::uint32_t k_min, std::size_t min_tail_count) {
  std::map<std::uint32_t, std::size_t> counts;
  std::size_t tail_total = 0;
  for (std::uint32_t d : degrees) {
    if (d >= k_min) {
      ++counts[d];
      ++tail_total;
    }
  }
  if (tail_total == 0) throw domain_error("power-law fit: empty degree tail");

  // CCDF over the tail; points with fewer than min_tail_count nodes at or
  // above them are too noisy to regress on.
  std::vector<std::pair<double, double>> pts;  // (lg k, lg ccdf)
  std::size_t at_or_above = tail_total;
  for (auto& [k, c] : counts) {
    if (at_or_above >= min_tail_count) {
      pts.emplace_back(std::log2(static_cast<double>(k)),
                       std::log2(static_cast<double>(at_or_above) /
                                 static_cast<double>(tail_total)));
    }
    at_or_above -= c;
  }
  if (pts.size() < 2) throw domain_error("power-law fit: too few tail points");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  PowerLawFit fit;
  fit.ccdf_slope = slope;
  fit.exponent = 1.0 - slope;  // density exponent from the CCDF slope
  fit.points = pts.size();
  return fit;
}

}  // namespace bbnet::graph
