#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "bbnet/ba.hpp"
#include "bbnet/errors.hpp"
#include "bbnet/graph_io.hpp"
#include "bbnet/hash.hpp"
#include "bbnet/rng.hpp"
#include "bbnet/temporal_graph.hpp"
#include "oracles.hpp"

using namespace bbnet;
using namespace bbnet::graph;

namespace {

std::string edge_fingerprint(const StaticNetwork& net) {
  std::ostringstream out;
  for (auto [u, v] : net.edges()) out << u << '-' << v << ';';
  return out.str();
}

TemporalGraph tvg_from(std::size_t n, std::size_t t,
                       std::initializer_list<TemporalEdge> edges) {
  return TemporalGraph::from_edges(n, t, std::vector<TemporalEdge>(edges));
}

}  // namespace

TEST_CASE("ba generator basics") {
  SUBCASE("single node, no attachment steps") {
    BaParams p{1, 1, 1, 0};
    auto net = generate_ba(p);
    CHECK(net.node_count() == 1);
    CHECK(net.edges().empty());
  }

  SUBCASE("edge count is clique plus m per added node") {
    BaParams p{100, 2, 3, 42};
    auto net = generate_ba(p);
    CHECK(net.edges().size() == 3 + 2 * 97);  // C(3,2) + m*(n-m0)
  }

  SUBCASE("degree sum equals twice the edge count") {
    BaParams p{500, 3, 3, 11};
    auto net = generate_ba(p);
    std::uint64_t sum = 0;
    for (auto d : net.degrees()) sum += d;
    CHECK(sum == 2 * net.edges().size());
  }

  SUBCASE("fixed seed reproduces the edge list bit for bit") {
    BaParams p{300, 3, 3, 7};
    CHECK(edge_fingerprint(generate_ba(p)) == edge_fingerprint(generate_ba(p)));
    // Pinned fingerprint hash guards cross-platform drift.
    CHECK(fnv1a64(edge_fingerprint(generate_ba(p))) == 0x863c9756c322ad02ull);
  }

  SUBCASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(generate_ba(BaParams{10, 3, 2, 0}), config_error);  // m0 < m
    CHECK_THROWS_AS(generate_ba(BaParams{2, 1, 3, 0}), config_error);   // m0 > n
    CHECK_THROWS_AS(generate_ba(BaParams{5, 0, 0, 0}), config_error);   // m < 1
  }

  SUBCASE("connectivity: every node reaches node 0") {
    BaParams p{200, 1, 1, 3};
    auto net = generate_ba(p);
    auto g = net.temporal(net.node_count() + 1);
    auto steps = temporal_bfs(g, 0, 0);
    for (const auto& s : steps) CHECK(s.has_value());
  }
}

TEST_CASE("degree tail follows the cubic power law") {
  BaParams p{10000, 3, 3, 1};
  auto net = generate_ba(p);
  auto fit = fit_ccdf_powerlaw(net.degrees(), p.m);
  CHECK(fit.exponent > 2.6);
  CHECK(fit.exponent < 3.4);
}

TEST_CASE("static network time invariance") {
  BaParams p{50, 2, 2, 9};
  auto net = generate_ba(p);
  auto g = net.temporal(6);
  CHECK(g.is_static());
  // Identical snapshot at every instant with a successor.
  auto first = g.snapshot(0);
  for (TimeIndex t = 1; t + 1 < g.time_count(); ++t) {
    CHECK(g.snapshot(t) == first);
  }
}

TEST_CASE("edge validation at load time") {
  SUBCASE("same-instant edges are rejected") {
    CHECK_THROWS_AS(tvg_from(2, 2, {{0, 1, 1, 1}}), parse_error);
  }
  SUBCASE("backward edges are rejected") {
    CHECK_THROWS_AS(tvg_from(2, 3, {{0, 2, 1, 1}}), parse_error);
  }
  SUBCASE("out-of-range endpoints and instants are rejected") {
    CHECK_THROWS_AS(tvg_from(2, 2, {{0, 0, 5, 1}}), parse_error);
    CHECK_THROWS_AS(tvg_from(2, 2, {{0, 0, 1, 7}}), parse_error);
  }
}

TEST_CASE("temporal bfs") {
  SUBCASE("no edges: only the source, at step 0") {
    auto g = TemporalGraph::from_edges(4, 3, {});
    auto steps = temporal_bfs(g, 2, 0);
    for (NodeId v = 0; v < 4; ++v) {
      if (v == 2) {
        CHECK(steps[v] == 0);
      } else {
        CHECK_FALSE(steps[v].has_value());
      }
    }
  }

  SUBCASE("two-hop path arrives at step 2") {
    auto g = tvg_from(3, 3, {{0, 0, 1, 1}, {1, 1, 2, 2}});
    auto steps = temporal_bfs(g, 0, 0);
    CHECK(steps[0] == 0);
    CHECK(steps[1] == 1);
    CHECK(steps[2] == 2);
  }

  SUBCASE("an edge earlier than the arrival is useless") {
    // 1 -> 2 departs at t0, but node 1 is only reached at t1.
    auto g = tvg_from(3, 3, {{0, 0, 1, 1}, {1, 0, 2, 1}});
    auto steps = temporal_bfs(g, 0, 0);
    CHECK(steps[1] == 1);
    CHECK_FALSE(steps[2].has_value());
  }

  SUBCASE("deferred delivery respects the arrive label") {
    auto g = tvg_from(2, 5, {{0, 0, 1, 4}});
    auto steps = temporal_bfs(g, 0, 0);
    CHECK(steps[1] == 4);
  }

  SUBCASE("random graphs agree with the (node,time) oracle") {
    Rng rng(derive_seed(31, "bfs-random"));
    for (int rep = 0; rep < 60; ++rep) {
      const std::size_t n = 2 + rng.next_below(11);   // up to 12 nodes
      const std::size_t times = 2 + rng.next_below(3);  // up to 4 instants
      std::vector<TemporalEdge> edges;
      std::vector<oracles::RawEdge> raw;
      const std::size_t count = rng.next_below(2 * n * times + 1);
      for (std::size_t i = 0; i < count; ++i) {
        TemporalEdge e;
        e.from = static_cast<NodeId>(rng.next_below(n));
        e.to = static_cast<NodeId>(rng.next_below(n));
        e.send = static_cast<TimeIndex>(rng.next_below(times - 1));
        e.arrive = e.send + 1 +
                   static_cast<TimeIndex>(rng.next_below(times - 1 - e.send));
        edges.push_back(e);
        raw.push_back({e.from, e.send, e.to, e.arrive});
      }
      auto g = TemporalGraph::from_edges(n, times, edges);
      const auto source = static_cast<NodeId>(rng.next_below(n));
      const auto start = static_cast<TimeIndex>(rng.next_below(times));
      auto got = temporal_bfs(g, source, start);
      auto want = oracles::reach_dp(n, times, raw, source, start);
      REQUIRE(got.size() == want.size());
      for (std::size_t v = 0; v < got.size(); ++v) {
        CHECK(got[v] == want[v]);
      }
    }
  }
}

TEST_CASE("diffusion diameter") {
  SUBCASE("complete static graph has diameter 1") {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < 5; ++u) {
      for (NodeId v = u + 1; v < 5; ++v) edges.emplace_back(u, v);
    }
    StaticNetwork net(5, edges);
    CHECK(diffusion_diameter(net.temporal(6), 0) == 1);
  }

  SUBCASE("edgeless graph is unreachable") {
    auto g = TemporalGraph::from_edges(3, 4, {});
    CHECK_FALSE(diffusion_diameter(g, 0).has_value());
  }

  SUBCASE("not enough instants also means unreachable") {
    // Path 0-1-2 needs two steps; a 2-instant horizon allows one.
    StaticNetwork net(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(diffusion_diameter(net.temporal(2), 0).has_value());
    CHECK(diffusion_diameter(net.temporal(3), 0) == 2);
  }

  SUBCASE("grows like lg n across a generated ladder") {
    std::vector<double> lgs, ds;
    for (std::uint32_t n : {250u, 500u, 1000u, 2000u}) {
      BaParams p{n, 3, 3, 21};
      auto net = generate_ba(p);
      auto d = diffusion_diameter(net.temporal(n), 0);
      REQUIRE(d.has_value());
      lgs.push_back(std::log2(static_cast<double>(n)));
      ds.push_back(static_cast<double>(*d));
    }
    // Least-squares d ~ a*lg n; every residual within 1.5 steps.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lgs.size(); ++i) {
      sx += lgs[i];
      sy += ds[i];
      sxx += lgs[i] * lgs[i];
      sxy += lgs[i] * ds[i];
    }
    const double a = sxy / sxx;  // through-origin fit
    (void)sx;
    (void)sy;
    for (std::size_t i = 0; i < lgs.size(); ++i) {
      CHECK(std::abs(ds[i] - a * lgs[i]) <= 1.5);
    }
  }
}

TEST_CASE("snapshots") {
  SUBCASE("static networks have identical lists at every instant") {
    StaticNetwork net(4, {{0, 1}, {1, 2}, {2, 3}});
    auto g = net.temporal(5);
    auto first = g.snapshot(0);
    for (TimeIndex t = 1; t + 1 < 5; ++t) CHECK(g.snapshot(t) == first);
    // The last instant has no successor to deliver to.
    for (const auto& list : g.snapshot(4)) CHECK(list.empty());
  }

  SUBCASE("empty edge set gives empty lists") {
    auto g = TemporalGraph::from_edges(3, 3, {});
    for (TimeIndex t = 0; t < 3; ++t) {
      for (const auto& list : g.snapshot(t)) CHECK(list.empty());
    }
  }

  SUBCASE("hand-built three-node graph matches hand enumeration") {
    auto g = tvg_from(3, 3, {{0, 0, 1, 1}, {1, 1, 2, 2}, {2, 1, 0, 2}});
    auto s0 = g.snapshot(0);
    CHECK(s0[0] == std::vector<NodeId>{1});
    CHECK(s0[1].empty());
    CHECK(s0[2].empty());
    auto s1 = g.snapshot(1);
    CHECK(s1[0].empty());
    CHECK(s1[1] == std::vector<NodeId>{2});
    CHECK(s1[2] == std::vector<NodeId>{0});
    CHECK_FALSE(g.is_static());
  }
}

TEST_CASE("graph interchange format") {
  SUBCASE("static round trip") {
    BaParams p{40, 2, 2, 13};
    auto net = generate_ba(p);
    const auto file = std::filesystem::temp_directory_path() / "bbnet_test.graph";
    save_static(net, file);
    auto loaded = load_graph(file);
    REQUIRE(loaded.kind == GraphFile::Kind::Static);
    CHECK(loaded.static_net.edges() == net.edges());
    std::filesystem::remove(file);
  }

  SUBCASE("tvg parsing with comments") {
    std::istringstream in(
        "# diffusion example\n"
        "tvg 3 3\n"
        "0 0 1 1\n"
        "1 1 2 2  # hop\n");
    auto loaded = load_graph(in, "<test>");
    REQUIRE(loaded.kind == GraphFile::Kind::Tvg);
    CHECK(loaded.tvg.node_count() == 3);
    CHECK(loaded.tvg.time_count() == 3);
    auto steps = temporal_bfs(loaded.tvg, 0, 0);
    CHECK(steps[2] == 2);
  }

  SUBCASE("malformed inputs raise parse errors") {
    std::istringstream bad_header("tvgg 3 3\n");
    CHECK_THROWS_AS(load_graph(bad_header, "<test>"), parse_error);
    std::istringstream bad_edge("tvg 2 2\n0 0 1\n");
    CHECK_THROWS_AS(load_graph(bad_edge, "<test>"), parse_error);
    std::istringstream backward("tvg 2 3\n0 2 1 0\n");
    CHECK_THROWS_AS(load_graph(backward, "<test>"), parse_error);
  }
}
