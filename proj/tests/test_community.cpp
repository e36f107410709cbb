#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "mhvg/common.hpp"
#include "mhvg/community.hpp"
#include "mhvg/network.hpp"
#include "mhvg/series.hpp"
#include "oracles.hpp"

using mhvg::detail::EdgeList;
using mhvg::Partition;
using mhvg::build_mhvg;
using mhvg::MultiSeries;
using mhvg::SubgraphView;

namespace {

Partition make_partition(std::vector<std::int32_t> assignment) {
  Partition p;
  p.num_communities =
      *std::max_element(assignment.begin(), assignment.end());
  p.assignment = std::move(assignment);
  return p;
}

// Two triangles joined by a single bridge edge.
EdgeList two_triangles_bridged() {
  EdgeList g;
  g.num_nodes = 6;
  g.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}};
  return g;
}

EdgeList random_graph(std::uint64_t seed, std::int64_t n, double p) {
  mhvg::GaussianRng rng(seed);
  EdgeList g;
  g.num_nodes = n;
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) {
        g.edges.emplace_back(static_cast<mhvg::NodeId>(u),
                             static_cast<mhvg::NodeId>(v));
      }
    }
  }
  if (g.edges.empty()) g.edges = {{0, 1}};
  return g;
}

Partition random_partition(std::uint64_t seed, std::int64_t n,
                           std::int32_t max_communities) {
  mhvg::GaussianRng rng(seed);
  std::vector<std::int32_t> raw(n);
  for (auto& c : raw) {
    c = static_cast<std::int32_t>(rng.uniform() * max_communities);
  }
  // Relabel by first occurrence so ids are contiguous from 1.
  std::vector<std::int32_t> remap(max_communities, 0);
  std::int32_t next = 0;
  for (auto& c : raw) {
    if (remap[c] == 0) remap[c] = ++next;
    c = remap[c];
  }
  Partition p;
  p.assignment = std::move(raw);
  p.num_communities = next;
  return p;
}

}  // namespace

TEST_SUITE("community") {
  TEST_CASE("modularity: frozen hand-computed values") {
    const EdgeList g = two_triangles_bridged();
    // Triangle split: Q = 5/14.
    CHECK(mhvg::detail::modularity(g, make_partition({1, 1, 1, 2, 2, 2})) ==
          doctest::Approx(5.0 / 14.0).epsilon(1e-15));
    // Everything in one community: exactly zero.
    CHECK(mhvg::detail::modularity(g, make_partition({1, 1, 1, 1, 1, 1})) ==
          0.0);
    // Singletons on a 5-cycle: Q = -1/5.
    EdgeList ring;
    ring.num_nodes = 5;
    ring.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    CHECK(mhvg::detail::modularity(ring, make_partition({1, 2, 3, 4, 5})) ==
          doctest::Approx(-0.2).epsilon(1e-15));
    // Two disjoint triangles split by component: Q = 1/2.
    EdgeList disjoint;
    disjoint.num_nodes = 6;
    disjoint.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}};
    CHECK(mhvg::detail::modularity(disjoint,
                                   make_partition({1, 1, 1, 2, 2, 2})) ==
          doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("modularity of the all-in-one partition is exactly zero") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const EdgeList g = random_graph(seed, 30, 0.15);
      const Partition p = make_partition(
          std::vector<std::int32_t>(g.num_nodes, 1));
      CHECK(mhvg::detail::modularity(g, p) == 0.0);
    }
  }

  TEST_CASE("modularity agrees with the quadratic definition") {
    for (std::uint64_t seed = 30; seed <= 40; ++seed) {
      const EdgeList g = random_graph(seed, 25, 0.2);
      const Partition p = random_partition(seed + 100, g.num_nodes, 4);
      CHECK(mhvg::detail::modularity(g, p) ==
            doctest::Approx(oracle::direct_modularity(g, p)).epsilon(1e-12));
    }
  }

  TEST_CASE("modularity validates its inputs") {
    const EdgeList g = two_triangles_bridged();
    // Wrong size.
    CHECK_THROWS_AS(mhvg::detail::modularity(g, make_partition({1, 1, 1})),
                    std::invalid_argument);
    // Gap in community ids (2 missing).
    Partition gap;
    gap.assignment = {1, 1, 1, 3, 3, 3};
    gap.num_communities = 3;
    CHECK_THROWS_AS(mhvg::detail::modularity(g, gap), std::invalid_argument);
    // Id below 1.
    Partition low;
    low.assignment = {0, 1, 1, 1, 1, 1};
    low.num_communities = 1;
    CHECK_THROWS_AS(mhvg::detail::modularity(g, low), std::invalid_argument);
    // No edges at all.
    EdgeList empty;
    empty.num_nodes = 3;
    CHECK_THROWS_AS(
        mhvg::detail::modularity(empty, make_partition({1, 2, 3})),
        std::domain_error);
  }

  TEST_CASE("detection recovers planted structure") {
    const Partition p = mhvg::detail::louvain(two_triangles_bridged(), 0);
    CHECK(p.num_communities == 2);
    CHECK(p.assignment == std::vector<std::int32_t>{1, 1, 1, 2, 2, 2});

    EdgeList disjoint;
    disjoint.num_nodes = 6;
    disjoint.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}};
    const Partition q = mhvg::detail::louvain(disjoint, 0);
    CHECK(q.num_communities == 2);
    CHECK(mhvg::detail::modularity(disjoint, q) == doctest::Approx(0.5));
  }

  TEST_CASE("detection keeps a complete graph whole") {
    EdgeList k5;
    k5.num_nodes = 5;
    for (mhvg::NodeId u = 0; u < 5; ++u) {
      for (mhvg::NodeId v = u + 1; v < 5; ++v) k5.edges.emplace_back(u, v);
    }
    const Partition p = mhvg::detail::louvain(k5, 0);
    CHECK(p.num_communities == 1);
    CHECK(mhvg::detail::modularity(k5, p) == 0.0);
  }

  TEST_CASE("detected partitions use contiguous 1-based first-seen ids") {
    for (std::uint64_t seed = 50; seed <= 60; ++seed) {
      const EdgeList g = random_graph(seed, 40, 0.1);
      const Partition p = mhvg::detail::louvain(g, 0);
      REQUIRE(!p.assignment.empty());
      CHECK(p.assignment[0] == 1);
      std::int32_t seen_max = 0;
      for (const std::int32_t c : p.assignment) {
        CHECK(c >= 1);
        CHECK(c <= seen_max + 1);  // first occurrences appear in order
        seen_max = std::max(seen_max, c);
      }
      CHECK(seen_max == p.num_communities);
    }
  }

  TEST_CASE("detection is deterministic and never loses to singletons") {
    for (std::uint64_t seed = 70; seed <= 80; ++seed) {
      const EdgeList g = random_graph(seed, 35, 0.12);
      const Partition a = mhvg::detail::louvain(g, 0);
      const Partition b = mhvg::detail::louvain(g, 0);
      CHECK(a.assignment == b.assignment);

      std::vector<std::int32_t> singleton_ids(g.num_nodes);
      for (std::int64_t i = 0; i < g.num_nodes; ++i) {
        singleton_ids[i] = static_cast<std::int32_t>(i + 1);
      }
      const double q_single =
          mhvg::detail::modularity(g, make_partition(singleton_ids));
      CHECK(mhvg::detail::modularity(g, a) >= q_single);
    }
  }

  TEST_CASE("a non-zero seed shuffles the visit order but stays valid") {
    const EdgeList g = random_graph(7, 60, 0.08);
    const Partition a = mhvg::detail::louvain(g, 12345);
    const Partition b = mhvg::detail::louvain(g, 12345);
    CHECK(a.assignment == b.assignment);  // same seed, same answer
    const double q0 = mhvg::detail::modularity(g, mhvg::detail::louvain(g, 0));
    const double qs = mhvg::detail::modularity(g, a);
    CHECK(qs > -0.5);
    CHECK(std::abs(q0 - qs) < 0.2);  // both are sensible optima
  }

  TEST_CASE("view wrappers match the edge-list entry points") {
    mhvg::GaussianRng rng(17);
    std::vector<double> x(70), y(70);
    for (std::size_t t = 0; t < x.size(); ++t) {
      x[t] = rng.normal();
      y[t] = rng.normal();
    }
    const mhvg::MultilayerNetwork net =
        build_mhvg(MultiSeries({std::move(x), std::move(y)}));

    for (const SubgraphView& view :
         {SubgraphView::intra(net, 0), SubgraphView::inter(net, 0, 1),
          SubgraphView::all(net, 0, 1)}) {
      EdgeList g;
      g.num_nodes = view.num_nodes();
      for (std::int64_t u = 0; u < g.num_nodes; ++u) {
        view.for_each_neighbor(u, [&](std::int64_t v) {
          if (v > u) {
            g.edges.emplace_back(static_cast<mhvg::NodeId>(u),
                                 static_cast<mhvg::NodeId>(v));
          }
        });
      }
      const Partition from_view = mhvg::detect_communities(view);
      const Partition from_list = mhvg::detail::louvain(g, 0);
      CHECK(from_view.assignment == from_list.assignment);
      CHECK(mhvg::modularity(view, from_view) ==
            doctest::Approx(mhvg::detail::modularity(g, from_list))
                .epsilon(1e-15));

      const auto [s, q] = mhvg::s_and_q(view);
      CHECK(s == from_view.num_communities);
      CHECK(q == mhvg::modularity(view, from_view));
    }
  }

  TEST_CASE("partition quality on views stays within modularity bounds") {
    const mhvg::MultilayerNetwork net = build_mhvg(
        MultiSeries({{1.0, 3.0, 2.0, 4.0, 0.5, 2.5}, {5.0, 1.0, 4.0, 2.0, 6.0, 3.0}}));
    for (const SubgraphView& view :
         {SubgraphView::intra(net, 0), SubgraphView::all(net, 0, 1)}) {
      const auto [s, q] = mhvg::s_and_q(view);
      CHECK(s >= 1);
      CHECK(q >= -0.5);
      CHECK(q <= 1.0);
    }
  }
}
