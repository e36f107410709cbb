#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mhvg/network.hpp"

namespace mhvg {

/// Node -> community assignment. Community ids are contiguous and start
/// at 1; every node belongs to exactly one community.
struct Partition {
  std::vector<std::int32_t> assignment;
  std::int32_t num_communities = 0;
};

/// Newman modularity of `partition` on the view's own edges:
///   Q = (1 / 2E) * sum_ij [A_ij - k_i k_j / 2E] delta(c_i, c_j).
/// Throws std::invalid_argument if the partition does not cover the view's
/// nodes with contiguous, non-empty communities.
double modularity(const SubgraphView& view, const Partition& partition);

/// Multilevel greedy modularity optimization (Louvain). Deterministic:
/// nodes are visited in ascending id order, a move is accepted only when
/// its modularity gain exceeds 1e-9, and gain ties prefer the smallest
/// community id. Passing a non-zero seed switches to a shuffled visiting
/// order for sensitivity checks; the default (0) keeps the canonical
/// order. The result never has lower modularity than all-singletons.
Partition detect_communities(const SubgraphView& view, std::uint64_t seed = 0);

/// Convenience: (number of communities, modularity) of the detected
/// partition, with the modularity recomputed independently on the view.
std::pair<std::int32_t, double> s_and_q(const SubgraphView& view,
                                        std::uint64_t seed = 0);

namespace detail {

/// Plain undirected graph given as an edge list (no self loops, no
/// duplicates). Graph-level entry points shared by the view wrappers;
/// exposed so the algorithms can be exercised on hand-built graphs.
struct EdgeList {
  std::int64_t num_nodes = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
};

double modularity(const EdgeList& graph, const Partition& partition);
Partition louvain(const EdgeList& graph, std::uint64_t seed);

}  // namespace detail

}  // namespace mhvg
