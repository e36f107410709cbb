#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mhvg/series.hpp"

namespace mhvg {

using NodeId = std::int32_t;

/// Horizontal visibility graph of one component. Nodes are timestamps
/// 0..T-1; (i, j) is an edge iff every sample strictly between them lies
/// strictly below both endpoints (ties block visibility). Consecutive
/// timestamps are always connected, so the graph is connected.
/// Neighbor lists are sorted ascending.
struct LayerGraph {
  std::vector<std::vector<NodeId>> adj;
  std::int64_t num_edges = 0;
};

/// Cross-visibility between two rescaled components a and b: the edge
/// (i_a, j_b), i != j, exists iff both endpoints lie strictly above
/// max(a[t], b[t]) at every timestamp t strictly between i and j.
/// Timestamps adjacent in time are always mutually visible; equal
/// timestamps are never linked. Neighbor lists are sorted ascending.
struct CrossGraph {
  std::vector<std::vector<NodeId>> a_to_b;  ///< neighbors in b of node i_a
  std::vector<std::vector<NodeId>> b_to_a;  ///< neighbors in a of node j_b
  std::int64_t num_edges = 0;
};

/// Builds the horizontal visibility graph of a raw component.
/// Near-linear in practice: the scan from each node stops as soon as an
/// intermediate sample at or above the node's own value is reached.
LayerGraph build_hvg(const std::vector<double>& values);

/// Builds the cross-visibility graph of two Min-Max rescaled components
/// (equal length, values in [0, 1]).
CrossGraph build_cross_hvg(const std::vector<double>& rescaled_a,
                           const std::vector<double>& rescaled_b);

/// The multilayer graph of a multivariate series: one intra layer per
/// component (visibility on the raw values) and one cross graph per
/// unordered component pair (visibility on the rescaled values, so that
/// components with different scales are comparable).
class MultilayerNetwork {
 public:
  MultilayerNetwork() = default;

  int num_layers() const { return m_; }
  std::int64_t num_timestamps() const { return T_; }

  const LayerGraph& intra(int layer) const;

  /// Cross graph of the pair (layer_a, layer_b); requires layer_a < layer_b.
  const CrossGraph& inter(int layer_a, int layer_b) const;

  /// Lexicographic index of the pair (a, b), a < b, among all m-choose-2.
  static int pair_index(int a, int b, int m);

 private:
  friend MultilayerNetwork build_mhvg(const MultiSeries& series);

  int m_ = 0;
  std::int64_t T_ = 0;
  std::vector<LayerGraph> intra_;
  std::vector<CrossGraph> inter_;
};

MultilayerNetwork build_mhvg(const MultiSeries& series);

enum class ViewKind { Intra, Inter, All };

/// A read-only window onto one block of the multilayer network:
///   Intra  — one layer's visibility graph (T nodes);
///   Inter  — only the cross edges of a layer pair (2T nodes);
///   All    — both layers' intra edges plus their cross edges (2T nodes).
/// In two-layer views node ids [0, T) are layer_a and [T, 2T) are layer_b.
/// Views borrow the network; the network must outlive them.
class SubgraphView {
 public:
  static SubgraphView intra(const MultilayerNetwork& net, int layer);
  static SubgraphView inter(const MultilayerNetwork& net, int layer_a,
                            int layer_b);
  static SubgraphView all(const MultilayerNetwork& net, int layer_a,
                          int layer_b);

  ViewKind kind() const { return kind_; }
  int layer_a() const { return a_; }
  int layer_b() const { return b_; }
  const MultilayerNetwork& network() const { return *net_; }

  std::int64_t num_nodes() const {
    return kind_ == ViewKind::Intra ? net_->num_timestamps()
                                    : 2 * net_->num_timestamps();
  }

  std::int64_t num_edges() const;
  std::int64_t degree(std::int64_t node) const;

  /// Calls f(v) for every neighbor of `node`, in ascending id order.
  template <typename F>
  void for_each_neighbor(std::int64_t node, F&& f) const {
    check_node(node);
    const std::int64_t T = net_->num_timestamps();
    switch (kind_) {
      case ViewKind::Intra:
        for (NodeId v : net_->intra(a_).adj[node]) {
          f(static_cast<std::int64_t>(v));
        }
        break;
      case ViewKind::Inter: {
        const CrossGraph& g = net_->inter(a_, b_);
        if (node < T) {
          for (NodeId v : g.a_to_b[node]) f(T + v);
        } else {
          for (NodeId v : g.b_to_a[node - T]) f(static_cast<std::int64_t>(v));
        }
        break;
      }
      case ViewKind::All: {
        const CrossGraph& g = net_->inter(a_, b_);
        if (node < T) {
          for (NodeId v : net_->intra(a_).adj[node]) {
            f(static_cast<std::int64_t>(v));
          }
          for (NodeId v : g.a_to_b[node]) f(T + v);
        } else {
          for (NodeId v : g.b_to_a[node - T]) f(static_cast<std::int64_t>(v));
          for (NodeId v : net_->intra(b_).adj[node - T]) f(T + v);
        }
        break;
      }
    }
  }

 private:
  SubgraphView(const MultilayerNetwork* net, ViewKind kind, int a, int b)
      : net_(net), kind_(kind), a_(a), b_(b) {}

  void check_node(std::int64_t node) const {
    if (node < 0 || node >= num_nodes()) {
      throw std::invalid_argument("node id out of range for subgraph view");
    }
  }

  const MultilayerNetwork* net_;
  ViewKind kind_;
  int a_;
  int b_;
};

}  // namespace mhvg
