#include "mhvg/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhvg {

LayerGraph build_hvg(const std::vector<double>& values) {
  validate_series(values);
  const std::int64_t n = static_cast<std::int64_t>(values.size());
  LayerGraph g;
  g.adj.resize(n);

  auto add_edge = [&g](std::int64_t i, std::int64_t j) {
    g.adj[i].push_back(static_cast<NodeId>(j));
    g.adj[j].push_back(static_cast<NodeId>(i));
    ++g.num_edges;
  };

  // Rightward scan from each node. k tracks the offset of the largest
  // sample strictly between i and the scan point; a new edge target always
  // exceeds that maximum, so k only ever moves to just-linked offsets.
  // Once the running maximum reaches values[i] nothing further right can
  // see i and the scan stops, which keeps the construction near-linear on
  // non-monotone data.
  for (std::int64_t i = 0; i + 1 < n; ++i) {
    add_edge(i, i + 1);
    std::int64_t k = 1;
    for (std::int64_t j = 2; i + j < n; ++j) {
      const double blocker = values[i + k];
      if (blocker >= values[i]) break;
      if (blocker < values[i + j]) {
        add_edge(i, i + j);
        k = j;
      }
    }
  }

  // Ascending outer loop with ascending targets leaves every neighbor
  // list already sorted; no per-list sort needed.
  return g;
}

CrossGraph build_cross_hvg(const std::vector<double>& rescaled_a,
                           const std::vector<double>& rescaled_b) {
  validate_series(rescaled_a);
  validate_series(rescaled_b);
  if (rescaled_a.size() != rescaled_b.size()) {
    throw std::invalid_argument("build_cross_hvg: length mismatch");
  }
  const std::int64_t n = static_cast<std::int64_t>(rescaled_a.size());

  // Visibility between the layers is blocked by whichever series is
  // higher, so the scans compare against the pointwise maximum.
  std::vector<double> top(n);
  for (std::int64_t t = 0; t < n; ++t) {
    top[t] = std::max(rescaled_a[t], rescaled_b[t]);
  }

  CrossGraph g;
  g.a_to_b.resize(n);
  g.b_to_a.resize(n);
  auto add_edge = [&g](std::int64_t i, std::int64_t j) {
    g.a_to_b[i].push_back(static_cast<NodeId>(j));
    g.b_to_a[j].push_back(static_cast<NodeId>(i));
    ++g.num_edges;
  };

  // Unlike the intra case the blocking series (top) differs from the
  // target series (b), so the running-maximum offset k must also be
  // refreshed when a non-linked timestamp raises the maximum.
  for (std::int64_t i = 0; i + 1 < n; ++i) {  // a_i -> b_j, j > i
    add_edge(i, i + 1);
    std::int64_t k = i + 1;
    for (std::int64_t j = i + 2; j < n; ++j) {
      const double blocker = top[k];
      if (blocker >= rescaled_a[i]) break;
      if (blocker < rescaled_b[j]) {
        add_edge(i, j);
        k = j;
      } else if (blocker < top[j]) {
        k = j;
      }
    }
  }
  for (std::int64_t i = 1; i < n; ++i) {  // a_i -> b_j, j < i
    add_edge(i, i - 1);
    std::int64_t k = i - 1;
    for (std::int64_t j = i - 2; j >= 0; --j) {
      const double blocker = top[k];
      if (blocker >= rescaled_a[i]) break;
      if (blocker < rescaled_b[j]) {
        add_edge(i, j);
        k = j;
      } else if (blocker < top[j]) {
        k = j;
      }
    }
  }

  // The leftward pass appends targets in descending order; sort once.
  for (auto& list : g.a_to_b) std::sort(list.begin(), list.end());
  for (auto& list : g.b_to_a) std::sort(list.begin(), list.end());
  return g;
}

const LayerGraph& MultilayerNetwork::intra(int layer) const {
  if (layer < 0 || layer >= m_) {
    throw std::invalid_argument("layer index out of range");
  }
  return intra_[layer];
}

const CrossGraph& MultilayerNetwork::inter(int layer_a, int layer_b) const {
  if (layer_a < 0 || layer_b < 0 || layer_a >= m_ || layer_b >= m_ ||
      layer_a >= layer_b) {
    throw std::invalid_argument("invalid layer pair");
  }
  return inter_[pair_index(layer_a, layer_b, m_)];
}

int MultilayerNetwork::pair_index(int a, int b, int m) {
  // pairs (0,1), (0,2), ..., (0,m-1), (1,2), ... in lexicographic order
  return a * m - a * (a + 1) / 2 + (b - a - 1);
}

MultilayerNetwork build_mhvg(const MultiSeries& series) {
  MultilayerNetwork net;
  net.m_ = series.num_components();
  net.T_ = series.length();

  net.intra_.reserve(net.m_);
  for (int c = 0; c < net.m_; ++c) {
    net.intra_.push_back(build_hvg(series.component(c)));
  }

  std::vector<std::vector<double>> rescaled(net.m_);
  for (int c = 0; c < net.m_; ++c) {
    rescaled[c] = min_max_rescale(series.component(c));
  }
  net.inter_.reserve(static_cast<std::size_t>(net.m_) * (net.m_ - 1) / 2);
  for (int a = 0; a < net.m_; ++a) {
    for (int b = a + 1; b < net.m_; ++b) {
      net.inter_.push_back(build_cross_hvg(rescaled[a], rescaled[b]));
    }
  }
  return net;
}

SubgraphView SubgraphView::intra(const MultilayerNetwork& net, int layer) {
  if (layer < 0 || layer >= net.num_layers()) {
    throw std::invalid_argument("layer index out of range");
  }
  return SubgraphView(&net, ViewKind::Intra, layer, layer);
}

namespace {
void check_pair(const MultilayerNetwork& net, int& a, int& b) {
  if (a < 0 || b < 0 || a >= net.num_layers() || b >= net.num_layers() ||
      a == b) {
    throw std::invalid_argument("invalid layer pair");
  }
  if (a > b) std::swap(a, b);
}
}  // namespace

SubgraphView SubgraphView::inter(const MultilayerNetwork& net, int layer_a,
                                 int layer_b) {
  check_pair(net, layer_a, layer_b);
  return SubgraphView(&net, ViewKind::Inter, layer_a, layer_b);
}

SubgraphView SubgraphView::all(const MultilayerNetwork& net, int layer_a,
                               int layer_b) {
  check_pair(net, layer_a, layer_b);
  return SubgraphView(&net, ViewKind::All, layer_a, layer_b);
}

std::int64_t SubgraphView::num_edges() const {
  switch (kind_) {
    case ViewKind::Intra:
      return net_->intra(a_).num_edges;
    case ViewKind::Inter:
      return net_->inter(a_, b_).num_edges;
    case ViewKind::All:
      return net_->intra(a_).num_edges + net_->intra(b_).num_edges +
             net_->inter(a_, b_).num_edges;
  }
  return 0;
}

std::int64_t SubgraphView::degree(std::int64_t node) const {
  check_node(node);
  const std::int64_t T = net_->num_timestamps();
  switch (kind_) {
    case ViewKind::Intra:
      return static_cast<std::int64_t>(net_->intra(a_).adj[node].size());
    case ViewKind::Inter: {
      const CrossGraph& g = net_->inter(a_, b_);
      return node < T
                 ? static_cast<std::int64_t>(g.a_to_b[node].size())
                 : static_cast<std::int64_t>(g.b_to_a[node - T].size());
    }
    case ViewKind::All: {
      const CrossGraph& g = net_->inter(a_, b_);
      if (node < T) {
        return static_cast<std::int64_t>(net_->intra(a_).adj[node].size() +
                                         g.a_to_b[node].size());
      }
      return static_cast<std::int64_t>(net_->intra(b_).adj[node - T].size() +
                                       g.b_to_a[node - T].size());
    }
  }
  return 0;
}

}  // namespace mhvg
