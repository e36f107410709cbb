#include "mhvg/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mhvg/community.hpp"

namespace mhvg {

double average_degree(const SubgraphView& view) {
  return 2.0 * static_cast<double>(view.num_edges()) /
         static_cast<double>(view.num_nodes());
}

DegreeDistribution degree_distribution(const SubgraphView& view,
                                       int source_layer) {
  if (source_layer != view.layer_a() && source_layer != view.layer_b()) {
    throw std::invalid_argument(
        "degree_distribution: layer is not part of the view");
  }
  const std::int64_t T = view.network().num_timestamps();
  // In two-layer views layer_a occupies ids [0, T) and layer_b [T, 2T);
  // an intra view holds only its own layer.
  const std::int64_t base =
      (view.kind() != ViewKind::Intra && source_layer == view.layer_b()) ? T
                                                                         : 0;

  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t i = 0; i < T; ++i) ++counts[view.degree(base + i)];

  DegreeDistribution dist;
  dist.normalizer = T;
  dist.degrees.reserve(counts.size());
  dist.probs.reserve(counts.size());
  for (const auto& [degree, count] : counts) {
    dist.degrees.push_back(degree);
    dist.probs.push_back(static_cast<double>(count) / static_cast<double>(T));
  }
  return dist;
}

namespace {

// Flat CSR copy of a view; BFS over vector<vector<>> adjacency pays an
// indirection per neighbor, and average_path_length visits every edge from
// every source, so the one-off flatten is worth it.
struct FlatGraph {
  std::vector<std::int64_t> offsets;
  std::vector<NodeId> neighbors;
};

FlatGraph flatten(const SubgraphView& view) {
  const std::int64_t n = view.num_nodes();
  FlatGraph g;
  g.offsets.assign(n + 1, 0);
  for (std::int64_t u = 0; u < n; ++u) g.offsets[u + 1] = view.degree(u);
  for (std::int64_t u = 0; u < n; ++u) g.offsets[u + 1] += g.offsets[u];
  g.neighbors.resize(g.offsets[n]);
  std::int64_t pos = 0;
  for (std::int64_t u = 0; u < n; ++u) {
    view.for_each_neighbor(u, [&g, &pos](std::int64_t v) {
      g.neighbors[pos++] = static_cast<NodeId>(v);
    });
  }
  return g;
}

}  // namespace

double average_path_length(const SubgraphView& view) {
  const std::int64_t n = view.num_nodes();
  const FlatGraph g = flatten(view);

  std::vector<std::int32_t> dist(n);
  std::vector<NodeId> queue(n);
  unsigned long long total = 0;

  for (std::int64_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue[0] = static_cast<NodeId>(s);
    std::int64_t head = 0, tail = 1;
    unsigned long long from_s = 0;
    while (head < tail) {
      const NodeId u = queue[head++];
      const std::int32_t du = dist[u];
      for (std::int64_t e = g.offsets[u]; e < g.offsets[u + 1]; ++e) {
        const NodeId v = g.neighbors[e];
        if (dist[v] < 0) {
          dist[v] = du + 1;
          from_s += static_cast<unsigned long long>(du) + 1;
          queue[tail++] = v;
        }
      }
    }
    if (tail != n) {
      throw std::domain_error(
          "average_path_length: view is disconnected, distances undefined");
    }
    total += from_s;
  }
  return static_cast<double>(total) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

double average_ratio_degree(const MultilayerNetwork& net, int source_layer,
                            int other_layer) {
  if (source_layer == other_layer) {
    throw std::invalid_argument("average_ratio_degree: layers must differ");
  }
  const int lo = std::min(source_layer, other_layer);
  const int hi = std::max(source_layer, other_layer);
  const CrossGraph& cross = net.inter(lo, hi);  // validates the pair
  const LayerGraph& intra = net.intra(source_layer);
  const bool source_is_a = source_layer == lo;

  const std::int64_t T = net.num_timestamps();
  double sum = 0.0;
  for (std::int64_t i = 0; i < T; ++i) {
    const double cross_deg = static_cast<double>(
        source_is_a ? cross.a_to_b[i].size() : cross.b_to_a[i].size());
    // intra degree >= 1 always: consecutive timestamps are connected
    sum += cross_deg / static_cast<double>(intra.adj[i].size());
  }
  return sum / static_cast<double>(T);
}

double jensen_shannon_divergence(const DegreeDistribution& p,
                                 const DegreeDistribution& q) {
  // Walk the union of the supports in sorted order; absent degrees have
  // probability 0 and contribute nothing to their side's sum.
  const double log2_factor = 1.0 / std::log(2.0);
  double kl_pm = 0.0;  // KL(p || m), m = (p + q) / 2
  double kl_qm = 0.0;
  std::size_t ip = 0, iq = 0;
  while (ip < p.degrees.size() || iq < q.degrees.size()) {
    double pp = 0.0, qq = 0.0;
    std::int64_t dp = ip < p.degrees.size() ? p.degrees[ip] : 0;
    std::int64_t dq = iq < q.degrees.size() ? q.degrees[iq] : 0;
    if (iq >= q.degrees.size() || (ip < p.degrees.size() && dp < dq)) {
      pp = p.probs[ip++];
    } else if (ip >= p.degrees.size() || dq < dp) {
      qq = q.probs[iq++];
    } else {
      pp = p.probs[ip++];
      qq = q.probs[iq++];
    }
    const double m = 0.5 * (pp + qq);
    if (pp > 0.0) kl_pm += pp * std::log(pp / m) * log2_factor;
    if (qq > 0.0) kl_qm += qq * std::log(qq / m) * log2_factor;
  }
  return 0.5 * kl_pm + 0.5 * kl_qm;
}

std::array<double, kNumFeatures> FeatureVector::to_array() const {
  return {avg_degree_a,    avg_degree_b,    avg_degree_inter,
          path_length_a,   path_length_b,   path_length_inter,
          communities_a,   communities_b,   communities_inter,
          modularity_a,    modularity_b,    modularity_inter,
          avg_degree_all,  path_length_all, communities_all,
          modularity_all,  ratio_degree_ab, ratio_degree_ba,
          jsd_intra,       jsd_inter,       jsd_all};
}

const std::array<const char*, kNumFeatures>& feature_names() {
  static const std::array<const char*, kNumFeatures> names = {
      "kbar_1",       "kbar_2",       "kbar_12",  "dbar_1",   "dbar_2",
      "dbar_12",      "S_1",          "S_2",      "S_12",     "Q_1",
      "Q_2",          "Q_12",         "kbar_12_all", "dbar_12_all",
      "S_12_all",     "Q_12_all",     "rbar_1_2", "rbar_2_1", "jsd_intra",
      "jsd_inter",    "jsd_all"};
  return names;
}

FeatureVector feature_vector(const MultilayerNetwork& net, int layer_a,
                             int layer_b) {
  if (layer_a >= layer_b) {
    throw std::invalid_argument("feature_vector: need layer_a < layer_b");
  }
  const SubgraphView va = SubgraphView::intra(net, layer_a);
  const SubgraphView vb = SubgraphView::intra(net, layer_b);
  const SubgraphView vi = SubgraphView::inter(net, layer_a, layer_b);
  const SubgraphView vall = SubgraphView::all(net, layer_a, layer_b);

  FeatureVector f;
  f.avg_degree_a = average_degree(va);
  f.avg_degree_b = average_degree(vb);
  f.avg_degree_inter = average_degree(vi);
  f.avg_degree_all = average_degree(vall);

  f.path_length_a = average_path_length(va);
  f.path_length_b = average_path_length(vb);
  f.path_length_inter = average_path_length(vi);
  f.path_length_all = average_path_length(vall);

  const auto [s_a, q_a] = s_and_q(va);
  const auto [s_b, q_b] = s_and_q(vb);
  const auto [s_i, q_i] = s_and_q(vi);
  const auto [s_all, q_all] = s_and_q(vall);
  f.communities_a = s_a;
  f.communities_b = s_b;
  f.communities_inter = s_i;
  f.communities_all = s_all;
  f.modularity_a = q_a;
  f.modularity_b = q_b;
  f.modularity_inter = q_i;
  f.modularity_all = q_all;

  f.ratio_degree_ab = average_ratio_degree(net, layer_a, layer_b);
  f.ratio_degree_ba = average_ratio_degree(net, layer_b, layer_a);

  f.jsd_intra = jensen_shannon_divergence(degree_distribution(va, layer_a),
                                          degree_distribution(vb, layer_b));
  f.jsd_inter = jensen_shannon_divergence(degree_distribution(vi, layer_a),
                                          degree_distribution(vi, layer_b));
  f.jsd_all = jensen_shannon_divergence(degree_distribution(vall, layer_a),
                                        degree_distribution(vall, layer_b));
  return f;
}

}  // namespace mhvg
