#include "mhvg/community.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mhvg/common.hpp"

namespace mhvg {

namespace {

void validate_partition(std::int64_t num_nodes, const Partition& p) {
  if (static_cast<std::int64_t>(p.assignment.size()) != num_nodes) {
    throw std::invalid_argument("partition size does not match node count");
  }
  if (p.num_communities < 1) {
    throw std::invalid_argument("partition must have >= 1 community");
  }
  std::vector<std::int64_t> sizes(p.num_communities, 0);
  for (std::int32_t c : p.assignment) {
    if (c < 1 || c > p.num_communities) {
      throw std::invalid_argument("community ids must lie in [1, S]");
    }
    ++sizes[c - 1];
  }
  for (std::int64_t s : sizes) {
    if (s == 0) {
      throw std::invalid_argument("community ids must be contiguous from 1");
    }
  }
}

detail::EdgeList view_to_edge_list(const SubgraphView& view) {
  detail::EdgeList g;
  g.num_nodes = view.num_nodes();
  g.edges.reserve(view.num_edges());
  for (std::int64_t u = 0; u < g.num_nodes; ++u) {
    view.for_each_neighbor(u, [&g, u](std::int64_t v) {
      if (v > u) {
        g.edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
      }
    });
  }
  return g;
}

// Weighted graph in CSR form, the working representation for the
// multilevel optimization. Self loops (which appear once communities are
// collapsed) are kept out of the neighbor lists; a self loop of weight w
// contributes 2w to the node's weighted degree.
struct WGraph {
  std::int64_t n = 0;
  std::vector<std::int64_t> offsets;
  std::vector<std::int32_t> nbr;
  std::vector<double> wgt;
  std::vector<double> self_loop;
  std::vector<double> wdeg;
  double total2 = 0;  // sum of weighted degrees == 2W

  void finish_degrees() {
    wdeg.assign(n, 0.0);
    for (std::int64_t u = 0; u < n; ++u) {
      double d = 2.0 * self_loop[u];
      for (std::int64_t e = offsets[u]; e < offsets[u + 1]; ++e) d += wgt[e];
      wdeg[u] = d;
    }
    total2 = std::accumulate(wdeg.begin(), wdeg.end(), 0.0);
  }
};

WGraph from_edge_list(const detail::EdgeList& g) {
  WGraph w;
  w.n = g.num_nodes;
  w.offsets.assign(w.n + 1, 0);
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= w.n || v >= w.n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) {
      throw std::invalid_argument("self loops are not allowed in the input");
    }
    ++w.offsets[u + 1];
    ++w.offsets[v + 1];
  }
  for (std::int64_t i = 0; i < w.n; ++i) w.offsets[i + 1] += w.offsets[i];
  w.nbr.resize(w.offsets[w.n]);
  w.wgt.assign(w.offsets[w.n], 1.0);
  std::vector<std::int64_t> cursor(w.offsets.begin(), w.offsets.end() - 1);
  for (const auto& [u, v] : g.edges) {
    w.nbr[cursor[u]++] = v;
    w.nbr[cursor[v]++] = u;
  }
  w.self_loop.assign(w.n, 0.0);
  w.finish_degrees();
  return w;
}

// One round of local moving. comm[] holds current community labels
// (initially the node ids). Returns true if at least one node moved.
bool local_move(const WGraph& g, std::vector<std::int32_t>& comm,
                std::uint64_t seed) {
  const double min_gain = 1e-9;
  std::vector<double> sigma_tot(g.n, 0.0);
  for (std::int64_t i = 0; i < g.n; ++i) sigma_tot[comm[i]] += g.wdeg[i];

  std::vector<std::int32_t> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  if (seed != 0) {
    // optional shuffled visiting order for sensitivity experiments
    std::uint64_t state = seed;
    for (std::int64_t i = g.n - 1; i > 0; --i) {
      const std::int64_t j =
          static_cast<std::int64_t>(splitmix64(state) % (i + 1));
      std::swap(order[i], order[j]);
    }
  }

  std::vector<double> nb_weight(g.n, 0.0);
  std::vector<std::int32_t> touched;
  touched.reserve(64);

  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::int32_t idx = 0; idx < g.n; ++idx) {
      const std::int32_t i = order[idx];
      const std::int32_t home = comm[i];

      touched.clear();
      for (std::int64_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e) {
        const std::int32_t c = comm[g.nbr[e]];
        if (nb_weight[c] == 0.0) touched.push_back(c);
        nb_weight[c] += g.wgt[e];
      }

      const double ki = g.wdeg[i];
      sigma_tot[home] -= ki;

      // Gain of joining community c, relative terms only (the parts
      // independent of c cancel when comparing candidates):
      //   k_{i,c} - sigma_tot(c) * k_i / 2W.
      const double home_gain =
          nb_weight[home] - sigma_tot[home] * ki / g.total2;
      double best_gain = home_gain;
      std::int32_t best = home;
      for (const std::int32_t c : touched) {
        if (c == home) continue;
        const double gain = nb_weight[c] - sigma_tot[c] * ki / g.total2;
        if (gain > best_gain || (gain == best_gain && c < best)) {
          best_gain = gain;
          best = c;
        }
      }

      // Convert to an actual modularity delta before thresholding.
      const double delta_q = (best_gain - home_gain) / (g.total2 / 2.0);
      if (best != home && delta_q > min_gain) {
        comm[i] = best;
        sigma_tot[best] += ki;
        moved = true;
        any_move = true;
      } else {
        sigma_tot[home] += ki;
      }

      for (const std::int32_t c : touched) nb_weight[c] = 0.0;
    }
  }
  return any_move;
}

// Renumbers arbitrary labels to 0..k-1 preserving label order; returns k.
std::int32_t compact_labels(std::vector<std::int32_t>& labels) {
  std::vector<std::int32_t> sorted(labels);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::int32_t> remap(
      sorted.empty() ? 0 : sorted.back() + 1, -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) remap[sorted[i]] = i;
  for (auto& l : labels) l = remap[l];
  return static_cast<std::int32_t>(sorted.size());
}

WGraph aggregate(const WGraph& g, const std::vector<std::int32_t>& comm,
                 std::int32_t num_comm) {
  // Bucket members per community.
  std::vector<std::int64_t> count(num_comm + 1, 0);
  for (std::int64_t i = 0; i < g.n; ++i) ++count[comm[i] + 1];
  for (std::int32_t c = 0; c < num_comm; ++c) count[c + 1] += count[c];
  std::vector<std::int32_t> members(g.n);
  {
    std::vector<std::int64_t> cursor(count.begin(), count.end() - 1);
    for (std::int64_t i = 0; i < g.n; ++i) {
      members[cursor[comm[i]]++] = static_cast<std::int32_t>(i);
    }
  }

  WGraph out;
  out.n = num_comm;
  out.offsets.assign(num_comm + 1, 0);
  out.self_loop.assign(num_comm, 0.0);

  std::vector<double> acc(num_comm, 0.0);
  std::vector<std::int32_t> touched;
  std::vector<std::vector<std::pair<std::int32_t, double>>> rows(num_comm);

  for (std::int32_t c = 0; c < num_comm; ++c) {
    touched.clear();
    double internal = 0.0;  // each internal edge seen from both ends
    double self_carry = 0.0;
    for (std::int64_t m = count[c]; m < count[c + 1]; ++m) {
      const std::int32_t i = members[m];
      self_carry += g.self_loop[i];
      for (std::int64_t e = g.offsets[i]; e < g.offsets[i + 1]; ++e) {
        const std::int32_t cj = comm[g.nbr[e]];
        if (cj == c) {
          internal += g.wgt[e];
        } else {
          if (acc[cj] == 0.0) touched.push_back(cj);
          acc[cj] += g.wgt[e];
        }
      }
    }
    out.self_loop[c] = self_carry + internal / 2.0;
    std::sort(touched.begin(), touched.end());
    rows[c].reserve(touched.size());
    for (const std::int32_t cj : touched) {
      rows[c].emplace_back(cj, acc[cj]);
      acc[cj] = 0.0;
    }
  }

  for (std::int32_t c = 0; c < num_comm; ++c) {
    out.offsets[c + 1] = out.offsets[c] + rows[c].size();
  }
  out.nbr.resize(out.offsets[num_comm]);
  out.wgt.resize(out.offsets[num_comm]);
  for (std::int32_t c = 0; c < num_comm; ++c) {
    std::int64_t pos = out.offsets[c];
    for (const auto& [cj, wv] : rows[c]) {
      out.nbr[pos] = cj;
      out.wgt[pos] = wv;
      ++pos;
    }
  }
  out.finish_degrees();
  return out;
}

// Final ids: contiguous from 1, ordered by first appearance over nodes.
Partition to_partition(std::vector<std::int32_t> labels) {
  Partition p;
  std::vector<std::int32_t> remap(labels.size(), -1);
  std::int32_t next = 0;
  p.assignment.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (remap[labels[i]] < 0) remap[labels[i]] = next++;
    p.assignment[i] = remap[labels[i]] + 1;
  }
  p.num_communities = next;
  return p;
}

}  // namespace

namespace detail {

double modularity(const EdgeList& graph, const Partition& partition) {
  validate_partition(graph.num_nodes, partition);
  if (graph.edges.empty()) {
    throw std::domain_error("modularity undefined on an empty edge set");
  }
  const double two_e = 2.0 * static_cast<double>(graph.edges.size());
  std::vector<double> internal2(partition.num_communities, 0.0);
  std::vector<double> deg_sum(partition.num_communities, 0.0);
  for (const auto& [u, v] : graph.edges) {
    const std::int32_t cu = partition.assignment[u] - 1;
    const std::int32_t cv = partition.assignment[v] - 1;
    deg_sum[cu] += 1.0;
    deg_sum[cv] += 1.0;
    if (cu == cv) internal2[cu] += 2.0;
  }
  double q_num = 0.0;
  for (std::int32_t c = 0; c < partition.num_communities; ++c) {
    q_num += internal2[c] - deg_sum[c] * deg_sum[c] / two_e;
  }
  return q_num / two_e;
}

Partition louvain(const EdgeList& graph, std::uint64_t seed) {
  if (graph.num_nodes < 1) {
    throw std::invalid_argument("louvain: graph has no nodes");
  }
  WGraph g = from_edge_list(graph);

  std::vector<std::int32_t> node_comm(g.n);
  std::iota(node_comm.begin(), node_comm.end(), 0);

  while (true) {
    std::vector<std::int32_t> comm(g.n);
    std::iota(comm.begin(), comm.end(), 0);
    const bool improved = local_move(g, comm, seed);
    if (!improved) break;
    const std::int32_t num_comm = compact_labels(comm);
    for (auto& c : node_comm) c = comm[c];
    if (num_comm == g.n) break;  // nothing merged, a fixed point
    g = aggregate(g, comm, num_comm);
  }
  return to_partition(std::move(node_comm));
}

}  // namespace detail

double modularity(const SubgraphView& view, const Partition& partition) {
  return detail::modularity(view_to_edge_list(view), partition);
}

Partition detect_communities(const SubgraphView& view, std::uint64_t seed) {
  return detail::louvain(view_to_edge_list(view), seed);
}

std::pair<std::int32_t, double> s_and_q(const SubgraphView& view,
                                        std::uint64_t seed) {
  const Partition p = detect_communities(view, seed);
  return {p.num_communities, modularity(view, p)};
}

}  // namespace mhvg
