#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mhvg/network.hpp"

namespace mhvg {

/// Empirical degree distribution of one layer inside a view. Probabilities
/// are counts divided by the source layer's node count, so they sum to 1.
struct DegreeDistribution {
  std::vector<std::int64_t> degrees;  ///< sorted distinct degree values
  std::vector<double> probs;          ///< same length as degrees
  std::int64_t normalizer = 0;        ///< node count of the source layer
};

/// Mean degree over all nodes of the view (2E / N).
double average_degree(const SubgraphView& view);

/// Distribution of the view-degrees of `source_layer`'s nodes:
/// intra degrees in an Intra view, cross degrees in an Inter view, and
/// their sum in an All view. `source_layer` must be one of the view's
/// layers.
DegreeDistribution degree_distribution(const SubgraphView& view,
                                       int source_layer);

/// Mean shortest-path distance over all ordered node pairs of the view,
/// following the view's own edges only (exact BFS from every node).
/// Throws std::domain_error if the view is disconnected.
double average_path_length(const SubgraphView& view);

/// Mean over `source_layer`'s nodes of (cross degree towards `other_layer`)
/// divided by (own intra degree). Intra degrees are always >= 1, so the
/// ratio is well defined. Asymmetric in its arguments.
double average_ratio_degree(const MultilayerNetwork& net, int source_layer,
                            int other_layer);

/// Jensen-Shannon divergence (base 2) between two degree distributions,
/// evaluated over the union of their supports. Symmetric, in [0, 1].
double jensen_shannon_divergence(const DegreeDistribution& p,
                                 const DegreeDistribution& q);

inline constexpr int kNumFeatures = 21;

/// The canonical per-pair feature vector: global topology of the two intra
/// views, the inter view and the all view (average degree, average path
/// length, number of communities, modularity), plus the relational
/// features (average ratio degrees and the Jensen-Shannon divergences
/// between the layers' degree distributions).
struct FeatureVector {
  double avg_degree_a = 0, avg_degree_b = 0, avg_degree_inter = 0;
  double path_length_a = 0, path_length_b = 0, path_length_inter = 0;
  double communities_a = 0, communities_b = 0, communities_inter = 0;
  double modularity_a = 0, modularity_b = 0, modularity_inter = 0;
  double avg_degree_all = 0;
  double path_length_all = 0;
  double communities_all = 0;
  double modularity_all = 0;
  double ratio_degree_ab = 0, ratio_degree_ba = 0;
  double jsd_intra = 0, jsd_inter = 0, jsd_all = 0;

  /// Values in canonical column order (see feature_names()).
  std::array<double, kNumFeatures> to_array() const;
};

/// Canonical column names, aligned with FeatureVector::to_array().
const std::array<const char*, kNumFeatures>& feature_names();

/// Computes the full feature vector for one layer pair (defaults to the
/// first two layers). Community detection is deterministic, so equal
/// networks give equal vectors. Throws std::domain_error if a view is
/// disconnected (path lengths would be undefined).
FeatureVector feature_vector(const MultilayerNetwork& net, int layer_a = 0,
                             int layer_b = 1);

}  // namespace mhvg
