#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mhvg {

/// A rows x columns table of feature values with named columns and an
/// optional string label per row (e.g. the generating model of each
/// instance). Values are stored row-major.
struct FeatureMatrix {
  std::vector<std::string> columns;
  std::vector<double> values;
  std::vector<std::string> labels;  ///< empty, or one label per row

  std::int64_t rows() const {
    return columns.empty()
               ? 0
               : static_cast<std::int64_t>(values.size() / columns.size());
  }
  int cols() const { return static_cast<int>(columns.size()); }
  double at(std::int64_t row, int col) const {
    return values[static_cast<std::size_t>(row) * columns.size() + col];
  }
};

/// Per-column Min-Max normalization to [0, 1]; constant columns map to 0.
FeatureMatrix normalize_features(const FeatureMatrix& m);

/// Principal components of the (column-centered, otherwise unscaled)
/// matrix. Components are ordered by descending explained variance and
/// each axis is oriented so that its largest-magnitude loading is
/// positive, which makes results reproducible across eigensolvers.
struct PcaResult {
  std::int64_t rows = 0;
  int dims = 0;
  std::vector<double> scores;     ///< rows x dims, row-major
  std::vector<double> loadings;   ///< dims x dims, row-major; column c is
                                  ///< the axis of component c
  std::vector<double> explained;  ///< variance per component, descending
};
PcaResult pca(const FeatureMatrix& m);

/// k-means with k-means++ seeding: `repetitions` independent restarts,
/// Lloyd iterations until assignments stabilize (at most 300), keeping the
/// restart with the lowest within-cluster sum of squares. Deterministic
/// for a given seed. `points` is n x dims row-major. Cluster ids are
/// 0-based. Throws std::invalid_argument if k < 1 or k > n.
struct KmeansResult {
  std::vector<std::int32_t> assignment;
  double inertia = 0;
};
KmeansResult kmeans(const std::vector<double>& points, std::int64_t n,
                    int dims, int k, std::uint64_t seed, int repetitions = 10);

/// Adjusted Rand index between two clusterings of the same items.
/// Invariant under relabeling of either side; 1 for identical
/// clusterings, ~0 for independent ones.
double adjusted_rand_index(const std::vector<std::int32_t>& x,
                           const std::vector<std::int32_t>& y);

/// Mutual information normalized by the arithmetic mean of the two
/// entropies. Two trivial (single-cluster) partitions count as identical
/// (1); if exactly one side is trivial the score is 0.
double normalized_mutual_information(const std::vector<std::int32_t>& x,
                                     const std::vector<std::int32_t>& y);

/// Mean silhouette over all points (Euclidean distances). Points in
/// singleton clusters contribute 0; a single-cluster assignment scores 0.
double silhouette_score(const std::vector<double>& points, std::int64_t n,
                        int dims, const std::vector<std::int32_t>& assignment);

/// Named column groups of the canonical feature vector used by the
/// clustering study: the intra-layer block, the inter-layer block, the
/// all-layer block, the relational block, and the full vector.
enum class FeatureSet { Intra, Inter, AllLayer, Relational, Full };

const char* to_string(FeatureSet set);
std::optional<FeatureSet> feature_set_from_string(std::string_view name);
const std::vector<FeatureSet>& all_feature_sets();
std::vector<std::string> feature_set_columns(FeatureSet set);

/// Encodes string labels as integer codes in order of first appearance.
std::vector<std::int32_t> encode_labels(const std::vector<std::string>& labels);

/// Outcome of clustering one feature set at one k.
struct ClusteringReport {
  FeatureSet feature_set = FeatureSet::Full;
  int k = 0;
  std::uint64_t seed = 0;  ///< sub-seed used for this configuration
  int repetitions = 0;
  std::vector<std::int32_t> assignment;
  double inertia = 0;
  double silhouette = 0;
  bool has_reference = false;  ///< true when the matrix carried labels
  double ari = 0;
  double nmi = 0;
};

/// The full protocol for every (feature set, k) combination: select the
/// set's columns, Min-Max normalize them, project onto all principal
/// components, run seeded k-means, and score the result (silhouette
/// always; ARI/NMI against the row labels when present). Sub-seeds are
/// derived per combination so single runs can be reproduced in isolation.
std::vector<ClusteringReport> run_study(const FeatureMatrix& features,
                                        const std::vector<FeatureSet>& sets,
                                        const std::vector<int>& k_values,
                                        std::uint64_t seed,
                                        int repetitions = 10);

}  // namespace mhvg
