#pragma once

#include <string>

#include "mhvg/community.hpp"
#include "mhvg/mining.hpp"
#include "mhvg/network.hpp"
#include "mhvg/series.hpp"

namespace mhvg {

/// Reads a whole file; throws IoError on failure.
std::string read_file(const std::string& path);

/// Writes `content` to `path` atomically: the data goes to a temporary
/// file in the same directory which is then renamed over the target, so a
/// failed run never leaves a partial artifact behind.
void atomic_write_file(const std::string& path, const std::string& content);

/// Reads a multivariate series from CSV: one column per component, one row
/// per timestamp. A header row is detected by checking whether the first
/// cell parses as a number. Throws FormatError (with the line number) on
/// malformed content, IoError on read failure.
MultiSeries read_series_csv(const std::string& path);

/// Serializes a series to CSV with a "y1,y2,..." header. Values are
/// printed with 17 significant digits so a write/read round trip is exact.
std::string series_csv_string(const MultiSeries& series);
void write_series_csv(const MultiSeries& series, const std::string& path);

/// Reads a feature matrix from CSV. The header row is required; a final
/// column named "label" is read as the row labels.
FeatureMatrix read_feature_csv(const std::string& path);

/// Serializes a feature matrix (labels become a trailing "label" column).
std::string feature_csv_string(const FeatureMatrix& m);
void write_feature_csv(const FeatureMatrix& m, const std::string& path);

/// Edge list as text lines "layer_i node_i layer_j node_j" with 1-based
/// ids. Intra blocks come first (by layer), then cross blocks (by layer
/// pair, lexicographic); within a block edges are sorted, each listed once.
std::string edge_list_string(const MultilayerNetwork& net);
void write_edge_list(const MultilayerNetwork& net, const std::string& path);

/// Block summary as JSON: {"m", "T", "intra_edge_counts",
/// "inter_edge_counts"} with cross counts in pair-lexicographic order.
std::string summary_json_string(const MultilayerNetwork& net);

/// Partition of a view as CSV "layer,node,community" (all ids 1-based).
std::string partition_csv_string(const SubgraphView& view,
                                 const Partition& partition);

}  // namespace mhvg
