#include "mhvg/mining.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "mhvg/common.hpp"
#include "mhvg/features.hpp"

namespace mhvg {

namespace {

// Relabels to 0..k-1 in order of first appearance, making every metric
// computed on the result invariant under permutations of the input ids.
std::vector<std::int32_t> canonicalize(const std::vector<std::int32_t>& x) {
  std::vector<std::int32_t> out(x.size());
  std::unordered_map<std::int32_t, std::int32_t> remap;
  remap.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto [it, inserted] =
        remap.try_emplace(x[i], static_cast<std::int32_t>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

double comb2(double x) { return x * (x - 1.0) / 2.0; }

struct Contingency {
  std::int64_t n = 0;
  std::int32_t kx = 0;
  std::int32_t ky = 0;
  std::vector<std::int64_t> cells;  // kx x ky, row-major
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
};

Contingency contingency_table(const std::vector<std::int32_t>& x,
                              const std::vector<std::int32_t>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument(
        "clusterings must be non-empty and of equal size");
  }
  const std::vector<std::int32_t> a = canonicalize(x);
  const std::vector<std::int32_t> b = canonicalize(y);
  Contingency t;
  t.n = static_cast<std::int64_t>(a.size());
  t.kx = *std::max_element(a.begin(), a.end()) + 1;
  t.ky = *std::max_element(b.begin(), b.end()) + 1;
  t.cells.assign(static_cast<std::size_t>(t.kx) * t.ky, 0);
  t.row_sums.assign(t.kx, 0);
  t.col_sums.assign(t.ky, 0);
  for (std::int64_t i = 0; i < t.n; ++i) {
    ++t.cells[static_cast<std::size_t>(a[i]) * t.ky + b[i]];
    ++t.row_sums[a[i]];
    ++t.col_sums[b[i]];
  }
  return t;
}

double squared_distance(const double* p, const double* q, int dims) {
  double d = 0;
  for (int c = 0; c < dims; ++c) {
    const double diff = p[c] - q[c];
    d += diff * diff;
  }
  return d;
}

// One seeded k-means run: k-means++ initialization followed by Lloyd
// iterations until the assignment stabilizes.
KmeansResult kmeans_once(const std::vector<double>& points, std::int64_t n,
                         int dims, int k, std::uint64_t seed) {
  GaussianRng rng(seed);
  std::vector<double> centers(static_cast<std::size_t>(k) * dims);

  auto pick_uniform = [&rng, n]() {
    auto idx = static_cast<std::int64_t>(rng.uniform() * n);
    return std::min(idx, n - 1);
  };

  // k-means++: first center uniform, the rest proportional to the squared
  // distance to the nearest center chosen so far.
  std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
  {
    const std::int64_t first = pick_uniform();
    std::copy_n(points.data() + first * dims, dims, centers.data());
  }
  for (int c = 1; c < k; ++c) {
    const double* last = centers.data() + static_cast<std::size_t>(c - 1) * dims;
    double total = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      dist2[i] = std::min(dist2[i],
                          squared_distance(points.data() + i * dims, last, dims));
      total += dist2[i];
    }
    std::int64_t chosen = -1;
    if (total > 0) {
      const double target = rng.uniform() * total;
      double cum = 0;
      for (std::int64_t i = 0; i < n; ++i) {
        cum += dist2[i];
        if (cum > target) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) {  // floating-point edge: take the last positive mass
        for (std::int64_t i = n - 1; i >= 0; --i) {
          if (dist2[i] > 0) {
            chosen = i;
            break;
          }
        }
      }
    }
    if (chosen < 0) chosen = pick_uniform();  // all points coincide
    std::copy_n(points.data() + chosen * dims, dims,
                centers.data() + static_cast<std::size_t>(c) * dims);
  }

  auto nearest = [&](std::int64_t i) {
    std::int32_t best = 0;
    double best_d = squared_distance(points.data() + i * dims, centers.data(),
                                     dims);
    for (std::int32_t c = 1; c < k; ++c) {
      const double d = squared_distance(
          points.data() + i * dims,
          centers.data() + static_cast<std::size_t>(c) * dims, dims);
      if (d < best_d) {  // ties keep the lowest center index
        best_d = d;
        best = c;
      }
    }
    return best;
  };

  std::vector<std::int32_t> assignment(n);
  for (std::int64_t i = 0; i < n; ++i) assignment[i] = nearest(i);

  std::vector<double> sums(static_cast<std::size_t>(k) * dims);
  std::vector<std::int64_t> counts(k);
  for (int iter = 0; iter < 300; ++iter) {
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::int32_t c = assignment[i];
      ++counts[c];
      for (int d = 0; d < dims; ++d) {
        sums[static_cast<std::size_t>(c) * dims + d] += points[i * dims + d];
      }
    }
    for (std::int32_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its old centroid
      for (int d = 0; d < dims; ++d) {
        centers[static_cast<std::size_t>(c) * dims + d] =
            sums[static_cast<std::size_t>(c) * dims + d] / counts[c];
      }
    }
    bool changed = false;
    for (std::int64_t i = 0; i < n; ++i) {
      const std::int32_t c = nearest(i);
      if (c != assignment[i]) {
        assignment[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
  }

  KmeansResult result;
  result.assignment = std::move(assignment);
  result.inertia = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    result.inertia += squared_distance(
        points.data() + i * dims,
        centers.data() + static_cast<std::size_t>(result.assignment[i]) * dims,
        dims);
  }
  return result;
}

}  // namespace

FeatureMatrix normalize_features(const FeatureMatrix& m) {
  FeatureMatrix out = m;
  const std::int64_t rows = m.rows();
  const int cols = m.cols();
  for (int c = 0; c < cols; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::int64_t r = 0; r < rows; ++r) {
      lo = std::min(lo, m.at(r, c));
      hi = std::max(hi, m.at(r, c));
    }
    const double span = hi - lo;
    for (std::int64_t r = 0; r < rows; ++r) {
      const std::size_t idx = static_cast<std::size_t>(r) * cols + c;
      out.values[idx] =
          span > 0 ? std::clamp((m.values[idx] - lo) / span, 0.0, 1.0) : 0.0;
    }
  }
  return out;
}

PcaResult pca(const FeatureMatrix& m) {
  const std::int64_t rows = m.rows();
  const int cols = m.cols();
  if (rows < 2 || cols < 1) {
    throw std::invalid_argument("pca requires at least 2 rows and 1 column");
  }

  Eigen::MatrixXd x(rows, cols);
  for (std::int64_t r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) x(r, c) = m.at(r, c);
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(rows - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("pca eigendecomposition failed");
  }

  // Eigen returns ascending eigenvalues; we want descending, each axis
  // oriented so its largest-magnitude loading is positive.
  Eigen::MatrixXd axes(cols, cols);
  Eigen::VectorXd var(cols);
  for (int c = 0; c < cols; ++c) {
    const int src = cols - 1 - c;
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    int peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0) v = -v;
    axes.col(c) = v;
    var(c) = std::max(solver.eigenvalues()(src), 0.0);
  }

  const Eigen::MatrixXd scores = x * axes;

  PcaResult result;
  result.rows = rows;
  result.dims = cols;
  result.scores.resize(static_cast<std::size_t>(rows) * cols);
  for (std::int64_t r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      result.scores[static_cast<std::size_t>(r) * cols + c] = scores(r, c);
    }
  }
  result.loadings.resize(static_cast<std::size_t>(cols) * cols);
  for (int r = 0; r < cols; ++r) {
    for (int c = 0; c < cols; ++c) {
      result.loadings[static_cast<std::size_t>(r) * cols + c] = axes(r, c);
    }
  }
  result.explained.assign(var.data(), var.data() + cols);
  return result;
}

KmeansResult kmeans(const std::vector<double>& points, std::int64_t n,
                    int dims, int k, std::uint64_t seed, int repetitions) {
  if (n < 1 || dims < 1 ||
      points.size() != static_cast<std::size_t>(n) * dims) {
    throw std::invalid_argument("kmeans: inconsistent point matrix");
  }
  if (k < 1 || k > n) {
    throw std::invalid_argument("kmeans: k must lie in [1, n]");
  }
  if (repetitions < 1) {
    throw std::invalid_argument("kmeans: repetitions must be >= 1");
  }
  KmeansResult best;
  for (int r = 0; r < repetitions; ++r) {
    KmeansResult run = kmeans_once(points, n, dims, k, derive_seed(seed, r));
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

double adjusted_rand_index(const std::vector<std::int32_t>& x,
                           const std::vector<std::int32_t>& y) {
  const Contingency t = contingency_table(x, y);
  double sum_cells = 0;
  for (const std::int64_t c : t.cells) sum_cells += comb2(static_cast<double>(c));
  double sum_rows = 0;
  for (const std::int64_t s : t.row_sums) sum_rows += comb2(static_cast<double>(s));
  double sum_cols = 0;
  for (const std::int64_t s : t.col_sums) sum_cols += comb2(static_cast<double>(s));
  const double pairs = comb2(static_cast<double>(t.n));
  const double expected = pairs > 0 ? sum_rows * sum_cols / pairs : 0.0;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected) return 1.0;  // both partitions trivial
  return (sum_cells - expected) / (maximum - expected);
}

double normalized_mutual_information(const std::vector<std::int32_t>& x,
                                     const std::vector<std::int32_t>& y) {
  const Contingency t = contingency_table(x, y);
  const double n = static_cast<double>(t.n);
  const double log2_factor = 1.0 / std::log(2.0);

  auto entropy = [&](const std::vector<std::int64_t>& sums) {
    double h = 0;
    for (const std::int64_t s : sums) {
      if (s == 0) continue;
      const double p = s / n;
      h -= p * std::log(p) * log2_factor;
    }
    return h;
  };
  const double hx = entropy(t.row_sums);
  const double hy = entropy(t.col_sums);
  if (hx == 0.0 && hy == 0.0) return 1.0;  // both trivial: identical
  if (hx == 0.0 || hy == 0.0) return 0.0;  // one trivial: no information

  double mi = 0;
  for (std::int32_t i = 0; i < t.kx; ++i) {
    for (std::int32_t j = 0; j < t.ky; ++j) {
      const std::int64_t c = t.cells[static_cast<std::size_t>(i) * t.ky + j];
      if (c == 0) continue;
      const double pij = c / n;
      mi += pij *
            std::log(pij / ((t.row_sums[i] / n) * (t.col_sums[j] / n))) *
            log2_factor;
    }
  }
  return std::clamp(mi / (0.5 * (hx + hy)), 0.0, 1.0);
}

double silhouette_score(const std::vector<double>& points, std::int64_t n,
                        int dims,
                        const std::vector<std::int32_t>& assignment) {
  if (n < 1 || dims < 1 ||
      points.size() != static_cast<std::size_t>(n) * dims ||
      assignment.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("silhouette: inconsistent inputs");
  }
  const std::vector<std::int32_t> labels = canonicalize(assignment);
  const std::int32_t k = *std::max_element(labels.begin(), labels.end()) + 1;
  if (k == 1) return 0.0;

  std::vector<std::int64_t> sizes(k, 0);
  for (const std::int32_t c : labels) ++sizes[c];

  double total = 0;
  std::vector<double> sum_to(k);
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int32_t own = labels[i];
    if (sizes[own] == 1) continue;  // singleton contributes 0
    std::fill(sum_to.begin(), sum_to.end(), 0.0);
    for (std::int64_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum_to[labels[j]] += std::sqrt(
          squared_distance(points.data() + i * dims, points.data() + j * dims,
                           dims));
    }
    const double a = sum_to[own] / (sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::int32_t c = 0; c < k; ++c) {
      if (c != own) b = std::min(b, sum_to[c] / sizes[c]);
    }
    const double denom = std::max(a, b);
    if (denom > 0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

const char* to_string(FeatureSet set) {
  switch (set) {
    case FeatureSet::Intra:
      return "intra";
    case FeatureSet::Inter:
      return "inter";
    case FeatureSet::AllLayer:
      return "all-layer";
    case FeatureSet::Relational:
      return "relational";
    case FeatureSet::Full:
      return "mnet";
  }
  return "?";
}

std::optional<FeatureSet> feature_set_from_string(std::string_view name) {
  for (const FeatureSet set : all_feature_sets()) {
    if (name == to_string(set)) return set;
  }
  return std::nullopt;
}

const std::vector<FeatureSet>& all_feature_sets() {
  static const std::vector<FeatureSet> kSets = {
      FeatureSet::Intra, FeatureSet::Inter, FeatureSet::AllLayer,
      FeatureSet::Relational, FeatureSet::Full};
  return kSets;
}

std::vector<std::string> feature_set_columns(FeatureSet set) {
  const auto& names = feature_names();
  auto select = [&names](std::initializer_list<int> idx) {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (const int i : idx) out.emplace_back(names[i]);
    return out;
  };
  switch (set) {
    case FeatureSet::Intra:
      return select({0, 1, 3, 4, 6, 7, 9, 10});
    case FeatureSet::Inter:
      return select({2, 5, 8, 11});
    case FeatureSet::AllLayer:
      return select({12, 13, 14, 15});
    case FeatureSet::Relational:
      return select({16, 17, 18, 19, 20});
    case FeatureSet::Full:
      return {names.begin(), names.end()};
  }
  return {};
}

std::vector<std::int32_t> encode_labels(const std::vector<std::string>& labels) {
  std::vector<std::int32_t> out(labels.size());
  std::unordered_map<std::string, std::int32_t> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] =
        remap.try_emplace(labels[i], static_cast<std::int32_t>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

std::vector<ClusteringReport> run_study(const FeatureMatrix& features,
                                        const std::vector<FeatureSet>& sets,
                                        const std::vector<int>& k_values,
                                        std::uint64_t seed, int repetitions) {
  const std::int64_t rows = features.rows();
  if (!features.labels.empty() &&
      features.labels.size() != static_cast<std::size_t>(rows)) {
    throw std::invalid_argument("label count does not match row count");
  }
  const bool has_reference = !features.labels.empty();
  std::vector<std::int32_t> reference;
  if (has_reference) reference = encode_labels(features.labels);

  std::vector<ClusteringReport> reports;
  reports.reserve(sets.size() * k_values.size());
  for (const FeatureSet set : sets) {
    // Select the set's columns by name.
    const std::vector<std::string> wanted = feature_set_columns(set);
    std::vector<int> col_idx;
    col_idx.reserve(wanted.size());
    for (const std::string& name : wanted) {
      const auto it =
          std::find(features.columns.begin(), features.columns.end(), name);
      if (it == features.columns.end()) {
        throw std::invalid_argument("feature matrix is missing column '" +
                                    name + "'");
      }
      col_idx.push_back(
          static_cast<int>(std::distance(features.columns.begin(), it)));
    }

    FeatureMatrix sub;
    sub.columns = wanted;
    sub.labels = features.labels;
    sub.values.resize(static_cast<std::size_t>(rows) * wanted.size());
    for (std::int64_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < col_idx.size(); ++c) {
        sub.values[static_cast<std::size_t>(r) * wanted.size() + c] =
            features.at(r, col_idx[c]);
      }
    }

    const PcaResult projected = pca(normalize_features(sub));

    for (const int k : k_values) {
      // The sub-seed depends only on (set, k), so one configuration can be
      // reproduced in isolation no matter which others were requested.
      const std::uint64_t sub_seed =
          derive_seed2(seed, static_cast<std::uint64_t>(set), k);
      ClusteringReport report;
      report.feature_set = set;
      report.k = k;
      report.seed = sub_seed;
      report.repetitions = repetitions;
      KmeansResult run = kmeans(projected.scores, rows, projected.dims, k,
                                sub_seed, repetitions);
      report.inertia = run.inertia;
      report.silhouette =
          silhouette_score(projected.scores, rows, projected.dims,
                           run.assignment);
      report.assignment = std::move(run.assignment);
      report.has_reference = has_reference;
      if (has_reference) {
        report.ari = adjusted_rand_index(reference, report.assignment);
        report.nmi = normalized_mutual_information(reference, report.assignment);
      }
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

}  // namespace mhvg
