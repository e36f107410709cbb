#pragma once

#include <cstdint>
#include <vector>

namespace mhvg {

/// Checks that `values` is a usable component: at least two samples, all
/// finite. Throws std::invalid_argument otherwise.
void validate_series(const std::vector<double>& values);

/// A multivariate time series: m >= 1 components observed on a shared,
/// evenly spaced clock. Stored column-wise: components()[c][t].
class MultiSeries {
 public:
  MultiSeries() = default;

  /// Takes ownership of the component columns; every component must pass
  /// validate_series() and all lengths must agree.
  explicit MultiSeries(std::vector<std::vector<double>> components);

  int num_components() const { return static_cast<int>(components_.size()); }

  std::int64_t length() const {
    return components_.empty()
               ? 0
               : static_cast<std::int64_t>(components_[0].size());
  }

  /// Component by index; throws std::invalid_argument if out of range.
  const std::vector<double>& component(int index) const;

  const std::vector<std::vector<double>>& components() const {
    return components_;
  }

 private:
  std::vector<std::vector<double>> components_;
};

/// Min-Max rescaling to [0, 1]: (y - min) / (max - min), clamped against
/// round-off. A constant series maps to all zeros so the result is always
/// well defined.
std::vector<double> min_max_rescale(const std::vector<double>& values);

/// Pointwise maximum of two equal-length series; throws
/// std::invalid_argument on a length mismatch.
std::vector<double> pointwise_max(const std::vector<double>& a,
                                  const std::vector<double>& b);

}  // namespace mhvg
