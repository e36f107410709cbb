#include "mhvg/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhvg {

void validate_series(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw std::invalid_argument("series must contain at least two samples");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("series contains a non-finite value");
    }
  }
}

MultiSeries::MultiSeries(std::vector<std::vector<double>> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("multivariate series needs >= 1 component");
  }
  const std::size_t len = components_[0].size();
  for (const auto& c : components_) {
    validate_series(c);
    if (c.size() != len) {
      throw std::invalid_argument("components must have equal length");
    }
  }
}

const std::vector<double>& MultiSeries::component(int index) const {
  if (index < 0 || index >= num_components()) {
    throw std::invalid_argument("component index out of range");
  }
  return components_[index];
}

std::vector<double> min_max_rescale(const std::vector<double>& values) {
  validate_series(values);
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(values.size(), 0.0);
  if (hi == lo) {
    return out;  // constant series: no scale to recover, map to zeros
  }
  const double span = hi - lo;
  for (std::size_t t = 0; t < values.size(); ++t) {
    out[t] = std::clamp((values[t] - lo) / span, 0.0, 1.0);
  }
  return out;
}

std::vector<double> pointwise_max(const std::vector<double>& a,
                                  const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("pointwise_max: length mismatch");
  }
  std::vector<double> out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = std::max(a[t], b[t]);
  return out;
}

}  // namespace mhvg
