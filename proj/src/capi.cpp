#include "mhvg.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mhvg/common.hpp"
#include "mhvg/community.hpp"
#include "mhvg/dgp.hpp"
#include "mhvg/features.hpp"
#include "mhvg/io.hpp"
#include "mhvg/mining.hpp"
#include "mhvg/network.hpp"
#include "mhvg/series.hpp"

struct mhvg_mts {
  mhvg::MultiSeries value;
};

struct mhvg_net {
  mhvg::MultilayerNetwork value;
};

struct mhvg_matrix {
  mhvg::FeatureMatrix value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* message) {
  try {
    g_last_error = message;
  } catch (...) {
    // Even storing the message failed; leave whatever was there.
  }
}

// Runs f(), translating exceptions into status codes and the thread-local
// error message. Every exported fallible function goes through here so the
// library never leaks an exception across the C boundary.
template <typename F>
mhvg_status wrap(F&& f) noexcept {
  try {
    f();
    return MHVG_OK;
  } catch (const mhvg::FormatError& e) {
    set_error(e.what());
    return MHVG_ERROR_FORMAT;
  } catch (const mhvg::IoError& e) {
    set_error(e.what());
    return MHVG_ERROR_IO;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return MHVG_ERROR_ARGUMENT;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return MHVG_ERROR_DOMAIN;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return MHVG_ERROR_NOMEM;
  } catch (const std::exception& e) {
    set_error(e.what());
    return MHVG_ERROR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return MHVG_ERROR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

// Heap copy handed to the caller; released with mhvg_string_free.
char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<mhvg::FeatureSet> parse_sets_csv(const char* sets_csv) {
  if (!sets_csv) return mhvg::all_feature_sets();
  std::vector<mhvg::FeatureSet> sets;
  std::stringstream stream{std::string(sets_csv)};
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto set = mhvg::feature_set_from_string(item);
    if (!set) {
      throw std::invalid_argument(
          "unknown feature set '" + item +
          "' (expected intra, inter, all-layer, relational or mnet)");
    }
    sets.push_back(*set);
  }
  require(!sets.empty(), "feature set list is empty");
  return sets;
}

nlohmann::ordered_json report_to_json(const mhvg::ClusteringReport& r) {
  nlohmann::ordered_json j;
  j["feature_set"] = mhvg::to_string(r.feature_set);
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["repetitions"] = r.repetitions;
  j["inertia"] = r.inertia;
  j["silhouette"] = r.silhouette;
  if (r.has_reference) {
    j["ari"] = r.ari;
    j["nmi"] = r.nmi;
  }
  j["assignment"] = r.assignment;
  return j;
}

}  // namespace

extern "C" {

const char* mhvg_version(void) { return "1.0.0"; }

const char* mhvg_status_name(mhvg_status status) {
  switch (status) {
    case MHVG_OK:
      return "ok";
    case MHVG_ERROR_ARGUMENT:
      return "invalid argument";
    case MHVG_ERROR_IO:
      return "i/o error";
    case MHVG_ERROR_FORMAT:
      return "format error";
    case MHVG_ERROR_DOMAIN:
      return "domain error";
    case MHVG_ERROR_NOMEM:
      return "out of memory";
    case MHVG_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* mhvg_last_error(void) { return g_last_error.c_str(); }

void mhvg_string_free(char* s) { std::free(s); }

uint64_t mhvg_derive_seed(uint64_t master, uint64_t index) {
  return mhvg::derive_seed(master, index);
}

/* ---- time series ------------------------------------------------------ */

mhvg_status mhvg_mts_generate(const char* dgp, int64_t length, int64_t burn_in,
                              uint64_t seed, mhvg_mts** out) {
  return wrap([&] {
    require(dgp && out, "null argument");
    const auto kind = mhvg::dgp_from_string(dgp);
    if (!kind) {
      throw std::invalid_argument(
          "unknown generator '" + std::string(dgp) +
          "' (expected iBWN, cBWN, wVAR, sVAR, wGARCH or sGARCH)");
    }
    mhvg::DgpSpec spec;
    spec.kind = *kind;
    spec.length = length;
    spec.seed = seed;
    if (burn_in >= 0) spec.burn_in = burn_in;
    *out = new mhvg_mts{mhvg::generate(spec)};
  });
}

mhvg_status mhvg_mts_from_columns(const double* data, int64_t num_components,
                                  int64_t length, mhvg_mts** out) {
  return wrap([&] {
    require(data && out, "null argument");
    require(num_components >= 1, "need at least one component");
    std::vector<std::vector<double>> columns(num_components);
    for (int64_t c = 0; c < num_components; ++c) {
      columns[c].assign(data + c * length, data + (c + 1) * length);
    }
    *out = new mhvg_mts{mhvg::MultiSeries(std::move(columns))};
  });
}

mhvg_status mhvg_mts_read_csv(const char* path, mhvg_mts** out) {
  return wrap([&] {
    require(path && out, "null argument");
    *out = new mhvg_mts{mhvg::read_series_csv(path)};
  });
}

mhvg_status mhvg_mts_write_csv(const mhvg_mts* mts, const char* path) {
  return wrap([&] {
    require(mts && path, "null argument");
    mhvg::write_series_csv(mts->value, path);
  });
}

int64_t mhvg_mts_num_components(const mhvg_mts* mts) {
  return mts ? mts->value.num_components() : 0;
}

int64_t mhvg_mts_length(const mhvg_mts* mts) {
  return mts ? mts->value.length() : 0;
}

mhvg_status mhvg_mts_component(const mhvg_mts* mts, int64_t index,
                               const double** out_data, int64_t* out_length) {
  return wrap([&] {
    require(mts && out_data && out_length, "null argument");
    require(index >= 0 && index < mts->value.num_components(),
            "component index out of range");
    const std::vector<double>& column = mts->value.component(index);
    *out_data = column.data();
    *out_length = static_cast<int64_t>(column.size());
  });
}

void mhvg_mts_free(mhvg_mts* mts) { delete mts; }

/* ---- multilayer network ------------------------------------------------ */

mhvg_status mhvg_net_build(const mhvg_mts* mts, mhvg_net** out) {
  return wrap([&] {
    require(mts && out, "null argument");
    *out = new mhvg_net{mhvg::build_mhvg(mts->value)};
  });
}

int32_t mhvg_net_num_layers(const mhvg_net* net) {
  return net ? net->value.num_layers() : 0;
}

int64_t mhvg_net_num_timestamps(const mhvg_net* net) {
  return net ? net->value.num_timestamps() : 0;
}

mhvg_status mhvg_net_intra_edge_count(const mhvg_net* net, int32_t layer,
                                      int64_t* out) {
  return wrap([&] {
    require(net && out, "null argument");
    *out = net->value.intra(layer).num_edges;
  });
}

mhvg_status mhvg_net_inter_edge_count(const mhvg_net* net, int32_t layer_a,
                                      int32_t layer_b, int64_t* out) {
  return wrap([&] {
    require(net && out, "null argument");
    const int lo = layer_a < layer_b ? layer_a : layer_b;
    const int hi = layer_a < layer_b ? layer_b : layer_a;
    *out = net->value.inter(lo, hi).num_edges;
  });
}

mhvg_status mhvg_net_write_edge_list(const mhvg_net* net, const char* path) {
  return wrap([&] {
    require(net && path, "null argument");
    mhvg::write_edge_list(net->value, path);
  });
}

mhvg_status mhvg_net_summary_json(const mhvg_net* net, char** out_json) {
  return wrap([&] {
    require(net && out_json, "null argument");
    *out_json = copy_string(mhvg::summary_json_string(net->value));
  });
}

mhvg_status mhvg_net_write_partition_csv(const mhvg_net* net, const char* view,
                                         int32_t layer_a, int32_t layer_b,
                                         uint64_t seed, const char* path) {
  return wrap([&] {
    require(net && view && path, "null argument");
    const std::string kind(view);
    mhvg::SubgraphView v = [&] {
      if (kind == "intra") return mhvg::SubgraphView::intra(net->value, layer_a);
      if (kind == "inter") {
        return mhvg::SubgraphView::inter(net->value, layer_a, layer_b);
      }
      if (kind == "all") {
        return mhvg::SubgraphView::all(net->value, layer_a, layer_b);
      }
      throw std::invalid_argument("unknown view '" + kind +
                                  "' (expected intra, inter or all)");
    }();
    const mhvg::Partition p = mhvg::detect_communities(v, seed);
    mhvg::atomic_write_file(path, mhvg::partition_csv_string(v, p));
  });
}

void mhvg_net_free(mhvg_net* net) { delete net; }

/* ---- feature vector ---------------------------------------------------- */

int mhvg_feature_count(void) { return mhvg::kNumFeatures; }

const char* mhvg_feature_name(int index) {
  if (index < 0 || index >= mhvg::kNumFeatures) return nullptr;
  return mhvg::feature_names()[index];
}

mhvg_status mhvg_net_features(const mhvg_net* net, int32_t layer_a,
                              int32_t layer_b, double* out) {
  return wrap([&] {
    require(net && out, "null argument");
    const mhvg::FeatureVector v =
        mhvg::feature_vector(net->value, layer_a, layer_b);
    const auto values = v.to_array();
    std::memcpy(out, values.data(), sizeof(double) * values.size());
  });
}

/* ---- feature matrix / clustering study -------------------------------- */

mhvg_status mhvg_matrix_create(const char* const* columns, int32_t num_columns,
                               const double* values, int64_t rows,
                               mhvg_matrix** out) {
  return wrap([&] {
    require(columns && values && out, "null argument");
    require(num_columns >= 1, "need at least one column");
    require(rows >= 0, "negative row count");
    mhvg::FeatureMatrix m;
    m.columns.reserve(num_columns);
    for (int32_t c = 0; c < num_columns; ++c) {
      require(columns[c] != nullptr, "null column name");
      m.columns.emplace_back(columns[c]);
    }
    m.values.assign(values,
                    values + static_cast<std::size_t>(rows) * num_columns);
    *out = new mhvg_matrix{std::move(m)};
  });
}

mhvg_status mhvg_matrix_set_labels(mhvg_matrix* matrix,
                                   const char* const* labels,
                                   int64_t num_labels) {
  return wrap([&] {
    require(matrix, "null argument");
    if (!labels) {
      require(num_labels == 0, "labels is null but num_labels is not 0");
      matrix->value.labels.clear();
      return;
    }
    require(num_labels == matrix->value.rows(),
            "label count does not match row count");
    std::vector<std::string> copy;
    copy.reserve(num_labels);
    for (int64_t i = 0; i < num_labels; ++i) {
      require(labels[i] != nullptr, "null label");
      copy.emplace_back(labels[i]);
    }
    matrix->value.labels = std::move(copy);
  });
}

mhvg_status mhvg_matrix_read_csv(const char* path, mhvg_matrix** out) {
  return wrap([&] {
    require(path && out, "null argument");
    *out = new mhvg_matrix{mhvg::read_feature_csv(path)};
  });
}

mhvg_status mhvg_matrix_write_csv(const mhvg_matrix* matrix,
                                  const char* path) {
  return wrap([&] {
    require(matrix && path, "null argument");
    mhvg::write_feature_csv(matrix->value, path);
  });
}

int64_t mhvg_matrix_rows(const mhvg_matrix* matrix) {
  return matrix ? matrix->value.rows() : 0;
}

int32_t mhvg_matrix_cols(const mhvg_matrix* matrix) {
  return matrix ? matrix->value.cols() : 0;
}

int mhvg_matrix_has_labels(const mhvg_matrix* matrix) {
  return matrix && !matrix->value.labels.empty() ? 1 : 0;
}

void mhvg_matrix_free(mhvg_matrix* matrix) { delete matrix; }

mhvg_status mhvg_study_run(const mhvg_matrix* matrix, const char* sets_csv,
                           const int* k_values, int32_t num_k, uint64_t seed,
                           int32_t repetitions, int require_reference,
                           char** out_json) {
  return wrap([&] {
    require(matrix && k_values && out_json, "null argument");
    require(num_k >= 1, "need at least one cluster count");
    if (require_reference) {
      require(!matrix->value.labels.empty(),
              "agreement scores need labeled rows, but the matrix has no "
              "labels");
    }
    const std::vector<mhvg::FeatureSet> sets = parse_sets_csv(sets_csv);
    const std::vector<int> ks(k_values, k_values + num_k);
    const std::vector<mhvg::ClusteringReport> reports =
        mhvg::run_study(matrix->value, sets, ks, seed, repetitions);
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const mhvg::ClusteringReport& r : reports) {
      j.push_back(report_to_json(r));
    }
    *out_json = copy_string(j.dump(2) + "\n");
  });
}

mhvg_status mhvg_matrix_pca_json(const mhvg_matrix* matrix, const char* set,
                                 char** out_json) {
  return wrap([&] {
    require(matrix && out_json, "null argument");

    mhvg::FeatureMatrix sub;
    if (set) {
      const auto parsed = mhvg::feature_set_from_string(set);
      if (!parsed) {
        throw std::invalid_argument(
            "unknown feature set '" + std::string(set) +
            "' (expected intra, inter, all-layer, relational or mnet)");
      }
      const std::vector<std::string> wanted = mhvg::feature_set_columns(*parsed);
      const std::int64_t rows = matrix->value.rows();
      sub.columns = wanted;
      sub.values.resize(static_cast<std::size_t>(rows) * wanted.size());
      for (std::size_t c = 0; c < wanted.size(); ++c) {
        const auto it = std::find(matrix->value.columns.begin(),
                                  matrix->value.columns.end(), wanted[c]);
        if (it == matrix->value.columns.end()) {
          throw std::invalid_argument("feature matrix is missing column '" +
                                      wanted[c] + "'");
        }
        const int src =
            static_cast<int>(std::distance(matrix->value.columns.begin(), it));
        for (std::int64_t r = 0; r < rows; ++r) {
          sub.values[static_cast<std::size_t>(r) * wanted.size() + c] =
              matrix->value.at(r, src);
        }
      }
    } else {
      sub = matrix->value;
      sub.labels.clear();
    }

    const mhvg::PcaResult p = mhvg::pca(mhvg::normalize_features(sub));

    nlohmann::ordered_json j;
    j["columns"] = sub.columns;
    j["explained"] = p.explained;
    nlohmann::ordered_json loadings = nlohmann::ordered_json::array();
    for (int r = 0; r < p.dims; ++r) {
      std::vector<double> row(p.loadings.begin() + static_cast<std::size_t>(r) * p.dims,
                              p.loadings.begin() +
                                  static_cast<std::size_t>(r + 1) * p.dims);
      loadings.push_back(row);
    }
    j["loadings"] = std::move(loadings);
    nlohmann::ordered_json scores = nlohmann::ordered_json::array();
    for (std::int64_t r = 0; r < p.rows; ++r) {
      std::vector<double> row(p.scores.begin() + static_cast<std::size_t>(r) * p.dims,
                              p.scores.begin() +
                                  static_cast<std::size_t>(r + 1) * p.dims);
      scores.push_back(row);
    }
    j["scores"] = std::move(scores);
    *out_json = copy_string(j.dump(2) + "\n");
  });
}

} /* extern "C" */
