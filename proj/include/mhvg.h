/*
 * Public C interface of the mhvg shared library.
 *
 * The library maps multivariate time series onto multilayer horizontal
 * visibility networks, extracts a fixed topological feature vector from
 * them, and clusters collections of such vectors.
 *
 * Conventions:
 *  - Every fallible call returns an mhvg_status; MHVG_OK is 0. On failure
 *    mhvg_last_error() returns a human-readable message for the calling
 *    thread (valid until the thread's next library call).
 *  - Objects are opaque handles created by the generate/build/read
 *    functions and released with the matching free function (NULL-safe).
 *  - Strings returned through char** out-parameters are heap-allocated;
 *    release them with mhvg_string_free.
 *  - Layer indices are zero-based. Node and community ids in written
 *    files are one-based.
 */
#ifndef MHVG_H
#define MHVG_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(MHVG_BUILD)
#define MHVG_API __declspec(dllexport)
#else
#define MHVG_API __declspec(dllimport)
#endif
#else
#define MHVG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mhvg_status {
  MHVG_OK = 0,
  MHVG_ERROR_ARGUMENT = 1, /* invalid argument or precondition */
  MHVG_ERROR_IO = 2,       /* file could not be read or written */
  MHVG_ERROR_FORMAT = 3,   /* file content is malformed */
  MHVG_ERROR_DOMAIN = 4,   /* quantity undefined for this input */
  MHVG_ERROR_NOMEM = 5,    /* allocation failure */
  MHVG_ERROR_INTERNAL = 6  /* unexpected internal error */
} mhvg_status;

typedef struct mhvg_mts mhvg_mts;       /* multivariate time series */
typedef struct mhvg_net mhvg_net;       /* multilayer visibility network */
typedef struct mhvg_matrix mhvg_matrix; /* feature matrix */

/* ---- library ---------------------------------------------------------- */

MHVG_API const char* mhvg_version(void);
MHVG_API const char* mhvg_status_name(mhvg_status status);
MHVG_API const char* mhvg_last_error(void);
MHVG_API void mhvg_string_free(char* s);

/* The deterministic seed-derivation scheme used throughout the library:
 * derive_seed(master, i) yields independent sub-seeds for i = 0, 1, ... */
MHVG_API uint64_t mhvg_derive_seed(uint64_t master, uint64_t index);

/* ---- time series ------------------------------------------------------ */

/* dgp is one of "iBWN", "cBWN", "wVAR", "sVAR", "wGARCH", "sGARCH".
 * burn_in < 0 selects the default (500); it only affects the recursive
 * generators. Equal arguments always produce bit-identical series. */
MHVG_API mhvg_status mhvg_mts_generate(const char* dgp, int64_t length,
                                       int64_t burn_in, uint64_t seed,
                                       mhvg_mts** out);

/* data is column-major: component c occupies data[c*length .. c*length+length). */
MHVG_API mhvg_status mhvg_mts_from_columns(const double* data,
                                           int64_t num_components,
                                           int64_t length, mhvg_mts** out);

MHVG_API mhvg_status mhvg_mts_read_csv(const char* path, mhvg_mts** out);
MHVG_API mhvg_status mhvg_mts_write_csv(const mhvg_mts* mts, const char* path);

MHVG_API int64_t mhvg_mts_num_components(const mhvg_mts* mts);
MHVG_API int64_t mhvg_mts_length(const mhvg_mts* mts);

/* Borrows a pointer into the series; valid while the handle lives. */
MHVG_API mhvg_status mhvg_mts_component(const mhvg_mts* mts, int64_t index,
                                        const double** out_data,
                                        int64_t* out_length);

MHVG_API void mhvg_mts_free(mhvg_mts* mts);

/* ---- multilayer network ------------------------------------------------ */

/* Builds the full multilayer horizontal visibility network: one visibility
 * layer per component plus cross-visibility edges for every layer pair. */
MHVG_API mhvg_status mhvg_net_build(const mhvg_mts* mts, mhvg_net** out);

MHVG_API int32_t mhvg_net_num_layers(const mhvg_net* net);
MHVG_API int64_t mhvg_net_num_timestamps(const mhvg_net* net);

MHVG_API mhvg_status mhvg_net_intra_edge_count(const mhvg_net* net,
                                               int32_t layer, int64_t* out);
MHVG_API mhvg_status mhvg_net_inter_edge_count(const mhvg_net* net,
                                               int32_t layer_a,
                                               int32_t layer_b, int64_t* out);

/* Text edge list, lines "layer_i node_i layer_j node_j" (1-based). */
MHVG_API mhvg_status mhvg_net_write_edge_list(const mhvg_net* net,
                                              const char* path);

/* JSON block counts: {"m", "T", "intra_edge_counts", "inter_edge_counts"}. */
MHVG_API mhvg_status mhvg_net_summary_json(const mhvg_net* net,
                                           char** out_json);

/* Detects communities on one view of the network and writes the partition
 * as CSV "layer,node,community". view is "intra" (layer_a only), "inter",
 * or "all". seed 0 is the deterministic default visiting order. */
MHVG_API mhvg_status mhvg_net_write_partition_csv(const mhvg_net* net,
                                                  const char* view,
                                                  int32_t layer_a,
                                                  int32_t layer_b,
                                                  uint64_t seed,
                                                  const char* path);

MHVG_API void mhvg_net_free(mhvg_net* net);

/* ---- feature vector ---------------------------------------------------- */

MHVG_API int mhvg_feature_count(void);
/* Canonical column name of feature `index`, or NULL if out of range. */
MHVG_API const char* mhvg_feature_name(int index);

/* Extracts the full feature vector for the layer pair (layer_a, layer_b)
 * into out[0 .. mhvg_feature_count()). Fails with MHVG_ERROR_DOMAIN when a
 * path-length feature is undefined because a view is disconnected. */
MHVG_API mhvg_status mhvg_net_features(const mhvg_net* net, int32_t layer_a,
                                       int32_t layer_b, double* out);

/* ---- feature matrix / clustering study -------------------------------- */

MHVG_API mhvg_status mhvg_matrix_create(const char* const* columns,
                                        int32_t num_columns,
                                        const double* values /* rows x cols */,
                                        int64_t rows, mhvg_matrix** out);

/* num_labels must equal the row count; labels NULL clears them. */
MHVG_API mhvg_status mhvg_matrix_set_labels(mhvg_matrix* matrix,
                                            const char* const* labels,
                                            int64_t num_labels);

MHVG_API mhvg_status mhvg_matrix_read_csv(const char* path, mhvg_matrix** out);
MHVG_API mhvg_status mhvg_matrix_write_csv(const mhvg_matrix* matrix,
                                           const char* path);

MHVG_API int64_t mhvg_matrix_rows(const mhvg_matrix* matrix);
MHVG_API int32_t mhvg_matrix_cols(const mhvg_matrix* matrix);
MHVG_API int mhvg_matrix_has_labels(const mhvg_matrix* matrix);

MHVG_API void mhvg_matrix_free(mhvg_matrix* matrix);

/* Runs the clustering protocol (select feature set, Min-Max normalize,
 * project on all principal components, repeated seeded k-means) for every
 * combination of the requested feature sets and cluster counts.
 *
 *  sets_csv     comma-separated subset of "intra,inter,all-layer,
 *               relational,mnet", or NULL for all five.
 *  k_values     cluster counts, each in [1, rows].
 *  repetitions  k-means restarts per combination (>= 1).
 *  require_reference  fail if the matrix carries no row labels (agreement
 *               scores would be unavailable).
 *
 * out_json receives an array of report objects with keys feature_set, k,
 * seed, repetitions, inertia, silhouette, assignment, and — when labels
 * are present — ari and nmi. */
MHVG_API mhvg_status mhvg_study_run(const mhvg_matrix* matrix,
                                    const char* sets_csv, const int* k_values,
                                    int32_t num_k, uint64_t seed,
                                    int32_t repetitions, int require_reference,
                                    char** out_json);

/* Principal components of one feature set (or of all matrix columns when
 * set is NULL), after Min-Max normalization — the same projection the
 * study clusters in. out_json keys: columns, explained, loadings, scores. */
MHVG_API mhvg_status mhvg_matrix_pca_json(const mhvg_matrix* matrix,
                                          const char* set, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MHVG_H */
