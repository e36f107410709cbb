// Command-line frontend. Everything substantive happens behind the C API
// of the shared library; this file only parses arguments, shuttles files
// around, and formats results.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mhvg.h"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Thrown after a library call failed; the message was already printed.
struct RuntimeFailure {};

void check(mhvg_status status) {
  if (status != MHVG_OK) {
    std::cerr << "error: " << mhvg_last_error() << "\n";
    throw RuntimeFailure{};
  }
}

// RAII helpers around the opaque C handles.
struct MtsHandle {
  mhvg_mts* ptr = nullptr;
  ~MtsHandle() { mhvg_mts_free(ptr); }
};
struct NetHandle {
  mhvg_net* ptr = nullptr;
  ~NetHandle() { mhvg_net_free(ptr); }
};
struct MatrixHandle {
  mhvg_matrix* ptr = nullptr;
  ~MatrixHandle() { mhvg_matrix_free(ptr); }
};
struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { mhvg_string_free(ptr); }
};

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    throw RuntimeFailure{};
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in || in.bad()) {
    std::cerr << "error: cannot read " << path << "\n";
    throw RuntimeFailure{};
  }
  return std::move(buf).str();
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

/* ---- generate ---------------------------------------------------------- */

struct GenerateArgs {
  std::string dgp;
  std::int64_t length = 0;
  std::int64_t instances = 1;
  std::int64_t burn_in = -1;  // -1: library default
  std::uint64_t seed = 42;
  std::string out_dir;
  std::string prefix;
};

int cmd_generate(const GenerateArgs& args) {
  const std::string prefix = args.prefix.empty() ? args.dgp : args.prefix;
  fs::create_directories(args.out_dir);

  ordered_json manifest;
  manifest["dgp"] = args.dgp;
  manifest["length"] = args.length;
  manifest["burn_in"] = args.burn_in;
  manifest["master_seed"] = args.seed;
  ordered_json instances = ordered_json::array();

  for (std::int64_t i = 0; i < args.instances; ++i) {
    const std::uint64_t seed = mhvg_derive_seed(args.seed, i);
    MtsHandle mts;
    check(mhvg_mts_generate(args.dgp.c_str(), args.length, args.burn_in, seed,
                            &mts.ptr));
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%03lld.csv", prefix.c_str(),
                  static_cast<long long>(i + 1));
    const fs::path path = fs::path(args.out_dir) / name;
    check(mhvg_mts_write_csv(mts.ptr, path.string().c_str()));

    ordered_json entry;
    entry["file"] = std::string(name);
    entry["seed"] = seed;
    entry["label"] = args.dgp;
    instances.push_back(std::move(entry));
  }
  manifest["instances"] = std::move(instances);
  write_text_file(fs::path(args.out_dir) / "manifest.json",
                  manifest.dump(2) + "\n");
  std::cout << "wrote " << args.instances << " series and manifest.json to "
            << args.out_dir << "\n";
  return 0;
}

/* ---- map --------------------------------------------------------------- */

struct MapArgs {
  std::string input;
  std::string out_dir = ".";
  bool export_partitions = false;
  std::uint64_t seed = 0;
};

int cmd_map(const MapArgs& args) {
  MtsHandle mts;
  check(mhvg_mts_read_csv(args.input.c_str(), &mts.ptr));
  NetHandle net;
  check(mhvg_net_build(mts.ptr, &net.ptr));

  fs::create_directories(args.out_dir);
  const std::string stem = fs::path(args.input).stem().string();
  const fs::path base = fs::path(args.out_dir) / stem;

  check(mhvg_net_write_edge_list(net.ptr, (base.string() + ".edges.txt").c_str()));
  StringHandle summary;
  check(mhvg_net_summary_json(net.ptr, &summary.ptr));
  write_text_file(base.string() + ".summary.json", summary.ptr);

  if (args.export_partitions) {
    const std::int32_t m = mhvg_net_num_layers(net.ptr);
    for (std::int32_t l = 0; l < m; ++l) {
      const std::string path =
          base.string() + ".partition.intra" + std::to_string(l + 1) + ".csv";
      check(mhvg_net_write_partition_csv(net.ptr, "intra", l, 0, args.seed,
                                         path.c_str()));
    }
    for (std::int32_t a = 0; a < m; ++a) {
      for (std::int32_t b = a + 1; b < m; ++b) {
        const std::string pair =
            std::to_string(a + 1) + "-" + std::to_string(b + 1);
        check(mhvg_net_write_partition_csv(
            net.ptr, "inter", a, b, args.seed,
            (base.string() + ".partition.inter" + pair + ".csv").c_str()));
        check(mhvg_net_write_partition_csv(
            net.ptr, "all", a, b, args.seed,
            (base.string() + ".partition.all" + pair + ".csv").c_str()));
      }
    }
  }
  std::cout << "mapped " << args.input << " -> " << base.string()
            << ".edges.txt\n";
  return 0;
}

/* ---- features ---------------------------------------------------------- */

struct FeatureArgs {
  std::vector<std::string> inputs;
  std::string out;
  int jobs = 1;
};

struct InstanceInput {
  fs::path path;
  std::string label;  // empty: unlabeled
};

void collect_from_manifest(const fs::path& manifest_path,
                           std::vector<InstanceInput>& out) {
  json manifest;
  try {
    manifest = json::parse(read_text_file(manifest_path));
  } catch (const json::exception& e) {
    std::cerr << "error: " << manifest_path.string() << ": " << e.what()
              << "\n";
    throw RuntimeFailure{};
  }
  if (!manifest.contains("instances") || !manifest["instances"].is_array()) {
    std::cerr << "error: " << manifest_path.string()
              << ": no \"instances\" array\n";
    throw RuntimeFailure{};
  }
  const std::string fallback_label = manifest.value("dgp", std::string());
  for (const json& entry : manifest["instances"]) {
    InstanceInput input;
    input.path = manifest_path.parent_path() / entry.value("file", std::string());
    input.label = entry.value("label", fallback_label);
    out.push_back(std::move(input));
  }
}

std::vector<InstanceInput> collect_inputs(const std::vector<std::string>& args) {
  std::vector<InstanceInput> inputs;
  for (const std::string& arg : args) {
    const fs::path path(arg);
    if (fs::is_directory(path)) {
      if (fs::exists(path / "manifest.json")) {
        collect_from_manifest(path / "manifest.json", inputs);
      } else {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path)) {
          if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
          }
        }
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files) inputs.push_back({f, ""});
      }
    } else if (path.extension() == ".json") {
      collect_from_manifest(path, inputs);
    } else {
      inputs.push_back({path, ""});
    }
  }
  return inputs;
}

int cmd_features(const FeatureArgs& args) {
  const std::vector<InstanceInput> inputs = collect_inputs(args.inputs);
  if (inputs.empty()) {
    std::cerr << "error: no input series found\n";
    throw RuntimeFailure{};
  }
  std::size_t labeled = 0;
  for (const InstanceInput& input : inputs) {
    if (!input.label.empty()) ++labeled;
  }
  if (labeled != 0 && labeled != inputs.size()) {
    std::cerr << "error: inputs mix labeled and unlabeled series; pass "
                 "either only manifests or only plain files\n";
    throw RuntimeFailure{};
  }

  const int feature_count = mhvg_feature_count();
  std::vector<double> values(inputs.size() * feature_count);
  std::vector<std::string> errors(inputs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= inputs.size()) break;
      MtsHandle mts;
      mhvg_status status =
          mhvg_mts_read_csv(inputs[i].path.string().c_str(), &mts.ptr);
      if (status == MHVG_OK && mhvg_mts_num_components(mts.ptr) != 2) {
        errors[i] = inputs[i].path.string() +
                    ": the feature vector is defined for bivariate series "
                    "(found " +
                    std::to_string(mhvg_mts_num_components(mts.ptr)) +
                    " components)";
        continue;
      }
      NetHandle net;
      if (status == MHVG_OK) status = mhvg_net_build(mts.ptr, &net.ptr);
      if (status == MHVG_OK) {
        status =
            mhvg_net_features(net.ptr, 0, 1, values.data() + i * feature_count);
      }
      if (status != MHVG_OK) {
        errors[i] = inputs[i].path.string() + ": " + mhvg_last_error();
      }
    }
  };

  const int jobs = std::max(1, args.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  bool failed = false;
  for (const std::string& e : errors) {
    if (!e.empty()) {
      std::cerr << "error: " << e << "\n";
      failed = true;
    }
  }
  if (failed) throw RuntimeFailure{};

  std::vector<const char*> columns;
  for (int c = 0; c < feature_count; ++c) {
    columns.push_back(mhvg_feature_name(c));
  }
  MatrixHandle matrix;
  check(mhvg_matrix_create(columns.data(), feature_count, values.data(),
                           static_cast<std::int64_t>(inputs.size()),
                           &matrix.ptr));
  if (labeled == inputs.size()) {
    std::vector<const char*> labels;
    labels.reserve(inputs.size());
    for (const InstanceInput& input : inputs) {
      labels.push_back(input.label.c_str());
    }
    check(mhvg_matrix_set_labels(matrix.ptr, labels.data(),
                                 static_cast<std::int64_t>(labels.size())));
  }
  check(mhvg_matrix_write_csv(matrix.ptr, args.out.c_str()));
  std::cout << "wrote " << inputs.size() << " feature vectors to " << args.out
            << "\n";
  return 0;
}

/* ---- cluster ------------------------------------------------------------ */

struct ClusterArgs {
  std::string input;
  std::string out_dir = ".";
  std::vector<int> k_values;
  int k_min = 0;
  int k_max = 0;
  std::vector<std::string> sets;
  std::uint64_t seed = 42;
  int repetitions = 10;
  bool require_reference = false;
  std::string pca_dir;
};

void write_pca_outputs(const mhvg_matrix* matrix, const std::string& set,
                       const fs::path& dir) {
  StringHandle text;
  check(mhvg_matrix_pca_json(matrix, set.c_str(), &text.ptr));
  const json j = json::parse(text.ptr);

  const std::size_t dims = j["explained"].size();
  std::string explained = "component,variance\n";
  for (std::size_t c = 0; c < dims; ++c) {
    explained += std::to_string(c + 1) + "," +
                 format_double(j["explained"][c].get<double>()) + "\n";
  }
  write_text_file(dir / (set + "_explained.csv"), explained);

  std::string loadings = "column";
  for (std::size_t c = 0; c < dims; ++c) {
    loadings += ",pc" + std::to_string(c + 1);
  }
  loadings += "\n";
  for (std::size_t r = 0; r < dims; ++r) {
    loadings += j["columns"][r].get<std::string>();
    for (std::size_t c = 0; c < dims; ++c) {
      loadings += "," + format_double(j["loadings"][r][c].get<double>());
    }
    loadings += "\n";
  }
  write_text_file(dir / (set + "_loadings.csv"), loadings);

  std::string scores;
  for (std::size_t c = 0; c < dims; ++c) {
    if (c > 0) scores += ",";
    scores += "pc" + std::to_string(c + 1);
  }
  scores += "\n";
  for (const json& row : j["scores"]) {
    for (std::size_t c = 0; c < dims; ++c) {
      if (c > 0) scores += ",";
      scores += format_double(row[c].get<double>());
    }
    scores += "\n";
  }
  write_text_file(dir / (set + "_scores.csv"), scores);
}

int cmd_cluster(const ClusterArgs& args) {
  MatrixHandle matrix;
  check(mhvg_matrix_read_csv(args.input.c_str(), &matrix.ptr));

  std::vector<int> ks = args.k_values;
  if (ks.empty()) {
    const int lo = args.k_min > 0 ? args.k_min : 2;
    const int hi = args.k_max > 0 ? args.k_max : 10;
    for (int k = lo; k <= hi; ++k) ks.push_back(k);
  }

  std::string sets_csv;
  for (const std::string& s : args.sets) {
    if (!sets_csv.empty()) sets_csv += ",";
    sets_csv += s;
  }

  StringHandle reports;
  check(mhvg_study_run(matrix.ptr, sets_csv.empty() ? nullptr : sets_csv.c_str(),
                       ks.data(), static_cast<std::int32_t>(ks.size()),
                       args.seed, args.repetitions,
                       args.require_reference ? 1 : 0, &reports.ptr));

  fs::create_directories(args.out_dir);
  write_text_file(fs::path(args.out_dir) / "reports.json", reports.ptr);

  // Assignment table: one row per instance, one column per configuration.
  const json parsed = json::parse(reports.ptr);
  const std::int64_t rows = mhvg_matrix_rows(matrix.ptr);
  std::string table = "row";
  for (const json& report : parsed) {
    table += "," + report["feature_set"].get<std::string>() + ".k" +
             std::to_string(report["k"].get<int>());
  }
  table += "\n";
  for (std::int64_t r = 0; r < rows; ++r) {
    table += std::to_string(r + 1);
    for (const json& report : parsed) {
      table += "," + std::to_string(report["assignment"][r].get<int>());
    }
    table += "\n";
  }
  write_text_file(fs::path(args.out_dir) / "assignments.csv", table);

  if (!args.pca_dir.empty()) {
    fs::create_directories(args.pca_dir);
    std::vector<std::string> sets = args.sets;
    if (sets.empty()) {
      sets = {"intra", "inter", "all-layer", "relational", "mnet"};
    }
    for (const std::string& set : sets) {
      write_pca_outputs(matrix.ptr, set, args.pca_dir);
    }
  }

  std::cout << "wrote " << parsed.size() << " clustering reports to "
            << args.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Multilayer horizontal visibility networks: synthetic series, "
      "network mapping, topological features, clustering"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mhvg_version()));

  GenerateArgs gen;
  CLI::App* generate =
      app.add_subcommand("generate", "Generate synthetic bivariate series");
  generate
      ->add_option("--dgp", gen.dgp,
                   "Generator: iBWN, cBWN, wVAR, sVAR, wGARCH or sGARCH")
      ->required();
  generate->add_option("-T,--length", gen.length, "Samples per series")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("-n,--instances", gen.instances, "Number of series")
      ->check(CLI::PositiveNumber);
  generate->add_option("--burn-in", gen.burn_in,
                       "Discarded leading samples (default: library default)");
  generate->add_option("--seed", gen.seed, "Master seed");
  generate->add_option("-o,--out-dir", gen.out_dir, "Output directory")
      ->required();
  generate->add_option("--prefix", gen.prefix,
                       "Output file prefix (default: the generator name)");

  MapArgs map;
  CLI::App* map_cmd = app.add_subcommand(
      "map", "Map a series CSV onto its multilayer visibility network");
  map_cmd->add_option("-i,--input", map.input, "Series CSV")->required();
  map_cmd->add_option("-o,--out-dir", map.out_dir, "Output directory");
  map_cmd->add_flag("--export-partitions", map.export_partitions,
                    "Also write detected communities per view");
  map_cmd->add_option("--seed", map.seed,
                      "Community detection visiting order (0: deterministic)");

  FeatureArgs feat;
  CLI::App* features = app.add_subcommand(
      "features", "Extract feature vectors from series files");
  features
      ->add_option("inputs", feat.inputs,
                   "Series CSVs, directories, or manifest.json files")
      ->required();
  features->add_option("-o,--out", feat.out, "Output feature CSV")->required();
  features->add_option("-j,--jobs", feat.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  ClusterArgs cl;
  CLI::App* cluster =
      app.add_subcommand("cluster", "Cluster a feature matrix");
  cluster->add_option("-i,--input", cl.input, "Feature CSV")->required();
  cluster->add_option("-o,--out-dir", cl.out_dir, "Output directory");
  cluster->add_option("-k", cl.k_values, "Cluster counts (repeatable)");
  cluster->add_option("--k-min", cl.k_min, "Smallest k (default 2)");
  cluster->add_option("--k-max", cl.k_max, "Largest k (default 10)");
  cluster->add_option(
      "--sets", cl.sets,
      "Feature sets: intra, inter, all-layer, relational, mnet (default all)");
  cluster->add_option("--seed", cl.seed, "Master seed");
  cluster->add_option("--reps", cl.repetitions, "k-means restarts per run")
      ->check(CLI::PositiveNumber);
  cluster->add_flag("--require-reference", cl.require_reference,
                    "Fail unless the matrix carries labels");
  cluster->add_option("--pca-dir", cl.pca_dir,
                      "Also write PCA scores/loadings/explained CSVs here");

  try {
    app.parse(argc, argv);
    if (cluster->parsed()) {
      if (!cl.k_values.empty() && (cl.k_min > 0 || cl.k_max > 0)) {
        throw CLI::ValidationError("-k cannot be combined with --k-min/--k-max");
      }
      if (cl.k_min > 0 && cl.k_max > 0 && cl.k_min > cl.k_max) {
        throw CLI::ValidationError("--k-min must not exceed --k-max");
      }
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (map_cmd->parsed()) return cmd_map(map);
    if (features->parsed()) return cmd_features(feat);
    if (cluster->parsed()) return cmd_cluster(cl);
  } catch (const RuntimeFailure&) {
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
