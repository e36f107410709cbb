#include "mhvg/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "mhvg/common.hpp"

namespace mhvg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool try_parse_double(std::string_view cell, double& out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

void append_double(std::string& out, double value) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  out.append(buf, len);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return std::move(buf).str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw IoError("write failure: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

MultiSeries read_series_csv(const std::string& path) {
  const std::string text = read_file(path);
  const std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty()) throw FormatError(path + ": file is empty");

  // A header is any first row whose first cell is not a number.
  double probe = 0;
  const bool has_header = !try_parse_double(split_cells(lines[0])[0], probe);
  const std::size_t first_row = has_header ? 1 : 0;
  if (first_row >= lines.size()) {
    throw FormatError(path + ": no data rows");
  }

  const std::size_t width = split_cells(lines[first_row]).size();
  std::vector<std::vector<double>> columns(width);
  for (std::size_t r = first_row; r < lines.size(); ++r) {
    const std::vector<std::string_view> cells = split_cells(lines[r]);
    if (cells.size() != width) {
      throw FormatError(path + ":" + std::to_string(r + 1) + ": expected " +
                        std::to_string(width) + " cells, got " +
                        std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      double value = 0;
      if (!try_parse_double(cells[c], value)) {
        throw FormatError(path + ":" + std::to_string(r + 1) +
                          ": cell is not a number: '" + std::string(cells[c]) +
                          "'");
      }
      columns[c].push_back(value);
    }
  }
  try {
    return MultiSeries(std::move(columns));
  } catch (const std::invalid_argument& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string series_csv_string(const MultiSeries& series) {
  std::string out;
  const std::int64_t m = series.num_components();
  const std::int64_t t_len = series.length();
  out.reserve(static_cast<std::size_t>(t_len) * m * 20);
  for (std::int64_t c = 0; c < m; ++c) {
    if (c > 0) out.push_back(',');
    out.push_back('y');
    out += std::to_string(c + 1);
  }
  out.push_back('\n');
  for (std::int64_t t = 0; t < t_len; ++t) {
    for (std::int64_t c = 0; c < m; ++c) {
      if (c > 0) out.push_back(',');
      append_double(out, series.component(c)[t]);
    }
    out.push_back('\n');
  }
  return out;
}

void write_series_csv(const MultiSeries& series, const std::string& path) {
  atomic_write_file(path, series_csv_string(series));
}

FeatureMatrix read_feature_csv(const std::string& path) {
  const std::string text = read_file(path);
  const std::vector<std::string_view> lines = split_lines(text);
  if (lines.empty()) throw FormatError(path + ": file is empty");

  const std::vector<std::string_view> header = split_cells(lines[0]);
  double probe = 0;
  if (try_parse_double(header[0], probe)) {
    throw FormatError(path + ": header row is required");
  }

  FeatureMatrix m;
  bool has_labels = false;
  std::size_t width = header.size();
  if (width > 1 && trim(header.back()) == "label") {
    has_labels = true;
    --width;
  }
  m.columns.reserve(width);
  for (std::size_t c = 0; c < width; ++c) {
    m.columns.emplace_back(trim(header[c]));
    if (m.columns.back().empty()) {
      throw FormatError(path + ": empty column name in header");
    }
  }

  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::vector<std::string_view> cells = split_cells(lines[r]);
    if (cells.size() != header.size()) {
      throw FormatError(path + ":" + std::to_string(r + 1) + ": expected " +
                        std::to_string(header.size()) + " cells, got " +
                        std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < width; ++c) {
      double value = 0;
      if (!try_parse_double(cells[c], value)) {
        throw FormatError(path + ":" + std::to_string(r + 1) +
                          ": cell is not a number: '" + std::string(cells[c]) +
                          "'");
      }
      m.values.push_back(value);
    }
    if (has_labels) m.labels.emplace_back(trim(cells.back()));
  }
  return m;
}

std::string feature_csv_string(const FeatureMatrix& m) {
  const std::int64_t rows = m.rows();
  const int cols = m.cols();
  if (!m.labels.empty() &&
      m.labels.size() != static_cast<std::size_t>(rows)) {
    throw std::invalid_argument("label count does not match row count");
  }
  std::string out;
  for (int c = 0; c < cols; ++c) {
    if (c > 0) out.push_back(',');
    out += m.columns[c];
  }
  if (!m.labels.empty()) out += ",label";
  out.push_back('\n');
  for (std::int64_t r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c > 0) out.push_back(',');
      append_double(out, m.at(r, c));
    }
    if (!m.labels.empty()) {
      out.push_back(',');
      out += m.labels[r];
    }
    out.push_back('\n');
  }
  return out;
}

void write_feature_csv(const FeatureMatrix& m, const std::string& path) {
  atomic_write_file(path, feature_csv_string(m));
}

std::string edge_list_string(const MultilayerNetwork& net) {
  std::string out;
  const std::int32_t m = net.num_layers();
  const std::int64_t t_len = net.num_timestamps();

  auto line = [&out](std::int64_t la, std::int64_t na, std::int64_t lb,
                     std::int64_t nb) {
    out += std::to_string(la);
    out.push_back(' ');
    out += std::to_string(na);
    out.push_back(' ');
    out += std::to_string(lb);
    out.push_back(' ');
    out += std::to_string(nb);
    out.push_back('\n');
  };

  for (std::int32_t l = 0; l < m; ++l) {
    const LayerGraph& g = net.intra(l);
    for (std::int64_t u = 0; u < t_len; ++u) {
      for (const NodeId v : g.adj[u]) {
        if (v > u) line(l + 1, u + 1, l + 1, v + 1);
      }
    }
  }
  for (std::int32_t a = 0; a < m; ++a) {
    for (std::int32_t b = a + 1; b < m; ++b) {
      const CrossGraph& g = net.inter(a, b);
      for (std::int64_t i = 0; i < t_len; ++i) {
        for (const NodeId j : g.a_to_b[i]) line(a + 1, i + 1, b + 1, j + 1);
      }
    }
  }
  return out;
}

void write_edge_list(const MultilayerNetwork& net, const std::string& path) {
  atomic_write_file(path, edge_list_string(net));
}

std::string summary_json_string(const MultilayerNetwork& net) {
  nlohmann::ordered_json j;
  j["m"] = net.num_layers();
  j["T"] = net.num_timestamps();
  std::vector<std::int64_t> intra_counts;
  for (std::int32_t l = 0; l < net.num_layers(); ++l) {
    intra_counts.push_back(net.intra(l).num_edges);
  }
  j["intra_edge_counts"] = intra_counts;
  nlohmann::ordered_json inter = nlohmann::ordered_json::array();
  for (std::int32_t a = 0; a < net.num_layers(); ++a) {
    for (std::int32_t b = a + 1; b < net.num_layers(); ++b) {
      nlohmann::ordered_json entry;
      entry["layer_a"] = a + 1;
      entry["layer_b"] = b + 1;
      entry["edges"] = net.inter(a, b).num_edges;
      inter.push_back(std::move(entry));
    }
  }
  j["inter_edge_counts"] = std::move(inter);
  return j.dump(2) + "\n";
}

std::string partition_csv_string(const SubgraphView& view,
                                 const Partition& partition) {
  if (partition.assignment.size() !=
      static_cast<std::size_t>(view.num_nodes())) {
    throw std::invalid_argument("partition size does not match view");
  }
  const std::int64_t t_len = view.network().num_timestamps();
  std::string out = "layer,node,community\n";
  for (std::int64_t n = 0; n < view.num_nodes(); ++n) {
    std::int32_t layer;
    std::int64_t node;
    if (view.kind() == ViewKind::Intra || n < t_len) {
      layer = view.layer_a() + 1;
      node = n + 1;
    } else {
      layer = view.layer_b() + 1;
      node = n - t_len + 1;
    }
    out += std::to_string(layer);
    out.push_back(',');
    out += std::to_string(node);
    out.push_back(',');
    out += std::to_string(partition.assignment[n]);
    out.push_back('\n');
  }
  return out;
}

}  // namespace mhvg
