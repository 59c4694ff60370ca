#include "sgdmds/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

namespace sgdmds {

namespace {

using Row = std::vector<std::string>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

Row split_line(const std::string& line) {
  Row cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::vector<Row> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<Row> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_line(line));
  }
  if (rows.empty()) throw DataError(path.string() + ": file is empty");
  const std::size_t width = rows.front().size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != width)
      throw DataError(path.string() + ": row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].size()) + " cells, expected " + std::to_string(width));
  }
  return rows;
}

std::optional<double> parse_real(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

double parse_finite(const std::filesystem::path& path, const std::string& cell, std::size_t line,
                    std::size_t column) {
  const auto v = parse_real(cell);
  if (!v || !std::isfinite(*v))
    throw DataError(path.string() + ": row " + std::to_string(line) + ", column " +
                    std::to_string(column + 1) + ": '" + cell + "' is not a finite number");
  return *v;
}

bool all_numeric(const Row& row) {
  return std::all_of(row.begin(), row.end(), [](const std::string& c) { return parse_real(c).has_value(); });
}

void open_for_write(std::ofstream& out, const std::filesystem::path& path) {
  out.open(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void BlobSpec::validate() const {
  if (k_clusters < 1) throw ConfigError("blob spec needs at least one cluster");
  if (n < k_clusters)
    throw ConfigError("blob spec needs n >= k (n = " + std::to_string(n) + ", k = " +
                      std::to_string(k_clusters) + ")");
  if (n < 2) throw ConfigError("blob spec needs at least 2 points");
  if (d < 1) throw ConfigError("blob spec needs at least 1 dimension");
  if (!(cluster_std >= 0.0) || !std::isfinite(cluster_std))
    throw ConfigError("cluster_std must be non-negative and finite");
  if (!(center_box > 0.0) || !std::isfinite(center_box)) throw ConfigError("center_box must be positive");
}

Dataset load_feature_csv(const std::filesystem::path& path, bool has_header,
                         std::optional<LabelColumn> label_column) {
  std::vector<Row> rows = read_rows(path);
  Row header;
  if (has_header) {
    header = rows.front();
    rows.erase(rows.begin());
  }
  if (rows.empty()) throw DataError(path.string() + ": no data rows");
  const std::size_t width = rows.front().size();

  std::optional<std::size_t> label_idx;
  if (label_column) {
    if (const auto* name = std::get_if<std::string>(&*label_column)) {
      if (!has_header) throw DataError("label column by name requires a header line");
      const auto it = std::find(header.begin(), header.end(), *name);
      if (it == header.end()) throw DataError(path.string() + ": no column named '" + *name + "'");
      label_idx = static_cast<std::size_t>(it - header.begin());
    } else {
      label_idx = std::get<std::size_t>(*label_column);
      if (*label_idx >= width) throw DataError(path.string() + ": label column index out of range");
    }
  }

  const std::size_t d = width - (label_idx ? 1 : 0);
  const std::size_t first_line = has_header ? 2 : 1;
  std::vector<double> features;
  features.reserve(rows.size() * d);
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      if (label_idx && c == *label_idx)
        labels.push_back(rows[r][c]);
      else
        features.push_back(parse_finite(path, rows[r][c], r + first_line, c));
    }
  }
  return Dataset(std::move(features), rows.size(), d, std::move(labels), path.stem().string());
}

Dataset load_feature_csv_auto(const std::filesystem::path& path) {
  const std::vector<Row> rows = read_rows(path);
  const bool has_header = !all_numeric(rows.front());
  std::optional<LabelColumn> label;
  if (has_header && std::find(rows.front().begin(), rows.front().end(), "label") != rows.front().end())
    label = std::string("label");
  return load_feature_csv(path, has_header, label);
}

DissimilarityProvider load_dissimilarity_csv(const std::filesystem::path& path) {
  const std::vector<Row> rows = read_rows(path);
  const std::size_t n = rows.size();
  if (rows.front().size() != n)
    throw DataError(path.string() + ": matrix is " + std::to_string(n) + "x" +
                    std::to_string(rows.front().size()) + ", expected square");
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = parse_finite(path, rows[i][j], i + 1, j);
  return dissimilarity_from_square(m, n, path.string());
}

DissimilarityProvider dissimilarity_from_square(std::span<const double> m, std::size_t n,
                                                const std::string& source) {
  if (m.size() != n * n)
    throw DataError(source + ": expected " + std::to_string(n * n) + " entries, got " + std::to_string(m.size()));
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m[i * n + j];
      if (!std::isfinite(v))
        throw DataError(source + ": row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1) +
                        ": non-finite dissimilarity");
      if (v < 0.0)
        throw DataError(source + ": row " + std::to_string(i + 1) + ", column " +
                        std::to_string(j + 1) + ": negative dissimilarity");
      scale = std::max(scale, v);
    }
  }
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i * n + i] > kSymmetryTolerance * scale)
      throw DataError(source + ": diagonal entry " + std::to_string(i + 1) + " is not zero");
  }
  std::vector<double> packed;
  packed.reserve(pair_count(n));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = m[i * n + j];
      const double b = m[j * n + i];
      const double mag = std::max(a, b);
      if (std::abs(a - b) > kSymmetryTolerance * mag + 4.0 * eps * mag)
        throw DataError(source + ": entries (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") and (" + std::to_string(j + 1) + "," +
                        std::to_string(i + 1) + ") differ beyond tolerance");
      packed.push_back(0.5 * (a + b));
    }
  }
  return DissimilarityProvider::from_packed(n, std::move(packed));
}

Dataset generate_blobs(const BlobSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.rng_seed);
  std::uniform_real_distribution<double> center(-spec.center_box, spec.center_box);
  std::vector<double> centers(spec.k_clusters * spec.d);
  for (double& c : centers) c = center(rng);

  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> features(spec.n * spec.d);
  std::vector<std::string> labels(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const std::size_t c = i % spec.k_clusters;
    for (std::size_t k = 0; k < spec.d; ++k)
      features[i * spec.d + k] = centers[c * spec.d + k] + spec.cluster_std * noise(rng);
    labels[i] = std::to_string(c);
  }
  std::ostringstream name;
  name << "blobs_n" << spec.n << "_d" << spec.d << "_k" << spec.k_clusters;
  return Dataset(std::move(features), spec.n, spec.d, std::move(labels), name.str());
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void save_embedding_csv(const Embedding& emb, const std::vector<std::string>* labels,
                        const std::filesystem::path& path) {
  if (emb.size() < 2) throw DataError("refusing to write an embedding with fewer than 2 rows");
  if (labels && !labels->empty() && labels->size() != emb.size())
    throw DataError("label count does not match embedding rows");
  const bool with_labels = labels && !labels->empty();
  std::ofstream out;
  open_for_write(out, path);
  for (std::size_t k = 0; k < emb.dim(); ++k) out << (k ? "," : "") << 'x' << k;
  if (with_labels) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < emb.size(); ++i) {
    for (std::size_t k = 0; k < emb.dim(); ++k) out << (k ? "," : "") << format_real(emb(i, k));
    if (with_labels) out << ',' << (*labels)[i];
    out << '\n';
  }
  finish_write(out, path);
}

void save_feature_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out;
  open_for_write(out, path);
  for (std::size_t k = 0; k < dataset.dim(); ++k) out << (k ? "," : "") << 'f' << k;
  if (dataset.has_labels()) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto row = dataset.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_real(row[k]);
    if (dataset.has_labels()) out << ',' << dataset.labels()[i];
    out << '\n';
  }
  finish_write(out, path);
}

void save_trace_csv(const SolverTrace& trace, const std::filesystem::path& path) {
  std::ofstream out;
  open_for_write(out, path);
  out << "step,raw_stress,normalized_stress,learning_rate,elapsed_seconds\n";
  for (const TraceEntry& e : trace.entries()) {
    out << e.step << ',' << format_real(e.raw_stress) << ',' << format_real(e.normalized_stress) << ','
        << (e.learning_rate ? format_real(*e.learning_rate) : std::string()) << ','
        << format_real(e.elapsed_seconds) << '\n';
  }
  finish_write(out, path);
}

}  // namespace sgdmds
