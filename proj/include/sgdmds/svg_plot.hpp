#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sgdmds/data_model.hpp"

namespace sgdmds::svg {

/// One polyline. Series sharing a `group` share a color and a legend entry.
struct Series {
  std::string name;
  std::string group;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 480;
};

/// Line chart with axes, tick labels and a legend. Each series becomes one
/// <polyline class="series">; non-positive values are dropped on log axes.
std::string line_chart(const std::vector<Series>& series, const ChartOptions& options);

/// Scatter of the first two embedding coordinates, colored by label (a single
/// color when `labels` is empty).
std::string scatter(const Embedding& emb, const std::vector<std::string>& labels,
                    const std::string& title, int width = 600, int height = 600);

/// Categorical palette, cycling.
const std::string& palette(std::size_t index);

std::string escape_xml(const std::string& text);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace sgdmds::svg
