#include "sgdmds/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace sgdmds::svg {

namespace {

constexpr int kMarginLeft = 80;
constexpr int kMarginRight = 170;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double transform(double v) const { return log ? std::log10(v) : v; }

  void fit(double tlo, double thi) {
    if (!(tlo <= thi)) {
      tlo = 0.0;
      thi = 1.0;
    }
    if (thi - tlo < 1e-12 * std::max(1.0, std::abs(thi))) {
      tlo -= 0.5;
      thi += 0.5;
    }
    const double pad = 0.03 * (thi - tlo);
    lo = tlo - pad;
    hi = thi + pad;
  }

  double to_unit(double v) const { return (transform(v) - lo) / (hi - lo); }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo); e <= hi; e += 1.0) out.push_back(std::pow(10.0, e));
      if (out.size() < 2) out = {std::pow(10.0, lo), std::pow(10.0, hi)};
      return out;
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
      step = f * mag;
      if (span / step <= 6.0) break;
    }
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * span; t += step)
      out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return out;
  }
};

}  // namespace

const std::string& palette(std::size_t index) {
  static const std::vector<std::string> colors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colors[index % colors.size()];
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string line_chart(const std::vector<Series>& series, const ChartOptions& options) {
  Axis ax{0, 1, options.log_x};
  Axis ay{0, 1, options.log_y};
  const auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!ax.log || x > 0.0) && (!ay.log || y > 0.0);
  };

  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const Series& s : series) {
    for (std::size_t p = 0; p < std::min(s.x.size(), s.y.size()); ++p) {
      if (!usable(s.x[p], s.y[p])) continue;
      xlo = std::min(xlo, ax.transform(s.x[p]));
      xhi = std::max(xhi, ax.transform(s.x[p]));
      ylo = std::min(ylo, ay.transform(s.y[p]));
      yhi = std::max(yhi, ay.transform(s.y[p]));
    }
  }
  ax.fit(xlo, xhi);
  ay.fit(ylo, yhi);

  const int plot_w = options.width - kMarginLeft - kMarginRight;
  const int plot_h = options.height - kMarginTop - kMarginBottom;
  const auto px = [&](double x) { return kMarginLeft + ax.to_unit(x) * plot_w; };
  const auto py = [&](double y) { return kMarginTop + (1.0 - ay.to_unit(y)) * plot_h; };

  std::map<std::string, std::size_t> group_color;
  std::vector<std::string> group_order;
  for (const Series& s : series) {
    if (group_color.emplace(s.group, group_color.size()).second) group_order.push_back(s.group);
  }

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << escape_xml(options.title) << "</text>\n";

  // Axes and ticks.
  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << kMarginLeft + plot_w
      << "\" y2=\"" << kMarginTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft << "\" y2=\""
      << kMarginTop + plot_h << "\"/>\n";
  for (double t : ax.ticks()) {
    if (ax.log ? std::log10(t) < ax.lo || std::log10(t) > ax.hi : t < ax.lo || t > ax.hi) continue;
    const double x = px(t);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << num(x) << "\" y2=\""
        << kMarginTop + plot_h + 5 << "\"/>\n"
        << "<text x=\"" << num(x) << "\" y=\"" << kMarginTop + plot_h + 18
        << "\" stroke=\"none\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    if (ay.log ? std::log10(t) < ay.lo || std::log10(t) > ay.hi : t < ay.lo || t > ay.hi) continue;
    const double y = py(t);
    svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << kMarginLeft << "\" y2=\""
        << num(y) << "\"/>\n"
        << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << num(y + 4)
        << "\" stroke=\"none\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << options.height - 15
      << "\" stroke=\"none\" text-anchor=\"middle\" font-size=\"13\">" << escape_xml(options.x_label)
      << (ax.log ? " (log)" : "") << "</text>\n"
      << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2 << "\" stroke=\"none\" text-anchor=\"middle\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << kMarginTop + plot_h / 2 << ")\">"
      << escape_xml(options.y_label) << (ay.log ? " (log)" : "") << "</text>\n"
      << "</g>\n";

  for (const Series& s : series) {
    svg << "<polyline class=\"series\" data-series=\"" << escape_xml(s.name) << "\" fill=\"none\" stroke=\""
        << palette(group_color[s.group]) << "\" stroke-width=\"1.5\" stroke-opacity=\"0.8\" points=\"";
    bool first = true;
    for (std::size_t p = 0; p < std::min(s.x.size(), s.y.size()); ++p) {
      if (!usable(s.x[p], s.y[p])) continue;
      svg << (first ? "" : " ") << num(px(s.x[p])) << ',' << num(py(s.y[p]));
      first = false;
    }
    svg << "\"/>\n";
  }

  svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t g = 0; g < group_order.size(); ++g) {
    const int y = kMarginTop + 10 + static_cast<int>(g) * 18;
    const int x = kMarginLeft + plot_w + 15;
    svg << "<line x1=\"" << x << "\" y1=\"" << y << "\" x2=\"" << x + 20 << "\" y2=\"" << y << "\" stroke=\""
        << palette(g) << "\" stroke-width=\"3\"/>\n"
        << "<text x=\"" << x + 26 << "\" y=\"" << y + 4 << "\">" << escape_xml(group_order[g]) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string scatter(const Embedding& emb, const std::vector<std::string>& labels, const std::string& title,
                    int width, int height) {
  if (emb.dim() < 2) throw std::invalid_argument("scatter plot needs at least 2 embedding dimensions");
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (std::size_t i = 0; i < emb.size(); ++i) {
    xlo = std::min(xlo, emb(i, 0));
    xhi = std::max(xhi, emb(i, 0));
    ylo = std::min(ylo, emb(i, 1));
    yhi = std::max(yhi, emb(i, 1));
  }
  // Equal aspect so distances are not distorted.
  const double span = std::max({xhi - xlo, yhi - ylo, 1e-12});
  const double cx = 0.5 * (xlo + xhi);
  const double cy = 0.5 * (ylo + yhi);
  const double margin = 30.0;
  const double side = std::min(width, height) - 2.0 * margin;
  const auto px = [&](double x) { return width / 2.0 + (x - cx) / span * side; };
  const auto py = [&](double y) { return height / 2.0 - (y - cy) / span * side; };

  std::map<std::string, std::size_t> color_of;
  std::vector<std::string> order;
  for (const std::string& l : labels)
    if (color_of.emplace(l, color_of.size()).second) order.push_back(l);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << escape_xml(title) << "</text>\n"
      << "<g class=\"points\" stroke=\"none\" fill-opacity=\"0.75\">\n";
  for (std::size_t i = 0; i < emb.size(); ++i) {
    const std::string& color = labels.empty() ? palette(0) : palette(color_of[labels[i]]);
    svg << "<circle cx=\"" << num(px(emb(i, 0))) << "\" cy=\"" << num(py(emb(i, 1))) << "\" r=\"2.5\" fill=\""
        << color << "\"/>\n";
  }
  svg << "</g>\n";
  if (!order.empty() && order.size() <= 20) {
    svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (std::size_t g = 0; g < order.size(); ++g) {
      const int y = 40 + static_cast<int>(g) * 15;
      svg << "<circle cx=\"" << width - 70 << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << palette(g) << "\"/>\n"
          << "<text x=\"" << width - 60 << "\" y=\"" << y + 4 << "\">" << escape_xml(order[g]) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace sgdmds::svg
