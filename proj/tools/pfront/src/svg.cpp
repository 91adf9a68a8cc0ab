#include "pfront/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "pfront/csv.hpp"

namespace pfront::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double pixel_lo = 0.0, pixel_hi = 1.0;

  [[nodiscard]] double map(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double w = log ? std::log10(v) : v;
    return pixel_lo + (w - a) / (b - a) * (pixel_hi - pixel_lo);
  }
};

std::string header(const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{3}</text>\n",
      kWidth, kHeight, (kLeft + kWidth - kRight) / 2.0, escape(title));
}

std::string frame(const Axis& ax, const Axis& ay, const std::string& xl, const std::string& yl) {
  std::string out = fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft, kTop,
      kWidth - kLeft - kRight, kHeight - kTop - kBottom);
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    const double xv = ax.log ? std::pow(10.0, std::log10(ax.lo) + f * (std::log10(ax.hi) - std::log10(ax.lo)))
                             : ax.lo + f * (ax.hi - ax.lo);
    const double yv = ay.log ? std::pow(10.0, std::log10(ay.lo) + f * (std::log10(ay.hi) - std::log10(ay.lo)))
                             : ay.lo + f * (ay.hi - ay.lo);
    const double px = ax.map(xv), py = ay.map(yv);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3g}</text>\n", px,
                       kHeight - kBottom + 16, xv);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", kLeft - 6, py + 4, yv);
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
                     (kLeft + kWidth - kRight) / 2.0, kHeight - 12, escape(xl));
  out += fmt::format(
      "<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
      (kTop + kHeight - kBottom) / 2.0, (kTop + kHeight - kBottom) / 2.0, escape(yl));
  return out;
}

std::string polyline(const Series& s, const Axis& ax, const Axis& ay) {
  std::string pts;
  std::string marks;
  for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
    if ((ax.log && s.x[i] <= 0.0) || (ay.log && s.y[i] <= 0.0)) continue;
    const double px = ax.map(s.x[i]), py = ay.map(s.y[i]);
    pts += fmt::format("{:.2f},{:.2f} ", px, py);
    if (s.markers) marks += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\"/>\n", px, py, s.color);
  }
  return fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n{}", s.color,
                     s.dashed ? " stroke-dasharray=\"5,3\"" : "", pts, marks);
}

std::string legend_entry(int k, const std::string& color, const std::string& label, bool box) {
  const double x = kWidth - kRight + 12, y = kTop + 10 + 18 * k;
  std::string out = box ? fmt::format("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"10\" fill=\"{}\"/>\n", x, y - 9, color)
                        : fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                                      x, y - 4, x + 14, y - 4, color);
  out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", x + 18, y, escape(label));
  return out;
}

}  // namespace

std::string render(const LinePlot& plot) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if ((plot.log_x && s.x[i] <= 0.0) || (plot.log_y && s.y[i] <= 0.0)) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x0 < x1)) { x0 = plot.log_x ? 0.1 : 0.0; x1 = 1.0; }
  if (!(y0 < y1)) {
    y1 = std::isfinite(y1) ? y1 + 1.0 : 1.0;
    y0 = std::isfinite(y0) && !plot.log_y ? y0 - 1.0 : (plot.log_y ? y1 / 10.0 : 0.0);
  }
  const Axis ax{x0, x1, plot.log_x, kLeft, kWidth - kRight};
  const Axis ay{y0, y1, plot.log_y, kHeight - kBottom, kTop};
  std::string out = header(plot.title) + frame(ax, ay, plot.x_label, plot.y_label);
  int k = 0;
  for (const auto& s : plot.series) {
    out += polyline(s, ax, ay);
    out += legend_entry(k++, s.color, s.label, false);
  }
  return out + "</svg>\n";
}

std::string render(const CellMap& map) {
  const Axis ax{map.x_min, map.x_max, false, kLeft, kWidth - kRight};
  const Axis ay{map.y_min, map.y_max, false, kHeight - kBottom, kTop};
  std::string out = header(map.title);
  const double cw = (ax.pixel_hi - ax.pixel_lo) / map.nx;
  const double ch = (ay.pixel_lo - ay.pixel_hi) / map.ny;
  for (int j = 0; j < map.ny; ++j) {
    for (int i = 0; i < map.nx; ++i) {
      const int c = map.cells[static_cast<std::size_t>(j * map.nx + i)];
      out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                         ax.pixel_lo + i * cw, ay.pixel_lo - (j + 1) * ch, cw + 0.05, ch + 0.05,
                         map.palette[static_cast<std::size_t>(c)]);
    }
  }
  out += frame(ax, ay, map.x_label, map.y_label);
  for (const auto& s : map.curves) out += polyline(s, ax, ay);
  for (std::size_t k = 0; k < map.legend.size(); ++k) {
    out += legend_entry(static_cast<int>(k), map.palette[k], map.legend[k], true);
  }
  return out + "</svg>\n";
}

void write_svg(const std::filesystem::path& path, const std::string& svg) { write_text(path, svg); }

}  // namespace pfront::cli
