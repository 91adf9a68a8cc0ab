#pragma once

// Hand-emitted static SVG: line plots and a labelled cell map.

#include <filesystem>
#include <string>
#include <vector>

namespace pfront::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_x = false;
  bool log_y = false;
};

std::string render(const LinePlot& plot);

struct CellMap {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  int nx = 1, ny = 1;
  /// Row-major, ny rows of nx cells; index into `palette`.
  std::vector<int> cells;
  std::vector<std::string> palette;
  std::vector<std::string> legend;
  /// Overlaid curves in data coordinates.
  std::vector<Series> curves;
};

std::string render(const CellMap& map);

void write_svg(const std::filesystem::path& path, const std::string& svg);

}  // namespace pfront::cli
