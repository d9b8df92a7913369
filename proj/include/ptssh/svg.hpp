#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ptssh::svg {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool lines = false;
};

struct Figure {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

/// Minimal static scatter/line plot, one or more panels stacked vertically.
std::string render(const std::vector<Figure>& panels);

}  // namespace ptssh::svg
