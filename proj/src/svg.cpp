#include "ptssh/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptssh/csv.hpp"

namespace ptssh::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 360.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 45.0;

constexpr std::array<const char*, 6> kColors = {"#1b7837", "#000000", "#d95f02",
                                                "#7570b3", "#e7298a", "#a6761d"};

std::string num(double x) { return csv::format_shortest(std::round(x * 100.0) / 100.0); }

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

void render_panel(std::ostringstream& out, const Figure& fig, double top) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  auto y_of = [&](double y) { return fig.log_y ? std::log10(y) : y; };
  for (const Series& s : fig.series) {
    for (auto [x, y] : s.points) {
      if (fig.log_y && !(y > 0.0)) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y_of(y));
      y_hi = std::max(y_hi, y_of(y));
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + kMarginTop + (y_hi - y_of(y)) / (y_hi - y_lo) * plot_h; };

  out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(top + kMarginTop) << "\" width=\""
      << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(top + 18)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(fig.title) << "</text>\n";
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\""
      << num(top + kPanelHeight - 8) << "\" text-anchor=\"middle\" font-size=\"12\">"
      << escape(fig.x_label) << "</text>\n";
  out << "<text x=\"14\" y=\"" << num(top + kMarginTop + plot_h / 2)
      << "\" font-size=\"12\" transform=\"rotate(-90 14 " << num(top + kMarginTop + plot_h / 2)
      << ")\" text-anchor=\"middle\">" << escape(fig.log_y ? "log10 " + fig.y_label : fig.y_label)
      << "</text>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + t * (x_hi - x_lo) / 4;
    const double yv = y_lo + t * (y_hi - y_lo) / 4;
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(top + kMarginTop + plot_h + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << csv::format_shortest(std::round(xv * 1e4) / 1e4)
        << "</text>\n";
    const double ypix = top + kMarginTop + (y_hi - yv) / (y_hi - y_lo) * plot_h;
    out << "<text x=\"" << num(kMarginLeft - 4) << "\" y=\"" << num(ypix + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">"
        << csv::format_shortest(std::round(yv * 1e4) / 1e4) << "</text>\n";
  }

  for (std::size_t k = 0; k < fig.series.size(); ++k) {
    const Series& s = fig.series[k];
    const char* color = kColors[k % kColors.size()];
    if (s.lines) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
      for (auto [x, y] : s.points) {
        if (fig.log_y && !(y > 0.0)) continue;
        out << num(px(x)) << ',' << num(py(y)) << ' ';
      }
      out << "\"/>\n";
    } else {
      for (auto [x, y] : s.points) {
        if (fig.log_y && !(y > 0.0)) continue;
        out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"1.8\" fill=\""
            << color << "\"/>\n";
      }
    }
    const double ly = top + kMarginTop + 14.0 * (k + 1);
    out << "<rect x=\"" << num(kWidth - kMarginRight + 10) << "\" y=\"" << num(ly - 8)
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << num(kWidth - kMarginRight + 26) << "\" y=\"" << num(ly)
        << "\" font-size=\"11\">" << escape(s.label) << "</text>\n";
  }
}

}  // namespace

std::string render(const std::vector<Figure>& panels) {
  std::ostringstream out;
  const double height = kPanelHeight * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(height) << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(out, panels[i], kPanelHeight * static_cast<double>(i));
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ptssh::svg
