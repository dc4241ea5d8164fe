#include "dicke/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr double kMarginLeft = 72.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 56.0;
constexpr double kPlotW = 560.0;
constexpr double kPlotH = 420.0;

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string rgb(int r, int g, int b) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

// Two-sided linear scale: blue below zero, white at zero, red above (plain
// white-to-red when the data never goes negative).
std::string heat_color(double v, double vmin, double vmax) {
  const auto lerp = [](int a, int b, double t) {
    return static_cast<int>(std::lround(a + (b - a) * t));
  };
  if (vmin < 0.0 && vmax > 0.0) {
    if (v >= 0.0) {
      const double t = vmax > 0.0 ? v / vmax : 0.0;
      return rgb(lerp(255, 178, t), lerp(255, 24, t), lerp(255, 43, t));
    }
    const double t = vmin < 0.0 ? v / vmin : 0.0;
    return rgb(lerp(255, 33, t), lerp(255, 102, t), lerp(255, 172, t));
  }
  const double t = vmax > vmin ? (v - vmin) / (vmax - vmin) : 0.0;
  return rgb(lerp(255, 178, t), lerp(255, 24, t), lerp(255, 43, t));
}

void svg_header(std::ofstream& out, double w, double h) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n"
      << "<rect width=\"" << w << "\" height=\"" << h
      << "\" fill=\"white\"/>\n";
}

void svg_frame_and_labels(std::ofstream& out, const std::string& x_label,
                          const std::string& y_label,
                          const std::string& title) {
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop
      << "\" width=\"" << kPlotW << "\" height=\"" << kPlotH
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kMarginLeft + kPlotW / 2 << "\" y=\"24\" "
      << "text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  out << "<text x=\"" << kMarginLeft + kPlotW / 2 << "\" y=\""
      << kMarginTop + kPlotH + 44 << "\" text-anchor=\"middle\">" << x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << kMarginTop + kPlotH / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kMarginTop + kPlotH / 2 << ")\">" << y_label << "</text>\n";
}

struct AxisMap {
  double v0, v1, p0, span;
  bool flip;
  double operator()(double v) const {
    const double t = v1 > v0 ? (v - v0) / (v1 - v0) : 0.5;
    return flip ? p0 + (1.0 - t) * span : p0 + t * span;
  }
};

void svg_ticks(std::ofstream& out, const AxisMap& xmap, const AxisMap& ymap) {
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmap.v0 + (xmap.v1 - xmap.v0) * i / 4.0;
    const double xp = xmap(xv);
    out << "<line x1=\"" << xp << "\" y1=\"" << kMarginTop + kPlotH
        << "\" x2=\"" << xp << "\" y2=\"" << kMarginTop + kPlotH + 5
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << xp << "\" y=\"" << kMarginTop + kPlotH + 20
        << "\" text-anchor=\"middle\">" << short_num(xv) << "</text>\n";
    const double yv = ymap.v0 + (ymap.v1 - ymap.v0) * i / 4.0;
    const double yp = ymap(yv);
    out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << yp << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << yp << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << yp + 4
        << "\" text-anchor=\"end\">" << short_num(yv) << "</text>\n";
  }
}

}  // namespace

void render_heatmap(const std::filesystem::path& path,
                    const std::vector<double>& xs,
                    const std::vector<double>& ys, const Mat& value,
                    const std::string& x_label, const std::string& y_label,
                    const std::string& title, bool contour_zero) {
  if (xs.size() < 2 || ys.size() < 2 ||
      value.rows() != static_cast<Eigen::Index>(ys.size()) ||
      value.cols() != static_cast<Eigen::Index>(xs.size()))
    throw ValidationError("render_heatmap: table does not match the axes");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("render_heatmap: cannot open " + path.string());

  const double width = kMarginLeft + kPlotW + 120.0;
  const double height = kMarginTop + kPlotH + kMarginBottom;
  svg_header(out, width, height);

  const double vmin = value.minCoeff();
  const double vmax = value.maxCoeff();
  const AxisMap xmap{xs.front(), xs.back(), kMarginLeft, kPlotW, false};
  const AxisMap ymap{ys.front(), ys.back(), kMarginTop, kPlotH, true};

  // Cells drawn around their centers; edge cells extend half a step.
  const auto x_edge = [&xs, &xmap](std::size_t k, int side) {
    const double c = xs[k];
    const double lo = k == 0 ? c : 0.5 * (xs[k - 1] + c);
    const double hi = k + 1 == xs.size() ? c : 0.5 * (xs[k + 1] + c);
    return xmap(side == 0 ? lo : hi);
  };
  const auto y_edge = [&ys, &ymap](std::size_t i, int side) {
    const double c = ys[i];
    const double lo = i == 0 ? c : 0.5 * (ys[i - 1] + c);
    const double hi = i + 1 == ys.size() ? c : 0.5 * (ys[i + 1] + c);
    return ymap(side == 0 ? lo : hi);
  };
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double x0 = x_edge(k, 0), x1 = x_edge(k, 1);
      const double y1 = y_edge(i, 0), y0 = y_edge(i, 1);  // pixel y flips
      out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\""
          << x1 - x0 << "\" height=\"" << y1 - y0 << "\" fill=\""
          << heat_color(value(i, k), vmin, vmax) << "\"/>\n";
    }
  }

  if (contour_zero && vmin < 0.0 && vmax > 0.0) {
    // Marching squares on the cell-center lattice.
    out << "<g stroke=\"black\" stroke-width=\"1.5\">\n";
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
      for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        struct Pt {
          double x, y;
        };
        std::vector<Pt> hits;
        const auto edge = [&](double va, double vb, double xa, double ya,
                              double xb, double yb) {
          if ((va < 0.0) == (vb < 0.0) || va == vb) return;
          const double s = va / (va - vb);
          hits.push_back({xa + s * (xb - xa), ya + s * (yb - ya)});
        };
        const double v00 = value(i, k), v01 = value(i, k + 1);
        const double v10 = value(i + 1, k), v11 = value(i + 1, k + 1);
        const double xa = xmap(xs[k]), xb = xmap(xs[k + 1]);
        const double ya = ymap(ys[i]), yb = ymap(ys[i + 1]);
        edge(v00, v01, xa, ya, xb, ya);
        edge(v01, v11, xb, ya, xb, yb);
        edge(v11, v10, xb, yb, xa, yb);
        edge(v10, v00, xa, yb, xa, ya);
        for (std::size_t h = 0; h + 1 < hits.size(); h += 2)
          out << "<line x1=\"" << hits[h].x << "\" y1=\"" << hits[h].y
              << "\" x2=\"" << hits[h + 1].x << "\" y2=\"" << hits[h + 1].y
              << "\"/>\n";
      }
    }
    out << "</g>\n";
  }

  // Color bar.
  const double bar_x = kMarginLeft + kPlotW + 26.0;
  for (int s = 0; s < 100; ++s) {
    const double v = vmin + (vmax - vmin) * (s + 0.5) / 100.0;
    const double y = kMarginTop + kPlotH * (1.0 - (s + 1) / 100.0);
    out << "<rect x=\"" << bar_x << "\" y=\"" << y << "\" width=\"18\" "
        << "height=\"" << kPlotH / 100.0 + 0.5 << "\" fill=\""
        << heat_color(v, vmin, vmax) << "\"/>\n";
  }
  out << "<rect x=\"" << bar_x << "\" y=\"" << kMarginTop
      << "\" width=\"18\" height=\"" << kPlotH
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << bar_x + 24 << "\" y=\"" << kMarginTop + kPlotH
      << "\">" << short_num(vmin) << "</text>\n";
  out << "<text x=\"" << bar_x + 24 << "\" y=\"" << kMarginTop + 10 << "\">"
      << short_num(vmax) << "</text>\n";

  svg_frame_and_labels(out, x_label, y_label, title);
  svg_ticks(out, xmap, ymap);
  out << "</svg>\n";
}

void render_line_plot(const std::filesystem::path& path,
                      const std::vector<LineSeries>& series,
                      const std::string& x_label, const std::string& y_label,
                      const std::string& title) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ResourceError("render_line_plot: cannot open " + path.string());

  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool first = true;
  for (const LineSeries& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        x0 = x1 = s.x[i];
        y0 = y1 = s.y[i];
        first = false;
      }
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (y1 == y0) y1 = y0 + 1.0;
  if (x1 == x0) x1 = x0 + 1.0;
  y1 += 0.05 * (y1 - y0);  // headroom so peaks do not touch the frame

  const double width = kMarginLeft + kPlotW + 120.0;
  const double height = kMarginTop + kPlotH + kMarginBottom;
  svg_header(out, width, height);
  const AxisMap xmap{x0, x1, kMarginLeft, kPlotW, false};
  const AxisMap ymap{y0, y1, kMarginTop, kPlotH, true};

  static const char* kPalette[] = {"#1b6ca8", "#c2431f", "#3d8c40",
                                   "#7b3fa0", "#b08c00", "#444444"};
  for (std::size_t s = 0; s < series.size(); ++s) {
    const LineSeries& ser = series[s];
    if (ser.x.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\""
        << kPalette[s % std::size(kPalette)] << "\" stroke-width=\"1.8\" "
        << "points=\"";
    for (std::size_t i = 0; i < ser.x.size(); ++i)
      out << xmap(ser.x[i]) << ',' << ymap(ser.y[i]) << ' ';
    out << "\"/>\n";
    out << "<text x=\"" << kMarginLeft + kPlotW + 26 << "\" y=\""
        << kMarginTop + 16 + 18 * static_cast<double>(s) << "\" fill=\""
        << kPalette[s % std::size(kPalette)] << "\">" << ser.label
        << "</text>\n";
  }

  svg_frame_and_labels(out, x_label, y_label, title);
  svg_ticks(out, xmap, ymap);
  out << "</svg>\n";
}

}  // namespace dicke
