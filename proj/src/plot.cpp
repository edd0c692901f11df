#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "twlab/experiments.hpp"

namespace twlab::experiments {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 20, kBottom = 50;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

struct YExpr {
  std::string num;
  std::string den;  // empty for a plain column
};

YExpr parse_y(const std::string& y) {
  const auto slash = y.find('/');
  if (slash == std::string::npos) return {y, ""};
  return {y.substr(0, slash), y.substr(slash + 1)};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

}  // namespace

void write_plot_svg(std::ostream& out, const std::vector<TrialRecord>& records, const std::string& x,
                    const std::string& y) {
  const YExpr expr = parse_y(y);
  // Validate names up front so an empty input still rejects typos.
  TrialRecord probe;
  record_column(probe, x);
  record_column(probe, expr.num);
  if (!expr.den.empty()) record_column(probe, expr.den);

  std::map<std::string, std::map<double, std::pair<double, std::size_t>>> series;
  for (const auto& r : records) {
    const auto xv = record_column(r, x);
    auto yv = record_column(r, expr.num);
    if (!xv || !yv) continue;
    if (!expr.den.empty()) {
      const auto dv = record_column(r, expr.den);
      if (!dv || *dv == 0.0) continue;
      *yv /= *dv;
    }
    auto& cell = series[r.model][*xv];
    cell.first += *yv;
    ++cell.second;
  }

  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  bool first = true;
  for (const auto& [model, points] : series) {
    for (const auto& [xv, cell] : points) {
      const double yv = cell.first / static_cast<double>(cell.second);
      if (first) {
        x_lo = x_hi = xv;
        y_lo = y_hi = yv;
        first = false;
      }
      x_lo = std::min(x_lo, xv);
      x_hi = std::max(x_hi, xv);
      y_lo = std::min(y_lo, yv);
      y_hi = std::max(y_hi, yv);
    }
  }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double v) { return kTop + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double x0 = kLeft, y0 = kTop + plot_h;
  out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 + plot_w << "\" y2=\"" << y0
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << x0 << "\" y1=\"" << kTop << "\" x2=\"" << x0 << "\" y2=\"" << y0
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << x0 << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\">" << num(x_lo) << "</text>\n";
  out << "<text x=\"" << x0 + plot_w << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\">" << num(x_hi)
      << "</text>\n";
  out << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 << "\" text-anchor=\"end\">" << num(y_lo) << "</text>\n";
  out << "<text x=\"" << x0 - 6 << "\" y=\"" << kTop + 4 << "\" text-anchor=\"end\">" << num(y_hi) << "</text>\n";
  out << "<text class=\"x-label\" x=\"" << x0 + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(x) << "</text>\n";
  out << "<text class=\"y-label\" x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">" << escape(y) << "</text>\n";

  std::size_t idx = 0;
  for (const auto& [model, points] : series) {
    const char* color = kPalette[idx % std::size(kPalette)];
    out << "<polyline class=\"series\" data-model=\"" << escape(model) << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    bool sep = false;
    for (const auto& [xv, cell] : points) {
      if (sep) out << ' ';
      out << num(px(xv)) << ',' << num(py(cell.first / static_cast<double>(cell.second)));
      sep = true;
    }
    out << "\"/>\n";
    for (const auto& [xv, cell] : points) {
      out << "<circle cx=\"" << num(px(xv)) << "\" cy=\"" << num(py(cell.first / static_cast<double>(cell.second)))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 16 + 18 * static_cast<double>(idx);
    out << "<line x1=\"" << kWidth - kRight + 16 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kWidth - kRight + 36
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 42 << "\" y=\"" << ly << "\">" << escape(model) << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
}

}  // namespace twlab::experiments
