#include "tripletgen/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Core>

#include "tripletgen/errors.hpp"

namespace tripletgen {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;
constexpr int kModelSamples = 100;

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Marker {
  double x, y, lo, hi;
};

double abscissa(const ReportRow& r, AxisQuantity q) {
  switch (q) {
    case AxisQuantity::stimulation_energy: return r.xi_sti_uJ;
    case AxisQuantity::pump_energy: return r.xi_p_uJ;
    case AxisQuantity::energy_product: return r.xi_p_uJ * r.xi_sti_uJ;
  }
  return 0;
}

Marker marker(std::span<const ReportRow> rows, std::size_t k, const AxesSpec& axes) {
  const ReportRow& r = rows[k];
  const double x = abscissa(r, axes.x);
  if (axes.y == ValueQuantity::triplets_per_second) {
    const double f = axes.repetition_rate;
    return {x, r.n_measured * f, r.n_meas_lo * f, r.n_meas_hi * f};
  }
  if (!(r.n_measured > 0)) return {x, r.norm_measured, 0.0, 0.0};
  const Interval bar = normalized_interval(rows, k);
  return {x, r.norm_measured, bar.low, bar.high};
}

double row_model_value(const ReportRow& r, const AxesSpec& axes) {
  return axes.y == ValueQuantity::triplets_per_second ? r.n_model * axes.repetition_rate : r.norm_model;
}

class Axis {
public:
  Axis(double lo, double hi, bool log, double pixel_lo, double pixel_hi, const char* name)
      : log_(log), pixel_lo_(pixel_lo), pixel_hi_(pixel_hi) {
    if (!(hi > lo)) throw DomainError(std::string("plot: degenerate range on ") + name + " axis");
    if (log_) {
      lo_ = std::log10(lo);
      hi_ = std::log10(hi);
      const double pad = 0.05 * (hi_ - lo_);
      lo_ -= pad;
      hi_ += pad;
    } else {
      const double pad = 0.05 * (hi - lo);
      lo_ = lo - pad;
      hi_ = hi + pad;
    }
  }

  double operator()(double v) const {
    const double t = ((log_ ? std::log10(v) : v) - lo_) / (hi_ - lo_);
    return pixel_lo_ + t * (pixel_hi_ - pixel_lo_);
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log_) {
      for (double e = std::ceil(lo_); e <= std::floor(hi_); e += 1) t.push_back(std::pow(10.0, e));
      if (t.size() >= 2) return t;
      t.clear();
    }
    for (int k = 0; k <= 5; ++k) {
      const double u = lo_ + (hi_ - lo_) * k / 5;
      t.push_back(log_ ? std::pow(10.0, u) : u);
    }
    return t;
  }

private:
  bool log_;
  double lo_ = 0, hi_ = 1;
  double pixel_lo_, pixel_hi_;
};

}  // namespace

std::string render_svg_plot(std::span<const ReportRow> rows, const AxesSpec& axes) {
  if (rows.empty()) throw DomainError("plot: no rows");

  std::vector<Marker> markers;
  markers.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Marker m = marker(rows, k, axes);
    auto offending = [&](const char* what) {
      return DomainError("plot: log-scale " + std::string(what) + " requires positive values; row " +
                         std::to_string(k + 1) + " (set " + std::string(to_string(rows[k].set)) +
                         ") is not");
    };
    if (axes.log_x && !(m.x > 0)) throw offending("x axis");
    if (axes.log_y && !(m.y > 0 && m.lo > 0)) throw offending("y axis");
    markers.push_back(m);
  }

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  for (const auto& m : markers) {
    x_min = std::min(x_min, m.x);
    x_max = std::max(x_max, m.x);
  }

  // Model curve: either the supplied function sampled on the data range,
  // or the model column of the rows.
  std::vector<std::pair<double, double>> curve;
  if (axes.model && x_max > x_min) {
    Eigen::ArrayXd xs = axes.log_x
                            ? Eigen::ArrayXd::LinSpaced(kModelSamples, std::log10(x_min), std::log10(x_max))
                                  .unaryExpr([](double e) { return std::pow(10.0, e); })
                                  .eval()
                            : Eigen::ArrayXd::LinSpaced(kModelSamples, x_min, x_max);
    for (Eigen::Index k = 0; k < xs.size(); ++k) curve.emplace_back(xs(k), axes.model(xs(k)));
  } else {
    for (std::size_t k = 0; k < rows.size(); ++k) curve.emplace_back(markers[k].x, row_model_value(rows[k], axes));
    std::sort(curve.begin(), curve.end());
  }

  double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
  for (const auto& m : markers) {
    y_min = std::min(y_min, m.lo);
    y_max = std::max(y_max, m.hi);
  }
  for (const auto& [x, y] : curve) {
    if (axes.log_y && !(y > 0)) continue;
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }

  const Axis ax(x_min, x_max, axes.log_x, kLeft, kWidth - kRight, "x");
  const Axis ay(y_min, y_max, axes.log_y, kHeight - kBottom, kTop, "y");

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
    << "<text x=\"" << num(kWidth / 2) << "\" y=\"25\" text-anchor=\"middle\" font-size=\"15\">"
    << escape_xml(axes.title) << "</text>\n";

  // Frame and ticks.
  s << "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n"
    << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
    << "\" height=\"" << num(kHeight - kTop - kBottom) << "\"/>\n</g>\n<g id=\"ticks\">\n";
  for (double t : ax.ticks()) {
    const double px = ax(t);
    s << "<line x1=\"" << num(px) << "\" y1=\"" << num(kHeight - kBottom) << "\" x2=\"" << num(px)
      << "\" y2=\"" << num(kHeight - kBottom + 5) << "\" stroke=\"black\"/>"
      << "<text x=\"" << num(px) << "\" y=\"" << num(kHeight - kBottom + 18) << "\" text-anchor=\"middle\">"
      << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double py = ay(t);
    s << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kLeft) << "\" y2=\""
      << num(py) << "\" stroke=\"black\"/>"
      << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
      << tick_label(t) << "</text>\n";
  }
  s << "</g>\n"
    << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 15)
    << "\" text-anchor=\"middle\">" << escape_xml(axes.x_label) << "</text>\n"
    << "<text x=\"20\" y=\"" << num((kTop + kHeight - kBottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << num((kTop + kHeight - kBottom) / 2) << ")\">" << escape_xml(axes.y_label) << "</text>\n";

  s << "<polyline id=\"model\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (const auto& [x, y] : curve) {
    if (axes.log_y && !(y > 0)) continue;
    s << (first ? "" : " ") << num(ax(x)) << ',' << num(ay(y));
    first = false;
  }
  s << "\"/>\n<g id=\"measured\" stroke=\"#1f4e9a\" fill=\"#1f4e9a\">\n";
  for (const auto& m : markers) {
    const double px = ax(m.x), py = ay(m.y), lo = ay(m.lo), hi = ay(m.hi);
    s << "<g class=\"point\"><line x1=\"" << num(px) << "\" y1=\"" << num(lo) << "\" x2=\"" << num(px)
      << "\" y2=\"" << num(hi) << "\"/>"
      << "<line x1=\"" << num(px - 4) << "\" y1=\"" << num(lo) << "\" x2=\"" << num(px + 4) << "\" y2=\""
      << num(lo) << "\"/>"
      << "<line x1=\"" << num(px - 4) << "\" y1=\"" << num(hi) << "\" x2=\"" << num(px + 4) << "\" y2=\""
      << num(hi) << "\"/>"
      << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"4\"/></g>\n";
  }
  s << "</g>\n";

  const double lx = kLeft + 15, ly = kTop + 15;
  s << "<g id=\"legend\">\n"
    << "<circle cx=\"" << num(lx) << "\" cy=\"" << num(ly) << "\" r=\"4\" fill=\"#1f4e9a\"/>"
    << "<text x=\"" << num(lx + 12) << "\" y=\"" << num(ly + 4) << "\">measured</text>\n"
    << "<line x1=\"" << num(lx - 8) << "\" y1=\"" << num(ly + 20) << "\" x2=\"" << num(lx + 8) << "\" y2=\""
    << num(ly + 20) << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>"
    << "<text x=\"" << num(lx + 12) << "\" y=\"" << num(ly + 24) << "\">model</text>\n"
    << "</g>\n</svg>\n";
  return s.str();
}

void emit_svg_plot(std::span<const ReportRow> rows, const AxesSpec& axes, const std::filesystem::path& path) {
  write_file_atomic(path, render_svg_plot(rows, axes));
}

}  // namespace tripletgen
