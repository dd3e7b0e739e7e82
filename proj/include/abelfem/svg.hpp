#ifndef ABELFEM_SVG_HPP
#define ABELFEM_SVG_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelfem {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "N";
  std::string y_label = "error";
  /// Dashed reference line y = c * x^(-slope) anchored at the first point
  /// of the first series; disabled when slope == 0.
  double reference_slope = 0.0;
  int width = 640;
  int height = 480;
};

namespace detail {

inline const char* series_color(std::size_t k) {
  static const char* palette[] = {"#1b6ca8", "#c23b22", "#2e8540",
                                  "#8031a7", "#b8860b", "#008080"};
  return palette[k % 6];
}

}  // namespace detail

/// Log-log line plot rendered directly as SVG markup.
inline std::string render_loglog_svg(const std::vector<PlotSeries>& series,
                                     const PlotOptions& opt = {}) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size())
      throw std::invalid_argument("svg: series length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0))
        throw std::invalid_argument("svg: log-log plot needs positive data");
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  if (first) throw std::invalid_argument("svg: no data");
  const double lx0 = std::log10(xmin), lx1 = std::log10(std::max(xmax, xmin * 1.0001));
  const double ly0 = std::log10(ymin), ly1 = std::log10(std::max(ymax, ymin * 1.0001));
  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
  auto px = [&](double x) { return ml + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
  auto py = [&](double y) { return mt + (ly1 - std::log10(y)) / (ly1 - ly0) * ph; };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << opt.width
      << "' height='" << opt.height << "' viewBox='0 0 " << opt.width << ' '
      << opt.height << "'>\n";
  out << "<rect x='" << ml << "' y='" << mt << "' width='" << pw << "' height='"
      << ph << "' fill='white' stroke='#444'/>\n";
  if (!opt.title.empty())
    out << "<text x='" << opt.width / 2.0 << "' y='24' text-anchor='middle' "
        << "font-family='sans-serif' font-size='15'>" << opt.title << "</text>\n";

  // decade grid lines and tick labels
  for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
    const double x = px(std::pow(10.0, d));
    out << "<line x1='" << x << "' y1='" << mt << "' x2='" << x << "' y2='"
        << mt + ph << "' stroke='#ddd'/>\n";
    out << "<text x='" << x << "' y='" << mt + ph + 18
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>1e"
        << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
    const double y = py(std::pow(10.0, d));
    out << "<line x1='" << ml << "' y1='" << y << "' x2='" << ml + pw << "' y2='"
        << y << "' stroke='#ddd'/>\n";
    out << "<text x='" << ml - 6 << "' y='" << y + 4
        << "' text-anchor='end' font-family='sans-serif' font-size='11'>1e" << d
        << "</text>\n";
  }
  out << "<text x='" << ml + pw / 2 << "' y='" << opt.height - 10
      << "' text-anchor='middle' font-family='sans-serif' font-size='13'>"
      << opt.x_label << "</text>\n";
  out << "<text x='16' y='" << mt + ph / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
      << "transform='rotate(-90 16 " << mt + ph / 2 << ")'>" << opt.y_label
      << "</text>\n";

  if (opt.reference_slope != 0.0 && !series.empty() && !series[0].x.empty()) {
    const double c = series[0].y[0] * std::pow(series[0].x[0], opt.reference_slope);
    out << "<polyline fill='none' stroke='#888' stroke-dasharray='6,4' points='";
    const double ya = c * std::pow(xmin, -opt.reference_slope);
    const double yb = c * std::pow(xmax, -opt.reference_slope);
    out << px(xmin) << ',' << py(std::clamp(ya, ymin, ymax)) << ' ' << px(xmax)
        << ',' << py(std::clamp(yb, ymin, ymax));
    out << "'/>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = detail::series_color(k);
    out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < series[k].x.size(); ++i)
      out << px(series[k].x[i]) << ',' << py(series[k].y[i]) << ' ';
    out << "'/>\n";
    for (std::size_t i = 0; i < series[k].x.size(); ++i)
      out << "<circle cx='" << px(series[k].x[i]) << "' cy='" << py(series[k].y[i])
          << "' r='2.5' fill='" << color << "'/>\n";
    out << "<text x='" << ml + pw - 8 << "' y='" << mt + 16 + 14.0 * k
        << "' text-anchor='end' font-family='sans-serif' font-size='11' fill='"
        << color << "'>" << series[k].label << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

inline void write_loglog_svg(const std::string& path,
                             const std::vector<PlotSeries>& series,
                             const PlotOptions& opt = {}) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg file: " + path);
  out << render_loglog_svg(series, opt);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace abelfem

#endif
