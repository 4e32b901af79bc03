#include "crisispulse/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "crisispulse/errors.hpp"

namespace crisispulse::svg {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 930.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 460.0;

const char* kPalette[] = {"#4e79a7", "#e15759", "#59a14f",
                          "#f28e2b", "#b07aa1", "#76b7b2"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (std::abs(v - std::round(v)) < 1e-9)
    std::snprintf(buf, sizeof(buf), "%.0f", v);
  else
    std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

std::string escape_text(const std::string& text) {
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

std::string render_bar_chart(const BarChart& chart) {
  if (chart.series.empty()) throw ValidationError("chart has no series");
  if (chart.labels.empty()) throw ValidationError("chart has no categories");
  for (const auto& s : chart.series)
    if (s.values.size() != chart.labels.size())
      throw ValidationError("series '" + s.name +
                            "' length does not match the category labels");

  double max_value = 0.0;
  for (const auto& s : chart.series)
    for (double v : s.values) {
      if (v < 0.0) throw ValidationError("bar values must not be negative");
      max_value = std::max(max_value, v);
    }
  const double scale_max = max_value > 0.0 ? max_value : 1.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"960\" height=\"540\" viewBox=\"0 0 960 540\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"540\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"480\" y=\"32\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"20\" fill=\"#202020\">" + escape_text(chart.title) + "</text>\n";

  // Horizontal grid lines and y tick labels.
  for (int t = 0; t <= 4; ++t) {
    const double frac = t / 4.0;
    const double y = kBottom - frac * (kBottom - kTop);
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" +
           num(kRight) + "\" y2=\"" + num(y) +
           "\" stroke=\"#d8d8d8\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(kLeft - 8.0) + "\" y=\"" + num(y + 4.0) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#404040\">" + escape_text(tick_label(frac * scale_max)) +
           "</text>\n";
  }

  const auto n = chart.labels.size();
  const auto n_series = chart.series.size();
  const double group_w = (kRight - kLeft) / static_cast<double>(n);
  const double bar_w = group_w * 0.8 / static_cast<double>(n_series);

  for (std::size_t s = 0; s < n_series; ++s) {
    const std::string color = chart.series[s].color.empty()
                                  ? kPalette[s % std::size(kPalette)]
                                  : chart.series[s].color;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = chart.series[s].values[i];
      const double h = (v / scale_max) * (kBottom - kTop);
      const double x = kLeft + group_w * static_cast<double>(i) +
                       group_w * 0.1 + bar_w * static_cast<double>(s);
      out += "<rect x=\"" + num(x) + "\" y=\"" + num(kBottom - h) +
             "\" width=\"" + num(bar_w) + "\" height=\"" + num(h) +
             "\" fill=\"" + color + "\"/>\n";
    }
  }

  // Axes over the bars.
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
         num(kLeft) + "\" y2=\"" + num(kBottom) +
         "\" stroke=\"#202020\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
         num(kRight) + "\" y2=\"" + num(kBottom) +
         "\" stroke=\"#202020\" stroke-width=\"1\"/>\n";

  // Category labels, subsampled so they stay readable.
  const std::size_t step = n > 24 ? (n + 23) / 24 : 1;
  const bool rotate = n > 10;
  for (std::size_t i = 0; i < n; i += step) {
    const double cx = kLeft + group_w * (static_cast<double>(i) + 0.5);
    const std::string label = escape_text(chart.labels[i]);
    if (rotate) {
      out += "<text x=\"" + num(cx) + "\" y=\"" + num(kBottom + 14.0) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" "
             "fill=\"#404040\" transform=\"rotate(-45 " + num(cx) + " " +
             num(kBottom + 14.0) + ")\">" + label + "</text>\n";
    } else {
      out += "<text x=\"" + num(cx) + "\" y=\"" + num(kBottom + 18.0) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"12\" fill=\"#404040\">" + label + "</text>\n";
    }
  }

  if (n_series > 1) {
    double lx = kRight - 150.0;
    double ly = kTop - 36.0;
    for (std::size_t s = 0; s < n_series; ++s) {
      const std::string color = chart.series[s].color.empty()
                                    ? kPalette[s % std::size(kPalette)]
                                    : chart.series[s].color;
      out += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly + 18.0 * s) +
             "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
      out += "<text x=\"" + num(lx + 18.0) + "\" y=\"" + num(ly + 18.0 * s + 10.0) +
             "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#202020\">" +
             escape_text(chart.series[s].name) + "</text>\n";
    }
  }

  out += "</svg>\n";
  return out;
}

std::string render_text_panel(const std::string& title,
                              const std::vector<std::string>& lines) {
  if (lines.empty()) throw ValidationError("panel has no lines");

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "width=\"960\" height=\"540\" viewBox=\"0 0 960 540\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"540\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"480\" y=\"32\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"20\" fill=\"#202020\">" + escape_text(title) + "</text>\n";

  constexpr double kLineHeight = 28.0;
  constexpr std::size_t kMaxLines = 17;  // what fits under the title
  for (std::size_t i = 0; i < lines.size() && i < kMaxLines; ++i) {
    out += "<text x=\"40\" y=\"" + num(70.0 + kLineHeight * static_cast<double>(i)) +
           "\" font-family=\"sans-serif\" font-size=\"15\" fill=\"#202020\">" +
           escape_text(lines[i]) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace crisispulse::svg
