#pragma once

#include <string>
#include <vector>

namespace crisispulse::svg {

struct Series {
  std::string name;
  std::vector<double> values;  // one per category label
  std::string color;           // "#rrggbb"; empty selects a palette color
};

struct BarChart {
  std::string title;
  std::vector<std::string> labels;  // x-axis categories
  std::vector<Series> series;       // grouped when more than one
};

// Standalone SVG 1.1 document, fixed 960x540 viewport, deterministic layout.
// Throws ValidationError for an empty chart or mismatched series lengths.
// All-zero series still draw the axes, with zero-height bars.
std::string render_bar_chart(const BarChart& chart);

// Title plus one text row per line, same viewport. Lines past the panel
// capacity are dropped. Throws ValidationError when lines is empty.
std::string render_text_panel(const std::string& title,
                              const std::vector<std::string>& lines);

std::string escape_text(const std::string& text);

}  // namespace crisispulse::svg
