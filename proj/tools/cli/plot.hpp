#pragma once

#include <string>
#include <vector>

namespace sglab::cli {

struct Series {
  enum class Style { line, step, scatter };
  std::string name;
  std::vector<double> x, y;
  Style style = Style::line;
};

// Minimal self-contained SVG: axes, ticks, legend, one path or marker set
// per series. Identical input gives identical bytes.
std::string emit_plot(const std::vector<Series>& series, const std::string& x_label, const std::string& y_label,
                      const std::string& header_comment = "");

void write_text_file(const std::string& path, const std::string& text);

}  // namespace sglab::cli
