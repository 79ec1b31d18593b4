#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "newsort/svg.hpp"

using namespace newsort;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

PlotInput ten_points() {
  PlotInput plot;
  for (int i = 1; i <= 10; ++i) {
    plot.xs.push_back(5.0 * i);
    plot.ys.push_back(100.0 / i);
  }
  plot.x_label = "param";
  plot.y_label = "mean_comparisons";
  return plot;
}

}  // namespace

TEST_CASE("scatter renders one circle per point") {
  const std::string svg = render_scatter_svg(ten_points());
  CHECK(count_occurrences(svg, "<circle") == 10);
  CHECK(count_occurrences(svg, "<polyline") == 0);
  CHECK(svg.find("mean_comparisons") != std::string::npos);
  CHECK(svg.find("param") != std::string::npos);
  CHECK(svg.rfind("<?xml", 0) == 0);
}

TEST_CASE("fitted curve becomes a single polyline") {
  PlotInput plot = ten_points();
  for (int i = 0; i < 200; ++i) {
    const double x = 5.0 + 45.0 * i / 199.0;
    plot.curve_xs.push_back(x);
    plot.curve_ys.push_back(100.0 / (x / 5.0));
  }
  const std::string svg = render_scatter_svg(plot);
  CHECK(count_occurrences(svg, "<polyline") == 1);
  CHECK(count_occurrences(svg, "<circle") == 10);
}

TEST_CASE("identical inputs render byte-identical SVG") {
  CHECK(render_scatter_svg(ten_points()) == render_scatter_svg(ten_points()));
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(render_scatter_svg(PlotInput{}), std::invalid_argument);

  PlotInput single;
  single.xs = {3.0};
  single.ys = {4.0};
  const std::string svg = render_scatter_svg(single);  // flat ranges get padded
  CHECK(count_occurrences(svg, "<circle") == 1);

  PlotInput escaped = ten_points();
  escaped.y_label = "a<b&c";
  CHECK(render_scatter_svg(escaped).find("a&lt;b&amp;c") != std::string::npos);
}
