#include "thinloop/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace thinloop {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Canvas {
  std::string body;
  double width, height;

  Canvas(double w, double h) : width(w), height(h) {}

  void line(double x1, double y1, double x2, double y2, const std::string& style) {
    body += "<line x1='" + num(x1) + "' y1='" + num(y1) + "' x2='" + num(x2) +
            "' y2='" + num(y2) + "' style='" + style + "'/>\n";
  }
  void circle(double cx, double cy, double r, const std::string& style) {
    body += "<circle cx='" + num(cx) + "' cy='" + num(cy) + "' r='" + num(r) +
            "' style='" + style + "'/>\n";
  }
  void path(const std::string& d, const std::string& style) {
    body += "<path d='" + d + "' style='" + style + "'/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& style) {
    std::string d = "<polyline points='";
    for (const auto& [x, y] : pts) d += num(x) + "," + num(y) + " ";
    d += "' style='fill:none;" + style + "'/>\n";
    body += d;
  }
  void text(double x, double y, const std::string& t, double size = 12) {
    body += "<text x='" + num(x) + "' y='" + num(y) + "' font-size='" +
            num(size) + "' font-family='monospace'>" + t + "</text>\n";
  }
  std::string str() const {
    return "<?xml version='1.0' encoding='UTF-8'?>\n<svg xmlns='http://www.w3.org/2000/svg' width='" +
           num(width) + "' height='" + num(height) + "' viewBox='0 0 " +
           num(width) + " " + num(height) + "'>\n<rect width='100%' height='100%' fill='white'/>\n" +
           body + "</svg>\n";
  }
};

std::string band_color(int depth) {
  static const char* colors[] = {"#7799dd", "#dd9977", "#77cc88",
                                 "#cc77bb", "#bbaa55", "#55bbcc"};
  return colors[depth % 6];
}

}  // namespace

std::string semi_annulus_svg(const FactorTree& tree,
                             const ArcDecomposition& decomp,
                             const std::vector<std::string>& edge_names) {
  const double axis_y = 330, x0 = 40, x1 = 600;
  Canvas svg(920, 380);
  auto to_x = [&](double t) { return x0 + (x1 - x0) * t; };

  // Depth of each edge in the nesting (for colors and stacking).
  std::vector<int> depth(tree.edges.size(), 0);
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    int d = 0, v = tree.edges[e].parent_vertex;
    while (tree.vertices[v].parent_edge >= 0) {
      ++d;
      v = tree.edges[tree.vertices[v].parent_edge].parent_vertex;
    }
    depth[e] = d;
  }

  // Semi-annuli: outer semicircle over the pair's outer endpoints, inner
  // over its inner endpoints, band filled between.
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto& edge = tree.edges[e];
    if (edge.open_positions.empty() || edge.close_positions.empty()) continue;
    const auto& open_first = decomp.intervals[edge.open_positions.front()];
    const auto& open_last = decomp.intervals[edge.open_positions.back()];
    const auto& close_first = decomp.intervals[edge.close_positions.front()];
    const auto& close_last = decomp.intervals[edge.close_positions.back()];
    const double ol = to_x(open_first.param.lo), il = to_x(open_last.param.hi);
    const double ir = to_x(close_first.param.lo), orr = to_x(close_last.param.hi);
    const double r_out = (orr - ol) / 2, r_in = (ir - il) / 2;
    std::string d = "M " + num(ol) + " " + num(axis_y);
    d += " A " + num(r_out) + " " + num(r_out) + " 0 0 1 " + num(orr) + " " + num(axis_y);
    d += " L " + num(ir) + " " + num(axis_y);
    d += " A " + num(r_in) + " " + num(r_in) + " 0 0 0 " + num(il) + " " + num(axis_y);
    d += " Z";
    svg.path(d, "fill:" + band_color(depth[e]) +
                    ";fill-opacity:0.45;stroke:#334;stroke-width:0.6");
    const std::string label =
        e < edge_names.size() ? edge_names[e] : letter_name(static_cast<int>(e));
    svg.text((ol + orr) / 2 - 6, axis_y - r_out - 4, label, 11);
  }

  // The axis and its stratum intervals.
  svg.line(x0, axis_y, x1, axis_y, "stroke:#000;stroke-width:1");
  for (const auto& iv : decomp.intervals)
    svg.line(to_x(iv.param.lo), axis_y, to_x(iv.param.hi), axis_y,
             "stroke:#c22;stroke-width:4");
  svg.text(x0, axis_y + 28, "0", 11);
  svg.text(x1 - 6, axis_y + 28, "1", 11);

  // Dual tree on the right: root at the bottom, height by depth.
  const double tx0 = 660, tx1 = 890, ty0 = 340, ty1 = 40;
  double max_depth = 1e-12;
  for (const auto& v : tree.vertices) max_depth = std::max(max_depth, v.depth);
  std::vector<double> vx(tree.vertices.size(), 0.0);
  double next_leaf = 0.0;
  double leaf_count = 0.0;
  for (const auto& v : tree.vertices)
    if (v.child_edges.empty()) leaf_count += 1.0;
  std::function<void(int)> place = [&](int v) {
    if (tree.vertices[v].child_edges.empty()) {
      vx[v] = next_leaf;
      next_leaf += 1.0;
      return;
    }
    double sum = 0.0;
    for (int e : tree.vertices[v].child_edges) {
      place(tree.edges[e].child_vertex);
      sum += vx[tree.edges[e].child_vertex];
    }
    vx[v] = sum / tree.vertices[v].child_edges.size();
  };
  place(0);
  auto tree_pt = [&](int v) {
    const double fx = leaf_count > 1 ? vx[v] / (leaf_count - 1) : 0.5;
    const double fy = tree.vertices[v].depth / max_depth;
    return std::pair<double, double>{tx0 + (tx1 - tx0) * fx,
                                     ty0 + (ty1 - ty0) * fy};
  };
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto [xa, ya] = tree_pt(tree.edges[e].parent_vertex);
    const auto [xb, yb] = tree_pt(tree.edges[e].child_vertex);
    svg.line(xa, ya, xb, yb, "stroke:#333;stroke-width:1.5");
    const std::string label =
        e < edge_names.size() ? edge_names[e] : letter_name(static_cast<int>(e));
    svg.text((xa + xb) / 2 + 4, (ya + yb) / 2, label, 10);
  }
  for (std::size_t v = 0; v < tree.vertices.size(); ++v) {
    const auto [x, y] = tree_pt(static_cast<int>(v));
    const bool root = v == 0;
    svg.circle(x, y, root ? 4.0 : 2.6,
               root ? "fill:#c22" : "fill:#225;stroke:none");
  }
  svg.text(tx0, ty0 + 28, "dual tree (height = distance from root)", 10);
  return svg.str();
}

namespace {

// Scales 2d projections of points into a canvas box.
struct Frame {
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  double x0, y0, x1, y1;

  void include(const Vec& p) {
    const double x = p[0], y = p.size() > 1 ? p[1] : 0.0;
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
  std::pair<double, double> map(const Vec& p) const {
    const double sx = (max_x > min_x) ? (p[0] - min_x) / (max_x - min_x) : 0.5;
    const double yy = p.size() > 1 ? p[1] : 0.0;
    const double sy = (max_y > min_y) ? (yy - min_y) / (max_y - min_y) : 0.5;
    return {x0 + sx * (x1 - x0), y1 - sy * (y1 - y0)};
  }
};

}  // namespace

std::string curve_svg(const SampledCurve& curve) {
  Canvas svg(640, 640);
  Frame f;
  f.x0 = 30;
  f.y0 = 30;
  f.x1 = 610;
  f.y1 = 610;
  for (const Vec& p : curve.points) f.include(p);
  std::vector<std::pair<double, double>> pts;
  for (const Vec& p : curve.points) pts.push_back(f.map(p));
  svg.polyline(pts, "stroke:#225;stroke-width:1.4");
  svg.circle(pts.front().first, pts.front().second, 4, "fill:#c22");
  return svg.str();
}

std::string homotopy_svg(const HomotopyGrid& grid, int stride) {
  Canvas svg(640, 640);
  Frame f;
  f.x0 = 30;
  f.y0 = 30;
  f.x1 = 610;
  f.y1 = 610;
  for (const auto& row : grid.rows)
    for (const Vec& p : row) f.include(p);
  for (int j = 0; j < grid.r_count(); j += stride) {
    std::vector<std::pair<double, double>> pts;
    for (const Vec& p : grid.rows[j]) pts.push_back(f.map(p));
    const int shade = 200 - 160 * j / std::max(1, grid.r_count() - 1);
    svg.polyline(pts, "stroke:rgb(" + std::to_string(shade) + "," +
                          std::to_string(shade) + ",220);stroke-width:0.8");
  }
  std::vector<std::pair<double, double>> first, last;
  for (const Vec& p : grid.rows.front()) first.push_back(f.map(p));
  for (const Vec& p : grid.rows.back()) last.push_back(f.map(p));
  svg.polyline(first, "stroke:#000;stroke-width:1.6");
  svg.polyline(last, "stroke:#c22;stroke-width:1.6");
  return svg.str();
}

}  // namespace thinloop
