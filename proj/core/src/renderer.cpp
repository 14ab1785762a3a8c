#include "vizstate/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "vizstate/geometry.hpp"

namespace vizstate {
namespace {

std::string fmt(double v) {
  if (v == 0) v = 0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dash_array(const std::string& dash, double width) {
  if (dash == "dash") return fmt(width * 4) + "," + fmt(width * 2);
  if (dash == "dot") return fmt(width) + "," + fmt(width * 2);
  if (dash == "dashdot") return fmt(width * 4) + "," + fmt(width * 2) + "," + fmt(width) + "," + fmt(width * 2);
  return "";
}

// Liang-Barsky clip of segment (x0,y0)-(x1,y1) against an axis-aligned box.
bool clip_segment(double& x0, double& y0, double& x1, double& y1,
                  double xmin, double xmax, double ymin, double ymax) {
  double t0 = 0, t1 = 1;
  const double dx = x1 - x0, dy = y1 - y0;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {x0 - xmin, xmax - x0, y0 - ymin, ymax - y0};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0) {
      if (q[i] < 0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0) {
      if (r > t1) return false;
      t0 = std::max(t0, r);
    } else {
      if (r < t0) return false;
      t1 = std::min(t1, r);
    }
  }
  const double nx0 = x0 + t0 * dx, ny0 = y0 + t0 * dy;
  const double nx1 = x0 + t1 * dx, ny1 = y0 + t1 * dy;
  x0 = nx0; y0 = ny0; x1 = nx1; y1 = ny1;
  return true;
}

struct Frame {
  double left, top, width, height;
  Range x, y;

  double px(double x_data) const {
    return left + (x_data - x.first) / (x.second - x.first) * width;
  }
  double py(double y_data) const {
    return top + height - (y_data - y.first) / (y.second - y.first) * height;
  }
};

std::string style_color(const Trace& t, std::size_t element_index) {
  const auto& cv = *t.style.color;
  const Color& c = cv.is_array ? cv.colors[element_index % cv.colors.size()]
                               : cv.colors.front();
  return color_to_hex(c);
}

void draw_marker(std::ostringstream& svg, const std::string& symbol, double cx,
                 double cy, double size, const std::string& color) {
  const double r = size / 2.0;
  if (symbol == "square") {
    svg << "<rect x=\"" << fmt(cx - r) << "\" y=\"" << fmt(cy - r) << "\" width=\""
        << fmt(size) << "\" height=\"" << fmt(size) << "\" fill=\"" << color << "\"/>\n";
  } else if (symbol == "diamond") {
    svg << "<path d=\"M" << fmt(cx) << " " << fmt(cy - r) << " L" << fmt(cx + r) << " "
        << fmt(cy) << " L" << fmt(cx) << " " << fmt(cy + r) << " L" << fmt(cx - r) << " "
        << fmt(cy) << " Z\" fill=\"" << color << "\"/>\n";
  } else {
    svg << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
        << "\" fill=\"" << color << "\"/>\n";
  }
}

double category_pos(const AxisConfig& axis, const std::string& cat) {
  const auto it = std::find(axis.categories.begin(), axis.categories.end(), cat);
  return it == axis.categories.end() ? 0.0
                                     : static_cast<double>(it - axis.categories.begin());
}

std::string xvalue_text(const XValue& v) {
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  return Json(std::get<double>(v)).dump();
}

void draw_axis_ticks(std::ostringstream& svg, const Frame& f, const AxisConfig& axis,
                     bool is_x, int font) {
  const Range r = is_x ? f.x : f.y;
  std::vector<std::pair<double, std::string>> ticks;
  if (axis.kind == AxisKind::categorical) {
    for (std::size_t i = 0; i < axis.categories.size(); ++i) {
      const auto pos = static_cast<double>(i);
      if (pos >= r.first && pos <= r.second) ticks.emplace_back(pos, axis.categories[i]);
    }
  } else {
    for (double v : nice_ticks(r.first, r.second)) ticks.emplace_back(v, fmt(v));
  }
  for (const auto& [pos, label] : ticks) {
    if (is_x) {
      const double x = f.px(pos);
      svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(f.top + f.height) << "\" x2=\""
          << fmt(x) << "\" y2=\"" << fmt(f.top + f.height + 5) << "\" stroke=\"#444\"/>\n";
      svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(f.top + f.height + 7 + font)
          << "\" font-size=\"" << font << "\" text-anchor=\"middle\">" << escape_xml(label)
          << "</text>\n";
    } else {
      const double y = f.py(pos);
      svg << "<line x1=\"" << fmt(f.left - 5) << "\" y1=\"" << fmt(y) << "\" x2=\""
          << fmt(f.left) << "\" y2=\"" << fmt(y) << "\" stroke=\"#444\"/>\n";
      svg << "<text x=\"" << fmt(f.left - 8) << "\" y=\"" << fmt(y + font * 0.35)
          << "\" font-size=\"" << font << "\" text-anchor=\"end\">" << escape_xml(label)
          << "</text>\n";
    }
  }
}

void draw_cartesian_trace(std::ostringstream& svg, const FigureSpec& spec, const Trace& t,
                          const Frame& f) {
  const std::string color = style_color(t, 0);
  if (t.type == TraceType::bar) {
    const bool horizontal = t.orientation == Orientation::horizontal;
    const double half = 0.3;  // bar half-width in category units
    for (std::size_t i = 0; i < t.y.size(); ++i) {
      const std::string cat = xvalue_text(t.x[i]);
      const double pos = horizontal ? category_pos(spec.layout.y_axis, cat)
                                    : category_pos(spec.layout.x_axis, cat);
      double x0, x1, y0, y1;
      if (horizontal) {
        x0 = std::min(0.0, t.y[i]);
        x1 = std::max(0.0, t.y[i]);
        y0 = pos - half;
        y1 = pos + half;
      } else {
        x0 = pos - half;
        x1 = pos + half;
        y0 = std::min(0.0, t.y[i]);
        y1 = std::max(0.0, t.y[i]);
      }
      // intersect the bar with the view box; skip when fully outside
      x0 = std::max(x0, f.x.first);
      x1 = std::min(x1, f.x.second);
      y0 = std::max(y0, f.y.first);
      y1 = std::min(y1, f.y.second);
      if (x0 >= x1 || y0 >= y1) continue;
      svg << "<rect x=\"" << fmt(f.px(x0)) << "\" y=\"" << fmt(f.py(y1)) << "\" width=\""
          << fmt(f.px(x1) - f.px(x0)) << "\" height=\"" << fmt(f.py(y0) - f.py(y1))
          << "\" fill=\"" << style_color(t, i) << "\"/>\n";
    }
    return;
  }

  // scatter: data-space coordinates, categorical x at integer positions
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < t.y.size(); ++i) {
    double xd;
    if (is_numeric(t.x[i])) xd = std::get<double>(t.x[i]);
    else xd = category_pos(spec.layout.x_axis, std::get<std::string>(t.x[i]));
    pts.push_back({xd, t.y[i]});
  }

  const std::string& mode = *t.style.mode;
  const bool lines = mode.find("lines") != std::string::npos;
  const bool markers = mode.find("markers") != std::string::npos;

  if (lines) {
    const std::string dashes = dash_array(*t.style.dash, *t.style.width);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      double x0 = pts[i].x, y0 = pts[i].y, x1 = pts[i + 1].x, y1 = pts[i + 1].y;
      if (!clip_segment(x0, y0, x1, y1, f.x.first, f.x.second, f.y.first, f.y.second))
        continue;
      svg << "<line x1=\"" << fmt(f.px(x0)) << "\" y1=\"" << fmt(f.py(y0)) << "\" x2=\""
          << fmt(f.px(x1)) << "\" y2=\"" << fmt(f.py(y1)) << "\" stroke=\"" << color
          << "\" stroke-width=\"" << fmt(*t.style.width) << "\"";
      if (!dashes.empty()) svg << " stroke-dasharray=\"" << dashes << "\"";
      svg << "/>\n";
    }
  }
  if (markers) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].x < f.x.first || pts[i].x > f.x.second || pts[i].y < f.y.first ||
          pts[i].y > f.y.second)
        continue;
      draw_marker(svg, *t.style.symbol, f.px(pts[i].x), f.py(pts[i].y), *t.style.size,
                  style_color(t, i));
    }
  }
}

void draw_pie(std::ostringstream& svg, const Trace& t, double cx, double cy, double radius) {
  const double total = std::accumulate(t.pie_values.begin(), t.pie_values.end(), 0.0);
  double frac = 0;
  for (std::size_t i = 0; i < t.pie_values.size(); ++i) {
    const double f0 = frac;
    frac += t.pie_values[i] / total;
    const double a0 = 2 * M_PI * f0;
    const double a1 = 2 * M_PI * frac;
    const double x0 = cx + radius * std::sin(a0), y0 = cy - radius * std::cos(a0);
    const double x1 = cx + radius * std::sin(a1), y1 = cy - radius * std::cos(a1);
    const int large = (frac - f0) > 0.5 ? 1 : 0;
    if (t.pie_values[i] <= 0) continue;
    svg << "<path d=\"M" << fmt(cx) << " " << fmt(cy) << " L" << fmt(x0) << " " << fmt(y0)
        << " A" << fmt(radius) << " " << fmt(radius) << " 0 " << large << " 1 " << fmt(x1)
        << " " << fmt(y1) << " Z\" fill=\"" << style_color(t, i)
        << "\" stroke=\"#ffffff\"/>\n";
  }
}

struct LegendEntry {
  std::string label;
  std::string color;
  bool dimmed;
};

std::vector<LegendEntry> legend_entries(const FigureSpec& spec, const ViewState& view) {
  std::vector<LegendEntry> entries;
  for (std::size_t i = 0; i < spec.traces.size(); ++i) {
    const Trace& t = spec.traces[i];
    const bool dimmed = i < view.visibility.size() &&
                        view.visibility[i] == Visibility::legendonly;
    if (t.type == TraceType::pie) {
      for (std::size_t k = 0; k < t.pie_labels.size(); ++k)
        entries.push_back({t.pie_labels[k], style_color(t, k), dimmed});
    } else {
      entries.push_back({t.name.empty() ? "trace " + std::to_string(i) : t.name,
                         style_color(t, 0), dimmed});
    }
  }
  return entries;
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi) {
  std::vector<double> ticks;
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) return ticks;
  const double raw = (hi - lo) / 6.0;
  const double k = std::floor(std::log10(raw));

  double best_step = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (double kk = k - 1; kk <= k + 1; kk += 1) {
    for (double m : {1.0, 2.0, 5.0}) {
      const double step = m * std::pow(10.0, kk);
      const double count = std::floor(hi / step) - std::ceil(lo / step) + 1;
      if (count < 2 || count > 1000) continue;
      const bool in_band = count >= 5 && count <= 8;
      const double score = (in_band ? 0.0 : 100.0) + std::abs(count - 6.0);
      if (score < best_score) {
        best_score = score;
        best_step = step;
      }
    }
  }
  if (best_step <= 0) return ticks;

  const long long first = static_cast<long long>(std::ceil(lo / best_step));
  const long long last = static_cast<long long>(std::floor(hi / best_step));
  for (long long i = first; i <= last; ++i) {
    double v = static_cast<double>(i) * best_step;
    if (std::abs(v) < best_step * 1e-9) v = 0;
    ticks.push_back(v);
  }
  return ticks;
}

std::vector<double> pie_angles(const Trace& pie) {
  const double total = std::accumulate(pie.pie_values.begin(), pie.pie_values.end(), 0.0);
  std::vector<double> angles;
  for (double v : pie.pie_values) angles.push_back(360.0 * v / total);
  return angles;
}

std::string render(const FigureSpec& spec, const ViewState& view, const RenderOptions& opts) {
  const FigureSpec resolved = resolve_defaults(spec);
  const int font = opts.font_size_px;
  const bool show_legend = resolved.layout.legend_visible;

  const double margin_left = 70;
  const double margin_right = show_legend ? 150 : 20;
  const double margin_top = 50;
  const double margin_bottom = 55;

  const bool is_pie_figure =
      std::all_of(resolved.traces.begin(), resolved.traces.end(),
                  [](const Trace& t) { return t.type == TraceType::pie; });

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << opts.width_px << "\" height=\"" << opts.height_px << "\">\n";
  svg << "<rect width=\"" << opts.width_px << "\" height=\"" << opts.height_px
      << "\" fill=\"#ffffff\"/>\n";

  if (resolved.layout.title) {
    svg << "<text x=\"" << fmt(opts.width_px / 2.0) << "\" y=\"" << fmt(margin_top / 2.0 + 6)
        << "\" font-size=\"" << font + 4 << "\" text-anchor=\"middle\">"
        << escape_xml(*resolved.layout.title) << "</text>\n";
  }

  Frame f;
  f.left = margin_left;
  f.top = margin_top;
  f.width = opts.width_px - margin_left - margin_right;
  f.height = opts.height_px - margin_top - margin_bottom;

  if (is_pie_figure) {
    const double cx = f.left + f.width / 2.0;
    const double cy = f.top + f.height / 2.0;
    const double radius = std::min(f.width, f.height) / 2.0 - 10;
    for (std::size_t i = 0; i < resolved.traces.size(); ++i) {
      if (i < view.visibility.size() && view.visibility[i] != Visibility::visible) continue;
      draw_pie(svg, resolved.traces[i], cx, cy, radius);
    }
  } else {
    f.x = view.x_range.value_or(Range{0, 1});
    f.y = view.y_range.value_or(Range{0, 1});

    svg << "<rect x=\"" << fmt(f.left) << "\" y=\"" << fmt(f.top) << "\" width=\""
        << fmt(f.width) << "\" height=\"" << fmt(f.height)
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    draw_axis_ticks(svg, f, resolved.layout.x_axis, true, font);
    draw_axis_ticks(svg, f, resolved.layout.y_axis, false, font);

    if (resolved.layout.x_axis.title) {
      svg << "<text x=\"" << fmt(f.left + f.width / 2.0) << "\" y=\""
          << fmt(opts.height_px - 12) << "\" font-size=\"" << font
          << "\" text-anchor=\"middle\">" << escape_xml(*resolved.layout.x_axis.title)
          << "</text>\n";
    }
    if (resolved.layout.y_axis.title) {
      const double tx = 16;
      const double ty = f.top + f.height / 2.0;
      svg << "<text x=\"" << fmt(tx) << "\" y=\"" << fmt(ty) << "\" font-size=\"" << font
          << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt(tx) << " " << fmt(ty)
          << ")\">" << escape_xml(*resolved.layout.y_axis.title) << "</text>\n";
    }

    svg << "<g>\n";
    for (std::size_t i = 0; i < resolved.traces.size(); ++i) {
      if (i < view.visibility.size() && view.visibility[i] != Visibility::visible) continue;
      if (resolved.traces[i].type == TraceType::pie) continue;
      draw_cartesian_trace(svg, resolved, resolved.traces[i], f);
    }
    svg << "</g>\n";
  }

  if (show_legend) {
    const double lx = opts.width_px - margin_right + 12;
    double ly = f.top + 6;
    for (const auto& entry : legend_entries(resolved, view)) {
      svg << "<g" << (entry.dimmed ? " opacity=\"0.4\"" : "") << ">";
      svg << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly) << "\" width=\"12\" height=\"12\" fill=\""
          << entry.color << "\"/>";
      svg << "<text x=\"" << fmt(lx + 17) << "\" y=\"" << fmt(ly + 10.5) << "\" font-size=\""
          << font << "\">" << escape_xml(entry.label) << "</text>";
      svg << "</g>\n";
      ly += 18;
    }
  }

  double ay = f.top + 14;
  for (const auto& text : resolved.layout.annotations) {
    if (text.empty()) continue;
    svg << "<text x=\"" << fmt(f.left + 8) << "\" y=\"" << fmt(ay) << "\" font-size=\"" << font
        << "\" fill=\"#333\">" << escape_xml(text) << "</text>\n";
    ay += font + 4;
  }

  svg << "</svg>\n";
  return svg.str();
}

std::string default_output_dir() {
  if (const char* env = std::getenv("VIZSTATE_OUT"); env && *env) return env;
  return "vizstate_out";
}

std::string render_at(StateEngine& engine, int plot_id, std::optional<int> interaction_id,
                      const RenderOptions& opts, const std::string& out_dir) {
  const int event_id = interaction_id.value_or(engine.last_interaction_id(plot_id));
  const ViewState view = engine.view_at(plot_id, event_id);
  const FigureSpec spec = engine.spec_of(plot_id);
  const std::string svg = render(spec, view, opts);

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path path = fs::absolute(fs::path(out_dir) /
                                     ("plot_" + std::to_string(plot_id) + "_evt_" +
                                      std::to_string(event_id) + ".svg"));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << svg;
  out.close();

  engine.mark_screenshot(plot_id, event_id);
  return path.string();
}

}  // namespace vizstate
