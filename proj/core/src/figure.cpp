#include "vizstate/figure.hpp"

#include <algorithm>
#include <unordered_set>

namespace vizstate {
namespace {

[[noreturn]] void schema_error(const std::string& msg) {
  throw Error(ErrorCode::SchemaViolation, msg);
}

double require_number(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where + ": expected a number");
  return j.get<double>();
}

XValue parse_xvalue(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  schema_error(where + ": expected number or string");
}

std::string xvalue_to_string(const XValue& v) {
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  return Json(std::get<double>(v)).dump();
}

Json xvalue_to_json(const XValue& v) {
  if (std::holds_alternative<std::string>(v)) return Json(std::get<std::string>(v));
  return Json(std::get<double>(v));
}

Color parse_color_or_throw(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where + ": expected a color string");
  auto c = parse_color(j.get<std::string>());
  if (!c) schema_error(where + ": unrecognized color '" + j.get<std::string>() + "'");
  return *c;
}

Json color_to_json(const Color& c) {
  return Json(c.source.empty() ? color_to_hex(c) : c.source);
}

// Pulls "<key>.text" accepting either {"text": ...} or a bare string; the
// remainder of the object (e.g. font settings) stays in `extra`.
std::optional<std::string> take_title(Json& obj, Json& extra) {
  if (!obj.contains("title")) return std::nullopt;
  Json t = obj.at("title");
  obj.erase("title");
  if (t.is_string()) return t.get<std::string>();
  if (t.is_object()) {
    std::optional<std::string> text;
    if (t.contains("text")) {
      if (!t.at("text").is_string()) schema_error("title.text must be a string");
      text = t.at("text").get<std::string>();
      t.erase("text");
    }
    if (!t.empty()) extra["title"] = t;
    return text;
  }
  schema_error("title must be a string or object");
}

Trace parse_trace(const Json& in, std::size_t index) {
  if (!in.is_object()) schema_error("data[" + std::to_string(index) + "] must be an object");
  Json j = in;
  Trace t;
  const std::string where = "data[" + std::to_string(index) + "]";

  std::string type_name = "scatter";
  if (j.contains("type")) {
    if (!j.at("type").is_string()) schema_error(where + ".type must be a string");
    type_name = j.at("type").get<std::string>();
    j.erase("type");
  }
  if (type_name == "scatter") t.type = TraceType::scatter;
  else if (type_name == "bar") t.type = TraceType::bar;
  else if (type_name == "pie") t.type = TraceType::pie;
  else schema_error(where + ": unknown trace type '" + type_name + "'");

  if (j.contains("name")) {
    if (!j.at("name").is_string()) schema_error(where + ".name must be a string");
    t.name = j.at("name").get<std::string>();
    j.erase("name");
  }

  if (j.contains("orientation")) {
    const auto o = j.at("orientation");
    if (!o.is_string() || (o != "v" && o != "h"))
      schema_error(where + ".orientation must be 'v' or 'h'");
    t.orientation = (o == "h") ? Orientation::horizontal : Orientation::vertical;
    j.erase("orientation");
  }

  if (j.contains("visible")) {
    const auto v = j.at("visible");
    if (v.is_string() && v == "legendonly") t.visible = Visibility::legendonly;
    else if (v.is_boolean()) t.visible = v.get<bool>() ? Visibility::visible : Visibility::legendonly;
    else schema_error(where + ".visible must be true, false, or 'legendonly'");
    j.erase("visible");
  }

  auto take_axis_array = [&](const char* key) -> std::optional<Json> {
    if (!j.contains(key)) return std::nullopt;
    Json arr = j.at(key);
    if (!arr.is_array()) schema_error(where + "." + key + " must be an array");
    j.erase(key);
    return arr;
  };

  if (t.type == TraceType::pie) {
    auto labels = take_axis_array("labels");
    auto values = take_axis_array("values");
    if (!labels || !values) schema_error(where + ": pie trace needs labels and values");
    for (const auto& l : *labels) {
      if (!l.is_string()) schema_error(where + ".labels entries must be strings");
      t.pie_labels.push_back(l.get<std::string>());
    }
    double sum = 0;
    for (const auto& v : *values) {
      const double d = require_number(v, where + ".values");
      if (d < 0) schema_error(where + ".values must be non-negative");
      t.pie_values.push_back(d);
      sum += d;
    }
    if (t.pie_labels.size() != t.pie_values.size())
      schema_error(where + ": labels/values length mismatch");
    if (t.pie_labels.empty()) schema_error(where + ": pie trace is empty");
    if (sum <= 0) schema_error(where + ": pie values must sum > 0");
  } else {
    auto xs = take_axis_array("x");
    auto ys = take_axis_array("y");
    if (!xs || !ys) schema_error(where + ": trace needs x and y arrays");
    // Horizontal bars carry categories on y and values on x; normalize so
    // categories always live in t.x and numeric values in t.y.
    if (t.type == TraceType::bar && t.orientation == Orientation::horizontal)
      std::swap(*xs, *ys);
    for (std::size_t i = 0; i < xs->size(); ++i)
      t.x.push_back(parse_xvalue((*xs)[i], where + ".x"));
    for (std::size_t i = 0; i < ys->size(); ++i)
      t.y.push_back(require_number((*ys)[i], where + ".y"));
    if (t.x.size() != t.y.size()) schema_error(where + ": x/y length mismatch");
    if (t.x.empty()) schema_error(where + ": trace has no data points");
  }

  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) schema_error(where + ".mode must be a string");
    t.style.mode = j.at("mode").get<std::string>();
    j.erase("mode");
  }
  if (j.contains("marker")) {
    Json m = j.at("marker");
    if (!m.is_object()) schema_error(where + ".marker must be an object");
    j.erase("marker");
    if (m.contains("color")) {
      const Json& c = m.at("color");
      ColorValue cv;
      if (c.is_array()) {
        cv.is_array = true;
        for (const auto& e : c) cv.colors.push_back(parse_color_or_throw(e, where + ".marker.color"));
        if (cv.colors.empty()) schema_error(where + ".marker.color array is empty");
      } else {
        cv.colors.push_back(parse_color_or_throw(c, where + ".marker.color"));
      }
      t.style.color = std::move(cv);
      m.erase("color");
    }
    if (m.contains("symbol")) {
      if (!m.at("symbol").is_string()) schema_error(where + ".marker.symbol must be a string");
      t.style.symbol = m.at("symbol").get<std::string>();
      m.erase("symbol");
    }
    if (m.contains("size")) {
      const double s = require_number(m.at("size"), where + ".marker.size");
      if (s <= 0) schema_error(where + ".marker.size must be positive");
      t.style.size = s;
      m.erase("size");
    }
    if (!m.empty()) t.extra["marker"] = m;
  }
  if (j.contains("line")) {
    Json l = j.at("line");
    if (!l.is_object()) schema_error(where + ".line must be an object");
    j.erase("line");
    if (l.contains("dash")) {
      if (!l.at("dash").is_string()) schema_error(where + ".line.dash must be a string");
      t.style.dash = l.at("dash").get<std::string>();
      l.erase("dash");
    }
    if (l.contains("width")) {
      const double w = require_number(l.at("width"), where + ".line.width");
      if (w <= 0) schema_error(where + ".line.width must be positive");
      t.style.width = w;
      l.erase("width");
    }
    if (!l.empty()) t.extra["line"] = l;
  }

  for (auto& [key, value] : j.items()) t.extra[key] = value;
  return t;
}

AxisConfig parse_axis(Json in) {
  AxisConfig axis;
  axis.title = take_title(in, axis.extra);
  if (in.contains("range")) {
    const Json& r = in.at("range");
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
      schema_error("axis range must be [lower, upper]");
    const double lo = r[0].get<double>();
    const double hi = r[1].get<double>();
    if (!(lo < hi)) schema_error("axis range must have lower < upper");
    axis.range = {lo, hi};
    in.erase("range");
  }
  for (auto& [key, value] : in.items()) axis.extra[key] = value;
  return axis;
}

Layout parse_layout(Json in) {
  Layout layout;
  if (!in.is_object()) schema_error("layout must be an object");
  layout.title = take_title(in, layout.extra);
  if (in.contains("xaxis")) {
    if (!in.at("xaxis").is_object()) schema_error("layout.xaxis must be an object");
    layout.x_axis = parse_axis(in.at("xaxis"));
    in.erase("xaxis");
  }
  if (in.contains("yaxis")) {
    if (!in.at("yaxis").is_object()) schema_error("layout.yaxis must be an object");
    layout.y_axis = parse_axis(in.at("yaxis"));
    in.erase("yaxis");
  }
  if (in.contains("showlegend")) {
    if (!in.at("showlegend").is_boolean()) schema_error("layout.showlegend must be boolean");
    layout.legend_visible = in.at("showlegend").get<bool>();
    in.erase("showlegend");
  }
  if (in.contains("annotations")) {
    const Json& anns = in.at("annotations");
    if (!anns.is_array()) schema_error("layout.annotations must be an array");
    for (const auto& a : anns) {
      if (!a.is_object()) schema_error("layout.annotations entries must be objects");
      Json rest = a;
      std::string text;
      if (rest.contains("text")) {
        if (!rest.at("text").is_string()) schema_error("annotation text must be a string");
        text = rest.at("text").get<std::string>();
        rest.erase("text");
      }
      layout.annotations.push_back(text);
      layout.annotation_extra.push_back(rest);
    }
    in.erase("annotations");
  }
  for (auto& [key, value] : in.items()) layout.extra[key] = value;
  return layout;
}

// Category inventory and axis kinds are derived from the trace data.
void derive_axis_kinds(FigureSpec& spec) {
  auto add_category = [](AxisConfig& axis, const std::string& cat) {
    if (std::find(axis.categories.begin(), axis.categories.end(), cat) == axis.categories.end())
      axis.categories.push_back(cat);
  };
  for (const auto& t : spec.traces) {
    if (t.type == TraceType::pie) continue;
    const bool categorical =
        t.type == TraceType::bar ||
        std::any_of(t.x.begin(), t.x.end(), [](const XValue& v) { return !is_numeric(v); });
    if (!categorical) continue;
    AxisConfig& axis = (t.type == TraceType::bar && t.orientation == Orientation::horizontal)
                           ? spec.layout.y_axis
                           : spec.layout.x_axis;
    axis.kind = AxisKind::categorical;
    for (const auto& v : t.x) add_category(axis, xvalue_to_string(v));
  }
}

Json axis_to_json(const AxisConfig& axis) {
  Json j = axis.extra;
  if (axis.title) j["title"]["text"] = *axis.title;
  if (axis.range) j["range"] = Json::array({axis.range->first, axis.range->second});
  return j;
}

Json trace_to_json(const Trace& t) {
  Json j = t.extra;
  switch (t.type) {
    case TraceType::scatter: j["type"] = "scatter"; break;
    case TraceType::bar: j["type"] = "bar"; break;
    case TraceType::pie: j["type"] = "pie"; break;
  }
  if (!t.name.empty()) j["name"] = t.name;
  if (t.type == TraceType::pie) {
    j["labels"] = t.pie_labels;
    j["values"] = t.pie_values;
  } else {
    Json xs = Json::array();
    for (const auto& v : t.x) xs.push_back(xvalue_to_json(v));
    Json ys = Json::array();
    for (double v : t.y) ys.push_back(v);
    if (t.type == TraceType::bar && t.orientation == Orientation::horizontal) {
      j["x"] = ys;
      j["y"] = xs;
      j["orientation"] = "h";
    } else {
      j["x"] = xs;
      j["y"] = ys;
    }
  }
  if (t.visible == Visibility::legendonly) j["visible"] = "legendonly";
  if (t.style.mode) j["mode"] = *t.style.mode;
  if (t.style.color) {
    if (t.style.color->is_array) {
      Json arr = Json::array();
      for (const auto& c : t.style.color->colors) arr.push_back(color_to_json(c));
      j["marker"]["color"] = arr;
    } else {
      j["marker"]["color"] = color_to_json(t.style.color->colors.front());
    }
  }
  if (t.style.symbol) j["marker"]["symbol"] = *t.style.symbol;
  if (t.style.size) j["marker"]["size"] = *t.style.size;
  if (t.style.dash) j["line"]["dash"] = *t.style.dash;
  if (t.style.width) j["line"]["width"] = *t.style.width;
  return j;
}

Json layout_to_json(const Layout& layout) {
  Json j = layout.extra;
  if (layout.title) j["title"]["text"] = *layout.title;
  Json xa = axis_to_json(layout.x_axis);
  if (!xa.empty()) j["xaxis"] = xa;
  Json ya = axis_to_json(layout.y_axis);
  if (!ya.empty()) j["yaxis"] = ya;
  if (!layout.legend_visible) j["showlegend"] = false;
  if (!layout.annotations.empty()) {
    Json anns = Json::array();
    for (std::size_t i = 0; i < layout.annotations.size(); ++i) {
      Json a = i < layout.annotation_extra.size() ? layout.annotation_extra[i] : Json::object();
      a["text"] = layout.annotations[i];
      anns.push_back(a);
    }
    j["annotations"] = anns;
  }
  return j;
}

}  // namespace

std::string trace_type_name(TraceType t) {
  switch (t) {
    case TraceType::scatter: return "scatter";
    case TraceType::bar: return "bar";
    case TraceType::pie: return "pie";
  }
  return "scatter";
}

const std::vector<Color>& default_palette() {
  static const std::vector<Color> palette = [] {
    std::vector<Color> p;
    for (const char* hex : {"#636efa", "#ef553b", "#00cc96", "#ab63fa", "#ffa15a",
                            "#19d3f3", "#ff6692", "#b6e880", "#ff97ff", "#fecb52"})
      p.push_back(*parse_color(hex));
    return p;
  }();
  return palette;
}

FigureSpec parse_figure_json(const Json& document) {
  if (!document.is_object()) schema_error("document must be an object");
  Json j = document;
  if (!j.contains("data")) schema_error("document is missing 'data'");
  if (!j.at("data").is_array()) schema_error("'data' must be an array");

  FigureSpec spec;
  const Json& data = j.at("data");
  if (data.empty()) schema_error("'data' must contain at least one trace");
  for (std::size_t i = 0; i < data.size(); ++i)
    spec.traces.push_back(parse_trace(data[i], i));
  j.erase("data");

  if (j.contains("layout")) {
    spec.layout = parse_layout(j.at("layout"));
    j.erase("layout");
  }
  for (auto& [key, value] : j.items()) spec.extra[key] = value;

  derive_axis_kinds(spec);
  return spec;
}

FigureSpec parse_figure(const std::string& document) {
  Json j = Json::parse(document, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::MalformedDocument, "document is not valid JSON");
  return parse_figure_json(j);
}

FigureSpec resolve_defaults(const FigureSpec& spec) {
  FigureSpec out = spec;
  const auto& palette = default_palette();
  for (std::size_t i = 0; i < out.traces.size(); ++i) {
    Trace& t = out.traces[i];
    StyleProps& s = t.style;
    if (!s.color) {
      if (t.type == TraceType::pie) {
        ColorValue cv;
        cv.is_array = true;
        for (std::size_t k = 0; k < t.pie_values.size(); ++k)
          cv.colors.push_back(palette[k % palette.size()]);
        s.color = std::move(cv);
      } else {
        s.color = ColorValue::scalar(palette[i % palette.size()]);
      }
    }
    if (!s.mode) s.mode = (t.type == TraceType::scatter) ? "lines" : "none";
    if (!s.symbol) s.symbol = "circle";
    if (!s.size) s.size = 6.0;
    if (!s.dash) s.dash = "solid";
    if (!s.width) s.width = 2.0;
  }
  return out;
}

PointCloud extract_point_cloud(const Trace& trace) {
  PointCloud cloud;
  switch (trace.type) {
    case TraceType::scatter: {
      const bool categorical =
          std::any_of(trace.x.begin(), trace.x.end(),
                      [](const XValue& v) { return !is_numeric(v); });
      if (categorical) {
        cloud.num_dims = 1;
        cloud.cat_dims = 1;
        for (std::size_t i = 0; i < trace.x.size(); ++i)
          cloud.points.push_back({{trace.y[i]}, {xvalue_to_string(trace.x[i])}});
      } else {
        cloud.num_dims = 2;
        cloud.cat_dims = 0;
        for (std::size_t i = 0; i < trace.x.size(); ++i)
          cloud.points.push_back({{std::get<double>(trace.x[i]), trace.y[i]}, {}});
      }
      break;
    }
    case TraceType::bar: {
      cloud.num_dims = 1;
      cloud.cat_dims = 1;
      for (std::size_t i = 0; i < trace.x.size(); ++i)
        cloud.points.push_back({{trace.y[i]}, {xvalue_to_string(trace.x[i])}});
      break;
    }
    case TraceType::pie: {
      cloud.num_dims = 1;
      cloud.cat_dims = 1;
      for (std::size_t i = 0; i < trace.pie_values.size(); ++i)
        cloud.points.push_back({{trace.pie_values[i]}, {trace.pie_labels[i]}});
      break;
    }
  }
  return cloud;
}

Json figure_to_json(const FigureSpec& spec) {
  Json j = spec.extra;
  Json data = Json::array();
  for (const auto& t : spec.traces) data.push_back(trace_to_json(t));
  j["data"] = data;
  j["layout"] = layout_to_json(spec.layout);
  return j;
}

std::string serialize_figure(const FigureSpec& spec) {
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  return figure_to_json(spec).dump(2);
}

bool structurally_equal(const FigureSpec& a, const FigureSpec& b) {
  return figure_to_json(a) == figure_to_json(b);
}

}  // namespace vizstate
