#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vizstate/color.hpp"
#include "vizstate/errors.hpp"

namespace vizstate {

using Json = nlohmann::json;

enum class TraceType { scatter, bar, pie };
enum class Orientation { vertical, horizontal };
enum class Visibility { visible, legendonly };
enum class AxisKind { linear, categorical };

std::string trace_type_name(TraceType t);

/// A data value on the x axis: numeric or a category label.
using XValue = std::variant<double, std::string>;

inline bool is_numeric(const XValue& v) { return std::holds_alternative<double>(v); }

/// Scalar color or per-element color array (pie slices, per-bar colors).
struct ColorValue {
  std::vector<Color> colors;   // size 1 for scalar
  bool is_array = false;

  static ColorValue scalar(Color c) { return {{std::move(c)}, false}; }
};

/// Style properties. Unset fields mean "library default"; resolve_defaults
/// fills every field so the similarity metric always compares concrete values.
struct StyleProps {
  std::optional<ColorValue> color;
  std::optional<std::string> mode;
  std::optional<std::string> symbol;
  std::optional<double> size;
  std::optional<std::string> dash;
  std::optional<double> width;
};

struct Trace {
  TraceType type = TraceType::scatter;
  std::string name;
  std::vector<XValue> x;        // categories live here for bars of both orientations
  std::vector<double> y;
  std::vector<std::string> pie_labels;
  std::vector<double> pie_values;
  Orientation orientation = Orientation::vertical;
  StyleProps style;
  Visibility visible = Visibility::visible;
  Json extra = Json::object();  // unknown members, preserved for round-trips
};

struct AxisConfig {
  std::optional<std::string> title;
  std::optional<std::pair<double, double>> range;
  AxisKind kind = AxisKind::linear;
  std::vector<std::string> categories;  // populated for categorical axes
  Json extra = Json::object();
};

struct Layout {
  std::optional<std::string> title;
  AxisConfig x_axis;
  AxisConfig y_axis;
  bool legend_visible = true;
  std::vector<std::string> annotations;
  std::vector<Json> annotation_extra;  // parallel to annotations, round-trip only
  Json extra = Json::object();
};

struct FigureSpec {
  std::vector<Trace> traces;
  Layout layout;
  Json extra = Json::object();
};

/// One point of a trace's geometric representation.
struct CloudPoint {
  std::vector<double> nums;
  std::vector<std::string> cats;
};

struct PointCloud {
  std::vector<CloudPoint> points;
  std::size_t num_dims = 0;
  std::size_t cat_dims = 0;

  bool same_layout(const PointCloud& other) const {
    return num_dims == other.num_dims && cat_dims == other.cat_dims;
  }
};

/// The default qualitative palette used when a trace has no explicit color.
const std::vector<Color>& default_palette();

/// Parses a figure document ({"data": [...], "layout": {...}}) and validates
/// it. Unknown members are kept opaquely and survive serialize_figure.
/// Throws Error{MalformedDocument} on bad syntax, Error{SchemaViolation} on
/// structural problems (empty data, length mismatches, bad enums).
FigureSpec parse_figure(const std::string& document);
FigureSpec parse_figure_json(const Json& document);

/// Fills every unset style field with its documented default. Idempotent;
/// never touches explicitly set fields.
FigureSpec resolve_defaults(const FigureSpec& spec);

/// Per-trace geometry used by the similarity metric:
///   scatter -> ((x, y), ()) with categorical x moved to the label dims
///   bar     -> ((value), (category)) for either orientation
///   pie     -> ((value), (label))
PointCloud extract_point_cloud(const Trace& trace);

/// Canonical key-sorted serialization; parse_figure(serialize_figure(s))
/// is structurally equal to s, and two serializations are byte-identical.
std::string serialize_figure(const FigureSpec& spec);
Json figure_to_json(const FigureSpec& spec);

bool structurally_equal(const FigureSpec& a, const FigureSpec& b);

}  // namespace vizstate
