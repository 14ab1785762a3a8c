#include "vizstate/view_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vizstate {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string xvalue_text(const XValue& v) {
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  return Json(std::get<double>(v)).dump();
}

int category_position(const AxisConfig& axis, const std::string& cat) {
  const auto it = std::find(axis.categories.begin(), axis.categories.end(), cat);
  return it == axis.categories.end()
             ? 0
             : static_cast<int>(it - axis.categories.begin());
}

// Data-space coordinates of one point; pie points have none.
struct Coords {
  double x;
  double y;
};

std::optional<Coords> point_coords(const FigureSpec& spec, const Trace& t, std::size_t i) {
  switch (t.type) {
    case TraceType::pie:
      return std::nullopt;
    case TraceType::scatter:
      if (is_numeric(t.x[i]))
        return Coords{std::get<double>(t.x[i]), t.y[i]};
      return Coords{static_cast<double>(category_position(
                        spec.layout.x_axis, std::get<std::string>(t.x[i]))),
                    t.y[i]};
    case TraceType::bar:
      if (t.orientation == Orientation::horizontal)
        return Coords{t.y[i], static_cast<double>(category_position(
                                  spec.layout.y_axis, xvalue_text(t.x[i])))};
      return Coords{static_cast<double>(
                        category_position(spec.layout.x_axis, xvalue_text(t.x[i]))),
                    t.y[i]};
  }
  return std::nullopt;
}

std::optional<Range> pad_degenerate(std::optional<Range> r) {
  if (!r) return r;
  if (r->first < r->second) return r;
  const double pad = std::abs(r->first) > 0 ? std::abs(r->first) * 0.1 : 1.0;
  return Range{r->first - pad, r->second + pad};
}

}  // namespace

std::string event_type_name(EventType t) {
  switch (t) {
    case EventType::init: return "init";
    case EventType::relayout: return "relayout";
    case EventType::legendclick: return "legendclick";
    case EventType::selected: return "selected";
  }
  return "init";
}

std::optional<EventType> event_type_from_name(const std::string& name) {
  if (name == "init") return EventType::init;
  if (name == "relayout") return EventType::relayout;
  if (name == "legendclick") return EventType::legendclick;
  if (name == "selected") return EventType::selected;
  return std::nullopt;
}

ViewState initial_view(const FigureSpec& spec) {
  ViewState view;
  for (const auto& t : spec.traces) view.visibility.push_back(t.visible);

  if (spec.layout.x_axis.range) view.x_range = spec.layout.x_axis.range;
  if (spec.layout.y_axis.range) view.y_range = spec.layout.y_axis.range;

  std::optional<Range> x_data, y_data;
  bool any_bar = false;
  for (const auto& t : spec.traces) {
    if (t.type == TraceType::bar) any_bar = true;
    for (std::size_t i = 0; i < t.y.size(); ++i) {
      const auto c = point_coords(spec, t, i);
      if (!c) continue;
      if (!x_data) x_data = Range{c->x, c->x};
      x_data = Range{std::min(x_data->first, c->x), std::max(x_data->second, c->x)};
      if (!y_data) y_data = Range{c->y, c->y};
      y_data = Range{std::min(y_data->first, c->y), std::max(y_data->second, c->y)};
    }
  }

  if (!view.x_range) {
    if (spec.layout.x_axis.kind == AxisKind::categorical) {
      view.x_range = Range{-0.5, static_cast<double>(spec.layout.x_axis.categories.size()) - 0.5};
    } else if (x_data) {
      // Bar value axes anchor at zero, matching the rendered baseline.
      if (any_bar) x_data = Range{std::min(0.0, x_data->first), std::max(0.0, x_data->second)};
      view.x_range = pad_degenerate(x_data);
    }
  }
  if (!view.y_range) {
    if (spec.layout.y_axis.kind == AxisKind::categorical) {
      view.y_range = Range{-0.5, static_cast<double>(spec.layout.y_axis.categories.size()) - 0.5};
    } else if (y_data) {
      if (any_bar) y_data = Range{std::min(0.0, y_data->first), std::max(0.0, y_data->second)};
      view.y_range = pad_degenerate(y_data);
    }
  }
  return view;
}

int StateEngine::create_plot(const FigureSpec& spec) {
  if (spec.traces.empty())
    throw Error(ErrorCode::SchemaViolation, "figure has no traces");
  std::lock_guard lock(mutex_);
  const int id = next_plot_id_++;
  Session s;
  s.spec = spec;
  s.initial = initial_view(spec);
  s.view = s.initial;
  InteractionEvent init;
  init.id = s.next_event_id++;
  init.event_type = EventType::init;
  s.log.push_back(std::move(init));
  sessions_.emplace(id, std::move(s));
  return id;
}

const StateEngine::Session& StateEngine::session(int plot_id) const {
  const auto it = sessions_.find(plot_id);
  if (it == sessions_.end())
    throw Error(ErrorCode::UnknownPlot, "unknown plot_id " + std::to_string(plot_id));
  return it->second;
}

StateEngine::Session& StateEngine::session_mut(int plot_id) {
  return const_cast<Session&>(session(plot_id));
}

void StateEngine::relayout(int plot_id, std::optional<double> x_min,
                           std::optional<double> x_max, std::optional<double> y_min,
                           std::optional<double> y_max) {
  std::lock_guard lock(mutex_);
  Session& s = session_mut(plot_id);

  auto merge = [](const std::optional<Range>& current, std::optional<double> lo,
                  std::optional<double> hi) -> std::optional<Range> {
    if (!lo && !hi) return std::nullopt;
    Range next = current.value_or(Range{-kInf, kInf});
    if (lo) next.first = *lo;
    if (hi) next.second = *hi;
    if (!(next.first < next.second))
      throw Error(ErrorCode::InvalidRange, "range min must be below max");
    return next;
  };

  const auto new_x = merge(s.view.x_range, x_min, x_max);
  const auto new_y = merge(s.view.y_range, y_min, y_max);
  if (new_x) s.view.x_range = new_x;
  if (new_y) s.view.y_range = new_y;

  InteractionEvent evt;
  evt.id = s.next_event_id++;
  evt.event_type = EventType::relayout;
  if (x_min) evt.payload["xaxis.range[0]"] = *x_min;
  if (x_max) evt.payload["xaxis.range[1]"] = *x_max;
  if (y_min) evt.payload["yaxis.range[0]"] = *y_min;
  if (y_max) evt.payload["yaxis.range[1]"] = *y_max;
  s.log.push_back(std::move(evt));
}

void StateEngine::legendclick(int plot_id, int curve_number) {
  std::lock_guard lock(mutex_);
  Session& s = session_mut(plot_id);
  if (curve_number < 0 || curve_number >= static_cast<int>(s.view.visibility.size()))
    throw Error(ErrorCode::CurveOutOfRange,
                "curve_number " + std::to_string(curve_number) + " out of range");
  auto& v = s.view.visibility[static_cast<std::size_t>(curve_number)];
  v = (v == Visibility::visible) ? Visibility::legendonly : Visibility::visible;

  InteractionEvent evt;
  evt.id = s.next_event_id++;
  evt.event_type = EventType::legendclick;
  evt.payload["curve_number"] = curve_number;
  evt.payload["expanded_index"] = curve_number;
  s.log.push_back(std::move(evt));
}

SelectionResult StateEngine::selected(int plot_id, std::optional<double> x_min,
                                      std::optional<double> x_max,
                                      std::optional<double> y_min,
                                      std::optional<double> y_max) {
  std::lock_guard lock(mutex_);
  Session& s = session_mut(plot_id);

  auto resolve = [](std::optional<double> lo, std::optional<double> hi,
                    const std::optional<Range>& view) -> Range {
    Range box{view ? view->first : -kInf, view ? view->second : kInf};
    if (lo) box.first = *lo;
    if (hi) box.second = *hi;
    if (box.first > box.second)
      throw Error(ErrorCode::InvalidRange, "selection min must not exceed max");
    return box;
  };

  SelectionResult result;
  result.x_range = resolve(x_min, x_max, s.view.x_range);
  result.y_range = resolve(y_min, y_max, s.view.y_range);

  for (std::size_t ti = 0; ti < s.spec.traces.size(); ++ti) {
    if (s.view.visibility[ti] != Visibility::visible) continue;
    const Trace& t = s.spec.traces[ti];
    for (std::size_t i = 0; i < t.y.size(); ++i) {
      const auto c = point_coords(s.spec, t, i);
      if (!c) continue;
      if (c->x < result.x_range.first || c->x > result.x_range.second) continue;
      if (c->y < result.y_range.first || c->y > result.y_range.second) continue;
      SelectionPoint p;
      p.curve_number = static_cast<int>(ti);
      p.point_index = static_cast<int>(i);
      p.x = t.x[i];
      p.y = t.y[i];
      result.points.push_back(std::move(p));
    }
  }
  result.point_count = result.points.size();

  InteractionEvent evt;
  evt.id = s.next_event_id++;
  evt.event_type = EventType::selected;
  evt.payload["point_count"] = result.point_count;
  evt.payload["range"]["x"] = Json::array({result.x_range.first, result.x_range.second});
  evt.payload["range"]["y"] = Json::array({result.y_range.first, result.y_range.second});
  s.log.push_back(std::move(evt));
  return result;
}

std::vector<InteractionEvent> StateEngine::query_interactions(
    int plot_id, std::optional<EventType> filter) const {
  std::lock_guard lock(mutex_);
  const Session& s = session(plot_id);
  std::vector<InteractionEvent> out;
  for (const auto& e : s.log)
    if (!filter || e.event_type == *filter) out.push_back(e);
  return out;
}

FigureSpec StateEngine::get_plot_json(int plot_id) const {
  std::lock_guard lock(mutex_);
  const Session& s = session(plot_id);
  FigureSpec spec = s.spec;
  if (s.view.x_range) spec.layout.x_axis.range = s.view.x_range;
  if (s.view.y_range) spec.layout.y_axis.range = s.view.y_range;
  for (std::size_t i = 0; i < spec.traces.size(); ++i)
    spec.traces[i].visible = s.view.visibility[i];
  return spec;
}

ViewState StateEngine::replay(const Session& s, int upto_id) {
  ViewState view = s.initial;
  for (const auto& e : s.log) {
    if (e.id > upto_id) break;
    switch (e.event_type) {
      case EventType::init:
      case EventType::selected:
        break;
      case EventType::relayout: {
        Range x = view.x_range.value_or(Range{-kInf, kInf});
        Range y = view.y_range.value_or(Range{-kInf, kInf});
        bool x_set = false, y_set = false;
        if (e.payload.contains("xaxis.range[0]")) { x.first = e.payload["xaxis.range[0]"]; x_set = true; }
        if (e.payload.contains("xaxis.range[1]")) { x.second = e.payload["xaxis.range[1]"]; x_set = true; }
        if (e.payload.contains("yaxis.range[0]")) { y.first = e.payload["yaxis.range[0]"]; y_set = true; }
        if (e.payload.contains("yaxis.range[1]")) { y.second = e.payload["yaxis.range[1]"]; y_set = true; }
        if (x_set) view.x_range = x;
        if (y_set) view.y_range = y;
        break;
      }
      case EventType::legendclick: {
        const int curve = e.payload.at("curve_number").get<int>();
        auto& v = view.visibility[static_cast<std::size_t>(curve)];
        v = (v == Visibility::visible) ? Visibility::legendonly : Visibility::visible;
        break;
      }
    }
  }
  return view;
}

ViewState StateEngine::view_at(int plot_id, int interaction_id) const {
  std::lock_guard lock(mutex_);
  const Session& s = session(plot_id);
  const bool exists = std::any_of(s.log.begin(), s.log.end(),
                                  [&](const auto& e) { return e.id == interaction_id; });
  if (!exists)
    throw Error(ErrorCode::UnknownInteraction,
                "unknown interaction_id " + std::to_string(interaction_id));
  return replay(s, interaction_id);
}

ViewState StateEngine::current_view(int plot_id) const {
  std::lock_guard lock(mutex_);
  return session(plot_id).view;
}

const FigureSpec& StateEngine::spec_of(int plot_id) const {
  std::lock_guard lock(mutex_);
  return session(plot_id).spec;
}

int StateEngine::last_interaction_id(int plot_id) const {
  std::lock_guard lock(mutex_);
  return session(plot_id).log.back().id;
}

void StateEngine::mark_screenshot(int plot_id, int interaction_id) {
  std::lock_guard lock(mutex_);
  Session& s = session_mut(plot_id);
  for (auto& e : s.log) {
    if (e.id == interaction_id) {
      e.has_screenshot = true;
      return;
    }
  }
  throw Error(ErrorCode::UnknownInteraction,
              "unknown interaction_id " + std::to_string(interaction_id));
}

std::size_t StateEngine::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

Json SelectionResult::to_json() const {
  Json j;
  j["point_count"] = point_count;
  j["range"]["x"] = Json::array({x_range.first, x_range.second});
  j["range"]["y"] = Json::array({y_range.first, y_range.second});
  Json pts = Json::array();
  for (const auto& p : points) {
    Json e;
    e["curve_number"] = p.curve_number;
    e["point_index"] = p.point_index;
    if (std::holds_alternative<double>(p.x)) e["x"] = std::get<double>(p.x);
    else e["x"] = std::get<std::string>(p.x);
    e["y"] = p.y;
    pts.push_back(e);
  }
  j["points"] = pts;
  return j;
}

}  // namespace vizstate
