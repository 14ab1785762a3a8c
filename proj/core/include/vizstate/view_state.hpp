#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "vizstate/figure.hpp"

namespace vizstate {

using Range = std::pair<double, double>;

struct ViewState {
  std::optional<Range> x_range;
  std::optional<Range> y_range;
  std::vector<Visibility> visibility;  // indexed by curve_number
};

enum class EventType { init, relayout, legendclick, selected };

std::string event_type_name(EventType t);
std::optional<EventType> event_type_from_name(const std::string& name);

struct InteractionEvent {
  int id = 0;  // strictly increasing within a session, init is first
  EventType event_type = EventType::init;
  Json payload = Json::object();
  bool has_screenshot = false;
};

struct SelectionPoint {
  int curve_number = 0;
  int point_index = 0;
  XValue x;
  double y = 0;
};

struct SelectionResult {
  std::size_t point_count = 0;
  Range x_range{0, 0};
  Range y_range{0, 0};
  std::vector<SelectionPoint> points;

  Json to_json() const;
};

/// Session registry for the Visualization State API. Sessions are
/// independent; all mutation funnels through one engine lock and each
/// session's log is append-only.
class StateEngine {
 public:
  /// Registers a validated spec. Plot ids start at 1 and increase.
  int create_plot(const FigureSpec& spec);

  void relayout(int plot_id, std::optional<double> x_min, std::optional<double> x_max,
                std::optional<double> y_min, std::optional<double> y_max);

  void legendclick(int plot_id, int curve_number);

  SelectionResult selected(int plot_id, std::optional<double> x_min,
                           std::optional<double> x_max, std::optional<double> y_min,
                           std::optional<double> y_max);

  std::vector<InteractionEvent> query_interactions(
      int plot_id, std::optional<EventType> filter = std::nullopt) const;

  /// The session's spec with current view ranges and visibility folded in.
  FigureSpec get_plot_json(int plot_id) const;

  /// View reconstructed by replaying the log up to and including the event.
  ViewState view_at(int plot_id, int interaction_id) const;

  ViewState current_view(int plot_id) const;
  const FigureSpec& spec_of(int plot_id) const;
  int last_interaction_id(int plot_id) const;

  /// Used by the renderer once a snapshot file exists for an event.
  void mark_screenshot(int plot_id, int interaction_id);

  std::size_t session_count() const;

 private:
  struct Session {
    FigureSpec spec;
    ViewState initial;
    ViewState view;
    std::vector<InteractionEvent> log;
    int next_event_id = 1;
  };

  const Session& session(int plot_id) const;
  Session& session_mut(int plot_id);
  static ViewState replay(const Session& s, int upto_id);

  mutable std::mutex mutex_;
  std::map<int, Session> sessions_;
  int next_plot_id_ = 1;
};

/// Initial view derived from layout ranges or data bounds. Categorical axes
/// span category positions 0..n-1 padded by 0.5; pie figures have no ranges.
ViewState initial_view(const FigureSpec& spec);

}  // namespace vizstate
