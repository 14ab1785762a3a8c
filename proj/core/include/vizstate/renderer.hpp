#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vizstate/view_state.hpp"

namespace vizstate {

struct RenderOptions {
  int width_px = 700;
  int height_px = 450;
  int font_size_px = 12;
};

/// Tick positions for a linear axis: step from {1,2,5}*10^k targeting
/// 5-8 ticks over [lo, hi]. Deterministic, endpoints not forced.
std::vector<double> nice_ticks(double lo, double hi);

/// Wedge angles in degrees, one per slice, proportional to values.
std::vector<double> pie_angles(const Trace& pie);

/// Deterministic SVG 1.1 render of the figure at the given view. Geometry
/// outside the view ranges is dropped, not just clipped; hidden traces are
/// omitted from the plot area but listed dimmed in the legend.
std::string render(const FigureSpec& spec, const ViewState& view,
                   const RenderOptions& opts = {});

/// Render directory: $VIZSTATE_OUT or ./vizstate_out.
std::string default_output_dir();

/// Renders the session's view (current, or at a historical interaction),
/// writes plot_<id>_evt_<interaction_id>.svg under out_dir, marks the
/// event's has_screenshot flag, and returns the absolute file path.
std::string render_at(StateEngine& engine, int plot_id,
                      std::optional<int> interaction_id = std::nullopt,
                      const RenderOptions& opts = {},
                      const std::string& out_dir = default_output_dir());

}  // namespace vizstate
