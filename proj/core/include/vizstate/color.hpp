#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vizstate {

/// An sRGB color, optionally remembering the source text it was parsed from
/// (a CSS name or a hex literal) so serialization round-trips.
struct Color {
  int r = 0;
  int g = 0;
  int b = 0;
  std::string source;  // empty when constructed numerically

  bool operator==(const Color& other) const {
    return r == other.r && g == other.g && b == other.b;
  }
};

struct Lab {
  double l = 0;
  double a = 0;
  double b = 0;
};

/// Looks a color up in the built-in CSS extended name table.
/// Matching folds case and ignores spaces ("Blue Violet" == "blueviolet").
std::optional<Color> color_from_name(std::string_view name);

/// Parses a CSS name, "#rrggbb"/"#rgb" hex, or "rgb(r,g,b)" literal.
std::optional<Color> parse_color(std::string_view text);

/// Canonical "#rrggbb" form (lowercase).
std::string color_to_hex(const Color& c);

/// All names in the built-in table, in table order.
const std::vector<std::string>& color_name_inventory();

/// sRGB -> CIELAB under D65 with the standard transfer function.
Lab srgb_to_lab(const Color& c);

/// Euclidean CIE76 difference.
double delta_e(const Lab& a, const Lab& b);
double delta_e(const Color& a, const Color& b);

/// max(0, 1 - deltaE/100).
double color_similarity(const Color& a, const Color& b);

}  // namespace vizstate
