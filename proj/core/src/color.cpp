#include "vizstate/color.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace vizstate {
namespace {

struct NamedColor {
  const char* name;
  unsigned rgb;
};

// CSS3 extended color keywords.
constexpr NamedColor kNamedColors[] = {
    {"aliceblue", 0xf0f8ff},      {"antiquewhite", 0xfaebd7},
    {"aqua", 0x00ffff},           {"aquamarine", 0x7fffd4},
    {"azure", 0xf0ffff},          {"beige", 0xf5f5dc},
    {"bisque", 0xffe4c4},         {"black", 0x000000},
    {"blanchedalmond", 0xffebcd}, {"blue", 0x0000ff},
    {"blueviolet", 0x8a2be2},     {"brown", 0xa52a2a},
    {"burlywood", 0xdeb887},      {"cadetblue", 0x5f9ea0},
    {"chartreuse", 0x7fff00},     {"chocolate", 0xd2691e},
    {"coral", 0xff7f50},          {"cornflowerblue", 0x6495ed},
    {"cornsilk", 0xfff8dc},       {"crimson", 0xdc143c},
    {"cyan", 0x00ffff},           {"darkblue", 0x00008b},
    {"darkcyan", 0x008b8b},       {"darkgoldenrod", 0xb8860b},
    {"darkgray", 0xa9a9a9},       {"darkgreen", 0x006400},
    {"darkgrey", 0xa9a9a9},       {"darkkhaki", 0xbdb76b},
    {"darkmagenta", 0x8b008b},    {"darkolivegreen", 0x556b2f},
    {"darkorange", 0xff8c00},     {"darkorchid", 0x9932cc},
    {"darkred", 0x8b0000},        {"darksalmon", 0xe9967a},
    {"darkseagreen", 0x8fbc8f},   {"darkslateblue", 0x483d8b},
    {"darkslategray", 0x2f4f4f},  {"darkslategrey", 0x2f4f4f},
    {"darkturquoise", 0x00ced1},  {"darkviolet", 0x9400d3},
    {"deeppink", 0xff1493},       {"deepskyblue", 0x00bfff},
    {"dimgray", 0x696969},        {"dimgrey", 0x696969},
    {"dodgerblue", 0x1e90ff},     {"firebrick", 0xb22222},
    {"floralwhite", 0xfffaf0},    {"forestgreen", 0x228b22},
    {"fuchsia", 0xff00ff},        {"gainsboro", 0xdcdcdc},
    {"ghostwhite", 0xf8f8ff},     {"gold", 0xffd700},
    {"goldenrod", 0xdaa520},      {"gray", 0x808080},
    {"green", 0x008000},          {"greenyellow", 0xadff2f},
    {"grey", 0x808080},           {"honeydew", 0xf0fff0},
    {"hotpink", 0xff69b4},        {"indianred", 0xcd5c5c},
    {"indigo", 0x4b0082},         {"ivory", 0xfffff0},
    {"khaki", 0xf0e68c},          {"lavender", 0xe6e6fa},
    {"lavenderblush", 0xfff0f5},  {"lawngreen", 0x7cfc00},
    {"lemonchiffon", 0xfffacd},   {"lightblue", 0xadd8e6},
    {"lightcoral", 0xf08080},     {"lightcyan", 0xe0ffff},
    {"lightgoldenrodyellow", 0xfafad2}, {"lightgray", 0xd3d3d3},
    {"lightgreen", 0x90ee90},     {"lightgrey", 0xd3d3d3},
    {"lightpink", 0xffb6c1},      {"lightsalmon", 0xffa07a},
    {"lightseagreen", 0x20b2aa},  {"lightskyblue", 0x87cefa},
    {"lightslategray", 0x778899}, {"lightslategrey", 0x778899},
    {"lightsteelblue", 0xb0c4de}, {"lightyellow", 0xffffe0},
    {"lime", 0x00ff00},           {"limegreen", 0x32cd32},
    {"linen", 0xfaf0e6},          {"magenta", 0xff00ff},
    {"maroon", 0x800000},         {"mediumaquamarine", 0x66cdaa},
    {"mediumblue", 0x0000cd},     {"mediumorchid", 0xba55d3},
    {"mediumpurple", 0x9370db},   {"mediumseagreen", 0x3cb371},
    {"mediumslateblue", 0x7b68ee},{"mediumspringgreen", 0x00fa9a},
    {"mediumturquoise", 0x48d1cc},{"mediumvioletred", 0xc71585},
    {"midnightblue", 0x191970},   {"mintcream", 0xf5fffa},
    {"mistyrose", 0xffe4e1},      {"moccasin", 0xffe4b5},
    {"navajowhite", 0xffdead},    {"navy", 0x000080},
    {"oldlace", 0xfdf5e6},        {"olive", 0x808000},
    {"olivedrab", 0x6b8e23},      {"orange", 0xffa500},
    {"orangered", 0xff4500},      {"orchid", 0xda70d6},
    {"palegoldenrod", 0xeee8aa},  {"palegreen", 0x98fb98},
    {"paleturquoise", 0xafeeee},  {"palevioletred", 0xdb7093},
    {"papayawhip", 0xffefd5},     {"peachpuff", 0xffdab9},
    {"peru", 0xcd853f},           {"pink", 0xffc0cb},
    {"plum", 0xdda0dd},           {"powderblue", 0xb0e0e6},
    {"purple", 0x800080},         {"red", 0xff0000},
    {"rosybrown", 0xbc8f8f},      {"royalblue", 0x4169e1},
    {"saddlebrown", 0x8b4513},    {"salmon", 0xfa8072},
    {"sandybrown", 0xf4a460},     {"seagreen", 0x2e8b57},
    {"seashell", 0xfff5ee},       {"sienna", 0xa0522d},
    {"silver", 0xc0c0c0},         {"skyblue", 0x87ceeb},
    {"slateblue", 0x6a5acd},      {"slategray", 0x708090},
    {"slategrey", 0x708090},      {"snow", 0xfffafa},
    {"springgreen", 0x00ff7f},    {"steelblue", 0x4682b4},
    {"tan", 0xd2b48c},            {"teal", 0x008080},
    {"thistle", 0xd8bfd8},        {"tomato", 0xff6347},
    {"turquoise", 0x40e0d0},      {"violet", 0xee82ee},
    {"wheat", 0xf5deb3},          {"white", 0xffffff},
    {"whitesmoke", 0xf5f5f5},     {"yellow", 0xffff00},
    {"yellowgreen", 0x9acd32},
};

std::string fold_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '-' || c == '_') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

const std::unordered_map<std::string, unsigned>& name_table() {
  static const std::unordered_map<std::string, unsigned> table = [] {
    std::unordered_map<std::string, unsigned> t;
    for (const auto& nc : kNamedColors) t.emplace(nc.name, nc.rgb);
    return t;
  }();
  return table;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

double srgb_channel_to_linear(int v) {
  const double c = v / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double kEps = 216.0 / 24389.0;
  constexpr double kKappa = 24389.0 / 27.0;
  return t > kEps ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

}  // namespace

std::optional<Color> color_from_name(std::string_view name) {
  const auto& table = name_table();
  auto it = table.find(fold_name(name));
  if (it == table.end()) return std::nullopt;
  Color c;
  c.r = static_cast<int>((it->second >> 16) & 0xff);
  c.g = static_cast<int>((it->second >> 8) & 0xff);
  c.b = static_cast<int>(it->second & 0xff);
  c.source = std::string(name);
  return c;
}

std::optional<Color> parse_color(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text[0] == '#') {
    Color c;
    c.source = std::string(text);
    if (text.size() == 7) {
      int v[6];
      for (int i = 0; i < 6; ++i) {
        v[i] = hex_digit(text[1 + i]);
        if (v[i] < 0) return std::nullopt;
      }
      c.r = v[0] * 16 + v[1];
      c.g = v[2] * 16 + v[3];
      c.b = v[4] * 16 + v[5];
      return c;
    }
    if (text.size() == 4) {
      int v[3];
      for (int i = 0; i < 3; ++i) {
        v[i] = hex_digit(text[1 + i]);
        if (v[i] < 0) return std::nullopt;
      }
      c.r = v[0] * 17;
      c.g = v[1] * 17;
      c.b = v[2] * 17;
      return c;
    }
    return std::nullopt;
  }
  if (text.substr(0, 4) == "rgb(" && text.back() == ')') {
    int r, g, b;
    if (std::sscanf(std::string(text).c_str(), "rgb(%d,%d,%d)", &r, &g, &b) == 3 ||
        std::sscanf(std::string(text).c_str(), "rgb(%d, %d, %d)", &r, &g, &b) == 3) {
      if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) return std::nullopt;
      return Color{r, g, b, std::string(text)};
    }
    return std::nullopt;
  }
  return color_from_name(text);
}

std::string color_to_hex(const Color& c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

const std::vector<std::string>& color_name_inventory() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& nc : kNamedColors) v.emplace_back(nc.name);
    return v;
  }();
  return names;
}

Lab srgb_to_lab(const Color& c) {
  const double r = srgb_channel_to_linear(c.r);
  const double g = srgb_channel_to_linear(c.g);
  const double b = srgb_channel_to_linear(c.b);

  // Linear sRGB -> XYZ (D65).
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

  // D65 reference white.
  const double fx = lab_f(x / 0.95047);
  const double fy = lab_f(y / 1.00000);
  const double fz = lab_f(z / 1.08883);

  Lab lab;
  lab.l = 116.0 * fy - 16.0;
  lab.a = 500.0 * (fx - fy);
  lab.b = 200.0 * (fy - fz);
  return lab;
}

double delta_e(const Lab& a, const Lab& b) {
  const double dl = a.l - b.l;
  const double da = a.a - b.a;
  const double db = a.b - b.b;
  return std::sqrt(dl * dl + da * da + db * db);
}

double delta_e(const Color& a, const Color& b) {
  return delta_e(srgb_to_lab(a), srgb_to_lab(b));
}

double color_similarity(const Color& a, const Color& b) {
  return std::max(0.0, 1.0 - delta_e(a, b) / 100.0);
}

}  // namespace vizstate
