#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vizstate/color.hpp"

using namespace vizstate;

TEST_CASE("name lookup folds case and spaces") {
  auto a = color_from_name("Blue Violet");
  auto b = color_from_name("blueviolet");
  auto c = color_from_name("BLUE_VIOLET");
  REQUIRE(a);
  REQUIRE(b);
  REQUIRE(c);
  CHECK(*a == *b);
  CHECK(*a == *c);
  CHECK(a->r == 0x8a);
  CHECK(a->g == 0x2b);
  CHECK(a->b == 0xe2);
  CHECK_FALSE(color_from_name("not a color"));
}

TEST_CASE("hex and rgb() literals parse") {
  CHECK(parse_color("#ff8000") == Color{255, 128, 0});
  CHECK(parse_color("#f80") == Color{255, 136, 0});
  CHECK(parse_color("rgb(1, 2, 3)") == Color{1, 2, 3});
  CHECK(parse_color("red") == Color{255, 0, 0});
  CHECK_FALSE(parse_color("#zzz"));
  CHECK(color_to_hex(Color{255, 128, 0}) == "#ff8000");
}

TEST_CASE("Lab conversion hits the standard anchors") {
  const Lab white = srgb_to_lab(Color{255, 255, 255});
  CHECK(white.l == doctest::Approx(100.0).epsilon(1e-6));
  CHECK(white.a == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(white.b == doctest::Approx(0.0).epsilon(1e-4));

  const Lab black = srgb_to_lab(Color{0, 0, 0});
  CHECK(black.l == doctest::Approx(0.0).epsilon(1e-9));

  // mid gray: linearized 0.2158..., L = 53.585 (well-known sRGB anchor)
  const Lab gray = srgb_to_lab(Color{128, 128, 128});
  CHECK(gray.l == doctest::Approx(53.585).epsilon(1e-3));
}

TEST_CASE("black vs white similarity is exactly the L span") {
  CHECK(delta_e(Color{0, 0, 0}, Color{255, 255, 255}) == doctest::Approx(100.0).epsilon(1e-6));
  CHECK(color_similarity(Color{0, 0, 0}, Color{255, 255, 255}) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(color_similarity(Color{10, 20, 30}, Color{10, 20, 30}) == 1.0);
}

TEST_CASE("similarity is symmetric and bounded") {
  const Color a{12, 200, 90}, b{240, 10, 130};
  CHECK(color_similarity(a, b) == color_similarity(b, a));
  CHECK(color_similarity(a, b) >= 0.0);
  CHECK(color_similarity(a, b) <= 1.0);
}

TEST_CASE("name inventory is broad enough for series naming") {
  CHECK(color_name_inventory().size() >= 140);
}
