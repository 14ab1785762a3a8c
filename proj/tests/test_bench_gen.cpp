#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "vizstate/bench_gen.hpp"
#include "vizstate/geometry.hpp"
#include "vizstate/rng.hpp"

using namespace vizstate;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("generation is deterministic per (chart_type, seed)") {
  for (int t = 0; t < kChartTypeCount; ++t) {
    auto a = generate_figure(chart_type_at(t), 123);
    auto b = generate_figure(chart_type_at(t), 123);
    CHECK(serialize_figure(a) == serialize_figure(b));
    auto c = generate_figure(chart_type_at(t), 124);
    CHECK(serialize_figure(a) != serialize_figure(c));
  }
}

TEST_CASE("chart types map to the documented trace shapes") {
  auto line = generate_figure(ChartType::line, 1);
  for (const auto& t : line.traces) {
    CHECK(t.type == TraceType::scatter);
    CHECK(*resolve_defaults(line).traces[0].style.mode == "lines");
    CHECK(t.y.size() >= 5);
    CHECK(t.y.size() <= 20);
  }
  CHECK(line.traces.size() >= 2);
  CHECK(line.traces.size() <= 7);

  auto dot = generate_figure(ChartType::dot_line, 2);
  CHECK(*dot.traces[0].style.mode == "lines+markers");

  auto vbar = generate_figure(ChartType::vbar, 3);
  CHECK(vbar.traces[0].type == TraceType::bar);
  CHECK(vbar.traces[0].orientation == Orientation::vertical);

  auto hbar = generate_figure(ChartType::hbar, 4);
  CHECK(hbar.traces[0].orientation == Orientation::horizontal);

  auto pie = generate_figure(ChartType::pie, 5);
  REQUIRE(pie.traces.size() == 1);
  CHECK(pie.traces[0].type == TraceType::pie);
  CHECK(pie.traces[0].pie_values.size() >= 3);
  CHECK(pie.traces[0].pie_values.size() <= 10);
}

TEST_CASE("series are named by colors that resolve and style them") {
  auto spec = generate_figure(ChartType::line, 42);
  for (const auto& t : spec.traces) {
    auto named = color_from_name(t.name);
    REQUIRE(named);
    REQUIRE(t.style.color);
    CHECK(t.style.color->colors[0] == *named);
  }
}

TEST_CASE("aggregation oracle on a hand-built figure") {
  auto spec = parse_figure(R"({"data":[
      {"type":"bar","name":"Blue","x":["Blue"],"y":[3]},
      {"type":"bar","name":"Red","x":["Red"],"y":[5]}],"layout":{}})");
  CHECK(oracle_aggregation(spec, AggTemplate::max, "Red"));
  CHECK_FALSE(oracle_aggregation(spec, AggTemplate::min, "Red"));
  CHECK(oracle_aggregation(spec, AggTemplate::min, "Blue"));
  CHECK_THROWS_AS(oracle_aggregation(spec, AggTemplate::min, "Green"), Error);
}

TEST_CASE("median templates use sort order with low/high split") {
  Json doc;
  for (int i = 0; i < 5; ++i) {
    Json t;
    t["type"] = "bar";
    t["name"] = std::string(1, static_cast<char>('A' + i));
    t["x"] = Json::array({t["name"]});
    t["y"] = Json::array({i + 1.0});  // values 1..5
    doc["data"].push_back(t);
  }
  auto spec = parse_figure_json(doc);
  CHECK(oracle_aggregation(spec, AggTemplate::low_median, "C"));   // value 3
  CHECK(oracle_aggregation(spec, AggTemplate::high_median, "C"));  // odd count: same
  CHECK_FALSE(oracle_aggregation(spec, AggTemplate::low_median, "B"));

  doc["data"].erase(4);  // even count 1..4: low median 2, high median 3
  auto even = parse_figure_json(doc);
  CHECK(oracle_aggregation(even, AggTemplate::low_median, "B"));
  CHECK(oracle_aggregation(even, AggTemplate::high_median, "C"));
}

TEST_CASE("comparison oracle is strict and dual") {
  auto spec = parse_figure(R"({"data":[
      {"type":"bar","name":"Blue","x":["Blue"],"y":[3]},
      {"type":"bar","name":"Red","x":["Red"],"y":[5]}],"layout":{}})");
  CHECK(oracle_comparison(spec, CmpTemplate::less, "Blue", "Red"));
  CHECK_FALSE(oracle_comparison(spec, CmpTemplate::greater, "Blue", "Red"));
  CHECK(oracle_comparison(spec, CmpTemplate::greater, "Red", "Blue"));

  auto equal = parse_figure(R"({"data":[
      {"type":"bar","name":"A","x":["A"],"y":[3]},
      {"type":"bar","name":"B","x":["B"],"y":[3]}],"layout":{}})");
  CHECK_FALSE(oracle_comparison(equal, CmpTemplate::less, "A", "B"));
  CHECK_FALSE(oracle_comparison(equal, CmpTemplate::greater, "A", "B"));
}

TEST_CASE("topology oracle on crossing and parallel lines") {
  Json doc;
  auto add_line = [&](const char* name, double slope, double intercept) {
    Json t;
    t["type"] = "scatter";
    t["name"] = name;
    for (int i = 0; i <= 10; ++i) {
      t["x"].push_back(i);
      t["y"].push_back(slope * i + intercept);
    }
    doc["data"].push_back(t);
  };
  add_line("up", 1, 0);
  add_line("down", -1, 10);
  add_line("shifted", 1, 5);
  auto spec = parse_figure_json(doc);
  CHECK(oracle_topology(spec, TopoTemplate::intersect, {"up", "down"}));
  CHECK_FALSE(oracle_topology(spec, TopoTemplate::intersect, {"up", "shifted"}));

  auto bars = parse_figure(R"({"data":[{"type":"bar","name":"A","x":["A"],"y":[1]}],"layout":{}})");
  CHECK_THROWS_AS(oracle_topology(bars, TopoTemplate::intersect, {"A", "A"}), Error);
}

TEST_CASE("AUC templates compare shared-domain trapezoid areas") {
  auto spec = parse_figure(R"({"data":[
      {"type":"scatter","name":"hi","x":[0,10],"y":[2,2]},
      {"type":"scatter","name":"lo","x":[0,10],"y":[1,1]}],"layout":{}})");
  CHECK(oracle_topology(spec, TopoTemplate::auc_max, {"hi"}));
  CHECK(oracle_topology(spec, TopoTemplate::auc_min, {"lo"}));
  CHECK_FALSE(oracle_topology(spec, TopoTemplate::auc_max, {"lo"}));
}

TEST_CASE("roughness templates pick strict extrema") {
  auto spec = parse_figure(R"({"data":[
      {"type":"scatter","name":"smooth","x":[0,1,2,3,4],"y":[0,1,2,3,4]},
      {"type":"scatter","name":"jagged","x":[0,1,2,3,4],"y":[0,2,0,2,0]}],"layout":{}})");
  CHECK(oracle_topology(spec, TopoTemplate::smoothest, {"smooth"}));
  CHECK(oracle_topology(spec, TopoTemplate::roughest, {"jagged"}));
  CHECK_FALSE(oracle_topology(spec, TopoTemplate::smoothest, {"jagged"}));
}

TEST_CASE("enumeration applicability per chart type") {
  auto pie = generate_figure(ChartType::pie, 10);
  for (const auto& q : enumerate_questions(pie)) CHECK(q.family != QuestionFamily::topology);

  auto bar = generate_figure(ChartType::vbar, 11);
  const auto n = bar.traces.size();
  std::size_t comparison = 0;
  for (const auto& q : enumerate_questions(bar))
    if (q.family == QuestionFamily::comparison) ++comparison;
  CHECK(comparison == n * (n - 1) * 2);  // ordered pairs x {less, greater}

  auto line = generate_figure(ChartType::line, 12);
  bool has_topology = false;
  for (const auto& q : enumerate_questions(line))
    has_topology |= q.family == QuestionFamily::topology;
  CHECK(has_topology);
}

TEST_CASE("every enumerated answer matches an oracle recomputation") {
  for (int t = 0; t < kChartTypeCount; ++t) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto spec = generate_figure(chart_type_at(t), derive_seed(900 + t, seed));
      for (const auto& q : enumerate_questions(spec))
        CHECK(q.answer == recompute_answer(spec, q));
    }
  }
}

TEST_CASE("balancing keeps the max equal subset deterministically") {
  std::vector<QuestionInstance> qs;
  for (int i = 0; i < 12; ++i) {
    QuestionInstance q;
    q.template_id = 1;
    q.answer = i < 7;  // 7 yes, 5 no
    q.text = "q" + std::to_string(i);
    qs.push_back(q);
  }
  auto balanced = balance_questions(qs, 4);
  CHECK(balanced.size() == 10);
  int yes = 0;
  for (const auto& q : balanced) yes += q.answer ? 1 : 0;
  CHECK(yes == 5);
  auto again = balance_questions(qs, 4);
  for (std::size_t i = 0; i < balanced.size(); ++i) CHECK(balanced[i].text == again[i].text);

  std::vector<QuestionInstance> all_no(4);
  CHECK(balance_questions(all_no, 1).empty());
}

TEST_CASE("intersection guard band: grid sign-change oracle agrees on generated lines") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto spec = generate_figure(ChartType::line, derive_seed(7000, seed));
    for (std::size_t a = 0; a < spec.traces.size(); ++a) {
      for (std::size_t b = a + 1; b < spec.traces.size(); ++b) {
        bool sign_change = false;
        double prev = spec.traces[a].y[0] - spec.traces[b].y[0];
        for (std::size_t i = 1; i < spec.traces[a].y.size(); ++i) {
          const double cur = spec.traces[a].y[i] - spec.traces[b].y[i];
          if ((prev < 0) != (cur < 0)) sign_change = true;
          prev = cur;
        }
        CHECK(oracle_topology(spec, TopoTemplate::intersect,
                              {spec.traces[a].name, spec.traces[b].name}) == sign_change);
      }
    }
  }
}

TEST_CASE("question json round-trip") {
  QuestionInstance q;
  q.template_id = 7;
  q.family = QuestionFamily::topology;
  q.text = "Does Blue intersect Red?";
  q.subjects = {"Blue", "Red"};
  q.answer = true;
  auto back = question_from_json(question_to_json(q));
  CHECK(back.template_id == q.template_id);
  CHECK(back.family == q.family);
  CHECK(back.text == q.text);
  CHECK(back.subjects == q.subjects);
  CHECK(back.answer == q.answer);
}

TEST_CASE("template inventory pins 15 templates over 3 families") {
  auto inv = template_inventory();
  REQUIRE(inv.size() == 15);
  std::set<std::string> families;
  for (const auto& t : inv) families.insert(t.at("family").get<std::string>());
  CHECK(families == std::set<std::string>{"aggregation", "comparison", "topology"});
  for (int i = 0; i < 15; ++i) CHECK(inv[i].at("template_id") == i + 1);
}

TEST_CASE("dataset layout, balance, and manifest determinism") {
  namespace fs = std::filesystem;
  const auto root = fs::temp_directory_path() / "vizstate_ds_test";
  fs::remove_all(root);

  DatasetOptions opts;
  opts.seed = 5;
  opts.figures_per_type = 2;
  opts.out_dir = (root / "a").string();
  opts.write_svg = true;
  generate_dataset(opts);

  std::size_t figure_count = 0;
  for (int t = 0; t < kChartTypeCount; ++t) {
    const auto type_dir = root / "a" / chart_type_name(chart_type_at(t));
    REQUIRE(fs::is_directory(type_dir));
    for (const auto& fig_dir : fs::directory_iterator(type_dir)) {
      ++figure_count;
      CHECK(fs::exists(fig_dir.path() / "spec.json"));
      CHECK(fs::exists(fig_dir.path() / "figure.svg"));
      auto questions = Json::parse(slurp(fig_dir.path() / "questions.json"));
      int yes = 0, no = 0;
      auto spec = parse_figure(slurp(fig_dir.path() / "spec.json"));
      for (const auto& qj : questions) {
        auto q = question_from_json(qj);
        (q.answer ? yes : no)++;
        CHECK(q.answer == recompute_answer(spec, q));
      }
      CHECK(yes == no);
      CHECK(yes > 0);
    }
  }
  CHECK(figure_count == 10);

  opts.out_dir = (root / "b").string();
  generate_dataset(opts);
  CHECK(slurp(root / "a" / "manifest.json") == slurp(root / "b" / "manifest.json"));

  auto manifest = Json::parse(slurp(root / "a" / "manifest.json"));
  CHECK(manifest.at("templates").size() == 15);
  CHECK(manifest.at("figures").size() == 10);
  fs::remove_all(root);
}
