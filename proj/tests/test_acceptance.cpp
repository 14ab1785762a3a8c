// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exit code is the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vizstate/assignment.hpp"
#include "vizstate/bench_gen.hpp"
#include "vizstate/color.hpp"
#include "vizstate/evaluator.hpp"
#include "vizstate/renderer.hpp"
#include "vizstate/rng.hpp"
#include "vizstate/rpc.hpp"
#include "vizstate/similarity.hpp"
#include "vizstate/view_state.hpp"

using namespace vizstate;

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int number, const char* name, const std::function<bool()>& body) {
  bool ok = false;
  std::string detail;
  try {
    ok = body();
  } catch (const std::exception& e) {
    detail = std::string(" (exception: ") + e.what() + ")";
  }
  std::printf("[%s] %2d %s%s\n", ok ? "PASS" : "FAIL", number, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// shared across criteria 6 and 7 so the big corpus is generated once
std::optional<Dataset> g_corpus;

const Dataset& corpus() {
  if (!g_corpus) {
    const auto dir = fs::temp_directory_path() / "vizstate_acceptance_corpus";
    fs::remove_all(dir);
    DatasetOptions opts;
    opts.seed = 4242;
    opts.figures_per_type = 100;
    opts.out_dir = dir.string();
    opts.write_svg = false;
    generate_dataset(opts);
    g_corpus = load_dataset(dir.string());
    fs::remove_all(dir);
  }
  return *g_corpus;
}

// minimum injection cost by enumerating column permutations (dims <= 6)
double brute_force_min_cost(const CostMatrix& m) {
  if (m.rows > m.cols) {
    CostMatrix t{m.cols, m.rows, std::vector<double>(m.cost.size())};
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return brute_force_min_cost(t);
  }
  std::vector<std::size_t> cols(m.cols);
  std::iota(cols.begin(), cols.end(), 0);
  double best = 1e300;
  do {
    double total = 0;
    for (std::size_t r = 0; r < m.rows; ++r) total += m.at(r, cols[r]);
    best = std::min(best, total);
  } while (std::next_permutation(cols.begin(), cols.end()));
  return best;
}

// EMD between uniform color arrays by replicating both sides to a common
// mass grid and solving the resulting square assignment
double transportation_oracle(const std::vector<Color>& a, const std::vector<Color>& b) {
  const std::size_t m = a.size(), n = b.size();
  CostMatrix big{m * n, m * n, std::vector<double>(m * n * m * n)};
  for (std::size_t i = 0; i < m * n; ++i)
    for (std::size_t j = 0; j < m * n; ++j) big.at(i, j) = delta_e(a[i / n], b[j / m]);
  const auto assignment = solve_assignment(big);
  return assignment_cost(big, assignment) / static_cast<double>(m * n);
}

FigureSpec shift_values(const FigureSpec& spec, double delta) {
  Json doc = figure_to_json(spec);
  for (auto& trace : doc["data"]) {
    if (trace.contains("values"))
      for (auto& v : trace["values"]) v = v.get<double>() + delta;
    else if (trace.contains("y") && trace["y"].is_array() && trace["y"][0].is_number())
      for (auto& y : trace["y"]) y = y.get<double>() + delta;
    else if (trace.contains("x") && trace["x"].is_array() && trace["x"][0].is_number())
      for (auto& x : trace["x"]) x = x.get<double>() + delta;
  }
  return parse_figure_json(doc);
}

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++count;
  return count;
}

}  // namespace

int main() {
  criterion(1, "identical figures score 1.0 on every similarity component", [] {
    for (int t = 0; t < kChartTypeCount; ++t)
      for (int i = 0; i < 10; ++i) {
        const auto spec = generate_figure(chart_type_at(t), derive_seed(9000 + t, i));
        const auto report = score_figure(spec, spec, 5.0);
        for (double s : {report.s_type, report.s_data, report.s_text, report.s_style})
          if (!near(s, 1.0, 1e-9)) return false;
      }
    return true;
  });

  criterion(2, "fully mismatched matched pairs score e^-1 at lambda 1", [] {
    const auto gt = parse_figure(R"({"data":[{"type":"bar","x":["A"],"y":[5]}]})");
    const auto pred = parse_figure(R"({"data":[{"type":"bar","x":["B"],"y":[5]}]})");
    const auto report = score_figure(gt, pred, 1.0);
    return near(report.s_data, 0.3679, 0.005);
  });

  criterion(3, "assignment cost equals permutation brute force on 200 instances", [] {
    Rng rng(555);
    for (int i = 0; i < 200; ++i) {
      CostMatrix m;
      m.rows = static_cast<std::size_t>(rng.uniform_int(1, 6));
      m.cols = static_cast<std::size_t>(rng.uniform_int(1, 6));
      m.cost.resize(m.rows * m.cols);
      for (auto& c : m.cost) c = rng.uniform(0.0, 10.0);
      const double fast = assignment_cost(m, solve_assignment(m));
      if (!near(fast, brute_force_min_cost(m), 1e-9)) return false;
    }
    return true;
  });

  criterion(4, "color-array distance matches a transportation oracle on 100 arrays", [] {
    Rng rng(777);
    auto random_colors = [&](std::size_t n) {
      std::vector<Color> out(n);
      for (auto& c : out) {
        c.r = static_cast<int>(rng.uniform_int(0, 255));
        c.g = static_cast<int>(rng.uniform_int(0, 255));
        c.b = static_cast<int>(rng.uniform_int(0, 255));
      }
      return out;
    };
    for (int i = 0; i < 100; ++i) {
      const auto a = random_colors(static_cast<std::size_t>(rng.uniform_int(1, 5)));
      const auto b = random_colors(static_cast<std::size_t>(rng.uniform_int(1, 5)));
      if (!near(color_array_distance(a, b), transportation_oracle(a, b), 1e-6)) return false;
    }
    return true;
  });

  criterion(5, "s_data falls strictly in lambda and preserves configuration ranking", [] {
    const std::vector<double> lambdas = {1, 3, 5, 7, 10};
    for (int t = 0; t < kChartTypeCount; ++t) {
      const auto gt = generate_figure(chart_type_at(t), derive_seed(5100, t));
      const auto shifted = shift_values(gt, 0.3);
      Json worse_doc = figure_to_json(shifted);
      if (worse_doc["data"].size() > 1) {
        worse_doc["data"].erase(worse_doc["data"].size() - 1);  // lose one trace entirely
      } else {
        for (const char* key : {"labels", "values", "x", "y"}) {  // or its last point
          auto& trace = worse_doc["data"][0];
          if (trace.contains(key)) trace[key].erase(trace[key].size() - 1);
        }
      }
      const auto close_pred = lambda_sweep(gt, shifted, lambdas);
      const auto far_pred = lambda_sweep(gt, parse_figure_json(worse_doc), lambdas);
      double prev_close = 2.0, prev_far = 2.0;
      for (double l : lambdas) {
        if (!(close_pred.at(l) < prev_close) || !(far_pred.at(l) < prev_far)) return false;
        if (!(close_pred.at(l) > far_pred.at(l))) return false;  // ranking at every lambda
        prev_close = close_pred.at(l);
        prev_far = far_pred.at(l);
      }
    }
    return true;
  });

  criterion(6, "generated corpus: 500 figures, 100 per type, balanced, recomputable", [] {
    const auto& ds = corpus();
    if (ds.figures.size() != 500) return false;
    std::map<std::string, int> per_type;
    for (const auto& [id, fig] : ds.figures) {
      ++per_type[fig.chart_type];
      std::size_t yes = 0;
      for (const auto& q : fig.questions) {
        if (q.answer) ++yes;
        if (recompute_answer(fig.spec, q) != q.answer) return false;
      }
      if (yes * 2 != fig.questions.size()) return false;
    }
    if (per_type.size() != 5) return false;
    for (const auto& [type, count] : per_type)
      if (count != 100) return false;
    return true;
  });

  criterion(7, "uniform random answerer lands at 0.5 +/- 0.02 accuracy", [] {
    const auto& ds = corpus();
    Rng rng(31);
    std::size_t total = 0, correct = 0;
    for (const auto& [id, fig] : ds.figures)
      for (const auto& q : fig.questions) {
        ++total;
        if (rng.coin() == q.answer) ++correct;
      }
    if (total < 5000) return false;
    const double accuracy = static_cast<double>(correct) / static_cast<double>(total);
    return near(accuracy, 0.5, 0.02);
  });

  criterion(8, "scripted rpc transcript exercises all seven tools bit-exact", [] {
    const auto dir = fs::temp_directory_path() / "vizstate_acceptance_rpc";
    fs::remove_all(dir);
    ServiceConfig config;
    config.out_dir = dir.string();
    ToolService service(config);
    const Json figure = Json::parse(
        R"({"data":[{"type":"scatter","name":"Blue","x":[1,2,3],"y":[1,2,3]}],
            "layout":{"xaxis":{"range":[0,4]},"yaxis":{"range":[0,4]}}})");

    std::stringstream in, out;
    auto frame = [&](int id, const std::string& method, const Json& params) {
      in << Json{{"jsonrpc", "2.0"}, {"id", id}, {"method", method}, {"params", params}}.dump()
         << "\n";
    };
    frame(1, "tools/list", Json::object());
    frame(2, "show_plot", {{"figure", figure}});
    frame(3, "relayout", {{"plot_id", 1}, {"x_min", 1981.97}, {"x_max", 2001.99},
                          {"y_min", 70.98}, {"y_max", 73.81}});
    frame(4, "legendclick", {{"plot_id", 1}, {"curve_number", 0}});
    frame(5, "selected", {{"plot_id", 1}, {"x_min", 0.0}, {"x_max", 4.0},
                          {"y_min", 0.0}, {"y_max", 4.0}});
    frame(6, "get_plot_json", {{"plot_id", 1}});
    frame(7, "get_plot_image", {{"plot_id", 1}});
    frame(8, "query_interactions", {{"plot_id", 1}});
    frame(9, "get_plot_json", {{"plot_id", 42}});
    if (service.serve(in, out) != 0) return false;

    std::vector<Json> responses;
    std::string line;
    while (std::getline(out, line)) responses.push_back(Json::parse(line));
    fs::remove_all(dir);
    if (responses.size() != 9) return false;
    for (std::size_t i = 0; i < responses.size(); ++i) {
      if (responses[i].at("jsonrpc") != "2.0") return false;
      if (responses[i].at("id") != static_cast<int>(i + 1)) return false;
    }
    if (responses[0].at("result").at("tools").size() != 7) return false;
    if (responses[1].at("result") != Json{{"plot_id", 1}}) return false;
    if (responses[2].at("result") != Json{{"status", "ok"}}) return false;
    if (responses[3].at("result") != Json{{"status", "ok"}}) return false;
    const auto& sel = responses[4].at("result");
    if (sel.at("point_count") != 0) return false;  // only trace is toggled off
    if (sel.at("range") != Json{{"x", {0.0, 4.0}}, {"y", {0.0, 4.0}}}) return false;
    if (!responses[5].at("result").contains("data")) return false;
    if (!fs::path(responses[6].at("result").at("image_path").get<std::string>()).is_absolute())
      return false;
    const auto& events = responses[7].at("result").at("events");
    if (events.size() != 4) return false;  // init, relayout, legendclick, selected
    const Json relayout_payload = {{"xaxis.range[0]", 1981.97}, {"xaxis.range[1]", 2001.99},
                                   {"yaxis.range[0]", 70.98}, {"yaxis.range[1]", 73.81}};
    if (events[1].at("payload") != relayout_payload) return false;
    if (events[1].at("payload").dump() != relayout_payload.dump()) return false;
    return responses[8].at("error").at("data").at("code") == "UNKNOWN_PLOT";
  });

  criterion(9, "1000 random interaction sequences per chart type replay and select exactly", [] {
    Rng rng(90210);
    for (int t = 0; t < kChartTypeCount; ++t) {
      for (int fig_index = 0; fig_index < 50; ++fig_index) {
        const auto spec = generate_figure(chart_type_at(t), derive_seed(600 + t, fig_index));
        for (int seq = 0; seq < 20; ++seq) {
          StateEngine engine;
          const int id = engine.create_plot(spec);
          for (int step = 0; step < 6; ++step) {
            const auto kind = rng.uniform_int(0, 2);
            if (kind == 0) {
              const double lo = rng.uniform(-10, 10);
              engine.relayout(id, lo, lo + rng.uniform(0.5, 20.0), std::nullopt, std::nullopt);
            } else if (kind == 1) {
              engine.legendclick(id, static_cast<int>(rng.uniform_int(
                                         0, static_cast<std::int64_t>(spec.traces.size()) - 1)));
            } else {
              const double xl = rng.uniform(-10, 10), yl = rng.uniform(-10, 30);
              const auto result = engine.selected(id, xl, xl + rng.uniform(0.5, 15.0), yl,
                                                  yl + rng.uniform(0.5, 25.0));
              const auto folded = engine.get_plot_json(id);
              auto cat_pos = [](const AxisConfig& axis, const XValue& v) {
                const auto label = std::get<std::string>(v);
                for (std::size_t k = 0; k < axis.categories.size(); ++k)
                  if (axis.categories[k] == label) return static_cast<double>(k);
                return -1.0;
              };
              std::size_t expected = 0;
              for (const auto& trace : folded.traces) {
                if (trace.visible != Visibility::visible || trace.type == TraceType::pie)
                  continue;
                for (std::size_t i = 0; i < trace.y.size(); ++i) {
                  double gx, gy;
                  if (trace.type == TraceType::bar &&
                      trace.orientation == Orientation::horizontal) {
                    gx = trace.y[i];
                    gy = cat_pos(folded.layout.y_axis, trace.x[i]);
                  } else {
                    gx = is_numeric(trace.x[i]) ? std::get<double>(trace.x[i])
                                                : cat_pos(folded.layout.x_axis, trace.x[i]);
                    gy = trace.y[i];
                  }
                  if (gx >= result.x_range.first && gx <= result.x_range.second &&
                      gy >= result.y_range.first && gy <= result.y_range.second)
                    ++expected;
                }
              }
              if (result.point_count != expected) return false;
            }
          }
          const auto events = engine.query_interactions(id);
          const auto replayed = engine.view_at(id, events.back().id);
          const auto live = engine.current_view(id);
          if (replayed.x_range != live.x_range || replayed.y_range != live.y_range ||
              replayed.visibility != live.visibility)
            return false;
        }
      }
    }
    return true;
  });

  criterion(10, "renders are byte-identical across runs and zooming drops geometry", [] {
    for (int t = 0; t < kChartTypeCount; ++t)
      for (int i = 0; i < 2; ++i) {
        const auto spec = generate_figure(chart_type_at(t), derive_seed(7000 + t, i));
        const auto view = initial_view(spec);
        if (render(spec, view) != render(spec, view)) return false;
      }
    const auto dots = parse_figure(
        R"({"data":[{"type":"scatter","mode":"markers",
                     "x":[1,2,3,4,5,6,7,8,9,10],
                     "y":[1,2,3,4,5,6,7,8,9,10]}],"layout":{}})");
    ViewState wide = initial_view(dots);
    ViewState zoomed = wide;
    zoomed.x_range = {0.0, 5.5};
    const auto full = render(dots, wide);
    const auto clipped = render(dots, zoomed);
    if (clipped == full) return false;
    return count_occurrences(clipped, "<circle") == 5 &&
           count_occurrences(full, "<circle") == 10;
  });

  criterion(11, "evaluator reproduces hand-computed accuracies on synthetic run logs", [] {
    const auto dir = fs::temp_directory_path() / "vizstate_acceptance_eval";
    fs::remove_all(dir);
    DatasetOptions opts;
    opts.seed = 21;
    opts.figures_per_type = 2;
    opts.out_dir = dir.string();
    opts.max_questions_per_figure = 10000;  // uncapped: counts differ by chart type
    opts.write_svg = false;
    generate_dataset(opts);
    const auto ds = load_dataset(dir.string());
    fs::remove_all(dir);

    const DatasetFigure* small = nullptr;
    const DatasetFigure* large = nullptr;
    for (const auto& [id, fig] : ds.figures) {
      if (!small || fig.questions.size() < small->questions.size()) small = &fig;
      if (!large || fig.questions.size() > large->questions.size()) large = &fig;
    }
    const auto na = small->questions.size(), nb = large->questions.size();
    if (na >= nb || na % 2 != 0) return false;

    RunRecord half;  // right on the first half of the small figure's questions
    half.figure_id = small->figure_id;
    half.predicted_spec = small->spec;
    for (std::size_t i = 0; i < na; ++i)
      half.qa_answers.emplace_back(static_cast<int>(i), i < na / 2
                                                            ? small->questions[i].answer
                                                            : !small->questions[i].answer);
    RunRecord full;  // right on everything
    full.figure_id = large->figure_id;
    full.predicted_spec = large->spec;
    for (std::size_t i = 0; i < nb; ++i)
      full.qa_answers.emplace_back(static_cast<int>(i), large->questions[i].answer);

    const auto summary = evaluate_run(ds, {half, full}, 5.0, 0.9);
    const double pooled = (static_cast<double>(na) / 2.0 + static_cast<double>(nb)) /
                          static_cast<double>(na + nb);
    if (!near(summary.per_figure_accuracy, 0.75, 1e-12)) return false;
    if (!near(summary.question_accuracy, pooled, 1e-12)) return false;
    if (summary.per_figure_accuracy == summary.question_accuracy) return false;

    // threshold 0 must reduce conditional accuracy to the per-figure average
    const auto unfiltered = evaluate_run(ds, {half, full}, 5.0, 0.0);
    if (unfiltered.conditional_figure_count != 2) return false;
    if (!near(unfiltered.conditional_accuracy, unfiltered.per_figure_accuracy, 1e-12))
      return false;

    // an empty answer sheet scores zero: silence is incorrect
    RunRecord silent;
    silent.figure_id = small->figure_id;
    silent.predicted_spec = small->spec;
    const auto zeroed = evaluate_run(ds, {silent}, 5.0, 0.9);
    return near(zeroed.question_accuracy, 0.0, 1e-12) &&
           near(zeroed.per_figure_accuracy, 0.0, 1e-12);
  });

  if (g_failures == 0)
    std::printf("all 11 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria failed\n", g_failures);
  return g_failures;
}
