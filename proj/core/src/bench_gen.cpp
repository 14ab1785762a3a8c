#include "vizstate/bench_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>

#include "vizstate/geometry.hpp"
#include "vizstate/renderer.hpp"
#include "vizstate/rng.hpp"

namespace vizstate {
namespace {

// Display names resolvable through the embedded color table; FigureQA-style
// series identities ("Is Blue Violet the minimum?").
const std::vector<std::string>& series_name_pool() {
  static const std::vector<std::string> pool = {
      "Blue",       "Red",        "Green",       "Orange",     "Purple",
      "Brown",      "Pink",       "Olive",       "Cyan",       "Magenta",
      "Gold",       "Navy",       "Teal",        "Coral",      "Crimson",
      "Indigo",     "Khaki",      "Maroon",      "Orchid",     "Plum",
      "Salmon",     "Sienna",     "Tan",         "Tomato",     "Turquoise",
      "Violet",     "Blue Violet", "Dark Green", "Sky Blue",   "Hot Pink",
      "Sea Green",  "Steel Blue", "Dark Orange", "Slate Gray", "Firebrick",
      "Chartreuse",
  };
  return pool;
}

const std::vector<std::string>& title_pool() {
  static const std::vector<std::string> pool = {
      "Quarterly results", "Sensor readings",  "Benchmark scores", "Usage statistics",
      "Survey responses",  "Annual totals",    "Throughput report", "Sample measurements",
  };
  return pool;
}

const std::vector<std::string>& axis_title_pool() {
  static const std::vector<std::string> pool = {"time", "index", "trial", "step", "year"};
  return pool;
}

const std::vector<std::string>& value_title_pool() {
  static const std::vector<std::string> pool = {"value", "count", "score", "amount", "level"};
  return pool;
}

std::vector<std::string> pick_names(Rng& rng, std::size_t count) {
  std::vector<std::string> names = series_name_pool();
  rng.shuffle(names);
  names.resize(count);
  return names;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& pool) {
  return pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
}

bool pairwise_separated(const std::vector<double>& values, double min_gap) {
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (std::abs(values[i] - values[j]) < min_gap) return false;
  return true;
}

struct LineData {
  std::vector<std::string> names;
  std::vector<std::vector<double>> ys;  // shared x grid 0..n-1
};

std::optional<LineData> try_line_data(Rng& rng) {
  LineData data;
  const auto series = static_cast<std::size_t>(rng.uniform_int(2, 7));
  const auto points = static_cast<std::size_t>(rng.uniform_int(5, 20));
  data.names = pick_names(rng, series);

  for (std::size_t s = 0; s < series; ++s) {
    const double slope = rng.uniform(-1.5, 1.5);
    const double intercept = rng.uniform(0.0, 20.0);
    const double amp = rng.uniform(0.3, 2.0);
    double walk = 0;
    std::vector<double> ys;
    for (std::size_t i = 0; i < points; ++i) {
      walk = std::clamp(walk + rng.uniform(-amp, amp), -3 * amp, 3 * amp);
      ys.push_back(intercept + slope * static_cast<double>(i) + walk);
    }
    data.ys.push_back(std::move(ys));
  }

  double y_lo = data.ys[0][0], y_hi = y_lo;
  for (const auto& ys : data.ys)
    for (double y : ys) {
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  const double y_range = y_hi - y_lo;
  if (y_range <= 0) return std::nullopt;

  // Guard bands: reject figures whose oracle answers would be numerically
  // ambiguous (near-equal means/AUCs/roughness, near-tangent pairs).
  std::vector<double> means, aucs, roughs;
  for (const auto& ys : data.ys) {
    means.push_back(std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size()));
    std::vector<Point2> line;
    for (std::size_t i = 0; i < ys.size(); ++i)
      line.push_back({static_cast<double>(i), ys[i]});
    aucs.push_back(trapezoid_auc(line));
    roughs.push_back(roughness(ys));
  }
  if (!pairwise_separated(means, 0.01 * y_range)) return std::nullopt;
  if (!pairwise_separated(aucs, 0.01 * y_range * static_cast<double>(points - 1)))
    return std::nullopt;
  const double rough_max = *std::max_element(roughs.begin(), roughs.end());
  if (rough_max <= 0 || !pairwise_separated(roughs, 0.05 * rough_max)) return std::nullopt;

  const double tangent_band = 0.005 * y_range;
  for (std::size_t a = 0; a < series; ++a)
    for (std::size_t b = a + 1; b < series; ++b)
      for (std::size_t i = 0; i < points; ++i)
        if (std::abs(data.ys[a][i] - data.ys[b][i]) <= tangent_band) return std::nullopt;

  return data;
}

Json line_figure_json(Rng& rng, const LineData& data, bool with_markers) {
  Json doc;
  Json traces = Json::array();
  for (std::size_t s = 0; s < data.names.size(); ++s) {
    Json t;
    t["type"] = "scatter";
    t["name"] = data.names[s];
    t["mode"] = with_markers ? "lines+markers" : "lines";
    Json xs = Json::array(), ys = Json::array();
    for (std::size_t i = 0; i < data.ys[s].size(); ++i) {
      xs.push_back(static_cast<double>(i));
      ys.push_back(data.ys[s][i]);
    }
    t["x"] = xs;
    t["y"] = ys;
    t["marker"]["color"] = data.names[s];
    traces.push_back(t);
  }
  doc["data"] = traces;
  doc["layout"]["title"]["text"] = pick(rng, title_pool());
  doc["layout"]["xaxis"]["title"]["text"] = pick(rng, axis_title_pool());
  doc["layout"]["yaxis"]["title"]["text"] = pick(rng, value_title_pool());
  return doc;
}

Json bar_figure_json(Rng& rng, bool horizontal) {
  const auto series = static_cast<std::size_t>(rng.uniform_int(2, 7));
  const auto names = pick_names(rng, series);
  std::vector<double> values;
  do {
    values.clear();
    for (std::size_t s = 0; s < series; ++s)
      values.push_back(std::round(rng.uniform(1.0, 10.0) * 100.0) / 100.0);
  } while (!pairwise_separated(values, 0.1));

  Json doc;
  Json traces = Json::array();
  for (std::size_t s = 0; s < series; ++s) {
    Json t;
    t["type"] = "bar";
    t["name"] = names[s];
    if (horizontal) {
      t["orientation"] = "h";
      t["y"] = Json::array({names[s]});
      t["x"] = Json::array({values[s]});
    } else {
      t["x"] = Json::array({names[s]});
      t["y"] = Json::array({values[s]});
    }
    t["marker"]["color"] = names[s];
    traces.push_back(t);
  }
  doc["data"] = traces;
  doc["layout"]["title"]["text"] = pick(rng, title_pool());
  if (horizontal) {
    doc["layout"]["xaxis"]["title"]["text"] = pick(rng, value_title_pool());
  } else {
    doc["layout"]["yaxis"]["title"]["text"] = pick(rng, value_title_pool());
  }
  return doc;
}

Json pie_figure_json(Rng& rng) {
  const auto slices = static_cast<std::size_t>(rng.uniform_int(3, 10));
  const auto names = pick_names(rng, slices);
  std::vector<double> values;
  do {
    values.clear();
    for (std::size_t s = 0; s < slices; ++s)
      values.push_back(std::round(rng.uniform(1.0, 10.0) * 100.0) / 100.0);
  } while (!pairwise_separated(values, 0.1));

  Json doc;
  Json t;
  t["type"] = "pie";
  t["labels"] = names;
  t["values"] = values;
  Json colors = Json::array();
  for (const auto& n : names) colors.push_back(n);
  t["marker"]["color"] = colors;
  doc["data"] = Json::array({t});
  doc["layout"]["title"]["text"] = pick(rng, title_pool());
  return doc;
}

struct NamedValue {
  std::string name;
  double value;
};

// Scalar reduction per series: bar value, pie slice value, line mean-of-y.
std::vector<NamedValue> scalar_series(const FigureSpec& spec) {
  std::vector<NamedValue> out;
  if (spec.traces.size() == 1 && spec.traces.front().type == TraceType::pie) {
    const Trace& t = spec.traces.front();
    for (std::size_t i = 0; i < t.pie_labels.size(); ++i)
      out.push_back({t.pie_labels[i], t.pie_values[i]});
    return out;
  }
  for (const auto& t : spec.traces) {
    if (t.type == TraceType::pie) continue;
    const double mean =
        std::accumulate(t.y.begin(), t.y.end(), 0.0) / static_cast<double>(t.y.size());
    out.push_back({t.name, mean});
  }
  return out;
}

std::size_t find_subject(const std::vector<NamedValue>& series, const std::string& name) {
  for (std::size_t i = 0; i < series.size(); ++i)
    if (series[i].name == name) return i;
  throw Error(ErrorCode::UnknownSeries, "unknown series '" + name + "'");
}

const Trace& find_line_trace(const FigureSpec& spec, const std::string& name) {
  for (const auto& t : spec.traces)
    if (t.type == TraceType::scatter && t.name == name) return t;
  throw Error(ErrorCode::UnknownSeries, "unknown series '" + name + "'");
}

std::vector<Point2> trace_polyline(const Trace& t) {
  std::vector<Point2> line;
  for (std::size_t i = 0; i < t.y.size(); ++i) {
    if (!is_numeric(t.x[i]))
      throw Error(ErrorCode::NotApplicable, "topology needs numeric x data");
    line.push_back({std::get<double>(t.x[i]), t.y[i]});
  }
  return line;
}

std::vector<Point2> clip_to_domain(const std::vector<Point2>& line, double lo, double hi) {
  std::vector<Point2> out;
  auto interp = [](Point2 a, Point2 b, double x) {
    const double t = (x - a.x) / (b.x - a.x);
    return Point2{x, a.y + t * (b.y - a.y)};
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const Point2 p = line[i];
    if (p.x >= lo && p.x <= hi) {
      if (out.empty() && p.x > lo && i > 0) out.push_back(interp(line[i - 1], p, lo));
      out.push_back(p);
    } else if (p.x > hi) {
      if (i > 0 && line[i - 1].x < hi) out.push_back(interp(line[i - 1], p, hi));
      break;
    }
  }
  return out;
}

double shared_domain_auc(const FigureSpec& spec, const Trace& subject) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& t : spec.traces) {
    if (t.type != TraceType::scatter) continue;
    const auto line = trace_polyline(t);
    lo = std::max(lo, line.front().x);
    hi = std::min(hi, line.back().x);
  }
  return trapezoid_auc(clip_to_domain(trace_polyline(subject), lo, hi));
}

bool is_line_figure(const FigureSpec& spec) {
  return std::all_of(spec.traces.begin(), spec.traces.end(),
                     [](const Trace& t) { return t.type == TraceType::scatter; });
}

ChartType detect_chart_type(const FigureSpec& spec) {
  const Trace& t = spec.traces.front();
  if (t.type == TraceType::pie) return ChartType::pie;
  if (t.type == TraceType::bar)
    return t.orientation == Orientation::horizontal ? ChartType::hbar : ChartType::vbar;
  if (t.style.mode && t.style.mode->find("markers") != std::string::npos)
    return ChartType::dot_line;
  return ChartType::line;
}

QuestionInstance make_question(int template_id, QuestionFamily family, std::string text,
                               std::vector<std::string> subjects, bool answer) {
  QuestionInstance q;
  q.template_id = template_id;
  q.family = family;
  q.text = std::move(text);
  q.subjects = std::move(subjects);
  q.answer = answer;
  return q;
}

}  // namespace

std::string chart_type_name(ChartType t) {
  switch (t) {
    case ChartType::line: return "line";
    case ChartType::dot_line: return "dot_line";
    case ChartType::vbar: return "vbar";
    case ChartType::hbar: return "hbar";
    case ChartType::pie: return "pie";
  }
  return "line";
}

std::optional<ChartType> chart_type_from_name(const std::string& name) {
  if (name == "line") return ChartType::line;
  if (name == "dot_line") return ChartType::dot_line;
  if (name == "vbar") return ChartType::vbar;
  if (name == "hbar") return ChartType::hbar;
  if (name == "pie") return ChartType::pie;
  return std::nullopt;
}

ChartType chart_type_at(int index) {
  static constexpr ChartType kAll[] = {ChartType::line, ChartType::dot_line, ChartType::vbar,
                                       ChartType::hbar, ChartType::pie};
  return kAll[index];
}

std::string question_family_name(QuestionFamily f) {
  switch (f) {
    case QuestionFamily::aggregation: return "aggregation";
    case QuestionFamily::comparison: return "comparison";
    case QuestionFamily::topology: return "topology";
  }
  return "aggregation";
}

FigureSpec generate_figure(ChartType chart_type, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Rng rng(derive_seed(seed, 1 + attempt));
    Json doc;
    switch (chart_type) {
      case ChartType::line:
      case ChartType::dot_line: {
        const auto data = try_line_data(rng);
        if (!data) continue;
        doc = line_figure_json(rng, *data, chart_type == ChartType::dot_line);
        break;
      }
      case ChartType::vbar:
        doc = bar_figure_json(rng, false);
        break;
      case ChartType::hbar:
        doc = bar_figure_json(rng, true);
        break;
      case ChartType::pie:
        doc = pie_figure_json(rng);
        break;
    }
    return parse_figure_json(doc);
  }
  throw Error(ErrorCode::IoError, "figure generation did not converge");
}

bool oracle_aggregation(const FigureSpec& spec, AggTemplate templ, const std::string& subject) {
  const auto series = scalar_series(spec);
  const std::size_t idx = find_subject(series, subject);
  const std::size_t n = series.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return series[a].value < series[b].value;
  });

  switch (templ) {
    case AggTemplate::min: {
      // first series attaining the minimum wins ties
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (series[i].value < series[best].value) best = i;
      return best == idx;
    }
    case AggTemplate::max: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (series[i].value > series[best].value) best = i;
      return best == idx;
    }
    case AggTemplate::low_median:
      return order[(n - 1) / 2] == idx;
    case AggTemplate::high_median:
      return order[n / 2] == idx;
  }
  return false;
}

bool oracle_comparison(const FigureSpec& spec, CmpTemplate templ, const std::string& a,
                       const std::string& b) {
  const auto series = scalar_series(spec);
  const double va = series[find_subject(series, a)].value;
  const double vb = series[find_subject(series, b)].value;
  return templ == CmpTemplate::less ? va < vb : va > vb;
}

bool oracle_topology(const FigureSpec& spec, TopoTemplate templ,
                     const std::vector<std::string>& subjects) {
  if (!is_line_figure(spec))
    throw Error(ErrorCode::NotApplicable, "topology applies to line figures only");
  if (subjects.empty()) throw Error(ErrorCode::InvalidArgs, "topology needs subjects");

  if (templ == TopoTemplate::intersect) {
    if (subjects.size() != 2)
      throw Error(ErrorCode::InvalidArgs, "intersect needs two subjects");
    const auto a = trace_polyline(find_line_trace(spec, subjects[0]));
    const auto b = trace_polyline(find_line_trace(spec, subjects[1]));
    return polylines_intersect(a, b);
  }

  const Trace& subject = find_line_trace(spec, subjects[0]);
  if (templ == TopoTemplate::smoothest || templ == TopoTemplate::roughest) {
    const double mine = roughness(subject.y);
    for (const auto& t : spec.traces) {
      if (&t == &subject) continue;
      const double other = roughness(t.y);
      if (templ == TopoTemplate::smoothest && other <= mine) return false;
      if (templ == TopoTemplate::roughest && other >= mine) return false;
    }
    return true;
  }

  const double mine = shared_domain_auc(spec, subject);
  for (const auto& t : spec.traces) {
    if (&t == &subject) continue;
    const double other = shared_domain_auc(spec, t);
    if (templ == TopoTemplate::auc_min && other <= mine) return false;
    if (templ == TopoTemplate::auc_max && other >= mine) return false;
  }
  return true;
}

std::vector<QuestionInstance> enumerate_questions(const FigureSpec& spec) {
  const ChartType chart = detect_chart_type(spec);
  const auto series = scalar_series(spec);
  std::vector<QuestionInstance> out;

  auto agg = [&](int id, AggTemplate t, const std::string& verb) {
    for (const auto& s : series)
      out.push_back(make_question(id, QuestionFamily::aggregation,
                                  "Is " + s.name + " the " + verb + "?", {s.name},
                                  oracle_aggregation(spec, t, s.name)));
  };
  agg(1, AggTemplate::min, "minimum");
  agg(2, AggTemplate::max, "maximum");
  agg(3, AggTemplate::low_median, "low median");
  agg(4, AggTemplate::high_median, "high median");

  for (const auto& a : series) {
    for (const auto& b : series) {
      if (a.name == b.name) continue;
      out.push_back(make_question(5, QuestionFamily::comparison,
                                  "Is " + a.name + " less than " + b.name + "?",
                                  {a.name, b.name},
                                  oracle_comparison(spec, CmpTemplate::less, a.name, b.name)));
      out.push_back(make_question(6, QuestionFamily::comparison,
                                  "Is " + a.name + " greater than " + b.name + "?",
                                  {a.name, b.name},
                                  oracle_comparison(spec, CmpTemplate::greater, a.name, b.name)));
    }
  }

  if (chart == ChartType::line || chart == ChartType::dot_line) {
    for (std::size_t i = 0; i < series.size(); ++i)
      for (std::size_t j = i + 1; j < series.size(); ++j)
        out.push_back(make_question(
            7, QuestionFamily::topology,
            "Does " + series[i].name + " intersect " + series[j].name + "?",
            {series[i].name, series[j].name},
            oracle_topology(spec, TopoTemplate::intersect, {series[i].name, series[j].name})));
    auto topo = [&](int id, TopoTemplate t, const std::string& text_prefix,
                    const std::string& text_suffix) {
      for (const auto& s : series)
        out.push_back(make_question(id, QuestionFamily::topology,
                                    text_prefix + s.name + text_suffix, {s.name},
                                    oracle_topology(spec, t, {s.name})));
    };
    topo(8, TopoTemplate::smoothest, "Is ", " the smoothest?");
    topo(9, TopoTemplate::roughest, "Is ", " the roughest?");
    topo(10, TopoTemplate::auc_min, "Does ", " have the minimum area under the curve?");
    topo(11, TopoTemplate::auc_max, "Does ", " have the maximum area under the curve?");
  } else if (chart == ChartType::vbar || chart == ChartType::hbar) {
    for (const auto& s : series) {
      out.push_back(make_question(12, QuestionFamily::aggregation,
                                  "Is the bar for " + s.name + " the shortest?", {s.name},
                                  oracle_aggregation(spec, AggTemplate::min, s.name)));
      out.push_back(make_question(13, QuestionFamily::aggregation,
                                  "Is the bar for " + s.name + " the tallest?", {s.name},
                                  oracle_aggregation(spec, AggTemplate::max, s.name)));
    }
  } else if (chart == ChartType::pie) {
    for (const auto& s : series) {
      out.push_back(make_question(14, QuestionFamily::aggregation,
                                  "Is the " + s.name + " slice the smallest?", {s.name},
                                  oracle_aggregation(spec, AggTemplate::min, s.name)));
      out.push_back(make_question(15, QuestionFamily::aggregation,
                                  "Is the " + s.name + " slice the largest?", {s.name},
                                  oracle_aggregation(spec, AggTemplate::max, s.name)));
    }
  }
  return out;
}

std::vector<QuestionInstance> balance_questions(std::vector<QuestionInstance> instances,
                                                std::uint64_t seed) {
  std::vector<std::size_t> yes_idx, no_idx;
  for (std::size_t i = 0; i < instances.size(); ++i)
    (instances[i].answer ? yes_idx : no_idx).push_back(i);

  const std::size_t keep = std::min(yes_idx.size(), no_idx.size());
  Rng rng(derive_seed(seed, 0xba1aULL));
  auto trim = [&](std::vector<std::size_t>& idx) {
    rng.shuffle(idx);
    idx.resize(keep);
  };
  trim(yes_idx);
  trim(no_idx);

  std::vector<bool> selected(instances.size(), false);
  for (auto i : yes_idx) selected[i] = true;
  for (auto i : no_idx) selected[i] = true;

  std::vector<QuestionInstance> out;
  for (std::size_t i = 0; i < instances.size(); ++i)
    if (selected[i]) out.push_back(std::move(instances[i]));
  return out;
}

bool recompute_answer(const FigureSpec& spec, const QuestionInstance& q) {
  switch (q.template_id) {
    case 1: return oracle_aggregation(spec, AggTemplate::min, q.subjects.at(0));
    case 2: return oracle_aggregation(spec, AggTemplate::max, q.subjects.at(0));
    case 3: return oracle_aggregation(spec, AggTemplate::low_median, q.subjects.at(0));
    case 4: return oracle_aggregation(spec, AggTemplate::high_median, q.subjects.at(0));
    case 5: return oracle_comparison(spec, CmpTemplate::less, q.subjects.at(0), q.subjects.at(1));
    case 6: return oracle_comparison(spec, CmpTemplate::greater, q.subjects.at(0), q.subjects.at(1));
    case 7: return oracle_topology(spec, TopoTemplate::intersect, q.subjects);
    case 8: return oracle_topology(spec, TopoTemplate::smoothest, q.subjects);
    case 9: return oracle_topology(spec, TopoTemplate::roughest, q.subjects);
    case 10: return oracle_topology(spec, TopoTemplate::auc_min, q.subjects);
    case 11: return oracle_topology(spec, TopoTemplate::auc_max, q.subjects);
    case 12: return oracle_aggregation(spec, AggTemplate::min, q.subjects.at(0));
    case 13: return oracle_aggregation(spec, AggTemplate::max, q.subjects.at(0));
    case 14: return oracle_aggregation(spec, AggTemplate::min, q.subjects.at(0));
    case 15: return oracle_aggregation(spec, AggTemplate::max, q.subjects.at(0));
    default:
      throw Error(ErrorCode::InvalidArgs, "unknown template_id " + std::to_string(q.template_id));
  }
}

FigureCase generate_case(ChartType chart_type, std::uint64_t seed,
                         const std::string& figure_id, std::size_t max_questions) {
  FigureCase fc;
  fc.figure_id = figure_id;
  fc.chart_type = chart_type;
  fc.seed = seed;
  fc.spec = generate_figure(chart_type, seed);
  fc.questions = balance_questions(enumerate_questions(fc.spec), seed);

  const std::size_t cap_pairs = std::max<std::size_t>(1, max_questions / 2);
  if (fc.questions.size() / 2 > cap_pairs) {
    std::vector<std::size_t> yes_idx, no_idx;
    for (std::size_t i = 0; i < fc.questions.size(); ++i)
      (fc.questions[i].answer ? yes_idx : no_idx).push_back(i);
    Rng rng(derive_seed(seed, 0xca9ULL));
    rng.shuffle(yes_idx);
    rng.shuffle(no_idx);
    yes_idx.resize(cap_pairs);
    no_idx.resize(cap_pairs);
    std::vector<bool> selected(fc.questions.size(), false);
    for (auto i : yes_idx) selected[i] = true;
    for (auto i : no_idx) selected[i] = true;
    std::vector<QuestionInstance> capped;
    for (std::size_t i = 0; i < fc.questions.size(); ++i)
      if (selected[i]) capped.push_back(std::move(fc.questions[i]));
    fc.questions = std::move(capped);
  }
  return fc;
}

Json template_inventory() {
  Json arr = Json::array();
  auto add = [&](int id, const char* family, const char* pattern, const char* applies) {
    arr.push_back({{"template_id", id},
                   {"family", family},
                   {"pattern", pattern},
                   {"applies_to", applies}});
  };
  add(1, "aggregation", "Is {A} the minimum?", "all");
  add(2, "aggregation", "Is {A} the maximum?", "all");
  add(3, "aggregation", "Is {A} the low median?", "all");
  add(4, "aggregation", "Is {A} the high median?", "all");
  add(5, "comparison", "Is {A} less than {B}?", "all");
  add(6, "comparison", "Is {A} greater than {B}?", "all");
  add(7, "topology", "Does {A} intersect {B}?", "line,dot_line");
  add(8, "topology", "Is {A} the smoothest?", "line,dot_line");
  add(9, "topology", "Is {A} the roughest?", "line,dot_line");
  add(10, "topology", "Does {A} have the minimum area under the curve?", "line,dot_line");
  add(11, "topology", "Does {A} have the maximum area under the curve?", "line,dot_line");
  add(12, "aggregation", "Is the bar for {A} the shortest?", "vbar,hbar");
  add(13, "aggregation", "Is the bar for {A} the tallest?", "vbar,hbar");
  add(14, "aggregation", "Is the {A} slice the smallest?", "pie");
  add(15, "aggregation", "Is the {A} slice the largest?", "pie");
  return arr;
}

Json question_to_json(const QuestionInstance& q) {
  return {{"template_id", q.template_id},
          {"family", question_family_name(q.family)},
          {"text", q.text},
          {"subjects", q.subjects},
          {"answer", q.answer}};
}

QuestionInstance question_from_json(const Json& j) {
  QuestionInstance q;
  q.template_id = j.at("template_id").get<int>();
  const std::string fam = j.at("family").get<std::string>();
  if (fam == "aggregation") q.family = QuestionFamily::aggregation;
  else if (fam == "comparison") q.family = QuestionFamily::comparison;
  else if (fam == "topology") q.family = QuestionFamily::topology;
  else throw Error(ErrorCode::SchemaViolation, "unknown question family '" + fam + "'");
  q.text = j.at("text").get<std::string>();
  q.subjects = j.at("subjects").get<std::vector<std::string>>();
  q.answer = j.at("answer").get<bool>();
  return q;
}

void generate_dataset(const DatasetOptions& opts) {
  namespace fs = std::filesystem;
  if (opts.figures_per_type < 1)
    throw Error(ErrorCode::InvalidArgs, "figures_per_type must be >= 1");
  if (opts.out_dir.empty()) throw Error(ErrorCode::InvalidArgs, "output directory required");

  fs::create_directories(opts.out_dir);
  auto write_file = [](const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << content;
  };

  Json figures = Json::array();
  for (int ti = 0; ti < kChartTypeCount; ++ti) {
    const ChartType ct = chart_type_at(ti);
    const std::string type_name = chart_type_name(ct);
    for (int i = 0; i < opts.figures_per_type; ++i) {
      const std::uint64_t fseed =
          derive_seed(opts.seed, (static_cast<std::uint64_t>(ti) << 32) | static_cast<std::uint64_t>(i));
      char idbuf[32];
      std::snprintf(idbuf, sizeof(idbuf), "%s_%03d", type_name.c_str(), i);
      const FigureCase fc = generate_case(ct, fseed, idbuf, opts.max_questions_per_figure);

      const fs::path dir = fs::path(opts.out_dir) / type_name / fc.figure_id;
      fs::create_directories(dir);
      write_file(dir / "spec.json", serialize_figure(fc.spec));

      Json questions = Json::array();
      for (const auto& q : fc.questions) questions.push_back(question_to_json(q));
      write_file(dir / "questions.json", questions.dump(2));

      if (opts.write_svg)
        write_file(dir / "figure.svg", render(fc.spec, initial_view(fc.spec)));

      figures.push_back({{"figure_id", fc.figure_id},
                         {"chart_type", type_name},
                         {"seed", std::to_string(fc.seed)},
                         {"question_count", fc.questions.size()}});
    }
  }

  Json manifest;
  manifest["seed"] = std::to_string(opts.seed);
  manifest["figures_per_type"] = opts.figures_per_type;
  manifest["max_questions_per_figure"] = opts.max_questions_per_figure;
  manifest["templates"] = template_inventory();
  manifest["figures"] = figures;
  write_file(fs::path(opts.out_dir) / "manifest.json", manifest.dump(2));
}

}  // namespace vizstate
