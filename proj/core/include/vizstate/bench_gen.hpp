#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vizstate/figure.hpp"

namespace vizstate {

enum class ChartType { line, dot_line, vbar, hbar, pie };

std::string chart_type_name(ChartType t);
std::optional<ChartType> chart_type_from_name(const std::string& name);
inline constexpr int kChartTypeCount = 5;
ChartType chart_type_at(int index);

enum class QuestionFamily { aggregation, comparison, topology };
std::string question_family_name(QuestionFamily f);

enum class AggTemplate { min, max, low_median, high_median };
enum class CmpTemplate { less, greater };
enum class TopoTemplate { intersect, smoothest, roughest, auc_min, auc_max };

struct QuestionInstance {
  int template_id = 0;  // 1..15
  QuestionFamily family = QuestionFamily::aggregation;
  std::string text;
  std::vector<std::string> subjects;  // 1 or 2 series/slice names
  bool answer = false;
};

struct FigureCase {
  std::string figure_id;
  ChartType chart_type = ChartType::line;
  FigureSpec spec;
  std::uint64_t seed = 0;
  std::vector<QuestionInstance> questions;  // balanced: yes count == no count
};

/// Deterministic figure for (chart_type, seed). Series are named by distinct
/// CSS colors and styled with the matching RGB; data is regenerated until all
/// applicable oracles clear a guard band, so stored answers are robust.
FigureSpec generate_figure(ChartType chart_type, std::uint64_t seed);

/// True iff the subject attains the queried order statistic of the per-series
/// scalar reduction (bar value, pie slice value, line mean-of-y). Ties break
/// by series order: the first series attaining the statistic wins.
bool oracle_aggregation(const FigureSpec& spec, AggTemplate templ,
                        const std::string& subject);

/// Strict inequality on scalar reductions.
bool oracle_comparison(const FigureSpec& spec, CmpTemplate templ, const std::string& a,
                       const std::string& b);

/// Line-figure topology: intersection (touching counts), strict-minimum
/// roughness (mean |second difference| / y-range), strict-extremum trapezoid
/// AUC over the shared x domain. Throws NotApplicable on non-line figures.
bool oracle_topology(const FigureSpec& spec, TopoTemplate templ,
                     const std::vector<std::string>& subjects);

/// All applicable template x subject instantiations with oracle answers.
std::vector<QuestionInstance> enumerate_questions(const FigureSpec& spec);

/// Max-size yes/no-balanced subset; the majority class is down-sampled
/// uniformly at random (deterministic per seed). Original order is kept.
std::vector<QuestionInstance> balance_questions(std::vector<QuestionInstance> instances,
                                                std::uint64_t seed);

/// Recomputes the stored answer of a question from the spec alone.
bool recompute_answer(const FigureSpec& spec, const QuestionInstance& q);

/// Figure plus balanced (and capped) question list.
FigureCase generate_case(ChartType chart_type, std::uint64_t seed,
                         const std::string& figure_id,
                         std::size_t max_questions = 16);

struct DatasetOptions {
  std::uint64_t seed = 0;
  int figures_per_type = 100;
  std::string out_dir;
  std::size_t max_questions_per_figure = 16;
  bool write_svg = true;
};

/// The pinned 15-template inventory, serialized into every manifest.
Json template_inventory();

Json question_to_json(const QuestionInstance& q);
QuestionInstance question_from_json(const Json& j);

/// Writes <out>/<chart_type>/<figure_id>/{spec.json,questions.json,figure.svg}
/// plus <out>/manifest.json. Byte-identical output for identical options.
void generate_dataset(const DatasetOptions& opts);

}  // namespace vizstate
