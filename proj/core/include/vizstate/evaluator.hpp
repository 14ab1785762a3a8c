#pragma once

#include <map>
#include <string>
#include <vector>

#include "vizstate/bench_gen.hpp"
#include "vizstate/similarity.hpp"

namespace vizstate {

struct DatasetFigure {
  std::string figure_id;
  std::string chart_type;
  FigureSpec spec;
  std::vector<QuestionInstance> questions;
};

struct Dataset {
  std::map<std::string, DatasetFigure> figures;  // keyed by figure_id
  Json manifest = Json::object();
};

/// Loads <dir>/manifest.json plus every referenced figure directory.
Dataset load_dataset(const std::string& dir);

/// One agent session's output for one benchmark figure.
struct RunRecord {
  std::string figure_id;
  FigureSpec predicted_spec;
  std::vector<std::pair<int, bool>> qa_answers;       // (question index, answer)
  std::map<std::string, int> tool_calls;              // tool name -> call count
};

Json run_record_to_json(const RunRecord& record);
RunRecord run_record_from_json(const Json& j);

/// Reads every *.json run-record file in a directory (sorted by filename).
std::vector<RunRecord> load_run_records(const std::string& dir);

struct FigureEval {
  std::string figure_id;
  std::string chart_type;
  SimilarityReport scores;
  std::size_t questions_total = 0;
  std::size_t questions_correct = 0;
  double accuracy = 0;  // unanswered questions count as incorrect
};

struct EvalSummary {
  std::vector<FigureEval> figures;
  double mean_s_type = 0, mean_s_data = 0, mean_s_text = 0, mean_s_style = 0;
  double question_accuracy = 0;   // pooled over all questions
  double per_figure_accuracy = 0; // within-figure average first, then across figures
  double conditional_accuracy = 0;
  std::size_t conditional_figure_count = 0;
  std::map<std::string, double> accuracy_by_chart_type;  // pooled per type
  std::map<std::string, double> accuracy_by_family;      // pooled per question family
  // Both usage readings: share of sessions invoking the tool at least once,
  // and each tool's share of all calls made.
  std::map<std::string, double> tool_session_share;
  std::map<std::string, double> tool_call_share;
  double lambda = 5.0;
  double threshold = 0.9;

  Json to_json() const;
};

/// Scores and grades one run against the dataset. Throws
/// Error{UnknownFigure} for records naming absent figures and
/// Error{IndexOutOfRange} for qa indices outside the question list.
EvalSummary evaluate_run(const Dataset& dataset, const std::vector<RunRecord>& records,
                         double lambda = 5.0, double threshold = 0.9);

/// lambda -> mean s_data over all records.
std::map<double, double> sweep_report(const Dataset& dataset,
                                      const std::vector<RunRecord>& records,
                                      const std::vector<double>& lambdas);

}  // namespace vizstate
