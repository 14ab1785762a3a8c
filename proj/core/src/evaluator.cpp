#include "vizstate/evaluator.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vizstate {
namespace {

namespace fs = std::filesystem;

Json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorCode::MalformedDocument, "invalid JSON in " + path.string());
  return j;
}

}  // namespace

Dataset load_dataset(const std::string& dir) {
  Dataset ds;
  ds.manifest = read_json_file(fs::path(dir) / "manifest.json");
  for (const auto& entry : ds.manifest.at("figures")) {
    DatasetFigure fig;
    fig.figure_id = entry.at("figure_id").get<std::string>();
    fig.chart_type = entry.at("chart_type").get<std::string>();
    const fs::path fdir = fs::path(dir) / fig.chart_type / fig.figure_id;
    fig.spec = parse_figure_json(read_json_file(fdir / "spec.json"));
    for (const auto& q : read_json_file(fdir / "questions.json"))
      fig.questions.push_back(question_from_json(q));
    ds.figures.emplace(fig.figure_id, std::move(fig));
  }
  return ds;
}

Json run_record_to_json(const RunRecord& record) {
  Json answers = Json::array();
  for (const auto& [index, answer] : record.qa_answers)
    answers.push_back({{"question_index", index}, {"answer", answer}});
  Json calls = Json::object();
  for (const auto& [tool, count] : record.tool_calls) calls[tool] = count;
  return {{"figure_id", record.figure_id},
          {"predicted_spec", figure_to_json(record.predicted_spec)},
          {"qa_answers", answers},
          {"tool_calls", calls}};
}

RunRecord run_record_from_json(const Json& j) {
  RunRecord r;
  r.figure_id = j.at("figure_id").get<std::string>();
  r.predicted_spec = parse_figure_json(j.at("predicted_spec"));
  const Json answers = j.value("qa_answers", Json::array());
  for (const auto& a : answers)
    r.qa_answers.emplace_back(a.at("question_index").get<int>(),
                              a.at("answer").get<bool>());
  const Json calls = j.value("tool_calls", Json::object());
  for (const auto& [tool, count] : calls.items()) r.tool_calls[tool] = count.get<int>();
  return r;
}

std::vector<RunRecord> load_run_records(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> records;
  for (const auto& f : files) records.push_back(run_record_from_json(read_json_file(f)));
  return records;
}

EvalSummary evaluate_run(const Dataset& dataset, const std::vector<RunRecord>& records,
                         double lambda, double threshold) {
  EvalSummary summary;
  summary.lambda = lambda;
  summary.threshold = threshold;

  std::size_t pooled_total = 0, pooled_correct = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_type;    // correct/total
  std::map<std::string, std::pair<std::size_t, std::size_t>> by_family;
  std::map<std::string, int> session_hits;
  std::map<std::string, long long> call_totals;
  long long all_calls = 0;
  double figure_acc_sum = 0, conditional_acc_sum = 0;

  for (const auto& record : records) {
    const auto it = dataset.figures.find(record.figure_id);
    if (it == dataset.figures.end())
      throw Error(ErrorCode::UnknownFigure, "figure '" + record.figure_id + "' not in dataset");
    const DatasetFigure& fig = it->second;

    FigureEval fe;
    fe.figure_id = fig.figure_id;
    fe.chart_type = fig.chart_type;
    fe.scores = score_figure(fig.spec, record.predicted_spec, lambda);
    fe.questions_total = fig.questions.size();

    // one graded answer per question; unanswered stays incorrect
    std::vector<std::optional<bool>> given(fig.questions.size());
    for (const auto& [index, answer] : record.qa_answers) {
      if (index < 0 || static_cast<std::size_t>(index) >= fig.questions.size())
        throw Error(ErrorCode::IndexOutOfRange,
                    "question index " + std::to_string(index) + " out of range for '" +
                        record.figure_id + "'");
      given[static_cast<std::size_t>(index)] = answer;
    }
    for (std::size_t qi = 0; qi < fig.questions.size(); ++qi) {
      const QuestionInstance& q = fig.questions[qi];
      const bool correct = given[qi].has_value() && *given[qi] == q.answer;
      if (correct) ++fe.questions_correct;
      auto& type_slot = by_type[fig.chart_type];
      auto& family_slot = by_family[question_family_name(q.family)];
      type_slot.second++, family_slot.second++;
      if (correct) type_slot.first++, family_slot.first++;
    }
    pooled_total += fe.questions_total;
    pooled_correct += fe.questions_correct;
    fe.accuracy = fe.questions_total == 0
                      ? 0.0
                      : static_cast<double>(fe.questions_correct) /
                            static_cast<double>(fe.questions_total);
    figure_acc_sum += fe.accuracy;
    if (fe.scores.s_data >= threshold) {
      conditional_acc_sum += fe.accuracy;
      ++summary.conditional_figure_count;
    }

    summary.mean_s_type += fe.scores.s_type;
    summary.mean_s_data += fe.scores.s_data;
    summary.mean_s_text += fe.scores.s_text;
    summary.mean_s_style += fe.scores.s_style;

    for (const auto& [tool, count] : record.tool_calls) {
      if (count <= 0) continue;
      ++session_hits[tool];
      call_totals[tool] += count;
      all_calls += count;
    }
    summary.figures.push_back(std::move(fe));
  }

  const auto n = static_cast<double>(records.size());
  if (!records.empty()) {
    summary.mean_s_type /= n;
    summary.mean_s_data /= n;
    summary.mean_s_text /= n;
    summary.mean_s_style /= n;
    summary.per_figure_accuracy = figure_acc_sum / n;
  }
  if (pooled_total > 0)
    summary.question_accuracy =
        static_cast<double>(pooled_correct) / static_cast<double>(pooled_total);
  if (summary.conditional_figure_count > 0)
    summary.conditional_accuracy =
        conditional_acc_sum / static_cast<double>(summary.conditional_figure_count);

  for (const auto& [type, slot] : by_type)
    summary.accuracy_by_chart_type[type] =
        static_cast<double>(slot.first) / static_cast<double>(slot.second);
  for (const auto& [family, slot] : by_family)
    summary.accuracy_by_family[family] =
        static_cast<double>(slot.first) / static_cast<double>(slot.second);
  for (const auto& [tool, hits] : session_hits)
    summary.tool_session_share[tool] = static_cast<double>(hits) / n;
  if (all_calls > 0)
    for (const auto& [tool, count] : call_totals)
      summary.tool_call_share[tool] =
          static_cast<double>(count) / static_cast<double>(all_calls);
  return summary;
}

Json EvalSummary::to_json() const {
  Json figs = Json::array();
  for (const auto& fe : figures)
    figs.push_back({{"figure_id", fe.figure_id},
                    {"chart_type", fe.chart_type},
                    {"scores", fe.scores.to_json()},
                    {"questions_total", fe.questions_total},
                    {"questions_correct", fe.questions_correct},
                    {"accuracy", fe.accuracy}});
  return {{"lambda", lambda},
          {"threshold", threshold},
          {"figures", figs},
          {"mean_scores",
           {{"s_type", mean_s_type},
            {"s_data", mean_s_data},
            {"s_text", mean_s_text},
            {"s_style", mean_s_style}}},
          {"question_accuracy", question_accuracy},
          {"per_figure_accuracy", per_figure_accuracy},
          {"conditional_accuracy", conditional_accuracy},
          {"conditional_figure_count", conditional_figure_count},
          {"accuracy_by_chart_type", accuracy_by_chart_type},
          {"accuracy_by_family", accuracy_by_family},
          {"tool_session_share", tool_session_share},
          {"tool_call_share", tool_call_share}};
}

std::map<double, double> sweep_report(const Dataset& dataset,
                                      const std::vector<RunRecord>& records,
                                      const std::vector<double>& lambdas) {
  for (double l : lambdas)
    if (l <= 0) throw Error(ErrorCode::InvalidArgs, "lambdas must be positive");

  std::map<double, double> means;
  for (double l : lambdas) means[l] = 0;
  for (const auto& record : records) {
    const auto it = dataset.figures.find(record.figure_id);
    if (it == dataset.figures.end())
      throw Error(ErrorCode::UnknownFigure, "figure '" + record.figure_id + "' not in dataset");
    const auto per_lambda = lambda_sweep(it->second.spec, record.predicted_spec, lambdas);
    for (const auto& [l, s] : per_lambda) means[l] += s;
  }
  if (!records.empty())
    for (auto& [l, s] : means) s /= static_cast<double>(records.size());
  return means;
}

}  // namespace vizstate
