// Command-line front end: dataset generation, figure scoring, oracle
// queries, the stdio tool service, and run evaluation.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vizstate/bench_gen.hpp"
#include "vizstate/evaluator.hpp"
#include "vizstate/renderer.hpp"
#include "vizstate/rpc.hpp"
#include "vizstate/similarity.hpp"

namespace {

using vizstate::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vizstate::Error(vizstate::ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw vizstate::Error(vizstate::ErrorCode::IoError, "cannot write " + out_path);
  out << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"visualization-state engine and benchmark toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a benchmark dataset");
  std::uint64_t gen_seed = 0;
  int per_type = 100;
  std::string gen_out;
  std::size_t max_questions = 16;
  bool no_svg = false;
  gen->add_option("--seed", gen_seed, "dataset seed");
  gen->add_option("--per-type", per_type, "figures per chart type");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--max-questions", max_questions, "per-figure question cap");
  gen->add_flag("--no-svg", no_svg, "skip figure.svg rendering");

  // score
  auto* score = app.add_subcommand("score", "compare two figure documents");
  std::string score_gt, score_pred, score_out;
  double score_lambda = 5.0;
  score->add_option("--gt", score_gt, "ground-truth figure JSON")->required();
  score->add_option("--pred", score_pred, "predicted figure JSON")->required();
  score->add_option("--lambda", score_lambda, "data-score decay rate");
  score->add_option("--out", score_out, "write report here instead of stdout");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "s_data across decay rates");
  std::string sweep_gt, sweep_pred, sweep_out;
  std::vector<double> sweep_lambdas = {1, 3, 5, 7, 10};
  sweep->add_option("--gt", sweep_gt, "ground-truth figure JSON")->required();
  sweep->add_option("--pred", sweep_pred, "predicted figure JSON")->required();
  sweep->add_option("--lambdas", sweep_lambdas, "decay rates")->delimiter(',');
  sweep->add_option("--out", sweep_out, "write table here instead of stdout");

  // answer
  auto* answer = app.add_subcommand("answer", "query a question oracle on a figure");
  std::string ans_figure, ans_out;
  int ans_template = 0;
  std::vector<std::string> ans_subjects;
  answer->add_option("--figure", ans_figure, "figure JSON file")->required();
  answer->add_option("--template", ans_template, "question template id (1-15)")->required();
  answer->add_option("--subjects", ans_subjects, "series/slice names")
      ->required()
      ->delimiter(',');
  answer->add_option("--out", ans_out, "write result here instead of stdout");

  // serve
  auto* serve = app.add_subcommand("serve", "JSON-RPC tool service");
  bool stdio = false;
  bool shared_sessions = false;
  std::string serve_out_dir;
  serve->add_flag("--stdio", stdio, "newline-delimited JSON-RPC on stdin/stdout")
      ->required();
  serve->add_flag("--shared-sessions", shared_sessions,
                  "share plot ids across connections (collaboration mode)");
  serve->add_option("--render-dir", serve_out_dir, "snapshot output directory");

  // report
  auto* report = app.add_subcommand("report", "evaluate a run against a dataset");
  std::string rep_dataset, rep_run, rep_out;
  double rep_threshold = 0.9;
  double rep_lambda = 5.0;
  std::vector<double> rep_lambdas;
  report->add_option("--dataset", rep_dataset, "dataset directory")->required();
  report->add_option("--run", rep_run, "run-record directory")->required();
  report->add_option("--threshold", rep_threshold, "s_data cutoff for conditional accuracy");
  report->add_option("--lambda", rep_lambda, "data-score decay rate");
  report->add_option("--lambdas", rep_lambdas, "also emit a sweep table")->delimiter(',');
  report->add_option("--out", rep_out, "write report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      vizstate::DatasetOptions opts;
      opts.seed = gen_seed;
      opts.figures_per_type = per_type;
      opts.out_dir = gen_out;
      opts.max_questions_per_figure = max_questions;
      opts.write_svg = !no_svg;
      vizstate::generate_dataset(opts);
      std::cout << "wrote dataset to " << gen_out << "\n";
    } else if (*score) {
      const auto gt = vizstate::parse_figure(read_file(score_gt));
      const auto pred = vizstate::parse_figure(read_file(score_pred));
      emit(vizstate::score_figure(gt, pred, score_lambda).to_json().dump(2), score_out);
    } else if (*sweep) {
      const auto gt = vizstate::parse_figure(read_file(sweep_gt));
      const auto pred = vizstate::parse_figure(read_file(sweep_pred));
      Json table = Json::object();
      for (const auto& [l, s] : vizstate::lambda_sweep(gt, pred, sweep_lambdas))
        table[std::to_string(l)] = s;
      emit(table.dump(2), sweep_out);
    } else if (*answer) {
      const auto spec = vizstate::parse_figure(read_file(ans_figure));
      vizstate::QuestionInstance q;
      q.template_id = ans_template;
      q.subjects = ans_subjects;
      Json result = {{"template_id", ans_template},
                     {"subjects", ans_subjects},
                     {"answer", vizstate::recompute_answer(spec, q)}};
      emit(result.dump(2), ans_out);
    } else if (*serve) {
      vizstate::ServiceConfig config;
      config.shared_sessions = shared_sessions;
      config.out_dir = serve_out_dir;
      vizstate::ToolService service(config);
      return service.serve(std::cin, std::cout);
    } else if (*report) {
      const auto dataset = vizstate::load_dataset(rep_dataset);
      const auto records = vizstate::load_run_records(rep_run);
      Json out =
          vizstate::evaluate_run(dataset, records, rep_lambda, rep_threshold).to_json();
      if (!rep_lambdas.empty()) {
        Json table = Json::object();
        for (const auto& [l, s] : vizstate::sweep_report(dataset, records, rep_lambdas))
          table[std::to_string(l)] = s;
        out["sweep"] = table;
      }
      emit(out.dump(2), rep_out);
    }
  } catch (const vizstate::Error& e) {
    std::cerr << "error [" << e.code_name() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
