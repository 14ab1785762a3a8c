#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vizstate/figure.hpp"

namespace vizstate {

/// Tunable knobs left open by the metric definition. Defaults are the
/// values used throughout the test suite and the CLI.
struct SimilarityConfig {
  double lambda = 5.0;            // exponential penalty on Chamfer distance
  double fuzzy_threshold = 0.8;   // normalized edit similarity for text pairing
  double categorical_weight = 1.0;  // weight of the Jaccard penalty vs numeric distance
};

struct MatchResult {
  struct Pair {
    std::size_t gt_index;
    std::size_t pred_index;
    double chamfer;  // in [0, 1]
  };
  std::vector<Pair> pairs;
  std::vector<std::size_t> unmatched_gt;
  std::vector<std::size_t> unmatched_pred;
};

enum class TextRole { Title, Axis, Legend, DataAnnotations };

std::string text_role_name(TextRole role);

struct TextBuckets {
  std::map<TextRole, std::set<std::string>> buckets;
};

struct SimilarityReport {
  double s_type = 0;
  double s_data = 0;
  double s_text = 0;
  double s_style = 0;
  double lambda = 5.0;
  MatchResult match;
  std::map<TextRole, double> per_role_text;
  // Per matched pair: property name -> similarity in [0, 1].
  std::vector<std::map<std::string, double>> per_pair_style;

  Json to_json() const;
};

/// Symmetric mean nearest-neighbor distance in [0, 1]. Numeric dimensions
/// are normalized by the combined range of both clouds; categorical
/// dimensions add a (1 - Jaccard) token penalty; per-point distances are
/// clamped at 1 before averaging. Throws Error{EmptyCloud} on empty input.
double chamfer_distance(const PointCloud& a, const PointCloud& b,
                        const SimilarityConfig& cfg = {});

/// Optimal (Hungarian) alignment of prediction traces to ground truth on
/// pairwise Chamfer cost. Traces with incompatible cloud layouts are matched
/// at the maximum distance 1.
MatchResult match_traces(const std::vector<PointCloud>& gt,
                         const std::vector<PointCloud>& pred,
                         const SimilarityConfig& cfg = {});

double score_type(const FigureSpec& gt, const FigureSpec& pred, const MatchResult& match);
double score_data(const MatchResult& match, std::size_t gt_count, std::size_t pred_count,
                  double lambda);

TextBuckets extract_text_buckets(const FigureSpec& spec);
double score_text(const TextBuckets& gt, const TextBuckets& pred,
                  std::map<TextRole, double>* per_role = nullptr,
                  const SimilarityConfig& cfg = {});

/// Exact EMD between two color arrays in CIELAB, ground cost deltaE.
double color_array_distance(const std::vector<Color>& a, const std::vector<Color>& b);

double score_style(const FigureSpec& gt_resolved, const FigureSpec& pred_resolved,
                   const MatchResult& match,
                   std::vector<std::map<std::string, double>>* per_pair = nullptr);

/// Full four-score comparison; defaults are resolved internally.
SimilarityReport score_figure(const FigureSpec& gt, const FigureSpec& pred,
                              double lambda = 5.0);

/// s_data per lambda, reusing a single matching (matching is lambda-free).
std::map<double, double> lambda_sweep(const FigureSpec& gt, const FigureSpec& pred,
                                      const std::vector<double>& lambdas);

}  // namespace vizstate
