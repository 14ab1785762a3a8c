#include "vizstate/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "vizstate/assignment.hpp"
#include "vizstate/optimal_transport.hpp"

namespace vizstate {
namespace {

std::string fold_text(const std::string& s) {
  std::string out;
  bool pending_space = false;
  for (char raw : s) {
    const auto c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::set<std::string> token_set(const std::vector<std::string>& values) {
  std::set<std::string> tokens;
  for (const auto& v : values) {
    const std::string folded = fold_text(v);
    std::size_t start = 0;
    while (start < folded.size()) {
      const std::size_t end = folded.find(' ', start);
      if (end == std::string::npos) {
        tokens.insert(folded.substr(start));
        break;
      }
      if (end > start) tokens.insert(folded.substr(start, end - start));
      start = end + 1;
    }
  }
  tokens.erase("");
  return tokens;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& t : a) inter += b.count(t);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double edit_similarity(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return 1.0;
  const std::size_t longest = std::max(a.size(), b.size());
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

// Greedy fuzzy Jaccard: pair strings across the sets in descending edit
// similarity while the similarity clears the threshold.
double fuzzy_jaccard(const std::set<std::string>& gt, const std::set<std::string>& pred,
                     double threshold) {
  if (gt.empty() && pred.empty()) return 1.0;
  if (gt.empty() || pred.empty()) return 0.0;

  std::vector<std::string> a(gt.begin(), gt.end());
  std::vector<std::string> b(pred.begin(), pred.end());
  std::vector<std::string> fa(a.size()), fb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = fold_text(a[i]);
  for (std::size_t j = 0; j < b.size(); ++j) fb[j] = fold_text(b[j]);

  struct Cand {
    double sim;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double s = edit_similarity(fa[i], fb[j]);
      if (s >= threshold) cands.push_back({s, i, j});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) {
    if (l.sim != r.sim) return l.sim > r.sim;
    if (l.i != r.i) return l.i < r.i;
    return l.j < r.j;
  });

  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  std::size_t matched = 0;
  for (const auto& c : cands) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    ++matched;
  }
  const std::size_t uni = a.size() + b.size() - matched;
  return static_cast<double>(matched) / static_cast<double>(uni);
}

double point_distance(const CloudPoint& p, const CloudPoint& q,
                      const std::vector<double>& ranges, double cat_weight) {
  double sq = 0;
  for (std::size_t d = 0; d < p.nums.size(); ++d) {
    if (ranges[d] <= 0) continue;  // zero-range dim contributes nothing
    const double diff = (p.nums[d] - q.nums[d]) / ranges[d];
    sq += diff * diff;
  }
  double dist = std::sqrt(sq);
  if (!p.cats.empty() || !q.cats.empty())
    dist += cat_weight * (1.0 - jaccard(token_set(p.cats), token_set(q.cats)));
  return std::min(1.0, dist);
}

double directed_mean(const PointCloud& from, const PointCloud& to,
                     const std::vector<double>& ranges, double cat_weight) {
  double total = 0;
  for (const auto& p : from.points) {
    double best = 1.0;
    for (const auto& q : to.points)
      best = std::min(best, point_distance(p, q, ranges, cat_weight));
    total += best;
  }
  return total / static_cast<double>(from.points.size());
}

double numeric_similarity(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  if (m <= 0) return 1.0;
  return std::clamp(1.0 - std::abs(a - b) / m, 0.0, 1.0);
}

double color_prop_similarity(const ColorValue& a, const ColorValue& b) {
  if (!a.is_array && !b.is_array)
    return color_similarity(a.colors.front(), b.colors.front());
  return std::max(0.0, 1.0 - color_array_distance(a.colors, b.colors) / 100.0);
}

}  // namespace

std::string text_role_name(TextRole role) {
  switch (role) {
    case TextRole::Title: return "title";
    case TextRole::Axis: return "axis";
    case TextRole::Legend: return "legend";
    case TextRole::DataAnnotations: return "data_annotations";
  }
  return "title";
}

double chamfer_distance(const PointCloud& a, const PointCloud& b,
                        const SimilarityConfig& cfg) {
  if (a.points.empty() || b.points.empty())
    throw Error(ErrorCode::EmptyCloud, "Chamfer distance needs non-empty clouds");
  if (!a.same_layout(b))
    throw Error(ErrorCode::SchemaViolation, "point clouds have different layouts");

  // Per-dimension range over the union of both clouds.
  std::vector<double> ranges(a.num_dims, 0.0);
  for (std::size_t d = 0; d < a.num_dims; ++d) {
    double lo = a.points.front().nums[d];
    double hi = lo;
    for (const auto& p : a.points) {
      lo = std::min(lo, p.nums[d]);
      hi = std::max(hi, p.nums[d]);
    }
    for (const auto& p : b.points) {
      lo = std::min(lo, p.nums[d]);
      hi = std::max(hi, p.nums[d]);
    }
    ranges[d] = hi - lo;
  }

  return 0.5 * (directed_mean(a, b, ranges, cfg.categorical_weight) +
                directed_mean(b, a, ranges, cfg.categorical_weight));
}

MatchResult match_traces(const std::vector<PointCloud>& gt,
                         const std::vector<PointCloud>& pred,
                         const SimilarityConfig& cfg) {
  MatchResult result;
  CostMatrix m;
  m.rows = gt.size();
  m.cols = pred.size();
  m.cost.resize(m.rows * m.cols, 1.0);
  for (std::size_t i = 0; i < gt.size(); ++i)
    for (std::size_t j = 0; j < pred.size(); ++j)
      if (gt[i].same_layout(pred[j]) && !gt[i].points.empty() && !pred[j].points.empty())
        m.at(i, j) = chamfer_distance(gt[i], pred[j], cfg);

  const auto assignment = solve_assignment(m);
  std::vector<bool> pred_used(pred.size(), false);
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (assignment[i] >= 0) {
      const auto j = static_cast<std::size_t>(assignment[i]);
      result.pairs.push_back({i, j, m.at(i, j)});
      pred_used[j] = true;
    } else {
      result.unmatched_gt.push_back(i);
    }
  }
  for (std::size_t j = 0; j < pred.size(); ++j)
    if (!pred_used[j]) result.unmatched_pred.push_back(j);
  return result;
}

double score_type(const FigureSpec& gt, const FigureSpec& pred, const MatchResult& match) {
  const double denom = static_cast<double>(std::max(gt.traces.size(), pred.traces.size()));
  double hits = 0;
  for (const auto& p : match.pairs)
    if (gt.traces[p.gt_index].type == pred.traces[p.pred_index].type) hits += 1;
  return hits / denom;
}

double score_data(const MatchResult& match, std::size_t gt_count, std::size_t pred_count,
                  double lambda) {
  const double denom = static_cast<double>(std::max(gt_count, pred_count));
  double total = 0;
  for (const auto& p : match.pairs) total += std::exp(-lambda * p.chamfer);
  return total / denom;
}

TextBuckets extract_text_buckets(const FigureSpec& spec) {
  TextBuckets out;
  auto& b = out.buckets;
  b[TextRole::Title];
  b[TextRole::Axis];
  b[TextRole::Legend];
  b[TextRole::DataAnnotations];

  if (spec.layout.title && !spec.layout.title->empty())
    b[TextRole::Title].insert(*spec.layout.title);
  if (spec.layout.x_axis.title && !spec.layout.x_axis.title->empty())
    b[TextRole::Axis].insert(*spec.layout.x_axis.title);
  if (spec.layout.y_axis.title && !spec.layout.y_axis.title->empty())
    b[TextRole::Axis].insert(*spec.layout.y_axis.title);
  for (const auto& t : spec.traces) {
    if (!t.name.empty()) b[TextRole::Legend].insert(t.name);
    for (const auto& l : t.pie_labels)
      if (!l.empty()) b[TextRole::Legend].insert(l);
  }
  for (const auto& a : spec.layout.annotations)
    if (!a.empty()) b[TextRole::DataAnnotations].insert(a);
  return out;
}

double score_text(const TextBuckets& gt, const TextBuckets& pred,
                  std::map<TextRole, double>* per_role, const SimilarityConfig& cfg) {
  std::vector<TextRole> scored_roles;
  for (const auto& [role, texts] : gt.buckets)
    if (!texts.empty()) scored_roles.push_back(role);

  if (per_role) per_role->clear();
  if (scored_roles.empty()) return 1.0;  // nothing to compare against

  double total = 0;
  for (TextRole role : scored_roles) {
    const auto pred_it = pred.buckets.find(role);
    const std::set<std::string> empty;
    const auto& pred_set = pred_it == pred.buckets.end() ? empty : pred_it->second;
    const double sim = fuzzy_jaccard(gt.buckets.at(role), pred_set, cfg.fuzzy_threshold);
    if (per_role) (*per_role)[role] = sim;
    total += sim;
  }
  return total / static_cast<double>(scored_roles.size());
}

double color_array_distance(const std::vector<Color>& a, const std::vector<Color>& b) {
  if (a.empty() || b.empty())
    throw Error(ErrorCode::EmptyCloud, "color arrays must be non-empty");
  std::vector<Lab> la(a.size()), lb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) la[i] = srgb_to_lab(a[i]);
  for (std::size_t j = 0; j < b.size(); ++j) lb[j] = srgb_to_lab(b[j]);
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) cost[i][j] = delta_e(la[i], lb[j]);
  return emd_uniform(cost);
}

double score_style(const FigureSpec& gt, const FigureSpec& pred, const MatchResult& match,
                   std::vector<std::map<std::string, double>>* per_pair) {
  constexpr std::size_t kPropertyCount = 6;
  const double denom =
      static_cast<double>(std::max(gt.traces.size(), pred.traces.size())) * kPropertyCount;
  if (per_pair) per_pair->clear();

  double total = 0;
  for (const auto& p : match.pairs) {
    const StyleProps& a = gt.traces[p.gt_index].style;
    const StyleProps& b = pred.traces[p.pred_index].style;
    std::map<std::string, double> scores;
    scores["color"] = color_prop_similarity(*a.color, *b.color);
    scores["mode"] = (*a.mode == *b.mode) ? 1.0 : 0.0;
    scores["symbol"] = (*a.symbol == *b.symbol) ? 1.0 : 0.0;
    scores["dash"] = (*a.dash == *b.dash) ? 1.0 : 0.0;
    scores["size"] = numeric_similarity(*a.size, *b.size);
    scores["width"] = numeric_similarity(*a.width, *b.width);
    for (const auto& [name, s] : scores) total += s;
    if (per_pair) per_pair->push_back(std::move(scores));
  }
  return total / denom;
}

SimilarityReport score_figure(const FigureSpec& gt, const FigureSpec& pred, double lambda) {
  SimilarityConfig cfg;
  cfg.lambda = lambda;

  const FigureSpec g = resolve_defaults(gt);
  const FigureSpec p = resolve_defaults(pred);

  std::vector<PointCloud> gt_clouds, pred_clouds;
  gt_clouds.reserve(g.traces.size());
  pred_clouds.reserve(p.traces.size());
  for (const auto& t : g.traces) gt_clouds.push_back(extract_point_cloud(t));
  for (const auto& t : p.traces) pred_clouds.push_back(extract_point_cloud(t));

  SimilarityReport report;
  report.lambda = lambda;
  report.match = match_traces(gt_clouds, pred_clouds, cfg);
  report.s_type = score_type(g, p, report.match);
  report.s_data = score_data(report.match, g.traces.size(), p.traces.size(), lambda);
  report.s_text =
      score_text(extract_text_buckets(g), extract_text_buckets(p), &report.per_role_text, cfg);
  report.s_style = score_style(g, p, report.match, &report.per_pair_style);
  return report;
}

std::map<double, double> lambda_sweep(const FigureSpec& gt, const FigureSpec& pred,
                                      const std::vector<double>& lambdas) {
  for (double l : lambdas)
    if (l <= 0) throw Error(ErrorCode::InvalidArgs, "lambda must be positive");

  const FigureSpec g = resolve_defaults(gt);
  const FigureSpec p = resolve_defaults(pred);
  std::vector<PointCloud> gt_clouds, pred_clouds;
  for (const auto& t : g.traces) gt_clouds.push_back(extract_point_cloud(t));
  for (const auto& t : p.traces) pred_clouds.push_back(extract_point_cloud(t));
  const MatchResult match = match_traces(gt_clouds, pred_clouds);

  std::map<double, double> out;
  for (double l : lambdas)
    out[l] = score_data(match, g.traces.size(), p.traces.size(), l);
  return out;
}

Json SimilarityReport::to_json() const {
  Json j;
  j["s_type"] = s_type;
  j["s_data"] = s_data;
  j["s_text"] = s_text;
  j["s_style"] = s_style;
  j["lambda"] = lambda;
  Json pairs = Json::array();
  for (const auto& p : match.pairs)
    pairs.push_back({{"gt_index", p.gt_index},
                     {"pred_index", p.pred_index},
                     {"chamfer", p.chamfer}});
  j["pairs"] = pairs;
  j["unmatched"] = {{"gt", match.unmatched_gt}, {"pred", match.unmatched_pred}};
  Json roles = Json::object();
  for (const auto& [role, sim] : per_role_text) roles[text_role_name(role)] = sim;
  j["per_role_text"] = roles;
  Json styles = Json::array();
  for (const auto& pair : per_pair_style) {
    Json s = Json::object();
    for (const auto& [name, v] : pair) s[name] = v;
    styles.push_back(s);
  }
  j["per_pair_style"] = styles;
  return j;
}

}  // namespace vizstate
