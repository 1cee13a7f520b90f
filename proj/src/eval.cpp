#include "s3vmr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "s3vmr/rng.hpp"

namespace s3vmr {

FeatureSpace parse_feature_space(const std::string& name) {
  if (name == "f1") return FeatureSpace::f1;
  if (name == "f2") return FeatureSpace::f2;
  if (name == "both") return FeatureSpace::both;
  throw Error("unknown feature space: " + name);
}

std::string feature_space_name(FeatureSpace space) {
  switch (space) {
    case FeatureSpace::f1: return "f1";
    case FeatureSpace::f2: return "f2";
    default: return "both";
  }
}

Dataset make_dataset(const std::vector<AdRecord>& corpus,
                     const std::vector<FeatureVectorF1>& f1_by_corpus_index,
                     const std::map<std::string, int>& label_by_id,
                     FeatureSpace space) {
  if (corpus.empty()) throw Error("make_dataset: empty corpus");
  if (f1_by_corpus_index.size() != corpus.size())
    throw Error("make_dataset: feature vector count mismatch");

  std::set<std::string> corpus_ids;
  for (const auto& ad : corpus) corpus_ids.insert(ad.id);
  for (const auto& [id, y] : label_by_id) {
    if (!corpus_ids.count(id)) throw Error("unknown id in labels: " + id);
    if (y != 1 && y != -1) throw Error("label must be +1 or -1 for id " + id);
  }

  const SimilarityMatrix sim = build_similarity_matrix(corpus);

  // Canonical order: labeled first, then unlabeled, both in corpus order.
  std::vector<std::size_t> order;
  order.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (label_by_id.count(corpus[i].id)) order.push_back(i);
  const std::size_t l = order.size();
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (!label_by_id.count(corpus[i].id)) order.push_back(i);

  Dataset ds;
  ds.space = space;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    ds.ids.push_back(corpus[i].id);
    ds.f1.push_back(f1_by_corpus_index[i]);
    // Profile row reordered to the canonical column order.
    std::vector<double> profile(order.size());
    for (std::size_t c = 0; c < order.size(); ++c)
      profile[c] = sim.values(i, order[c]);
    ds.f2.push_back(std::move(profile));
    if (pos < l) ds.labels.push_back(label_by_id.at(corpus[i].id));
  }
  for (std::size_t pos = 0; pos < ds.ids.size(); ++pos) {
    std::vector<double> x;
    if (space == FeatureSpace::f1 || space == FeatureSpace::both) {
      const auto f1d = ds.f1[pos].as_doubles();
      x.insert(x.end(), f1d.begin(), f1d.end());
    }
    if (space == FeatureSpace::f2 || space == FeatureSpace::both)
      x.insert(x.end(), ds.f2[pos].begin(), ds.f2[pos].end());
    ds.samples.push_back(std::move(x));
  }
  return ds;
}

double auc(const std::vector<double>& scores, const std::vector<int>& truths) {
  if (scores.size() != truths.size()) throw Error("auc: length mismatch");
  std::size_t n_pos = 0, n_neg = 0;
  for (int y : truths) (y > 0 ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0) throw Error("auc: both classes required");

  // Midrank assignment over the pooled scores.
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::vector<double> rank(scores.size(), 0.0);
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && scores[idx[j + 1]] == scores[idx[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based midrank
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = mid;
    i = j + 1;
  }
  double rank_sum_pos = 0.0;
  for (std::size_t k = 0; k < truths.size(); ++k)
    if (truths[k] > 0) rank_sum_pos += rank[k];
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

MetricsReport prf(const std::vector<int>& predictions, const std::vector<int>& truths) {
  if (predictions.size() != truths.size()) throw Error("prf: length mismatch");
  if (truths.empty()) throw Error("prf: empty input");
  bool pos = false, neg = false;
  for (int y : truths) (y > 0 ? pos : neg) = true;
  if (!pos || !neg) throw Error("prf: both classes required in truths");

  double tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const bool p = predictions[i] > 0, t = truths[i] > 0;
    if (p && t) ++tp;
    else if (p && !t) ++fp;
    else if (!p && t) ++fn;
    else ++tn;
  }
  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
  MetricsReport r;
  r.accuracy = (tp + tn) / static_cast<double>(truths.size());
  r.precision_pos = ratio(tp, tp + fp);
  r.recall_pos = ratio(tp, tp + fn);
  r.f1_pos = ratio(2.0 * r.precision_pos * r.recall_pos, r.precision_pos + r.recall_pos);
  r.precision_neg = ratio(tn, tn + fn);
  r.recall_neg = ratio(tn, tn + fp);
  r.f1_neg = ratio(2.0 * r.precision_neg * r.recall_neg, r.precision_neg + r.recall_neg);
  return r;
}

Chi2Report chi2_rank(const std::vector<FeatureVectorF1>& f1_matrix,
                     const std::vector<int>& labels, double threshold) {
  if (f1_matrix.size() != labels.size()) throw Error("chi2_rank: length mismatch");
  if (f1_matrix.empty()) throw Error("chi2_rank: empty input");
  for (int y : labels)
    if (y != 1 && y != -1) throw Error("chi2_rank: labels must be +1 or -1");
  Chi2Report report;
  const double n = static_cast<double>(labels.size());
  for (std::size_t f = 0; f < kNumF1Features; ++f) {
    double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const bool active = f1_matrix[i].flags[f] != 0;
      const bool positive = labels[i] > 0;
      if (active && positive) ++n11;
      else if (active) ++n10;
      else if (positive) ++n01;
      else ++n00;
    }
    const double den = (n11 + n10) * (n01 + n00) * (n11 + n01) * (n10 + n00);
    const double num = n11 * n00 - n10 * n01;
    report.scores[f] = den > 0.0 ? n * num * num / den : 0.0;
    report.selected[f] = report.scores[f] > threshold;
  }
  return report;
}

namespace {

// Stratified fold assignment: each class shuffled with the seeded stream,
// then dealt round-robin.
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& labels,
                                                       int folds, std::uint32_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (labels[i] > 0 ? pos : neg).push_back(i);
  Rng rng(seed);
  rng.shuffle(pos);
  rng.shuffle(neg);
  std::vector<std::vector<std::size_t>> assign(static_cast<std::size_t>(folds));
  std::size_t next = 0;
  for (std::size_t i = 0; i < pos.size(); ++i, ++next)
    assign[next % assign.size()].push_back(pos[i]);
  for (std::size_t i = 0; i < neg.size(); ++i, ++next)
    assign[next % assign.size()].push_back(neg[i]);
  for (auto& fold : assign) std::sort(fold.begin(), fold.end());
  return assign;
}

}  // namespace

MetricsReport cross_validate(const Dataset& dataset, const Hyperparameters& hyper,
                             int folds, std::uint32_t seed) {
  hyper.validate();
  if (folds < 2) throw Error("cross_validate: folds must be >= 2");
  const std::size_t l = dataset.n_labeled();
  const std::size_t n = dataset.n_total();
  if (static_cast<std::size_t>(folds) > l)
    throw Error("cross_validate: more folds than labeled samples");

  // Operators on the canonical order, built once and permuted per fold.
  const Matrix k_full = gram(dataset.samples, hyper.kernel);
  Matrix l_agree, l_graph;
  if (hyper.c_r > 0.0) l_agree = laplacian(agreement_matrix(dataset.f1));
  if (hyper.c_s > 0.0) l_graph = laplacian(heat_adjacency(dataset.f2, hyper.graph));

  const auto fold_sets = stratified_folds(dataset.labels, folds, seed);

  MetricsReport sum;
  double auc_sum = 0.0;
  std::size_t auc_folds = 0;
  for (const auto& held : fold_sets) {
    // Training label set = labeled \ held. Both classes must remain.
    std::vector<std::size_t> train_idx;
    std::vector<bool> is_held(l, false);
    for (auto i : held) is_held[i] = true;
    for (std::size_t i = 0; i < l; ++i)
      if (!is_held[i]) train_idx.push_back(i);
    bool pos = false, neg = false;
    for (auto i : train_idx) (dataset.labels[i] > 0 ? pos : neg) = true;
    if (!pos || !neg) throw Error("degenerate fold: a class vanished from training");

    // Fold order: training labeled, then held-out, then original unlabeled.
    std::vector<std::size_t> perm = train_idx;
    perm.insert(perm.end(), held.begin(), held.end());
    for (std::size_t i = l; i < n; ++i) perm.push_back(i);

    const Matrix k_f = permute_symmetric(k_full, perm);
    Matrix l_agree_f, l_graph_f;
    if (hyper.c_r > 0.0) l_agree_f = permute_symmetric(l_agree, perm);
    if (hyper.c_s > 0.0) l_graph_f = permute_symmetric(l_graph, perm);
    std::vector<int> y_train;
    for (auto i : train_idx) y_train.push_back(dataset.labels[i]);

    const FitResult fit = fit_coefficients(k_f, l_agree_f, l_graph_f, y_train, hyper);

    // Transductive scores of the held-out block.
    std::vector<double> scores;
    std::vector<int> preds, truths;
    for (std::size_t h = 0; h < held.size(); ++h) {
      const std::size_t row = train_idx.size() + h;
      double s = fit.bias;
      for (std::size_t j = 0; j < n; ++j) s += k_f(row, j) * fit.alpha[j];
      scores.push_back(s);
      preds.push_back(s > 0.0 ? 1 : -1);
      truths.push_back(dataset.labels[held[h]]);
    }

    // Same definitions as prf() but tolerating single-class held-out sets
    // (leave-one-out folds): empty denominators contribute 0.
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t t = 0; t < truths.size(); ++t) {
      const bool p = preds[t] > 0, y = truths[t] > 0;
      if (p && y) ++tp;
      else if (p) ++fp;
      else if (y) ++fn;
      else ++tn;
    }
    auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
    MetricsReport fold_prf;
    fold_prf.accuracy = (tp + tn) / static_cast<double>(truths.size());
    fold_prf.precision_pos = ratio(tp, tp + fp);
    fold_prf.recall_pos = ratio(tp, tp + fn);
    fold_prf.f1_pos = ratio(2.0 * fold_prf.precision_pos * fold_prf.recall_pos,
                            fold_prf.precision_pos + fold_prf.recall_pos);
    fold_prf.precision_neg = ratio(tn, tn + fn);
    fold_prf.recall_neg = ratio(tn, tn + fp);
    fold_prf.f1_neg = ratio(2.0 * fold_prf.precision_neg * fold_prf.recall_neg,
                            fold_prf.precision_neg + fold_prf.recall_neg);
    sum.accuracy += fold_prf.accuracy;
    sum.precision_pos += fold_prf.precision_pos;
    sum.precision_neg += fold_prf.precision_neg;
    sum.recall_pos += fold_prf.recall_pos;
    sum.recall_neg += fold_prf.recall_neg;
    sum.f1_pos += fold_prf.f1_pos;
    sum.f1_neg += fold_prf.f1_neg;
    bool held_pos = false, held_neg = false;
    for (int y : truths) (y > 0 ? held_pos : held_neg) = true;
    if (held_pos && held_neg) {
      auc_sum += auc(scores, truths);
      ++auc_folds;
    }
  }
  const double nf = static_cast<double>(fold_sets.size());
  MetricsReport avg;
  avg.accuracy = sum.accuracy / nf;
  avg.precision_pos = sum.precision_pos / nf;
  avg.precision_neg = sum.precision_neg / nf;
  avg.recall_pos = sum.recall_pos / nf;
  avg.recall_neg = sum.recall_neg / nf;
  avg.f1_pos = sum.f1_pos / nf;
  avg.f1_neg = sum.f1_neg / nf;
  avg.auc = auc_folds > 0 ? auc_sum / static_cast<double>(auc_folds) : 0.5;
  return avg;
}

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "cl") return SweepParam::c_l;
  if (name == "cr") return SweepParam::c_r;
  if (name == "cs") return SweepParam::c_s;
  throw Error("unknown sweep parameter: " + name);
}

std::vector<std::pair<double, MetricsReport>> sweep(
    const Dataset& dataset, const Hyperparameters& base, SweepParam param,
    const std::vector<double>& values, int folds, std::uint32_t seed) {
  if (values.empty()) throw Error("sweep: empty value list");
  if (param == SweepParam::c_l)
    for (double v : values)
      if (v <= 0.0) throw Error("C_l must be positive");
  std::vector<std::pair<double, MetricsReport>> out;
  for (double v : values) {
    Hyperparameters hyper = base;
    switch (param) {
      case SweepParam::c_l: hyper.c_l = v; break;
      case SweepParam::c_r: hyper.c_r = v; break;
      case SweepParam::c_s: hyper.c_s = v; break;
    }
    out.emplace_back(v, cross_validate(dataset, hyper, folds, seed));
  }
  return out;
}

std::vector<RankedPrediction> rank_unlabeled(const TrainedModel& model,
                                             const Dataset& dataset) {
  if (model.n_total() != dataset.n_total())
    throw Error("rank_unlabeled: model/dataset size mismatch");
  std::vector<RankedPrediction> out;
  for (std::size_t i = dataset.n_labeled(); i < dataset.n_total(); ++i) {
    RankedPrediction r;
    r.id = dataset.ids[i];
    r.score = decision(model, model.training_inputs[i]);
    r.label = r.score > 0.0 ? 1 : -1;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedPrediction& a, const RankedPrediction& b) {
                     return a.score > b.score;
                   });
  return out;
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

void write_metrics_json(const std::filesystem::path& path, const MetricsReport& r) {
  nlohmann::json j;
  j["auc"] = round6(r.auc);
  j["accuracy"] = round6(r.accuracy);
  j["precision_pos"] = round6(r.precision_pos);
  j["precision_neg"] = round6(r.precision_neg);
  j["recall_pos"] = round6(r.recall_pos);
  j["recall_neg"] = round6(r.recall_neg);
  j["f1_pos"] = round6(r.f1_pos);
  j["f1_neg"] = round6(r.f1_neg);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write metrics JSON: " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw Error("write failed: " + path.string());
}

void write_chi2_csv(const std::filesystem::path& path, const Chi2Report& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write chi2 CSV: " + path.string());
  out << "feature,score,selected\n";
  char buf[32];
  for (std::size_t f = 0; f < kNumF1Features; ++f) {
    std::snprintf(buf, sizeof buf, "%.9g", report.scores[f]);
    out << f1_feature_names()[f] << "," << buf << ","
        << (report.selected[f] ? "true" : "false") << "\n";
  }
  if (!out) throw Error("write failed: " + path.string());
}

void write_ranking_csv(const std::filesystem::path& path,
                       const std::vector<RankedPrediction>& ranking) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write ranking CSV: " + path.string());
  out << "id,score,label\n";
  char buf[32];
  for (const auto& r : ranking) {
    std::snprintf(buf, sizeof buf, "%.9g", r.score);
    out << r.id << "," << buf << "," << r.label << "\n";
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace s3vmr
