#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "s3vmr/corpus.hpp"
#include "s3vmr/features.hpp"
#include "s3vmr/model.hpp"
#include "s3vmr/similarity.hpp"

namespace s3vmr {

// Which representation feeds the kernel. The regularizers always see the
// binary vectors (agreement) and similarity rows (geometry) regardless.
enum class FeatureSpace { f1, f2, both };

FeatureSpace parse_feature_space(const std::string& name);
std::string feature_space_name(FeatureSpace space);

// Canonicalized transductive pool: labeled indices first, then unlabeled,
// both in corpus order.
struct Dataset {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> samples;  // kernel inputs
  std::vector<FeatureVectorF1> f1;
  std::vector<std::vector<double>> f2;  // similarity profile rows
  std::vector<int> labels;              // +/-1 for indices 0..l-1
  FeatureSpace space = FeatureSpace::both;

  std::size_t n_labeled() const { return labels.size(); }
  std::size_t n_total() const { return ids.size(); }
  std::size_t n_unlabeled() const { return n_total() - n_labeled(); }
};

// Assembles the pool from a corpus, its feature vectors (corpus order) and
// an id -> label map. Every label id must exist in the corpus.
Dataset make_dataset(const std::vector<AdRecord>& corpus,
                     const std::vector<FeatureVectorF1>& f1_by_corpus_index,
                     const std::map<std::string, int>& label_by_id,
                     FeatureSpace space);

struct MetricsReport {
  double auc = 0.0;
  double accuracy = 0.0;
  double precision_pos = 0.0, precision_neg = 0.0;
  double recall_pos = 0.0, recall_neg = 0.0;
  double f1_pos = 0.0, f1_neg = 0.0;
};

// Rank-based (Mann-Whitney) AUC with midrank tie handling. Requires both
// classes present.
double auc(const std::vector<double>& scores, const std::vector<int>& truths);

// Per-class precision/recall/F1 plus accuracy; empty denominators give 0.
// The auc field of the returned report is left at 0.
MetricsReport prf(const std::vector<int>& predictions, const std::vector<int>& truths);

struct Chi2Report {
  std::array<double, kNumF1Features> scores{};
  std::array<bool, kNumF1Features> selected{};
};

// One-degree-of-freedom 2x2 chi-squared per feature, no continuity
// correction. Constant columns score 0.
Chi2Report chi2_rank(const std::vector<FeatureVectorF1>& f1_matrix,
                     const std::vector<int>& labels, double threshold = 0.5);

// Transductive k-fold CV: held-out labels are removed and the samples join
// the unlabeled pool for training; per-fold metrics averaged. Folds whose
// held-out set is single-class are skipped in the AUC average (0.5 if none
// qualifies).
MetricsReport cross_validate(const Dataset& dataset, const Hyperparameters& hyper,
                             int folds, std::uint32_t seed);

enum class SweepParam { c_l, c_r, c_s };
SweepParam parse_sweep_param(const std::string& name);

std::vector<std::pair<double, MetricsReport>> sweep(
    const Dataset& dataset, const Hyperparameters& base, SweepParam param,
    const std::vector<double>& values, int folds, std::uint32_t seed);

struct RankedPrediction {
  std::string id;
  double score = 0.0;
  int label = -1;
};

// All unlabeled samples scored and sorted by decision value descending;
// equal scores keep their input id order.
std::vector<RankedPrediction> rank_unlabeled(const TrainedModel& model,
                                             const Dataset& dataset);

void write_metrics_json(const std::filesystem::path& path, const MetricsReport& report);
void write_chi2_csv(const std::filesystem::path& path, const Chi2Report& report);
void write_ranking_csv(const std::filesystem::path& path,
                       const std::vector<RankedPrediction>& ranking);

}  // namespace s3vmr
