// Batch front end: extract, filter, train, eval, sweep, rank, chi2, synth.
// Outputs are files; every subcommand is deterministic given its flags.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s3vmr/corpus.hpp"
#include "s3vmr/csv.hpp"
#include "s3vmr/error.hpp"
#include "s3vmr/eval.hpp"
#include "s3vmr/features.hpp"
#include "s3vmr/model.hpp"
#include "s3vmr/rng.hpp"
#include "s3vmr/similarity.hpp"
#include "s3vmr/synth.hpp"

namespace fs = std::filesystem;
using namespace s3vmr;

namespace {

// Declared outputs are deleted when a command fails partway; exit code 0
// means every output was written.
struct OutputGuard {
  std::vector<fs::path> outputs;
  bool committed = false;

  void declare(const fs::path& p) { outputs.push_back(p); }
  ~OutputGuard() {
    if (committed) return;
    for (const auto& p : outputs) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }
};

struct HyperFlags {
  double cl = 0.6, cr = 0.2, cs = 0.2;
  double gamma_i = -1.0;  // when >= 0, realized C_s is gamma_i / (l+u)^2
  std::string kernel = "linear";
  double rbf_gamma = 1.0;
  double heat_t = 1.0;
  double edge_threshold = 0.1;
  std::string space = "both";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--cl", cl, "Labeled hinge-loss weight C_l")->check(CLI::PositiveNumber);
    cmd->add_option("--cr", cr, "Feature-agreement regularizer weight C_r")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--cs", cs, "Intrinsic smoothness weight C_s")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--gamma-i", gamma_i,
                    "Alternative to --cs: gamma_I, realized as gamma_I/(l+u)^2")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--kernel", kernel, "Kernel: linear or rbf")
        ->check(CLI::IsMember({"linear", "rbf"}));
    cmd->add_option("--rbf-gamma", rbf_gamma, "RBF kernel gamma")->check(CLI::PositiveNumber);
    cmd->add_option("--heat-t", heat_t, "Heat kernel bandwidth t")->check(CLI::PositiveNumber);
    cmd->add_option("--edge-threshold", edge_threshold,
                    "Adjacency edge weight threshold");
    cmd->add_option("--space", space, "Kernel feature space: f1, f2 or both")
        ->check(CLI::IsMember({"f1", "f2", "both"}));
  }

  Hyperparameters resolve(std::size_t n_total) const {
    Hyperparameters h;
    h.c_l = cl;
    h.c_r = cr;
    h.c_s = gamma_i >= 0.0 ? Hyperparameters::realized_c_s(gamma_i, n_total) : cs;
    h.kernel.kind = kernel == "rbf" ? KernelSpec::Kind::rbf : KernelSpec::Kind::linear;
    h.kernel.rbf_gamma = rbf_gamma;
    h.graph.heat_t = heat_t;
    h.graph.edge_threshold = edge_threshold;
    h.validate();
    return h;
  }
};

std::vector<FeatureVectorF1> features_for_corpus(const std::vector<AdRecord>& corpus,
                                                 const fs::path& features_path) {
  const auto rows = read_f1_csv(features_path);
  std::map<std::string, FeatureVectorF1> by_id;
  for (const auto& [id, v] : rows) by_id[id] = v;
  std::vector<FeatureVectorF1> out;
  out.reserve(corpus.size());
  for (const auto& ad : corpus) {
    auto it = by_id.find(ad.id);
    if (it == by_id.end())
      throw Error("id mismatch: feature CSV has no row for id " + ad.id);
    out.push_back(it->second);
  }
  return out;
}

std::map<std::string, int> label_map_from_csv(const fs::path& labels_path) {
  std::map<std::string, int> m;
  for (const auto& [id, y] : read_labels_csv(labels_path)) {
    if (m.count(id)) throw Error("duplicate id in labels: " + id);
    m[id] = y;
  }
  if (m.empty()) throw Error("labels CSV is empty: " + labels_path.string());
  return m;
}

Dataset dataset_from_files(const fs::path& corpus_path, const fs::path& features_path,
                           const fs::path& labels_path, const std::string& space) {
  const auto corpus = load_jsonl(corpus_path);
  if (corpus.empty()) throw Error("empty corpus: " + corpus_path.string());
  const auto f1 = features_for_corpus(corpus, features_path);
  const auto labels = label_map_from_csv(labels_path);
  return make_dataset(corpus, f1, labels, parse_feature_space(space));
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int cmd_extract(const fs::path& corpus_path, const fs::path& out_dir) {
  const auto corpus = load_jsonl(corpus_path);
  if (corpus.empty()) throw Error("empty corpus: " + corpus_path.string());
  fs::create_directories(out_dir);
  OutputGuard guard;
  const fs::path features_path = out_dir / "features_f1.csv";
  const fs::path sim_path = out_dir / "similarity.csv";
  const fs::path ngram_path = out_dir / "ngram_model.txt";
  guard.declare(features_path);
  guard.declare(sim_path);
  guard.declare(ngram_path);

  const NgramModel ngrams = NgramModel::fit(corpus);
  std::vector<std::string> ids;
  std::vector<FeatureVectorF1> vectors;
  std::size_t eligible = 0;
  for (const auto& ad : corpus) {
    ids.push_back(ad.id);
    vectors.push_back(extract_f1(ad, ngrams));
    if (vectors.back().any()) ++eligible;
  }
  write_f1_csv(features_path, ids, vectors);
  write_similarity_csv(sim_path, build_similarity_matrix(corpus));
  ngrams.save(ngram_path);
  guard.committed = true;
  std::cout << "total=" << corpus.size() << " filtered_eligible=" << eligible << "\n";
  return 0;
}

int cmd_filter(const fs::path& corpus_path, const fs::path& features_path,
               const fs::path& out_path) {
  const auto corpus = load_jsonl(corpus_path);
  const auto f1 = features_for_corpus(corpus, features_path);
  OutputGuard guard;
  guard.declare(out_path);
  std::vector<AdRecord> kept;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (f1[i].any()) kept.push_back(corpus[i]);
  save_jsonl(out_path, kept);
  guard.committed = true;
  std::cout << "kept=" << kept.size() << " dropped=" << (corpus.size() - kept.size())
            << "\n";
  return 0;
}

int cmd_train(const fs::path& corpus_path, const fs::path& features_path,
              const fs::path& labels_path, const fs::path& model_path,
              const HyperFlags& flags) {
  Dataset ds = dataset_from_files(corpus_path, features_path, labels_path, flags.space);
  const Hyperparameters hyper = flags.resolve(ds.n_total());
  OutputGuard guard;
  guard.declare(model_path);
  TrainedModel model = train(ds.samples, ds.labels, hyper, ds.f1, ds.f2);
  model.space = flags.space;
  save_model(model_path, model);
  guard.committed = true;
  std::cout << "trained l=" << ds.n_labeled() << " u=" << ds.n_unlabeled()
            << " objective=" << model.dual_objective << "\n";
  return 0;
}

int cmd_eval(const fs::path& corpus_path, const fs::path& features_path,
             const fs::path& labels_path, const fs::path& out_path,
             const HyperFlags& flags, int folds, std::uint32_t seed) {
  Dataset ds = dataset_from_files(corpus_path, features_path, labels_path, flags.space);
  const Hyperparameters hyper = flags.resolve(ds.n_total());
  OutputGuard guard;
  guard.declare(out_path);
  const MetricsReport report = cross_validate(ds, hyper, folds, seed);
  write_metrics_json(out_path, report);
  guard.committed = true;
  std::cout << "auc=" << fmt6(report.auc) << " accuracy=" << fmt6(report.accuracy)
            << " f1_pos=" << fmt6(report.f1_pos) << " f1_neg=" << fmt6(report.f1_neg)
            << "\n";
  return 0;
}

int cmd_sweep(const fs::path& corpus_path, const fs::path& features_path,
              const fs::path& labels_path, const fs::path& out_path,
              const HyperFlags& flags, const std::string& param,
              const std::vector<double>& values, int folds, std::uint32_t seed) {
  Dataset ds = dataset_from_files(corpus_path, features_path, labels_path, flags.space);
  const Hyperparameters base = flags.resolve(ds.n_total());
  const SweepParam p = parse_sweep_param(param);
  OutputGuard guard;
  guard.declare(out_path);
  const auto results = sweep(ds, base, p, values, folds, seed);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write sweep CSV: " + out_path.string());
  out << "value,auc,accuracy,precision_pos,precision_neg,recall_pos,recall_neg,"
         "f1_pos,f1_neg\n";
  char buf[32];
  for (const auto& [v, r] : results) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out << buf << "," << fmt6(r.auc) << "," << fmt6(r.accuracy) << ","
        << fmt6(r.precision_pos) << "," << fmt6(r.precision_neg) << ","
        << fmt6(r.recall_pos) << "," << fmt6(r.recall_neg) << "," << fmt6(r.f1_pos)
        << "," << fmt6(r.f1_neg) << "\n";
  }
  if (!out) throw Error("write failed: " + out_path.string());
  guard.committed = true;
  std::cout << "sweep " << param << " points=" << results.size() << "\n";
  return 0;
}

int cmd_rank(const fs::path& model_path, const fs::path& corpus_path,
             const fs::path& features_path, const fs::path& labels_path,
             const fs::path& out_path, int control_sample, std::uint32_t seed) {
  const TrainedModel model = load_model(model_path);
  Dataset ds = dataset_from_files(corpus_path, features_path, labels_path, model.space);
  if (ds.n_total() != model.n_total() || ds.n_labeled() != model.n_labeled())
    throw Error("dataset does not match the model's training pool");

  OutputGuard guard;
  guard.declare(out_path);
  const auto ranking = rank_unlabeled(model, ds);
  write_ranking_csv(out_path, ranking);

  if (control_sample > 0) {
    std::vector<RankedPrediction> positives, negatives;
    for (const auto& r : ranking) (r.label > 0 ? positives : negatives).push_back(r);
    const auto want = static_cast<std::size_t>(control_sample);
    if (positives.size() < want)
      throw Error("predicted-positive set has only " + std::to_string(positives.size()) +
                  " entries, cannot sample " + std::to_string(want));
    if (negatives.size() < want)
      throw Error("predicted-negative set has only " + std::to_string(negatives.size()) +
                  " entries, cannot sample " + std::to_string(want));
    Rng rng(seed);
    rng.shuffle(positives);
    rng.shuffle(negatives);
    positives.resize(want);
    negatives.resize(want);
    const fs::path pos_path =
        out_path.parent_path() / (out_path.stem().string() + "_control_positive.csv");
    const fs::path neg_path =
        out_path.parent_path() / (out_path.stem().string() + "_control_negative.csv");
    guard.declare(pos_path);
    guard.declare(neg_path);
    write_ranking_csv(pos_path, positives);
    write_ranking_csv(neg_path, negatives);
    std::cout << "ranked=" << ranking.size() << " control=" << want << "\n";
  } else {
    std::cout << "ranked=" << ranking.size() << "\n";
  }
  guard.committed = true;
  return 0;
}

int cmd_chi2(const fs::path& features_path, const fs::path& labels_path,
             const fs::path& out_path, double threshold) {
  const auto rows = read_f1_csv(features_path);
  std::map<std::string, FeatureVectorF1> by_id;
  for (const auto& [id, v] : rows) by_id[id] = v;
  std::vector<FeatureVectorF1> f1;
  std::vector<int> labels;
  for (const auto& [id, y] : read_labels_csv(labels_path)) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("id mismatch: feature CSV has no row for id " + id);
    f1.push_back(it->second);
    labels.push_back(y);
  }
  OutputGuard guard;
  guard.declare(out_path);
  write_chi2_csv(out_path, chi2_rank(f1, labels, threshold));
  guard.committed = true;
  std::cout << "chi2 rows=" << kNumF1Features << "\n";
  return 0;
}

int cmd_synth(int n_labeled, int n_unlabeled, double noise, std::uint32_t seed,
              const fs::path& out_dir) {
  const SyntheticData data = generate_synthetic(n_labeled, n_unlabeled, noise, seed);
  fs::create_directories(out_dir);
  OutputGuard guard;
  const fs::path corpus_path = out_dir / "corpus.jsonl";
  const fs::path labels_path = out_dir / "labels.csv";
  const fs::path truth_path = out_dir / "truth.csv";
  guard.declare(corpus_path);
  guard.declare(labels_path);
  guard.declare(truth_path);
  save_jsonl(corpus_path, data.ads);
  write_labels_csv(labels_path, data.labeled);
  std::ofstream out(truth_path, std::ios::binary);
  if (!out) throw Error("cannot write truth CSV: " + truth_path.string());
  out << "id,truth\n";
  for (std::size_t i = 0; i < data.ads.size(); ++i)
    out << data.ads[i].id << "," << data.truth[i] << "\n";
  if (!out) throw Error("write failed: " + truth_path.string());
  guard.committed = true;
  std::cout << "ads=" << data.ads.size() << " labeled=" << data.labeled.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised kernel-machine toolkit for ad triage"};
  app.require_subcommand(1);

  // extract
  auto* extract = app.add_subcommand("extract", "Extract binary features and similarity matrix");
  fs::path x_corpus, x_out_dir;
  extract->add_option("--corpus", x_corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  extract->add_option("--out-dir", x_out_dir, "Output directory")->required();

  // filter
  auto* filter = app.add_subcommand("filter", "Drop ads with all-zero feature vectors");
  fs::path f_corpus, f_features, f_out;
  filter->add_option("--corpus", f_corpus)->required()->check(CLI::ExistingFile);
  filter->add_option("--features", f_features)->required()->check(CLI::ExistingFile);
  filter->add_option("--out", f_out, "Filtered corpus JSONL")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a model on labeled + unlabeled ads");
  fs::path t_corpus, t_features, t_labels, t_model;
  HyperFlags t_flags;
  train_cmd->add_option("--corpus", t_corpus)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--features", t_features)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--labels", t_labels)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--model-out", t_model)->required();
  t_flags.add_to(train_cmd);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Transductive k-fold cross-validation");
  fs::path e_corpus, e_features, e_labels, e_out;
  HyperFlags e_flags;
  int e_folds = 10;
  std::uint32_t e_seed = 0;
  eval_cmd->add_option("--corpus", e_corpus)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--features", e_features)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--labels", e_labels)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", e_out, "Metrics JSON")->required();
  eval_cmd->add_option("--folds", e_folds)->check(CLI::Range(2, 1000000));
  eval_cmd->add_option("--seed", e_seed);
  e_flags.add_to(eval_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Cross-validate over a parameter grid");
  fs::path s_corpus, s_features, s_labels, s_out;
  HyperFlags s_flags;
  std::string s_param;
  std::vector<double> s_values;
  int s_folds = 10;
  std::uint32_t s_seed = 0;
  sweep_cmd->add_option("--corpus", s_corpus)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--features", s_features)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--labels", s_labels)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", s_out, "Sweep CSV")->required();
  sweep_cmd->add_option("--param", s_param, "cl, cr or cs")
      ->required()
      ->check(CLI::IsMember({"cl", "cr", "cs"}));
  sweep_cmd->add_option("--values", s_values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--folds", s_folds)->check(CLI::Range(2, 1000000));
  sweep_cmd->add_option("--seed", s_seed);
  s_flags.add_to(sweep_cmd);

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "Score and rank the unlabeled pool");
  fs::path r_model, r_corpus, r_features, r_labels, r_out;
  int r_control = 0;
  std::uint32_t r_seed = 0;
  rank_cmd->add_option("--model", r_model)->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--corpus", r_corpus)->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--features", r_features)->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--labels", r_labels)->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--out", r_out, "Ranking CSV")->required();
  rank_cmd->add_option("--control-sample", r_control,
                       "Sample N ids from each predicted class into review files")
      ->check(CLI::NonNegativeNumber);
  rank_cmd->add_option("--seed", r_seed);

  // chi2
  auto* chi2_cmd = app.add_subcommand("chi2", "Per-feature chi-squared significance");
  fs::path c_features, c_labels, c_out;
  double c_threshold = 0.5;
  chi2_cmd->add_option("--features", c_features)->required()->check(CLI::ExistingFile);
  chi2_cmd->add_option("--labels", c_labels)->required()->check(CLI::ExistingFile);
  chi2_cmd->add_option("--out", c_out, "Chi2 CSV")->required();
  chi2_cmd->add_option("--threshold", c_threshold, "Selection threshold");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  int y_labeled = 20, y_unlabeled = 200;
  double y_noise = 0.1;
  std::uint32_t y_seed = 1;
  fs::path y_out_dir;
  synth_cmd->add_option("--labeled", y_labeled)->check(CLI::Range(4, 1000000));
  synth_cmd->add_option("--unlabeled", y_unlabeled)->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--noise", y_noise)->check(CLI::Range(0.0, 0.4999));
  synth_cmd->add_option("--seed", y_seed);
  synth_cmd->add_option("--out-dir", y_out_dir)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) return cmd_extract(x_corpus, x_out_dir);
    if (filter->parsed()) return cmd_filter(f_corpus, f_features, f_out);
    if (train_cmd->parsed()) return cmd_train(t_corpus, t_features, t_labels, t_model, t_flags);
    if (eval_cmd->parsed())
      return cmd_eval(e_corpus, e_features, e_labels, e_out, e_flags, e_folds, e_seed);
    if (sweep_cmd->parsed())
      return cmd_sweep(s_corpus, s_features, s_labels, s_out, s_flags, s_param, s_values,
                       s_folds, s_seed);
    if (rank_cmd->parsed())
      return cmd_rank(r_model, r_corpus, r_features, r_labels, r_out, r_control, r_seed);
    if (chi2_cmd->parsed()) return cmd_chi2(c_features, c_labels, c_out, c_threshold);
    if (synth_cmd->parsed())
      return cmd_synth(y_labeled, y_unlabeled, y_noise, y_seed, y_out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
