#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tiestrength/model.hpp"

namespace tie {

enum class ImportanceScaling { kRaw, kZScaled };

struct ForestConfig {
  int n_trees = 500;
  std::optional<int> mtry;  // nullopt: floor(sqrt(n_features)), at least 1
  int min_leaf_size = 1;
  std::optional<int> max_depth;  // nullopt: unlimited
  std::uint64_t seed = 1;
  ImportanceScaling importance_scaling = ImportanceScaling::kZScaled;
  int threads = 0;  // 0: hardware concurrency. Results never depend on it.

  int resolved_mtry(Eigen::Index n_features) const;
  void validate(Eigen::Index n_features) const;  // throws ConfigError
};

// CART tree with axis-aligned splits "x[feature] <= threshold goes left".
class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int majority = 0;        // class index, leaves only
    std::size_t counts = 0;  // offset into class_counts(), leaves only
    double decrease = 0.0;   // weighted Gini decrease of the split
  };

  // `override_feature` < 0 predicts the row as is; otherwise that feature's
  // value is replaced by `override_value`.
  int predict(const Eigen::MatrixXd& X, Eigen::Index row, int override_feature = -1,
              double override_value = 0.0) const;
  int predict(std::span<const double> x) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  std::span<const int> leaf_counts(const Node& leaf) const;
  bool uses_feature(int feature) const;

 private:
  friend class TreeBuilder;

  std::vector<Node> nodes_;
  std::vector<int> class_counts_;
  int n_classes_ = 0;
};

class Forest {
 public:
  const std::vector<DecisionTree>& trees() const { return trees_; }
  // Rows not drawn into tree t's bootstrap, ascending.
  const std::vector<std::vector<int>>& oob_rows() const { return oob_rows_; }
  const std::vector<int>& class_labels() const { return class_labels_; }
  Eigen::Index n_features() const { return n_features_; }
  Eigen::Index n_rows() const { return n_rows_; }
  std::uint64_t seed() const { return seed_; }

  // Majority vote over trees; ties go to the earliest class in class_labels().
  int predict(std::span<const double> x) const;
  int predict_row(const Eigen::MatrixXd& X, Eigen::Index row) const;
  int vote(std::span<const int> tree_votes) const;  // class label

  // Fraction of rows whose OOB-only majority vote equals the label. Rows that
  // are in bag for every tree are skipped.
  double oob_accuracy(const Eigen::MatrixXd& X, std::span<const int> y) const;

  std::string to_json() const;

 private:
  friend Forest train_forest(const Eigen::MatrixXd&, std::span<const int>, const ForestConfig&);

  std::vector<DecisionTree> trees_;
  std::vector<std::vector<int>> oob_rows_;
  std::vector<int> class_labels_;
  Eigen::Index n_features_ = 0;
  Eigen::Index n_rows_ = 0;
  std::uint64_t seed_ = 0;
};

// Substream seeds. Tree t bootstraps and samples split features from
// tree_seed(seed, t); the permutation of feature f on tree t's OOB rows
// comes from permutation_seed(seed, t, f) via Rng::shuffle.
std::uint64_t tree_seed(std::uint64_t seed, int tree);
std::uint64_t permutation_seed(std::uint64_t seed, int tree, int feature);

Forest train_forest(const Eigen::MatrixXd& X, std::span<const int> y, const ForestConfig& config);

struct ForestImportance {
  std::vector<double> mean_decrease_accuracy;  // scaled per config
  std::vector<double> raw;                     // mean per-tree decrease
  std::vector<double> stddev;                  // of per-tree decreases
  int trees_evaluated = 0;
};

ForestImportance oob_permutation_importance(const Forest& forest, const Eigen::MatrixXd& X,
                                            std::span<const int> y, const ForestConfig& config);

namespace detail {

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  double decrease = 0.0;  // parent Gini minus weighted child Gini
};

double gini(std::span<const int> class_counts);

// Best Gini split of `samples` over `features`. Ties go to the lowest
// feature index, then the lowest threshold. feature == -1 when no candidate
// improves on the parent.
SplitCandidate find_best_split(const Eigen::MatrixXd& X, std::span<const int> codes, int n_classes,
                               std::span<const int> samples, std::span<const int> features,
                               int min_leaf_size);

}  // namespace detail

}  // namespace tie
