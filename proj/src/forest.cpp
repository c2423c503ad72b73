#include "tiestrength/forest.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <numeric>

#include "parallel.hpp"
#include "tiestrength/rng.hpp"

namespace tie {
namespace {

std::vector<int> encode_labels(std::span<const int> y, const std::vector<int>& class_labels) {
  std::vector<int> codes(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    auto it = std::lower_bound(class_labels.begin(), class_labels.end(), y[i]);
    if (it == class_labels.end() || *it != y[i])
      throw Error("label " + std::to_string(y[i]) + " was not seen in training");
    codes[i] = static_cast<int>(it - class_labels.begin());
  }
  return codes;
}

// Index of the largest count; ties go to the lowest index.
int argmax_first(std::span<const int> counts) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(counts.size()); ++c)
    if (counts[c] > counts[best]) best = c;
  return best;
}

}  // namespace

int ForestConfig::resolved_mtry(Eigen::Index n_features) const {
  if (mtry) return *mtry;
  return std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n_features)))));
}

void ForestConfig::validate(Eigen::Index n_features) const {
  if (n_trees < 1) throw ConfigError("forest: n_trees must be >= 1");
  const int m = resolved_mtry(n_features);
  if (m < 1 || m > n_features)
    throw ConfigError("forest: mtry must lie in [1, " + std::to_string(n_features) + "], got " +
                      std::to_string(m));
  if (min_leaf_size < 1) throw ConfigError("forest: min_leaf_size must be >= 1");
  if (max_depth && *max_depth < 0) throw ConfigError("forest: max_depth must be >= 0");
}

std::uint64_t tree_seed(std::uint64_t seed, int tree) {
  return derive_seed(seed, {0x7472ULL, static_cast<std::uint64_t>(tree)});
}

std::uint64_t permutation_seed(std::uint64_t seed, int tree, int feature) {
  return derive_seed(seed, {0x7065ULL, static_cast<std::uint64_t>(tree),
                            static_cast<std::uint64_t>(feature)});
}

namespace detail {

double gini(std::span<const int> class_counts) {
  double n = 0.0, sq = 0.0;
  for (int c : class_counts) {
    n += c;
    sq += static_cast<double>(c) * c;
  }
  return n > 0.0 ? 1.0 - sq / (n * n) : 0.0;
}

SplitCandidate find_best_split(const Eigen::MatrixXd& X, std::span<const int> codes, int n_classes,
                               std::span<const int> samples, std::span<const int> features,
                               int min_leaf_size) {
  const std::size_t n = samples.size();
  SplitCandidate best;
  if (n < 2) return best;

  std::vector<std::int64_t> parent(n_classes, 0);
  for (int s : samples) ++parent[codes[s]];
  std::int64_t parent_sq = 0;
  for (auto c : parent) parent_sq += c * c;
  const double parent_proxy = static_cast<double>(parent_sq) / static_cast<double>(n);

  // Weighted child Gini is 1 - proxy / n with proxy = SL/nL + SR/nR, SL and
  // SR the sums of squared class counts. Larger proxy, larger decrease.
  double best_proxy = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, int>> column(n);
  std::vector<std::int64_t> left(n_classes), right(n_classes);

  for (int f : features) {
    for (std::size_t i = 0; i < n; ++i) column[i] = {X(samples[i], f), codes[samples[i]]};
    std::sort(column.begin(), column.end());
    if (column.front().first == column.back().first) continue;

    std::fill(left.begin(), left.end(), 0);
    right.assign(parent.begin(), parent.end());
    std::int64_t sl = 0, sr = parent_sq;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const int c = column[i].second;
      sl += 2 * left[c] + 1;
      ++left[c];
      sr -= 2 * right[c] - 1;
      --right[c];
      const double a = column[i].first, b = column[i + 1].first;
      if (a == b) continue;
      const auto nl = static_cast<std::int64_t>(i + 1);
      const auto nr = static_cast<std::int64_t>(n) - nl;
      if (nl < min_leaf_size || nr < min_leaf_size) continue;
      const double proxy = static_cast<double>(sl) / static_cast<double>(nl) +
                           static_cast<double>(sr) / static_cast<double>(nr);
      double threshold = 0.5 * (a + b);
      if (!(threshold < b)) threshold = a;
      const bool better =
          proxy > best_proxy ||
          (proxy == best_proxy &&
           (f < best.feature || (f == best.feature && threshold < best.threshold)));
      if (better) {
        best_proxy = proxy;
        best.feature = f;
        best.threshold = threshold;
      }
    }
  }
  // Splits that do not reduce impurity (up to rounding) are not taken.
  if (best.feature < 0 || !(best_proxy > parent_proxy * (1.0 + 1e-12))) return {};
  best.decrease = (best_proxy - parent_proxy) / static_cast<double>(n);
  return best;
}

}  // namespace detail

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& X, std::span<const int> codes, int n_classes,
              const ForestConfig& config, int mtry, Rng& rng)
      : X_(X), codes_(codes), n_classes_(n_classes), config_(config), mtry_(mtry), rng_(rng) {
    features_.resize(X.cols());
    tree_.n_classes_ = n_classes;
  }

  DecisionTree build(std::vector<int> samples) {
    samples_ = std::move(samples);
    grow(0, samples_.size(), 0);
    return std::move(tree_);
  }

 private:
  int grow(std::size_t begin, std::size_t end, int depth) {
    const int id = static_cast<int>(tree_.nodes_.size());
    tree_.nodes_.emplace_back();

    std::vector<int> counts(n_classes_, 0);
    for (std::size_t i = begin; i < end; ++i) ++counts[codes_[samples_[i]]];
    const std::size_t n = end - begin;
    const bool pure = std::count(counts.begin(), counts.end(), 0) == n_classes_ - 1;
    const bool depth_capped = config_.max_depth && depth >= *config_.max_depth;

    detail::SplitCandidate split;
    if (!pure && !depth_capped && n >= 2 * static_cast<std::size_t>(config_.min_leaf_size)) {
      std::iota(features_.begin(), features_.end(), 0);
      for (int j = 0; j < mtry_; ++j) {
        const auto pick = j + static_cast<int>(rng_.index(features_.size() - j));
        std::swap(features_[j], features_[pick]);
      }
      std::vector<int> candidates(features_.begin(), features_.begin() + mtry_);
      std::span<const int> node_samples(samples_.data() + begin, n);
      split = detail::find_best_split(X_, codes_, n_classes_, node_samples, candidates,
                                      config_.min_leaf_size);
    }

    if (split.feature < 0) {
      auto& node = tree_.nodes_[id];
      node.counts = tree_.class_counts_.size();
      node.majority = argmax_first(counts);
      tree_.class_counts_.insert(tree_.class_counts_.end(), counts.begin(), counts.end());
      return id;
    }

    auto mid_it = std::partition(samples_.begin() + begin, samples_.begin() + end,
                                 [&](int s) { return X_(s, split.feature) <= split.threshold; });
    const auto mid = static_cast<std::size_t>(mid_it - samples_.begin());
    const int left = grow(begin, mid, depth + 1);
    const int right = grow(mid, end, depth + 1);
    auto& node = tree_.nodes_[id];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.decrease = split.decrease;
    node.left = left;
    node.right = right;
    return id;
  }

  const Eigen::MatrixXd& X_;
  std::span<const int> codes_;
  int n_classes_;
  const ForestConfig& config_;
  int mtry_;
  Rng& rng_;
  std::vector<int> samples_;
  std::vector<int> features_;
  DecisionTree tree_;
};

int DecisionTree::predict(const Eigen::MatrixXd& X, Eigen::Index row, int override_feature,
                          double override_value) const {
  int id = 0;
  while (nodes_[id].feature >= 0) {
    const Node& node = nodes_[id];
    const double v = node.feature == override_feature ? override_value : X(row, node.feature);
    id = v <= node.threshold ? node.left : node.right;
  }
  return nodes_[id].majority;
}

int DecisionTree::predict(std::span<const double> x) const {
  int id = 0;
  while (nodes_[id].feature >= 0) {
    const Node& node = nodes_[id];
    id = x[node.feature] <= node.threshold ? node.left : node.right;
  }
  return nodes_[id].majority;
}

std::span<const int> DecisionTree::leaf_counts(const Node& leaf) const {
  return {class_counts_.data() + leaf.counts, static_cast<std::size_t>(n_classes_)};
}

bool DecisionTree::uses_feature(int feature) const {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const Node& n) { return n.feature == feature; });
}

Forest train_forest(const Eigen::MatrixXd& X, std::span<const int> y, const ForestConfig& config) {
  if (X.rows() == 0 || X.cols() == 0) throw Error("train_forest: empty input");
  if (static_cast<std::size_t>(X.rows()) != y.size())
    throw Error("train_forest: " + std::to_string(X.rows()) + " rows but " +
                std::to_string(y.size()) + " labels");
  if (X.rows() < 2) throw Error("train_forest: need at least 2 rows");
  if (!X.allFinite()) throw Error("train_forest: non-finite feature value");
  config.validate(X.cols());

  Forest forest;
  forest.class_labels_.assign(y.begin(), y.end());
  std::sort(forest.class_labels_.begin(), forest.class_labels_.end());
  forest.class_labels_.erase(std::unique(forest.class_labels_.begin(), forest.class_labels_.end()),
                             forest.class_labels_.end());
  if (forest.class_labels_.size() < 2) throw Error("train_forest: need at least 2 classes");
  const auto codes = encode_labels(y, forest.class_labels_);
  const int n_classes = static_cast<int>(forest.class_labels_.size());
  const int mtry = config.resolved_mtry(X.cols());
  const auto n = static_cast<std::size_t>(X.rows());

  forest.n_features_ = X.cols();
  forest.n_rows_ = X.rows();
  forest.seed_ = config.seed;
  forest.trees_.resize(config.n_trees);
  forest.oob_rows_.resize(config.n_trees);

  internal::parallel_for(config.n_trees, config.threads, [&](int t) {
    Rng rng(tree_seed(config.seed, t));
    std::vector<int> samples(n);
    std::vector<char> in_bag(n, 0);
    for (auto& s : samples) {
      s = static_cast<int>(rng.index(n));
      in_bag[s] = 1;
    }
    auto& oob = forest.oob_rows_[t];
    for (std::size_t r = 0; r < n; ++r)
      if (!in_bag[r]) oob.push_back(static_cast<int>(r));
    TreeBuilder builder(X, codes, n_classes, config, mtry, rng);
    forest.trees_[t] = builder.build(std::move(samples));
  });
  return forest;
}

int Forest::vote(std::span<const int> tree_votes) const {
  std::vector<int> counts(class_labels_.size(), 0);
  for (int v : tree_votes) ++counts[v];
  return class_labels_[argmax_first(counts)];
}

int Forest::predict(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != n_features_)
    throw Error("forest predict: expected " + std::to_string(n_features_) + " features, got " +
                std::to_string(x.size()));
  std::vector<int> votes;
  votes.reserve(trees_.size());
  for (const auto& tree : trees_) votes.push_back(tree.predict(x));
  return vote(votes);
}

int Forest::predict_row(const Eigen::MatrixXd& X, Eigen::Index row) const {
  if (X.cols() != n_features_) throw Error("forest predict: feature count mismatch");
  std::vector<int> votes;
  votes.reserve(trees_.size());
  for (const auto& tree : trees_) votes.push_back(tree.predict(X, row));
  return vote(votes);
}

double Forest::oob_accuracy(const Eigen::MatrixXd& X, std::span<const int> y) const {
  if (X.rows() != n_rows_ || X.cols() != n_features_ || y.size() != static_cast<std::size_t>(n_rows_))
    throw Error("oob_accuracy: data does not match the trained forest");
  const auto codes = encode_labels(y, class_labels_);
  const std::size_t k = class_labels_.size();
  std::vector<int> counts(static_cast<std::size_t>(n_rows_) * k, 0);
  for (std::size_t t = 0; t < trees_.size(); ++t)
    for (int r : oob_rows_[t]) ++counts[r * k + trees_[t].predict(X, r)];
  std::size_t evaluated = 0, correct = 0;
  for (Eigen::Index r = 0; r < n_rows_; ++r) {
    std::span<const int> row(counts.data() + r * k, k);
    if (std::all_of(row.begin(), row.end(), [](int c) { return c == 0; })) continue;
    ++evaluated;
    if (argmax_first(row) == codes[r]) ++correct;
  }
  return evaluated ? static_cast<double>(correct) / static_cast<double>(evaluated) : 0.0;
}

std::string Forest::to_json() const {
  nlohmann::ordered_json doc;
  doc["seed"] = seed_;
  doc["n_rows"] = n_rows_;
  doc["n_features"] = n_features_;
  doc["class_labels"] = class_labels_;
  doc["trees"] = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < trees_.size(); ++t) {
    nlohmann::ordered_json tree;
    tree["oob_rows"] = oob_rows_[t];
    tree["nodes"] = nlohmann::ordered_json::array();
    for (const auto& node : trees_[t].nodes()) {
      if (node.feature >= 0) {
        tree["nodes"].push_back({{"feature", node.feature},
                                 {"threshold", node.threshold},
                                 {"left", node.left},
                                 {"right", node.right},
                                 {"decrease", node.decrease}});
      } else {
        auto counts = trees_[t].leaf_counts(node);
        tree["nodes"].push_back({{"leaf", class_labels_[node.majority]},
                                 {"counts", std::vector<int>(counts.begin(), counts.end())}});
      }
    }
    doc["trees"].push_back(std::move(tree));
  }
  return doc.dump(1) + "\n";
}

ForestImportance oob_permutation_importance(const Forest& forest, const Eigen::MatrixXd& X,
                                            std::span<const int> y, const ForestConfig& config) {
  if (X.cols() != forest.n_features() || X.rows() != forest.n_rows() ||
      y.size() != static_cast<std::size_t>(X.rows()))
    throw Error("importance: data shape does not match the trained forest");
  const auto codes = encode_labels(y, forest.class_labels());
  const int n_trees = static_cast<int>(forest.trees().size());
  const auto n_features = static_cast<int>(X.cols());
  for (const auto& oob : forest.oob_rows())
    for (int r : oob)
      if (r < 0 || r >= X.rows()) throw Error("importance: OOB index out of range");

  // decreases[t * n_features + f]; NaN marks a tree without OOB rows.
  std::vector<double> decreases(static_cast<std::size_t>(n_trees) * n_features,
                                std::numeric_limits<double>::quiet_NaN());
  internal::parallel_for(n_trees, config.threads, [&](int t) {
    const auto& tree = forest.trees()[t];
    const auto& oob = forest.oob_rows()[t];
    if (oob.empty()) return;
    int correct = 0;
    for (int r : oob) correct += tree.predict(X, r) == codes[r];
    std::vector<double> permuted(oob.size());
    for (int f = 0; f < n_features; ++f) {
      for (std::size_t j = 0; j < oob.size(); ++j) permuted[j] = X(oob[j], f);
      Rng rng(permutation_seed(forest.seed(), t, f));
      rng.shuffle(permuted);
      int correct_permuted = 0;
      for (std::size_t j = 0; j < oob.size(); ++j)
        correct_permuted += tree.predict(X, oob[j], f, permuted[j]) == codes[oob[j]];
      decreases[static_cast<std::size_t>(t) * n_features + f] =
          static_cast<double>(correct - correct_permuted) / static_cast<double>(oob.size());
    }
  });

  ForestImportance result;
  result.raw.assign(n_features, 0.0);
  result.stddev.assign(n_features, 0.0);
  result.mean_decrease_accuracy.assign(n_features, 0.0);
  for (int t = 0; t < n_trees; ++t)
    if (!std::isnan(decreases[static_cast<std::size_t>(t) * n_features])) ++result.trees_evaluated;
  if (result.trees_evaluated == 0)
    throw Error("importance: no tree has out-of-bag rows, importance is undefined");

  const double m = result.trees_evaluated;
  for (int f = 0; f < n_features; ++f) {
    double sum = 0.0;
    for (int t = 0; t < n_trees; ++t) {
      const double d = decreases[static_cast<std::size_t>(t) * n_features + f];
      if (!std::isnan(d)) sum += d;
    }
    const double mean = sum / m;
    double ss = 0.0;
    for (int t = 0; t < n_trees; ++t) {
      const double d = decreases[static_cast<std::size_t>(t) * n_features + f];
      if (!std::isnan(d)) ss += (d - mean) * (d - mean);
    }
    const double sd = result.trees_evaluated > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
    result.raw[f] = mean;
    result.stddev[f] = sd;
    if (config.importance_scaling == ImportanceScaling::kRaw)
      result.mean_decrease_accuracy[f] = mean;
    else
      result.mean_decrease_accuracy[f] = sd > 0.0 ? mean / (sd / std::sqrt(m)) : 0.0;
  }
  return result;
}

}  // namespace tie
