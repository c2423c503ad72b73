#include "tiestrength/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <json.hpp>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "tiestrength/io.hpp"
#include "tiestrength/normalize.hpp"
#include "tiestrength/reference_model.hpp"
#include "tiestrength/regression.hpp"
#include "tiestrength/rng.hpp"
#include "tiestrength/scoring.hpp"
#include "tiestrength/survey.hpp"

namespace tie::pipeline {
namespace {

using ojson = nlohmann::ordered_json;

std::string require(const std::string& stage, const std::string& path) {
  if (!file_exists(path)) throw StageError(stage, "missing artifact " + path);
  return path;
}

void write_out(const std::string& dir, const std::string& name, std::string_view contents) {
  std::filesystem::create_directories(dir);
  write_file(join(dir, name), contents);
}

// Runs `body`, rethrowing library errors tagged with the stage name.
template <class Fn>
auto staged(const std::string& stage, Fn&& body) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::vector<double> importances_from(const std::string& path, const ParameterManifest& manifest) {
  const auto doc = nlohmann::json::parse(read_file(path));
  std::vector<double> out;
  const auto& params = doc.at("parameters");
  if (params.size() != manifest.size())
    throw ConfigError(path + " has " + std::to_string(params.size()) + " parameters, manifest has " +
                      std::to_string(manifest.size()));
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    if (params[i].at("name").get<std::string>() != manifest[i].name)
      throw ConfigError(path + ": parameter " + std::to_string(i) + " does not match the manifest");
    out.push_back(params[i].at("importance").get<double>());
  }
  return out;
}

std::vector<double> named_column(const std::string& path, const std::string& key,
                                 const ParameterManifest& manifest) {
  const auto doc = nlohmann::json::parse(read_file(path));
  std::map<std::string, double> by_name;
  for (const auto& p : doc.at("parameters")) by_name[p.at("name").get<std::string>()] = p.at(key).get<double>();
  std::vector<double> out;
  for (const auto& p : manifest.parameters()) {
    auto it = by_name.find(p.name);
    if (it == by_name.end()) throw ConfigError(path + ": no '" + key + "' for parameter '" + p.name + "'");
    out.push_back(it->second);
  }
  return out;
}

std::string weights_or_default(const std::string& in, const std::string& weights_path) {
  return weights_path.empty() ? join(in, artifact::kWeights) : weights_path;
}

}  // namespace

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::uint64_t stage_seed(std::uint64_t seed, const std::string& stage) {
  std::uint64_t id = 0;
  for (unsigned char c : stage) id = mix64(id ^ c);
  return derive_seed(seed, {id});
}

ParameterManifest resolve_manifest(const std::optional<std::string>& explicit_path, const std::string& dir) {
  if (explicit_path) return load_manifest(*explicit_path);
  if (!dir.empty()) {
    const std::string local = join(dir, artifact::kManifest);
    if (file_exists(local)) return load_manifest(local);
  }
  return reference::manifest();
}

void synth(const SynthConfig& config, const ParameterManifest& manifest, const std::string& out) {
  staged("synth", [&] {
    SynthConfig cfg = config;
    cfg.seed = stage_seed(config.seed, "synth");
    write_synth(generate(cfg, manifest), manifest, out);
    write_out(out, artifact::kManifest, format_manifest(manifest));
    return 0;
  });
}

CleanSummary clean(const std::string& in, const std::string& out, const ParameterManifest& manifest,
                   const CleaningConfig& config) {
  return staged("clean", [&] {
    const auto records = load_interactions(require("clean", join(in, artifact::kInteractions)), manifest);
    const auto classes = load_classifications(require("clean", join(in, artifact::kClassifications)));
    const auto pairs = load_pairs(require("clean", join(in, artifact::kPairs)));

    const auto result = clean_passive_users(records, manifest, config);
    const std::set<std::string> removed(result.removed_egos.begin(), result.removed_egos.end());
    const auto kept_classes = drop_unallocated(drop_egos(classes, removed));
    const auto kept_pairs = drop_undecided(drop_egos(pairs, removed));

    CleanSummary summary;
    summary.removed_egos = result.removed_egos;
    summary.interactions_before = records.size();
    summary.interactions_after = result.kept.size();
    summary.classifications_before = classes.size();
    summary.classifications_after = kept_classes.size();
    summary.pairs_before = pairs.size();
    summary.pairs_after = kept_pairs.size();

    ojson report;
    report["message_parameter"] = config.message_parameter;
    report["message_threshold"] = config.message_threshold;
    report["other_threshold"] = config.other_threshold;
    report["removed_egos"] = result.removed_egos;
    report["interactions"] = {{"before", summary.interactions_before}, {"after", summary.interactions_after}};
    report["classifications"] = {{"before", summary.classifications_before},
                                 {"after", summary.classifications_after}};
    report["pairs"] = {{"before", summary.pairs_before}, {"after", summary.pairs_after}};
    // Diagnostic: nearest-rank percentile of the per-ego sums, per parameter.
    const auto sums = sum_by_ego(records);
    ojson diag = ojson::object();
    if (!sums.empty()) {
      for (std::size_t i = 0; i < manifest.size(); ++i) {
        std::vector<double> column;
        for (const auto& [ego, s] : sums) column.push_back(s[i]);
        diag[manifest[i].name] = percentile(column, config.percentile_q);
      }
    }
    report["ego_sum_percentile"] = {{"q", config.percentile_q}, {"values", diag}};

    write_out(out, artifact::kInteractions, format_interactions(result.kept, manifest));
    write_out(out, artifact::kClassifications, format_classifications(kept_classes));
    write_out(out, artifact::kPairs, format_pairs(kept_pairs));
    write_out(out, artifact::kRemovalReport, report.dump(2) + "\n");
    if (std::filesystem::path(in) != std::filesystem::path(out))
      write_out(out, artifact::kManifest, format_manifest(manifest));
    return summary;
  });
}

void fit(const std::string& in, const std::string& out, const ParameterManifest& manifest) {
  staged("fit", [&] {
    const auto records = load_interactions(require("fit", join(in, artifact::kInteractions)), manifest);
    write_out(out, artifact::kNormalization, to_json(fit_minmax(records, manifest)));
    return 0;
  });
}

TrainingSet training_set(const std::string& in, const ParameterManifest& manifest) {
  const auto records = load_interactions(join(in, artifact::kInteractions), manifest);
  const auto classes = drop_unallocated(load_classifications(join(in, artifact::kClassifications)));
  const auto params = normalization_from_json(read_file(join(in, artifact::kNormalization)));
  check_params(params, manifest);

  std::unordered_map<std::string, const InteractionRecord*> index;
  for (const auto& r : records) index.emplace(r.ego_id + '\x1f' + r.friend_id, &r);

  TrainingSet set;
  set.X.resize(static_cast<Eigen::Index>(classes.size()), static_cast<Eigen::Index>(manifest.size()));
  std::size_t missing = 0;
  std::string first_missing;
  for (std::size_t row = 0; row < classes.size(); ++row) {
    auto it = index.find(classes[row].ego_id + '\x1f' + classes[row].friend_id);
    if (it == index.end()) {
      if (!missing++) first_missing = "(" + classes[row].ego_id + ", " + classes[row].friend_id + ")";
      continue;
    }
    const auto x = apply_minmax(it->second->values, params);
    for (std::size_t i = 0; i < x.size(); ++i) set.X(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) = x[i];
    set.y.push_back(ordinal_code(classes[row].subgroup));
  }
  if (missing)
    throw Error(std::to_string(missing) + " classified friends have no interaction row, first " + first_missing);
  return set;
}

void train_lr(const std::string& in, const std::string& out, const ParameterManifest& manifest) {
  staged("train-lr", [&] {
    require("train-lr", join(in, artifact::kNormalization));
    const auto set = training_set(in, manifest);
    Eigen::VectorXd y(static_cast<Eigen::Index>(set.y.size()));
    for (std::size_t i = 0; i < set.y.size(); ++i) y(static_cast<Eigen::Index>(i)) = set.y[i];
    const OLSFit fit = fit_ols(set.X, y);
    const auto importances = lr_importances(fit);

    ojson doc;
    doc["method"] = "LR";
    doc["target_encoding"] = {{"acquaintance", 1}, {"friend", 2}, {"best_friend", 3}};
    doc["n_observations"] = fit.n_observations;
    doc["residual_variance"] = fit.residual_variance;
    doc["intercept"] = {{"coefficient", fit.coefficients(0)},
                        {"standard_error", fit.standard_errors(0)},
                        {"t_value", fit.t_values(0)}};
    doc["parameters"] = ojson::array();
    for (std::size_t i = 0; i < manifest.size(); ++i) {
      const auto j = static_cast<Eigen::Index>(i + 1);
      doc["parameters"].push_back({{"name", manifest[i].name},
                                   {"importance", importances[i]},
                                   {"coefficient", fit.coefficients(j)},
                                   {"standard_error", fit.standard_errors(j)},
                                   {"t_value", fit.t_values(j)}});
    }
    write_out(out, artifact::kImportancesLR, doc.dump(2) + "\n");
    return 0;
  });
}

void train_rf(const std::string& in, const std::string& out, const ParameterManifest& manifest,
              const ForestConfig& config, bool dump_forest) {
  staged("train-rf", [&] {
    require("train-rf", join(in, artifact::kNormalization));
    const auto set = training_set(in, manifest);
    ForestConfig cfg = config;
    cfg.seed = stage_seed(config.seed, "train-rf");
    const Forest forest = train_forest(set.X, set.y, cfg);
    const auto imp = oob_permutation_importance(forest, set.X, set.y, cfg);

    ojson doc;
    doc["method"] = "RF";
    doc["importance"] = "oob permutation mean decrease accuracy";
    doc["scaling"] = cfg.importance_scaling == ImportanceScaling::kRaw ? "raw" : "z_scaled";
    doc["n_trees"] = cfg.n_trees;
    doc["mtry"] = cfg.resolved_mtry(set.X.cols());
    doc["min_leaf_size"] = cfg.min_leaf_size;
    doc["max_depth"] = cfg.max_depth ? ojson(*cfg.max_depth) : ojson(nullptr);
    doc["seed"] = config.seed;
    doc["class_labels"] = forest.class_labels();
    doc["oob_accuracy"] = forest.oob_accuracy(set.X, set.y);
    doc["trees_evaluated"] = imp.trees_evaluated;
    doc["parameters"] = ojson::array();
    for (std::size_t i = 0; i < manifest.size(); ++i)
      doc["parameters"].push_back({{"name", manifest[i].name},
                                   {"importance", imp.mean_decrease_accuracy[i]},
                                   {"raw", imp.raw[i]},
                                   {"stddev", imp.stddev[i]}});
    write_out(out, artifact::kImportancesRF, doc.dump(2) + "\n");
    if (dump_forest) write_out(out, artifact::kForestDump, forest.to_json());
    return 0;
  });
}

void survey_weights(const std::string& survey_path, const std::string& out,
                    const ParameterManifest& manifest) {
  staged("survey-weights", [&] {
    const SurveyTally tally = survey_path.empty() ? reference::survey_tally()
                                                  : survey_from_json(read_file(require("survey-weights", survey_path)));
    ojson doc;
    doc["parameters"] = ojson::array();
    for (const auto& w : survey_weights(tally, manifest)) {
      ojson entry{{"name", w.name}, {"p", w.p}};
      if (w.exact) {
        entry["exact"] = std::to_string(w.exact->num) + "/" + std::to_string(w.exact->den);
        entry["category"] = w.category;
        entry["b"] = w.b;
        entry["u"] = w.u;
        entry["v"] = w.v;
      } else {
        entry["fixed"] = true;
      }
      doc["parameters"].push_back(std::move(entry));
    }
    write_out(out, artifact::kSurveyWeights, doc.dump(2) + "\n");
    return 0;
  });
}

void assemble(const std::string& in, const std::string& out, const ParameterManifest& manifest,
              Variant variant, const std::string& k_path) {
  staged("assemble", [&] {
    const char* source = variant == Variant::kLR ? artifact::kImportancesLR : artifact::kImportancesRF;
    auto importances = importances_from(require("assemble", join(in, source)), manifest);
    // Permutation importances of uninformative parameters can come out
    // slightly negative; a weight table holds non-negative importances.
    for (double& v : importances) v = std::max(v, 0.0);

    std::vector<double> p, k;
    if (variant == Variant::kRFP || variant == Variant::kRFPK)
      p = named_column(require("assemble", join(in, artifact::kSurveyWeights)), "p", manifest);
    if (variant == Variant::kRFPK) {
      if (k_path.empty()) throw ConfigError("variant RF_P_K needs a k file (--k)");
      k = named_column(require("assemble", k_path), "k", manifest);
    }
    const auto table = assemble_weight_table(manifest.names(), importances, p, k, variant);
    write_out(out, artifact::kWeights, to_json(table));
    return 0;
  });
}

void tune_k(const std::string& in, const std::string& out, const ParameterManifest& manifest,
            const std::vector<double>& k_grid) {
  staged("tune-k", [&] {
    const auto base = weight_table_from_json(read_file(require("tune-k", join(in, artifact::kWeights))));
    check_weight_table(base, manifest);
    const auto params =
        normalization_from_json(read_file(require("tune-k", join(in, artifact::kNormalization))));
    check_params(params, manifest);
    const auto records = load_interactions(require("tune-k", join(in, artifact::kInteractions)), manifest);
    const auto pairs = drop_undecided(load_pairs(require("tune-k", join(in, artifact::kPairs))));
    const auto resolved = resolve_pairs(pairs, records, params);
    const auto result = tune_all(base, k_grid, resolved);
    write_out(out, artifact::kWeights, to_json(result.table));
    write_out(out, artifact::kTuningReport, to_json(result));
    return 0;
  });
}

void score(const std::string& in, const std::string& out, const ParameterManifest& manifest,
           const std::string& weights_path) {
  staged("score", [&] {
    const auto table =
        weight_table_from_json(read_file(require("score", weights_or_default(in, weights_path))));
    check_weight_table(table, manifest);
    const auto params =
        normalization_from_json(read_file(require("score", join(in, artifact::kNormalization))));
    check_params(params, manifest);
    const auto records = load_interactions(require("score", join(in, artifact::kInteractions)), manifest);
    write_out(out, artifact::kScores, format_scores(score_records(records, params, table)));
    return 0;
  });
}

AccuracyReport evaluate(const std::string& in, const std::string& out, const ParameterManifest& manifest,
                        const std::string& weights_path) {
  return staged("evaluate", [&] {
    const auto table =
        weight_table_from_json(read_file(require("evaluate", weights_or_default(in, weights_path))));
    check_weight_table(table, manifest);
    const auto params =
        normalization_from_json(read_file(require("evaluate", join(in, artifact::kNormalization))));
    check_params(params, manifest);
    const auto records = load_interactions(require("evaluate", join(in, artifact::kInteractions)), manifest);
    const auto pairs = drop_undecided(load_pairs(require("evaluate", join(in, artifact::kPairs))));
    auto report = tie::evaluate(pairs, records, table, params);
    write_out(out, artifact::kReport, to_json(report));
    write_out(out, artifact::kLedger, format_ledger(report));
    return report;
  });
}

int demo_paper(std::ostream& out) {
  const auto manifest = reference::manifest();
  const auto p = survey_weight_vector(reference::survey_tally(), manifest);
  const auto table = assemble_weight_table(manifest.names(), reference::mean_decrease_accuracy(), p,
                                           reference::k_values(), Variant::kRFPK);
  const double wb = friendship_weight(reference::example_friend_b(), table);
  const double wc = friendship_weight(reference::example_friend_c(), table);
  const Prediction prediction = predict_better_friend(wb, wc);

  out << "final model (importance * p * k):\n";
  for (const auto& e : table.entries)
    out << "  " << std::left << std::setw(22) << e.name << " importance " << std::setw(7) << e.importance
        << " p " << std::setw(10) << std::setprecision(6) << e.p << " k " << e.k << "\n";
  out << std::setprecision(7);
  out << "weight(A,B) = " << wb << "  (reference " << reference::kExampleWeightB << ")\n";
  out << "weight(A,C) = " << wc << "  (reference " << reference::kExampleWeightC << ")\n";
  out << "prediction: " << to_string(prediction) << "  (stated: first)\n";
  return prediction == Prediction::kFirst ? 0 : 1;
}

}  // namespace tie::pipeline
