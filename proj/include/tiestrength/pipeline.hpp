#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tiestrength/eval.hpp"
#include "tiestrength/forest.hpp"
#include "tiestrength/ingest.hpp"
#include "tiestrength/synth.hpp"
#include "tiestrength/tuning.hpp"

// File-to-file pipeline stages. Every stage reads its inputs from an input
// directory and writes fixed-name artifacts into an output directory (which
// may be the same); no state passes between stages except through files.
namespace tie::pipeline {

namespace artifact {
inline constexpr const char* kManifest = "manifest.txt";
inline constexpr const char* kInteractions = "interactions.csv";
inline constexpr const char* kClassifications = "classifications.csv";
inline constexpr const char* kPairs = "pairs.csv";
inline constexpr const char* kGroundTruth = "ground_truth.csv";
inline constexpr const char* kRemovalReport = "removal_report.json";
inline constexpr const char* kNormalization = "normalization.json";
inline constexpr const char* kImportancesLR = "importances_lr.json";
inline constexpr const char* kImportancesRF = "importances_rf.json";
inline constexpr const char* kForestDump = "forest.json";
inline constexpr const char* kSurveyWeights = "p.json";
inline constexpr const char* kWeights = "weights.json";
inline constexpr const char* kTuningReport = "tuning_report.json";
inline constexpr const char* kScores = "scores.csv";
inline constexpr const char* kReport = "report.json";
inline constexpr const char* kLedger = "ledger.csv";
}  // namespace artifact

// Raised for a failed stage; the message starts with the stage name.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& message)
      : Error(stage + ": " + message), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

// `explicit_path` when given, else <dir>/manifest.txt when present, else the
// built-in eight-parameter manifest.
ParameterManifest resolve_manifest(const std::optional<std::string>& explicit_path, const std::string& dir);

std::string join(const std::string& dir, const std::string& name);

// Substream seed of a stage derived from the run seed.
std::uint64_t stage_seed(std::uint64_t seed, const std::string& stage);

void synth(const SynthConfig& config, const ParameterManifest& manifest, const std::string& out);

struct CleanSummary {
  std::vector<std::string> removed_egos;
  std::size_t interactions_before = 0, interactions_after = 0;
  std::size_t classifications_before = 0, classifications_after = 0;
  std::size_t pairs_before = 0, pairs_after = 0;
};
CleanSummary clean(const std::string& in, const std::string& out, const ParameterManifest& manifest,
                   const CleaningConfig& config);

void fit(const std::string& in, const std::string& out, const ParameterManifest& manifest);

// Normalized features joined with classifications, rows in classification
// order; y holds the ordinal codes 1..3.
struct TrainingSet {
  Eigen::MatrixXd X;
  std::vector<int> y;
};
TrainingSet training_set(const std::string& in, const ParameterManifest& manifest);

void train_lr(const std::string& in, const std::string& out, const ParameterManifest& manifest);
void train_rf(const std::string& in, const std::string& out, const ParameterManifest& manifest,
              const ForestConfig& config, bool dump_forest = false);

// `survey_path` empty: the built-in reference tallies.
void survey_weights(const std::string& survey_path, const std::string& out,
                    const ParameterManifest& manifest);

// Reads the importance file for the variant, p.json for RF_P / RF_P_K and
// `k_path` (a weights.json-style file or {"parameters":[{"name","k"}]}) for
// RF_P_K.
void assemble(const std::string& in, const std::string& out, const ParameterManifest& manifest,
              Variant variant, const std::string& k_path = "");

void tune_k(const std::string& in, const std::string& out, const ParameterManifest& manifest,
            const std::vector<double>& k_grid);

void score(const std::string& in, const std::string& out, const ParameterManifest& manifest,
           const std::string& weights_path = "");

AccuracyReport evaluate(const std::string& in, const std::string& out, const ParameterManifest& manifest,
                        const std::string& weights_path = "");

// Worked example with the reference constants. Prints both weights and the
// prediction; returns 0 when the prediction matches the stated choice.
int demo_paper(std::ostream& out);

}  // namespace tie::pipeline
