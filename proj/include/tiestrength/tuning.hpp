#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tiestrength/eval.hpp"
#include "tiestrength/model.hpp"

namespace tie {

// Accuracy of a candidate table. The production evaluator is the
// ties-excluded pair accuracy; tests substitute replayed curves.
using AccuracyFn = std::function<double(const WeightTable&)>;

AccuracyFn pair_accuracy(const ResolvedPairs& pairs);

struct SweepPoint {
  double k = 1.0;
  double accuracy = 0.0;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepPoint> curve;  // ascending k
  double chosen_k = 1.0;          // smallest k reaching the curve maximum
  // Engine convention: the last three sampled k all reach the maximum.
  bool plateau_detected = false;
};

// Integers 1..100 followed by the probes 150, 200, 500, 1000.
std::vector<double> default_k_grid();

// Parses "1:100,150,200" style lists: comma separated values or inclusive
// integer ranges "a:b".
std::vector<double> parse_k_grid(std::string_view text);

// Evaluates `accuracy` on `base` with only `parameter`'s k replaced by each
// grid value. The evaluated tables carry variant RF_P_K.
SweepResult sweep_k(const std::string& parameter, std::span<const double> k_values,
                    const WeightTable& base, const AccuracyFn& accuracy);
SweepResult sweep_k(const std::string& parameter, std::span<const double> k_values,
                    const WeightTable& base, const ResolvedPairs& pairs);

struct TuningResult {
  WeightTable table;                // variant RF_P_K
  std::vector<SweepResult> sweeps;  // manifest order
};

// One-at-a-time sweep of every parameter in table order. A parameter keeps
// k = 1 unless its sweep maximum strictly beats its accuracy at k = 1; each
// sweep starts from the table produced by the previous ones.
TuningResult tune_all(const WeightTable& base, std::span<const double> k_grid, const AccuracyFn& accuracy);
TuningResult tune_all(const WeightTable& base, std::span<const double> k_grid, const ResolvedPairs& pairs);

// tuning_report.json
std::string to_json(const TuningResult& result);

}  // namespace tie
