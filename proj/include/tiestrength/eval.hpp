#pragma once

#include <string>
#include <vector>

#include "tiestrength/model.hpp"
#include "tiestrength/normalize.hpp"

namespace tie {

enum class Prediction { kFirst, kSecond, kTie };

std::string_view to_string(Prediction prediction);

// The friend with the strictly greater weight is the better one; exactly
// equal weights are a tie. Throws on non-finite weights.
Prediction predict_better_friend(double weight1, double weight2);

struct LedgerRow {
  PairJudgment pair;
  double weight1 = 0.0;
  double weight2 = 0.0;
  Prediction prediction = Prediction::kTie;
  bool match = false;
};

struct AccuracyReport {
  std::size_t total_pairs = 0;
  std::size_t tie_pairs = 0;
  std::size_t matches = 0;
  double accuracy_full = 0.0;            // matches / total_pairs
  double accuracy_excluding_ties = 0.0;  // matches / (total_pairs - tie_pairs)
  std::vector<LedgerRow> ledger;
};

// Pair judgments with both friends' normalized feature vectors looked up
// once, so many weight tables can be evaluated cheaply.
struct ResolvedPairs {
  std::vector<PairJudgment> pairs;
  std::vector<std::vector<double>> first;
  std::vector<std::vector<double>> second;

  std::size_t size() const { return pairs.size(); }
};

// Throws Error listing every (ego, friend) without a feature row, and on
// undecided judgments (those must be dropped beforehand).
ResolvedPairs resolve_pairs(const std::vector<PairJudgment>& pairs,
                            const std::vector<InteractionRecord>& records,
                            const NormalizationParams& params);

AccuracyReport evaluate(const ResolvedPairs& pairs, const WeightTable& table);
AccuracyReport evaluate(const std::vector<PairJudgment>& pairs,
                        const std::vector<InteractionRecord>& records, const WeightTable& table,
                        const NormalizationParams& params);

std::string to_json(const AccuracyReport& report);  // summary only
std::string format_ledger(const AccuracyReport& report);

}  // namespace tie
