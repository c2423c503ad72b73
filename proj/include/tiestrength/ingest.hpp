#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tiestrength/io.hpp"
#include "tiestrength/model.hpp"

namespace tie {

// Passive-user cleaning thresholds. Both comparisons are strict.
struct CleaningConfig {
  double message_threshold = 2100.0;
  double other_threshold = 3.0;
  std::string message_parameter = "messages";
  double percentile_q = 10.0;  // diagnostic only
};

std::vector<InteractionRecord> parse_interactions(std::string_view csv_text,
                                                  const ParameterManifest& manifest);
std::vector<InteractionRecord> load_interactions(const std::string& path,
                                                 const ParameterManifest& manifest);
std::vector<Classification> load_classifications(const std::string& path);
std::vector<PairJudgment> load_pairs(const std::string& path);

std::string format_interactions(const std::vector<InteractionRecord>& records,
                                const ParameterManifest& manifest);
std::string format_classifications(const std::vector<Classification>& rows);
std::string format_pairs(const std::vector<PairJudgment>& rows);

using EgoSums = std::map<std::string, std::vector<double>>;

EgoSums sum_by_ego(const std::vector<InteractionRecord>& records);

// True when an ego with these per-parameter sums is passive: messages below
// the message threshold and every other parameter below the other threshold.
bool is_passive(const std::vector<double>& sums, std::size_t message_index,
                const CleaningConfig& config);

struct CleaningResult {
  std::vector<InteractionRecord> kept;
  std::vector<std::string> removed_egos;  // first-appearance order
};

CleaningResult clean_passive_users(const std::vector<InteractionRecord>& records,
                                   const ParameterManifest& manifest,
                                   const CleaningConfig& config);

// Nearest-rank percentile: element ceil(q/100 * N) - 1 of the sorted values.
double percentile(std::vector<double> values, double q);

std::vector<Classification> drop_unallocated(const std::vector<Classification>& rows);
std::vector<PairJudgment> drop_undecided(const std::vector<PairJudgment>& rows);

// Removes rows whose ego is in `removed`, preserving order.
std::vector<Classification> drop_egos(const std::vector<Classification>& rows,
                                      const std::set<std::string>& removed);
std::vector<PairJudgment> drop_egos(const std::vector<PairJudgment>& rows,
                                    const std::set<std::string>& removed);

}  // namespace tie
