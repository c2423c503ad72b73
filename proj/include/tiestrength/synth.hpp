#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tiestrength/model.hpp"

namespace tie {

// Expected count of a parameter for latent closeness c and ego activity a:
// max_rate * a * c^exponent.
struct RateSpec {
  std::string name;
  double max_rate = 10.0;
  double exponent = 1.0;
};

struct SynthConfig {
  int n_egos = 50;
  int friends_per_ego = 30;
  std::uint64_t seed = 1;
  // Count parameters not listed here use max_rate 10, exponent 1.
  std::vector<RateSpec> rate_map = default_rate_map();
  double close_friend_threshold = 0.9;  // binary flag = 1 iff c > threshold
  double cut_friend = 0.5;              // c > cut_friend: friend
  double cut_best_friend = 0.8;         // c > cut_best_friend: best friend
  double pair_noise = 0.1;              // stated choice contradicts closeness
  int pairs_per_ego = 10;
  double undecided_fraction = 0.05;
  double unallocated_fraction = 0.05;
  // Share of egos with near-zero activity, the targets of passive cleaning.
  // Passive egos never set binary flags.
  double passive_fraction = 0.1;
  double passive_activity = 0.0002;

  static std::vector<RateSpec> default_rate_map();
  void validate() const;  // throws ConfigError
};

struct GroundTruth {
  std::string ego_id;
  std::string friend_id;
  double closeness = 0.0;
};

struct SynthData {
  std::vector<InteractionRecord> interactions;
  std::vector<Classification> classifications;
  std::vector<PairJudgment> pairs;
  std::vector<GroundTruth> ground_truth;
};

SynthData generate(const SynthConfig& config, const ParameterManifest& manifest);

Subgroup subgroup_for(double closeness, const SynthConfig& config);

std::string format_ground_truth(const std::vector<GroundTruth>& rows);

// Writes interactions.csv, classifications.csv, pairs.csv and
// ground_truth.csv into `dir` (created if missing).
void write_synth(const SynthData& data, const ParameterManifest& manifest, const std::string& dir);

}  // namespace tie
