#pragma once

#include <span>
#include <string>
#include <vector>

#include "tiestrength/model.hpp"
#include "tiestrength/normalize.hpp"

namespace tie {

struct Score {
  std::string ego_id;
  std::string friend_id;
  double weight = 0.0;
};

// Builds a table for `variant`. LR and RF ignore `p` and `k` and use 1;
// RF_P ignores `k`. Empty `p`/`k` spans mean "all ones".
WeightTable assemble_weight_table(const std::vector<std::string>& names,
                                  std::span<const double> importances, std::span<const double> p,
                                  std::span<const double> k, Variant variant);

// Sum of importance * p * k * x over parameters, accumulated in manifest
// order.
double friendship_weight(std::span<const double> x_norm, const WeightTable& table);

std::vector<Score> score_records(const std::vector<InteractionRecord>& records,
                                 const NormalizationParams& params, const WeightTable& table);

// Same table with every importance multiplied by `factor` (> 0).
WeightTable scaled(const WeightTable& table, double factor);

// weights.json: {"variant": "...", "parameters": [{"name", "importance", "p", "k"}]}
std::string to_json(const WeightTable& table);
WeightTable weight_table_from_json(const std::string& text);

std::string format_scores(const std::vector<Score>& scores);

}  // namespace tie
