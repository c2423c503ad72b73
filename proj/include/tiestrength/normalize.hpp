#pragma once

#include <span>
#include <string>
#include <vector>

#include "tiestrength/model.hpp"

namespace tie {

// Per-parameter observed range, fitted on a (cleaned) interaction table.
struct NormalizationParams {
  std::vector<std::string> names;
  std::vector<double> min;
  std::vector<double> max;

  std::size_t size() const { return names.size(); }
  bool operator==(const NormalizationParams&) const = default;
};

NormalizationParams fit_minmax(const std::vector<InteractionRecord>& records,
                               const ParameterManifest& manifest);

// (x - min) / (max - min), clamped into [0,1]. A degenerate column
// (max == min) maps to 0.
std::vector<double> apply_minmax(std::span<const double> values, const NormalizationParams& params);

// normalization.json: {"parameters": [{"name", "min", "max"}, ...]}
std::string to_json(const NormalizationParams& params);
NormalizationParams normalization_from_json(const std::string& text);
void check_params(const NormalizationParams& params, const ParameterManifest& manifest);

}  // namespace tie
