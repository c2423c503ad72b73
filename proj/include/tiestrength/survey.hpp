#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tiestrength/model.hpp"

namespace tie {

// Non-negative fraction in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

Rational make_rational(std::int64_t num, std::int64_t den);

// Share of respondents naming a category most important, split evenly over
// the v parameters of that category: b / (u * v).
Rational compute_p(std::int64_t b, std::int64_t u, std::int64_t v);

struct SurveyCategory {
  std::string name;
  std::int64_t b = 0;  // respondents choosing this category
  std::int64_t u = 0;  // total answers
  // Parameters sharing the category. Defaults to the number of manifest
  // parameters mapped to it.
  std::optional<std::int64_t> v;
};

struct SurveyTally {
  std::vector<SurveyCategory> categories;
  std::map<std::string, std::string> category_of;  // parameter -> category
  std::map<std::string, double> fixed_p;           // parameter -> override
};

struct SurveyWeight {
  std::string name;
  double p = 0.0;
  std::optional<Rational> exact;  // absent for fixed overrides
  std::string category;           // empty for fixed overrides
  std::int64_t b = 0, u = 0, v = 0;
};

std::vector<SurveyWeight> survey_weights(const SurveyTally& tally, const ParameterManifest& manifest);
std::vector<double> survey_weight_vector(const SurveyTally& tally, const ParameterManifest& manifest);

SurveyTally survey_from_json(const std::string& text);
std::string to_json(const SurveyTally& tally);

}  // namespace tie
