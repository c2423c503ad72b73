#include "tiestrength/normalize.hpp"

#include <algorithm>
#include <json.hpp>

namespace tie {

NormalizationParams fit_minmax(const std::vector<InteractionRecord>& records,
                               const ParameterManifest& manifest) {
  if (records.empty()) throw Error("fit_minmax: no records");
  NormalizationParams params;
  params.names = manifest.names();
  params.min = records.front().values;
  params.max = records.front().values;
  for (const auto& r : records) {
    if (r.values.size() != manifest.size())
      throw Error("fit_minmax: arity mismatch for (" + r.ego_id + ", " + r.friend_id + ")");
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      params.min[i] = std::min(params.min[i], r.values[i]);
      params.max[i] = std::max(params.max[i], r.values[i]);
    }
  }
  return params;
}

std::vector<double> apply_minmax(std::span<const double> values, const NormalizationParams& params) {
  if (values.size() != params.size())
    throw Error("apply_minmax: arity mismatch (" + std::to_string(values.size()) + " values, " +
                std::to_string(params.size()) + " parameters)");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double range = params.max[i] - params.min[i];
    if (range <= 0.0) {
      out[i] = 0.0;
      continue;
    }
    out[i] = std::clamp((values[i] - params.min[i]) / range, 0.0, 1.0);
  }
  return out;
}

std::string to_json(const NormalizationParams& params) {
  nlohmann::ordered_json doc;
  doc["parameters"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < params.size(); ++i)
    doc["parameters"].push_back({{"name", params.names[i]}, {"min", params.min[i]}, {"max", params.max[i]}});
  return doc.dump(2) + "\n";
}

NormalizationParams normalization_from_json(const std::string& text) {
  NormalizationParams params;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& p : doc.at("parameters")) {
      params.names.push_back(p.at("name").get<std::string>());
      params.min.push_back(p.at("min").get<double>());
      params.max.push_back(p.at("max").get<double>());
      if (params.min.back() > params.max.back())
        throw ConfigError("normalization: min > max for '" + params.names.back() + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("normalization.json: ") + e.what());
  }
  return params;
}

void check_params(const NormalizationParams& params, const ParameterManifest& manifest) {
  if (params.names != manifest.names())
    throw ConfigError("normalization parameters do not match the manifest");
}

}  // namespace tie
