#include "tiestrength/survey.hpp"

#include <json.hpp>
#include <numeric>

namespace tie {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw Error("rational: denominator must be positive");
  if (num < 0) throw Error("rational: numerator must be non-negative");
  const std::int64_t g = std::gcd(num, den);
  return g ? Rational{num / g, den / g} : Rational{0, 1};
}

Rational compute_p(std::int64_t b, std::int64_t u, std::int64_t v) {
  if (u <= 0) throw Error("survey: u (total answers) must be positive");
  if (v <= 0) throw Error("survey: v (parameters per category) must be positive");
  if (b < 0 || b > u) throw Error("survey: b must lie in [0, u]");
  return make_rational(b, u * v);
}

std::vector<SurveyWeight> survey_weights(const SurveyTally& tally, const ParameterManifest& manifest) {
  std::map<std::string, const SurveyCategory*> categories;
  for (const auto& c : tally.categories)
    if (!categories.emplace(c.name, &c).second)
      throw ConfigError("survey: duplicate category '" + c.name + "'");

  std::map<std::string, std::int64_t> members;
  for (const auto& p : manifest.parameters()) {
    auto it = tally.category_of.find(p.name);
    if (it != tally.category_of.end()) ++members[it->second];
  }

  std::vector<SurveyWeight> out;
  for (const auto& p : manifest.parameters()) {
    SurveyWeight w;
    w.name = p.name;
    if (auto fixed = tally.fixed_p.find(p.name); fixed != tally.fixed_p.end()) {
      if (!(fixed->second >= 0.0 && fixed->second <= 1.0))
        throw ConfigError("survey: fixed p for '" + p.name + "' must lie in [0,1]");
      w.p = fixed->second;
    } else if (auto cat = tally.category_of.find(p.name); cat != tally.category_of.end()) {
      auto def = categories.find(cat->second);
      if (def == categories.end())
        throw ConfigError("survey: parameter '" + p.name + "' maps to unknown category '" +
                          cat->second + "'");
      const SurveyCategory& c = *def->second;
      w.category = c.name;
      w.b = c.b;
      w.u = c.u;
      w.v = c.v.value_or(members[c.name]);
      w.exact = compute_p(w.b, w.u, w.v);
      w.p = w.exact->value();
    } else {
      throw ConfigError("survey: parameter '" + p.name + "' has neither a category nor a fixed p");
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<double> survey_weight_vector(const SurveyTally& tally, const ParameterManifest& manifest) {
  std::vector<double> out;
  for (const auto& w : survey_weights(tally, manifest)) out.push_back(w.p);
  return out;
}

SurveyTally survey_from_json(const std::string& text) {
  SurveyTally tally;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& c : doc.at("categories")) {
      SurveyCategory cat;
      cat.name = c.at("name").get<std::string>();
      cat.b = c.at("b").get<std::int64_t>();
      cat.u = c.at("u").get<std::int64_t>();
      if (c.contains("v")) cat.v = c.at("v").get<std::int64_t>();
      tally.categories.push_back(std::move(cat));
    }
    for (const auto& [param, cat] : doc.at("parameters").items())
      tally.category_of[param] = cat.get<std::string>();
    if (doc.contains("fixed"))
      for (const auto& [param, p] : doc.at("fixed").items()) tally.fixed_p[param] = p.get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("survey.json: ") + e.what());
  }
  return tally;
}

std::string to_json(const SurveyTally& tally) {
  nlohmann::ordered_json doc;
  doc["categories"] = nlohmann::ordered_json::array();
  for (const auto& c : tally.categories) {
    nlohmann::ordered_json j{{"name", c.name}, {"b", c.b}, {"u", c.u}};
    if (c.v) j["v"] = *c.v;
    doc["categories"].push_back(std::move(j));
  }
  doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [param, cat] : tally.category_of) doc["parameters"][param] = cat;
  doc["fixed"] = nlohmann::ordered_json::object();
  for (const auto& [param, p] : tally.fixed_p) doc["fixed"][param] = p;
  return doc.dump(2) + "\n";
}

}  // namespace tie
