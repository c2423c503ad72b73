#include "tiestrength/scoring.hpp"

#include <json.hpp>

#include "tiestrength/io.hpp"

namespace tie {

WeightTable assemble_weight_table(const std::vector<std::string>& names,
                                  std::span<const double> importances, std::span<const double> p,
                                  std::span<const double> k, Variant variant) {
  const std::size_t n = names.size();
  auto check = [n](std::span<const double> v, const char* what) {
    if (!v.empty() && v.size() != n)
      throw ConfigError(std::string("assemble: ") + what + " has " + std::to_string(v.size()) +
                        " entries, expected " + std::to_string(n));
  };
  if (importances.size() != n)
    throw ConfigError("assemble: importances have " + std::to_string(importances.size()) +
                      " entries, expected " + std::to_string(n));
  check(p, "p vector");
  check(k, "k vector");
  const bool use_p = variant == Variant::kRFP || variant == Variant::kRFPK;
  const bool use_k = variant == Variant::kRFPK;

  WeightTable table;
  table.variant = variant;
  for (std::size_t i = 0; i < n; ++i) {
    WeightEntry e;
    e.name = names[i];
    e.importance = importances[i];
    e.p = use_p && !p.empty() ? p[i] : 1.0;
    e.k = use_k && !k.empty() ? k[i] : 1.0;
    table.entries.push_back(std::move(e));
  }
  check_weight_table(table);
  return table;
}

double friendship_weight(std::span<const double> x_norm, const WeightTable& table) {
  if (x_norm.size() != table.size())
    throw Error("friendship_weight: " + std::to_string(x_norm.size()) + " values for " +
                std::to_string(table.size()) + " parameters");
  double weight = 0.0;
  for (std::size_t i = 0; i < x_norm.size(); ++i) {
    const auto& e = table.entries[i];
    weight += e.importance * e.p * e.k * x_norm[i];
  }
  return weight;
}

std::vector<Score> score_records(const std::vector<InteractionRecord>& records,
                                 const NormalizationParams& params, const WeightTable& table) {
  std::vector<Score> out;
  out.reserve(records.size());
  for (const auto& r : records)
    out.push_back({r.ego_id, r.friend_id, friendship_weight(apply_minmax(r.values, params), table)});
  return out;
}

WeightTable scaled(const WeightTable& table, double factor) {
  if (!(factor > 0.0)) throw ConfigError("scale factor must be positive");
  WeightTable out = table;
  for (auto& e : out.entries) e.importance *= factor;
  return out;
}

std::string to_json(const WeightTable& table) {
  nlohmann::ordered_json doc;
  doc["variant"] = std::string(to_string(table.variant));
  doc["parameters"] = nlohmann::ordered_json::array();
  for (const auto& e : table.entries)
    doc["parameters"].push_back({{"name", e.name}, {"importance", e.importance}, {"p", e.p}, {"k", e.k}});
  return doc.dump(2) + "\n";
}

WeightTable weight_table_from_json(const std::string& text) {
  WeightTable table;
  try {
    const auto doc = nlohmann::json::parse(text);
    table.variant = parse_variant(doc.at("variant").get<std::string>());
    for (const auto& p : doc.at("parameters"))
      table.entries.push_back({p.at("name").get<std::string>(), p.at("importance").get<double>(),
                               p.value("p", 1.0), p.value("k", 1.0)});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("weights.json: ") + e.what());
  }
  check_weight_table(table);
  return table;
}

std::string format_scores(const std::vector<Score>& scores) {
  std::string out = csv_line({"ego_id", "friend_id", "weight"});
  for (const auto& s : scores) out += csv_line({s.ego_id, s.friend_id, format_double(s.weight)});
  return out;
}

}  // namespace tie
