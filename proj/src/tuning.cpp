#include "tiestrength/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "tiestrength/io.hpp"

namespace tie {
namespace {

std::size_t entry_index(const WeightTable& table, const std::string& parameter) {
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    if (table.entries[i].name == parameter) return i;
  throw ConfigError("tuning: parameter '" + parameter + "' not in weight table");
}

WeightTable with_k(const WeightTable& base, std::size_t index, double k) {
  WeightTable t = base;
  t.variant = Variant::kRFPK;
  t.entries[index].k = k;
  return t;
}

}  // namespace

AccuracyFn pair_accuracy(const ResolvedPairs& pairs) {
  return [&pairs](const WeightTable& table) { return evaluate(pairs, table).accuracy_excluding_ties; };
}

std::vector<double> default_k_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 100; ++k) grid.push_back(k);
  for (double k : {150.0, 200.0, 500.0, 1000.0}) grid.push_back(k);
  return grid;
}

std::vector<double> parse_k_grid(std::string_view text) {
  std::vector<double> grid;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    double a = 0.0, b = 0.0;
    if (colon == std::string::npos) {
      if (!parse_double(item, a)) throw ConfigError("k grid: bad value '" + item + "'");
      grid.push_back(a);
      continue;
    }
    if (!parse_double(item.substr(0, colon), a) || !parse_double(item.substr(colon + 1), b) ||
        a != std::floor(a) || b != std::floor(b) || a > b)
      throw ConfigError("k grid: bad range '" + item + "'");
    for (double k = a; k <= b; k += 1.0) grid.push_back(k);
  }
  return grid;
}

SweepResult sweep_k(const std::string& parameter, std::span<const double> k_values,
                    const WeightTable& base, const AccuracyFn& accuracy) {
  if (k_values.empty()) throw ConfigError("sweep_k: empty k grid");
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    if (!(k_values[i] >= 1.0) || !std::isfinite(k_values[i]))
      throw ConfigError("sweep_k: every k must be finite and >= 1");
    if (i && !(k_values[i] > k_values[i - 1]))
      throw ConfigError("sweep_k: k grid must be strictly ascending");
  }
  const std::size_t index = entry_index(base, parameter);

  SweepResult result;
  result.parameter = parameter;
  for (double k : k_values) result.curve.push_back({k, accuracy(with_k(base, index, k))});

  double best = result.curve.front().accuracy;
  result.chosen_k = result.curve.front().k;
  for (const auto& point : result.curve)
    if (point.accuracy > best) {
      best = point.accuracy;
      result.chosen_k = point.k;
    }
  const std::size_t n = result.curve.size();
  result.plateau_detected =
      n >= 3 && std::all_of(result.curve.end() - 3, result.curve.end(),
                            [best](const SweepPoint& p) { return p.accuracy == best; });
  return result;
}

SweepResult sweep_k(const std::string& parameter, std::span<const double> k_values,
                    const WeightTable& base, const ResolvedPairs& pairs) {
  return sweep_k(parameter, k_values, base, pair_accuracy(pairs));
}

TuningResult tune_all(const WeightTable& base, std::span<const double> k_grid, const AccuracyFn& accuracy) {
  TuningResult result;
  result.table = base;
  result.table.variant = Variant::kRFPK;
  for (auto& e : result.table.entries) e.k = 1.0;

  for (std::size_t i = 0; i < result.table.entries.size(); ++i) {
    const std::string& name = result.table.entries[i].name;
    SweepResult sweep = sweep_k(name, k_grid, result.table, accuracy);
    auto at_one = std::find_if(sweep.curve.begin(), sweep.curve.end(),
                               [](const SweepPoint& p) { return p.k == 1.0; });
    const double baseline = at_one != sweep.curve.end() ? at_one->accuracy
                                                        : accuracy(with_k(result.table, i, 1.0));
    double best = baseline;
    for (const auto& p : sweep.curve) best = std::max(best, p.accuracy);
    result.table.entries[i].k = best > baseline ? sweep.chosen_k : 1.0;
    result.sweeps.push_back(std::move(sweep));
  }
  return result;
}

TuningResult tune_all(const WeightTable& base, std::span<const double> k_grid, const ResolvedPairs& pairs) {
  return tune_all(base, k_grid, pair_accuracy(pairs));
}

std::string to_json(const TuningResult& result) {
  nlohmann::ordered_json doc;
  doc["sweep_order"] = nlohmann::ordered_json::array();
  for (const auto& s : result.sweeps) doc["sweep_order"].push_back(s.parameter);
  doc["plateau_rule"] = "last three sampled k reach the maximum (engine convention)";
  doc["selection_rule"] = "smallest k reaching the maximum ties-excluded accuracy";
  doc["parameters"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.sweeps.size(); ++i) {
    const auto& s = result.sweeps[i];
    nlohmann::ordered_json entry;
    entry["name"] = s.parameter;
    entry["chosen_k"] = s.chosen_k;
    entry["applied_k"] = result.table.entries[i].k;
    entry["plateau_detected"] = s.plateau_detected;
    entry["curve"] = nlohmann::ordered_json::array();
    for (const auto& p : s.curve) entry["curve"].push_back({{"k", p.k}, {"accuracy", p.accuracy}});
    doc["parameters"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace tie
