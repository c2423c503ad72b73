#include "tiestrength/eval.hpp"

#include <cmath>
#include <json.hpp>
#include <unordered_map>

#include "tiestrength/io.hpp"
#include "tiestrength/scoring.hpp"

namespace tie {

std::string_view to_string(Prediction prediction) {
  switch (prediction) {
    case Prediction::kFirst: return "first";
    case Prediction::kSecond: return "second";
    case Prediction::kTie: return "tie";
  }
  return "tie";
}

Prediction predict_better_friend(double weight1, double weight2) {
  if (!std::isfinite(weight1) || !std::isfinite(weight2))
    throw Error("predict_better_friend: non-finite weight");
  if (weight1 > weight2) return Prediction::kFirst;
  if (weight2 > weight1) return Prediction::kSecond;
  return Prediction::kTie;
}

ResolvedPairs resolve_pairs(const std::vector<PairJudgment>& pairs,
                            const std::vector<InteractionRecord>& records,
                            const NormalizationParams& params) {
  std::unordered_map<std::string, const InteractionRecord*> index;
  index.reserve(records.size());
  for (const auto& r : records) index.emplace(r.ego_id + '\x1f' + r.friend_id, &r);

  ResolvedPairs out;
  std::string missing;
  std::size_t n_missing = 0;
  auto lookup = [&](const std::string& ego, const std::string& friend_id) -> std::vector<double> {
    auto it = index.find(ego + '\x1f' + friend_id);
    if (it == index.end()) {
      if (n_missing++ < 20) missing += " (" + ego + ", " + friend_id + ")";
      return {};
    }
    return apply_minmax(it->second->values, params);
  };
  for (const auto& p : pairs) {
    if (p.choice == Choice::kUndecided)
      throw Error("evaluate: undecided pair (" + p.ego_id + ", " + p.friend1_id + ", " +
                  p.friend2_id + ") must be dropped first");
    out.pairs.push_back(p);
    out.first.push_back(lookup(p.ego_id, p.friend1_id));
    out.second.push_back(lookup(p.ego_id, p.friend2_id));
  }
  if (n_missing)
    throw Error("evaluate: " + std::to_string(n_missing) + " missing feature rows:" + missing +
                (n_missing > 20 ? " ..." : ""));
  return out;
}

AccuracyReport evaluate(const ResolvedPairs& pairs, const WeightTable& table) {
  AccuracyReport report;
  report.total_pairs = pairs.size();
  report.ledger.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    LedgerRow row;
    row.pair = pairs.pairs[i];
    row.weight1 = friendship_weight(pairs.first[i], table);
    row.weight2 = friendship_weight(pairs.second[i], table);
    row.prediction = predict_better_friend(row.weight1, row.weight2);
    row.match = (row.prediction == Prediction::kFirst && row.pair.choice == Choice::kFirst) ||
                (row.prediction == Prediction::kSecond && row.pair.choice == Choice::kSecond);
    report.tie_pairs += row.prediction == Prediction::kTie;
    report.matches += row.match;
    report.ledger.push_back(std::move(row));
  }
  const std::size_t decided = report.total_pairs - report.tie_pairs;
  if (report.total_pairs)
    report.accuracy_full = static_cast<double>(report.matches) / static_cast<double>(report.total_pairs);
  if (decided)
    report.accuracy_excluding_ties = static_cast<double>(report.matches) / static_cast<double>(decided);
  return report;
}

AccuracyReport evaluate(const std::vector<PairJudgment>& pairs,
                        const std::vector<InteractionRecord>& records, const WeightTable& table,
                        const NormalizationParams& params) {
  return evaluate(resolve_pairs(pairs, records, params), table);
}

std::string to_json(const AccuracyReport& report) {
  nlohmann::ordered_json doc;
  doc["total_pairs"] = report.total_pairs;
  doc["tie_pairs"] = report.tie_pairs;
  doc["matches"] = report.matches;
  doc["accuracy_full"] = report.accuracy_full;
  doc["accuracy_excluding_ties"] = report.accuracy_excluding_ties;
  return doc.dump(2) + "\n";
}

std::string format_ledger(const AccuracyReport& report) {
  std::string out = csv_line({"ego_id", "friend1_id", "friend2_id", "weight1", "weight2",
                              "prediction", "stated", "match"});
  for (const auto& r : report.ledger)
    out += csv_line({r.pair.ego_id, r.pair.friend1_id, r.pair.friend2_id, format_double(r.weight1),
                     format_double(r.weight2), std::string(to_string(r.prediction)),
                     std::string(to_string(r.pair.choice)), r.match ? "true" : "false"});
  return out;
}

}  // namespace tie
