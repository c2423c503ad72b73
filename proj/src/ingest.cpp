#include "tiestrength/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace tie {
namespace {

void expect_header(const std::vector<CsvRow>& rows, const CsvRow& expected,
                   const std::string& what) {
  if (rows.empty()) throw LoadError(what + ": missing header");
  if (rows[0] != expected) {
    std::string want;
    for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
    throw LoadError(what + ": header does not match, expected '" + want + "'");
  }
}

std::string at_row(std::size_t data_row) { return " row " + std::to_string(data_row); }

void expect_width(const CsvRow& row, std::size_t width, std::size_t data_row,
                  const std::string& what) {
  if (row.size() != width)
    throw LoadError(what + ": expected " + std::to_string(width) + " fields, got " +
                    std::to_string(row.size()) + " on" + at_row(data_row));
}

}  // namespace

std::vector<InteractionRecord> parse_interactions(std::string_view csv_text,
                                                  const ParameterManifest& manifest) {
  const auto rows = parse_csv(csv_text);
  CsvRow header{"ego_id", "friend_id"};
  for (const auto& p : manifest.parameters()) header.push_back(p.name);
  expect_header(rows, header, "interactions");

  std::vector<InteractionRecord> out;
  out.reserve(rows.size() - 1);
  std::unordered_set<std::string> keys;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    expect_width(row, header.size(), r, "interactions");
    InteractionRecord rec{row[0], row[1], {}};
    if (rec.ego_id.empty() || rec.friend_id.empty())
      throw LoadError("interactions: empty id on" + at_row(r));
    if (!keys.insert(rec.ego_id + '\n' + rec.friend_id).second)
      throw LoadError("interactions: duplicate (ego_id, friend_id) on" + at_row(r));
    rec.values.resize(manifest.size());
    for (std::size_t i = 0; i < manifest.size(); ++i) {
      const std::string& cell = row[i + 2];
      const std::string col = " column " + manifest[i].name;
      double v = 0.0;
      if (!parse_double(cell, v))
        throw LoadError("interactions: not a number '" + cell + "'" + at_row(r) + col);
      if (manifest[i].kind == ParameterKind::kBinary) {
        if (v != 0.0 && v != 1.0)
          throw LoadError("interactions: binary value out of {0,1}" + at_row(r) + col);
      } else if (v < 0.0) {
        throw LoadError("negative count" + at_row(r) + col);
      }
      rec.values[i] = v;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<InteractionRecord> load_interactions(const std::string& path,
                                                 const ParameterManifest& manifest) {
  try {
    return parse_interactions(read_file(path), manifest);
  } catch (const LoadError& e) {
    throw LoadError(path + ": " + e.what());
  }
}

std::vector<Classification> load_classifications(const std::string& path) {
  const auto rows = read_csv(path);
  expect_header(rows, {"ego_id", "friend_id", "subgroup"}, path);
  std::vector<Classification> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 3, r, path);
    try {
      out.push_back({rows[r][0], rows[r][1], parse_subgroup(rows[r][2])});
    } catch (const Error& e) {
      throw LoadError(path + ": " + e.what() + " on" + at_row(r));
    }
  }
  return out;
}

std::vector<PairJudgment> load_pairs(const std::string& path) {
  const auto rows = read_csv(path);
  expect_header(rows, {"ego_id", "friend1_id", "friend2_id", "choice"}, path);
  std::vector<PairJudgment> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 4, r, path);
    const auto& row = rows[r];
    if (row[1] == row[2]) throw LoadError(path + ": friend1_id equals friend2_id on" + at_row(r));
    try {
      out.push_back({row[0], row[1], row[2], parse_choice(row[3])});
    } catch (const Error& e) {
      throw LoadError(path + ": " + e.what() + " on" + at_row(r));
    }
  }
  return out;
}

std::string format_interactions(const std::vector<InteractionRecord>& records,
                                const ParameterManifest& manifest) {
  CsvRow header{"ego_id", "friend_id"};
  for (const auto& p : manifest.parameters()) header.push_back(p.name);
  std::string out = csv_line(header);
  for (const auto& r : records) {
    CsvRow row{r.ego_id, r.friend_id};
    for (double v : r.values) row.push_back(format_double(v));
    out += csv_line(row);
  }
  return out;
}

std::string format_classifications(const std::vector<Classification>& rows) {
  std::string out = csv_line({"ego_id", "friend_id", "subgroup"});
  for (const auto& c : rows) out += csv_line({c.ego_id, c.friend_id, std::string(to_string(c.subgroup))});
  return out;
}

std::string format_pairs(const std::vector<PairJudgment>& rows) {
  std::string out = csv_line({"ego_id", "friend1_id", "friend2_id", "choice"});
  for (const auto& p : rows)
    out += csv_line({p.ego_id, p.friend1_id, p.friend2_id, std::string(to_string(p.choice))});
  return out;
}

EgoSums sum_by_ego(const std::vector<InteractionRecord>& records) {
  EgoSums sums;
  for (const auto& r : records) {
    auto [it, inserted] = sums.try_emplace(r.ego_id, r.values.size(), 0.0);
    if (it->second.size() != r.values.size())
      throw Error("sum_by_ego: inconsistent arity for ego '" + r.ego_id + "'");
    for (std::size_t i = 0; i < r.values.size(); ++i) it->second[i] += r.values[i];
  }
  return sums;
}

bool is_passive(const std::vector<double>& sums, std::size_t message_index,
                const CleaningConfig& config) {
  if (!(sums[message_index] < config.message_threshold)) return false;
  for (std::size_t i = 0; i < sums.size(); ++i)
    if (i != message_index && !(sums[i] < config.other_threshold)) return false;
  return true;
}

CleaningResult clean_passive_users(const std::vector<InteractionRecord>& records,
                                   const ParameterManifest& manifest,
                                   const CleaningConfig& config) {
  const std::size_t msg = manifest.find(config.message_parameter);
  if (msg == manifest.size())
    throw ConfigError("cleaning: message parameter '" + config.message_parameter +
                      "' not in manifest");
  if (!(config.message_threshold >= 0.0) || !(config.other_threshold >= 0.0))
    throw ConfigError("cleaning: thresholds must be non-negative");

  const EgoSums sums = sum_by_ego(records);
  CleaningResult result;
  std::unordered_set<std::string> removed;
  for (const auto& r : records) {
    if (removed.count(r.ego_id)) continue;
    if (is_passive(sums.at(r.ego_id), msg, config)) {
      removed.insert(r.ego_id);
      result.removed_egos.push_back(r.ego_id);
    }
  }
  for (const auto& r : records)
    if (!removed.count(r.ego_id)) result.kept.push_back(r);
  return result;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("percentile of an empty list");
  if (!(q > 0.0 && q <= 100.0)) throw ConfigError("percentile q must lie in (0, 100]");
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(q / 100.0 * static_cast<double>(values.size()));
  const std::size_t index = rank < 1.0 ? 0 : static_cast<std::size_t>(rank) - 1;
  return values[std::min(index, values.size() - 1)];
}

std::vector<Classification> drop_unallocated(const std::vector<Classification>& rows) {
  std::vector<Classification> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [](const Classification& c) { return c.subgroup != Subgroup::kUnallocated; });
  return out;
}

std::vector<PairJudgment> drop_undecided(const std::vector<PairJudgment>& rows) {
  std::vector<PairJudgment> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [](const PairJudgment& p) { return p.choice != Choice::kUndecided; });
  return out;
}

std::vector<Classification> drop_egos(const std::vector<Classification>& rows,
                                      const std::set<std::string>& removed) {
  std::vector<Classification> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [&](const Classification& c) { return !removed.count(c.ego_id); });
  return out;
}

std::vector<PairJudgment> drop_egos(const std::vector<PairJudgment>& rows,
                                    const std::set<std::string>& removed) {
  std::vector<PairJudgment> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
               [&](const PairJudgment& p) { return !removed.count(p.ego_id); });
  return out;
}

}  // namespace tie
