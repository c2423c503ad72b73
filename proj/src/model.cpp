#include "tiestrength/model.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace tie {

std::string_view to_string(ParameterKind kind) {
  return kind == ParameterKind::kBinary ? "binary" : "count";
}

ParameterKind parse_parameter_kind(std::string_view text) {
  if (text == "count") return ParameterKind::kCount;
  if (text == "binary") return ParameterKind::kBinary;
  throw ConfigError("unknown parameter kind '" + std::string(text) + "'");
}

ParameterManifest::ParameterManifest(std::vector<ParameterDef> parameters)
    : parameters_(std::move(parameters)) {
  if (parameters_.empty()) throw ConfigError("manifest has no parameters");
  std::set<std::string> seen;
  for (const auto& p : parameters_) {
    if (p.name.empty()) throw ConfigError("manifest parameter with empty name");
    if (p.name == "ego_id" || p.name == "friend_id")
      throw ConfigError("manifest parameter name '" + p.name + "' is reserved");
    if (!seen.insert(p.name).second)
      throw ConfigError("duplicate manifest parameter '" + p.name + "'");
  }
}

std::size_t ParameterManifest::find(std::string_view name) const {
  for (std::size_t i = 0; i < parameters_.size(); ++i)
    if (parameters_[i].name == name) return i;
  return parameters_.size();
}

std::size_t ParameterManifest::index_of(std::string_view name) const {
  std::size_t i = find(name);
  if (i == size()) throw ConfigError("parameter '" + std::string(name) + "' not in manifest");
  return i;
}

std::vector<std::string> ParameterManifest::names() const {
  std::vector<std::string> out;
  out.reserve(parameters_.size());
  for (const auto& p : parameters_) out.push_back(p.name);
  return out;
}

ParameterManifest parse_manifest(std::string_view text) {
  std::vector<ParameterDef> defs;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string name, kind, extra;
    if (!(fields >> name) || name[0] == '#') continue;
    if (!(fields >> kind))
      throw ConfigError("manifest line " + std::to_string(line_no) + ": missing kind");
    if (fields >> extra && extra[0] != '#')
      throw ConfigError("manifest line " + std::to_string(line_no) + ": trailing text");
    defs.push_back({name, parse_parameter_kind(kind)});
  }
  return ParameterManifest(std::move(defs));
}

std::string format_manifest(const ParameterManifest& manifest) {
  std::string out;
  for (const auto& p : manifest.parameters()) {
    out += p.name;
    out += ' ';
    out += to_string(p.kind);
    out += '\n';
  }
  return out;
}

ParameterManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

void save_manifest(const ParameterManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << format_manifest(manifest);
}

std::string_view to_string(Subgroup subgroup) {
  switch (subgroup) {
    case Subgroup::kBestFriend: return "best_friend";
    case Subgroup::kFriend: return "friend";
    case Subgroup::kAcquaintance: return "acquaintance";
    case Subgroup::kUnallocated: return "unallocated";
  }
  return "unallocated";
}

Subgroup parse_subgroup(std::string_view text) {
  if (text == "best_friend") return Subgroup::kBestFriend;
  if (text == "friend") return Subgroup::kFriend;
  if (text == "acquaintance") return Subgroup::kAcquaintance;
  if (text == "unallocated") return Subgroup::kUnallocated;
  throw Error("unknown subgroup '" + std::string(text) + "'");
}

int ordinal_code(Subgroup subgroup) {
  switch (subgroup) {
    case Subgroup::kAcquaintance: return 1;
    case Subgroup::kFriend: return 2;
    case Subgroup::kBestFriend: return 3;
    case Subgroup::kUnallocated: break;
  }
  throw Error("unallocated subgroup has no ordinal code");
}

std::string_view to_string(Choice choice) {
  switch (choice) {
    case Choice::kFirst: return "first";
    case Choice::kSecond: return "second";
    case Choice::kUndecided: return "undecided";
  }
  return "undecided";
}

Choice parse_choice(std::string_view text) {
  if (text == "first") return Choice::kFirst;
  if (text == "second") return Choice::kSecond;
  if (text == "undecided") return Choice::kUndecided;
  throw Error("unknown choice '" + std::string(text) + "'");
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::kLR: return "LR";
    case Variant::kRF: return "RF";
    case Variant::kRFP: return "RF_P";
    case Variant::kRFPK: return "RF_P_K";
  }
  return "RF";
}

Variant parse_variant(std::string_view text) {
  if (text == "LR" || text == "lr") return Variant::kLR;
  if (text == "RF" || text == "rf") return Variant::kRF;
  if (text == "RF_P" || text == "rf-p") return Variant::kRFP;
  if (text == "RF_P_K" || text == "rf-p-k") return Variant::kRFPK;
  throw ConfigError("unknown variant '" + std::string(text) + "'");
}

std::vector<double> WeightTable::combined() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.importance * e.p * e.k);
  return out;
}

void check_weight_table(const WeightTable& table) {
  if (table.entries.empty()) throw ConfigError("weight table is empty");
  for (const auto& e : table.entries) {
    const std::string where = " for parameter '" + e.name + "'";
    if (!std::isfinite(e.importance) || e.importance < 0.0)
      throw ConfigError("importance must be finite and non-negative" + where);
    if (!(e.p >= 0.0 && e.p <= 1.0)) throw ConfigError("p must lie in [0,1]" + where);
    if (!std::isfinite(e.k) || e.k < 1.0) throw ConfigError("k must be >= 1" + where);
    const bool p_forced = table.variant == Variant::kLR || table.variant == Variant::kRF;
    const bool k_forced = table.variant != Variant::kRFPK;
    if (p_forced && e.p != 1.0)
      throw ConfigError("variant " + std::string(to_string(table.variant)) + " requires p = 1" + where);
    if (k_forced && e.k != 1.0)
      throw ConfigError("variant " + std::string(to_string(table.variant)) + " requires k = 1" + where);
  }
}

void check_weight_table(const WeightTable& table, const ParameterManifest& manifest) {
  if (table.size() != manifest.size())
    throw ConfigError("weight table has " + std::to_string(table.size()) +
                      " entries but manifest has " + std::to_string(manifest.size()));
  for (std::size_t i = 0; i < manifest.size(); ++i)
    if (table.entries[i].name != manifest[i].name)
      throw ConfigError("weight table entry " + std::to_string(i) + " is '" + table.entries[i].name +
                        "', manifest expects '" + manifest[i].name + "'");
  check_weight_table(table);
}

ValidationReport validate_table(const std::vector<InteractionRecord>& records,
                                const ParameterManifest& manifest) {
  ValidationReport report;
  std::set<std::pair<std::string, std::string>> keys;
  auto add = [&](std::size_t row, std::string msg) {
    report.violations.push_back({row, std::move(msg)});
  };
  for (std::size_t row = 0; row < records.size(); ++row) {
    const auto& r = records[row];
    const std::string at = " at row " + std::to_string(row);
    if (!keys.emplace(r.ego_id, r.friend_id).second)
      add(row, "duplicate (ego_id, friend_id)" + at);
    if (r.values.size() != manifest.size()) {
      add(row, "arity mismatch" + at);
      continue;
    }
    for (std::size_t i = 0; i < manifest.size(); ++i) {
      const double v = r.values[i];
      const std::string col = " in column " + manifest[i].name;
      if (!std::isfinite(v)) {
        add(row, "non-finite value" + at + col);
      } else if (manifest[i].kind == ParameterKind::kBinary) {
        if (v != 0.0 && v != 1.0) add(row, "binary out of range" + at + col);
      } else if (v < 0.0) {
        add(row, "negative count" + at + col);
      }
    }
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace tie
