#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tie {

// Base for every error the library raises. Stage-specific errors derive from
// it so the CLI can report them uniformly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ParameterKind { kCount, kBinary };

std::string_view to_string(ParameterKind kind);
ParameterKind parse_parameter_kind(std::string_view text);

struct ParameterDef {
  std::string name;
  ParameterKind kind = ParameterKind::kCount;

  bool operator==(const ParameterDef&) const = default;
};

// Ordered list of interaction parameters. The order is the column order of
// every table, vector and weight file downstream.
class ParameterManifest {
 public:
  explicit ParameterManifest(std::vector<ParameterDef> parameters);

  const std::vector<ParameterDef>& parameters() const { return parameters_; }
  std::size_t size() const { return parameters_.size(); }
  const ParameterDef& operator[](std::size_t i) const { return parameters_[i]; }

  // Index of `name`, or size() when absent.
  std::size_t find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws ConfigError
  std::vector<std::string> names() const;

  bool operator==(const ParameterManifest&) const = default;

 private:
  std::vector<ParameterDef> parameters_;
};

// Manifest text format: one parameter per line, "<name> <count|binary>".
// Blank lines and lines starting with '#' are ignored.
ParameterManifest parse_manifest(std::string_view text);
std::string format_manifest(const ParameterManifest& manifest);
ParameterManifest load_manifest(const std::string& path);
void save_manifest(const ParameterManifest& manifest, const std::string& path);

struct InteractionRecord {
  std::string ego_id;
  std::string friend_id;
  std::vector<double> values;

  bool operator==(const InteractionRecord&) const = default;
};

enum class Subgroup { kBestFriend, kFriend, kAcquaintance, kUnallocated };

std::string_view to_string(Subgroup subgroup);
Subgroup parse_subgroup(std::string_view text);

// Ordinal target used for regression: acquaintance=1, friend=2, best_friend=3.
int ordinal_code(Subgroup subgroup);

struct Classification {
  std::string ego_id;
  std::string friend_id;
  Subgroup subgroup = Subgroup::kUnallocated;

  bool operator==(const Classification&) const = default;
};

enum class Choice { kFirst, kSecond, kUndecided };

std::string_view to_string(Choice choice);
Choice parse_choice(std::string_view text);

struct PairJudgment {
  std::string ego_id;
  std::string friend1_id;
  std::string friend2_id;
  Choice choice = Choice::kUndecided;

  bool operator==(const PairJudgment&) const = default;
};

enum class Variant { kLR, kRF, kRFP, kRFPK };

// Canonical names are "LR", "RF", "RF_P", "RF_P_K"; the CLI spellings
// "lr", "rf", "rf-p", "rf-p-k" are accepted by the parser as well.
std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

struct WeightEntry {
  std::string name;
  double importance = 0.0;
  double p = 1.0;
  double k = 1.0;

  bool operator==(const WeightEntry&) const = default;
};

// One entry per manifest parameter, in manifest order. Fully determines a
// scoring model.
struct WeightTable {
  Variant variant = Variant::kRF;
  std::vector<WeightEntry> entries;

  std::size_t size() const { return entries.size(); }
  // importance * p * k per parameter.
  std::vector<double> combined() const;

  bool operator==(const WeightTable&) const = default;
};

// Throws ConfigError when the table breaks an invariant (negative
// importance, p outside [0,1], k < 1, variant constraints, names not matching
// the manifest when one is given).
void check_weight_table(const WeightTable& table);
void check_weight_table(const WeightTable& table, const ParameterManifest& manifest);

struct Violation {
  std::size_t row = 0;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

ValidationReport validate_table(const std::vector<InteractionRecord>& records,
                                const ParameterManifest& manifest);

}  // namespace tie
