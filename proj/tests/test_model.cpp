#include <gtest/gtest.h>

#include "tiestrength/ingest.hpp"
#include "tiestrength/model.hpp"
#include "tiestrength/reference_model.hpp"
#include "tiestrength/rng.hpp"

namespace tie {
namespace {

ParameterManifest small_manifest() {
  return ParameterManifest({{"a", ParameterKind::kCount}, {"flag", ParameterKind::kBinary}});
}

TEST(Manifest, RejectsDuplicateAndEmptyNames) {
  EXPECT_THROW(ParameterManifest({}), ConfigError);
  EXPECT_THROW(ParameterManifest({{"a", ParameterKind::kCount}, {"a", ParameterKind::kBinary}}), ConfigError);
  EXPECT_THROW(ParameterManifest({{"", ParameterKind::kCount}}), ConfigError);
}

TEST(Manifest, ParsesTextFormat) {
  const auto m = parse_manifest("# header\nmessages count\n\nclose_friend binary  # trailing\n");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].name, "messages");
  EXPECT_EQ(m[1].kind, ParameterKind::kBinary);
  EXPECT_EQ(parse_manifest(format_manifest(m)), m);
  EXPECT_THROW(parse_manifest("x counter\n"), ConfigError);
  EXPECT_THROW(parse_manifest("x\n"), ConfigError);
}

TEST(Manifest, ReferenceHasEightParameters) {
  const auto m = reference::manifest();
  EXPECT_EQ(m.size(), 8u);
  EXPECT_EQ(m.index_of("messages"), 6u);
  EXPECT_EQ(m[7].kind, ParameterKind::kBinary);
}

TEST(ValidateTable, EmptyIsOk) {
  const auto report = validate_table({}, reference::manifest());
  EXPECT_TRUE(report.ok);
  EXPECT_TRUE(report.violations.empty());
}

TEST(ValidateTable, ArityMismatch) {
  std::vector<InteractionRecord> rows{{"A", "B", std::vector<double>(7, 0.0)}};
  const auto report = validate_table(rows, reference::manifest());
  ASSERT_FALSE(report.ok);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].row, 0u);
  EXPECT_EQ(report.violations[0].message, "arity mismatch at row 0");
}

TEST(ValidateTable, BinaryOutOfRangeAndNegativeCount) {
  std::vector<InteractionRecord> rows{{"A", "B", {1, 2}}, {"A", "C", {-1, 0}}, {"A", "B", {0, 0}}};
  const auto report = validate_table(rows, small_manifest());
  ASSERT_EQ(report.violations.size(), 3u);
  EXPECT_NE(report.violations[0].message.find("binary out of range"), std::string::npos);
  EXPECT_EQ(report.violations[1].row, 1u);
  EXPECT_NE(report.violations[1].message.find("negative count"), std::string::npos);
  EXPECT_NE(report.violations[2].message.find("duplicate"), std::string::npos);
}

TEST(ValidateTable, PureAndSerializationRoundTrip) {
  Rng rng(7);
  const auto m = reference::manifest();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<InteractionRecord> rows;
    const int n = static_cast<int>(rng.index(15));
    for (int r = 0; r < n; ++r) {
      InteractionRecord rec{"ego" + std::to_string(rng.index(3)), "f\"," + std::to_string(r), {}};
      for (std::size_t i = 0; i < m.size(); ++i)
        rec.values.push_back(m[i].kind == ParameterKind::kBinary ? static_cast<double>(rng.index(2))
                                                                 : static_cast<double>(rng.index(5000)) / 7.0);
      rows.push_back(rec);
    }
    const auto a = validate_table(rows, m);
    const auto b = validate_table(rows, m);
    EXPECT_TRUE(a.ok);
    EXPECT_EQ(a.violations.size(), b.violations.size());
    EXPECT_EQ(parse_interactions(format_interactions(rows, m), m), rows);
  }
}

TEST(WeightTable, VariantConstraints) {
  WeightTable t{Variant::kRF, {{"a", 1.0, 0.5, 1.0}}};
  EXPECT_THROW(check_weight_table(t), ConfigError);
  t.variant = Variant::kRFP;
  EXPECT_NO_THROW(check_weight_table(t));
  t.entries[0].k = 2.0;
  EXPECT_THROW(check_weight_table(t), ConfigError);
  t.variant = Variant::kRFPK;
  EXPECT_NO_THROW(check_weight_table(t));
  t.entries[0].k = 0.5;
  EXPECT_THROW(check_weight_table(t), ConfigError);
}

TEST(Enums, ParseRoundTrip) {
  for (auto s : {Subgroup::kBestFriend, Subgroup::kFriend, Subgroup::kAcquaintance, Subgroup::kUnallocated})
    EXPECT_EQ(parse_subgroup(to_string(s)), s);
  for (auto c : {Choice::kFirst, Choice::kSecond, Choice::kUndecided}) EXPECT_EQ(parse_choice(to_string(c)), c);
  for (auto v : {Variant::kLR, Variant::kRF, Variant::kRFP, Variant::kRFPK}) EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_EQ(parse_variant("rf-p-k"), Variant::kRFPK);
  EXPECT_THROW(parse_subgroup("enemy"), Error);
  EXPECT_EQ(ordinal_code(Subgroup::kAcquaintance), 1);
  EXPECT_EQ(ordinal_code(Subgroup::kBestFriend), 3);
}

}  // namespace
}  // namespace tie
