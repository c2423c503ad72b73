#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tiestrength/eval.hpp"
#include "tiestrength/reference_model.hpp"
#include "tiestrength/rng.hpp"
#include "tiestrength/scoring.hpp"
#include "tiestrength/survey.hpp"

namespace tie {
namespace {

WeightTable reference_table(Variant variant = Variant::kRFPK) {
  const auto manifest = reference::manifest();
  const auto p = survey_weight_vector(reference::survey_tally(), manifest);
  return assemble_weight_table(manifest.names(), reference::mean_decrease_accuracy(), p,
                               reference::k_values(), variant);
}

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform();
  return x;
}

TEST(Assemble, VariantConstraints) {
  const auto rf = reference_table(Variant::kRF);
  for (const auto& e : rf.entries) {
    EXPECT_EQ(e.p, 1.0);
    EXPECT_EQ(e.k, 1.0);
  }
  const auto rfp = reference_table(Variant::kRFP);
  for (const auto& e : rfp.entries) EXPECT_EQ(e.k, 1.0);
  EXPECT_NE(rfp.entries[6].p, 1.0);
  const auto full = reference_table();
  EXPECT_EQ(full.entries[6].k, 7.0);
  EXPECT_EQ(full.entries[6].importance, 138.42);
  EXPECT_EQ(full.entries[6].p, 88.0 / 139.0);
}

TEST(Assemble, ArityErrors) {
  const auto names = reference::manifest().names();
  const std::vector<double> short_vec(7, 1.0);
  const auto imp = reference::mean_decrease_accuracy();
  EXPECT_THROW(assemble_weight_table(names, short_vec, {}, {}, Variant::kRF), ConfigError);
  EXPECT_THROW(assemble_weight_table(names, imp, short_vec, {}, Variant::kRFP), ConfigError);
  EXPECT_THROW(assemble_weight_table(names, imp, {}, short_vec, Variant::kRFPK), ConfigError);
  std::vector<double> negative = imp;
  negative[0] = -1.0;
  EXPECT_THROW(assemble_weight_table(names, negative, {}, {}, Variant::kRF), ConfigError);
}

TEST(FriendshipWeight, WorkedExample) {
  const auto table = reference_table();
  const double b = friendship_weight(reference::example_friend_b(), table);
  const double c = friendship_weight(reference::example_friend_c(), table);
  EXPECT_NEAR(b, reference::kExampleWeightB, 0.02 * reference::kExampleWeightB);
  EXPECT_NEAR(c, reference::kExampleWeightC, 0.02 * reference::kExampleWeightC);
  EXPECT_EQ(predict_better_friend(b, c), Prediction::kFirst);
}

TEST(FriendshipWeight, ZeroVectorAndArity) {
  const auto table = reference_table();
  EXPECT_EQ(friendship_weight(std::vector<double>(8, 0.0), table), 0.0);
  EXPECT_THROW(friendship_weight(std::vector<double>(7, 0.0), table), Error);
}

TEST(FriendshipWeight, ManifestOrderSum) {
  const auto table = reference_table();
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = random_vector(rng, 8);
    double expected = 0.0;
    for (std::size_t i = 0; i < 8; ++i)
      expected += table.entries[i].importance * table.entries[i].p * table.entries[i].k * x[i];
    EXPECT_EQ(friendship_weight(x, table), expected);
  }
}

TEST(FriendshipWeight, Linearity) {
  const auto table = reference_table();
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_vector(rng, 8), y = random_vector(rng, 8);
    const double a = 0.5 * rng.uniform(), b = 0.5 * rng.uniform();
    std::vector<double> mix(8);
    for (std::size_t i = 0; i < 8; ++i) mix[i] = a * x[i] + b * y[i];
    const double lhs = friendship_weight(mix, table);
    const double rhs = a * friendship_weight(x, table) + b * friendship_weight(y, table);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(FriendshipWeight, Monotonicity) {
  const auto table = reference_table();
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_vector(rng, 8);
    const double before = friendship_weight(x, table);
    const auto i = rng.index(8);
    x[i] = x[i] + (1.0 - x[i]) * rng.uniform();
    EXPECT_GE(friendship_weight(x, table), before);
  }
}

TEST(FriendshipWeight, ArgmaxInvariance) {
  const auto table = reference_table();
  const auto big = scaled(table, 17.3);
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> friends;
    for (int f = 0; f < 12; ++f) friends.push_back(random_vector(rng, 8));
    auto order_under = [&](const WeightTable& t) {
      std::vector<double> w;
      for (const auto& x : friends) w.push_back(friendship_weight(x, t));
      std::vector<int> idx(friends.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return w[a] > w[b]; });
      return idx;
    };
    EXPECT_EQ(order_under(table), order_under(big));
  }
  EXPECT_THROW(scaled(table, 0.0), ConfigError);
}

TEST(FriendshipWeight, VariantCollapse) {
  const auto manifest = reference::manifest();
  const auto imp = reference::mean_decrease_accuracy();
  const auto p = survey_weight_vector(reference::survey_tally(), manifest);
  const std::vector<double> ones(8, 1.0);
  const auto eq6 = assemble_weight_table(manifest.names(), imp, p, ones, Variant::kRFPK);
  const auto eq5 = assemble_weight_table(manifest.names(), imp, p, {}, Variant::kRFP);
  const auto eq5_unit = assemble_weight_table(manifest.names(), imp, ones, {}, Variant::kRFP);
  const auto eq3 = assemble_weight_table(manifest.names(), imp, {}, {}, Variant::kRF);
  Rng rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = random_vector(rng, 8);
    EXPECT_EQ(friendship_weight(x, eq6), friendship_weight(x, eq5));
    EXPECT_EQ(friendship_weight(x, eq5_unit), friendship_weight(x, eq3));
  }
}

TEST(ScoreRecords, NormalizesThenWeighs) {
  const ParameterManifest manifest({{"a", ParameterKind::kCount}, {"flag", ParameterKind::kBinary}});
  const NormalizationParams params{{"a", "flag"}, {0, 0}, {10, 1}};
  const auto table = assemble_weight_table(manifest.names(), std::vector<double>{2.0, 3.0}, {}, {}, Variant::kRF);
  const std::vector<InteractionRecord> records{{"e1", "f1", {5, 1}}, {"e1", "f2", {20, 0}}};
  const auto scores = score_records(records, params, table);
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_EQ(scores[0].weight, 4.0);
  EXPECT_EQ(scores[1].weight, 2.0);
  EXPECT_EQ(format_scores(scores), "ego_id,friend_id,weight\ne1,f1,4\ne1,f2,2\n");
}

TEST(WeightsJson, RoundTrip) {
  const auto table = reference_table();
  const auto back = weight_table_from_json(to_json(table));
  EXPECT_EQ(back.variant, table.variant);
  ASSERT_EQ(back.entries.size(), table.entries.size());
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    EXPECT_EQ(back.entries[i].name, table.entries[i].name);
    EXPECT_EQ(back.entries[i].importance, table.entries[i].importance);
    EXPECT_EQ(back.entries[i].p, table.entries[i].p);
    EXPECT_EQ(back.entries[i].k, table.entries[i].k);
  }
  EXPECT_THROW(weight_table_from_json("{\"variant\":\"XX\",\"parameters\":[]}"), Error);
  EXPECT_THROW(weight_table_from_json(
                   "{\"variant\":\"RF\",\"parameters\":[{\"name\":\"a\",\"importance\":1,\"p\":0.5}]}"),
               ConfigError);
}

}  // namespace
}  // namespace tie
