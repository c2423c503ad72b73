#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "test_util.hpp"
#include "tiestrength/eval.hpp"
#include "tiestrength/ingest.hpp"
#include "tiestrength/io.hpp"
#include "tiestrength/normalize.hpp"
#include "tiestrength/reference_model.hpp"
#include "tiestrength/scoring.hpp"
#include "tiestrength/synth.hpp"

namespace tie {
namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxx > 0 && syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
}

TEST(Synth, SameSeedByteIdenticalFiles) {
  const auto manifest = reference::manifest();
  SynthConfig c;
  c.seed = 42;
  testing::TempDir a("synth-a"), b("synth-b");
  write_synth(generate(c, manifest), manifest, a.str());
  write_synth(generate(c, manifest), manifest, b.str());
  for (const char* name : {"interactions.csv", "classifications.csv", "pairs.csv", "ground_truth.csv"})
    EXPECT_EQ(read_file(a / name), read_file(b / name)) << name;
  c.seed = 43;
  EXPECT_NE(format_interactions(generate(c, manifest).interactions, manifest), read_file(a / "interactions.csv"));
}

TEST(Synth, NoiselessChoicesFollowCloseness) {
  SynthConfig c;
  c.pair_noise = 0.0;
  const auto data = generate(c, reference::manifest());
  std::map<std::string, double> closeness;
  for (const auto& g : data.ground_truth) closeness[g.friend_id] = g.closeness;
  std::size_t decided = 0;
  for (const auto& p : data.pairs) {
    if (p.choice == Choice::kUndecided) continue;
    ++decided;
    EXPECT_EQ(p.choice == Choice::kFirst, closeness[p.friend1_id] >= closeness[p.friend2_id]);
  }
  EXPECT_GT(decided, 0u);
}

TEST(Synth, MessagesCorrelateMostWithCloseness) {
  const auto manifest = reference::manifest();
  const auto data = generate(SynthConfig{}, manifest);
  ASSERT_EQ(data.interactions.size(), 50u * 30u);
  std::vector<double> c;
  for (const auto& g : data.ground_truth) c.push_back(g.closeness);
  std::vector<double> rho;
  for (std::size_t j = 0; j < manifest.size(); ++j) {
    std::vector<double> col;
    for (const auto& r : data.interactions) col.push_back(r.values[j]);
    rho.push_back(spearman(col, c));
  }
  const std::size_t messages = manifest.index_of("messages");
  for (std::size_t j = 0; j < rho.size(); ++j)
    if (j != messages) EXPECT_GT(rho[messages], rho[j]) << manifest.names()[j];
}

TEST(Synth, OutputPassesLoadersAndValidation) {
  const auto manifest = reference::manifest();
  SynthConfig c;
  c.seed = 9;
  const auto data = generate(c, manifest);
  EXPECT_TRUE(validate_table(data.interactions, manifest).ok);
  testing::TempDir dir("synth-load");
  write_synth(data, manifest, dir.str());
  EXPECT_EQ(load_interactions(dir / "interactions.csv", manifest), data.interactions);
  EXPECT_EQ(load_classifications(dir / "classifications.csv"), data.classifications);
  EXPECT_EQ(load_pairs(dir / "pairs.csv"), data.pairs);
}

TEST(Synth, SubgroupsFollowCuts) {
  SynthConfig c;
  c.unallocated_fraction = 0.0;
  const auto data = generate(c, reference::manifest());
  for (std::size_t i = 0; i < data.ground_truth.size(); ++i)
    EXPECT_EQ(data.classifications[i].subgroup, subgroup_for(data.ground_truth[i].closeness, c));
  EXPECT_EQ(subgroup_for(0.5, c), Subgroup::kAcquaintance);
  EXPECT_EQ(subgroup_for(0.51, c), Subgroup::kFriend);
  EXPECT_EQ(subgroup_for(0.8, c), Subgroup::kFriend);
  EXPECT_EQ(subgroup_for(0.81, c), Subgroup::kBestFriend);
}

TEST(Synth, ConfigErrors) {
  const auto manifest = reference::manifest();
  SynthConfig c;
  c.n_egos = 0;
  EXPECT_THROW(generate(c, manifest), ConfigError);
  c = SynthConfig{};
  c.friends_per_ego = 0;
  EXPECT_THROW(generate(c, manifest), ConfigError);
  c = SynthConfig{};
  c.cut_friend = 0.9;
  c.cut_best_friend = 0.2;
  EXPECT_THROW(generate(c, manifest), ConfigError);
  c = SynthConfig{};
  c.pair_noise = 1.5;
  EXPECT_THROW(generate(c, manifest), ConfigError);
}

TEST(Synth, PairsAreDistinctSameEgoFriends) {
  const auto data = generate(SynthConfig{}, reference::manifest());
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& p : data.pairs) {
    EXPECT_NE(p.friend1_id, p.friend2_id);
    EXPECT_EQ(p.friend1_id.substr(0, 5), p.ego_id);
    EXPECT_EQ(p.friend2_id.substr(0, 5), p.ego_id);
    const auto key = std::min(p.friend1_id, p.friend2_id) + "|" + std::max(p.friend1_id, p.friend2_id);
    EXPECT_TRUE(seen.emplace(p.ego_id, key, "").second);
  }
  EXPECT_EQ(data.pairs.size(), 50u * 10u);
}

TEST(Synth, MessagesAloneRankNoiselessPairs) {
  const auto manifest = reference::manifest();
  SynthConfig c;
  c.pair_noise = 0.0;
  const auto data = generate(c, manifest);
  const auto params = fit_minmax(data.interactions, manifest);
  std::vector<double> only_messages(manifest.size(), 0.0);
  only_messages[manifest.index_of("messages")] = 1.0;
  const auto table = assemble_weight_table(manifest.names(), only_messages, {}, {}, Variant::kRF);
  const auto report = evaluate(drop_undecided(data.pairs), data.interactions, table, params);
  EXPECT_GE(report.accuracy_excluding_ties, 0.9);
}

}  // namespace
}  // namespace tie
