#include "tiestrength/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include "tiestrength/ingest.hpp"
#include "tiestrength/io.hpp"
#include "tiestrength/rng.hpp"

namespace tie {
namespace {

std::string ego_name(int e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%04d", e);
  return buf;
}

std::string friend_name(int e, int f) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "e%04d-f%04d", e, f);
  return buf;
}

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::vector<RateSpec> SynthConfig::default_rate_map() {
  return {{"wall_post_comments", 12.0, 1.0}, {"wall_messages", 6.0, 1.0},
          {"tagged_together", 4.0, 1.0},     {"mutual_photo_by_ego", 5.0, 1.0},
          {"mutual_photo_by_other", 8.0, 1.0}, {"photo_comments", 10.0, 1.0},
          {"messages", 5000.0, 1.0}};
}

void SynthConfig::validate() const {
  if (n_egos < 1) throw ConfigError("synth: n_egos must be >= 1");
  if (friends_per_ego < 1) throw ConfigError("synth: friends_per_ego must be >= 1");
  if (pairs_per_ego < 0) throw ConfigError("synth: pairs_per_ego must be >= 0");
  if (!(cut_friend <= cut_best_friend) || !in_unit(cut_friend) || !in_unit(cut_best_friend))
    throw ConfigError("synth: subgroup cuts must be ordered and lie in [0,1]");
  if (!in_unit(close_friend_threshold)) throw ConfigError("synth: close-friend threshold outside [0,1]");
  for (double p : {pair_noise, undecided_fraction, unallocated_fraction, passive_fraction})
    if (!in_unit(p)) throw ConfigError("synth: probabilities must lie in [0,1]");
  if (!(passive_activity >= 0.0)) throw ConfigError("synth: passive_activity must be >= 0");
  for (const auto& r : rate_map)
    if (!(r.max_rate >= 0.0) || !(r.exponent > 0.0))
      throw ConfigError("synth: rate for '" + r.name + "' must be non-negative with positive exponent");
}

Subgroup subgroup_for(double closeness, const SynthConfig& config) {
  if (closeness > config.cut_best_friend) return Subgroup::kBestFriend;
  if (closeness > config.cut_friend) return Subgroup::kFriend;
  return Subgroup::kAcquaintance;
}

SynthData generate(const SynthConfig& config, const ParameterManifest& manifest) {
  config.validate();
  std::vector<RateSpec> rates(manifest.size());
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    rates[i] = {manifest[i].name, 10.0, 1.0};
    for (const auto& r : config.rate_map)
      if (r.name == manifest[i].name) rates[i] = r;
  }

  Rng rng(derive_seed(config.seed, {0x73796e7468ULL}));
  SynthData data;
  for (int e = 0; e < config.n_egos; ++e) {
    const std::string ego = ego_name(e);
    const bool passive = rng.bernoulli(config.passive_fraction);
    const double activity = passive ? config.passive_activity : 0.5 + rng.uniform();

    std::vector<double> closeness(config.friends_per_ego);
    for (int f = 0; f < config.friends_per_ego; ++f) {
      const double c = rng.uniform();
      closeness[f] = c;
      InteractionRecord rec{ego, friend_name(e, f), std::vector<double>(manifest.size(), 0.0)};
      for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (manifest[i].kind == ParameterKind::kBinary) {
          rec.values[i] = !passive && c > config.close_friend_threshold ? 1.0 : 0.0;
        } else {
          const double mean = rates[i].max_rate * activity * std::pow(c, rates[i].exponent);
          rec.values[i] = static_cast<double>(rng.poisson_like(mean));
        }
      }
      data.interactions.push_back(std::move(rec));
      data.ground_truth.push_back({ego, friend_name(e, f), c});
      const Subgroup group =
          rng.bernoulli(config.unallocated_fraction) ? Subgroup::kUnallocated : subgroup_for(c, config);
      data.classifications.push_back({ego, friend_name(e, f), group});
    }

    const long long n = config.friends_per_ego;
    const long long max_pairs = n * (n - 1) / 2;
    const int n_pairs = static_cast<int>(std::min<long long>(config.pairs_per_ego, max_pairs));
    std::set<std::pair<int, int>> used;
    while (static_cast<int>(used.size()) < n_pairs) {
      const int a = static_cast<int>(rng.index(n));
      const int b = static_cast<int>(rng.index(n));
      if (a == b || !used.emplace(std::min(a, b), std::max(a, b)).second) continue;
      Choice choice = closeness[a] >= closeness[b] ? Choice::kFirst : Choice::kSecond;
      if (rng.bernoulli(config.undecided_fraction)) {
        choice = Choice::kUndecided;
      } else if (rng.bernoulli(config.pair_noise)) {
        choice = choice == Choice::kFirst ? Choice::kSecond : Choice::kFirst;
      }
      data.pairs.push_back({ego, friend_name(e, a), friend_name(e, b), choice});
    }
  }
  return data;
}

std::string format_ground_truth(const std::vector<GroundTruth>& rows) {
  std::string out = csv_line({"ego_id", "friend_id", "closeness"});
  for (const auto& g : rows) out += csv_line({g.ego_id, g.friend_id, format_double(g.closeness)});
  return out;
}

void write_synth(const SynthData& data, const ParameterManifest& manifest, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path d(dir);
  write_file((d / "interactions.csv").string(), format_interactions(data.interactions, manifest));
  write_file((d / "classifications.csv").string(), format_classifications(data.classifications));
  write_file((d / "pairs.csv").string(), format_pairs(data.pairs));
  write_file((d / "ground_truth.csv").string(), format_ground_truth(data.ground_truth));
}

}  // namespace tie
