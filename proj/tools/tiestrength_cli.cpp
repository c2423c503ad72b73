// Command line driver for the tie-strength pipeline. Each subcommand is one
// stage; stages exchange data only through the files in --in / --out.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "tiestrength/io.hpp"
#include "tiestrength/pipeline.hpp"

namespace {

using namespace tie;

struct Flags {
  std::optional<std::string> manifest;
  std::string in = ".";
  std::string out;
  std::uint64_t seed = 1;

  std::string output() const { return out.empty() ? in : out; }
};

void add_io(CLI::App* cmd, Flags& flags, bool needs_in = true) {
  cmd->add_option("--manifest", flags.manifest, "Parameter manifest (default: <in>/manifest.txt, else built-in)");
  if (needs_in) cmd->add_option("--in", flags.in, "Input directory")->capture_default_str();
  cmd->add_option("--out", flags.out, "Output directory (default: --in)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Friendship-intensity scoring from online interaction counts"};
  app.require_subcommand(1);
  Flags flags;

  // synth
  SynthConfig synth_cfg;
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic dataset");
  add_io(synth, flags, false);
  synth->add_option("--seed", flags.seed, "Run seed")->capture_default_str();
  synth->add_option("--egos", synth_cfg.n_egos, "Number of ego users")->capture_default_str();
  synth->add_option("--friends", synth_cfg.friends_per_ego, "Friends per ego")->capture_default_str();
  synth->add_option("--pairs-per-ego", synth_cfg.pairs_per_ego, "Pair judgments per ego")->capture_default_str();
  synth->add_option("--noise", synth_cfg.pair_noise, "Probability a stated choice is flipped")->capture_default_str();
  synth->add_option("--passive", synth_cfg.passive_fraction, "Share of passive egos")->capture_default_str();

  // clean
  CleaningConfig clean_cfg;
  auto* clean = app.add_subcommand("clean", "Drop passive egos, unallocated friends and undecided pairs");
  add_io(clean, flags);
  clean->add_option("--message-threshold", clean_cfg.message_threshold)->capture_default_str();
  clean->add_option("--other-threshold", clean_cfg.other_threshold)->capture_default_str();
  clean->add_option("--message-parameter", clean_cfg.message_parameter)->capture_default_str();
  clean->add_option("--percentile", clean_cfg.percentile_q, "Diagnostic percentile of per-ego sums")
      ->capture_default_str();

  auto* fit = app.add_subcommand("fit", "Fit min-max normalization");
  add_io(fit, flags);

  auto* train_lr = app.add_subcommand("train-lr", "Linear regression |t| importances");
  add_io(train_lr, flags);

  ForestConfig forest_cfg;
  int mtry = 0;
  int max_depth = 0;
  std::string scaling = "z";
  bool dump_forest = false;
  auto* train_rf = app.add_subcommand("train-rf", "Random forest permutation importances");
  add_io(train_rf, flags);
  train_rf->add_option("--seed", flags.seed, "Run seed")->capture_default_str();
  train_rf->add_option("--trees", forest_cfg.n_trees, "Number of trees")->capture_default_str();
  train_rf->add_option("--mtry", mtry, "Features tried per split (default floor(sqrt(p)))");
  train_rf->add_option("--min-leaf", forest_cfg.min_leaf_size)->capture_default_str();
  train_rf->add_option("--max-depth", max_depth, "Depth limit (default unlimited)");
  train_rf->add_option("--scaling", scaling, "Importance scaling")
      ->check(CLI::IsMember({"raw", "z"}))
      ->capture_default_str();
  train_rf->add_option("--threads", forest_cfg.threads, "Worker threads (0: all cores)")->capture_default_str();
  train_rf->add_flag("--dump-forest", dump_forest, "Also write forest.json");

  std::string survey_path;
  auto* survey = app.add_subcommand("survey-weights", "Survey distribution coefficients p");
  add_io(survey, flags, false);
  survey->add_option("--survey", survey_path, "survey.json (default: built-in reference tallies)");

  std::string variant = "rf-p";
  std::string k_path;
  auto* assemble = app.add_subcommand("assemble", "Write weights.json for a model variant");
  add_io(assemble, flags);
  assemble->add_option("--variant", variant)
      ->check(CLI::IsMember({"lr", "rf", "rf-p", "rf-p-k"}))
      ->capture_default_str();
  assemble->add_option("--k", k_path, "k coefficients file (needed for rf-p-k)");

  std::string k_grid;
  auto* tune = app.add_subcommand("tune-k", "One-at-a-time k sweep; writes tuned weights.json");
  add_io(tune, flags);
  tune->add_option("--k-grid", k_grid, "Comma list with a:b integer ranges (default 1:100,150,200,500,1000)");

  std::string weights_path;
  auto* score = app.add_subcommand("score", "Write scores.csv");
  add_io(score, flags);
  score->add_option("--weights", weights_path, "Weight table (default <in>/weights.json)");

  auto* evaluate = app.add_subcommand("evaluate", "Better-friend pair accuracy");
  add_io(evaluate, flags);
  evaluate->add_option("--weights", weights_path, "Weight table (default <in>/weights.json)");

  auto* demo = app.add_subcommand("demo-paper", "Worked example with the shipped reference constants");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string in = flags.in;
    const std::string out = flags.output();
    if (synth->parsed()) {
      const std::string dir = flags.out.empty() ? "." : flags.out;
      synth_cfg.seed = flags.seed;
      pipeline::synth(synth_cfg, pipeline::resolve_manifest(flags.manifest, ""), dir);
      std::cout << "wrote synthetic dataset to " << dir << "\n";
    } else if (clean->parsed()) {
      const auto summary = pipeline::clean(in, out, pipeline::resolve_manifest(flags.manifest, in), clean_cfg);
      std::cout << "removed " << summary.removed_egos.size() << " passive egos; interactions "
                << summary.interactions_before << " -> " << summary.interactions_after << ", classifications "
                << summary.classifications_before << " -> " << summary.classifications_after << ", pairs "
                << summary.pairs_before << " -> " << summary.pairs_after << "\n";
    } else if (fit->parsed()) {
      pipeline::fit(in, out, pipeline::resolve_manifest(flags.manifest, in));
    } else if (train_lr->parsed()) {
      pipeline::train_lr(in, out, pipeline::resolve_manifest(flags.manifest, in));
    } else if (train_rf->parsed()) {
      forest_cfg.seed = flags.seed;
      if (train_rf->count("--mtry")) forest_cfg.mtry = mtry;
      if (train_rf->count("--max-depth")) forest_cfg.max_depth = max_depth;
      forest_cfg.importance_scaling = scaling == "raw" ? ImportanceScaling::kRaw : ImportanceScaling::kZScaled;
      pipeline::train_rf(in, out, pipeline::resolve_manifest(flags.manifest, in), forest_cfg, dump_forest);
    } else if (survey->parsed()) {
      const std::string dir = flags.out.empty() ? "." : flags.out;
      pipeline::survey_weights(survey_path, dir, pipeline::resolve_manifest(flags.manifest, dir));
    } else if (assemble->parsed()) {
      pipeline::assemble(in, out, pipeline::resolve_manifest(flags.manifest, in), parse_variant(variant), k_path);
    } else if (tune->parsed()) {
      const auto grid = k_grid.empty() ? default_k_grid() : parse_k_grid(k_grid);
      pipeline::tune_k(in, out, pipeline::resolve_manifest(flags.manifest, in), grid);
    } else if (score->parsed()) {
      pipeline::score(in, out, pipeline::resolve_manifest(flags.manifest, in), weights_path);
    } else if (evaluate->parsed()) {
      const auto report = pipeline::evaluate(in, out, pipeline::resolve_manifest(flags.manifest, in), weights_path);
      std::cout << "pairs " << report.total_pairs << ", ties " << report.tie_pairs << ", matches " << report.matches
                << "\naccuracy (ties excluded) " << report.accuracy_excluding_ties << "\naccuracy (all pairs) "
                << report.accuracy_full << "\n";
    } else if (demo->parsed()) {
      return pipeline::demo_paper(std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
