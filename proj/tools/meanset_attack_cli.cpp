// Copyright 2026 The meanset-attack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meanset_attack/meanset_attack.hpp"

namespace msa = meanset_attack;

namespace {

constexpr int kConfigError = 2;
constexpr int kIoError = 3;

struct ProtocolDemoArgs {
  std::string group = "braid";
  int n = 5;
  std::size_t L = 10;
  std::size_t k = 20;
  std::string mode = "classical";
  std::string challenges = "balanced";
  std::uint64_t seed = 1;
  std::string out;
};

int run_protocol_demo(const ProtocolDemoArgs& a) {
  const auto ctx = msa::GroupContext::make(msa::parse_group_kind(a.group), a.n);
  msa::Rng rng(a.seed);
  const auto keys = msa::generate_keys(ctx, msa::parse_key_mode(a.mode), a.L, rng);
  const auto transcript =
      msa::run_protocol(keys, a.k, msa::parse_challenge_mode(a.challenges), rng);

  std::size_t accepted = 0;
  for (const auto& rec : transcript.rounds) accepted += msa::verify_round(msa::public_key(keys), rec);
  std::cout << "group " << msa::to_string(ctx.kind()) << " n=" << a.n << ", " << a.mode
            << " keys, L=" << a.L << ", |s|=" << keys.secret.size() << "\n";
  std::cout << "rounds verified: " << accepted << "/" << transcript.rounds.size() << "\n";

  const auto samples = msa::eavesdrop(transcript);
  std::cout << "eavesdropped |R0|=" << samples.zero.size() << " |R1|=" << samples.one.size() << "\n";
  if (samples.usable()) {
    msa::CandidateCheck check;
    if (ctx.kind() == msa::GroupKind::free_abelian) check = msa::secret_oracle_check(ctx, keys.secret);
    const auto out = msa::attack_with_error_ball(ctx, msa::public_key(keys), samples.zero,
                                                 samples.one, {}, &rng, keys.secret, check);
    std::cout << "attack: " << msa::to_string(out.status)
              << ", exact secret: " << (out.exact_secret ? "yes" : "no")
              << ", error length: " << out.error_length.value_or(0) << "\n";
  } else {
    std::cout << "attack skipped: one challenge class is empty\n";
  }

  if (!a.out.empty()) {
    const std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);
    msa::write_file(dir / "keys.json", msa::keys_to_json(keys, a.seed).dump(2) + "\n");
    msa::write_file(dir / "transcript.jsonl", msa::transcript_to_jsonl(transcript));
    std::cout << "wrote " << (dir / "keys.json").string() << " and "
              << (dir / "transcript.jsonl").string() << "\n";
  }
  return accepted == transcript.rounds.size() ? 0 : 1;
}

struct SweepOverrides {
  std::string config_path;
  std::optional<std::string> group, mode, challenges, start, out;
  std::optional<int> n, conjugation_passes;
  std::optional<std::vector<std::size_t>> L, k;
  std::optional<std::size_t> trials, error_radius, max_steps;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_budget;
  std::optional<unsigned> threads;
  bool no_delta = false;
};

int run_sweep(const SweepOverrides& o) {
  msa::ExperimentConfig config;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw msa::ConfigError("cannot read config '" + o.config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw msa::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    config = msa::config_from_json(j);
  }
  if (o.group) config.group = msa::parse_group_kind(*o.group);
  if (o.n) config.n = *o.n;
  if (o.L) config.lengths = *o.L;
  if (o.k) config.rounds = *o.k;
  if (o.trials) config.trials = *o.trials;
  if (o.mode) config.key_mode = msa::parse_key_mode(*o.mode);
  if (o.challenges) config.challenge_mode = msa::parse_challenge_mode(*o.challenges);
  if (o.start) {
    if (*o.start == "random") config.start = msa::StartPolicy::random_sample;
    else if (*o.start == "min_weight") config.start = msa::StartPolicy::min_weight_sample;
    else throw msa::ConfigError("unknown start policy '" + *o.start + "'");
  }
  if (o.max_steps) config.max_steps = *o.max_steps;
  if (o.no_delta) config.delta_directions = false;
  if (o.conjugation_passes) config.conjugation_passes = *o.conjugation_passes;
  if (o.error_radius) config.error_radius = *o.error_radius;
  if (o.seed) config.seed = *o.seed;
  if (o.time_budget) config.trial_time_budget_seconds = *o.time_budget;
  if (o.threads) config.threads = *o.threads;
  if (o.out) config.output_dir = *o.out;
  config.validate();

  const auto result = msa::run_attack_sweep(config);
  msa::emit_results(result, config.output_dir);
  std::cout << msa::cells_to_markdown(result);
  std::cout << "results written to " << config.output_dir << "\n";
  return 0;
}

struct SllnArgs {
  std::string platform = "z";
  std::vector<std::size_t> sizes{10, 100};
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  long lo = -2, hi = 2;
  std::size_t vertices = 3;
  bool multi_vertex = false;
};

int run_slln(const SllnArgs& a) {
  msa::ConvergenceTable table;
  if (a.platform == "z")
    table = msa::slln_integers(a.lo, a.hi, a.sizes, a.trials, a.seed, a.multi_vertex);
  else if (a.platform == "path")
    table = msa::slln_path(a.vertices, a.sizes, a.trials, a.seed, a.multi_vertex);
  else
    throw msa::ConfigError("unknown platform '" + a.platform + "' (expected z or path)");
  std::cout << "platform " << table.platform << ", |E(mu)|=" << table.centre_size
            << ", trials=" << a.trials << ", seed=" << a.seed << "\n";
  std::cout << "n,P(MS_n != E),P(MS_n not within E)\n";
  for (const auto& row : table.rows)
    std::cout << row.n << ',' << msa::format_double(row.mismatch_frequency) << ','
              << msa::format_double(row.escape_frequency) << "\n";
  return 0;
}

struct TreeArgs {
  std::size_t trees = 200;
  std::size_t max_vertices = 40;
  std::size_t samples = 3;
  std::size_t max_sample_size = 15;
  std::uint64_t seed = 1;
};

int run_tree_oracle(const TreeArgs& a) {
  const auto report = msa::tree_oracle_batch(a.trees, a.max_vertices, a.samples, a.seed,
                                             a.max_sample_size);
  std::cout << "trees: " << report.trees << ", checks: " << report.checks
            << ", counterexamples: " << report.counterexamples.size() << "\n";
  for (const auto& c : report.counterexamples) {
    std::cout << "counterexample: vertices=" << c.vertex_count << " edges=";
    for (auto [u, v] : c.edges) std::cout << u << '-' << v << ' ';
    std::cout << "sample=";
    for (auto v : c.sample) std::cout << v << ' ';
    std::cout << "start=" << c.start << " descent=" << c.descent_result << " mean-set=";
    for (auto v : c.mean_set) std::cout << v << ' ';
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-set attack workbench for conjugation-based authentication"};
  app.require_subcommand(1);

  ProtocolDemoArgs demo;
  auto* demo_cmd = app.add_subcommand("protocol-demo", "Run one protocol instance and attack it");
  demo_cmd->add_option("--group", demo.group, "free | abelian | braid")->capture_default_str();
  demo_cmd->add_option("--n", demo.n, "strands (braid) or rank")->capture_default_str();
  demo_cmd->add_option("--L", demo.L, "key length or permutation-braid factors")->capture_default_str();
  demo_cmd->add_option("--k", demo.k, "rounds")->capture_default_str();
  demo_cmd->add_option("--mode", demo.mode, "classical | alternative")->capture_default_str();
  demo_cmd->add_option("--challenges", demo.challenges, "balanced | bernoulli")->capture_default_str();
  demo_cmd->add_option("--seed", demo.seed)->capture_default_str();
  demo_cmd->add_option("--out", demo.out, "directory for keys.json and transcript.jsonl");

  SweepOverrides sweep;
  auto* sweep_cmd = app.add_subcommand("attack-sweep", "Success-rate sweep over an (L, k) grid");
  sweep_cmd->add_option("--config", sweep.config_path, "JSON config or run-manifest.json");
  sweep_cmd->add_option("--group", sweep.group);
  sweep_cmd->add_option("--n", sweep.n);
  sweep_cmd->add_option("--L", sweep.L)->delimiter(',');
  sweep_cmd->add_option("--k", sweep.k)->delimiter(',');
  sweep_cmd->add_option("--trials", sweep.trials);
  sweep_cmd->add_option("--mode", sweep.mode, "classical | alternative");
  sweep_cmd->add_option("--challenges", sweep.challenges, "balanced | bernoulli");
  sweep_cmd->add_option("--start", sweep.start, "min_weight | random");
  sweep_cmd->add_option("--max-steps", sweep.max_steps);
  sweep_cmd->add_flag("--no-delta", sweep.no_delta, "disable Delta descent directions");
  sweep_cmd->add_option("--conjugation-passes", sweep.conjugation_passes);
  sweep_cmd->add_option("--error-radius", sweep.error_radius);
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--time-budget", sweep.time_budget, "seconds per trial");
  sweep_cmd->add_option("--threads", sweep.threads);
  sweep_cmd->add_option("--out", sweep.out, "output directory");

  SllnArgs slln;
  auto* slln_cmd = app.add_subcommand("slln", "Sample mean-set convergence experiment");
  slln_cmd->add_option("--platform", slln.platform, "z | path")->capture_default_str();
  slln_cmd->add_option("--n-list", slln.sizes, "sample sizes")->delimiter(',');
  slln_cmd->add_option("--trials", slln.trials)->capture_default_str();
  slln_cmd->add_option("--seed", slln.seed)->capture_default_str();
  slln_cmd->add_option("--lo", slln.lo, "z: smallest support point")->capture_default_str();
  slln_cmd->add_option("--hi", slln.hi, "z: largest support point")->capture_default_str();
  slln_cmd->add_option("--vertices", slln.vertices, "path: vertex count")->capture_default_str();
  slln_cmd->add_flag("--multi-vertex", slln.multi_vertex, "allow a non-singleton mean-set");

  TreeArgs tree;
  auto* tree_cmd = app.add_subcommand("tree-oracle", "Check direct descent against brute force on trees");
  tree_cmd->add_option("--trees", tree.trees)->capture_default_str();
  tree_cmd->add_option("--max-vertices", tree.max_vertices)->capture_default_str();
  tree_cmd->add_option("--samples", tree.samples, "samples per tree")->capture_default_str();
  tree_cmd->add_option("--max-sample-size", tree.max_sample_size)->capture_default_str();
  tree_cmd->add_option("--seed", tree.seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*demo_cmd) return run_protocol_demo(demo);
    if (*sweep_cmd) return run_sweep(sweep);
    if (*slln_cmd) return run_slln(slln);
    if (*tree_cmd) return run_tree_oracle(tree);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return 0;
}
