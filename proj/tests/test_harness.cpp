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

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "meanset_attack/harness.hpp"

using namespace meanset_attack;

namespace {
ExperimentConfig small_braid_config() {
  ExperimentConfig c;
  c.group = GroupKind::braid;
  c.n = 4;
  c.lengths = {3, 4};
  c.rounds = {10, 20};
  c.trials = 4;
  c.seed = 7;
  c.threads = 2;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("config round trips through JSON") {
  ExperimentConfig c = small_braid_config();
  c.key_mode = KeyMode::alternative;
  c.challenge_mode = ChallengeMode::bernoulli;
  c.start = StartPolicy::random_sample;
  c.error_radius = 2;
  c.conjugation_passes = 3;
  const auto back = config_from_json(nlohmann::json::parse(to_json(c).dump()));
  CHECK(to_json(back) == to_json(c));

  nlohmann::json manifest;
  manifest["config"] = nlohmann::json::parse(to_json(c).dump());
  CHECK(to_json(config_from_json(manifest)) == to_json(c));
}

TEST_CASE("config validation") {
  ExperimentConfig c = small_braid_config();
  c.n = 2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_braid_config();
  c.group = GroupKind::free_abelian;
  c.key_mode = KeyMode::alternative;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_braid_config();
  c.rounds.clear();
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_braid_config();
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"group":"hyperbolic"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n":"five"})")), ConfigError);
}

TEST_CASE("single trial cell has rate zero or one") {
  ExperimentConfig c = small_braid_config();
  c.lengths = {3};
  c.rounds = {10};
  c.trials = 1;
  const auto r = run_attack_sweep(c);
  REQUIRE(r.cells.size() == 1);
  const double p = r.cells[0].success_rate;
  CHECK((p == 0.0 || p == 1.0));
}

TEST_CASE("sweep output: CSV, aggregation audit and markdown") {
  const ExperimentConfig c = small_braid_config();
  const auto r = run_attack_sweep(c);
  CHECK(r.cells.size() == 4);
  CHECK(r.records.size() == 16);

  const std::string csv = cells_to_csv(c, r.cells);
  const auto rows = parse_cells_csv(csv);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == 4);
    CHECK(rows[i].L == r.cells[i].L);
    CHECK(rows[i].k == r.cells[i].k);
    CHECK(rows[i].trials == 4);
    CHECK(rows[i].success_rate == r.cells[i].success_rate);
    CHECK(rows[i].avg_error_length == r.cells[i].avg_error_length);
    CHECK(rows[i].seed == 7);
  }

  // re-aggregate from the JSONL records alone
  const auto records = parse_records_jsonl(records_to_jsonl(r.records));
  REQUIRE(records.size() == r.records.size());
  for (const auto& cell : r.cells) {
    std::size_t trials = 0, successes = 0, finished = 0, errors = 0;
    for (const auto& rec : records) {
      if (rec.L != cell.L || rec.k != cell.k) continue;
      ++trials;
      if (rec.outcome == TrialOutcome::success) ++successes;
      CHECK((rec.outcome == TrialOutcome::success) == rec.exact_secret);
      if (rec.error_length) {
        ++finished;
        errors += *rec.error_length;
        CHECK(rec.exact_secret == (*rec.error_length == 0));
      }
    }
    CHECK(trials == cell.trials);
    CHECK(static_cast<double>(successes) / static_cast<double>(trials) == cell.success_rate);
    if (finished)
      CHECK(static_cast<double>(errors) / static_cast<double>(finished) == cell.avg_error_length);
  }

  const std::string md = cells_to_markdown(r);
  CHECK(md.find("| 3 |") != std::string::npos);
  CHECK(md.find("| 4 |") != std::string::npos);
}

TEST_CASE("cell formatting") {
  CHECK(format_cell(0.19, 1.3) == "(19%, 1.3)");
  CHECK(format_cell(1.0, 0.0) == "(100%, 0)");
  CHECK(format_cell(0.5, 1.256) == "(50%, 1.26)");
}

TEST_CASE("sweeps are reproducible and independent of thread count") {
  ExperimentConfig c = small_braid_config();
  const auto a = run_attack_sweep(c);
  c.threads = 1;
  const auto b = run_attack_sweep(c);
  CHECK(cells_to_csv(a.config, a.cells) == cells_to_csv(b.config, b.cells));
  CHECK(records_to_jsonl(a.records) == records_to_jsonl(b.records));

  const auto dir = std::filesystem::temp_directory_path() / "meanset_attack_harness_test";
  std::filesystem::remove_all(dir);
  emit_results(a, dir / "one");
  const auto rerun = run_attack_sweep(config_from_json(nlohmann::json::parse(slurp(dir / "one" / "run-manifest.json"))));
  emit_results(rerun, dir / "two");
  CHECK(slurp(dir / "one" / "results.csv") == slurp(dir / "two" / "results.csv"));
  CHECK(slurp(dir / "one" / "trials.jsonl") == slurp(dir / "two" / "trials.jsonl"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("emission into an unwritable location fails") {
  const auto dir = std::filesystem::temp_directory_path() / "meanset_attack_blocker";
  std::filesystem::remove_all(dir);
  write_file(dir.string() + ".file", "x");
  ExperimentConfig c = small_braid_config();
  c.lengths = {3};
  c.rounds = {10};
  c.trials = 1;
  const auto r = run_attack_sweep(c);
  CHECK_THROWS(emit_results(r, std::filesystem::path(dir.string() + ".file") / "sub"));
  std::filesystem::remove(dir.string() + ".file");
}

TEST_CASE("integer platform failure rate decays with rounds") {
  ExperimentConfig c;
  c.group = GroupKind::free_abelian;
  c.n = 1;
  c.lengths = {5};
  c.rounds = {10, 160};
  c.trials = 300;
  c.seed = 11;
  const auto r = run_attack_sweep(c);
  CHECK(r.cell(5, 160).success_rate > r.cell(5, 10).success_rate);
}

TEST_CASE("sample mean-set convergence") {
  const std::vector<std::size_t> sizes{1, 5, 50};
  SECTION("point mass is matched at every n") {
    const auto t = slln_integers(3, 3, sizes, 20, 1);
    for (const auto& row : t.rows) CHECK(row.mismatch_frequency == 0.0);
  }
  SECTION("path on three vertices") {
    const std::vector<std::size_t> s{5, 200};
    const auto t = slln_path(3, s, 200, 2);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.centre_size == 1);
    CHECK(t.rows[1].mismatch_frequency < t.rows[0].mismatch_frequency);
  }
  SECTION("non-singleton centre is refused unless asked for") {
    CHECK_THROWS_AS(slln_path(4, sizes, 10, 3), NonSingletonMeanSet);
    const auto t = slln_path(4, sizes, 10, 3, true);
    CHECK(t.centre_size == 2);
  }
}

TEST_CASE("tree oracle") {
  SECTION("single vertex") {
    const auto r = tree_oracle_batch(5, 1, 3, 1);
    CHECK(r.passed());
    CHECK(r.checks == 15);
  }
  SECTION("random trees") {
    const auto r = tree_oracle_batch(200, 40, 3, 2);
    CHECK(r.trees == 200);
    CHECK(r.checks == 600);
    CHECK(r.passed());
  }
}

TEST_CASE("parallel_for fills every slot and propagates errors") {
  std::vector<int> out(100, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i) * 2);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}
