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

// Experiment harness: attack sweeps over (L, k) grids, sample mean-set
// convergence experiments, the tree oracle batch, and result emission.

#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "meanset_attack/attack.hpp"
#include "meanset_attack/group.hpp"
#include "meanset_attack/meanset.hpp"
#include "meanset_attack/protocol.hpp"
#include "meanset_attack/random.hpp"

namespace meanset_attack {

inline constexpr std::string_view library_version = "0.1.0";

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// --- configuration ---------------------------------------------------------

struct ExperimentConfig {
  GroupKind group = GroupKind::braid;
  /// Strand count for braids, rank otherwise.
  int n = 5;
  std::vector<std::size_t> lengths{10};
  std::vector<std::size_t> rounds{10, 20, 40, 80, 160};
  std::size_t trials = 50;
  KeyMode key_mode = KeyMode::classical;
  ChallengeMode challenge_mode = ChallengeMode::balanced;
  StartPolicy start = StartPolicy::min_weight_sample;
  std::size_t max_steps = 0;
  bool delta_directions = true;
  int conjugation_passes = 0;
  std::size_t error_radius = 0;
  std::uint64_t seed = 1;
  /// Per-trial wall-clock budget; trials exceeding it are reported as timeouts.
  double trial_time_budget_seconds = 600.0;
  /// 0 selects the hardware concurrency.
  unsigned threads = 0;
  std::string output_dir = ".";

  void validate() const {
    if (n < 1) throw ConfigError("n must be positive");
    if (group == GroupKind::braid && n < 3) throw ConfigError("braid platform needs n >= 3");
    if (key_mode == KeyMode::alternative && group != GroupKind::braid)
      throw ConfigError("alternative key generation requires the braid platform");
    if (lengths.empty() || rounds.empty()) throw ConfigError("L and k grids must be nonempty");
    for (auto L : lengths)
      if (L == 0) throw ConfigError("key lengths must be positive");
    for (auto k : rounds)
      if (k == 0) throw ConfigError("round counts must be positive");
    if (trials == 0) throw ConfigError("trial count must be positive");
    if (conjugation_passes < 0) throw ConfigError("conjugation passes must be nonnegative");
    if (!(trial_time_budget_seconds > 0)) throw ConfigError("time budget must be positive");
  }

  GroupContext context() const {
    BraidLengthOptions options;
    options.conjugation_passes = conjugation_passes;
    return GroupContext::make(group, n, options);
  }
};

inline nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["group"] = std::string(to_string(c.group));
  j["n"] = c.n;
  j["L"] = c.lengths;
  j["k"] = c.rounds;
  j["trials"] = c.trials;
  j["key_mode"] = std::string(to_string(c.key_mode));
  j["challenge_mode"] = std::string(to_string(c.challenge_mode));
  j["start"] = c.start == StartPolicy::min_weight_sample ? "min_weight" : "random";
  j["max_steps"] = c.max_steps;
  j["delta_directions"] = c.delta_directions;
  j["conjugation_passes"] = c.conjugation_passes;
  j["error_radius"] = c.error_radius;
  j["seed"] = c.seed;
  j["trial_time_budget_seconds"] = c.trial_time_budget_seconds;
  j["threads"] = c.threads;
  j["output_dir"] = c.output_dir;
  return j;
}

/// Accepts a plain config object or a run manifest (uses its "config" member).
inline ExperimentConfig config_from_json(const nlohmann::json& input) {
  const nlohmann::json& j = input.contains("config") ? input.at("config") : input;
  ExperimentConfig c;
  try {
    if (j.contains("group")) c.group = parse_group_kind(j.at("group").get<std::string>());
    if (j.contains("n")) c.n = j.at("n").get<int>();
    auto size_list = [](const nlohmann::json& v) {
      if (v.is_array()) return v.get<std::vector<std::size_t>>();
      return std::vector<std::size_t>{v.get<std::size_t>()};
    };
    if (j.contains("L")) c.lengths = size_list(j.at("L"));
    if (j.contains("k")) c.rounds = size_list(j.at("k"));
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("key_mode")) c.key_mode = parse_key_mode(j.at("key_mode").get<std::string>());
    if (j.contains("challenge_mode"))
      c.challenge_mode = parse_challenge_mode(j.at("challenge_mode").get<std::string>());
    if (j.contains("start")) {
      const auto s = j.at("start").get<std::string>();
      if (s == "min_weight") c.start = StartPolicy::min_weight_sample;
      else if (s == "random") c.start = StartPolicy::random_sample;
      else throw ConfigError("unknown start policy '" + s + "'");
    }
    if (j.contains("max_steps")) c.max_steps = j.at("max_steps").get<std::size_t>();
    if (j.contains("delta_directions")) c.delta_directions = j.at("delta_directions").get<bool>();
    if (j.contains("conjugation_passes")) c.conjugation_passes = j.at("conjugation_passes").get<int>();
    if (j.contains("error_radius")) c.error_radius = j.at("error_radius").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trial_time_budget_seconds"))
      c.trial_time_budget_seconds = j.at("trial_time_budget_seconds").get<double>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

// --- parallel execution ----------------------------------------------------

/// Runs job(i) for i in [0, count) on `threads` workers. Jobs write into
/// their own slots, so results do not depend on scheduling.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// --- attack sweep ------------------------------------------------------------

enum class TrialOutcome { success, failure, timeout, degenerate };

inline std::string_view to_string(TrialOutcome o) {
  switch (o) {
    case TrialOutcome::success: return "success";
    case TrialOutcome::failure: return "failure";
    case TrialOutcome::timeout: return "timeout";
    case TrialOutcome::degenerate: return "degenerate";
  }
  return "unknown";
}

inline TrialOutcome parse_trial_outcome(std::string_view s) {
  if (s == "success") return TrialOutcome::success;
  if (s == "failure") return TrialOutcome::failure;
  if (s == "timeout") return TrialOutcome::timeout;
  if (s == "degenerate") return TrialOutcome::degenerate;
  throw std::invalid_argument("unknown trial outcome '" + std::string(s) + "'");
}

struct TrialRecord {
  std::size_t L = 0;
  std::size_t k = 0;
  std::size_t trial = 0;
  std::uint64_t instance_seed = 0;
  TrialOutcome outcome = TrialOutcome::failure;
  bool exact_secret = false;
  bool conjugacy_solution = false;
  /// Absent for timeouts.
  std::optional<std::size_t> error_length;
  std::size_t steps_g0 = 0;
  std::size_t steps_g1 = 0;
  std::size_t secret_length = 0;
  double seconds = 0.0;
};

struct SweepCell {
  std::size_t L = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t timeouts = 0;
  /// successes / trials.
  double success_rate = 0.0;
  /// Mean error length over trials that finished (successes contribute 0).
  double avg_error_length = 0.0;
  double wall_clock_seconds = 0.0;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SweepCell> cells;
  std::vector<TrialRecord> records;

  const SweepCell& cell(std::size_t L, std::size_t k) const {
    for (const auto& c : cells)
      if (c.L == L && c.k == k) return c;
    throw std::out_of_range("no such sweep cell");
  }
};

inline std::uint64_t cell_id(std::size_t L, std::size_t k) {
  return (static_cast<std::uint64_t>(L) << 32) ^ static_cast<std::uint64_t>(k);
}

/// keygen -> protocol -> eavesdrop -> attack for one instance.
inline TrialRecord run_trial(const ExperimentConfig& config, std::size_t L, std::size_t k,
                             std::size_t trial) {
  const auto started = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.L = L;
  rec.k = k;
  rec.trial = trial;
  rec.instance_seed = derive_seed(config.seed, {cell_id(L, k), trial});
  Rng rng(rec.instance_seed);

  const GroupContext ctx = config.context();
  const KeyPair keys = generate_keys(ctx, config.key_mode, L, rng);
  rec.secret_length = keys.secret.size();
  const Transcript transcript = run_protocol(keys, k, config.challenge_mode, rng);
  const EavesdroppedSamples samples = eavesdrop(transcript);

  auto finish = [&] {
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
  };
  if (!samples.usable()) {
    rec.outcome = TrialOutcome::degenerate;
    return finish();
  }

  AttackParams params;
  params.descent.start = config.start;
  params.descent.max_steps = config.max_steps;
  params.descent.delta_directions = config.delta_directions;
  params.descent.deadline =
      started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(config.trial_time_budget_seconds));
  params.error_radius = config.error_radius;

  // Conjugation is trivial in abelian groups, so there the only meaningful
  // check is against the secret itself.
  CandidateCheck check;
  if (ctx.kind() == GroupKind::free_abelian) check = secret_oracle_check(ctx, keys.secret);

  try {
    const AttackOutcome out = attack_with_error_ball(ctx, public_key(keys), samples.zero,
                                                     samples.one, params, &rng, keys.secret, check);
    rec.exact_secret = out.exact_secret;
    rec.conjugacy_solution = out.conjugacy_solution;
    rec.error_length = out.error_length;
    rec.steps_g0 = out.steps_g0;
    rec.steps_g1 = out.steps_g1;
    rec.outcome = out.exact_secret ? TrialOutcome::success : TrialOutcome::failure;
  } catch (const TimeBudgetExceeded&) {
    rec.outcome = TrialOutcome::timeout;
  }
  return finish();
}

/// Aggregates records of one cell; order independent.
inline SweepCell aggregate_cell(std::size_t L, std::size_t k, std::span<const TrialRecord> records) {
  SweepCell cell;
  cell.L = L;
  cell.k = k;
  std::size_t error_sum = 0;
  std::size_t finished = 0;
  for (const auto& r : records) {
    if (r.L != L || r.k != k) continue;
    ++cell.trials;
    cell.wall_clock_seconds += r.seconds;
    if (r.outcome == TrialOutcome::success) ++cell.successes;
    if (r.outcome == TrialOutcome::timeout) ++cell.timeouts;
    if (r.error_length) {
      error_sum += *r.error_length;
      ++finished;
    }
  }
  if (cell.trials)
    cell.success_rate = static_cast<double>(cell.successes) / static_cast<double>(cell.trials);
  if (finished) cell.avg_error_length = static_cast<double>(error_sum) / static_cast<double>(finished);
  return cell;
}

inline SweepResult run_attack_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult result;
  result.config = config;
  struct Job {
    std::size_t L, k, trial;
  };
  std::vector<Job> jobs;
  for (std::size_t L : config.lengths)
    for (std::size_t k : config.rounds)
      for (std::size_t t = 0; t < config.trials; ++t) jobs.push_back({L, k, t});

  result.records.resize(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t i) {
    result.records[i] = run_trial(config, jobs[i].L, jobs[i].k, jobs[i].trial);
  });
  for (std::size_t L : config.lengths)
    for (std::size_t k : config.rounds) result.cells.push_back(aggregate_cell(L, k, result.records));
  return result;
}

/// Per L row: true iff the success rate is nondecreasing along the k grid.
inline std::map<std::size_t, bool> monotonicity_report(const SweepResult& result) {
  std::map<std::size_t, bool> out;
  for (std::size_t L : result.config.lengths) {
    bool monotone = true;
    for (std::size_t i = 1; i < result.config.rounds.size(); ++i)
      if (result.cell(L, result.config.rounds[i]).success_rate <
          result.cell(L, result.config.rounds[i - 1]).success_rate)
        monotone = false;
    out[L] = monotone;
  }
  return out;
}

// --- emission ----------------------------------------------------------------

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

inline constexpr std::string_view csv_header = "n,L,k,T,successRate,avgErrorLength,seed";

inline std::string cells_to_csv(const ExperimentConfig& config, std::span<const SweepCell> cells) {
  std::string out(csv_header);
  out.push_back('\n');
  for (const auto& c : cells) {
    out += std::to_string(config.n) + ',' + std::to_string(c.L) + ',' + std::to_string(c.k) + ',' +
           std::to_string(c.trials) + ',' + format_double(c.success_rate) + ',' +
           format_double(c.avg_error_length) + ',' + std::to_string(config.seed) + '\n';
  }
  return out;
}

struct CsvRow {
  int n = 0;
  std::size_t L = 0, k = 0, trials = 0;
  double success_rate = 0, avg_error_length = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

inline std::vector<CsvRow> parse_cells_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != csv_header)
    throw std::invalid_argument("unexpected CSV header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 7) throw std::invalid_argument("malformed CSV row: " + line);
    rows.push_back({std::stoi(f[0]), std::stoul(f[1]), std::stoul(f[2]), std::stoul(f[3]),
                    std::stod(f[4]), std::stod(f[5]), std::stoull(f[6])});
  }
  return rows;
}

/// "(P%, E)" with P rounded to an integer percentage and E to two decimals.
inline std::string format_cell(double success_rate, double avg_error_length) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", avg_error_length);
  std::string e = buf;
  while (e.back() == '0') e.pop_back();
  if (e.back() == '.') e.pop_back();
  return "(" + std::to_string(static_cast<long>(std::lround(success_rate * 100.0))) + "%, " + e + ")";
}

inline std::string cells_to_markdown(const SweepResult& result) {
  const auto& cfg = result.config;
  const auto monotone = monotonicity_report(result);
  std::ostringstream md;
  md << "Experiments in " << to_string(cfg.group) << " n=" << cfg.n << " (" << to_string(cfg.key_mode)
     << " keys, T=" << cfg.trials << ", seed=" << cfg.seed << ")\n\n";
  md << "| L\\k |";
  for (auto k : cfg.rounds) md << ' ' << k << " |";
  md << " monotone in k |\n|---|";
  for (std::size_t i = 0; i < cfg.rounds.size(); ++i) md << "---|";
  md << "---|\n";
  std::size_t timeouts = 0;
  for (auto L : cfg.lengths) {
    md << "| " << L << " |";
    for (auto k : cfg.rounds) {
      const SweepCell& c = result.cell(L, k);
      timeouts += c.timeouts;
      md << ' ' << format_cell(c.success_rate, c.avg_error_length) << " |";
    }
    md << ' ' << (monotone.at(L) ? "yes" : "no") << " |\n";
  }
  md << "\nCells show (success rate, average error length).";
  if (timeouts) md << " Timed-out trials: " << timeouts << '.';
  md << '\n';
  return md.str();
}

inline nlohmann::ordered_json to_json(const TrialRecord& r) {
  nlohmann::ordered_json j;
  j["L"] = r.L;
  j["k"] = r.k;
  j["trial"] = r.trial;
  j["instance_seed"] = r.instance_seed;
  j["outcome"] = std::string(to_string(r.outcome));
  j["exact_secret"] = r.exact_secret;
  j["conjugacy_solution"] = r.conjugacy_solution;
  j["error_length"] = r.error_length ? nlohmann::ordered_json(*r.error_length) : nlohmann::ordered_json();
  j["steps_g0"] = r.steps_g0;
  j["steps_g1"] = r.steps_g1;
  j["secret_length"] = r.secret_length;
  return j;
}

inline TrialRecord trial_from_json(const nlohmann::json& j) {
  TrialRecord r;
  r.L = j.at("L").get<std::size_t>();
  r.k = j.at("k").get<std::size_t>();
  r.trial = j.at("trial").get<std::size_t>();
  r.instance_seed = j.at("instance_seed").get<std::uint64_t>();
  r.outcome = parse_trial_outcome(j.at("outcome").get<std::string>());
  r.exact_secret = j.at("exact_secret").get<bool>();
  r.conjugacy_solution = j.at("conjugacy_solution").get<bool>();
  if (!j.at("error_length").is_null()) r.error_length = j.at("error_length").get<std::size_t>();
  r.steps_g0 = j.at("steps_g0").get<std::size_t>();
  r.steps_g1 = j.at("steps_g1").get<std::size_t>();
  r.secret_length = j.value("secret_length", std::size_t{0});
  return r;
}

/// Wall-clock time is left out so that reruns are bit-identical.
inline std::string records_to_jsonl(std::span<const TrialRecord> records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out.push_back('\n');
  }
  return out;
}

inline std::vector<TrialRecord> parse_records_jsonl(std::string_view text) {
  std::vector<TrialRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(trial_from_json(nlohmann::json::parse(line)));
  return out;
}

inline nlohmann::ordered_json run_manifest(const SweepResult& result) {
  nlohmann::ordered_json j;
  j["tool"] = "meanset-attack";
  j["version"] = std::string(library_version);
#ifdef __VERSION__
  j["compiler"] = __VERSION__;
#endif
  j["json_library"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                      std::to_string(NLOHMANN_JSON_VERSION_PATCH);
  j["seed"] = result.config.seed;
  j["config"] = to_json(result.config);
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& c : result.cells) {
    cells.push_back({{"L", c.L},
                     {"k", c.k},
                     {"trials", c.trials},
                     {"successes", c.successes},
                     {"timeouts", c.timeouts},
                     {"wall_clock_seconds", c.wall_clock_seconds}});
  }
  j["cells"] = cells;
  nlohmann::ordered_json mono;
  for (auto [L, ok] : monotonicity_report(result)) mono[std::to_string(L)] = ok;
  j["success_rate_monotone_in_k"] = mono;
  return j;
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

/// results.csv, results.md, trials.jsonl and run-manifest.json in `dir`.
inline void emit_results(const SweepResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  write_file(dir / "results.csv", cells_to_csv(result.config, result.cells));
  write_file(dir / "results.md", cells_to_markdown(result));
  write_file(dir / "trials.jsonl", records_to_jsonl(result.records));
  write_file(dir / "run-manifest.json", run_manifest(result).dump(2) + "\n");
}

// --- sample mean-set convergence -------------------------------------------

/// A finitely supported measure: element i has probability weights[i] / total.
template <class E>
struct DiscreteMeasure {
  std::vector<E> support;
  std::vector<std::uint64_t> weights;
};

template <class E>
struct MeasureMeanSet {
  std::vector<E> centre;
  Weight weight;
};

/// Exact mean-set of a finitely supported measure over `candidates`:
/// argmin of sum_i weights[i] d(v, support[i])^2.
template <MetricSpace S>
MeasureMeanSet<typename S::element_type> measure_mean_set(
    const S& space, const DiscreteMeasure<typename S::element_type>& mu,
    std::span<const typename S::element_type> candidates) {
  std::vector<typename S::element_type> expanded;
  for (std::size_t i = 0; i < mu.support.size(); ++i)
    for (std::uint64_t c = 0; c < mu.weights[i]; ++c) expanded.push_back(mu.support[i]);
  const auto r = brute_force_mean_set<S>(space, expanded, candidates);
  return {r.minimizers, r.minimal_weight};
}

struct ConvergenceRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  /// Frequency of MS_n != E(mu).
  double mismatch_frequency = 0.0;
  /// Frequency of MS_n not contained in E(mu).
  double escape_frequency = 0.0;
};

struct ConvergenceTable {
  std::string platform;
  std::size_t centre_size = 0;
  std::vector<ConvergenceRow> rows;
};

class NonSingletonMeanSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// For each n: draw `trials` samples of size n from mu, compute MS_n by brute
/// force over `candidates`, and count how often it differs from E(mu).
template <MetricSpace S>
ConvergenceTable sample_mean_set_convergence(const S& space,
                                             const DiscreteMeasure<typename S::element_type>& mu,
                                             std::span<const typename S::element_type> candidates,
                                             std::span<const std::size_t> sizes, std::size_t trials,
                                             std::uint64_t seed, bool multi_vertex = false) {
  if (mu.support.empty() || mu.support.size() != mu.weights.size())
    throw std::invalid_argument("malformed measure");
  const auto centre = measure_mean_set(space, mu, candidates);
  if (centre.centre.size() != 1 && !multi_vertex)
    throw NonSingletonMeanSet("measure has " + std::to_string(centre.centre.size()) +
                              " centre points; singleton hypothesis unmet");
  auto in_centre = [&](const auto& v) {
    return std::any_of(centre.centre.begin(), centre.centre.end(),
                       [&](const auto& c) { return space.same(c, v); });
  };
  std::discrete_distribution<std::size_t> draw(mu.weights.begin(), mu.weights.end());

  ConvergenceTable table;
  table.centre_size = centre.centre.size();
  for (std::size_t n : sizes) {
    if (n == 0) throw std::invalid_argument("sample size must be positive");
    ConvergenceRow row{n, trials, 0, 0};
    std::size_t mismatch = 0, escape = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = make_stream(seed, {n, t});
      std::vector<typename S::element_type> sample;
      sample.reserve(n);
      for (std::size_t i = 0; i < n; ++i) sample.push_back(mu.support[draw(rng)]);
      const auto ms = brute_force_mean_set<S>(space, sample, candidates);
      const bool contained = std::all_of(ms.minimizers.begin(), ms.minimizers.end(), in_centre);
      if (!contained) ++escape;
      if (!contained || ms.minimizers.size() != centre.centre.size()) ++mismatch;
    }
    row.mismatch_frequency = static_cast<double>(mismatch) / static_cast<double>(trials);
    row.escape_frequency = static_cast<double>(escape) / static_cast<double>(trials);
    table.rows.push_back(row);
  }
  return table;
}

/// Z with mu uniform on the integers lo..hi.
inline ConvergenceTable slln_integers(long lo, long hi, std::span<const std::size_t> sizes,
                                      std::size_t trials, std::uint64_t seed,
                                      bool multi_vertex = false) {
  if (lo > hi) throw std::invalid_argument("empty support");
  static const GroupContext z = GroupContext::free_abelian(1);
  auto as_word = [](long v) {
    return z.word(std::vector<Letter>(static_cast<std::size_t>(std::labs(v)), v < 0 ? -1 : 1));
  };
  DiscreteMeasure<Word> mu;
  for (long v = lo; v <= hi; ++v) {
    mu.support.push_back(as_word(v));
    mu.weights.push_back(1);
  }
  std::vector<Word> candidates;
  for (long v = lo - 1; v <= hi + 1; ++v) candidates.push_back(as_word(v));
  const GroupSpace space(z, false);
  auto table = sample_mean_set_convergence<GroupSpace>(space, mu, candidates, sizes, trials, seed,
                                                       multi_vertex);
  table.platform = "z[" + std::to_string(lo) + ".." + std::to_string(hi) + "]";
  return table;
}

/// Path graph on `vertices` vertices with the uniform vertex measure.
inline ConvergenceTable slln_path(std::size_t vertices, std::span<const std::size_t> sizes,
                                  std::size_t trials, std::uint64_t seed, bool multi_vertex = false) {
  FiniteGraph path(vertices);
  for (std::size_t v = 0; v + 1 < vertices; ++v) path.add_edge(v, v + 1);
  const GraphSpace space(path);
  DiscreteMeasure<std::size_t> mu{space.vertices(), std::vector<std::uint64_t>(vertices, 1)};
  const auto candidates = space.vertices();
  auto table = sample_mean_set_convergence<GraphSpace>(space, mu, candidates, sizes, trials, seed,
                                                       multi_vertex);
  table.platform = "path" + std::to_string(vertices);
  return table;
}

// --- tree oracle ---------------------------------------------------------------

struct TreeCounterexample {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> sample;
  std::size_t start = 0;
  std::size_t descent_result = 0;
  std::vector<std::size_t> mean_set;
};

struct TreeOracleReport {
  std::size_t trees = 0;
  std::size_t checks = 0;
  std::vector<TreeCounterexample> counterexamples;

  bool passed() const noexcept { return counterexamples.empty(); }
};

/// Random trees with up to `max_vertices` vertices; for each, random samples
/// of size 1..max_sample_size and a random start vertex. Checks that direct
/// descent ends inside the brute-force sample mean-set.
inline TreeOracleReport tree_oracle_batch(std::size_t tree_count, std::size_t max_vertices,
                                          std::size_t samples_per_tree, std::uint64_t seed,
                                          std::size_t max_sample_size = 15) {
  if (tree_count == 0 || max_vertices == 0 || samples_per_tree == 0 || max_sample_size == 0)
    throw std::invalid_argument("tree oracle counts must be positive");
  TreeOracleReport report;
  for (std::size_t t = 0; t < tree_count; ++t) {
    Rng rng = make_stream(seed, {t});
    std::uniform_int_distribution<std::size_t> size_pick(1, max_vertices);
    const FiniteGraph tree = random_tree(size_pick(rng), rng);
    const GraphSpace space(tree);
    const auto vertices = space.vertices();
    std::uniform_int_distribution<std::size_t> vertex_pick(0, tree.size() - 1);
    std::uniform_int_distribution<std::size_t> sample_size_pick(1, max_sample_size);
    ++report.trees;
    for (std::size_t s = 0; s < samples_per_tree; ++s) {
      std::vector<std::size_t> sample(sample_size_pick(rng));
      for (auto& v : sample) v = vertex_pick(rng);
      const std::size_t start = vertex_pick(rng);
      const auto ms = brute_force_mean_set<GraphSpace>(space, sample, vertices);
      const auto d = direct_descent<GraphSpace>(space, sample, start, 10 * (tree.size() + sample.size()));
      ++report.checks;
      if (std::find(ms.minimizers.begin(), ms.minimizers.end(), d.point) == ms.minimizers.end())
        report.counterexamples.push_back(
            {tree.size(), tree.edges(), sample, start, d.point, ms.minimizers});
    }
  }
  return report;
}

}  // namespace meanset_attack
