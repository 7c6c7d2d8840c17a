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

#include <algorithm>
#include <set>

#include "meanset_attack/meanset.hpp"
#include "oracles.hpp"

using namespace meanset_attack;

namespace {
const GroupContext Z = GroupContext::free_abelian(1);

Word z(long v) {
  return Z.word(std::vector<Letter>(static_cast<std::size_t>(std::labs(v)), v < 0 ? -1 : 1));
}

long value(const Word& w) { return Z.exponents(w)[0]; }

std::vector<Word> z_range(long lo, long hi) {
  std::vector<Word> out;
  for (long v = lo; v <= hi; ++v) out.push_back(z(v));
  return out;
}
}  // namespace

TEST_CASE("sampling weight on Z") {
  const GroupSpace space(Z);
  const std::vector<Word> sample{z(0), z(0), z(3)};
  const Weight w = sample_weight(space, z(1), std::span<const Word>(sample));
  CHECK(w.sum_squares == 6);
  CHECK(w.n == 3);
  CHECK(w.value() == 2.0);
  // exhaustive check of M(v) * n against integer arithmetic
  for (long v = -5; v <= 5; ++v) {
    const long expected = v * v * 2 + (v - 3) * (v - 3);
    CHECK(sample_weight(space, z(v), std::span<const Word>(sample)).sum_squares ==
          static_cast<std::uint64_t>(expected));
  }
  const std::vector<Word> single{z(0)};
  CHECK(sample_weight(space, z(0), std::span<const Word>(single)).sum_squares == 0);
}

TEST_CASE("sampling weight on F2") {
  const auto F2 = GroupContext::free_group(2);
  const GroupSpace space(F2);
  const std::vector<Word> sample{F2.word({1}), F2.word({-1}), F2.word({2})};
  const Weight w = sample_weight(space, F2.identity(), std::span<const Word>(sample));
  CHECK(w == Weight{3, 3});
  CHECK(w.value() == 1.0);
}

TEST_CASE("weights compare exactly") {
  CHECK(Weight{1, 3} < Weight{1, 2});
  CHECK(Weight{2, 4} == Weight{1, 2});
  CHECK_FALSE(Weight{3, 3} < Weight{1, 1});
}

TEST_CASE("brute-force mean-sets") {
  const GroupSpace space(Z);
  const auto candidates = z_range(-5, 8);
  SECTION("singleton") {
    const std::vector<Word> sample{z(0), z(0), z(3)};
    const auto r = brute_force_mean_set<GroupSpace>(space, sample, candidates);
    REQUIRE(r.minimizers.size() == 1);
    CHECK(value(r.minimizers[0]) == 1);
    CHECK(r.minimal_weight == Weight{6, 3});
    CHECK(r.evaluations == candidates.size());
    CHECK(oracle::integer_mean_set({0, 0, 3}, -5, 8) == std::vector<long>{1});
  }
  SECTION("tie") {
    const std::vector<Word> sample{z(0), z(1)};
    const auto r = brute_force_mean_set<GroupSpace>(space, sample, candidates);
    REQUIRE(r.minimizers.size() == 2);
    CHECK(value(r.minimizers[0]) == 0);
    CHECK(value(r.minimizers[1]) == 1);
    CHECK(r.minimal_weight == Weight{1, 2});
  }
  SECTION("empty candidate set") {
    const std::vector<Word> sample{z(0)};
    CHECK_THROWS_AS(brute_force_mean_set<GroupSpace>(space, sample, std::span<const Word>{}),
                    std::invalid_argument);
  }
}

TEST_CASE("brute-force mean-set on F2 over a ball") {
  const auto F2 = GroupContext::free_group(2);
  const GroupSpace space(F2);
  const std::vector<Word> sample{F2.word({1}), F2.word({-1}), F2.word({2})};
  const auto ball = ball_candidates(F2.identity(), 3);
  CHECK(ball.size() == reduced_ball_size(F2.alphabet(), 3));
  const auto r = brute_force_mean_set<GroupSpace>(space, sample, ball);
  REQUIRE(r.minimizers.size() == 1);
  CHECK(r.minimizers[0].empty());
}

TEST_CASE("random integer samples agree with the exhaustive oracle") {
  const GroupSpace space(Z);
  Rng rng(12);
  std::uniform_int_distribution<long> pick(-4, 4);
  std::uniform_int_distribution<int> size(1, 9);
  const auto candidates = z_range(-6, 6);
  for (int t = 0; t < 200; ++t) {
    std::vector<long> xs(static_cast<std::size_t>(size(rng)));
    for (auto& x : xs) x = pick(rng);
    std::vector<Word> sample;
    for (long x : xs) sample.push_back(z(x));
    const auto r = brute_force_mean_set<GroupSpace>(space, sample, candidates);
    std::vector<long> got;
    for (const auto& m : r.minimizers) got.push_back(value(m));
    CHECK(got == oracle::integer_mean_set(xs, -6, 6));
    // descent from the far end reaches a minimizer (Z is a tree)
    const auto d = direct_descent<GroupSpace>(space, sample, z(10), 1000);
    CHECK(std::find(got.begin(), got.end(), value(d.point)) != got.end());
  }
}

TEST_CASE("direct descent") {
  const GroupSpace space(Z, false);
  SECTION("integer example") {
    const std::vector<Word> sample{z(0), z(0), z(3)};
    const auto d = direct_descent<GroupSpace>(space, sample, z(10), 100);
    CHECK(value(d.point) == 1);
    CHECK(d.steps == 9);
    CHECK(d.weight == Weight{6, 3});
    CHECK_FALSE(d.step_cap_reached);
  }
  SECTION("constant sample stays put") {
    const auto B4 = GroupContext::braid(4);
    const GroupSpace bspace(B4);
    const Word g = B4.word({1, -2, 3});
    const std::vector<Word> sample(4, g);
    const auto d = direct_descent<GroupSpace>(bspace, sample, g, 100);
    CHECK(d.point == g);
    CHECK(d.steps == 0);
    CHECK(d.weight.sum_squares == 0);
  }
  SECTION("step cap") {
    const std::vector<Word> sample{z(0)};
    const auto d = direct_descent<GroupSpace>(space, sample, z(10), 3);
    CHECK(value(d.point) == 7);
    CHECK(d.steps == 3);
    CHECK(d.step_cap_reached);
  }
  SECTION("start policies") {
    const std::vector<Word> sample{z(5), z(0), z(1), z(2)};
    CHECK(value(choose_start(space, std::span<const Word>(sample), StartPolicy::min_weight_sample,
                             nullptr)) == 2);
    // equal weights: the first occurrence wins
    const std::vector<Word> tied{z(3), z(1)};
    CHECK(value(choose_start(space, std::span<const Word>(tied), StartPolicy::min_weight_sample,
                             nullptr)) == 3);
    Rng rng(1);
    const Word s = choose_start(space, std::span<const Word>(sample), StartPolicy::random_sample, &rng);
    CHECK(std::find(sample.begin(), sample.end(), s) != sample.end());
    CHECK_THROWS(choose_start(space, std::span<const Word>(sample), StartPolicy::random_sample, nullptr));
  }
}

TEST_CASE("descent trajectories decrease strictly") {
  Rng rng(21);
  for (auto ctx : {GroupContext::free_group(2), GroupContext::free_abelian(2), GroupContext::braid(4)}) {
    for (int t = 0; t < 20; ++t) {
      std::vector<Word> sample;
      for (int i = 0; i < 8; ++i) sample.push_back(random_word_uniform(ctx.alphabet(), 6, rng));
      DescentParams params;
      const auto d = direct_descent(ctx, sample, params);
      for (std::size_t i = 1; i < d.trajectory.size(); ++i)
        CHECK(d.trajectory[i] < d.trajectory[i - 1]);
      CHECK(d.steps <= d.trajectory.front());
      CHECK(d.steps <= default_max_steps(sample));
      // local minimum over all directions
      const GroupSpace space(ctx, true);
      if (!d.step_cap_reached)
        for (const auto& nb : space.neighbors(d.point))
          CHECK_FALSE(sample_weight(space, nb, std::span<const Word>(sample)) < d.weight);
    }
  }
}

TEST_CASE("deadline aborts descent") {
  const GroupSpace space(Z);
  const std::vector<Word> sample{z(0)};
  const Deadline past = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(direct_descent<GroupSpace>(space, sample, z(5), 100, past), TimeBudgetExceeded);
}

TEST_CASE("shift invariance of weights and mean-sets") {
  Rng rng(31);
  for (auto ctx : {GroupContext::free_abelian(1), GroupContext::free_group(2), GroupContext::braid(4)}) {
    const GroupSpace space(ctx);
    for (int t = 0; t < 10; ++t) {
      std::vector<Word> sample, shifted;
      const Word s = random_word_uniform(ctx.alphabet(), 5, rng);
      for (int i = 0; i < 5; ++i) {
        sample.push_back(random_word_uniform(ctx.alphabet(), 3, rng));
        shifted.push_back(concat(s, sample.back()));
      }
      const Word v = random_word_uniform(ctx.alphabet(), 4, rng);
      CHECK(sample_weight(space, v, std::span<const Word>(sample)) ==
            sample_weight(space, concat(s, v), std::span<const Word>(shifted)));

      const auto ball = ball_candidates(sample[0], 2);
      const auto shifted_ball = ball_candidates(shifted[0], 2);
      const auto a = brute_force_mean_set<GroupSpace>(space, sample, ball);
      const auto b = brute_force_mean_set<GroupSpace>(space, shifted, shifted_ball);
      REQUIRE(a.minimizers.size() == b.minimizers.size());
      CHECK(a.minimal_weight == b.minimal_weight);
      for (std::size_t i = 0; i < a.minimizers.size(); ++i)
        CHECK(ctx.equal(concat(s, a.minimizers[i]), b.minimizers[i]));
    }
  }
}

TEST_CASE("graph distances") {
  FiniteGraph path(3, {{0, 1}, {1, 2}});
  CHECK(graph_distances(path, 0) == std::vector<std::size_t>{0, 1, 2});
  FiniteGraph single(1);
  CHECK(graph_distances(single, 0) == std::vector<std::size_t>{0});
  FiniteGraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  const GraphSpace space(star);
  CHECK(space.distance(0, 3) == 1);
  CHECK(space.distance(1, 2) == 2);
  CHECK(space.distance(2, 1) == 2);
  FiniteGraph disconnected(3, {{0, 1}});
  CHECK_THROWS_AS(GraphSpace(disconnected), std::invalid_argument);
  CHECK_THROWS_AS(star.add_edge(0, 0), std::invalid_argument);
}

TEST_CASE("random trees") {
  Rng rng(41);
  CHECK(random_tree(1, rng).edges().empty());
  CHECK(random_tree(2, rng).edges().size() == 1);
  for (int i = 0; i < 50; ++i) {
    const auto t = random_tree(6, rng);
    CHECK(t.edges().size() == 5);
    CHECK(is_connected(t));  // n-1 edges and connected: a tree
    std::set<std::pair<std::size_t, std::size_t>> unique(t.edges().begin(), t.edges().end());
    CHECK(unique.size() == 5);
  }
}

TEST_CASE("Pruefer decoding is uniform over labelled trees on 4 vertices") {
  // Cayley: 4^2 = 16 labelled trees on 4 vertices
  Rng rng(43);
  std::map<std::vector<std::pair<std::size_t, std::size_t>>, int> counts;
  const int draws = 32000;
  for (int i = 0; i < draws; ++i) {
    auto e = random_tree(4, rng).edges();
    std::sort(e.begin(), e.end());
    ++counts[e];
  }
  CHECK(counts.size() == 16);
  for (auto& [edges, c] : counts) CHECK(std::abs(c - draws / 16) < 200);
}

TEST_CASE("star with a sample on one leaf") {
  FiniteGraph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const GraphSpace space(star);
  const std::vector<std::size_t> sample{3, 3, 3};
  const auto ms = brute_force_mean_set<GraphSpace>(space, sample, space.vertices());
  CHECK(ms.minimizers == std::vector<std::size_t>{3});
  const auto sums = oracle::graph_weight_sums(5, star.edges(), sample);
  CHECK(std::min_element(sums.begin(), sums.end()) - sums.begin() == 3);
  for (std::size_t start = 0; start < 5; ++start)
    CHECK(direct_descent<GraphSpace>(space, sample, start, 100).point == 3);
}
