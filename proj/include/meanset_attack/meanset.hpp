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

// Sampling weights, brute-force sample mean-sets and the direct descent
// heuristic, over any space that offers a distance and neighbour directions:
// platform groups (GroupSpace) and explicit finite graphs (GraphSpace).

#pragma once

#include <algorithm>
#include <chrono>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "meanset_attack/group.hpp"
#include "meanset_attack/random.hpp"
#include "meanset_attack/word.hpp"

namespace meanset_attack {

/// Exact sampling weight M_n(v) = sum_squares / n.
struct Weight {
  std::uint64_t sum_squares = 0;
  std::uint64_t n = 1;

  double value() const noexcept {
    return static_cast<double>(sum_squares) / static_cast<double>(n);
  }

  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) noexcept {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(a.sum_squares) * b.n;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(b.sum_squares) * a.n;
    return lhs <=> rhs;
  }
  friend bool operator==(const Weight& a, const Weight& b) noexcept {
    return (a <=> b) == 0;
  }
};

template <class S>
concept MetricSpace = requires(const S& s, const typename S::element_type& a) {
  { s.distance(a, a) } -> std::convertible_to<std::size_t>;
  { s.same(a, a) } -> std::convertible_to<bool>;
};

template <class S>
concept DescentSpace = MetricSpace<S> && requires(const S& s, const typename S::element_type& a) {
  { s.neighbors(a) } -> std::convertible_to<std::vector<typename S::element_type>>;
};

/// A platform group seen as its Cayley graph. Neighbours of g are g*x for
/// the direction list, in direction order.
class GroupSpace {
 public:
  using element_type = Word;

  explicit GroupSpace(const GroupContext& ctx, bool delta_directions = true)
      : ctx_(&ctx), directions_(ctx.directions(delta_directions)) {}

  std::size_t distance(const Word& u, const Word& v) const { return ctx_->distance(u, v); }
  bool same(const Word& u, const Word& v) const { return ctx_->equal(u, v); }

  std::vector<Word> neighbors(const Word& g) const {
    std::vector<Word> out;
    out.reserve(directions_.size());
    for (const Word& x : directions_) out.push_back(ctx_->normalize(concat(g, x)));
    return out;
  }

  const GroupContext& context() const noexcept { return *ctx_; }
  const std::vector<Word>& directions() const noexcept { return directions_; }

 private:
  const GroupContext* ctx_;
  std::vector<Word> directions_;
};

// --- finite graphs -------------------------------------------------------

/// Undirected connected graph on vertices 0..n-1.
class FiniteGraph {
 public:
  explicit FiniteGraph(std::size_t vertex_count) : adjacency_(vertex_count) {
    if (vertex_count == 0) throw std::invalid_argument("graph needs at least one vertex");
  }

  FiniteGraph(std::size_t vertex_count,
              const std::vector<std::pair<std::size_t, std::size_t>>& edges)
      : FiniteGraph(vertex_count) {
    for (auto [a, b] : edges) add_edge(a, b);
  }

  void add_edge(std::size_t a, std::size_t b) {
    if (a >= size() || b >= size() || a == b)
      throw std::invalid_argument("invalid edge");
    auto insert_sorted = [](std::vector<std::size_t>& list, std::size_t v) {
      list.insert(std::lower_bound(list.begin(), list.end(), v), v);
    };
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }

  std::size_t size() const noexcept { return adjacency_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept {
    return edges_;
  }

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

inline constexpr std::size_t unreachable = std::numeric_limits<std::size_t>::max();

/// Breadth-first distances from `source`; unreachable vertices get `unreachable`.
inline std::vector<std::size_t> graph_distances(const FiniteGraph& graph, std::size_t source) {
  std::vector<std::size_t> dist(graph.size(), unreachable);
  std::queue<std::size_t> frontier;
  dist.at(source) = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t u : graph.neighbors(v)) {
      if (dist[u] == unreachable) {
        dist[u] = dist[v] + 1;
        frontier.push(u);
      }
    }
  }
  return dist;
}

inline bool is_connected(const FiniteGraph& graph) {
  const auto d = graph_distances(graph, 0);
  return std::find(d.begin(), d.end(), unreachable) == d.end();
}

/// Uniform labelled tree: decodes a uniformly random Pruefer sequence.
inline FiniteGraph random_tree(std::size_t vertex_count, Rng& rng) {
  FiniteGraph tree(vertex_count);
  if (vertex_count == 1) return tree;
  if (vertex_count == 2) {
    tree.add_edge(0, 1);
    return tree;
  }
  std::uniform_int_distribution<std::size_t> pick(0, vertex_count - 1);
  std::vector<std::size_t> code(vertex_count - 2);
  for (auto& c : code) c = pick(rng);

  std::vector<std::size_t> degree(vertex_count, 1);
  for (std::size_t c : code) ++degree[c];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (degree[v] == 1) leaves.push(v);
  for (std::size_t c : code) {
    const std::size_t leaf = leaves.top();
    leaves.pop();
    tree.add_edge(leaf, c);
    if (--degree[c] == 1) leaves.push(c);
  }
  const std::size_t a = leaves.top();
  leaves.pop();
  tree.add_edge(a, leaves.top());
  return tree;
}

/// Graph with all-pairs distances precomputed; vertices are the elements.
class GraphSpace {
 public:
  using element_type = std::size_t;

  explicit GraphSpace(const FiniteGraph& graph) : graph_(&graph) {
    if (!is_connected(graph)) throw std::invalid_argument("graph is not connected");
    distances_.reserve(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v) distances_.push_back(graph_distances(graph, v));
  }

  std::size_t distance(std::size_t u, std::size_t v) const { return distances_.at(u).at(v); }
  bool same(std::size_t u, std::size_t v) const { return u == v; }
  std::vector<std::size_t> neighbors(std::size_t v) const { return graph_->neighbors(v); }

  std::vector<std::size_t> vertices() const {
    std::vector<std::size_t> out(graph_->size());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = v;
    return out;
  }

  const FiniteGraph& graph() const noexcept { return *graph_; }

 private:
  const FiniteGraph* graph_;
  std::vector<std::vector<std::size_t>> distances_;
};

// --- weights and mean-sets -----------------------------------------------

template <MetricSpace S>
Weight sample_weight(const S& space, const typename S::element_type& v,
                     std::span<const typename S::element_type> sample) {
  if (sample.empty()) throw std::invalid_argument("sample must be nonempty");
  Weight w{0, sample.size()};
  for (const auto& g : sample) {
    const std::uint64_t d = space.distance(v, g);
    w.sum_squares += d * d;
  }
  return w;
}

template <class E>
struct MeanSetResult {
  std::vector<E> minimizers;
  Weight minimal_weight;
  std::size_t evaluations = 0;
};

/// Exact argmin of the sampling weight over `candidates`. Minimizers equal
/// in the space are reported once, in candidate order.
template <MetricSpace S>
MeanSetResult<typename S::element_type> brute_force_mean_set(
    const S& space, std::span<const typename S::element_type> sample,
    std::span<const typename S::element_type> candidates) {
  if (candidates.empty()) throw std::invalid_argument("candidate set is empty");
  MeanSetResult<typename S::element_type> result;
  std::optional<Weight> best;
  for (const auto& c : candidates) {
    const Weight w = sample_weight(space, c, sample);
    ++result.evaluations;
    if (!best || w < *best) {
      best = w;
      result.minimizers.clear();
      result.minimizers.push_back(c);
    } else if (w == *best) {
      const bool duplicate = std::any_of(result.minimizers.begin(), result.minimizers.end(),
                                         [&](const auto& m) { return space.same(m, c); });
      if (!duplicate) result.minimizers.push_back(c);
    }
  }
  result.minimal_weight = *best;
  return result;
}

/// center * b for every freely reduced b with |b| <= radius, in enumeration
/// order (the identity first).
inline std::vector<Word> ball_candidates(const Word& center, std::size_t radius) {
  std::vector<Word> out;
  out.reserve(reduced_ball_size(center.alphabet(), radius));
  for_each_reduced_word(center.alphabet(), radius, [&](const std::vector<Letter>& b) {
    out.push_back(free_reduce(concat(center, make_word_unchecked(center.alphabet(), b))));
    return true;
  });
  return out;
}

// --- direct descent --------------------------------------------------------

/// Thrown when a computation passes its wall-clock deadline.
class TimeBudgetExceeded : public std::runtime_error {
 public:
  TimeBudgetExceeded() : std::runtime_error("time budget exceeded") {}
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

inline void check_deadline(const Deadline& deadline) {
  if (deadline && std::chrono::steady_clock::now() > *deadline) throw TimeBudgetExceeded();
}

enum class StartPolicy { min_weight_sample, random_sample };

struct DescentParams {
  StartPolicy start = StartPolicy::min_weight_sample;
  /// 0 selects 10 * (average sample length + n).
  std::size_t max_steps = 0;
  /// Adds Delta and Delta^{-1} as directions in braid groups.
  bool delta_directions = true;
  Deadline deadline{};
};

template <class E>
struct DescentResult {
  E point;
  Weight weight;
  std::size_t steps = 0;
  std::size_t evaluations = 0;
  bool step_cap_reached = false;
  /// Sum of squared distances at the start and after every accepted step.
  std::vector<std::uint64_t> trajectory;
};

inline std::size_t default_max_steps(std::span<const Word> sample) {
  std::size_t total = 0;
  for (const Word& w : sample) total += w.size();
  const std::size_t n = sample.size();
  return 10 * ((n ? total / n : 0) + n);
}

/// Greedy descent: move to the neighbour with the smallest weight (first in
/// neighbour order on ties) while that strictly improves; stop at a local
/// minimum or after `max_steps` accepted moves.
template <DescentSpace S>
DescentResult<typename S::element_type> direct_descent(
    const S& space, std::span<const typename S::element_type> sample,
    typename S::element_type start, std::size_t max_steps, const Deadline& deadline = {}) {
  DescentResult<typename S::element_type> result{std::move(start), {}, 0, 0, false, {}};
  result.weight = sample_weight(space, result.point, sample);
  result.evaluations = 1;
  result.trajectory.push_back(result.weight.sum_squares);
  while (true) {
    check_deadline(deadline);
    std::optional<std::pair<typename S::element_type, Weight>> best;
    for (auto& candidate : space.neighbors(result.point)) {
      const Weight w = sample_weight(space, candidate, sample);
      ++result.evaluations;
      if (!best || w < best->second) best.emplace(std::move(candidate), w);
    }
    if (!best || !(best->second < result.weight)) break;
    if (result.steps >= max_steps) {
      result.step_cap_reached = true;
      break;
    }
    result.point = std::move(best->first);
    result.weight = best->second;
    ++result.steps;
    result.trajectory.push_back(result.weight.sum_squares);
  }
  return result;
}

/// Sample element chosen by `policy`; ties in weight go to the first occurrence.
template <MetricSpace S>
typename S::element_type choose_start(const S& space,
                                      std::span<const typename S::element_type> sample,
                                      StartPolicy policy, Rng* rng,
                                      const Deadline& deadline = {}) {
  if (sample.empty()) throw std::invalid_argument("sample must be nonempty");
  if (policy == StartPolicy::random_sample) {
    if (!rng) throw std::invalid_argument("random start requires an rng");
    std::uniform_int_distribution<std::size_t> pick(0, sample.size() - 1);
    return sample[pick(*rng)];
  }
  std::size_t best_index = 0;
  std::optional<Weight> best;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    check_deadline(deadline);
    const Weight w = sample_weight(space, sample[i], sample);
    if (!best || w < *best) {
      best = w;
      best_index = i;
    }
  }
  return sample[best_index];
}

/// Descent in a platform group with the start and step cap from `params`.
inline DescentResult<Word> direct_descent(const GroupContext& ctx, std::span<const Word> sample,
                                          const DescentParams& params, Rng* rng = nullptr) {
  const GroupSpace space(ctx, params.delta_directions);
  Word start = ctx.normalize(choose_start(space, sample, params.start, rng, params.deadline));
  const std::size_t cap = params.max_steps ? params.max_steps : default_max_steps(sample);
  return direct_descent(space, sample, std::move(start), cap, params.deadline);
}

}  // namespace meanset_attack
