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

// The mean-set attack: descend to sample centres g0 of R0 and g1 of R1 and
// propose z = g1 g0^{-1} as the secret. The error-ball variant tries
// z = g1 e g0^{-1} for every freely reduced e up to a given length.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "meanset_attack/group.hpp"
#include "meanset_attack/meanset.hpp"
#include "meanset_attack/protocol.hpp"
#include "meanset_attack/word.hpp"

namespace meanset_attack {

enum class AttackStatus { success, failure, budget_exceeded };

inline std::string_view to_string(AttackStatus s) {
  switch (s) {
    case AttackStatus::success: return "success";
    case AttackStatus::failure: return "failure";
    case AttackStatus::budget_exceeded: return "budget_exceeded";
  }
  return "unknown";
}

struct AttackParams {
  DescentParams descent{};
  /// Maximal length of the enumerated error word e; 0 is the plain attack.
  std::size_t error_radius = 0;
  /// Upper bound on the number of enumerated error words.
  std::size_t node_budget = 5'000'000;
};

struct AttackOutcome {
  AttackStatus status = AttackStatus::failure;
  std::optional<Word> recovered;
  /// Recovered element equals the true secret (needs the secret).
  bool exact_secret = false;
  /// Recovered element satisfies t = z^{-1} w z.
  bool conjugacy_solution = false;
  /// |g1^{-1} s g0| (needs the secret).
  std::optional<std::size_t> error_length;
  std::optional<Word> g0;
  std::optional<Word> g1;
  std::size_t steps_g0 = 0;
  std::size_t steps_g1 = 0;
  std::size_t candidates_checked = 0;
};

/// Predicate accepting a candidate secret.
using CandidateCheck = std::function<bool(const Word&)>;

/// t = z^{-1} w z under the platform's exact equality.
inline CandidateCheck conjugacy_check(const GroupContext& ctx, const PublicKey& pk) {
  return [&ctx, pk](const Word& z) {
    return ctx.equal(pk.conjugate, concat(invert(z), pk.base, z));
  };
}

/// Accepts exactly the true secret. For platforms where conjugation is
/// trivial (abelian) and every z passes the conjugacy equation.
inline CandidateCheck secret_oracle_check(const GroupContext& ctx, const Word& secret) {
  return [&ctx, secret](const Word& z) { return ctx.equal(z, secret); };
}

struct ErrorElement {
  Word element;
  std::size_t length = 0;
};

/// e = g1^{-1} s g0, so that g1 e g0^{-1} = s.
inline ErrorElement error_element(const Word& g0, const Word& g1, const Word& secret,
                                  const GroupContext& ctx) {
  Word e = ctx.normalize(concat(invert(g1), secret, g0));
  const std::size_t len = ctx.length(e);
  return {std::move(e), len};
}

/// Error-ball attack. `secret`, when given, is used only for the outcome
/// bookkeeping (exact_secret, error_length); `check` overrides the default
/// conjugacy predicate.
inline AttackOutcome attack_with_error_ball(const GroupContext& ctx, const PublicKey& pk,
                                            std::span<const Word> r0, std::span<const Word> r1,
                                            const AttackParams& params, Rng* rng = nullptr,
                                            const std::optional<Word>& secret = std::nullopt,
                                            CandidateCheck check = {}) {
  if (r0.empty() || r1.empty())
    throw std::invalid_argument("mean-set attack needs nonempty R0 and R1");
  if (!check) check = conjugacy_check(ctx, pk);

  AttackOutcome out;
  const DescentResult<Word> d0 = direct_descent(ctx, r0, params.descent, rng);
  const DescentResult<Word> d1 = direct_descent(ctx, r1, params.descent, rng);
  out.g0 = d0.point;
  out.g1 = d1.point;
  out.steps_g0 = d0.steps;
  out.steps_g1 = d1.steps;

  const Word g0_inv = invert(d0.point);
  bool budget_hit = false;
  for_each_reduced_word(ctx.alphabet(), params.error_radius, [&](const std::vector<Letter>& e) {
    if (out.candidates_checked >= params.node_budget) {
      budget_hit = true;
      return false;
    }
    ++out.candidates_checked;
    check_deadline(params.descent.deadline);
    Word z = ctx.normalize(concat(d1.point, make_word_unchecked(ctx.alphabet(), e), g0_inv));
    if (check(z)) {
      out.recovered = std::move(z);
      return false;
    }
    return true;
  });

  if (out.recovered) {
    out.status = AttackStatus::success;
    out.conjugacy_solution =
        ctx.equal(pk.conjugate, concat(invert(*out.recovered), pk.base, *out.recovered));
  } else {
    out.status = budget_hit ? AttackStatus::budget_exceeded : AttackStatus::failure;
  }
  if (secret) {
    out.exact_secret = out.recovered && ctx.equal(*out.recovered, *secret);
    out.error_length = error_element(d0.point, d1.point, *secret, ctx).length;
  }
  return out;
}

/// Plain mean-set attack: z = g1 g0^{-1}, accepted iff t = z^{-1} w z.
inline AttackOutcome mean_set_attack(const GroupContext& ctx, const PublicKey& pk,
                                     std::span<const Word> r0, std::span<const Word> r1,
                                     const DescentParams& descent, Rng* rng = nullptr,
                                     const std::optional<Word>& secret = std::nullopt) {
  AttackParams params;
  params.descent = descent;
  params.error_radius = 0;
  return attack_with_error_ball(ctx, pk, r0, r1, params, rng, secret);
}

}  // namespace meanset_attack
