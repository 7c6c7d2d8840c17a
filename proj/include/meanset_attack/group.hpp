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

// Platform groups: free group F_m, free abelian Z^m and braid group B_n,
// each with equality, (approximate) geodesic length, descent directions
// and samplers.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "meanset_attack/braid.hpp"
#include "meanset_attack/random.hpp"
#include "meanset_attack/word.hpp"

namespace meanset_attack {

enum class GroupKind { free, free_abelian, braid };

inline std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::free: return "free";
    case GroupKind::free_abelian: return "abelian";
    case GroupKind::braid: return "braid";
  }
  return "unknown";
}

inline GroupKind parse_group_kind(std::string_view text) {
  if (text == "free") return GroupKind::free;
  if (text == "abelian" || text == "free_abelian" || text == "z") return GroupKind::free_abelian;
  if (text == "braid") return GroupKind::braid;
  throw std::invalid_argument("unknown group kind '" + std::string(text) + "'");
}

struct BraidLengthOptions {
  /// Extra reduce passes through x x^{-1} insertions; the shortest result wins.
  int conjugation_passes = 0;
  HandleReductionLimits limits{};
};

/// Capability bundle for one platform group.
class GroupContext {
 public:
  static GroupContext free_group(int rank) {
    return GroupContext(GroupKind::free, Alphabet(rank), {});
  }
  static GroupContext free_abelian(int rank) {
    return GroupContext(GroupKind::free_abelian, Alphabet(rank), {});
  }
  static GroupContext braid(int strands, BraidLengthOptions options = {}) {
    if (strands < 2) throw std::invalid_argument("braid group needs at least 2 strands");
    return GroupContext(GroupKind::braid, Alphabet(strands - 1), options);
  }
  /// `rank` is the number of strands for braid groups.
  static GroupContext make(GroupKind kind, int rank, BraidLengthOptions options = {}) {
    switch (kind) {
      case GroupKind::free: return free_group(rank);
      case GroupKind::free_abelian: return free_abelian(rank);
      case GroupKind::braid: return braid(rank, options);
    }
    throw std::invalid_argument("unknown group kind");
  }

  GroupKind kind() const noexcept { return kind_; }
  Alphabet alphabet() const noexcept { return alphabet_; }
  int rank() const noexcept { return alphabet_.rank(); }
  int strands() const noexcept { return alphabet_.rank() + 1; }
  const BraidLengthOptions& braid_options() const noexcept { return braid_options_; }

  Word identity() const { return Word(alphabet_); }
  Word word(std::vector<Letter> letters) const { return Word(alphabet_, std::move(letters)); }

  /// Short representative used for elements carried through a computation.
  Word normalize(const Word& w) const {
    check(w);
    if (kind_ == GroupKind::free_abelian) return abelian_canonical(exponents(w));
    return free_reduce(w);
  }

  bool equal(const Word& u, const Word& v) const {
    check(u);
    check(v);
    switch (kind_) {
      case GroupKind::free:
        return free_reduce_letters(u.letters()) == free_reduce_letters(v.letters());
      case GroupKind::free_abelian: return exponents(u) == exponents(v);
      case GroupKind::braid:
        return braid_trivial(concat(u, invert(v)).letters(), braid_options_.limits);
    }
    return false;
  }

  bool is_identity(const Word& w) const { return length(w) == 0; }

  /// Exact geodesic length for free and free abelian groups; an upper bound
  /// for braids which is 0 exactly on the identity.
  std::size_t length(const Word& w) const {
    check(w);
    return length_letters(w.letters());
  }

  std::size_t length_letters(std::span<const Letter> w) const {
    switch (kind_) {
      case GroupKind::free: return free_reduced_length(w);
      case GroupKind::free_abelian: {
        std::size_t total = 0;
        for (long e : exponents_letters(w)) total += static_cast<std::size_t>(std::labs(e));
        return total;
      }
      case GroupKind::braid: return braid_length_approx(w);
    }
    return 0;
  }

  /// d(u, v) = |u^{-1} v|.
  std::size_t distance(const Word& u, const Word& v) const {
    check(u);
    check(v);
    std::vector<Letter> w = invert_letters(u.letters());
    w.insert(w.end(), v.begin(), v.end());
    return length_letters(w);
  }

  /// Handle-free braid representative; free reduction elsewhere.
  Word reduce(const Word& w) const {
    if (kind_ != GroupKind::braid) return normalize(w);
    return make_word_unchecked(
        alphabet_, free_reduce_letters(handle_reduce_letters(
                       free_reduce_letters(w.letters()), braid_options_.limits)));
  }

  /// Generators and inverses in ascending signed order, then Delta and
  /// Delta^{-1} for braids when requested.
  std::vector<Word> directions(bool with_delta) const {
    std::vector<Word> out;
    for (Letter a : alphabet_.letters()) out.push_back(make_word_unchecked(alphabet_, {a}));
    if (with_delta && kind_ == GroupKind::braid) {
      Word delta = delta_word();
      out.push_back(delta);
      out.push_back(invert(delta));
    }
    return out;
  }

  Word delta_word() const {
    if (kind_ != GroupKind::braid) throw std::logic_error("half twist requires a braid group");
    return make_word_unchecked(alphabet_, delta_letters(strands()));
  }

  std::vector<long> exponents(const Word& w) const { return exponents_letters(w.letters()); }

 private:
  GroupContext(GroupKind kind, Alphabet alphabet, BraidLengthOptions options)
      : kind_(kind), alphabet_(alphabet), braid_options_(options) {}

  void check(const Word& w) const {
    if (w.alphabet() != alphabet_)
      throw std::invalid_argument("word of rank " + std::to_string(w.rank()) +
                                  " used in a group of rank " + std::to_string(rank()));
  }

  std::vector<long> exponents_letters(std::span<const Letter> w) const {
    std::vector<long> e(static_cast<std::size_t>(rank()), 0);
    for (Letter a : w) e[static_cast<std::size_t>(std::abs(a) - 1)] += a > 0 ? 1 : -1;
    return e;
  }

  Word abelian_canonical(const std::vector<long>& e) const {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const Letter a = static_cast<Letter>(i + 1) * (e[i] >= 0 ? 1 : -1);
      out.insert(out.end(), static_cast<std::size_t>(std::labs(e[i])), a);
    }
    return make_word_unchecked(alphabet_, std::move(out));
  }

  std::size_t braid_length_approx(std::span<const Letter> w) const {
    const std::vector<Letter> reduced = free_reduce_letters(w);
    std::size_t best = reduced.size();
    if (best == 0) return 0;
    best = std::min(best, free_reduced_length(
                              handle_reduce_letters(reduced, braid_options_.limits)));
    if (braid_options_.conjugation_passes > 0 && best > 0) {
      // Deterministic per word so that d(u, v) is a function of the word u^{-1} v.
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (Letter a : reduced) h = (h ^ static_cast<std::uint32_t>(a)) * 0x100000001b3ULL;
      Rng rng(mix64(h));
      std::uniform_int_distribution<int> pick(0, alphabet_.letter_count() - 1);
      const std::vector<Letter> letters = alphabet_.letters();
      for (int pass = 0; pass < braid_options_.conjugation_passes; ++pass) {
        const Letter x = letters[static_cast<std::size_t>(pick(rng))];
        std::vector<Letter> inner{-x};
        inner.insert(inner.end(), reduced.begin(), reduced.end());
        std::vector<Letter> outer{x};
        const std::vector<Letter> stage = free_reduce_letters(
            handle_reduce_letters(free_reduce_letters(inner), braid_options_.limits));
        outer.insert(outer.end(), stage.begin(), stage.end());
        best = std::min(best, free_reduced_length(handle_reduce_letters(
                                  free_reduce_letters(outer), braid_options_.limits)));
      }
    }
    return best;
  }

  GroupKind kind_;
  Alphabet alphabet_;
  BraidLengthOptions braid_options_;
};

// --- samplers ------------------------------------------------------------

/// Exactly `length` letters, each uniform over the 2m signed letters.
inline Word random_word_uniform(Alphabet alphabet, std::size_t length, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, alphabet.letter_count() - 1);
  const int m = alphabet.rank();
  std::vector<Letter> out(length);
  for (auto& a : out) {
    const int u = pick(rng);
    a = u < m ? -(m - u) : u - m + 1;
  }
  return make_word_unchecked(alphabet, std::move(out));
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline Word permutation_braid(int strands, std::span<const int> perm) {
  if (perm.size() != static_cast<std::size_t>(strands))
    throw std::invalid_argument("permutation size does not match strand count");
  return make_word_unchecked(Alphabet(strands - 1), permutation_braid_letters(perm));
}

inline Word random_permutation_braid(int strands, Rng& rng) {
  if (strands < 2) throw std::invalid_argument("permutation braids need at least 2 strands");
  const std::vector<int> perm = random_permutation(strands, rng);
  return permutation_braid(strands, perm);
}

/// p_1 p_2 ... p_factors with independent uniform permutation braids.
inline Word random_permutation_braid_product(int strands, std::size_t factors, Rng& rng) {
  Word out(Alphabet(strands - 1));
  for (std::size_t i = 0; i < factors; ++i)
    out = concat(out, random_permutation_braid(strands, rng));
  return out;
}

}  // namespace meanset_attack
