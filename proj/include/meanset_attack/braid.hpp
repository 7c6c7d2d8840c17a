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

// Braid words over the Artin generators sigma_1 .. sigma_{n-1}:
// Dehornoy handle reduction, permutation braids and the half twist.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meanset_attack/word.hpp"

namespace meanset_attack {

/// Thrown when handle reduction exceeds its iteration or size guard.
class HandleReductionOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HandleReductionLimits {
  std::size_t max_reductions = 50'000'000;
  std::size_t max_word_length = 4'000'000;
};

namespace detail {

struct HandleSpan {
  std::size_t open = 0;
  std::size_t close = 0;
  bool found = false;
};

// A sigma_i-handle is sigma_i^e u sigma_i^{-e} where u only involves
// sigma_j with j > i. Scanning left to right with a stack of positions of
// strictly increasing generator index yields, for every position, the
// nearest earlier letter of index <= its own. The first closing position
// found this way ends a handle whose interior contains no handle at all,
// so the handle is permitted.
inline HandleSpan find_first_handle(const std::vector<Letter>& w,
                                    std::vector<std::size_t>& stack) {
  stack.clear();
  for (std::size_t j = 0; j < w.size(); ++j) {
    const Letter a = std::abs(w[j]);
    while (!stack.empty() && std::abs(w[stack.back()]) > a) stack.pop_back();
    if (!stack.empty()) {
      const std::size_t k = stack.back();
      if (w[k] == -w[j]) return {k, j, true};
      if (std::abs(w[k]) == a) stack.pop_back();
    }
    stack.push_back(j);
  }
  return {};
}

}  // namespace detail

/// Dehornoy handle reduction. Always reduces the handle whose closing letter
/// is leftmost. The result represents the same braid, contains no handle,
/// and is empty iff the input represents the identity.
inline std::vector<Letter> handle_reduce_letters(
    std::vector<Letter> w, const HandleReductionLimits& limits = {}) {
  std::vector<std::size_t> stack;
  std::vector<Letter> next;
  std::size_t reductions = 0;
  while (true) {
    const detail::HandleSpan h = detail::find_first_handle(w, stack);
    if (!h.found) return w;
    if (++reductions > limits.max_reductions || w.size() > limits.max_word_length) {
      std::ostringstream msg;
      msg << "handle reduction guard exceeded after " << reductions
          << " reductions (current length " << w.size() << ")";
      throw HandleReductionOverflow(msg.str());
    }
    const Letter e = w[h.open] > 0 ? 1 : -1;
    const Letter i = std::abs(w[h.open]);
    next.clear();
    next.reserve(w.size() + 2 * (h.close - h.open));
    next.insert(next.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(h.open));
    for (std::size_t p = h.open + 1; p < h.close; ++p) {
      const Letter x = w[p];
      if (std::abs(x) == i + 1) {
        // sigma_i^e sigma_{i+1}^d sigma_i^{-e} = sigma_{i+1}^{-e} sigma_i^d sigma_{i+1}^e
        next.push_back(-e * (i + 1));
        next.push_back(x > 0 ? i : -i);
        next.push_back(e * (i + 1));
      } else {
        next.push_back(x);
      }
    }
    next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(h.close) + 1,
                w.end());
    w.swap(next);
  }
}

inline bool has_handle(std::span<const Letter> w) {
  std::vector<std::size_t> stack;
  return detail::find_first_handle(std::vector<Letter>(w.begin(), w.end()), stack)
      .found;
}

/// Word problem in B_n via handle reduction.
inline bool braid_trivial(std::span<const Letter> w,
                          const HandleReductionLimits& limits = {}) {
  return handle_reduce_letters(free_reduce_letters(w), limits).empty();
}

/// Half twist (s1)(s2 s1)...(s_{n-1} ... s1); length n(n-1)/2.
inline std::vector<Letter> delta_letters(int strands) {
  if (strands < 2) throw std::invalid_argument("half twist needs at least 2 strands");
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(strands * (strands - 1) / 2));
  for (Letter top = 1; top < strands; ++top)
    for (Letter j = top; j >= 1; --j) out.push_back(j);
  return out;
}

/// Positive Artin word of the permutation braid of `perm` (a permutation of
/// 0..n-1). Built from the bubble-sort transcript, so the letter count equals
/// the number of inversions of `perm`.
inline std::vector<Letter> permutation_braid_letters(std::span<const int> perm) {
  std::vector<int> p(perm.begin(), perm.end());
  std::vector<Letter> swaps;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (p[i] > p[i + 1]) {
        std::swap(p[i], p[i + 1]);
        swaps.push_back(static_cast<Letter>(i + 1));
        swapped = true;
      }
    }
  }
  std::reverse(swaps.begin(), swaps.end());
  return swaps;
}

inline std::size_t inversion_count(std::span<const int> perm) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++count;
  return count;
}

}  // namespace meanset_attack
