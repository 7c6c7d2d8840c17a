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

#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace meanset_attack {

/// A signed generator index: `i` stands for x_i, `-i` for its inverse.
using Letter = std::int32_t;

/// Group alphabet X^{±1} with `rank` generators.
class Alphabet {
 public:
  constexpr explicit Alphabet(int rank) : rank_(rank) {
    if (rank < 1) throw std::invalid_argument("alphabet rank must be positive");
  }

  constexpr int rank() const noexcept { return rank_; }
  constexpr int letter_count() const noexcept { return 2 * rank_; }

  constexpr bool contains(Letter a) const noexcept {
    return a != 0 && a >= -rank_ && a <= rank_;
  }

  /// Signed letters in ascending numeric order: -m, ..., -1, 1, ..., m.
  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(letter_count()));
    for (Letter a = -rank_; a <= rank_; ++a)
      if (a != 0) out.push_back(a);
    return out;
  }

  friend constexpr bool operator==(Alphabet, Alphabet) = default;

 private:
  int rank_;
};

/// A finite sequence of signed generator indices over a fixed alphabet.
/// The empty word is the identity.
class Word {
 public:
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}

  Word(Alphabet alphabet, std::vector<Letter> letters)
      : alphabet_(alphabet), letters_(std::move(letters)) {
    for (Letter a : letters_)
      if (!alphabet_.contains(a))
        throw std::invalid_argument("letter " + std::to_string(a) +
                                    " outside alphabet of rank " +
                                    std::to_string(alphabet_.rank()));
  }

  Word(Alphabet alphabet, std::initializer_list<Letter> letters)
      : Word(alphabet, std::vector<Letter>(letters)) {}

  Alphabet alphabet() const noexcept { return alphabet_; }
  int rank() const noexcept { return alphabet_.rank(); }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  struct Unchecked {};
  Word(Alphabet alphabet, std::vector<Letter> letters, Unchecked)
      : alphabet_(alphabet), letters_(std::move(letters)) {}

  friend Word make_word_unchecked(Alphabet, std::vector<Letter>);

  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

/// Wraps letters already known to lie in `alphabet`. Internal fast path.
inline Word make_word_unchecked(Alphabet alphabet, std::vector<Letter> letters) {
  return Word(alphabet, std::move(letters), Word::Unchecked{});
}

// --- letter-level kernels ------------------------------------------------

/// Single stack pass; the output has no adjacent pair (a, -a).
inline std::vector<Letter> free_reduce_letters(std::span<const Letter> w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter a : w) {
    if (!out.empty() && out.back() == -a)
      out.pop_back();
    else
      out.push_back(a);
  }
  return out;
}

inline std::vector<Letter> invert_letters(std::span<const Letter> w) {
  std::vector<Letter> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[w.size() - 1 - i] = -w[i];
  return out;
}

inline std::size_t free_reduced_length(std::span<const Letter> w) {
  return free_reduce_letters(w).size();
}

// --- word operations -----------------------------------------------------

inline void require_same_alphabet(const Word& u, const Word& v) {
  if (u.alphabet() != v.alphabet())
    throw std::invalid_argument("alphabet mismatch: rank " +
                                std::to_string(u.rank()) + " vs rank " +
                                std::to_string(v.rank()));
}

inline Word invert(const Word& w) {
  return make_word_unchecked(w.alphabet(), invert_letters(w.letters()));
}

/// Juxtaposition; no cancellation is performed.
inline Word concat(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  std::vector<Letter> out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return make_word_unchecked(u.alphabet(), std::move(out));
}

template <class... Ws>
Word concat(const Word& u, const Word& v, const Ws&... rest) {
  return concat(concat(u, v), rest...);
}

inline Word free_reduce(const Word& w) {
  return make_word_unchecked(w.alphabet(), free_reduce_letters(w.letters()));
}

inline bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

// --- serialization -------------------------------------------------------

/// Decimal letters joined by single commas; the identity serializes to "".
inline std::string serialize(std::span<const Letter> letters) {
  std::string out;
  out.reserve(letters.size() * 3);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(letters[i]);
  }
  return out;
}

inline std::string serialize(const Word& w) { return serialize(w.letters()); }

inline Word parse_word(std::string_view text, Alphabet alphabet) {
  std::vector<Letter> letters;
  if (text.empty()) return Word(alphabet);
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view token =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                         : comma - pos);
    Letter value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last)
      throw std::invalid_argument("malformed word token '" + std::string(token) +
                                  "'");
    letters.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Word(alphabet, std::move(letters));
}

// --- enumeration ---------------------------------------------------------

/// Visits every freely reduced word of length <= max_length, shortest first
/// and lexicographically (ascending signed letters) within a length. The
/// visitor returns false to stop early. Returns the number of words visited.
template <class Visitor>
std::size_t for_each_reduced_word(Alphabet alphabet, std::size_t max_length,
                                  Visitor&& visit) {
  const std::vector<Letter> letters = alphabet.letters();
  std::size_t visited = 0;
  std::vector<Letter> current;

  // Depth-first enumeration of a fixed length in lexicographic order.
  auto enumerate_length = [&](auto&& self, std::size_t remaining) -> bool {
    if (remaining == 0) {
      ++visited;
      return visit(static_cast<const std::vector<Letter>&>(current));
    }
    for (Letter a : letters) {
      if (!current.empty() && current.back() == -a) continue;
      current.push_back(a);
      const bool keep_going = self(self, remaining - 1);
      current.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };

  for (std::size_t len = 0; len <= max_length; ++len)
    if (!enumerate_length(enumerate_length, len)) break;
  return visited;
}

/// Number of freely reduced words of length <= radius: 1 + sum 2m(2m-1)^{j-1}.
inline std::size_t reduced_ball_size(Alphabet alphabet, std::size_t radius) {
  const std::size_t q = static_cast<std::size_t>(alphabet.letter_count());
  std::size_t total = 1;
  std::size_t sphere = q;
  for (std::size_t j = 1; j <= radius; ++j) {
    total += sphere;
    sphere *= (q - 1);
  }
  return total;
}

}  // namespace meanset_attack
