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

// Simulation of the iterated commitment / challenge / response
// authentication scheme over a platform group, and the eavesdropper's view
// of it.
//
// One round: the Prover draws a nonce r and commits x = H(r^{-1} t r). On
// challenge c = 0 it answers y = r and the Verifier checks x = H(y^{-1} t y);
// on c = 1 it answers y = s r and the Verifier checks x = H(y^{-1} w y).
// t is stored as the literal word s^{-1} w s, so both checks hash the same
// freely reduced word.

#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "meanset_attack/group.hpp"
#include "meanset_attack/random.hpp"
#include "meanset_attack/word.hpp"

namespace meanset_attack {

enum class KeyMode { classical, alternative };
enum class ChallengeMode { bernoulli, balanced };

inline std::string_view to_string(KeyMode m) {
  return m == KeyMode::classical ? "classical" : "alternative";
}
inline std::string_view to_string(ChallengeMode m) {
  return m == ChallengeMode::bernoulli ? "bernoulli" : "balanced";
}
inline KeyMode parse_key_mode(std::string_view s) {
  if (s == "classical") return KeyMode::classical;
  if (s == "alternative") return KeyMode::alternative;
  throw std::invalid_argument("unknown key mode '" + std::string(s) + "'");
}
inline ChallengeMode parse_challenge_mode(std::string_view s) {
  if (s == "bernoulli") return ChallengeMode::bernoulli;
  if (s == "balanced") return ChallengeMode::balanced;
  throw std::invalid_argument("unknown challenge mode '" + std::string(s) + "'");
}

using Digest = std::vector<std::uint8_t>;

inline constexpr int default_digest_bits = 256;

/// Fixed-width digest of the comma serialization of freeReduce(word).
/// Widths up to 256 bits truncate SHA-256, up to 512 truncate SHA-512.
inline Digest commitment_digest(const Word& word, int bits = default_digest_bits) {
  if (bits <= 0 || bits > 512 || bits % 8 != 0)
    throw std::invalid_argument("digest width must be a multiple of 8 in (0, 512]");
  const std::string text = serialize(free_reduce_letters(word.letters()));
  const EVP_MD* md = bits <= 256 ? EVP_sha256() : EVP_sha512();
  unsigned char buffer[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), buffer, &length, md, nullptr) != 1)
    throw std::runtime_error("digest computation failed");
  return Digest(buffer, buffer + bits / 8);
}

inline std::string to_hex(const Digest& d) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(d.size() * 2);
  for (std::uint8_t b : d) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

inline Digest from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("invalid hex digit");
  };
  Digest out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  return out;
}

struct KeyPair {
  GroupContext context;
  KeyMode mode = KeyMode::classical;
  /// Letters per word (classical) or permutation-braid factors (alternative).
  std::size_t length = 0;
  Word secret;
  Word base;
  /// Literal concatenation s^{-1} w s.
  Word conjugate;
};

struct PublicKey {
  Word base;
  Word conjugate;
};

inline PublicKey public_key(const KeyPair& keys) { return {keys.base, keys.conjugate}; }

/// Nonce distribution bound to the key generation mode.
inline Word draw_nonce(const GroupContext& ctx, KeyMode mode, std::size_t length, Rng& rng) {
  if (mode == KeyMode::alternative)
    return random_permutation_braid_product(ctx.strands(), length, rng);
  return random_word_uniform(ctx.alphabet(), length, rng);
}

/// s and w independent uniform words of length L.
inline KeyPair generate_keys_classical(const GroupContext& ctx, std::size_t length, Rng& rng) {
  if (length < 1) throw std::invalid_argument("key length must be positive");
  if (ctx.kind() == GroupKind::braid && ctx.strands() < 3)
    throw std::invalid_argument("braid platform needs at least 3 strands");
  Word s = random_word_uniform(ctx.alphabet(), length, rng);
  Word w = random_word_uniform(ctx.alphabet(), length, rng);
  Word t = concat(invert(s), w, s);
  return {ctx, KeyMode::classical, length, std::move(s), std::move(w), std::move(t)};
}

/// s = p_1^{-1} ... p_L^{-1}, w = p'_1 ... p'_L for uniform permutation braids.
inline KeyPair generate_keys_alternative(const GroupContext& ctx, std::size_t factors, Rng& rng) {
  if (ctx.kind() != GroupKind::braid)
    throw std::invalid_argument("alternative key generation requires a braid platform");
  if (ctx.strands() < 3) throw std::invalid_argument("braid platform needs at least 3 strands");
  if (factors < 1) throw std::invalid_argument("factor count must be positive");
  Word s = ctx.identity();
  for (std::size_t i = 0; i < factors; ++i)
    s = concat(s, invert(random_permutation_braid(ctx.strands(), rng)));
  Word w = random_permutation_braid_product(ctx.strands(), factors, rng);
  Word t = concat(invert(s), w, s);
  return {ctx, KeyMode::alternative, factors, std::move(s), std::move(w), std::move(t)};
}

inline KeyPair generate_keys(const GroupContext& ctx, KeyMode mode, std::size_t length, Rng& rng) {
  return mode == KeyMode::classical ? generate_keys_classical(ctx, length, rng)
                                    : generate_keys_alternative(ctx, length, rng);
}

struct RoundRecord {
  Digest commitment;
  int challenge = 0;
  Word response;
  /// Simulator-private; kept for analysis only.
  Word nonce;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

inline RoundRecord run_round(const KeyPair& keys, int challenge, Rng& rng,
                             int digest_bits = default_digest_bits) {
  if (challenge != 0 && challenge != 1) throw std::invalid_argument("challenge must be 0 or 1");
  Word r = draw_nonce(keys.context, keys.mode, keys.length, rng);
  RoundRecord rec{commitment_digest(concat(invert(r), keys.conjugate, r), digest_bits),
                  challenge, challenge == 0 ? r : concat(keys.secret, r), r};
  return rec;
}

inline bool verify_round(const PublicKey& pk, const RoundRecord& rec,
                         int digest_bits = default_digest_bits) {
  const Word& y = rec.response;
  const Word& target = rec.challenge == 0 ? pk.conjugate : pk.base;
  return commitment_digest(concat(invert(y), target, y), digest_bits) == rec.commitment;
}

struct Transcript {
  std::vector<RoundRecord> rounds;
  ChallengeMode mode = ChallengeMode::balanced;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// k challenge bits: fair coins, or a shuffled sequence with ceil(k/2) zeros.
inline std::vector<int> draw_challenges(std::size_t k, ChallengeMode mode, Rng& rng) {
  std::vector<int> bits(k, 0);
  if (mode == ChallengeMode::bernoulli) {
    std::bernoulli_distribution coin(0.5);
    for (auto& b : bits) b = coin(rng) ? 1 : 0;
  } else {
    std::fill(bits.begin() + static_cast<std::ptrdiff_t>(k - k / 2), bits.end(), 1);
    std::shuffle(bits.begin(), bits.end(), rng);
  }
  return bits;
}

inline Transcript run_protocol(const KeyPair& keys, std::size_t rounds, ChallengeMode mode,
                               Rng& rng, int digest_bits = default_digest_bits) {
  if (rounds < 1) throw std::invalid_argument("round count must be positive");
  Transcript tr;
  tr.mode = mode;
  tr.rounds.reserve(rounds);
  for (int c : draw_challenges(rounds, mode, rng))
    tr.rounds.push_back(run_round(keys, c, rng, digest_bits));
  return tr;
}

/// Responses split by challenge: R0 = {r_i}, R1 = {s r_j}.
struct EavesdroppedSamples {
  std::vector<Word> zero;
  std::vector<Word> one;

  /// The attack needs both sides nonempty.
  bool usable() const noexcept { return !zero.empty() && !one.empty(); }
};

inline EavesdroppedSamples eavesdrop(const Transcript& tr) {
  if (tr.rounds.empty()) throw std::invalid_argument("empty transcript");
  EavesdroppedSamples out;
  for (const RoundRecord& rec : tr.rounds)
    (rec.challenge == 0 ? out.zero : out.one).push_back(rec.response);
  return out;
}

// --- persistence -----------------------------------------------------------

/// One JSON object per round: index, challenge, response, commitment (hex), nonce.
inline std::string transcript_to_jsonl(const Transcript& tr) {
  std::string out;
  for (std::size_t i = 0; i < tr.rounds.size(); ++i) {
    const RoundRecord& rec = tr.rounds[i];
    nlohmann::ordered_json j;
    j["index"] = i;
    j["challenge"] = rec.challenge;
    j["response"] = serialize(rec.response);
    j["commitment"] = to_hex(rec.commitment);
    j["nonce"] = serialize(rec.nonce);
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

inline Transcript parse_transcript_jsonl(std::string_view text, Alphabet alphabet,
                                         ChallengeMode mode) {
  Transcript tr;
  tr.mode = mode;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    if (j.at("index").get<std::size_t>() != tr.rounds.size())
      throw std::invalid_argument("transcript rounds out of order");
    RoundRecord rec{from_hex(j.at("commitment").get<std::string>()), j.at("challenge").get<int>(),
                    parse_word(j.at("response").get<std::string>(), alphabet),
                    j.contains("nonce") ? parse_word(j.at("nonce").get<std::string>(), alphabet)
                                        : Word(alphabet)};
    tr.rounds.push_back(std::move(rec));
  }
  return tr;
}

/// Key material document: {group, n, L, mode, seed, s, w, t}. For braids n
/// is the strand count, otherwise the rank.
inline nlohmann::ordered_json keys_to_json(const KeyPair& keys, std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["group"] = std::string(to_string(keys.context.kind()));
  j["n"] = keys.context.kind() == GroupKind::braid ? keys.context.strands() : keys.context.rank();
  j["L"] = keys.length;
  j["mode"] = std::string(to_string(keys.mode));
  j["seed"] = seed;
  j["s"] = serialize(keys.secret);
  j["w"] = serialize(keys.base);
  j["t"] = serialize(keys.conjugate);
  return j;
}

inline KeyPair keys_from_json(const nlohmann::json& j) {
  const GroupKind kind = parse_group_kind(j.value("group", std::string("braid")));
  const GroupContext ctx = GroupContext::make(kind, j.at("n").get<int>());
  return {ctx,
          parse_key_mode(j.at("mode").get<std::string>()),
          j.at("L").get<std::size_t>(),
          parse_word(j.at("s").get<std::string>(), ctx.alphabet()),
          parse_word(j.at("w").get<std::string>(), ctx.alphabet()),
          parse_word(j.at("t").get<std::string>(), ctx.alphabet())};
}

}  // namespace meanset_attack
