#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "ieal/attack_report.hpp"
#include "ieal/cipher.hpp"
#include "ieal/image.hpp"
#include "ieal/image_io.hpp"
#include "ieal/keyspace.hpp"
#include "ieal/lucas.hpp"
#include "ieal/number_theory.hpp"

namespace ieal::attacks {

/// Lower score = more plaintext-like. Must be deterministic and safe to call
/// from several workers at once.
using PlaintextScorer = std::function<double(const Image&)>;

inline PlaintextScorer smoothness_scorer() {
  return [](const Image& image) {
    return static_cast<double>(image_io::smoothness(image));
  };
}

inline PlaintextScorer exact_match_scorer(Image known) {
  return [known = std::move(known)](const Image& image) {
    return image == known ? 0.0 : 1.0;
  };
}

namespace detail {

struct BruteBest {
  double score = std::numeric_limits<double>::infinity();
  std::uint64_t t = 0;
  std::uint64_t s = 0;

  // Lexicographic (score, t, s): makes the winner unique, so parallel and
  // serial runs report the same key.
  bool beats(const BruteBest& other) const {
    if (score != other.score) return score < other.score;
    if (t != other.t) return t < other.t;
    return s < other.s;
  }
};

// Scores every S for one fixed T. The candidate plaintext for key (T, S) is
// plain[p] = C[fwd[p]] ^ L[(S + fwd[p]) mod 384], so the gathered cipher
// bytes and the mod-384 indices are hoisted out of the S loop.
inline void brute_force_one_t(const Image& cipher, std::uint64_t t,
                              const PlaintextScorer& scorer, Image& scratch,
                              BruteBest& best) {
  const auto fwd = arnold_map_table(cipher.size(), t);
  const auto& in = cipher.pixels();
  const std::size_t count = in.size();
  std::vector<std::uint8_t> gathered(count);
  std::vector<std::uint16_t> mask_index(count);
  for (std::size_t p = 0; p < count; ++p) {
    gathered[p] = in[fwd[p]];
    mask_index[p] = static_cast<std::uint16_t>(fwd[p] % kLucasPeriod);
  }
  std::uint8_t rotated[kLucasPeriod];
  auto& out = scratch.pixels();
  for (std::uint64_t s = 0; s < kLucasPeriod; ++s) {
    for (int k = 0; k < kLucasPeriod; ++k) {
      rotated[k] = kLucasCycle[(s + k) % kLucasPeriod];
    }
    for (std::size_t p = 0; p < count; ++p) {
      out[p] = static_cast<std::uint8_t>(gathered[p] ^ rotated[mask_index[p]]);
    }
    const double score = scorer(scratch);
    const BruteBest candidate{score, t, s};
    if (candidate.beats(best)) best = candidate;
  }
}

}  // namespace detail

/// Exhausts the m(N) * 384 canonical keys, decrypting under each and keeping
/// the scorer minimum. `workers` = 0 picks the hardware concurrency;
/// 1 forces a serial reference run. Any worker count reports the same key.
inline AttackReport brute_force(const Image& cipher,
                                const PlaintextScorer& scorer,
                                unsigned workers = 0) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t m =
      number_theory::arnold_period(cipher.size()).period;

  if (workers == 0) {
    workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
  }
  if (workers > m) workers = static_cast<unsigned>(m);

  std::vector<detail::BruteBest> bests(workers);
  if (workers == 1) {
    Image scratch = Image::filled(cipher.size(), 0);
    for (std::uint64_t t = 0; t < m; ++t) {
      detail::brute_force_one_t(cipher, t, scorer, scratch, bests[0]);
    }
  } else {
    std::atomic<std::uint64_t> next_t{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        Image scratch = Image::filled(cipher.size(), 0);
        for (std::uint64_t t = next_t.fetch_add(1); t < m;
             t = next_t.fetch_add(1)) {
          detail::brute_force_one_t(cipher, t, scorer, scratch, bests[w]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  detail::BruteBest best;
  for (const auto& b : bests) {
    if (b.beats(best)) best = b;
  }

  AttackReport report;
  report.attack = "brute_force";
  report.success = true;
  report.recovered_key = keyspace::CanonicalKey{best.t, best.s, m};
  report.recovered_plaintext = decrypt(cipher, Key{best.t, best.s});
  report.candidates_examined = m * kLucasPeriod;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace ieal::attacks
