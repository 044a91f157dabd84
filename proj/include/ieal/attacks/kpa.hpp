#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ieal/attack_report.hpp"
#include "ieal/cipher.hpp"
#include "ieal/image.hpp"
#include "ieal/image_io.hpp"
#include "ieal/keyspace.hpp"
#include "ieal/lucas.hpp"
#include "ieal/number_theory.hpp"

namespace ieal::attacks {

/// How often each dictionary size occurs across the 384 keystream positions:
/// position k's dictionary is every position holding the same byte value, so
/// its size is the value's occurrence count within the cycle.
struct DictionaryStats {
  std::map<std::uint64_t, std::uint64_t> positions_by_size;

  number_theory::Rational probability(std::uint64_t size) const {
    const auto it = positions_by_size.find(size);
    const long long count =
        it == positions_by_size.end() ? 0 : static_cast<long long>(it->second);
    return number_theory::Rational(count, kLucasPeriod);
  }
};

inline DictionaryStats dictionary_stats() {
  std::array<std::uint64_t, 256> occurrences{};
  for (std::uint8_t b : kLucasCycle) ++occurrences[b];
  DictionaryStats stats;
  for (std::uint8_t b : kLucasCycle) ++stats.positions_by_size[occurrences[b]];
  return stats;
}

/// All cycle positions holding the leaked byte: the S candidates.
inline std::vector<std::uint64_t> kpa_dictionary(std::uint8_t s0) {
  std::vector<std::uint64_t> dict;
  for (std::uint64_t k = 0; k < kLucasPeriod; ++k) {
    if (kLucasCycle[k] == s0) dict.push_back(k);
  }
  return dict;
}

namespace detail {

inline bool is_flat(const image_io::Histogram& h) {
  return std::all_of(h.counts.begin(), h.counts.end(),
                     [&](std::uint64_t c) { return c == h.counts[0]; });
}

}  // namespace detail

/// Known-plaintext attack. The scrambling fixed point (0,0) leaks one
/// keystream byte, s(0) = I(0,0) xor C(0,0), which narrows S to a dictionary
/// of at most 16 positions. Unmasking under a surviving candidate turns the
/// cipher into scrambling only; re-scrambling one round at a time until the
/// plaintext reappears at step n gives T = m - n. Every answer is gated on a
/// full decryption check before it is returned.
inline AttackReport kpa(const Image& plain, const Image& cipher) {
  if (plain.size() != cipher.size()) {
    throw std::invalid_argument("kpa: plain and cipher sizes differ");
  }
  const auto start = std::chrono::steady_clock::now();
  const int size = plain.size();
  const std::uint64_t m = number_theory::arnold_period(size).period;

  AttackReport report;
  report.attack = "kpa";

  const auto s0 = static_cast<std::uint8_t>(plain(0, 0) ^ cipher(0, 0));
  report.s0 = s0;
  const auto dict = kpa_dictionary(s0);
  report.candidate_set = dict;
  if (dict.empty()) {
    report.notes.push_back(
        "leaked byte never occurs in the Lucas cycle; pair is not from this "
        "cipher");
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return report;
  }

  const image_io::Histogram plain_hist = image_io::histogram(plain);
  report.degenerate_histogram = detail::is_flat(plain_hist);
  if (report.degenerate_histogram) {
    report.notes.push_back(
        "flat plaintext histogram; filter skipped, all candidates verified");
  }

  std::uint64_t filtered_out = 0;
  for (const std::uint64_t s : dict) {
    const Image unmasked = mask(cipher, s);
    if (!report.degenerate_histogram &&
        !(image_io::histogram(unmasked) == plain_hist)) {
      ++filtered_out;
      continue;
    }
    Image current = unmasked;
    for (std::uint64_t n = 1; n <= m; ++n) {
      current = scramble(current, 1);
      if (current == plain) {
        const std::uint64_t t = (m - n) % m;
        const Key key{t, s};
        if (decrypt(cipher, key) == plain) {
          report.success = true;
          report.recovered_key = keyspace::CanonicalKey{t, s, m};
          report.recovered_plaintext = plain;
          report.cycle_n = n;
          break;
        }
      }
    }
    if (report.success) break;
  }
  if (filtered_out > 0) {
    report.notes.push_back("histogram filter removed " +
                           std::to_string(filtered_out) + " of " +
                           std::to_string(dict.size()) + " candidates");
  }
  if (!report.success) {
    report.notes.push_back(
        "no dictionary candidate survived full verification");
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace ieal::attacks
