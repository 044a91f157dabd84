#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <utility>

#include "ieal/attack_report.hpp"
#include "ieal/image.hpp"
#include "ieal/image_io.hpp"
#include "ieal/number_theory.hpp"
#include "ieal/oracle.hpp"

namespace ieal::attacks {

/// Feeds the ciphertext back into the oracle until the sequence returns to
/// its starting state. Closure at step n means the image fed into that last
/// call (step n - 1's output) is the plaintext, and n = 2m/gcd(T, m) narrows
/// T to the divisor class {T : gcd(T, m) = 2m/n}. Default budget is 6N
/// steps, twice the maximum possible period.
inline AttackReport cycle_attack(EncryptionOracle& oracle, const Image& cipher,
                                 std::uint64_t max_steps = 0) {
  const auto start = std::chrono::steady_clock::now();
  const int size = cipher.size();
  if (max_steps == 0) max_steps = 6ULL * static_cast<std::uint64_t>(size);

  AttackReport report;
  report.attack = "cycle";

  // An analyst watching the orbit would recognize the plaintext as the
  // smoothest frame; track that as corroborating evidence. Recurrence, not
  // the scorer, is what actually stops the attack.
  const bool scoreable = size >= 2;
  double best_score = 0.0;
  std::uint64_t best_step = 0;

  Image current = cipher;
  const std::uint64_t before = oracle.queries();
  for (std::uint64_t step = 1; step <= max_steps; ++step) {
    Image next = oracle(current);
    if (scoreable) {
      const auto score =
          static_cast<double>(image_io::smoothness(next));
      if (step == 1 || score < best_score) {
        best_score = score;
        best_step = step;
      }
    }
    if (next == cipher) {
      const std::uint64_t n = step;
      report.success = true;
      report.cycle_n = n;
      report.recovered_plaintext = std::move(current);
      const std::uint64_t m =
          number_theory::arnold_period(size).period;
      if ((2 * m) % n == 0) {
        const std::uint64_t g = 2 * m / n;
        for (std::uint64_t t = 0; t < m; ++t) {
          if (std::gcd(t, m) == g) report.candidate_set.push_back(t);
        }
      } else {
        report.notes.push_back("cycle length does not divide 2m");
      }
      if (scoreable) {
        std::ostringstream os;
        os << "smoothness minimum at step " << best_step << " ("
           << (best_step == n - 1 ? "matches" : "differs from")
           << " the recovered plaintext step " << n - 1 << ")";
        report.notes.push_back(os.str());
      }
      break;
    }
    current = std::move(next);
  }
  report.queries = oracle.queries() - before;
  if (!report.success) {
    report.notes.push_back("no cycle closure within " +
                           std::to_string(max_steps) +
                           " steps; wrong oracle or corrupted cipher");
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

}  // namespace ieal::attacks
