#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ieal/image.hpp"
#include "ieal/keyspace.hpp"

namespace ieal::attacks {

struct AttackError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Key-equivalent decryption capability recovered by the chosen-plaintext
/// attack: the masking keystream plus the scrambling permutation, usable even
/// if the permutation matched no single canonical T.
struct PermutationDecryptor {
  int size = 0;
  std::vector<std::uint8_t> mask;      // keystream byte per raster index
  std::vector<std::uint32_t> forward;  // cipher index of plain raster index p

  Image decrypt(const Image& cipher) const {
    if (cipher.size() != size) {
      throw AttackError("decryptor: image size mismatch");
    }
    const auto& in = cipher.pixels();
    std::vector<std::uint8_t> unmasked(in.size());
    for (std::size_t k = 0; k < in.size(); ++k) {
      unmasked[k] = static_cast<std::uint8_t>(in[k] ^ mask[k]);
    }
    std::vector<std::uint8_t> out(in.size());
    for (std::size_t p = 0; p < out.size(); ++p) {
      out[p] = unmasked[forward[p]];
    }
    return Image(size, std::move(out));
  }
};

/// Outcome of one attack run. The key and plaintext are optional because the
/// attacks recover different things (the cycle attack, for instance, yields
/// the plaintext and only a candidate set for T). Evidence fields not used by
/// an attack stay empty and are omitted from the renderings.
struct AttackReport {
  std::string attack;
  bool success = false;

  std::optional<keyspace::CanonicalKey> recovered_key;
  std::optional<Image> recovered_plaintext;
  std::optional<PermutationDecryptor> decryptor;

  std::uint64_t queries = 0;
  std::optional<std::uint64_t> cycle_n;
  std::vector<std::uint64_t> candidate_set;
  std::optional<std::uint64_t> candidates_examined;
  std::optional<int> s0;
  bool degenerate_histogram = false;
  std::vector<std::string> notes;
  double elapsed_ms = 0.0;

  std::string to_text(bool include_elapsed = false) const {
    std::ostringstream os;
    os << "attack=" << attack << " status=" << (success ? "ok" : "failed")
       << '\n';
    if (s0) os << "s0=" << *s0 << '\n';
    if (!candidate_set.empty()) {
      os << "candidates=" << join(candidate_set) << '\n';
    } else if (candidates_examined) {
      os << "candidates=" << *candidates_examined << '\n';
    }
    if (cycle_n) os << "cycle_n=" << *cycle_n << '\n';
    os << "queries=" << queries << '\n';
    if (degenerate_histogram) os << "degenerate_histogram=1\n";
    for (const auto& note : notes) os << "note: " << note << '\n';
    if (recovered_key) {
      os << "recovered key: " << keyspace::to_string(*recovered_key) << '\n';
    }
    if (include_elapsed) os << "elapsed_ms=" << elapsed_ms << '\n';
    return os.str();
  }

  std::string to_kv(bool include_elapsed = false) const {
    std::ostringstream os;
    os << "attack=" << attack << '\n'
       << "status=" << (success ? "ok" : "failed") << '\n';
    if (recovered_key) {
      os << "key_T=" << recovered_key->t << '\n'
         << "key_S=" << recovered_key->s << '\n'
         << "period_m=" << recovered_key->period << '\n';
    }
    os << "queries=" << queries << '\n';
    if (cycle_n) os << "cycle_n=" << *cycle_n << '\n';
    if (!candidate_set.empty()) {
      os << "candidates=" << join(candidate_set) << '\n';
    } else if (candidates_examined) {
      os << "candidates=" << *candidates_examined << '\n';
    }
    if (s0) os << "s0=" << *s0 << '\n';
    if (degenerate_histogram) os << "degenerate_histogram=1\n";
    if (include_elapsed) os << "elapsed_ms=" << elapsed_ms << '\n';
    return os.str();
  }

 private:
  static std::string join(const std::vector<std::uint64_t>& values) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) os << ',';
      os << values[i];
    }
    return os.str();
  }
};

}  // namespace ieal::attacks
