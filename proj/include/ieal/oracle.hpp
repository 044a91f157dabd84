#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "ieal/cipher.hpp"
#include "ieal/image.hpp"

namespace ieal::attacks {

/// The attacker's access model: encrypt arbitrary images under a key the
/// attacker never sees. Deterministic, and every query is counted so tests
/// can pin exact query budgets.
class EncryptionOracle {
 public:
  using Fn = std::function<Image(const Image&)>;

  explicit EncryptionOracle(Fn fn) : fn_(std::move(fn)) {}

  Image operator()(const Image& image) {
    ++queries_;
    return fn_(image);
  }

  std::uint64_t queries() const noexcept { return queries_; }
  void reset_queries() noexcept { queries_ = 0; }

 private:
  Fn fn_;
  std::uint64_t queries_ = 0;
};

inline EncryptionOracle make_encryption_oracle(const Key& hidden_key) {
  return EncryptionOracle(
      [key = hidden_key](const Image& image) { return encrypt(image, key); });
}

}  // namespace ieal::attacks
