#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include <boost/rational.hpp>

#include "ieal/cipher.hpp"
#include "ieal/lucas.hpp"
#include "ieal/number_theory.hpp"

namespace ieal::keyspace {

using number_theory::Rational;

/// Representative of an equivalence class of keys: (T mod m, S mod 384).
/// Every member of the class encrypts identically.
struct CanonicalKey {
  std::uint64_t t = 0;
  std::uint64_t s = 0;
  std::uint64_t period = 1;

  Key key() const { return Key{t, s}; }
  bool operator==(const CanonicalKey&) const = default;
};

inline std::string to_string(const CanonicalKey& k) {
  std::ostringstream os;
  os << "T=" << k.t << " S=" << k.s << " (period m=" << k.period << ")";
  return os.str();
}

inline CanonicalKey canonicalize(const Key& key, int size) {
  const std::uint64_t m = number_theory::arnold_period(size).period;
  return CanonicalKey{key.t % m, key.s % kLucasPeriod, m};
}

struct KeyspaceReport {
  int size = 0;
  std::uint64_t period = 0;
  std::uint64_t keystream_period = kLucasPeriod;
  std::uint64_t key_space_size = 0;
  Rational weak_key_probability{1};
  number_theory::BoundCase bound_case = number_theory::BoundCase::GENERAL;
  Rational bound_size{0};
};

/// Effective key count m(N) * 384 and its closed-form bound (384 times the
/// period bound for N's case).
inline KeyspaceReport key_space_size(int size) {
  const auto info = number_theory::arnold_period(size);
  KeyspaceReport r;
  r.size = size;
  r.period = info.period;
  r.key_space_size = info.period * kLucasPeriod;
  r.weak_key_probability = Rational(1, static_cast<long long>(info.period));
  r.bound_case = info.bound_case;
  r.bound_size = info.bound_value * kLucasPeriod;
  return r;
}

/// A key is weak iff its scrambling count is a multiple of the period: the
/// cipher then degenerates to a plain XOR mask and encrypting twice with the
/// same key restores the plaintext.
inline bool is_weak_key(const Key& key, int size) {
  return key.t % number_theory::arnold_period(size).period == 0;
}

/// Chance that a uniformly drawn canonical key is weak: exactly 1/m.
inline Rational weak_key_probability(int size) {
  return Rational(1,
                  static_cast<long long>(
                      number_theory::arnold_period(size).period));
}

}  // namespace ieal::keyspace
