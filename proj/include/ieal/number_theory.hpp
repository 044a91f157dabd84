#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

#include "ieal/cipher.hpp"

namespace ieal::number_theory {

using Rational = boost::rational<long long>;

/// Which case of the period bound applies to a given N.
enum class BoundCase { THREE_N, TWO_N, GENERAL };

inline const char* to_string(BoundCase c) {
  switch (c) {
    case BoundCase::THREE_N: return "3N";
    case BoundCase::TWO_N: return "2N";
    case BoundCase::GENERAL: return "<=12N/7";
  }
  return "?";
}

struct PeriodInfo {
  int size = 0;
  std::uint64_t period = 0;
  BoundCase bound_case = BoundCase::GENERAL;
  Rational bound_value{0};
  // The general-case bound is cited, not proven; we record whether it held
  // instead of asserting it inside the library.
  bool bound_holds = false;
};

constexpr std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  return std::gcd(a, b);
}

constexpr std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
  return std::lcm(a, b);
}

namespace detail {

// Case split for the period bound. Only exponents that actually satisfy the
// closed form are admitted: N = 5^r and N = 2*5^r need r >= 1 (N = 1 has
// period 1, not 2, and N = 2 has period 3, not 6), while N = 6*5^r holds
// from r = 0.
inline BoundCase classify(int n) {
  for (long long p = 5; p <= n; p *= 5) {
    if (n == p || n == 6 * p) return BoundCase::TWO_N;
    if (n == 2 * p) return BoundCase::THREE_N;
  }
  if (n == 6) return BoundCase::TWO_N;
  return BoundCase::GENERAL;
}

inline Rational bound_for(BoundCase c, int n) {
  switch (c) {
    case BoundCase::THREE_N: return Rational(3LL * n);
    case BoundCase::TWO_N: return Rational(2LL * n);
    case BoundCase::GENERAL: return Rational(12LL * n, 7);
  }
  return Rational(0);
}

}  // namespace detail

/// Least m >= 1 with [[1,1],[1,2]]^m = I (mod N): the number of scrambling
/// rounds after which every pixel returns home. Computed by iterating matrix
/// powers; 3N is the proven maximum, so exceeding it means a bug.
inline PeriodInfo arnold_period(int size) {
  if (size < 1) {
    throw std::invalid_argument("arnold_period: size must be >= 1");
  }
  PeriodInfo info;
  info.size = size;
  if (size == 1) {
    info.period = 1;
  } else {
    const auto n = static_cast<std::int64_t>(size);
    const ieal::detail::Mat2 id = ieal::detail::mat_identity(n);
    ieal::detail::Mat2 acc = ieal::detail::kArnold;
    acc = {acc.a % n, acc.b % n, acc.c % n, acc.d % n};
    const std::uint64_t cap = 3ULL * static_cast<std::uint64_t>(size);
    std::uint64_t m = 1;
    while (!(acc.a == id.a && acc.b == id.b && acc.c == id.c &&
             acc.d == id.d)) {
      if (m >= cap) {
        throw std::logic_error("arnold_period: exceeded the 3N cap");
      }
      acc = ieal::detail::mat_mul(acc, ieal::detail::kArnold, n);
      ++m;
    }
    info.period = m;
  }
  info.bound_case = detail::classify(size);
  info.bound_value = detail::bound_for(info.bound_case, size);
  const Rational period_r(static_cast<long long>(info.period));
  info.bound_holds = info.bound_case == BoundCase::GENERAL
                         ? period_r <= info.bound_value
                         : period_r == info.bound_value;
  return info;
}

inline std::vector<PeriodInfo> arnold_period_table(
    const std::vector<int>& sizes) {
  std::vector<PeriodInfo> out;
  out.reserve(sizes.size());
  for (int n : sizes) out.push_back(arnold_period(n));
  return out;
}

/// Period of the Lucas sequence modulo `modulus`: least p >= 1 with the state
/// pair (L_k, L_{k+1}) mod modulus recurring. The pair map is invertible, so
/// the orbit of (2, 1) is a pure cycle and the first recurrence of (2, 1)
/// itself is the period.
inline std::uint64_t sequence_period_mod(std::uint64_t modulus) {
  if (modulus < 2) {
    throw std::invalid_argument("sequence_period_mod: modulus must be >= 2");
  }
  const std::uint64_t a0 = 2 % modulus;
  const std::uint64_t b0 = 1 % modulus;
  std::uint64_t a = a0, b = b0;
  std::uint64_t p = 0;
  do {
    const std::uint64_t next = (a + b) % modulus;
    a = b;
    b = next;
    ++p;
  } while (!(a == a0 && b == b0));
  return p;
}

}  // namespace ieal::number_theory
