#pragma once

// Integer helpers, the library error type and the seeded generator shared by
// every module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3pic {

using Integer = mpz_class;
using Rational = mpq_class;
using u128 = unsigned __int128;

enum class Errc {
  NotPrime,
  EvenCharacteristic,
  DegreeOutOfRange,
  BudgetExceeded,
  NonSquare,
  DimensionMismatch,
  ZeroLine,
  IndexOutOfRange,
  ZeroForm,
  OutOfRange,
  ZeroDivisor,
  WrongVariableCount,
  LineNotContained,
  ZeroSextic,
  CommonComponent,
  BadChart,
  InsufficientCounts,
  NoCandidate,
  NotWeil,
  NotSquarefree,
  EqualPrimes,
  ParseError,
  RingMismatch,
  InvalidArgument,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NonSquare: return "NonSquare";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroLine: return "ZeroLine";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ZeroForm: return "ZeroForm";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ZeroDivisor: return "ZeroDivisor";
    case Errc::WrongVariableCount: return "WrongVariableCount";
    case Errc::LineNotContained: return "LineNotContained";
    case Errc::ZeroSextic: return "ZeroSextic";
    case Errc::CommonComponent: return "CommonComponent";
    case Errc::BadChart: return "BadChart";
    case Errc::InsufficientCounts: return "InsufficientCounts";
    case Errc::NoCandidate: return "NoCandidate";
    case Errc::NotWeil: return "NotWeil";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::EqualPrimes: return "EqualPrimes";
    case Errc::ParseError: return "ParseError";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % d == 0) return n == d;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline unsigned euler_phi(unsigned n) {
  unsigned r = n;
  for (auto f : prime_factors(n)) r = r / static_cast<unsigned>(f) * static_cast<unsigned>(f - 1);
  return r;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/// Representative of a mod m in (-m/2, m/2].
inline Integer centered_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

inline std::uint64_t mod_u64(const Integer& a, std::uint64_t m) {
  Integer r = a % Integer(static_cast<unsigned long>(m));
  if (r < 0) r += static_cast<unsigned long>(m);
  return r.get_ui();
}

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

/// SplitMix64 (Steele, Lea, Flood). Constants are part of the reproducibility
/// contract: searches with the same seed give the same models everywhere.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kMul1 = 0xBF58476D1CE4E5B9ull;
  static constexpr std::uint64_t kMul2 = 0x94D049BB133111EBull;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += kGamma);
    z = (z ^ (z >> 30)) * kMul1;
    z = (z ^ (z >> 27)) * kMul2;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) by plain reduction (bias below 2^-40 for n < 2^24).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

/// Per-iteration seed for parallel searches: one SplitMix64 step from
/// seed ^ (index * gamma).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (index * SplitMix64::kGamma));
  return g.next();
}

}  // namespace k3pic
