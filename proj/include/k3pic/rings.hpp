#pragma once

// Coefficient rings for MPoly. Every ring exposes the same small surface
// (zero/one, add/sub/mul/neg, predicates, conversions, text); fields also
// provide inv/div. FiniteField lives in ffield.hpp.

#include "k3pic/arith.hpp"
#include "k3pic/ffield.hpp"

#include <string>

namespace k3pic {

struct IntegerRing {
  using value_type = Integer;
  static constexpr bool is_field = false;

  std::uint64_t characteristic() const { return 0; }
  bool operator==(const IntegerRing&) const { return true; }
  bool operator!=(const IntegerRing&) const { return false; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const { return Integer(std::to_string(v)); }
  value_type from_integer(const Integer& v) const { return v; }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  bool is_negative(const value_type& a) const { return a < 0; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }

  /// a / b, required to be exact.
  value_type div_exact(const value_type& a, const value_type& b) const {
    if (b == 0) throw Error(Errc::ZeroDivisor, "integer division by zero");
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw Error(Errc::InvalidArgument, "inexact integer division");
    return q;
  }
  bool divides(const value_type& b, const value_type& a) const {
    return b != 0 && mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t());
  }

  std::string to_string(const value_type& a) const { return a.get_str(); }
};

struct RationalField {
  using value_type = Rational;
  static constexpr bool is_field = true;

  std::uint64_t characteristic() const { return 0; }
  bool operator==(const RationalField&) const { return true; }
  bool operator!=(const RationalField&) const { return false; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const { return Rational(Integer(std::to_string(v))); }
  value_type from_integer(const Integer& v) const { return Rational(v); }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  bool is_negative(const value_type& a) const { return a < 0; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw Error(Errc::ZeroDivisor, "rational inverse of zero");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
  value_type div_exact(const value_type& a, const value_type& b) const { return div(a, b); }

  std::string to_string(const value_type& a) const { return a.get_str(); }
};

template <class Ring>
concept FieldRing = Ring::is_field;

template <class Ring>
bool ring_is_negative(const Ring& r, const typename Ring::value_type& a) {
  if constexpr (requires { r.is_negative(a); }) {
    return r.is_negative(a);
  } else {
    return false;
  }
}

template <class Ring>
typename Ring::value_type ring_div_exact(const Ring& r, const typename Ring::value_type& a,
                                         const typename Ring::value_type& b) {
  if constexpr (requires { r.div_exact(a, b); }) {
    return r.div_exact(a, b);
  } else {
    return r.div(a, b);
  }
}

}  // namespace k3pic
