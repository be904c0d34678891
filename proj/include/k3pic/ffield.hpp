#pragma once

// Prime and extension finite fields of odd characteristic.
//
// Elements have two representations:
//  * FqElem: coefficient vector over F_p modulo the field's defining
//    polynomial; valid for every supported field (p^n < 2^128).
//  * integer codes (sum of c_i p^i), used as the coefficient type of
//    polynomial rings through FiniteField. Codes need q < 2^63; fields with
//    q <= 2^22 get exp/log/Zech tables so that arithmetic is table lookups.

#include "k3pic/arith.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace k3pic {

namespace detail {

// Dense polynomials over F_p, low degree first.
using ZpPoly = std::vector<std::uint64_t>;

inline void zp_trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZpPoly zp_rem(ZpPoly a, const ZpPoly& f, std::uint64_t p) {
  zp_trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t inv_lc = powmod(f.back(), p - 2, p);
  while (a.size() > df) {
    const std::uint64_t c = mulmod(a.back(), inv_lc, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
    }
    zp_trim(a);
  }
  return a;
}

inline ZpPoly zp_mulmod(const ZpPoly& a, const ZpPoly& b, const ZpPoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return zp_rem(std::move(r), f, p);
}

inline ZpPoly zp_powmod(ZpPoly base, u128 e, const ZpPoly& f, std::uint64_t p) {
  ZpPoly r{1};
  base = zp_rem(std::move(base), f, p);
  while (e) {
    if (e & 1) r = zp_mulmod(r, base, f, p);
    e >>= 1;
    if (e) base = zp_mulmod(base, base, f, p);
  }
  return r;
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, std::uint64_t p) {
  zp_trim(a);
  zp_trim(b);
  while (!b.empty()) {
    a = zp_rem(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// x^(p^k) mod f by k successive p-th powers.
inline ZpPoly zp_frobenius_x(const ZpPoly& f, std::uint64_t p, unsigned k) {
  ZpPoly x{0, 1};
  for (unsigned i = 0; i < k; ++i) x = zp_powmod(x, p, f, p);
  return x;
}

// Rabin's test.
inline bool zp_irreducible(const ZpPoly& f, std::uint64_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  if (f[0] == 0) return false;
  ZpPoly xq = zp_frobenius_x(f, p, n);
  ZpPoly diff = xq;
  diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
  diff[1] = (diff[1] + p - 1) % p;
  zp_trim(diff);
  if (!diff.empty()) return false;
  for (auto r : prime_factors(n)) {
    ZpPoly h = zp_frobenius_x(f, p, n / static_cast<unsigned>(r));
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    zp_trim(h);
    ZpPoly g = zp_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

struct ZechTables {
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;
  std::uint64_t q = 0;
  std::uint64_t generator = 0;
  std::vector<std::uint32_t> exp;   // size 2(q-1): exp[k] = code of g^k
  std::vector<std::uint32_t> log;   // size q: log[0] unused
  std::vector<std::uint32_t> zech;  // size q-1: log(1 + g^k) or kNone
};

class FieldDescriptor {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

  FieldDescriptor(std::uint32_t p, unsigned n, std::vector<std::uint32_t> modulus)
      : p_(p), n_(n), modulus_(std::move(modulus)) {
    order_ = 1;
    for (unsigned i = 0; i < n_; ++i) order_ *= p_;
  }

  std::uint32_t p() const { return p_; }
  unsigned degree() const { return n_; }
  /// Monic, constant term first. For n = 1 the placeholder x.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  u128 order() const { return order_; }

  std::uint64_t order64() const {
    if (order_ >= (u128{1} << 63)) throw Error(Errc::OutOfRange, "field too large for code representation");
    return static_cast<std::uint64_t>(order_);
  }

  /// Exp/log/Zech tables, or nullptr when q exceeds the table limit.
  const ZechTables* tables() const {
    if (order_ > kTableLimit) return nullptr;
    std::call_once(tables_once_, [this] { build_tables(); });
    return tables_.get();
  }

  // Generic coefficient-vector arithmetic (length n vectors).
  std::vector<std::uint32_t> add(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint32_t> r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = static_cast<std::uint32_t>((a[i] + b[i]) % p_);
    return r;
  }
  std::vector<std::uint32_t> sub(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint32_t> r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = static_cast<std::uint32_t>((a[i] + p_ - b[i]) % p_);
    return r;
  }
  std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const {
    if (n_ == 1) return {static_cast<std::uint32_t>(std::uint64_t{a[0]} * b[0] % p_)};
    std::vector<std::uint64_t> t(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < n_; ++j) t[i + j] = (t[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    }
    for (unsigned k = 2 * n_ - 2; k >= n_; --k) {
      const std::uint64_t c = t[k];
      if (c == 0) continue;
      t[k] = 0;
      for (unsigned i = 0; i < n_; ++i) t[k - n_ + i] = (t[k - n_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    std::vector<std::uint32_t> r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = static_cast<std::uint32_t>(t[i]);
    return r;
  }
  std::vector<std::uint32_t> pow(std::vector<std::uint32_t> base, u128 e) const {
    std::vector<std::uint32_t> r(n_, 0);
    r[0] = 1;
    while (e) {
      if (e & 1) r = mul(r, base);
      e >>= 1;
      if (e) base = mul(base, base);
    }
    return r;
  }

  std::uint64_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint64_t code = 0;
    for (unsigned i = n_; i-- > 0;) code = code * p_ + c[i];
    return code;
  }
  std::vector<std::uint32_t> decode(std::uint64_t code) const {
    std::vector<std::uint32_t> c(n_);
    for (unsigned i = 0; i < n_; ++i) {
      c[i] = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
    return c;
  }

 private:
  void build_tables() const {
    auto t = std::make_unique<ZechTables>();
    const std::uint64_t q = static_cast<std::uint64_t>(order_);
    t->q = q;
    const auto factors = prime_factors(q - 1);
    std::uint64_t g = 0;
    for (std::uint64_t cand = 1; cand < q; ++cand) {
      auto c = decode(cand);
      bool primitive = true;
      for (auto r : factors) {
        auto v = pow(c, (q - 1) / r);
        if (encode(v) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        g = cand;
        break;
      }
    }
    t->generator = g;
    t->exp.assign(2 * (q - 1), 0);
    t->log.assign(q, 0);
    const auto gc = decode(g);
    std::vector<std::uint32_t> cur(n_, 0);
    cur[0] = 1;
    for (std::uint64_t k = 0; k < q - 1; ++k) {
      const auto code = encode(cur);
      t->exp[k] = static_cast<std::uint32_t>(code);
      t->exp[k + q - 1] = static_cast<std::uint32_t>(code);
      t->log[code] = static_cast<std::uint32_t>(k);
      cur = mul(cur, gc);
    }
    t->zech.assign(q - 1, ZechTables::kNone);
    for (std::uint64_t k = 0; k < q - 1; ++k) {
      auto c = decode(t->exp[k]);
      c[0] = (c[0] + 1) % p_;
      const auto code = encode(c);
      if (code != 0) t->zech[k] = t->log[code];
    }
    tables_ = std::move(t);
  }

  std::uint32_t p_;
  unsigned n_;
  std::vector<std::uint32_t> modulus_;
  u128 order_;
  mutable std::once_flag tables_once_;
  mutable std::unique_ptr<ZechTables> tables_;
};

using Field = std::shared_ptr<const FieldDescriptor>;

/// Lexicographically smallest monic irreducible of degree n over F_p,
/// coefficient tuples compared from the constant term up.
inline std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, unsigned n) {
  if (n == 1) return {0, 1};
  detail::ZpPoly f(n + 1, 0);
  f[n] = 1;
  // Counter over (c0, ..., c_{n-1}) with c0 most significant.
  std::vector<std::uint64_t> digits(n, 0);
  while (true) {
    for (unsigned i = 0; i < n; ++i) f[i] = digits[i];
    if (detail::zp_irreducible(f, p)) break;
    int pos = static_cast<int>(n) - 1;
    while (pos >= 0 && ++digits[pos] == p) digits[pos--] = 0;
    if (pos < 0) throw Error(Errc::InvalidArgument, "no irreducible polynomial found");
  }
  std::vector<std::uint32_t> out(n + 1);
  for (unsigned i = 0; i <= n; ++i) out[i] = static_cast<std::uint32_t>(f[i]);
  return out;
}

/// F_{p^n} with the deterministic modulus. Repeated calls share one
/// descriptor.
inline Field make_field(std::uint64_t p, unsigned n = 1) {
  if (p == 2) throw Error(Errc::EvenCharacteristic, "characteristic 2 is not supported");
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 20)) throw Error(Errc::OutOfRange, "p must be below 2^20");
  if (n < 1 || n > 24) throw Error(Errc::DegreeOutOfRange, "extension degree must be in [1, 24]");
  u128 q = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (q > (~u128{0}) / p) throw Error(Errc::DegreeOutOfRange, "p^n exceeds 128 bits");
    q *= p;
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, Field> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const FieldDescriptor>(static_cast<std::uint32_t>(p), n,
                                                   smallest_irreducible(static_cast<std::uint32_t>(p), n));
  cache.emplace(key, f);
  return f;
}

class FqElem {
 public:
  FqElem(Field field, std::vector<std::uint32_t> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    if (c_.size() != field_->degree()) throw Error(Errc::DimensionMismatch, "coefficient vector length");
    for (auto& x : c_) x %= field_->p();
  }

  static FqElem from_int(Field field, long long v) {
    std::vector<std::uint32_t> c(field->degree(), 0);
    long long r = v % static_cast<long long>(field->p());
    if (r < 0) r += field->p();
    c[0] = static_cast<std::uint32_t>(r);
    return FqElem(std::move(field), std::move(c));
  }
  static FqElem from_code(Field field, std::uint64_t code) {
    auto c = field->decode(code);
    return FqElem(std::move(field), std::move(c));
  }

  const Field& field() const { return field_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  std::uint64_t code() const { return field_->encode(c_); }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::uint32_t x) { return x == 0; });
  }

  FqElem operator+(const FqElem& o) const { return FqElem(field_, field_->add(c_, o.c_)); }
  FqElem operator-(const FqElem& o) const { return FqElem(field_, field_->sub(c_, o.c_)); }
  FqElem operator*(const FqElem& o) const { return FqElem(field_, field_->mul(c_, o.c_)); }
  FqElem operator-() const { return FqElem(field_, field_->sub(std::vector<std::uint32_t>(c_.size(), 0), c_)); }
  bool operator==(const FqElem& o) const { return c_ == o.c_ && field_->p() == o.field_->p(); }

  FqElem pow(u128 e) const { return FqElem(field_, field_->pow(c_, e)); }
  FqElem inverse() const {
    if (is_zero()) throw Error(Errc::ZeroDivisor, "inverse of zero");
    return pow(field_->order() - 2);
  }

 private:
  Field field_;
  std::vector<std::uint32_t> c_;
};

/// a^((q-1)/2) read as -1, 0 or 1.
inline int quadratic_character(const FqElem& a) {
  if (a.is_zero()) return 0;
  const auto r = a.pow((a.field()->order() - 1) / 2);
  return r.code() == 1 ? 1 : -1;
}

inline FqElem frobenius(const FqElem& a) { return a.pow(a.field()->p()); }

/// Coefficient ring over F_q with elements stored as integer codes.
class FiniteField {
 public:
  using value_type = std::uint64_t;
  static constexpr bool is_field = true;

  /// Placeholder; only assignment is meaningful.
  FiniteField() = default;
  explicit FiniteField(Field f) : f_(std::move(f)) {
    q_ = f_->order64();
    p_ = f_->p();
    prime_ = f_->degree() == 1;
    tab_ = f_->tables();
  }
  FiniteField(std::uint64_t p, unsigned n = 1) : FiniteField(make_field(p, n)) {}

  const Field& field() const { return f_; }
  std::uint64_t characteristic() const { return p_; }
  std::uint64_t size() const { return q_; }
  unsigned degree() const { return f_->degree(); }
  bool is_prime_field() const { return prime_; }
  bool operator==(const FiniteField& o) const { return p_ == o.p_ && q_ == o.q_; }
  bool operator!=(const FiniteField& o) const { return !(*this == o); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<value_type>(r);
  }
  value_type from_integer(const Integer& v) const { return mod_u64(v, p_); }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool eq(value_type a, value_type b) const { return a == b; }

  value_type add(value_type a, value_type b) const {
    if (prime_) {
      const value_type s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    if (tab_) {
      std::uint32_t la = tab_->log[a], lb = tab_->log[b];
      if (la > lb) std::swap(la, lb);
      const std::uint32_t z = tab_->zech[lb - la];
      if (z == ZechTables::kNone) return 0;
      return tab_->exp[la + z];
    }
    return f_->encode(f_->add(f_->decode(a), f_->decode(b)));
  }
  value_type neg(value_type a) const {
    if (a == 0) return 0;
    if (prime_) return p_ - a;
    if (tab_) return tab_->exp[tab_->log[a] + (q_ - 1) / 2];
    std::uint64_t r = 0, scale = 1, x = a;
    for (unsigned i = 0; i < degree(); ++i) {
      const std::uint64_t d = x % p_;
      x /= p_;
      r += (d == 0 ? 0 : p_ - d) * scale;
      scale *= p_;
    }
    return r;
  }
  value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }
  value_type mul(value_type a, value_type b) const {
    if (prime_) return a * b % p_;
    if (a == 0 || b == 0) return 0;
    if (tab_) return tab_->exp[tab_->log[a] + tab_->log[b]];
    return f_->encode(f_->mul(f_->decode(a), f_->decode(b)));
  }
  value_type pow(value_type a, u128 e) const {
    value_type r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
  value_type inv(value_type a) const {
    if (a == 0) throw Error(Errc::ZeroDivisor, "inverse of zero");
    if (tab_) return tab_->exp[(q_ - 1 - tab_->log[a]) % (q_ - 1)];
    if (prime_) return powmod(a, p_ - 2, p_);
    return pow(a, q_ - 2);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  int character(value_type a) const {
    if (a == 0) return 0;
    if (tab_) return (tab_->log[a] & 1u) ? -1 : 1;
    return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
  }

  value_type frobenius(value_type a) const { return prime_ ? a : pow(a, p_); }

  /// Square root when a is a square (Tonelli-Shanks off the table path).
  std::optional<value_type> sqrt(value_type a) const {
    if (a == 0) return value_type{0};
    if (character(a) != 1) return std::nullopt;
    if (tab_) return value_type{tab_->exp[tab_->log[a] / 2]};
    std::uint64_t t = q_ - 1;
    unsigned s = 0;
    while ((t & 1) == 0) {
      t >>= 1;
      ++s;
    }
    value_type z = 2;
    while (character(z) != -1) ++z;
    value_type m = s, c = pow(z, t), x = pow(a, (t + 1) / 2), b = pow(a, t);
    while (b != 1) {
      unsigned i = 0;
      value_type bb = b;
      while (bb != 1) {
        bb = mul(bb, bb);
        ++i;
      }
      value_type w = c;
      for (unsigned k = 0; k + 1 + i < m; ++k) w = mul(w, w);
      m = i;
      c = mul(w, w);
      x = mul(x, w);
      b = mul(b, c);
    }
    return x;
  }

  /// Smallest non-square code.
  value_type nonresidue() const {
    for (value_type z = 2; z < q_; ++z)
      if (character(z) == -1) return z;
    return 0;
  }

  /// Whether a lies in the subfield of order p^d.
  bool in_subfield(value_type a, unsigned d) const {
    value_type x = a;
    for (unsigned i = 0; i < d; ++i) x = frobenius(x);
    return x == a;
  }

  FqElem to_elem(value_type a) const { return FqElem::from_code(f_, a); }

  /// Decimal for prime fields; "[c0,c1,...]" coefficient vectors otherwise.
  std::string to_string(value_type a) const {
    if (prime_) return std::to_string(a);
    std::ostringstream os;
    os << '[';
    auto c = f_->decode(a);
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ']';
    return os.str();
  }

 private:
  Field f_;
  std::uint64_t q_ = 0;
  std::uint64_t p_ = 0;
  bool prime_ = true;
  const ZechTables* tab_ = nullptr;
};

inline u128 projective_point_count(u128 q, unsigned k) {
  u128 s = 0, t = 1;
  for (unsigned i = 0; i <= k; ++i) {
    s += t;
    t *= q;
  }
  return s;
}

/// Lazy range over P^k(F_q): first nonzero coordinate is 1, points ordered
/// by the position of that 1 and then lexicographically by codes.
class ProjectivePoints {
 public:
  static constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 40;

  ProjectivePoints(const Field& field, unsigned k, std::uint64_t budget = kDefaultBudget) : k_(k) {
    if (k < 1) throw Error(Errc::InvalidArgument, "projective dimension must be >= 1");
    const u128 q = field->order();
    u128 qk = 1;
    for (unsigned i = 0; i < k; ++i) {
      qk *= q;
      if (qk > budget) throw Error(Errc::BudgetExceeded, "q^k exceeds the enumeration budget");
    }
    q_ = static_cast<std::uint64_t>(q);
  }

  class iterator {
   public:
    using value_type = std::vector<std::uint64_t>;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::uint64_t q, unsigned k) : q_(q), pt_(k + 1, 0), lead_(0) { pt_[0] = 1; }

    const std::vector<std::uint64_t>& operator*() const { return pt_; }
    iterator& operator++() {
      std::size_t i = pt_.size();
      while (i-- > lead_ + 1) {
        if (++pt_[i] < q_) return *this;
        pt_[i] = 0;
      }
      pt_[lead_] = 0;
      ++lead_;
      if (lead_ < pt_.size()) {
        pt_[lead_] = 1;
      } else {
        pt_.clear();
      }
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(const iterator& o) const { return pt_ == o.pt_; }
    bool operator!=(const iterator& o) const { return !(*this == o); }

   private:
    std::uint64_t q_ = 0;
    std::vector<std::uint64_t> pt_;
    std::size_t lead_ = 0;
  };

  iterator begin() const { return iterator(q_, k_); }
  iterator end() const { return iterator(); }
  u128 size() const { return projective_point_count(q_, k_); }

 private:
  unsigned k_;
  std::uint64_t q_ = 0;
};

inline ProjectivePoints enumerate_projective(const Field& field, unsigned k,
                                             std::uint64_t budget = ProjectivePoints::kDefaultBudget) {
  return ProjectivePoints(field, k, budget);
}

}  // namespace k3pic
