#pragma once

// Sparse multivariate polynomials over a coefficient ring.
//
// Terms are kept sorted by descending graded reverse lexicographic order with
// no zero coefficients, so equality is structural and the canonical text form
// is just the term sequence.

#include "k3pic/rings.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace k3pic {

inline constexpr int kMaxVars = 8;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint16_t deg = 0;

  static Monomial one() { return {}; }
  static Monomial var(int i, unsigned power = 1) {
    Monomial m;
    m.e[i] = static_cast<std::uint16_t>(power);
    m.deg = static_cast<std::uint16_t>(power);
    return m;
  }
  static Monomial from_exponents(std::span<const unsigned> exps) {
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      m.e[i] = static_cast<std::uint16_t>(exps[i]);
      m.deg = static_cast<std::uint16_t>(m.deg + exps[i]);
    }
    return m;
  }

  unsigned operator[](int i) const { return e[i]; }
  unsigned degree() const { return deg; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
    r.deg = static_cast<std::uint16_t>(deg + o.deg);
    return r;
  }
  /// Quotient; requires o | *this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
    r.deg = static_cast<std::uint16_t>(deg - o.deg);
    return r;
  }
  bool divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      r.e[i] = std::max(a.e[i], b.e[i]);
      r.deg = static_cast<std::uint16_t>(r.deg + r.e[i]);
    }
    return r;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
};

/// <0, 0, >0 as a is smaller, equal, larger than b in grevlex.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  }
  return 0;
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_cmp(a, b) > 0; }
};

/// Variable names used when printing and parsing.
struct Alphabet {
  std::vector<std::string> names;

  static Alphabet plane() { return {{"u", "v", "w"}}; }
  static Alphabet binary() { return {{"s", "t"}}; }
  static Alphabet univariate() { return {{"t"}}; }
  static Alphabet projective(int k) {
    Alphabet a;
    for (int i = 0; i <= k; ++i) a.names.push_back("x" + std::to_string(i));
    return a;
  }
  static Alphabet generic(int n) {
    Alphabet a;
    for (int i = 0; i < n; ++i) a.names.push_back("z" + std::to_string(i));
    return a;
  }
  /// Fixed alphabet for a variable count: t, (s,t), (u,v,w), x0.., z0..
  static Alphabet for_nvars(int n) {
    switch (n) {
      case 1: return univariate();
      case 2: return binary();
      case 3: return plane();
      case 5: return projective(4);
      case 6: return projective(5);
      default: return generic(n);
    }
  }
};

template <class Ring>
class MPoly {
 public:
  using ring_type = Ring;
  using Coeff = typename Ring::value_type;
  struct Term {
    Monomial m;
    Coeff c;
  };

  MPoly() = default;
  MPoly(Ring ring, int nvars) : ring_(std::move(ring)), nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw Error(Errc::OutOfRange, "too many variables");
  }

  static MPoly constant(const Ring& ring, int nvars, const Coeff& c) {
    MPoly r(ring, nvars);
    if (!ring.is_zero(c)) r.terms_.push_back({Monomial::one(), c});
    return r;
  }
  template <std::integral I>
    requires(!std::is_same_v<I, Coeff>)
  static MPoly constant(const Ring& ring, int nvars, I c) {
    return constant(ring, nvars, ring.from_int(static_cast<long long>(c)));
  }
  static MPoly variable(const Ring& ring, int nvars, int i) {
    if (i < 0 || i >= nvars) throw Error(Errc::IndexOutOfRange, "variable index");
    MPoly r(ring, nvars);
    r.terms_.push_back({Monomial::var(i), ring.one()});
    return r;
  }
  static MPoly monomial(const Ring& ring, int nvars, const Monomial& m, const Coeff& c) {
    MPoly r(ring, nvars);
    if (!ring.is_zero(c)) r.terms_.push_back({m, c});
    return r;
  }
  /// Sorts, merges equal monomials and drops zeros.
  static MPoly from_terms(const Ring& ring, int nvars, std::vector<Term> terms) {
    MPoly r(ring, nvars);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grevlex_cmp(a.m, b.m) > 0; });
    for (auto& t : terms) {
      if (!r.terms_.empty() && r.terms_.back().m == t.m) {
        r.terms_.back().c = ring.add(r.terms_.back().c, t.c);
      } else {
        if (!r.terms_.empty() && ring.is_zero(r.terms_.back().c)) r.terms_.pop_back();
        r.terms_.push_back(std::move(t));
      }
    }
    if (!r.terms_.empty() && ring.is_zero(r.terms_.back().c)) r.terms_.pop_back();
    return r;
  }

  const Ring& ring() const { return ring_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0); }
  const Term& leading() const { return terms_.front(); }
  const Monomial& lm() const { return terms_.front().m; }
  const Coeff& lc() const { return terms_.front().c; }

  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().m.deg); }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.m.deg != terms_.front().m.deg) return false;
    return true;
  }
  int degree_in(int var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, t.m.e[var]);
    return d;
  }

  Coeff coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return grevlex_cmp(t.m, x) > 0; });
    if (it != terms_.end() && it->m == m) return it->c;
    return ring_.zero();
  }

  bool operator==(const MPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].m != o.terms_[i].m || !ring_.eq(terms_[i].c, o.terms_[i].c)) return false;
    return true;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly operator-() const {
    MPoly r = *this;
    for (auto& t : r.terms_) t.c = ring_.neg(t.c);
    return r;
  }
  MPoly operator+(const MPoly& o) const { return merge(o, false); }
  MPoly operator-(const MPoly& o) const { return merge(o, true); }
  MPoly& operator+=(const MPoly& o) { return *this = merge(o, false); }
  MPoly& operator-=(const MPoly& o) { return *this = merge(o, true); }

  MPoly operator*(const MPoly& o) const {
    check_compatible(o);
    if (is_zero() || o.is_zero()) return MPoly(ring_, nvars_);
    if (terms_.size() == 1) return o.mul_term(terms_[0].m, terms_[0].c);
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].m, o.terms_[0].c);
    std::vector<Term> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) prod.push_back({a.m * b.m, ring_.mul(a.c, b.c)});
    return from_terms(ring_, nvars_, std::move(prod));
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scale(const Coeff& c) const {
    if (ring_.is_zero(c)) return MPoly(ring_, nvars_);
    MPoly r = *this;
    for (auto& t : r.terms_) t.c = ring_.mul(t.c, c);
    if constexpr (!Ring::is_field) {
      std::erase_if(r.terms_, [&](const Term& t) { return ring_.is_zero(t.c); });
    }
    return r;
  }
  MPoly mul_term(const Monomial& m, const Coeff& c) const {
    MPoly r(ring_, nvars_);
    if (ring_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      Coeff x = ring_.mul(t.c, c);
      if (!ring_.is_zero(x)) r.terms_.push_back({t.m * m, std::move(x)});
    }
    return r;
  }
  MPoly pow(unsigned e) const {
    MPoly r = constant(ring_, nvars_, ring_.one());
    MPoly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// this - c * m * g, in one merge pass.
  MPoly sub_mul(const Coeff& c, const Monomial& m, const MPoly& g) const {
    MPoly r(ring_, nvars_);
    r.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      Monomial gm = g.terms_[j].m * m;
      int cmp = i == terms_.size() ? -1 : grevlex_cmp(terms_[i].m, gm);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        Coeff x = ring_.neg(ring_.mul(c, g.terms_[j++].c));
        if (!ring_.is_zero(x)) r.terms_.push_back({gm, std::move(x)});
      } else {
        Coeff x = ring_.sub(terms_[i++].c, ring_.mul(c, g.terms_[j++].c));
        if (!ring_.is_zero(x)) r.terms_.push_back({gm, std::move(x)});
      }
    }
    return r;
  }

  Coeff evaluate(std::span<const Coeff> point) const {
    if (static_cast<int>(point.size()) != nvars_) throw Error(Errc::DimensionMismatch, "evaluation point size");
    Coeff acc = ring_.zero();
    for (const auto& t : terms_) {
      Coeff x = t.c;
      for (int i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < t.m.e[i]; ++k) x = ring_.mul(x, point[i]);
      acc = ring_.add(acc, x);
    }
    return acc;
  }
  Coeff evaluate(const std::vector<Coeff>& point) const { return evaluate(std::span<const Coeff>(point)); }

  /// Replaces variable i by images[i]; result lives in the images' ring.
  MPoly substitute(const std::vector<MPoly>& images) const {
    if (static_cast<int>(images.size()) != nvars_) throw Error(Errc::DimensionMismatch, "substitution size");
    const int out_vars = images.empty() ? 0 : images[0].nvars();
    std::vector<std::vector<MPoly>> powers(nvars_);
    for (int i = 0; i < nvars_; ++i) powers[i].push_back(constant(ring_, out_vars, ring_.one()));
    std::vector<Term> acc;
    MPoly result(ring_, out_vars);
    for (const auto& t : terms_) {
      MPoly x = constant(ring_, out_vars, t.c);
      for (int i = 0; i < nvars_; ++i) {
        const unsigned e = t.m.e[i];
        if (e == 0) continue;
        while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * images[i]);
        x = x * powers[i][e];
      }
      for (auto& tt : x.terms_) acc.push_back(std::move(tt));
    }
    return from_terms(ring_, out_vars, std::move(acc));
  }

  MPoly partial_derivative(int i) const {
    if (i < 0 || i >= nvars_) throw Error(Errc::IndexOutOfRange, "derivative variable index");
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.m.e[i] == 0) continue;
      Coeff c = ring_.mul(t.c, ring_.from_int(t.m.e[i]));
      if (ring_.is_zero(c)) continue;
      Monomial m = t.m;
      --m.e[i];
      --m.deg;
      out.push_back({m, c});
    }
    return from_terms(ring_, nvars_, std::move(out));
  }

  MPoly homogeneous_part(unsigned d) const {
    MPoly r(ring_, nvars_);
    for (const auto& t : terms_)
      if (t.m.deg == d) r.terms_.push_back(t);
    return r;
  }

  /// Same terms viewed with more (trailing) variables, or fewer if unused.
  MPoly with_nvars(int n) const {
    MPoly r(ring_, n);
    for (const auto& t : terms_) {
      for (int i = n; i < kMaxVars; ++i)
        if (t.m.e[i]) throw Error(Errc::WrongVariableCount, "variable out of range");
      r.terms_.push_back(t);
    }
    return r;
  }

  template <class Ring2, class F>
  MPoly<Ring2> map_coefficients(const Ring2& ring2, F&& f) const {
    std::vector<typename MPoly<Ring2>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.m, f(t.c)});
    return MPoly<Ring2>::from_terms(ring2, nvars_, std::move(out));
  }

  std::string to_string(const Alphabet& alpha) const;
  std::string to_string() const { return to_string(Alphabet::for_nvars(nvars_)); }

 private:
  void check_compatible(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw Error(Errc::WrongVariableCount, "polynomials in different variable counts");
    if (ring_ != o.ring_) throw Error(Errc::RingMismatch, "polynomials over different rings");
  }

  MPoly merge(const MPoly& o, bool subtract) const {
    check_compatible(o);
    MPoly r(ring_, nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int cmp;
      if (i == terms_.size()) cmp = -1;
      else if (j == o.terms_.size()) cmp = 1;
      else cmp = grevlex_cmp(terms_[i].m, o.terms_[j].m);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        const auto& t = o.terms_[j++];
        r.terms_.push_back({t.m, subtract ? ring_.neg(t.c) : t.c});
      } else {
        Coeff x = subtract ? ring_.sub(terms_[i].c, o.terms_[j].c) : ring_.add(terms_[i].c, o.terms_[j].c);
        if (!ring_.is_zero(x)) r.terms_.push_back({terms_[i].m, std::move(x)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Ring ring_{};
  int nvars_ = 0;
  std::vector<Term> terms_;

  template <class R2>
  friend class MPoly;
};

template <class Ring>
std::string MPoly<Ring>::to_string(const Alphabet& alpha) const {
  if (static_cast<int>(alpha.names.size()) < nvars_) throw Error(Errc::WrongVariableCount, "alphabet too short");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = ring_is_negative(ring_, t.c);
    Coeff mag = neg ? ring_.neg(t.c) : t.c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (t.m.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += alpha.names[i];
      if (t.m.e[i] > 1) mono += "^" + std::to_string(t.m.e[i]);
    }
    if (mono.empty()) {
      out += ring_.to_string(mag);
    } else if (ring_.is_one(mag)) {
      out += mono;
    } else {
      out += ring_.to_string(mag) + "*" + mono;
    }
  }
  return out;
}

namespace detail {

template <class Ring>
class PolyParser {
 public:
  using P = MPoly<Ring>;
  PolyParser(const Ring& ring, std::string_view text, const Alphabet& alpha, int nvars)
      : ring_(ring), s_(text), alpha_(alpha), nvars_(nvars) {}

  P parse() {
    P r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '[';
  }

  P expr() {
    P acc(ring_, nvars_);
    bool neg = false;
    skip();
    if (peek('-')) {
      ++pos_;
      neg = true;
    } else if (peek('+')) {
      ++pos_;
    }
    P t = term();
    acc = neg ? acc - t : acc + t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }
  P term() {
    P acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        ++pos_;
        P d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by non-constant");
        acc = acc.scale(invert(d.lc()));
      } else if (at_factor_start()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }
  typename Ring::value_type invert(const typename Ring::value_type& c) {
    if constexpr (Ring::is_field) {
      return ring_.inv(c);
    } else {
      if (ring_.is_one(c)) return c;
      if (ring_.eq(c, ring_.neg(ring_.one()))) return c;
      fail("non-unit divisor over the integers");
    }
  }
  P factor() {
    P base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }
  P atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      P r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == '[') {
      if constexpr (std::is_same_v<Ring, FiniteField>) {
        ++pos_;
        std::vector<std::uint32_t> coeffs;
        while (true) {
          skip();
          std::size_t start = pos_;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
          if (start == pos_) fail("expected digit in extension element");
          coeffs.push_back(static_cast<std::uint32_t>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
          skip();
          if (peek(',')) {
            ++pos_;
            continue;
          }
          if (peek(']')) {
            ++pos_;
            break;
          }
          fail("expected ',' or ']'");
        }
        if (coeffs.size() != ring_.degree()) fail("extension element length");
        return P::constant(ring_, nvars_, ring_.field()->encode(coeffs));
      } else {
        fail("extension element outside a finite field");
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer v(std::string(s_.substr(start, pos_ - start)));
      return P::constant(ring_, nvars_, ring_.from_integer(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_++;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      for (int i = 0; i < nvars_; ++i)
        if (alpha_.names[i] == name) return P::variable(ring_, nvars_, i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const Ring& ring_;
  std::string_view s_;
  const Alphabet& alpha_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses canonical output as well as hand-written input (implicit
/// multiplication, parentheses, powers of sums).
template <class Ring>
MPoly<Ring> parse_mpoly(const Ring& ring, std::string_view text, const Alphabet& alpha, int nvars) {
  if (static_cast<int>(alpha.names.size()) < nvars) throw Error(Errc::WrongVariableCount, "alphabet too short");
  return detail::PolyParser<Ring>(ring, text, alpha, nvars).parse();
}

template <class Ring>
MPoly<Ring> parse_mpoly(const Ring& ring, std::string_view text, int nvars) {
  return parse_mpoly(ring, text, Alphabet::for_nvars(nvars), nvars);
}

// Ring changes.

inline MPoly<FiniteField> reduce_mod(const MPoly<IntegerRing>& f, const FiniteField& F) {
  return f.map_coefficients(F, [&](const Integer& c) { return F.from_integer(c); });
}

inline MPoly<FiniteField> reduce_mod(const MPoly<RationalField>& f, const FiniteField& F) {
  return f.map_coefficients(F, [&](const Rational& c) {
    auto d = F.from_integer(c.get_den());
    if (d == 0) throw Error(Errc::ZeroDivisor, "denominator divisible by p");
    return F.div(F.from_integer(c.get_num()), d);
  });
}

inline MPoly<RationalField> to_rational(const MPoly<IntegerRing>& f) {
  return f.map_coefficients(RationalField{}, [](const Integer& c) { return Rational(c); });
}

/// Centered integer representatives of F_p coefficients.
inline MPoly<IntegerRing> centered_lift(const MPoly<FiniteField>& f) {
  if (!f.ring().is_prime_field()) throw Error(Errc::RingMismatch, "lift needs a prime field");
  const Integer p(static_cast<unsigned long>(f.ring().characteristic()));
  return f.map_coefficients(IntegerRing{}, [&](std::uint64_t c) {
    return centered_mod(Integer(static_cast<unsigned long>(c)), p);
  });
}

/// Embeds a polynomial over F_p into F_{p^m} (prime-field codes are shared).
inline MPoly<FiniteField> embed(const MPoly<FiniteField>& f, const FiniteField& target) {
  if (!f.ring().is_prime_field() || f.ring().characteristic() != target.characteristic())
    throw Error(Errc::RingMismatch, "embedding needs a prime field of the same characteristic");
  return f.map_coefficients(target, [](std::uint64_t c) { return c; });
}

/// Clears denominators and divides by the content: a primitive integer
/// polynomial with positive leading coefficient.
inline MPoly<IntegerRing> primitive_part(const MPoly<RationalField>& f) {
  Integer l = 1;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  Integer g = 0;
  for (const auto& t : f.terms()) {
    Integer n = t.c.get_num() * (l / t.c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return MPoly<IntegerRing>(IntegerRing{}, f.nvars());
  if (f.lc() < 0) g = -g;
  return f.map_coefficients(IntegerRing{}, [&](const Rational& c) { return Integer(c.get_num() * (l / c.get_den()) / g); });
}

}  // namespace k3pic
