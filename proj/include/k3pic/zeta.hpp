#pragma once

// Point counts of double planes and complete intersections over F_{p^n},
// Weil polynomials of K3 surfaces from traces (Newton identities plus the
// functional equation), validation, and the cyclotomic rank bound. A genus-2
// analogue exercises the same reconstruction at desk scale.

#include "k3pic/enumerate.hpp"
#include "k3pic/geommodels.hpp"
#include "k3pic/univariate.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace k3pic {

/// #X(F_{p^n}) for the weighted model s^2 = twist * g6(u, v, w).
inline Integer count_double_cover(const DoubleCoverModel<FiniteField>& model, unsigned n, const CountOptions& opts = {}) {
  detail::require_form(model.g6, 3, 6, "branch sextic");
  const FiniteField Fq = detail::extension_of(model.g6.ring(), n);
  const std::uint64_t q = Fq.size();
  detail::checked_power(q, 2, opts.budget, "q^2");
  if (Fq.is_zero(model.twist)) throw Error(Errc::InvalidArgument, "twist must be nonzero");
  const auto g = n == 1 ? model.g6 : embed(model.g6, Fq);

  // chi(twist * x) for every code x.
  std::vector<std::int8_t> chi(q);
  for (std::uint64_t x = 0; x < q; ++x) chi[x] = static_cast<std::int8_t>(Fq.character(Fq.mul(model.twist, x)));

  // Chart w = 1: g = sum_j b_j(u) v^j, Horner in v.
  const std::int64_t affine = detail::parallel_sum(q, opts.threads, [&](std::uint64_t ub, std::uint64_t ue) {
    std::int64_t s = 0;
    std::array<std::uint64_t, 7> b{};
    std::array<std::uint64_t, 7> upow{};
    for (std::uint64_t u = ub; u < ue; ++u) {
      upow[0] = 1;
      for (int k = 1; k < 7; ++k) upow[k] = Fq.mul(upow[k - 1], u);
      b.fill(0);
      for (const auto& t : g.terms()) b[t.m.e[1]] = Fq.add(b[t.m.e[1]], Fq.mul(t.c, upow[t.m.e[0]]));
      for (std::uint64_t v = 0; v < q; ++v) {
        std::uint64_t val = b[6];
        for (int j = 5; j >= 0; --j) val = Fq.add(Fq.mul(val, v), b[j]);
        s += chi[val];
      }
    }
    return s;
  });

  // Line w = 0: points (u : 1 : 0) and (1 : 0 : 0).
  std::int64_t at_infinity = 0;
  std::array<std::uint64_t, 7> a{};
  for (const auto& t : g.terms())
    if (t.m.e[2] == 0) a[t.m.e[0]] = t.c;
  for (std::uint64_t u = 0; u < q; ++u) {
    std::uint64_t val = a[6];
    for (int j = 5; j >= 0; --j) val = Fq.add(Fq.mul(val, u), a[j]);
    at_infinity += chi[val];
  }
  at_infinity += chi[a[6]];

  Integer N = Integer(static_cast<unsigned long>(q)) * q + q + 1;
  return N + static_cast<long>(affine + at_infinity);
}

/// Common zeros in P^k(F_{p^n}) of forms in k+1 variables, by enumeration.
inline Integer count_projective_zeros(const std::vector<MPoly<FiniteField>>& fs, unsigned n, const CountOptions& opts = {}) {
  std::int64_t total = 0;
  for (auto v : detail::scan_projective_zeros<std::int64_t>(fs, n, opts, [](std::int64_t& acc, const std::vector<std::uint64_t>&) { ++acc; }))
    total += v;
  return Integer(static_cast<long>(total));
}

/// #V(f2, f3)(F_{p^n}) in P^4 by direct enumeration.
inline Integer count_complete_intersection_p4(const Degree6Pair<FiniteField>& pair, unsigned n,
                                             const CountOptions& opts = {std::uint64_t{1} << 36, 0}) {
  if (pair.f2.nvars() != 5 || pair.f3.nvars() != 5) throw Error(Errc::WrongVariableCount, "pair lives in P^4");
  return count_projective_zeros(pair.polys(), n, opts);
}

/// N_n = #X(F_{p^n}) for a fixed p.
struct PointCounts {
  std::uint64_t p = 0;
  std::map<unsigned, Integer> counts;

  void add(unsigned n, const Integer& N) {
    if (n < 1) throw Error(Errc::InvalidArgument, "extension degree must be positive");
    if (N < 0) throw Error(Errc::InvalidArgument, "negative point count");
    auto [it, inserted] = counts.emplace(n, N);
    if (!inserted && it->second != N)
      throw Error(Errc::InvalidArgument, "conflicting counts for n = " + std::to_string(n));
  }
  /// Largest m with N_1 .. N_m all present.
  unsigned contiguous() const {
    unsigned m = 0;
    while (counts.count(m + 1)) ++m;
    return m;
  }
};

/// a_n = N_n - 1 - p^(2n), keyed by n.
inline std::map<unsigned, Integer> traces_from_counts(const PointCounts& pc) {
  std::map<unsigned, Integer> out;
  for (const auto& [n, N] : pc.counts) {
    out[n] = N - 1 - ipow(Integer(static_cast<unsigned long>(pc.p)), 2 * n);
  }
  return out;
}

/// Known algebraic part (t - p)^minus_p * (t + p)^plus_p of a Weil polynomial.
struct KnownFactor {
  unsigned minus_p = 1;
  unsigned plus_p = 0;

  unsigned degree() const { return minus_p + plus_p; }
  /// Sum of n-th powers of the known eigenvalues.
  Integer power_sum(std::uint64_t p, unsigned n) const {
    const Integer pn = ipow(Integer(static_cast<unsigned long>(p)), n);
    return pn * minus_p + (n % 2 ? -pn : pn) * plus_p;
  }
  std::vector<Integer> coefficients(std::uint64_t p) const {
    IntegerRing Z;
    const Integer P(static_cast<unsigned long>(p));
    auto f = upoly::mul(Z, upoly::pow(Z, UPoly<IntegerRing>{-P, 1}, minus_p), upoly::pow(Z, UPoly<IntegerRing>{P, 1}, plus_p));
    return f;
  }
  std::string to_string(std::uint64_t p) const {
    std::string s;
    auto piece = [&](const char* sign, unsigned e) {
      if (!e) return;
      if (!s.empty()) s += "*";
      s += "(t" + std::string(sign) + std::to_string(p) + ")";
      if (e > 1) s += "^" + std::to_string(e);
    };
    piece("-", minus_p);
    piece("+", plus_p);
    return s.empty() ? "1" : s;
  }
  bool operator==(const KnownFactor&) const = default;
};

/// Degree-22 Frobenius characteristic polynomial.
struct WeilPolynomial {
  std::uint64_t p = 0;
  /// Ascending: coeffs[k] multiplies t^k; coeffs[22] = 1.
  std::vector<Integer> coeffs;
  /// Functional-equation sign, 0 until known.
  int sign = 0;
  KnownFactor known{};

  static constexpr int kDegree = 22;

  static WeilPolynomial from_coefficients(std::uint64_t p, std::vector<Integer> c, int sign = 0) {
    IntegerRing Z;
    upoly::trim(Z, c);
    if (upoly::deg<IntegerRing>(c) != kDegree || c.back() != 1)
      throw Error(Errc::NotWeil, "expected a monic polynomial of degree 22");
    WeilPolynomial w;
    w.p = p;
    w.coeffs = std::move(c);
    w.sign = sign;
    return w;
  }
  /// Descending convention: c(0) = 1 is the leading coefficient.
  const Integer& c(int i) const { return coeffs[kDegree - i]; }
  MPoly<IntegerRing> poly() const { return from_dense(IntegerRing{}, coeffs); }
  std::string to_string() const { return poly().to_string(Alphabet::univariate()); }
  bool operator==(const WeilPolynomial& o) const { return p == o.p && coeffs == o.coeffs; }
};

namespace detail {

/// Power sums s_1..s_m of the roots of a monic polynomial (descending c).
inline std::vector<Integer> power_sums(const std::vector<Integer>& c, unsigned m) {
  const unsigned d = static_cast<unsigned>(c.size()) - 1;
  std::vector<Integer> s(m + 1, 0);
  for (unsigned k = 1; k <= m; ++k) {
    Integer acc = k <= d ? Integer(-c[k] * k) : Integer(0);
    for (unsigned i = 1; i < k && i <= d; ++i) acc -= c[i] * s[k - i];
    s[k] = acc;
  }
  return s;
}

/// Leading coefficients c_1..c_m (descending, c_0 = 1) from power sums via
/// Newton; nullopt when a division is not exact.
inline std::optional<std::vector<Integer>> newton_coefficients(const std::vector<Integer>& s, unsigned m) {
  std::vector<Integer> c(m + 1, 0);
  c[0] = 1;
  for (unsigned k = 1; k <= m; ++k) {
    Integer acc = 0;
    for (unsigned i = 1; i <= k; ++i) acc += c[k - i] * s[i];
    if (acc % k != 0) return std::nullopt;
    c[k] = -acc / static_cast<long>(k);
  }
  return c;
}

/// Fills c_{d-i} = sign * p^(w(d-2i)/2) c_i; returns false when the free
/// half violates it (middle coefficient under sign -1).
inline bool complete_by_symmetry(std::vector<Integer>& c, unsigned d, std::uint64_t p, unsigned weight, int sign) {
  const Integer P(static_cast<unsigned long>(p));
  for (unsigned i = 0; 2 * i <= d; ++i) {
    const unsigned gap = weight * (d - 2 * i);
    if (gap % 2) return false;
    const Integer v = sign * ipow(P, gap / 2) * c[i];
    if (2 * i == d) {
      if (v != c[i]) return false;
    } else {
      c[d - i] = v;
    }
  }
  return true;
}

/// Free coefficients of a degree-d polynomial with the given symmetry sign.
inline unsigned free_coefficients(unsigned d, int sign) {
  if (d % 2) return (d - 1) / 2;
  return sign > 0 || d == 0 ? d / 2 : d / 2 - 1;
}

}  // namespace detail

struct WeilValidation {
  bool functional_equation = false;
  int sign = 0;
  bool hyperplane_factor = false;
  bool coefficient_bounds = false;
  /// Unset when the numerical check was skipped.
  std::optional<bool> root_magnitudes;
  long double worst_root_deviation = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

namespace detail {

/// Aberth-Ehrlich iteration on a monic polynomial (ascending coefficients).
inline std::vector<std::complex<long double>> aberth_roots(const std::vector<long double>& a) {
  using C = std::complex<long double>;
  const int d = static_cast<int>(a.size()) - 1;
  if (d < 1) return {};
  long double radius = 0;
  for (int i = 0; i < d; ++i) radius = std::max(radius, std::pow(std::fabs(a[i]), 1.0L / (d - i)));
  radius = std::max(radius, 1e-3L);
  std::vector<C> z(d);
  const long double pi = std::acos(-1.0L);
  for (int k = 0; k < d; ++k) z[k] = std::polar(radius, 2 * pi * k / d + 0.4L);
  auto eval = [&](C x, C& dp) {
    C v = a[d];
    dp = 0;
    for (int i = d - 1; i >= 0; --i) {
      dp = dp * x + v;
      v = v * x + a[i];
    }
    return v;
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (int k = 0; k < d; ++k) {
      C dp;
      const C v = eval(z[k], dp);
      if (v == C(0)) continue;
      const C ratio = v / dp;
      C sum = 0;
      for (int j = 0; j < d; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      const C w = ratio / (1.0L - ratio * sum);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

/// Rational polynomial P(p t) / p^22, ascending.
inline UPoly<RationalField> unitarize(const WeilPolynomial& w) {
  UPoly<RationalField> n(w.coeffs.size());
  const Integer P(static_cast<unsigned long>(w.p));
  const Integer top = ipow(P, WeilPolynomial::kDegree);
  for (std::size_t k = 0; k < w.coeffs.size(); ++k) {
    Rational r(w.coeffs[k] * ipow(P, k), top);
    r.canonicalize();
    n[k] = r;
  }
  return n;
}

}  // namespace detail

/// Checks the functional equation, the hyperplane root, coefficient bounds
/// and (optionally) root magnitudes numerically.
inline WeilValidation validate_weil(const WeilPolynomial& w, bool check_roots = true) {
  WeilValidation r;
  constexpr int D = WeilPolynomial::kDegree;
  if (w.coeffs.size() != D + 1 || w.coeffs.back() != 1) {
    r.failures.push_back("not a monic polynomial of degree 22");
    return r;
  }
  const Integer P(static_cast<unsigned long>(w.p));
  for (int sign : {1, -1}) {
    bool good = true;
    for (int i = 0; 2 * i <= D && good; ++i) good = w.c(D - i) == sign * ipow(P, D - 2 * i) * w.c(i);
    if (good) {
      r.functional_equation = true;
      r.sign = sign;
      break;
    }
  }
  if (!r.functional_equation) r.failures.push_back("functional equation fails for both signs");

  Integer at_p = 0;
  for (int k = D; k >= 0; --k) at_p = at_p * P + w.coeffs[k];
  r.hyperplane_factor = at_p == 0;
  if (!r.hyperplane_factor) r.failures.push_back("(t - p) does not divide P");

  r.coefficient_bounds = true;
  Integer binom = 1;
  for (int i = 0; i <= D; ++i) {
    if (i > 0) binom = binom * (D - i + 1) / i;
    if (abs(w.c(i)) > binom * ipow(P, i)) {
      r.coefficient_bounds = false;
      r.failures.push_back("coefficient bound fails at index " + std::to_string(i));
      break;
    }
  }

  if (check_roots) {
    RationalField Q;
    bool good = true;
    long double worst = 0;
    for (const auto& [mult, g] : upoly::squarefree_decomposition(Q, detail::unitarize(w))) {
      // Factors of a unit-circle polynomial have binomially bounded
      // coefficients, so doubles are accurate enough here.
      std::vector<long double> a(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) a[k] = static_cast<long double>(g[k].get_d());
      for (const auto& z : detail::aberth_roots(a)) {
        const long double dev = std::fabs(std::abs(z) - 1.0L);
        worst = std::max(worst, dev);
        if (dev > 1e-6L) good = false;
      }
    }
    r.root_magnitudes = good;
    r.worst_root_deviation = worst;
    if (!good) r.failures.push_back("a root is off the circle |t| = p");
  }
  return r;
}

/// Reconstructs candidate Weil polynomials from N_1..N_m. Extra counts beyond
/// the required number act as consistency checks.
inline std::vector<WeilPolynomial> reconstruct_weil(const PointCounts& pc, const KnownFactor& known = {},
                                                    std::optional<int> sign = std::nullopt) {
  constexpr unsigned D = WeilPolynomial::kDegree;
  if (pc.p < 3) throw Error(Errc::InvalidArgument, "p must be an odd prime");
  if (known.degree() > D) throw Error(Errc::InvalidArgument, "known factor of degree above 22");
  if (known.minus_p < 1) throw Error(Errc::InvalidArgument, "the known factor must contain (t - p)");
  const unsigned d = D - known.degree();
  const unsigned needed = d / 2;
  const unsigned m = pc.contiguous();
  if (m < needed)
    throw Error(Errc::InsufficientCounts, "need N_1..N_" + std::to_string(needed) + ", have N_1..N_" + std::to_string(m));
  const auto traces = traces_from_counts(pc);

  std::vector<Integer> s(m + 1, 0);
  for (unsigned n = 1; n <= m; ++n) s[n] = traces.at(n) - known.power_sum(pc.p, n);

  std::vector<WeilPolynomial> out;
  for (int eps : {1, -1}) {
    if (sign && *sign != eps) continue;
    // (t - p) has symmetry sign -1, (t + p) has +1.
    const int cof_sign = known.minus_p % 2 ? -eps : eps;
    const unsigned f = detail::free_coefficients(d, cof_sign);
    auto c = detail::newton_coefficients(s, f);
    if (!c) continue;
    c->resize(d + 1, 0);
    if (!detail::complete_by_symmetry(*c, d, pc.p, 2, cof_sign)) continue;
    // Consistency with every available trace.
    const auto check = detail::power_sums(*c, m);
    bool consistent = true;
    for (unsigned n = 1; n <= m && consistent; ++n) consistent = check[n] == s[n];
    if (!consistent) continue;
    std::vector<Integer> cof(c->rbegin(), c->rend());
    WeilPolynomial w = WeilPolynomial::from_coefficients(pc.p, upoly::mul(IntegerRing{}, cof, known.coefficients(pc.p)), eps);
    w.known = known;
    const auto v = validate_weil(w);
    if (!v.ok() || v.sign != eps) continue;
    out.push_back(std::move(w));
  }
  if (out.empty()) throw Error(Errc::NoCandidate, "counts are inconsistent with a K3 Weil polynomial");
  return out;
}

/// Exact cofactor P / known factor over Z.
inline std::vector<Integer> divide_known_factor(const WeilPolynomial& w, const KnownFactor& known) {
  IntegerRing Z;
  auto [q, r] = upoly::divrem(Z, w.coeffs, known.coefficients(w.p));
  if (!r.empty()) throw Error(Errc::InvalidArgument, "known factor does not divide the polynomial");
  return q;
}

struct CyclotomicReport {
  /// (n, multiplicity of Phi_n) for every n with a nonzero multiplicity.
  std::vector<std::pair<unsigned, unsigned>> multiplicities;
  unsigned rank_bound = 0;

  bool odd() const { return rank_bound % 2; }
  std::string to_string() const {
    std::ostringstream os;
    os << "rank (Tate) " << rank_bound << ";";
    for (auto [n, e] : multiplicities) os << " Phi_" << n << "^" << e;
    return os.str();
  }
};

/// Number of eigenvalues lambda with lambda/p a root of unity, by exact
/// division of the unitarized polynomial by cyclotomic polynomials.
inline CyclotomicReport cyclotomic_rank_bound(const WeilPolynomial& w) {
  if (!validate_weil(w, false).functional_equation) throw Error(Errc::NotWeil, "functional equation fails");
  RationalField Q;
  auto N = from_dense(Q, detail::unitarize(w));
  CyclotomicReport rep;
  for (unsigned n = 1; n <= 66; ++n) {
    const unsigned phi = euler_phi(n);
    if (phi > WeilPolynomial::kDegree) continue;
    const auto cyc = to_rational(cyclotomic(n));
    unsigned e = 0;
    while (N.total_degree() >= static_cast<int>(phi)) {
      auto quot = divide_exact(N, cyc);
      if (!quot) break;
      N = *quot;
      ++e;
    }
    if (e) {
      rep.multiplicities.emplace_back(n, e);
      rep.rank_bound += phi * e;
    }
  }
  return rep;
}

// Counts cache: one "p n N" line per count.

inline PointCounts load_counts_cache(const std::string& path, std::uint64_t p) {
  PointCounts pc;
  pc.p = p;
  std::ifstream in(path);
  if (!in) return pc;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::uint64_t lp = 0;
    unsigned n = 0;
    std::string N;
    if (!(is >> lp >> n >> N)) throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": malformed cache line");
    if (lp != p) continue;
    Integer v;
    if (v.set_str(N, 10) != 0) throw Error(Errc::ParseError, path + ":" + std::to_string(lineno) + ": bad integer");
    pc.add(n, v);
  }
  return pc;
}

/// Appends with a single write on an O_APPEND descriptor, so concurrent
/// writers never interleave within a line.
inline void append_counts_cache(const std::string& path, std::uint64_t p, unsigned n, const Integer& N) {
  const std::string line = std::to_string(p) + " " + std::to_string(n) + " " + N.get_str() + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw Error(Errc::InvalidArgument, "cannot open counts cache " + path);
  const ssize_t w = ::write(fd, line.data(), line.size());
  ::close(fd);
  if (w != static_cast<ssize_t>(line.size())) throw Error(Errc::InvalidArgument, "short write to counts cache " + path);
}

/// Counts N_1..N_m for a double plane, reusing and extending the cache.
inline PointCounts count_double_cover_cached(const DoubleCoverModel<FiniteField>& model, unsigned m,
                                             const std::string& cache, const CountOptions& opts = {}) {
  const std::uint64_t p = model.g6.ring().characteristic();
  PointCounts pc = cache.empty() ? PointCounts{p, {}} : load_counts_cache(cache, p);
  // Refuse up front rather than after hours of smaller counts.
  for (unsigned n = m; n >= 1; --n)
    if (!pc.counts.count(n)) {
      detail::checked_power(p, 2 * n, opts.budget, ("N_" + std::to_string(n) + ": q^2").c_str());
      break;
    }
  for (unsigned n = 1; n <= m; ++n) {
    if (pc.counts.count(n)) continue;
    const Integer N = count_double_cover(model, n, opts);
    pc.add(n, N);
    if (!cache.empty()) append_counts_cache(cache, p, n, N);
  }
  return pc;
}

// Genus-2 analogue.

/// #C(F_{p^n}) for y^2 = f(x), with f of degree 5 or 6 homogenized to degree 6
/// (weighted model; one point at infinity for degree 5, 1 + chi(lc) for 6).
inline Integer count_genus2(const UPoly<FiniteField>& f, const FiniteField& Fp, unsigned n) {
  const FiniteField Fq = detail::extension_of(Fp, n);
  const std::uint64_t q = Fq.size();
  std::vector<std::uint64_t> F(7, 0);
  for (std::size_t i = 0; i < f.size() && i < 7; ++i) F[i] = f[i];
  std::int64_t s = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t v = F[6];
    for (int j = 5; j >= 0; --j) v = Fq.add(Fq.mul(v, x), F[j]);
    s += 1 + Fq.character(v);
  }
  s += 1 + Fq.character(F[6]);
  return Integer(static_cast<long>(s));
}

struct Genus2LPolynomial {
  std::uint64_t p = 0;
  /// L(T) = 1 + a1 T + a2 T^2 + p a1 T^3 + p^2 T^4, ascending.
  std::vector<Integer> L;
  std::array<Integer, 2> counts;

  /// #C(F_{p^n}) predicted by L.
  Integer predicted_count(unsigned n) const {
    // Reciprocal roots of L are the roots of t^4 L(1/t), descending c = L.
    const auto s = detail::power_sums(L, n);
    return ipow(Integer(static_cast<unsigned long>(p)), n) + 1 - s[n];
  }
};

inline Genus2LPolynomial hyperelliptic_lpoly(const UPoly<FiniteField>& f, const FiniteField& Fp) {
  if (!Fp.is_prime_field()) throw Error(Errc::RingMismatch, "curve must be defined over a prime field");
  if (Fp.characteristic() == 2) throw Error(Errc::EvenCharacteristic, "characteristic 2");
  UPoly<FiniteField> g = f;
  upoly::trim(Fp, g);
  const int d = upoly::deg<FiniteField>(g);
  if (d != 5 && d != 6) throw Error(Errc::DegreeOutOfRange, "genus 2 needs degree 5 or 6");
  if (upoly::gcd(Fp, g, upoly::derivative(Fp, g)).size() > 1) throw Error(Errc::NotSquarefree, "f is not squarefree");

  Genus2LPolynomial out;
  out.p = Fp.characteristic();
  const Integer P(static_cast<unsigned long>(out.p));
  std::vector<Integer> s(3, 0);
  for (unsigned n = 1; n <= 2; ++n) {
    out.counts[n - 1] = count_genus2(g, Fp, n);
    s[n] = ipow(P, n) + 1 - out.counts[n - 1];
  }
  auto c = detail::newton_coefficients(s, 2);
  if (!c) throw Error(Errc::NoCandidate, "non-integral genus-2 coefficients");
  c->resize(5, 0);
  if (!detail::complete_by_symmetry(*c, 4, out.p, 1, 1)) throw Error(Errc::NoCandidate, "symmetry violated");
  out.L = *c;
  return out;
}

}  // namespace k3pic
