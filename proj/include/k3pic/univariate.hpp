#pragma once

// Dense univariate polynomials over a field (coefficients ascending), with
// gcd, squarefree decomposition in any characteristic, cyclotomic
// polynomials and exact division over Q.

#include "k3pic/mpoly.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace k3pic {

template <class Ring>
using UPoly = std::vector<typename Ring::value_type>;

namespace upoly {

template <class Ring>
void trim(const Ring& R, UPoly<Ring>& a) {
  while (!a.empty() && R.is_zero(a.back())) a.pop_back();
}

template <class Ring>
int deg(const UPoly<Ring>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class Ring>
UPoly<Ring> add(const Ring& R, const UPoly<Ring>& a, const UPoly<Ring>& b) {
  UPoly<Ring> r(std::max(a.size(), b.size()), R.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = R.add(r[i], b[i]);
  trim(R, r);
  return r;
}

template <class Ring>
UPoly<Ring> sub(const Ring& R, const UPoly<Ring>& a, const UPoly<Ring>& b) {
  UPoly<Ring> r(std::max(a.size(), b.size()), R.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = R.sub(r[i], b[i]);
  trim(R, r);
  return r;
}

template <class Ring>
UPoly<Ring> mul(const Ring& R, const UPoly<Ring>& a, const UPoly<Ring>& b) {
  if (a.empty() || b.empty()) return {};
  UPoly<Ring> r(a.size() + b.size() - 1, R.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (R.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = R.add(r[i + j], R.mul(a[i], b[j]));
  }
  trim(R, r);
  return r;
}

template <class Ring>
UPoly<Ring> pow(const Ring& R, const UPoly<Ring>& a, unsigned e) {
  UPoly<Ring> r{R.one()};
  for (unsigned i = 0; i < e; ++i) r = mul(R, r, a);
  return r;
}

/// Quotient and remainder; requires a field or a unit leading coefficient of b.
template <class Ring>
std::pair<UPoly<Ring>, UPoly<Ring>> divrem(const Ring& R, UPoly<Ring> a, const UPoly<Ring>& b) {
  if (b.empty()) throw Error(Errc::ZeroDivisor, "univariate division by zero");
  trim(R, a);
  if (a.size() < b.size()) return {{}, a};
  UPoly<Ring> q(a.size() - b.size() + 1, R.zero());
  for (std::size_t k = q.size(); k-- > 0;) {
    const auto c = ring_div_exact(R, a[k + b.size() - 1], b.back());
    q[k] = c;
    if (R.is_zero(c)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = R.sub(a[k + j], R.mul(c, b[j]));
  }
  a.resize(b.size() - 1);
  trim(R, a);
  trim(R, q);
  return {q, a};
}

template <class Ring>
UPoly<Ring> make_monic(const Ring& R, UPoly<Ring> a) {
  if (a.empty()) return a;
  const auto inv = R.inv(a.back());
  for (auto& c : a) c = R.mul(c, inv);
  return a;
}

template <class Ring>
UPoly<Ring> gcd(const Ring& R, UPoly<Ring> a, UPoly<Ring> b) {
  trim(R, a);
  trim(R, b);
  while (!b.empty()) {
    auto r = divrem(R, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(R, a);
}

template <class Ring>
UPoly<Ring> derivative(const Ring& R, const UPoly<Ring>& a) {
  if (a.size() <= 1) return {};
  UPoly<Ring> r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = R.mul(a[i], R.from_int(static_cast<long long>(i)));
  trim(R, r);
  return r;
}

/// Exact p-th root of a polynomial in t^p over F_q.
inline UPoly<FiniteField> pth_root(const FiniteField& F, const UPoly<FiniteField>& a) {
  const std::uint64_t p = F.characteristic();
  UPoly<FiniteField> r((a.size() + p - 1) / p, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (i % p) throw Error(Errc::InvalidArgument, "not a p-th power");
    // Inverse Frobenius is the (n-1)-fold Frobenius.
    auto c = a[i];
    for (unsigned k = 1; k < F.degree(); ++k) c = F.frobenius(c);
    r[i / p] = c;
  }
  trim(F, r);
  return r;
}

/// f = prod g_i^i with squarefree, pairwise coprime g_i (monic f assumed nonzero).
/// Returned as multiplicity -> factor.
inline std::map<unsigned, UPoly<FiniteField>> squarefree_decomposition(const FiniteField& F, UPoly<FiniteField> f) {
  trim(F, f);
  if (f.empty()) throw Error(Errc::ZeroForm, "squarefree decomposition of zero");
  f = make_monic(F, f);
  std::map<unsigned, UPoly<FiniteField>> out;
  if (f.size() == 1) return out;
  auto c = gcd(F, f, derivative(F, f));
  auto w = divrem(F, f, c).first;
  unsigned i = 1;
  while (w.size() > 1) {
    auto y = gcd(F, w, c);
    auto z = divrem(F, w, y).first;
    if (z.size() > 1) out[i] = z;
    ++i;
    w = y;
    c = divrem(F, c, y).first;
  }
  if (c.size() > 1) {
    const auto p = static_cast<unsigned>(F.characteristic());
    for (auto& [j, g] : squarefree_decomposition(F, pth_root(F, c))) {
      auto& slot = out[j * p];
      slot = slot.empty() ? g : mul(F, slot, g);
    }
  }
  return out;
}

/// Squarefree decomposition over Q (characteristic zero: plain Yun).
inline std::map<unsigned, UPoly<RationalField>> squarefree_decomposition(const RationalField& Q, UPoly<RationalField> f) {
  trim(Q, f);
  if (f.empty()) throw Error(Errc::ZeroForm, "squarefree decomposition of zero");
  f = make_monic(Q, f);
  std::map<unsigned, UPoly<RationalField>> out;
  if (f.size() == 1) return out;
  auto a = gcd(Q, f, derivative(Q, f));
  auto b = divrem(Q, f, a).first;
  auto c = divrem(Q, derivative(Q, f), a).first;
  auto d = sub(Q, c, derivative(Q, b));
  unsigned i = 1;
  while (b.size() > 1) {
    auto g = gcd(Q, b, d);
    if (g.size() > 1) out[i] = g;
    b = divrem(Q, b, g).first;
    c = divrem(Q, d, g).first;
    d = sub(Q, c, derivative(Q, b));
    ++i;
  }
  return out;
}

}  // namespace upoly

/// Coefficients of a univariate MPoly, ascending.
template <class Ring>
UPoly<Ring> to_dense(const MPoly<Ring>& f) {
  if (f.nvars() != 1) throw Error(Errc::WrongVariableCount, "expected a univariate polynomial");
  UPoly<Ring> r(f.is_zero() ? 0 : f.total_degree() + 1, f.ring().zero());
  for (const auto& t : f.terms()) r[t.m.e[0]] = t.c;
  return r;
}

template <class Ring>
MPoly<Ring> from_dense(const Ring& R, const UPoly<Ring>& a) {
  std::vector<typename MPoly<Ring>::Term> terms;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!R.is_zero(a[i])) terms.push_back({Monomial::var(0, static_cast<unsigned>(i)), a[i]});
  return MPoly<Ring>::from_terms(R, 1, std::move(terms));
}

/// Root multiplicities of a binary form over the algebraic closure, sorted
/// ascending. The point (1:0) is accounted for by the degree drop at t = 1.
inline std::vector<unsigned> squarefree_profile(const MPoly<FiniteField>& b) {
  if (b.nvars() != 2) throw Error(Errc::WrongVariableCount, "binary form expected");
  if (b.is_zero()) throw Error(Errc::ZeroForm, "profile of the zero form");
  if (!b.is_homogeneous()) throw Error(Errc::InvalidArgument, "binary form must be homogeneous");
  const FiniteField& F = b.ring();
  const int d = b.total_degree();
  UPoly<FiniteField> f(d + 1, 0);
  for (const auto& t : b.terms()) f[t.m.e[0]] = t.c;
  upoly::trim(F, f);
  std::vector<unsigned> prof;
  const int at_infinity = d - upoly::deg<FiniteField>(f);
  if (at_infinity > 0) prof.push_back(static_cast<unsigned>(at_infinity));
  for (const auto& [mult, g] : upoly::squarefree_decomposition(F, f))
    for (int k = 0; k < upoly::deg<FiniteField>(g); ++k) prof.push_back(mult);
  std::sort(prof.begin(), prof.end());
  return prof;
}

/// n-th cyclotomic polynomial over Z, 1 <= n <= 66.
inline MPoly<IntegerRing> cyclotomic(unsigned n) {
  if (n < 1 || n > 66) throw Error(Errc::OutOfRange, "cyclotomic index outside [1,66]");
  static std::map<unsigned, UPoly<IntegerRing>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  IntegerRing Z;
  auto build = [&](auto& self, unsigned m) -> UPoly<IntegerRing> {
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    UPoly<IntegerRing> num(m + 1, Integer(0));
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d)
      if (m % d == 0) num = upoly::divrem(Z, num, self(self, d)).first;
    cache[m] = num;
    return num;
  };
  return from_dense(Z, build(build, n));
}

/// a / b over Q when exact; nullopt otherwise.
inline std::optional<MPoly<RationalField>> divide_exact(const MPoly<RationalField>& a, const MPoly<RationalField>& b) {
  if (b.is_zero()) throw Error(Errc::ZeroDivisor, "division by the zero polynomial");
  RationalField Q;
  auto [q, r] = upoly::divrem(Q, to_dense(a), to_dense(b));
  if (!r.empty()) return std::nullopt;
  return from_dense(Q, q);
}

}  // namespace k3pic
