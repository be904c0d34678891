#pragma once

// Geometric models of the two K3 families: the discriminant sextic of a net
// of quadrics in P^5, and the projection of a (2,3) complete intersection in
// P^4 from a line it contains (decomposition, bordered matrix A, branch
// sextic, image cubic, fibres). Also smoothness and tritangent-scheme ideals.

#include "k3pic/groebner.hpp"
#include "k3pic/matrix.hpp"
#include "k3pic/univariate.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace k3pic {

enum class Provenance { DiscriminantOfNet, ProjectionFromLine, Direct };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::DiscriminantOfNet: return "discriminant-of-net";
    case Provenance::ProjectionFromLine: return "projection-from-line";
    case Provenance::Direct: return "direct";
  }
  return "?";
}

inline Provenance parse_provenance(const std::string& s) {
  if (s == "discriminant-of-net") return Provenance::DiscriminantOfNet;
  if (s == "projection-from-line") return Provenance::ProjectionFromLine;
  if (s == "direct") return Provenance::Direct;
  throw Error(Errc::ParseError, "unknown provenance '" + s + "'");
}

namespace detail {

template <class Ring>
void require_form(const MPoly<Ring>& f, int nvars, int degree, const char* what) {
  if (f.nvars() != nvars) throw Error(Errc::WrongVariableCount, std::string(what) + ": wrong number of variables");
  if (f.is_zero()) throw Error(Errc::ZeroForm, std::string(what) + " is zero");
  if (!f.is_homogeneous() || f.total_degree() != degree)
    throw Error(Errc::InvalidArgument, std::string(what) + " must be homogeneous of degree " + std::to_string(degree));
}

template <class Ring>
void require_odd_characteristic(const Ring& R) {
  if constexpr (std::is_same_v<Ring, FiniteField>) {
    if (R.characteristic() == 2) throw Error(Errc::EvenCharacteristic, "characteristic 2");
  }
}

}  // namespace detail

/// Gram matrix with the diagonal doubled: x^t G x = 2 q(x). Entries are
/// constants in a polynomial ring with `nvars` variables.
template <class Ring>
PolyMatrix<Ring> gram_matrix(const MPoly<Ring>& q, int nvars) {
  const Ring& R = q.ring();
  const int n = q.nvars();
  PolyMatrix<Ring> G(R, nvars, n, n);
  for (const auto& t : q.terms()) {
    if (t.m.deg != 2) throw Error(Errc::InvalidArgument, "Gram matrix of a non-quadratic form");
    int i = -1, j = -1;
    for (int k = 0; k < n; ++k)
      for (unsigned r = 0; r < t.m.e[k]; ++r) (i < 0 ? i : j) = k;
    if (i == j) {
      G(i, i) = MPoly<Ring>::constant(R, nvars, R.add(t.c, t.c));
    } else {
      G(i, j) = MPoly<Ring>::constant(R, nvars, t.c);
      G(j, i) = G(i, j);
    }
  }
  return G;
}

template <class Ring>
struct QuadricNet {
  std::array<MPoly<Ring>, 3> q;

  static QuadricNet from(const std::vector<MPoly<Ring>>& qs) {
    if (qs.size() != 3) throw Error(Errc::InvalidArgument, "a net needs exactly three quadrics");
    QuadricNet n{{qs[0], qs[1], qs[2]}};
    for (const auto& f : n.q) detail::require_form(f, 6, 2, "net quadric");
    detail::require_odd_characteristic(n.q[0].ring());
    return n;
  }
  /// Gram matrices as constants in the pencil ring (u,v,w).
  PolyMatrix<Ring> gram(int i) const { return gram_matrix(q[i], 3); }
  std::vector<MPoly<Ring>> polys() const { return {q[0], q[1], q[2]}; }
};

template <class Ring>
struct DoubleCoverModel {
  MPoly<Ring> g6;
  typename Ring::value_type twist{};
  Provenance provenance = Provenance::Direct;
  std::optional<MPoly<Ring>> image_cubic;
  std::optional<MPoly<Ring>> conic_discriminant;

  static DoubleCoverModel direct(MPoly<Ring> g, typename Ring::value_type lambda) {
    detail::require_form(g, 3, 6, "branch sextic");
    if (g.ring().is_zero(lambda)) throw Error(Errc::InvalidArgument, "twist must be nonzero");
    DoubleCoverModel m;
    m.g6 = std::move(g);
    m.twist = lambda;
    return m;
  }
};

/// Gram matrix ((d,e),(e,r)) of the sublattice spanned by H and L.
struct LatticeStamp {
  long d = 0, e = 0, r = 0;

  LatticeStamp() = default;
  LatticeStamp(long d_, long e_, long r_) : d(d_), e(e_), r(r_) {
    if (d <= 0 || d % 2) throw Error(Errc::InvalidArgument, "H^2 must be even and positive");
  }
  long discriminant() const { return d * r - e * e; }
  std::string to_string() const {
    return std::to_string(d) + " " + std::to_string(e) + " " + std::to_string(r);
  }
  bool operator==(const LatticeStamp&) const = default;
};

/// -det(u Q0 + v Q1 + w Q2).
template <class Ring>
DoubleCoverModel<Ring> disc_sextic(const QuadricNet<Ring>& net) {
  for (const auto& f : net.q)
    if (f.nvars() != 6) throw Error(Errc::WrongVariableCount, "net quadrics live in P^5");
  const Ring& R = net.q[0].ring();
  detail::require_odd_characteristic(R);
  using P = MPoly<Ring>;
  PolyMatrix<Ring> M(R, 3, 6, 6);
  for (int k = 0; k < 3; ++k) {
    const auto G = net.gram(k);
    const P x = P::variable(R, 3, k);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (!G(i, j).is_zero()) M(i, j) += x * G(i, j);
  }
  DoubleCoverModel<Ring> out;
  out.g6 = -det(M);
  out.twist = R.one();
  out.provenance = Provenance::DiscriminantOfNet;
  return out;
}

template <class Ring>
struct Degree6Pair {
  MPoly<Ring> f2, f3;

  static Degree6Pair from(MPoly<Ring> a, MPoly<Ring> b) {
    detail::require_form(a, 5, 2, "f2");
    detail::require_form(b, 5, 3, "f3");
    return {std::move(a), std::move(b)};
  }
  std::vector<MPoly<Ring>> polys() const { return {f2, f3}; }
};

/// f2 = l0 y0 + l1 y1 + q and f3 = l00 y0^2 + l01 y0 y1 + l11 y1^2 + q0 y0 + q1 y1 + c,
/// with (y0,y1) = (x3,x4) and all pieces forms in (u,v,w) = (x0,x1,x2).
template <class Ring>
struct LineDecomposition {
  MPoly<Ring> l0, l1, l00, l01, l11, q, q0, q1, c;

  Degree6Pair<Ring> reassemble() const {
    const Ring& R = l0.ring();
    using P = MPoly<Ring>;
    std::vector<P> img;
    for (int i = 0; i < 3; ++i) img.push_back(P::variable(R, 5, i));
    auto up = [&](const P& f) { return f.substitute(img); };
    const P y0 = P::variable(R, 5, 3), y1 = P::variable(R, 5, 4);
    Degree6Pair<Ring> out;
    out.f2 = up(l0) * y0 + up(l1) * y1 + up(q);
    out.f3 = up(l00) * y0 * y0 + up(l01) * y0 * y1 + up(l11) * y1 * y1 + up(q0) * y0 + up(q1) * y1 + up(c);
    return out;
  }
};

template <class Ring>
LineDecomposition<Ring> decompose_containing_line(const Degree6Pair<Ring>& pair) {
  if (pair.f2.nvars() != 5 || pair.f3.nvars() != 5) throw Error(Errc::WrongVariableCount, "pair lives in P^4");
  const Ring& R = pair.f2.ring();
  using P = MPoly<Ring>;
  std::string offending;
  auto split = [&](const P& f, std::vector<std::vector<typename P::Term>>& slots, unsigned max_y) {
    // Slot index by (y0, y1) exponent: key = e3 * (max_y + 1) + e4.
    for (const auto& t : f.terms()) {
      const unsigned a = t.m.e[3], b = t.m.e[4];
      if (a + b > max_y) {
        if (!offending.empty()) offending += ", ";
        offending += P::monomial(R, 5, t.m, t.c).to_string(Alphabet::projective(4));
        continue;
      }
      Monomial m;
      for (int i = 0; i < 3; ++i) m.e[i] = t.m.e[i];
      m.deg = static_cast<std::uint16_t>(m.e[0] + m.e[1] + m.e[2]);
      slots[a * (max_y + 1) + b].push_back({m, t.c});
    }
  };
  std::vector<std::vector<typename P::Term>> s2(4), s3(9);
  split(pair.f2, s2, 1);
  split(pair.f3, s3, 2);
  if (!offending.empty())
    throw Error(Errc::LineNotContained, "V(x0,x1,x2) is not contained; offending monomials: " + offending);
  auto mk = [&](std::vector<typename P::Term>& t) { return P::from_terms(R, 3, std::move(t)); };
  LineDecomposition<Ring> d;
  d.q = mk(s2[0]);
  d.l1 = mk(s2[1]);
  d.l0 = mk(s2[2]);
  d.c = mk(s3[0]);
  d.q1 = mk(s3[1]);
  d.l11 = mk(s3[2]);
  d.q0 = mk(s3[3]);
  d.l01 = mk(s3[4]);
  d.l00 = mk(s3[6]);
  return d;
}

/// A = (0 l0 l1 q; l0 2l00 l01 q0; l1 l01 2l11 q1; q q0 q1 2c).
template <class Ring>
PolyMatrix<Ring> tangency_matrix(const LineDecomposition<Ring>& d) {
  auto two = [](const MPoly<Ring>& f) { return f + f; };
  const MPoly<Ring> zero(d.l0.ring(), 3);
  return PolyMatrix<Ring>::from_rows({{zero, d.l0, d.l1, d.q},
                                      {d.l0, two(d.l00), d.l01, d.q0},
                                      {d.l1, d.l01, two(d.l11), d.q1},
                                      {d.q, d.q0, d.q1, two(d.c)}});
}

/// Lower-right 3x3 block of A: the conic in the fibral plane.
template <class Ring>
PolyMatrix<Ring> conic_matrix(const LineDecomposition<Ring>& d) {
  return tangency_matrix(d).minor(0, 0);
}

/// Resultant of l0 y0 + l1 y1 and l00 y0^2 + l01 y0 y1 + l11 y1^2 in (y0,y1).
template <class Ring>
MPoly<Ring> image_cubic(const LineDecomposition<Ring>& d) {
  return d.l00 * d.l1 * d.l1 - d.l01 * d.l0 * d.l1 + d.l11 * d.l0 * d.l0;
}

/// det of the conic block M; degree 5 when nonzero.
template <class Ring>
MPoly<Ring> conic_discriminant(const LineDecomposition<Ring>& d) {
  return det(conic_matrix(d));
}

template <class Ring>
DoubleCoverModel<Ring> branch_sextic(const LineDecomposition<Ring>& d) {
  const Ring& R = d.l0.ring();
  detail::require_odd_characteristic(R);
  DoubleCoverModel<Ring> m;
  m.g6 = det(tangency_matrix(d));
  if (m.g6.is_zero()) throw Error(Errc::ZeroSextic, "det(A) vanishes identically");
  m.twist = R.one();
  m.provenance = Provenance::ProjectionFromLine;
  m.image_cubic = image_cubic(d);
  m.conic_discriminant = conic_discriminant(d);
  return m;
}

// ---------------------------------------------------------------------------
// Fibres of the projection.

enum class FiberKind { TwoPoints, OneRamified, Inert, NonFlatLineFiber, NonFlatConicFiber, ContainedLine };

inline const char* fiber_kind_name(FiberKind k) {
  switch (k) {
    case FiberKind::TwoPoints: return "TwoPoints";
    case FiberKind::OneRamified: return "OneRamified";
    case FiberKind::Inert: return "Inert";
    case FiberKind::NonFlatLineFiber: return "NonFlatLineFiber";
    case FiberKind::NonFlatConicFiber: return "NonFlatConicFiber";
    case FiberKind::ContainedLine: return "ContainedLine";
  }
  return "?";
}

struct FiberReport {
  FiberKind kind{};
  /// Rational points (y0:y1:z) in the fibral plane; empty for non-flat kinds.
  std::vector<std::array<std::uint64_t, 3>> points;
  bool flat() const { return kind == FiberKind::TwoPoints || kind == FiberKind::OneRamified || kind == FiberKind::Inert; }
};

/// The fibre over a in P^2(F_q): the line l0(a) y0 + l1(a) y1 + q(a) z meets
/// the conic l00 y0^2 + l01 y0 y1 + l11 y1^2 + (q0 y0 + q1 y1) z + c z^2.
inline FiberReport fiber_at(const LineDecomposition<FiniteField>& d, const std::array<std::uint64_t, 3>& a) {
  const FiniteField& F = d.l0.ring();
  using P = MPoly<FiniteField>;
  std::vector<std::uint64_t> pt(a.begin(), a.end());
  auto ev = [&](const P& f) { return f.evaluate(pt); };
  FiberReport rep;
  const std::array<std::uint64_t, 3> line{ev(d.l0), ev(d.l1), ev(d.q)};
  if (line[0] == 0 && line[1] == 0 && line[2] == 0) {
    rep.kind = FiberKind::NonFlatLineFiber;
    return rep;
  }
  std::vector<P::Term> ct;
  auto put = [&](std::uint64_t c, std::array<unsigned, 3> e) {
    if (c) ct.push_back({Monomial::from_exponents(std::vector<unsigned>{e[0], e[1], e[2]}), c});
  };
  put(ev(d.l00), {2, 0, 0});
  put(ev(d.l01), {1, 1, 0});
  put(ev(d.l11), {0, 2, 0});
  put(ev(d.q0), {1, 0, 1});
  put(ev(d.q1), {0, 1, 1});
  put(ev(d.c), {0, 0, 2});
  if (ct.empty()) {
    rep.kind = FiberKind::NonFlatConicFiber;
    return rep;
  }
  const P conic = P::from_terms(F, 3, std::move(ct));
  const auto img = line_parametrization(F, line);
  const P b = conic.substitute(img);
  if (b.is_zero()) {
    rep.kind = FiberKind::ContainedLine;
    return rep;
  }
  // b = A s^2 + B s t + C t^2.
  std::uint64_t A = 0, B = 0, C = 0;
  for (const auto& t : b.terms()) (t.m.e[0] == 2 ? A : t.m.e[0] == 1 ? B : C) = t.c;
  const std::uint64_t disc = F.sub(F.mul(B, B), F.mul(F.from_int(4), F.mul(A, C)));
  std::vector<std::array<std::uint64_t, 2>> roots;
  if (A == 0) {
    roots.push_back({1, 0});
    if (B != 0) roots.push_back({F.neg(C), B});
  } else if (auto r = F.sqrt(disc)) {
    const std::uint64_t two_a = F.add(A, A);
    roots.push_back({F.sub(*r, B), two_a});
    if (*r != 0) roots.push_back({F.sub(F.neg(*r), B), two_a});
  }
  const int chi = F.character(disc);
  rep.kind = chi > 0 ? FiberKind::TwoPoints : chi == 0 ? FiberKind::OneRamified : FiberKind::Inert;
  for (const auto& st : roots) {
    std::vector<std::uint64_t> s{st[0], st[1]};
    rep.points.push_back({img[0].evaluate(s), img[1].evaluate(s), img[2].evaluate(s)});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Intersection of the branch sextic with the image cubic.

struct TangencyOptions {
  std::uint64_t seed = 0x6b33706963ull;
  /// Good charts to compare; the finest profile wins.
  int charts = 3;
  int max_failures = 20;
  /// Changes of coordinates are drawn from a field with at least this many elements.
  std::uint64_t min_field = 20000;
};

struct TangencyReport {
  std::vector<unsigned> profile;
  int charts_tried = 0;
  unsigned extension = 1;
  /// Every intersection point is a simple tangency: nine 2's.
  bool nine_tangencies() const { return profile == std::vector<unsigned>(9, 2); }
};

namespace detail {

/// Sylvester resultant in the last variable; coefficient forms in (u,v).
inline MPoly<FiniteField> resultant_last(const MPoly<FiniteField>& f, const MPoly<FiniteField>& g) {
  const FiniteField& F = f.ring();
  using P = MPoly<FiniteField>;
  auto coeffs = [&](const P& h) {
    const int d = h.degree_in(2);
    std::vector<std::vector<P::Term>> c(d + 1);
    for (const auto& t : h.terms()) {
      Monomial m;
      m.e[0] = t.m.e[0];
      m.e[1] = t.m.e[1];
      m.deg = static_cast<std::uint16_t>(m.e[0] + m.e[1]);
      c[t.m.e[2]].push_back({m, t.c});
    }
    std::vector<P> out;
    for (auto& x : c) out.push_back(P::from_terms(F, 2, std::move(x)));
    return out;
  };
  const auto a = coeffs(f), b = coeffs(g);
  const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
  PolyMatrix<FiniteField> S(F, 2, m + n, m + n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) S(r, r + k) = a[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) S(n + r, r + k) = b[n - k];
  return det(S);
}

}  // namespace detail

inline TangencyReport tangency_profile(const MPoly<FiniteField>& g6, const MPoly<FiniteField>& g3,
                                       const TangencyOptions& opts = {}) {
  detail::require_form(g6, 3, 6, "branch sextic");
  detail::require_form(g3, 3, 3, "cubic");
  const FiniteField& base = g6.ring();
  TangencyReport rep;
  // Larger field for the coordinate change when the input lives in a prime field.
  FiniteField E = base;
  if (base.is_prime_field()) {
    unsigned m = 1;
    std::uint64_t q = base.size();
    while (q < opts.min_field && m < 24) {
      q *= base.characteristic();
      ++m;
    }
    E = FiniteField(base.characteristic(), m);
    rep.extension = m;
  }
  const auto f = base.is_prime_field() ? embed(g6, E) : g6;
  const auto g = base.is_prime_field() ? embed(g3, E) : g3;
  SplitMix64 rng(opts.seed);
  using P = MPoly<FiniteField>;
  int good = 0, failures = 0;
  while (good < opts.charts) {
    ++rep.charts_tried;
    std::array<std::uint64_t, 9> T;
    for (auto& x : T) x = rng.below(E.size());
    auto minor2 = [&](int a, int b, int c, int d) { return E.sub(E.mul(T[a], T[b]), E.mul(T[c], T[d])); };
    const std::uint64_t dt = E.add(E.add(E.mul(T[0], minor2(4, 8, 5, 7)), E.mul(T[1], minor2(5, 6, 3, 8))),
                                   E.mul(T[2], minor2(3, 7, 4, 6)));
    std::vector<P> img;
    for (int i = 0; i < 3; ++i) {
      P lin(E, 3);
      for (int j = 0; j < 3; ++j) lin += P::variable(E, 3, j).scale(T[3 * i + j]);
      img.push_back(lin);
    }
    const P fa = f.substitute(img), ga = g.substitute(img);
    // Both must be monic up to a unit in w, i.e. (0:0:1) lies on neither curve.
    if (dt == 0 || fa.degree_in(2) != 6 || ga.degree_in(2) != 3) {
      if (++failures >= opts.max_failures)
        throw Error(Errc::BadChart, "no admissible chart after " + std::to_string(failures) + " attempts");
      continue;
    }
    const P r = detail::resultant_last(fa, ga);
    if (r.is_zero()) throw Error(Errc::CommonComponent, "sextic and cubic share a component");
    auto prof = squarefree_profile(r);
    if (prof.size() > rep.profile.size()) rep.profile = std::move(prof);
    ++good;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Smoothness.

/// Generators together with all maximal minors of their Jacobian matrix.
template <class Ring>
IdealBasis<Ring> jacobian_ideal(const std::vector<MPoly<Ring>>& gens, int k) {
  if (gens.empty()) throw Error(Errc::InvalidArgument, "empty system");
  const Ring& R = gens[0].ring();
  const int n = k + 1, c = static_cast<int>(gens.size());
  if (c > n - 1) throw Error(Errc::InvalidArgument, "too many equations for the ambient space");
  IdealBasis<Ring> J(R, n, gens);
  for (const auto& g : gens)
    if (g.nvars() != n) throw Error(Errc::WrongVariableCount, "system lives in the wrong ambient space");
  std::vector<std::vector<MPoly<Ring>>> jac(c);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < n; ++j) jac[i].push_back(gens[i].partial_derivative(j));
  std::vector<int> cols(c);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == c) {
      PolyMatrix<Ring> S(R, n, c, c);
      for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) S(i, j) = jac[i][cols[j]];
      auto m = det(S);
      if (!m.is_zero()) J.generators.push_back(std::move(m));
      return;
    }
    for (int j = start; j < n; ++j) {
      cols[pos] = j;
      rec(pos + 1, j + 1);
    }
  };
  rec(0, 0);
  return J;
}

/// True iff V(gens) in P^k is smooth of codimension #gens over the closure.
template <class Ring>
bool smoothness_check(const std::vector<MPoly<Ring>>& gens, int k, const GroebnerOptions& opts = {}) {
  for (const auto& g : gens)
    if (!g.is_homogeneous() || g.is_zero()) throw Error(Errc::InvalidArgument, "smoothness needs nonzero forms");
  return projective_is_empty(jacobian_ideal(gens, k), k, opts);
}

// ---------------------------------------------------------------------------
// Tritangent scheme.

/// Dual chart i: the line x_i + a x_j + b x_k = 0 (j < k the other two
/// coordinates), parametrized by (x_j, x_k) = (s, 1). Variables a, b sit at
/// indices a_var, a_var + 1 and s at s_var.
template <class Ring>
std::vector<MPoly<Ring>> dual_chart_parametrization(const Ring& R, int chart, int nv, int a_var, int s_var) {
  using P = MPoly<Ring>;
  const P a = P::variable(R, nv, a_var), b = P::variable(R, nv, a_var + 1);
  const P s = P::variable(R, nv, s_var), one = P::constant(R, nv, R.one());
  std::vector<P> img(3, P(R, nv));
  int k = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == chart) continue;
    img[i] = k++ == 0 ? s : one;
  }
  img[chart] = -(a * s + b);
  return img;
}

/// Twelve ideals in (a, b, h, h, h, c, z): the line of dual chart i,
/// h = h0 s^3 + h1 s^2 + h2 s + h3 with one coefficient set to 1, the seven
/// coefficients of g6|L - c h^2 in s, and c z - 1. The restriction is a
/// binary sextic, so working at t = 1 loses nothing.
template <class Ring>
std::vector<IdealBasis<Ring>> tritangent_scheme_ideals(const MPoly<Ring>& g6) {
  detail::require_form(g6, 3, 6, "branch sextic");
  const Ring& R = g6.ring();
  using P = MPoly<Ring>;
  constexpr int nv = 8;  // 7 unknowns, then s
  std::vector<IdealBasis<Ring>> out;
  for (int chart = 0; chart < 3; ++chart) {
    const P restricted = g6.substitute(dual_chart_parametrization(R, chart, nv, 0, 7));
    for (int lead = 0; lead < 4; ++lead) {
      P h(R, nv);
      for (int i = 0, var = 2; i < 4; ++i) {
        P coef = i == lead ? P::constant(R, nv, R.one()) : P::variable(R, nv, var++);
        h += coef * P::variable(R, nv, 7).pow(3 - i);
      }
      const P c = P::variable(R, nv, 5), z = P::variable(R, nv, 6);
      const P eq = restricted - c * h * h;
      std::vector<std::vector<typename P::Term>> groups(7);
      for (const auto& t : eq.terms()) {
        Monomial m = t.m;
        const unsigned es = m.e[7];
        m.deg = static_cast<std::uint16_t>(m.deg - es);
        m.e[7] = 0;
        groups[es].push_back({m, t.c});
      }
      IdealBasis<Ring> I(R, 7);
      for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        P g = P::from_terms(R, nv, std::move(*it)).with_nvars(7);
        if (!g.is_zero()) I.generators.push_back(std::move(g));
      }
      I.generators.push_back((c * z - P::constant(R, nv, R.one())).with_nvars(7));
      out.push_back(std::move(I));
    }
  }
  return out;
}

template <class Ring>
bool tritangent_free_over_closure(const MPoly<Ring>& g6, const GroebnerOptions& opts = {}) {
  for (const auto& I : tritangent_scheme_ideals(g6))
    if (!contains_one(I, opts)) return false;
  return true;
}

/// Whether g6 restricted to the integer line a u + b v + c w has only even
/// root multiplicities over Q-bar (and is not identically zero).
inline bool rational_line_is_split(const MPoly<IntegerRing>& g6, const std::array<Integer, 3>& line) {
  const auto r = restrict_to_line(g6, line);
  if (r.is_zero()) return false;
  RationalField Q;
  const int d = r.total_degree();
  UPoly<RationalField> f(d + 1, Rational(0));
  for (const auto& t : r.terms()) f[t.m.e[0]] = Rational(t.c);
  upoly::trim(Q, f);
  if ((d - upoly::deg<RationalField>(f)) % 2) return false;
  for (const auto& [mult, g] : upoly::squarefree_decomposition(Q, f))
    if (mult % 2) return false;
  return true;
}

struct TritangentReport {
  bool tritangent_free = false;
  ClosureMethod method = ClosureMethod::Direct;
  std::uint64_t prime = 0;
  /// Primes skipped because the reduction is singular or degenerate.
  std::vector<std::uint64_t> skipped;
  std::array<Integer, 3> witness{0, 0, 0};
};

/// No line L over Q-bar with g6|L a nonzero multiple of a square. The locus
/// of such lines is closed in the dual plane once the branch curve has no
/// line components, which a smooth reduction guarantees; emptiness modulo a
/// prime of smooth reduction therefore propagates to Q-bar.
inline TritangentReport tritangent_free_report(const MPoly<IntegerRing>& g6, const ClosureOptions& opts = {}) {
  detail::require_form(g6, 3, 6, "branch sextic");
  TritangentReport rep;
  if (opts.witness_box >= 0) {
    const long B = opts.witness_box;
    for (long a = -B; a <= B; ++a)
      for (long b = -B; b <= B; ++b)
        for (long c = -B; c <= B; ++c) {
          // Canonical sign: first nonzero coefficient positive.
          const long first = a ? a : b ? b : c;
          if (first <= 0) continue;
          std::array<Integer, 3> L{Integer(a), Integer(b), Integer(c)};
          if (rational_line_is_split(g6, L)) {
            rep.method = ClosureMethod::RationalWitness;
            rep.witness = L;
            return rep;
          }
        }
  }
  for (std::uint64_t p : opts.primes) {
    FiniteField F(p);
    const auto gp = reduce_mod(g6, F);
    if (gp.is_zero() || !smoothness_check(std::vector<MPoly<FiniteField>>{gp}, 2, opts.groebner)) {
      rep.skipped.push_back(p);
      continue;
    }
    if (tritangent_free_over_closure(gp, opts.groebner)) {
      rep.tritangent_free = true;
      rep.method = ClosureMethod::Specialization;
      rep.prime = p;
      return rep;
    }
  }
  if (!opts.direct_fallback)
    throw Error(Errc::BudgetExceeded, "no specialization prime certifies tritangent-freeness and direct search is disabled");
  rep.tritangent_free = tritangent_free_over_closure(to_rational(g6), opts.groebner);
  rep.method = ClosureMethod::Direct;
  return rep;
}

}  // namespace k3pic
