#include "k3pic/matrix.hpp"
#include "k3pic/univariate.hpp"

#include <gtest/gtest.h>

using namespace k3pic;

namespace {

using PF = MPoly<FiniteField>;
using PZ = MPoly<IntegerRing>;
using PQ = MPoly<RationalField>;

template <class Ring>
MPoly<Ring> P(const Ring& R, const char* s, int nv) {
  return parse_mpoly(R, s, nv);
}

// Random dense form of degree d in nv variables over F_p.
PF random_form(const FiniteField& F, int nv, unsigned d, SplitMix64& g) {
  std::vector<PF::Term> terms;
  std::vector<unsigned> e(nv, 0);
  auto rec = [&](auto& self, int i, unsigned left) -> void {
    if (i == nv - 1) {
      e[i] = left;
      terms.push_back({Monomial::from_exponents(e), g.below(F.size())});
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return PF::from_terms(F, nv, terms);
}

PZ random_int_poly(int nv, unsigned d, SplitMix64& g) {
  std::vector<PZ::Term> terms;
  for (int k = 0; k < 4; ++k) {
    std::vector<unsigned> e(nv);
    unsigned left = d;
    for (int i = 0; i < nv; ++i) {
      e[i] = static_cast<unsigned>(g.below(left + 1));
      left -= e[i];
    }
    terms.push_back({Monomial::from_exponents(e), Integer(static_cast<long>(g.range(-9, 9)))});
  }
  return PZ::from_terms(IntegerRing{}, nv, terms);
}

}  // namespace

TEST(MPoly, CanonicalText) {
  RationalField Q;
  PQ f = P(Q, "3*u^2 - v*w + 1/2*w^2 - 7", 3);
  EXPECT_EQ(f.to_string(), "3*u^2 - v*w + 1/2*w^2 - 7");
  EXPECT_EQ(P(Q, "(u+v)^2", 3).to_string(), "u^2 + 2*u*v + v^2");
  // Grevlex: among degree-2 monomials in (u,v,w), u^2 > uv > v^2 > uw > vw > w^2.
  EXPECT_EQ(P(Q, "w^2 + v*w + u*w + v^2 + u*v + u^2", 3).to_string(), "u^2 + u*v + v^2 + u*w + v*w + w^2");
  EXPECT_EQ(PQ(Q, 3).to_string(), "0");
  EXPECT_EQ(P(Q, "-x0*x4 + 2x1x3", 5).to_string(), "2*x1*x3 - x0*x4");
}

TEST(MPoly, RoundTripRandom) {
  SplitMix64 g(11);
  FiniteField F(47);
  for (int nv : {1, 2, 3, 5, 6}) {
    for (int k = 0; k < 20; ++k) {
      PF f = random_form(F, nv, 1 + static_cast<unsigned>(g.below(5)), g);
      std::string s = f.to_string();
      EXPECT_EQ(parse_mpoly(F, s, nv).to_string(), s);
      EXPECT_EQ(parse_mpoly(F, s, nv), f);
    }
  }
  FiniteField F9(3, 2);
  PF h = random_form(F9, 3, 3, g);
  EXPECT_EQ(parse_mpoly(F9, h.to_string(), 3), h);
  for (int k = 0; k < 20; ++k) {
    PZ z = random_int_poly(3, 4, g) * random_int_poly(3, 3, g);
    EXPECT_EQ(parse_mpoly(IntegerRing{}, z.to_string(), 3), z);
  }
}

TEST(MPoly, ParseErrors) {
  RationalField Q;
  for (const char* bad : {"u +", "q*u", "u^", "(u", "u)"}) {
    try {
      parse_mpoly(Q, bad, 3);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ParseError);
    }
  }
}

TEST(MPoly, ReductionAndLift) {
  PZ f = parse_mpoly(IntegerRing{}, "46*u - 48*v + 94*w", 3);
  FiniteField F(47);
  PF r = reduce_mod(f, F);
  EXPECT_EQ(r.to_string(), "46*u + 46*v");
  EXPECT_EQ(centered_lift(r).to_string(), "-u - v");
}

TEST(Det, Examples) {
  RationalField Q;
  PQ a = P(Q, "u", 3), m = P(Q, "v", 3);
  PQ z(Q, 3);
  auto M = PolyMatrix<RationalField>::from_rows({{z, a}, {a, m}});
  EXPECT_EQ(det(M), -(a * a));
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(det(PolyMatrix<RationalField>::identity(Q, 3, n)).to_string(), "1");
}

TEST(Det, BareissMatchesLaplaceAndIsMultiplicative) {
  SplitMix64 g(5);
  FiniteField F(7);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 5;
    PolyMatrix<FiniteField> A(F, 3, n, n), B(F, 3, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        A(i, j) = random_form(F, 3, 1, g);
        B(i, j) = PF::constant(F, 3, g.below(7));
      }
    // Laplace along the first row with Bareiss minors.
    PF lap(F, 3);
    for (std::size_t j = 0; j < n; ++j) {
      PF t = A(0, j) * det(A.minor(0, j));
      lap = (j % 2) ? lap - t : lap + t;
    }
    EXPECT_EQ(det(A), lap);
    EXPECT_EQ(det(A * B), det(A) * det(B));
  }
}

TEST(Det, BlockTriangular) {
  SplitMix64 g(9);
  for (int trial = 0; trial < 5; ++trial) {
    PolyMatrix<IntegerRing> M(IntegerRing{}, 2, 5, 5);
    PolyMatrix<IntegerRing> A(IntegerRing{}, 2, 2, 2), C(IntegerRing{}, 2, 3, 3);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        if (i >= 2 && j < 2) continue;
        M(i, j) = random_int_poly(2, 1, g);
        if (i < 2 && j < 2) A(i, j) = M(i, j);
        if (i >= 2 && j >= 2) C(i - 2, j - 2) = M(i, j);
      }
    EXPECT_EQ(det(M), det(A) * det(C));
  }
}

TEST(Adjugate, Examples) {
  RationalField Q;
  auto one = PolyMatrix<RationalField>::from_rows({{P(Q, "u+v", 3)}});
  EXPECT_EQ(adjugate(one)(0, 0).to_string(), "1");
  PQ a = P(Q, "u", 3), b = P(Q, "v", 3), c = P(Q, "w", 3), d = P(Q, "u+w", 3);
  auto M = PolyMatrix<RationalField>::from_rows({{a, b}, {c, d}});
  auto adj = adjugate(M);
  EXPECT_EQ(adj(0, 0), d);
  EXPECT_EQ(adj(0, 1), -b);
  EXPECT_EQ(adj(1, 0), -c);
  EXPECT_EQ(adj(1, 1), a);
}

TEST(Adjugate, ProductIsDetTimesIdentity) {
  SplitMix64 g(3);
  FiniteField F(7);
  for (std::size_t n = 2; n <= 5; ++n) {
    PolyMatrix<FiniteField> M(F, 3, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) M(i, j) = random_form(F, 3, 1, g);
    auto prod = M * adjugate(M);
    PF d = det(M);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(prod(i, j), i == j ? d : PF(F, 3));
  }
}

TEST(Bordered, Examples) {
  RationalField Q;
  PQ m1 = P(Q, "u+2*v", 3), a = P(Q, "w - u", 3);
  auto M = PolyMatrix<RationalField>::from_rows({{m1}});
  EXPECT_TRUE(bordered_det_identity_check(M, {a}));
  // Independent expansion for n = 1: -det[[0,a],[a,m]] = a^2.
  EXPECT_EQ(-det(bordered(M, {a})), a * a);
  SplitMix64 g(21);
  FiniteField F5(5);
  PolyMatrix<FiniteField> M3(F5, 3, 3, 3);
  std::vector<PF> v;
  for (std::size_t i = 0; i < 3; ++i) {
    v.push_back(random_form(F5, 3, 1, g));
    for (std::size_t j = 0; j < 3; ++j) M3(i, j) = random_form(F5, 3, 1, g);
  }
  EXPECT_TRUE(bordered_det_identity_check(M3, v));
  PolyMatrix<IntegerRing> M4(IntegerRing{}, 2, 4, 4);
  std::vector<PZ> w;
  for (std::size_t i = 0; i < 4; ++i) {
    w.push_back(random_int_poly(2, 2, g));
    for (std::size_t j = 0; j < 4; ++j) M4(i, j) = random_int_poly(2, 1, g);
  }
  EXPECT_TRUE(bordered_det_identity_check(M4, w));
  EXPECT_THROW(bordered_det_identity_check(M4, std::vector<PZ>(3, PZ(IntegerRing{}, 2))), Error);
}

TEST(RestrictToLine, Examples) {
  FiniteField F(5);
  EXPECT_TRUE(restrict_to_line(P(F, "u*v*w", 3), {1, 0, 0}).is_zero());
  EXPECT_EQ(restrict_to_line(P(F, "u^2 + v^2", 3), {0, 0, 1}).to_string(), "s^2 + t^2");
  EXPECT_TRUE(restrict_to_line(P(F, "(u+v+w)^2", 3), {1, 1, 1}).is_zero());
  EXPECT_EQ(restrict_to_line(P(F, "u", 3), {1, 1, 1}).to_string(), "4*s + 4*t");
  EXPECT_THROW(restrict_to_line(P(F, "u", 3), {0, 0, 0}), Error);
  SplitMix64 g(2);
  for (int k = 0; k < 30; ++k) {
    PF f = random_form(F, 3, 4, g);
    std::array<std::uint64_t, 3> L{g.below(5), g.below(5), g.below(5)};
    if (L == std::array<std::uint64_t, 3>{0, 0, 0}) continue;
    PF r = restrict_to_line(f, L);
    EXPECT_TRUE(r.is_zero() || (r.is_homogeneous() && r.total_degree() == 4));
  }
}

TEST(Derivative, Examples) {
  RationalField Q;
  EXPECT_EQ(P(Q, "u^3", 3).partial_derivative(0).to_string(), "3*u^2");
  EXPECT_TRUE(P(Q, "7", 3).partial_derivative(0).is_zero());
  EXPECT_THROW(P(Q, "u", 3).partial_derivative(3), Error);
  SplitMix64 g(8);
  for (int k = 0; k < 10; ++k) {
    PZ fz = random_int_poly(4, 5, g);
    PQ f = to_rational(fz.homogeneous_part(5));
    PQ euler(Q, 4);
    for (int i = 0; i < 4; ++i) euler += PQ::variable(Q, 4, i) * f.partial_derivative(i);
    EXPECT_EQ(euler, f.scale(Rational(5)));
  }
}

TEST(SquarefreeProfile, Examples) {
  FiniteField F5(5), F7(7);
  using V = std::vector<unsigned>;
  EXPECT_EQ(squarefree_profile(P(F5, "s^2*t^4", 2)), (V{2, 4}));
  EXPECT_EQ(squarefree_profile(P(F5, "s^6 + t^6", 2)), V(6, 1));
  EXPECT_EQ(squarefree_profile(P(F7, "(s^3 - t^3)^2", 2)), (V{2, 2, 2}));
  EXPECT_EQ(squarefree_profile(P(F5, "s^5*t", 2)), (V{1, 5}));
  // Inseparable direction: s^5 - t^5 = (s - t)^5 in characteristic 5.
  EXPECT_EQ(squarefree_profile(P(F5, "s^5*t - t^6", 2)), (V{1, 5}));
  EXPECT_EQ(squarefree_profile(P(F5, "(s^2+2*t^2)^5*(s+t)", 2)), (V{1, 5, 5}));
  EXPECT_THROW(squarefree_profile(PF(F5, 2)), Error);
}

TEST(SquarefreeProfile, InvariantUnderSubstitution) {
  SplitMix64 g(17);
  FiniteField F(7);
  PF s = PF::variable(F, 2, 0), t = PF::variable(F, 2, 1);
  for (int k = 0; k < 40; ++k) {
    // Product of random linear and quadratic pieces with random powers.
    PF b = PF::constant(F, 2, 1);
    unsigned deg = 0;
    while (deg < 8) {
      PF piece = random_form(F, 2, 1 + static_cast<unsigned>(g.below(2)), g);
      if (piece.is_zero()) continue;
      unsigned e = 1 + static_cast<unsigned>(g.below(3));
      b = b * piece.pow(e);
      deg += e * static_cast<unsigned>(piece.total_degree());
    }
    std::uint64_t a, bb, c, d;
    do {
      a = g.below(7), bb = g.below(7), c = g.below(7), d = g.below(7);
    } while (F.sub(F.mul(a, d), F.mul(bb, c)) == 0);
    PF img0 = s.scale(a) + t.scale(bb), img1 = s.scale(c) + t.scale(d);
    PF b2 = b.substitute({img0, img1});
    auto p1 = squarefree_profile(b), p2 = squarefree_profile(b2);
    EXPECT_EQ(p1, p2);
    unsigned sum = 0;
    for (auto x : p1) sum += x;
    EXPECT_EQ(sum, static_cast<unsigned>(b.total_degree()));
  }
}

TEST(Cyclotomic, Examples) {
  EXPECT_EQ(cyclotomic(1).to_string(), "t - 1");
  EXPECT_EQ(cyclotomic(4).to_string(), "t^2 + 1");
  EXPECT_EQ(cyclotomic(66).total_degree(), 20);
  EXPECT_THROW(cyclotomic(67), Error);
  EXPECT_THROW(cyclotomic(0), Error);
}

TEST(Cyclotomic, ProductIdentity) {
  IntegerRing Z;
  for (unsigned n = 1; n <= 66; ++n) {
    PZ prod = PZ::constant(Z, 1, 1);
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic(d);
    EXPECT_EQ(prod.to_string(), (n == 1 ? std::string("t") : "t^" + std::to_string(n)) + " - 1") << n;
    EXPECT_EQ(cyclotomic(n).total_degree(), static_cast<int>(euler_phi(n)));
  }
}

TEST(DivideExact, Examples) {
  RationalField Q;
  auto q = divide_exact(P(Q, "t^2 - 1", 1), P(Q, "t - 1", 1));
  ASSERT_TRUE(q);
  EXPECT_EQ(q->to_string(), "t + 1");
  EXPECT_FALSE(divide_exact(P(Q, "t^2 + 1", 1), P(Q, "t - 1", 1)));
  PQ a = P(Q, "(t-5)^2*(t^2+25)^10", 1);
  auto r = divide_exact(a, P(Q, "t^2+25", 1));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, P(Q, "(t-5)^2*(t^2+25)^9", 1));
  EXPECT_EQ(*r * P(Q, "t^2+25", 1), a);
  EXPECT_THROW(divide_exact(a, PQ(Q, 1)), Error);
}

TEST(Univariate, SquarefreeOverQ) {
  RationalField Q;
  auto dec = upoly::squarefree_decomposition(Q, to_dense(P(Q, "(t-1)^3*(t^2+2)^2*(t+5)", 1)));
  ASSERT_EQ(dec.size(), 3u);
  EXPECT_EQ(from_dense(Q, dec[1]).to_string(), "t + 5");
  EXPECT_EQ(from_dense(Q, dec[2]).to_string(), "t^2 + 2");
  EXPECT_EQ(from_dense(Q, dec[3]).to_string(), "t - 1");
}
