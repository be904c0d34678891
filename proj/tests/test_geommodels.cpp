#include "k3pic/geommodels.hpp"
#include "k3pic/reference_models.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace k3pic;
using k3pic::testing::random_decomposition;
using k3pic::testing::random_form;

namespace {

using PF = MPoly<FiniteField>;
using PZ = MPoly<IntegerRing>;
using PQ = MPoly<RationalField>;

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

std::vector<std::array<std::uint64_t, 3>> plane_points(const FiniteField& F) {
  std::vector<std::array<std::uint64_t, 3>> out;
  for (const auto& pt : enumerate_projective(F.field(), 2)) out.push_back({pt[0], pt[1], pt[2]});
  return out;
}

}  // namespace

// --- nets and discriminants ------------------------------------------------

TEST(Gram, QuadraticFormIdentity) {
  SplitMix64 rng(1);
  FiniteField F(7);
  IntegerRing Z;
  for (int trial = 0; trial < 10; ++trial) {
    auto check = [&](const auto& q) {
      using P = std::decay_t<decltype(q)>;
      const auto& R = q.ring();
      auto G = gram_matrix(q, 6);
      EXPECT_TRUE(G.is_symmetric());
      P lhs(R, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) lhs += P::variable(R, 6, i) * P::variable(R, 6, j) * G(i, j);
      EXPECT_EQ(lhs, q + q);
    };
    check(random_form(F, 6, 2, rng));
    check(random_form(Z, 6, 2, rng));
  }
}

TEST(DiscSextic, DiagonalNetIsProductOfLinearForms) {
  IntegerRing Z;
  SplitMix64 rng(3);
  std::vector<PZ> qs(3, PZ(Z, 6));
  std::array<std::array<long, 6>, 3> a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) {
      a[i][j] = rng.range(-4, 4);
      qs[i] += PZ::variable(Z, 6, j).pow(2).scale(Integer(a[i][j]));
    }
  for (auto& q : qs)
    if (q.is_zero()) q = PZ::variable(Z, 6, 0).pow(2);
  auto net = QuadricNet<IntegerRing>::from(qs);
  PZ expect = PZ::constant(Z, 3, -1);
  for (int j = 0; j < 6; ++j) {
    PZ l(Z, 3);
    for (int i = 0; i < 3; ++i) {
      const auto c = net.q[i].coefficient(Monomial::var(j, 2));
      l += PZ::variable(Z, 3, i).scale(2 * c);
    }
    expect = expect * l;
  }
  auto m = disc_sextic(net);
  EXPECT_EQ(m.g6, expect);
  EXPECT_EQ(m.provenance, Provenance::DiscriminantOfNet);
}

TEST(DiscSextic, ReferenceNetMatchesReferenceSextic) {
  auto net = QuadricNet<FiniteField>::from(reference::deg8_net_f47());
  auto g6 = disc_sextic(net).g6;
  const auto ref = reference::deg8_branch_sextic();
  const FiniteField& F = ref.ring();
  // Proportionality constant from the leading coefficients, then exact comparison.
  const auto lambda = F.div(g6.lc(), ref.lc());
  EXPECT_EQ(lambda, 17u);
  EXPECT_EQ(g6, ref.scale(lambda));
}

TEST(DiscSextic, RationalNetReducesToReferenceNet) {
  FiniteField F(reference::kPrime);
  auto rat = reference::deg8_net_rational();
  auto ref = reference::deg8_net_f47();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(reduce_mod(rat[i], F), ref[i]);
  auto gz = disc_sextic(QuadricNet<IntegerRing>::from(rat)).g6;
  EXPECT_EQ(reduce_mod(gz, F), disc_sextic(QuadricNet<FiniteField>::from(ref)).g6);
}

TEST(DiscSextic, RepeatedQuadricGivesConcurrentLines) {
  // q0 = q1: the sextic only sees u + v, so it is a cone over (1:-1:0).
  SplitMix64 rng(8);
  FiniteField F(11);
  auto q0 = random_form(F, 6, 2, rng), q2 = random_form(F, 6, 2, rng);
  auto g6 = disc_sextic(QuadricNet<FiniteField>::from({q0, q0, q2})).g6;
  ASSERT_FALSE(g6.is_zero());
  const std::vector<std::uint64_t> vertex{1, F.neg(1), 0};
  EXPECT_EQ(g6.evaluate(vertex), 0u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(g6.partial_derivative(i).evaluate(vertex), 0u);
  EXPECT_FALSE(smoothness_check(std::vector<PF>{g6}, 2));
}

TEST(DiscSextic, EquivariantUnderNetAndAmbientChanges) {
  SplitMix64 rng(21);
  FiniteField F(13);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<PF> qs{random_form(F, 6, 2, rng), random_form(F, 6, 2, rng), random_form(F, 6, 2, rng)};
    const auto g6 = disc_sextic(QuadricNet<FiniteField>::from(qs)).g6;
    // Net change q'_i = sum_j g_ij q_j: g6'(x) = g6(g^t x).
    std::array<std::array<std::uint64_t, 3>, 3> g;
    for (auto& r : g)
      for (auto& x : r) x = rng.below(13);
    std::vector<PF> qn(3, PF(F, 6)), img(3, PF(F, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        qn[i] += qs[j].scale(g[i][j]);
        img[j] += PF::variable(F, 3, i).scale(g[i][j]);
      }
    bool nonzero = std::all_of(qn.begin(), qn.end(), [](const PF& p) { return !p.is_zero(); });
    if (nonzero) {
      EXPECT_EQ(disc_sextic(QuadricNet<FiniteField>::from(qn)).g6, g6.substitute(img));
    }
    // Ambient change x -> P x: g6 scales by det(P)^2.
    PolyMatrix<FiniteField> Pm(F, 0, 6, 6);
    std::vector<PF> sub(6, PF(F, 6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const auto c = rng.below(13);
        Pm(i, j) = PF::constant(F, 0, c);
        sub[i] += PF::variable(F, 6, j).scale(c);
      }
    const auto d = det(Pm);
    const std::uint64_t dv = d.is_zero() ? 0 : d.lc();
    std::vector<PF> moved;
    for (const auto& q : qs) moved.push_back(q.substitute(sub));
    if (dv && std::all_of(moved.begin(), moved.end(), [](const PF& p) { return !p.is_zero(); })) {
      EXPECT_EQ(disc_sextic(QuadricNet<FiniteField>::from(moved)).g6, g6.scale(F.mul(dv, dv)));
    }
  }
}

TEST(DiscSextic, Rejections) {
  FiniteField F(5);
  auto x = parse_mpoly(F, "x0^2", 6);
  EXPECT_EQ(code_of([&] { QuadricNet<FiniteField>::from({x, x}); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { QuadricNet<FiniteField>::from({x, x, parse_mpoly(F, "u^2", 3)}); }),
            Errc::WrongVariableCount);
}

// --- projection from a line ----------------------------------------------------

TEST(Decompose, ReadOff) {
  RationalField Q;
  const auto al = Alphabet::projective(4);
  auto pair = Degree6Pair<RationalField>::from(parse_mpoly(Q, "x0*x3 + x1*x4 + x2^2", al, 5),
                                                parse_mpoly(Q, "x2*x3^2", al, 5));
  auto d = decompose_containing_line(pair);
  const auto ab = Alphabet::for_nvars(3);
  EXPECT_EQ(d.l0.to_string(ab), "u");
  EXPECT_EQ(d.l1.to_string(ab), "v");
  EXPECT_EQ(d.q.to_string(ab), "w^2");
  EXPECT_EQ(d.l00.to_string(ab), "w");
  EXPECT_TRUE(d.l01.is_zero() && d.l11.is_zero() && d.q0.is_zero() && d.q1.is_zero() && d.c.is_zero());
}

TEST(Decompose, NotContained) {
  FiniteField F(5);
  auto pair = Degree6Pair<FiniteField>::from(parse_mpoly(F, "x3^2", 5), parse_mpoly(F, "x0^3", 5));
  try {
    decompose_containing_line(pair);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LineNotContained);
    EXPECT_NE(std::string(e.what()).find("x3^2"), std::string::npos);
  }
}

TEST(Decompose, ReassemblyRoundTrip) {
  SplitMix64 rng(4);
  FiniteField F(7);
  IntegerRing Z;
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_decomposition(F, rng);
    auto pair = d.reassemble();
    auto d2 = decompose_containing_line(pair);
    EXPECT_EQ(d2.reassemble().f2, pair.f2);
    EXPECT_EQ(d2.reassemble().f3, pair.f3);
    EXPECT_EQ(d2.l01, d.l01);
    EXPECT_EQ(d2.c, d.c);
    auto dz = random_decomposition(Z, rng);
    EXPECT_EQ(decompose_containing_line(dz.reassemble()).reassemble().f3, dz.reassemble().f3);
  }
}

TEST(Degree6, ReferencePairBranchSextic) {
  FiniteField F(reference::kPrime);
  auto rat = reference::deg6_pair_rational();
  auto pair = Degree6Pair<FiniteField>::from(reduce_mod(rat[0], F), reduce_mod(rat[1], F));
  auto d = decompose_containing_line(pair);
  auto m = branch_sextic(d);
  EXPECT_EQ(m.g6, reference::deg6_branch_sextic());
  EXPECT_EQ(m.provenance, Provenance::ProjectionFromLine);
  ASSERT_TRUE(m.image_cubic && m.conic_discriminant);
  EXPECT_EQ(m.image_cubic->total_degree(), 3);
  EXPECT_EQ(m.conic_discriminant->total_degree(), 5);
  EXPECT_TRUE(m.conic_discriminant->is_homogeneous());
  // Over Q the pair does not contain the line.
  EXPECT_EQ(code_of([&] { decompose_containing_line(Degree6Pair<IntegerRing>::from(rat[0], rat[1])); }),
            Errc::LineNotContained);
}

TEST(TangencyMatrix, Shape) {
  FiniteField F(5);
  LineDecomposition<FiniteField> d;
  PF z(F, 3);
  d = {PF::variable(F, 3, 0), z, z, z, z, z, z, z, z};
  auto A = tangency_matrix(d);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool hit = (i == 0 && j == 1) || (i == 1 && j == 0);
      EXPECT_EQ(A(i, j).is_zero(), !hit);
    }
  SplitMix64 rng(2);
  auto r = random_decomposition(F, rng);
  auto B = tangency_matrix(r);
  EXPECT_TRUE(B.is_symmetric());
  const int deg[4][4] = {{-1, 1, 1, 2}, {1, 1, 1, 2}, {1, 1, 1, 2}, {2, 2, 2, 3}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!B(i, j).is_zero()) {
        EXPECT_EQ(B(i, j).total_degree(), deg[i][j]);
      }
}

TEST(TangencyMatrix, DeterminantIsMinusBorderedAdjugate) {
  // det(A) = -v^t adj(M) v with v = (l0, l1, q), over F5, F7 and Q.
  SplitMix64 rng(99);
  RationalField Q;
  int checked = 0;
  auto run = [&](const auto& d) {
    using Ring = std::decay_t<decltype(d.l0.ring())>;
    const auto M = conic_matrix(d);
    const auto adj = adjugate(M);
    const std::vector<MPoly<Ring>> v{d.l0, d.l1, d.q};
    MPoly<Ring> quad(d.l0.ring(), 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) quad += v[i] * adj(i, j) * v[j];
    EXPECT_EQ(det(tangency_matrix(d)), -quad);
    EXPECT_TRUE(bordered_det_identity_check(M, v));
    ++checked;
  };
  for (int trial = 0; trial < 80; ++trial) {
    run(random_decomposition(FiniteField(5), rng));
    run(random_decomposition(FiniteField(7), rng));
    if (trial < 40) run(random_decomposition(Q, rng));
  }
  EXPECT_EQ(checked, 200);
}

TEST(BranchSextic, DegreesAndDegenerate) {
  SplitMix64 rng(12);
  FiniteField F(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto d = random_decomposition(F, rng);
    auto m = branch_sextic(d);
    EXPECT_TRUE(m.g6.is_homogeneous());
    EXPECT_EQ(m.g6.total_degree(), 6);
    if (!m.image_cubic->is_zero()) {
      EXPECT_EQ(m.image_cubic->total_degree(), 3);
    }
    if (!m.conic_discriminant->is_zero()) {
      EXPECT_EQ(m.conic_discriminant->total_degree(), 5);
    }
  }
  // With l0 = l1 = 0 alone det(A) = -q^2 (4 l00 l11 - l01^2); the first
  // row and column vanish once q does too.
  auto d = random_decomposition(F, rng);
  d.l0 = d.l1 = PF(F, 3);
  EXPECT_NO_THROW(branch_sextic(d));
  d.q = PF(F, 3);
  EXPECT_EQ(code_of([&] { branch_sextic(d); }), Errc::ZeroSextic);
}

TEST(ImageCubic, Example) {
  RationalField Q;
  auto p = [&](const char* s) { return parse_mpoly(Q, s, 3); };
  LineDecomposition<RationalField> d{p("u"), p("v"), p("w"), PQ(Q, 3), p("w"), p("w^2"), PQ(Q, 3), PQ(Q, 3), PQ(Q, 3)};
  EXPECT_EQ(image_cubic(d), p("w*(u^2 + v^2)"));
}

TEST(ImageCubic, NodeAtCommonZeroOfL0L1) {
  SplitMix64 rng(31);
  FiniteField F(11);
  int seen = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_decomposition(F, rng);
    // Common zero of two linear forms: cross product of coefficient vectors.
    std::array<std::uint64_t, 3> a{}, b{};
    for (int i = 0; i < 3; ++i) {
      a[i] = d.l0.coefficient(Monomial::var(i));
      b[i] = d.l1.coefficient(Monomial::var(i));
    }
    std::vector<std::uint64_t> x{F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
                                 F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
                                 F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
    if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
    if (d.q.evaluate(x) == 0) continue;
    const auto g3 = image_cubic(d), g6 = branch_sextic(d).g6;
    EXPECT_EQ(g3.evaluate(x), 0u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(g3.partial_derivative(i).evaluate(x), 0u);
    // There g6 = -q^2 (4 l00 l11 - l01^2): off D unless the binary quadric degenerates.
    const auto qx = d.q.evaluate(x), l01 = d.l01.evaluate(x);
    const auto disc = F.sub(F.mul(4, F.mul(d.l00.evaluate(x), d.l11.evaluate(x))), F.mul(l01, l01));
    EXPECT_EQ(g6.evaluate(x), F.neg(F.mul(F.mul(qx, qx), disc)));
    if (disc != 0) ++seen;
  }
  EXPECT_GT(seen, 5);
}

TEST(ConicDiscriminant, Examples) {
  IntegerRing Z;
  auto p = [&](const char* s) { return parse_mpoly(Z, s, 3); };
  PZ zero(Z, 3);
  LineDecomposition<IntegerRing> d{p("u"), p("v"), p("u+w"), zero, p("v-w"), p("w^2"), zero, zero, p("u^3+v*w^2")};
  EXPECT_EQ(conic_discriminant(d), p("8*(u+w)*(v-w)*(u^3+v*w^2)"));
  d.c = zero;
  EXPECT_TRUE(conic_discriminant(d).is_zero());
  FiniteField F(reference::kPrime);
  auto rat = reference::deg6_pair_rational();
  auto dr = decompose_containing_line(Degree6Pair<FiniteField>::from(reduce_mod(rat[0], F), reduce_mod(rat[1], F)));
  auto g5 = conic_discriminant(dr);
  EXPECT_EQ(g5.total_degree(), 5);
  EXPECT_TRUE(g5.is_homogeneous());
}

// --- fibres ---------------------------------------------------------------------

TEST(Fiber, CoverLawAndImageCubic) {
  SplitMix64 rng(5);
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
    FiniteField F(p);
    for (int trial = 0; trial < 3; ++trial) {
      auto d = random_decomposition(F, rng);
      const auto g6 = det(tangency_matrix(d));
      const auto g3 = image_cubic(d);
      std::size_t flat = 0;
      for (const auto& a : plane_points(F)) {
        const auto rep = fiber_at(d, a);
        if (!rep.flat()) continue;
        ++flat;
        std::vector<std::uint64_t> x(a.begin(), a.end());
        EXPECT_EQ(static_cast<int>(rep.points.size()), 1 + F.character(g6.evaluate(x)));
        for (const auto& y : rep.points) {
          // The point lies on both the fibral line and the conic.
          std::vector<std::uint64_t> full{F.mul(a[0], y[2]), F.mul(a[1], y[2]), F.mul(a[2], y[2]), y[0], y[1]};
          const auto pair = d.reassemble();
          EXPECT_EQ(pair.f2.evaluate(full), 0u);
          EXPECT_EQ(pair.f3.evaluate(full), 0u);
          if (y[2] == 0) {
            EXPECT_EQ(g3.evaluate(x), 0u);
          }
        }
      }
      EXPECT_GT(flat, 0u);
    }
  }
}

TEST(Fiber, ExplicitKinds) {
  FiniteField F(7);
  auto p = [&](const char* s) { return parse_mpoly(F, s, 3); };
  PF zero(F, 3);
  // Fields: l0, l1, l00, l01, l11, q, q0, q1, c.
  LineDecomposition<FiniteField> nl{p("v"), p("w"), p("u"), zero, p("u"), p("v*w"), zero, zero, p("u^3")};
  EXPECT_EQ(fiber_at(nl, {1, 0, 0}).kind, FiberKind::NonFlatLineFiber);
  // Common zero of l0, l1 with q != 0: the fibre line is z = 0 and the conic
  // restricts to y0^2 + y1^2, which has no roots over F_7.
  LineDecomposition<FiniteField> e{p("u"), p("v"), p("w"), zero, p("w"), p("w^2"), zero, zero, p("-w^3")};
  const auto r = fiber_at(e, {0, 0, 1});
  EXPECT_EQ(r.kind, FiberKind::Inert);
  EXPECT_TRUE(r.points.empty());
  const std::vector<std::uint64_t> x{0, 0, 1};
  EXPECT_EQ(F.character(det(tangency_matrix(e)).evaluate(x)), -1);
  LineDecomposition<FiniteField> nf{p("u"), p("v"), zero, zero, zero, p("w^2"), zero, zero, zero};
  EXPECT_EQ(fiber_at(nf, {1, 0, 0}).kind, FiberKind::NonFlatConicFiber);
  // Line y1 = 0 inside the conic y1 (y0 + z).
  LineDecomposition<FiniteField> cl{zero, p("u"), zero, p("u"), zero, zero, zero, p("u^2"), zero};
  EXPECT_EQ(fiber_at(cl, {1, 0, 0}).kind, FiberKind::ContainedLine);
  // Ramified: line y1 = 0, conic y0^2 restricted is a double root.
  LineDecomposition<FiniteField> ram{zero, p("u"), p("u"), zero, zero, zero, zero, zero, zero};
  const auto rr = fiber_at(ram, {1, 0, 0});
  EXPECT_EQ(rr.kind, FiberKind::OneRamified);
  ASSERT_EQ(rr.points.size(), 1u);
  EXPECT_EQ(rr.points[0][0], 0u);
  EXPECT_EQ(rr.points[0][1], 0u);
}

// --- tangency -------------------------------------------------------------------

TEST(Tangency, CommonComponent) {
  FiniteField F(7);
  auto c = parse_mpoly(F, "u^3 + v^3 + w^3", 3);
  EXPECT_EQ(code_of([&] { tangency_profile(c * c, c); }), Errc::CommonComponent);
}

TEST(Tangency, ReferenceDegreeSixNineTangencies) {
  FiniteField F(reference::kPrime);
  auto rat = reference::deg6_pair_rational();
  auto d = decompose_containing_line(Degree6Pair<FiniteField>::from(reduce_mod(rat[0], F), reduce_mod(rat[1], F)));
  auto rep = tangency_profile(reference::deg6_branch_sextic(), image_cubic(d));
  EXPECT_TRUE(rep.nine_tangencies()) << ::testing::PrintToString(rep.profile);
}

TEST(Tangency, TransverseRandomPair) {
  // A random sextic meets a random cubic transversally in 18 points.
  SplitMix64 rng(17);
  FiniteField F(5);
  auto g6 = random_form(F, 3, 6, rng), g3 = random_form(F, 3, 3, rng);
  auto rep = tangency_profile(g6, g3);
  ASSERT_EQ(rep.profile.size(), 18u);
  EXPECT_EQ(rep.profile, std::vector<unsigned>(18, 1));
}

TEST(Tangency, ProfileMatchesPointCountForSplitCase) {
  // Sextic = cubic * other + (square of a linear-form product): the cubic
  // meets D exactly where it meets the square, each with even multiplicity.
  FiniteField F(11);
  auto p = [&](const char* s) { return parse_mpoly(F, s, 3); };
  auto g3 = p("u^3 + v^3 + w^3 + 3*u*v*w");
  auto h = p("u*v*w + u^3 - 2*v^3 + 5*w^3");
  auto g6 = g3 * p("u^3 - w^3 + 4*v^2*w") + h * h;
  auto rep = tangency_profile(g6, g3);
  std::size_t total = 0;
  for (auto m : rep.profile) {
    EXPECT_EQ(m % 2, 0u);
    total += m;
  }
  EXPECT_EQ(total, 18u);
}

// --- smoothness -----------------------------------------------------------------

TEST(Smoothness, Examples) {
  FiniteField F5(5), F7(7);
  EXPECT_TRUE(smoothness_check(std::vector<PF>{parse_mpoly(F5, "u^6 + v^6 + w^6", 3)}, 2));
  EXPECT_FALSE(smoothness_check(std::vector<PF>{parse_mpoly(F7, "u^5*v", 3)}, 2));
}

TEST(Smoothness, ReferenceNetCompleteIntersection) {
  EXPECT_TRUE(smoothness_check(reference::deg8_net_f47(), 5));
  auto d = disc_sextic(QuadricNet<FiniteField>::from(reference::deg8_net_f47())).g6;
  EXPECT_TRUE(smoothness_check(std::vector<PF>{d}, 2));
}

TEST(Smoothness, ReferencePairCompleteIntersection) {
  FiniteField F(reference::kPrime);
  auto rat = reference::deg6_pair_rational();
  EXPECT_TRUE(smoothness_check(std::vector<PF>{reduce_mod(rat[0], F), reduce_mod(rat[1], F)}, 4));
}

TEST(Smoothness, AgreesWithSingularPointSearch) {
  // Any singular point found over F_9 forces false.
  SplitMix64 rng(44);
  FiniteField F(3), F9(3, 2);
  int singular = 0, smooth = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_form(F, 3, 3, rng);
    if (g.is_zero()) continue;
    std::vector<PF> eqs{embed(g, F9)};
    for (int i = 0; i < 3; ++i) eqs.push_back(embed(g.partial_derivative(i), F9));
    bool found = false;
    for (const auto& pt : enumerate_projective(F9.field(), 2)) {
      std::vector<std::uint64_t> x(pt.begin(), pt.end());
      if (std::all_of(eqs.begin(), eqs.end(), [&](const PF& e) { return e.evaluate(x) == 0; })) {
        found = true;
        break;
      }
    }
    const bool sm = smoothness_check(std::vector<PF>{g}, 2);
    if (found) {
      EXPECT_FALSE(sm);
    }
    (sm ? smooth : singular)++;
  }
  EXPECT_GT(singular, 0);
  EXPECT_GT(smooth, 0);
}

// --- tritangents ----------------------------------------------------------------

TEST(Tritangent, PerfectSquareSextic) {
  IntegerRing Z;
  auto g = parse_mpoly(Z, "(u*v*w)^2", 3);
  EXPECT_TRUE(rational_line_is_split(g, {1, 1, 1}));
  auto rep = tritangent_free_report(g);
  EXPECT_FALSE(rep.tritangent_free);
  EXPECT_EQ(rep.method, ClosureMethod::RationalWitness);
  // Mod p some chart ideal has a solution.
  FiniteField F(7);
  EXPECT_FALSE(tritangent_free_over_closure(reduce_mod(g, F)));
}

TEST(Tritangent, ReferenceSextic) {
  // The known tritangent u + 32 v + 17 w lies in dual chart 0 with (a,b) = (32,17).
  auto g = reference::deg8_branch_sextic();
  const FiniteField& F = g.ring();
  auto ideals = tritangent_scheme_ideals(g);
  ASSERT_EQ(ideals.size(), 12u);
  auto r = restrict_to_line(g, reference::kDeg8Tritangent);
  EXPECT_EQ(squarefree_profile(r), (std::vector<unsigned>{2, 2, 2}));
  // g|L = c h^2 with h monic in s at t = 1: read off c and h from the profile.
  bool solvable = false;
  for (int lead = 0; lead < 4 && !solvable; ++lead) solvable = !contains_one(ideals[lead]);
  EXPECT_TRUE(solvable);
  for (std::size_t k = 4; k < ideals.size(); ++k) EXPECT_EQ(ideals[k].nvars, 7);
  EXPECT_EQ(F.characteristic(), reference::kPrime);
}

TEST(Tritangent, ReferenceRationalNetIsTritangentFree) {
  auto g6 = disc_sextic(QuadricNet<IntegerRing>::from(reference::deg8_net_rational())).g6;
  auto rep = tritangent_free_report(g6);
  EXPECT_TRUE(rep.tritangent_free);
  EXPECT_EQ(rep.method, ClosureMethod::Specialization);
  EXPECT_NE(rep.prime, reference::kPrime);
}

TEST(Tritangent, PlantedTangentConicWithoutTritangent) {
  // g6 = C * f4 + h3^2: the conic C meets D in six tangencies, which does not
  // produce a split line. Singular mod 5, smooth mod 7.
  FiniteField F(7);
  auto p = [&](const char* s) { return parse_mpoly(F, s, 3); };
  auto g = p("(u^2 + v^2 + 2*w^2) * (u^4 + u*v^3 + 3*v*w^3 + w^4 + u^2*v*w) + (u^3 + v^3 - w^3 + u*v*w)^2");
  ASSERT_TRUE(smoothness_check(std::vector<PF>{g}, 2));
  EXPECT_TRUE(tritangent_free_over_closure(g));
}
