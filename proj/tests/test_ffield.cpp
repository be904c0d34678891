#include "k3pic/ffield.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace k3pic;

namespace {

// Brute-force irreducibility for tiny degrees: no root, and for degree 4 no
// monic quadratic factor.
bool has_root(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

}  // namespace

TEST(Field, PrimeField) {
  Field f = make_field(5, 1);
  EXPECT_EQ(f->p(), 5u);
  EXPECT_EQ(f->degree(), 1u);
  EXPECT_EQ(f->order64(), 5u);
}

TEST(Field, SmallestQuadraticOverF3) {
  // Oracle: all 9 monic quadratics c0 + c1 x + x^2, ordered by (c0, c1),
  // first one without a root in F_3.
  std::vector<std::uint32_t> expect;
  for (std::uint32_t c0 = 0; c0 < 3 && expect.empty(); ++c0)
    for (std::uint32_t c1 = 0; c1 < 3 && expect.empty(); ++c1)
      if (!has_root({c0, c1, 1}, 3)) expect = {c0, c1, 1};
  Field f = make_field(3, 2);
  EXPECT_EQ(f->modulus(), expect);
  EXPECT_EQ(f->order64(), 9u);
  EXPECT_EQ(make_field(3, 2)->modulus(), f->modulus());
}

TEST(Field, Rejections) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  EXPECT_EQ(code([] { make_field(4, 1); }), Errc::NotPrime);
  EXPECT_EQ(code([] { make_field(2, 1); }), Errc::EvenCharacteristic);
  EXPECT_EQ(code([] { make_field(5, 0); }), Errc::DegreeOutOfRange);
  EXPECT_EQ(code([] { make_field(5, 25); }), Errc::DegreeOutOfRange);
}

TEST(Field, QuadraticCharacterExamples) {
  Field f5 = make_field(5), f3 = make_field(3);
  EXPECT_EQ(quadratic_character(FqElem::from_int(f5, 0)), 0);
  EXPECT_EQ(quadratic_character(FqElem::from_int(f5, 4)), 1);
  EXPECT_EQ(quadratic_character(FqElem::from_int(f3, 2)), -1);
}

class CharacterSweep : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

TEST_P(CharacterSweep, MultiplicativeAndBalanced) {
  auto [p, n] = GetParam();
  FiniteField F(p, n);
  const std::uint64_t q = F.size();
  // Squares by enumeration.
  std::set<std::uint64_t> squares;
  for (std::uint64_t a = 1; a < q; ++a) squares.insert(F.mul(a, a));
  long sum = 0;
  for (std::uint64_t a = 0; a < q; ++a) {
    const int chi = F.character(a);
    sum += chi;
    EXPECT_EQ(chi, a == 0 ? 0 : (squares.count(a) ? 1 : -1));
    EXPECT_EQ(chi, quadratic_character(F.to_elem(a)));
  }
  EXPECT_EQ(sum, 0);
  for (std::uint64_t a = 0; a < q; a += 1 + q / 40)
    for (std::uint64_t b = 0; b < q; ++b) EXPECT_EQ(F.character(F.mul(a, b)), F.character(a) * F.character(b));
}

INSTANTIATE_TEST_SUITE_P(SmallFields, CharacterSweep,
                         ::testing::Values(std::pair{3u, 1u}, std::pair{3u, 2u}, std::pair{3u, 3u}, std::pair{3u, 4u},
                                           std::pair{3u, 5u}, std::pair{5u, 2u}, std::pair{7u, 2u}, std::pair{5u, 3u}));

TEST(Field, TableAndGenericPathsAgree) {
  // Same field, arithmetic via FqElem (vector path) vs FiniteField codes.
  FiniteField F(7, 3);
  Field f = F.field();
  for (std::uint64_t a = 0; a < F.size(); a += 3)
    for (std::uint64_t b = 0; b < F.size(); b += 7) {
      FqElem x = FqElem::from_code(f, a), y = FqElem::from_code(f, b);
      EXPECT_EQ(F.add(a, b), (x + y).code());
      EXPECT_EQ(F.sub(a, b), (x - y).code());
      EXPECT_EQ(F.mul(a, b), (x * y).code());
      if (b) EXPECT_EQ(F.mul(F.div(a, b), b), a);
    }
}

TEST(Field, FrobeniusExamples) {
  Field f5 = make_field(5);
  EXPECT_EQ(frobenius(FqElem::from_int(f5, 3)), FqElem::from_int(f5, 3));
  Field f9 = make_field(3, 2);
  FiniteField F(f9);
  // A generator of F_9^*: element of multiplicative order 8.
  std::uint64_t g = 0;
  for (std::uint64_t a = 1; a < 9 && !g; ++a) {
    unsigned ord = 1;
    for (std::uint64_t x = a; x != 1; x = F.mul(x, a)) ++ord;
    if (ord == 8) g = a;
  }
  ASSERT_NE(g, 0u);
  FqElem ge = F.to_elem(g);
  FqElem g3 = frobenius(ge);
  EXPECT_EQ(g3, ge * ge * ge);
  EXPECT_EQ(frobenius(g3), ge);
  EXPECT_TRUE(frobenius(FqElem::from_int(f9, 0)).is_zero());
}

TEST(Field, FrobeniusIsFieldAutomorphismWithPrimeFixedField) {
  for (auto [p, n] : {std::pair{3u, 2u}, std::pair{3u, 3u}, std::pair{3u, 4u}, std::pair{5u, 2u}}) {
    FiniteField F(p, n);
    const std::uint64_t q = F.size();
    std::set<std::uint64_t> image;
    unsigned fixed = 0;
    for (std::uint64_t a = 0; a < q; ++a) {
      const auto fa = F.frobenius(a);
      image.insert(fa);
      if (fa == a) ++fixed;
      std::uint64_t it = a;
      for (unsigned k = 0; k < n; ++k) it = F.frobenius(it);
      EXPECT_EQ(it, a);
      for (std::uint64_t b = 0; b < q; b += 1 + q / 17) {
        EXPECT_EQ(F.frobenius(F.add(a, b)), F.add(fa, F.frobenius(b)));
        EXPECT_EQ(F.frobenius(F.mul(a, b)), F.mul(fa, F.frobenius(b)));
      }
    }
    EXPECT_EQ(image.size(), q);
    EXPECT_EQ(fixed, p);
  }
}

TEST(Field, SquareRoots) {
  for (auto [p, n] : {std::pair{7u, 1u}, std::pair{5u, 2u}, std::pair{13u, 1u}}) {
    FiniteField F(p, n);
    for (std::uint64_t a = 0; a < F.size(); ++a) {
      auto r = F.sqrt(a);
      EXPECT_EQ(r.has_value(), F.character(a) >= 0);
      if (r) EXPECT_EQ(F.mul(*r, *r), a);
    }
  }
  // Off the table path.
  FiniteField big(1000003, 1);
  for (std::uint64_t a : {2ull, 3ull, 12345ull, 999999ull}) {
    auto r = big.sqrt(a);
    if (r) EXPECT_EQ(big.mul(*r, *r), a);
    else EXPECT_EQ(big.character(a), -1);
  }
}

TEST(Projective, Counts) {
  auto count = [](const Field& f, unsigned k) {
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& pt : enumerate_projective(f, k)) {
      std::size_t lead = 0;
      while (pt[lead] == 0) ++lead;
      EXPECT_EQ(pt[lead], 1u);
      seen.insert(std::vector<std::uint64_t>(pt.begin(), pt.end()));
    }
    return seen.size();
  };
  EXPECT_EQ(count(make_field(3), 1), 4u);
  EXPECT_EQ(count(make_field(3), 2), 13u);
  EXPECT_EQ(count(make_field(5, 2), 2), 651u);
  EXPECT_EQ(count(make_field(5), 4), 781u);
}

TEST(Projective, Budget) {
  try {
    enumerate_projective(make_field(47), 4, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExceeded);
  }
}
