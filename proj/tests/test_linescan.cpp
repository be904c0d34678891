#include "k3pic/geommodels.hpp"
#include "k3pic/linescan.hpp"
#include "k3pic/reference_models.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace k3pic;
using k3pic::testing::random_decomposition;
using k3pic::testing::random_form;
using namespace k3pic::oracle;

namespace {

using PF = MPoly<FiniteField>;

std::set<std::array<std::uint64_t, 3>> as_set(const std::vector<TritangentHit>& hits) {
  std::set<std::array<std::uint64_t, 3>> s;
  for (const auto& h : hits) s.insert(h.line.c);
  return s;
}

std::set<LineInPn> as_set(const std::vector<LineHit>& hits) {
  std::set<LineInPn> s;
  for (const auto& h : hits) s.insert(h.line);
  return s;
}

// ---------------------------------------------------------------------------

TEST(SplitTritangent, Examples) {
  FiniteField F(5);
  EXPECT_TRUE(is_split_tritangent(parse_mpoly(F, "(u*v*w)^2", 3), LineInP2::normalized(F, {1, 1, 1})));
  const auto odd = tritangent_check(parse_mpoly(F, "u^5*v", 3), LineInP2::normalized(F, {0, 0, 1}));
  EXPECT_FALSE(odd.split);
  EXPECT_EQ(odd.profile, (std::vector<unsigned>{1, 5}));
  const auto contained = tritangent_check(parse_mpoly(F, "w*(u^5 + v^5)", 3), LineInP2::normalized(F, {0, 0, 2}));
  EXPECT_FALSE(contained.split);
  EXPECT_TRUE(contained.contained_in_branch);
}

TEST(SplitTritangent, ReferenceDegreeEightLine) {
  FiniteField F(reference::kPrime);
  const auto L = LineInP2::normalized(F, reference::kDeg8Tritangent);
  EXPECT_TRUE(is_split_tritangent(reference::deg8_branch_sextic(), L));
  EXPECT_TRUE(oracle_split(F, reference::deg8_branch_sextic(), L.c));
}

TEST(TritangentScan, ReferenceDegreeEightFindsLine) {
  FiniteField F(reference::kPrime);
  const auto t0 = std::chrono::steady_clock::now();
  const auto hits = tritangent_scan(reference::deg8_branch_sextic(), {1, std::uint64_t{1} << 36, 0, false});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 30.0);
  EXPECT_TRUE(as_set(hits).count(LineInP2::normalized(F, reference::kDeg8Tritangent).c));
  for (const auto& h : hits) EXPECT_TRUE(oracle_split(F, reference::deg8_branch_sextic(), h.line.c));
}

TEST(TritangentScan, FermatOverF5MatchesOracle) {
  FiniteField F(5);
  const PF g = parse_mpoly(F, "u^6 + v^6 + w^6", 3);
  EXPECT_EQ(as_set(tritangent_scan(g, {1, std::uint64_t{1} << 36, 0, false})), oracle_tritangents(g, 1));
}

TEST(TritangentScan, RandomSexticsMatchOracleUpToDegreeTwo) {
  SplitMix64 rng(81);
  FiniteField F(5);
  for (int trial = 0; trial < 3; ++trial) {
    const PF g = random_form(F, 3, 6, rng);
    if (g.is_zero()) continue;
    const auto hits = tritangent_scan(g, {2, std::uint64_t{1} << 36, 0, false});
    std::set<std::array<std::uint64_t, 3>> e1, e2;
    for (const auto& h : hits) (h.ext == 1 ? e1 : e2).insert(h.line.c);
    EXPECT_EQ(e1, oracle_tritangents(g, 1));
    EXPECT_EQ(e2, oracle_tritangents(g, 2));
  }
}

TEST(TritangentScan, PlantedConfigurationsAgree) {
  // g = h^2 + l k restricts to h^2 on V(l).
  SplitMix64 rng(82);
  FiniteField F(7);
  for (int trial = 0; trial < 3; ++trial) {
    const PF h = random_form(F, 3, 3, rng), k = random_form(F, 3, 5, rng);
    const PF l = parse_mpoly(F, "u + 2*v + 3*w", 3);
    const PF g = h * h + l * k;
    if (g.is_zero() || h.is_zero()) continue;
    const auto hits = tritangent_scan(g, {1, std::uint64_t{1} << 36, 0, false});
    EXPECT_TRUE(as_set(hits).count(LineInP2::normalized(F, {1, 2, 3}).c));
    EXPECT_EQ(as_set(hits), oracle_tritangents(g, 1));
  }
}

TEST(TritangentScan, StopAtFirstAndBudget) {
  FiniteField F(reference::kPrime);
  const auto all = tritangent_scan(reference::deg8_branch_sextic(), {1, std::uint64_t{1} << 36, 0, false});
  const auto first = tritangent_scan(reference::deg8_branch_sextic(), {1, std::uint64_t{1} << 36, 0, true});
  ASSERT_EQ(first.size(), 1u);
  EXPECT_EQ(first[0].line, all[0].line);
  try {
    tritangent_scan(reference::deg8_branch_sextic(), {2, 10000, 0, false});
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExceeded);
  }
  EXPECT_FALSE(scan_report(F, all).empty());
}

TEST(LinesScan, QuadricSurfaceRulings) {
  FiniteField F(3);
  const std::vector<PF> fs{parse_mpoly(F, "x0*x3 - x1*x2", Alphabet::projective(3), 4)};
  const auto hits = lines_on_surface_scan(fs, 3, {1, std::uint64_t{1} << 36, 0, false});
  // Two rulings, each a P^1 of lines: 2 (q + 1).
  EXPECT_EQ(hits.size(), 8u);
  EXPECT_EQ(as_set(hits), oracle_lines(fs, 3));
  for (const auto& h : hits) EXPECT_TRUE(line_lies_on(fs, h.line));
}

TEST(LinesScan, QuadricSurfaceOverF9) {
  // Both rulings over F_9 minus those over F_3: 2 (9 + 1) - 8.
  FiniteField F(3);
  const std::vector<PF> fs{parse_mpoly(F, "x0*x3 - x1*x2", Alphabet::projective(3), 4)};
  const auto hits = lines_on_surface_scan(fs, 3, {2, std::uint64_t{1} << 36, 0, false});
  std::size_t e2 = 0;
  for (const auto& h : hits) e2 += h.ext == 2;
  EXPECT_EQ(e2, 12u);
}

TEST(LinesScan, ReferencePairContainsStandardLine) {
  FiniteField F(reference::kPrime);
  const auto rat = reference::deg6_pair_rational();
  const std::vector<PF> fs{reduce_mod(rat[0], F), reduce_mod(rat[1], F)};
  const auto hits = lines_on_surface_scan(fs, 4, {1, std::uint64_t{1} << 36, 0, false});
  LineInPn std_line = LineInPn::through(F, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1});
  EXPECT_TRUE(as_set(hits).count(std_line));
  for (const auto& h : hits) EXPECT_TRUE(line_lies_on(fs, h.line));
}

TEST(LinesScan, ThirtyInstancesAgreeWithEnumerationAndGroebner) {
  SplitMix64 rng(83);
  FiniteField F(5);
  int with_hits = 0;
  const auto piv = line_chart_pivots(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<PF> fs;
    if (trial % 2 == 0) {
      // Planted line moved by a random coordinate change.
      const auto pair = random_decomposition(F, rng).reassemble();
      std::vector<std::vector<std::uint64_t>> M;
      const auto img = random_change(F, 5, rng, M);
      fs = {pair.f2.substitute(img), pair.f3.substitute(img)};
    } else {
      fs = {random_form(F, 5, 2, rng), random_form(F, 5, 3, rng)};
    }
    const auto hits = lines_on_surface_scan(fs, 4, {1, std::uint64_t{1} << 36, 0, false});
    EXPECT_EQ(as_set(hits), oracle_lines(fs, 4)) << "trial " << trial;
    if (trial % 2 == 0) {
      EXPECT_FALSE(hits.empty());
    }
    if (hits.empty()) continue;
    ++with_hits;
    // The chart containing a found line is solvable.
    const auto cells = schubert_line_ideals(fs, 4);
    const auto& L = hits.front().line;
    std::size_t c = 0;
    while (piv[c] != std::make_pair(L.pivots[0], L.pivots[1])) ++c;
    EXPECT_FALSE(contains_one(cells[c])) << "trial " << trial;
  }
  EXPECT_GE(with_hits, 15);
}

TEST(LinesScan, TransportUnderCoordinateChange) {
  SplitMix64 rng(84);
  FiniteField F(5);
  const auto pair = random_decomposition(F, rng).reassemble();
  const std::vector<PF> fs{pair.f2, pair.f3};
  std::vector<std::vector<std::uint64_t>> M;
  const auto img = random_change(F, 5, rng, M);
  const std::vector<PF> gs{fs[0].substitute(img), fs[1].substitute(img)};
  const auto a = lines_on_surface_scan(fs, 4, {1, std::uint64_t{1} << 36, 0, false});
  const auto b = lines_on_surface_scan(gs, 4, {1, std::uint64_t{1} << 36, 0, false});
  ASSERT_EQ(a.size(), b.size());
  // A line y on V(g) maps to M y on V(f).
  std::set<LineInPn> moved;
  for (const auto& h : b) {
    std::array<std::vector<std::uint64_t>, 2> r;
    for (int k = 0; k < 2; ++k) {
      r[k].assign(5, 0);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) r[k][i] = F.add(r[k][i], F.mul(M[i][j], h.line.rows[k][j]));
    }
    moved.insert(LineInPn::through(F, r[0], r[1]));
  }
  EXPECT_EQ(moved, as_set(a));
}

TEST(LinesScan, StandardChangeMovesLineToStandardPosition) {
  SplitMix64 rng(85);
  FiniteField F(7);
  const auto pair = random_decomposition(F, rng).reassemble();
  std::vector<std::vector<std::uint64_t>> M;
  const auto img = random_change(F, 5, rng, M);
  const std::vector<PF> gs{pair.f2.substitute(img), pair.f3.substitute(img)};
  const auto hits = lines_on_surface_scan(gs, 4, {1, std::uint64_t{1} << 36, 0, true});
  ASSERT_FALSE(hits.empty());
  const auto change = line_to_standard_change(F, hits[0].line);
  const auto moved = Degree6Pair<FiniteField>::from(gs[0].substitute(change), gs[1].substitute(change));
  EXPECT_NO_THROW(decompose_containing_line(moved));
}

TEST(LinesScan, Errors) {
  FiniteField F(5);
  EXPECT_THROW(lines_on_surface_scan({parse_mpoly(F, "x0", 3)}, 2), Error);
  EXPECT_THROW(lines_on_surface_scan({parse_mpoly(F, "x0", 3)}, 4), Error);
  EXPECT_THROW(LineInPn::through(F, {1, 0, 0, 0}, {2, 0, 0, 0}), Error);
}

}  // namespace
