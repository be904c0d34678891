#pragma once

// Reference instances at p = 47: a degree-8 net and a degree-6 pair with
// their branch sextics and externally computed Weil polynomials. These are
// trusted inputs; nothing here is recomputed.

#include "k3pic/mpoly.hpp"
#include "k3pic/univariate.hpp"

namespace k3pic::reference {

inline constexpr std::uint64_t kPrime = 47;

// Net of quadrics over F_47 whose discriminant double cover has rank 2.
inline constexpr const char* kDeg8NetF47Q1 =
    "5*x0^2 + 6*x0*x1 + 10*x0*x2 + 6*x0*x3 + 37*x0*x4 + 10*x0*x5 + x1^2 + 45*x1*x2 "
    "+ 45*x1*x3 + 39*x1*x4 + 10*x1*x5 + x2^2 + 45*x2*x3 + 39*x2*x4 + 45*x2*x5 + 2*x4^2 "
    "+ 8*x4*x5 + 2*x5^2";

inline constexpr const char* kDeg8NetF47Q2 =
    "43*x0^2 + 41*x0*x1 + 41*x0*x2 + 2*x0*x3 + 45*x0*x4 + 43*x0*x5 + 8*x1*x2 + 39*x1*x3 "
    "+ 2*x1*x4 + 6*x1*x5 + 44*x2^2 + 45*x2*x4 + 2*x2*x5 + 5*x3^2 + 10*x3*x4 + 2*x3*x5 "
    "+ 3*x4^2 + 10*x4*x5 + 3*x5^2";

inline constexpr const char* kDeg8NetF47Q3 =
    "5*x0^2 + 45*x0*x1 + 37*x0*x2 + 2*x0*x3 + 8*x0*x4 + 46*x1^2 + 2*x1*x2 + 8*x1*x3 "
    "+ 39*x1*x4 + 2*x1*x5 + 4*x2^2 + 6*x2*x3 + 43*x2*x4 + 43*x2*x5 + 42*x3^2 + 4*x3*x4 "
    "+ 43*x3*x5 + 39*x4*x5 + 44*x5^2";

// Its branch sextic (coordinates u, v, w), known up to a nonzero scalar.
inline constexpr const char* kDeg8BranchSexticF47 =
    "13*u^6 + 43*u^5*v + 43*u^5*w + 19*u^4*v^2 + 22*u^4*v*w + 26*u^4*w^2 + 7*u^3*v^3 "
    "+ u^3*v^2*w + 42*u^3*v*w^2 + 42*u^3*w^3 + 46*u^2*v^4 + 27*u^2*v^3*w "
    "+ 33*u^2*v^2*w^2 + 8*u^2*v*w^3 + 41*u^2*w^4 + 11*u*v^5 + 17*u*v^4*w + 46*u*v^3*w^2 "
    "+ 34*u*v^2*w^3 + 32*u*v*w^4 + 46*u*w^5 + 21*v^6 + 41*v^5*w + 19*v^4*w^2 "
    "+ 17*v^3*w^3 + 21*v^2*w^4 + 33*v*w^5 + 17*w^6";

// Weil polynomial cofactor: the full polynomial is (t - 47)^2 times this.
inline constexpr const char* kDeg8WeilCofactor =
    "t^20 - 15*t^19 - 2491*t^18 + 92778*t^17 + 2387929*t^16 - 34157767*t^15 "
    "- 6421660196*t^14 - 53896076645*t^13 + 27357648505002*t^12 + 95245146647044*t^11 "
    "- 49241740816521748*t^10 + 210396528943320196*t^9 + 133496597614536664362*t^8 "
    "- 580957415544742891205*t^7 - 152907991771376328965156*t^6 "
    "- 1796668903313671865340583*t^5 + 277457012068868469490452889*t^4 "
    "+ 23813049644519406903224087082*t^3 - 1412340634868996252284076212411*t^2 "
    "- 18786795237408346374722145844335*t + 2766668711962335809450748011342401";

// Integer lift of the net; reduces to the F_47 net above.
inline constexpr const char* kDeg8NetRationalQ1 =
    "-136*x0^2 - 464*x0*x1 - 272*x0*x2 + 288*x0*x3 - 292*x0*x4 - 84*x0*x5 - 140*x1^2 "
    "+ 374*x1*x2 + 186*x1*x3 - 196*x1*x4 + 386*x1*x5 + x2^2 + 468*x2*x3 + 274*x2*x4 "
    "+ 562*x2*x5 + 47*x3^2 - 188*x3*x4 - 282*x3*x5 + 237*x4^2 - 274*x4*x5 - 139*x5^2";

inline constexpr const char* kDeg8NetRationalQ2 =
    "43*x0^2 + 88*x0*x1 - 100*x0*x2 - 280*x0*x3 + 562*x0*x4 - 98*x0*x5 + 141*x1^2 "
    "+ 384*x1*x2 - 8*x1*x3 + 190*x1*x4 - 182*x1*x5 + 185*x2^2 - 376*x2*x3 + 562*x2*x4 "
    "- 468*x2*x5 - 89*x3^2 + 104*x3*x4 + 190*x3*x5 + 144*x4^2 - 84*x4*x5 - 44*x5^2";

inline constexpr const char* kDeg8NetRationalQ3 =
    "193*x0^2 - 2*x0*x1 - 292*x0*x2 + 2*x0*x3 + 8*x0*x4 + 470*x0*x5 + 234*x1^2 "
    "+ 190*x1*x2 - 180*x1*x3 + 274*x1*x4 - 280*x1*x5 + 51*x2^2 + 6*x2*x3 + 184*x2*x4 "
    "+ 560*x2*x5 + 183*x3^2 + 286*x3*x4 + 90*x3*x5 - 196*x4*x5 + 185*x5^2";

// Sextic K3 over Q whose reduction mod 47 contains V(x0, x1, x2).
inline constexpr const char* kDeg6PairF2 =
    "x0^2 - 3*x0*x1 + 5*x0*x2 - x0*x3 - 5*x0*x4 + 3*x1^2 + 4*x1*x2 - 2*x1*x3 + 5*x1*x4 "
    "+ 5*x2^2 - 3*x2*x3 + 47*x3^2 + 47*x4^2";

inline constexpr const char* kDeg6PairF3 =
    "2*x0^3 + 3*x0^2*x1 + 4*x0^2*x3 + 5*x0^2*x4 + 3*x0*x1^2 - x0*x1*x2 + x0*x1*x3 "
    "- 4*x0*x1*x4 + 4*x0*x2^2 + 4*x0*x2*x3 + x0*x2*x4 + 4*x0*x3*x4 - x0*x4^2 + x1^3 "
    "- 3*x1^2*x2 + 5*x1^2*x3 + 2*x1^2*x4 - 4*x1*x2^2 + 4*x1*x2*x3 + 4*x1*x2*x4 "
    "+ 4*x1*x3^2 - x1*x4^2 + 5*x2^3 - 3*x2^2*x3 - 2*x2^2*x4 - x2*x3^2 - 3*x2*x3*x4 "
    "+ 5*x2*x4^2";

// Branch sextic of the reduction mod 47 projected from V(x0, x1, x2).
inline constexpr const char* kDeg6BranchSexticF47 =
    "14*u^6 + 36*u^5*v + 7*u^5*w + 40*u^4*v^2 + 29*u^4*v*w + 29*u^4*w^2 + 2*u^3*v^3 "
    "+ 12*u^3*v^2*w + 15*u^3*v*w^2 + 40*u^3*w^3 + 38*u^2*v^4 + 29*u^2*v^3*w "
    "+ 12*u^2*v^2*w^2 + 31*u^2*v*w^3 + 35*u^2*w^4 + 40*u*v^5 + 2*u*v^4*w + 16*u*v^3*w^2 "
    "+ 38*u*v^2*w^3 + 10*u*v*w^4 + 2*u*w^5 + 26*v^6 + 28*v^5*w + 11*v^4*w^2 + 26*v^3*w^3 "
    "+ 18*v^2*w^4 + 43*v*w^5 + w^6";

// Weil polynomial cofactor for s^2 = g6, again times (t - 47)^2.
inline constexpr const char* kDeg6WeilCofactor =
    "t^20 + 35*t^19 + 1410*t^18 + 79524*t^17 - 311469*t^16 + 39037448*t^15 "
    "+ 5504280168*t^14 - 86233722632*t^13 - 1013246240926*t^12 - 666716026529308*t^11 "
    "- 78339133117193690*t^10 - 1472775702603241372*t^9 - 4944318430168024606*t^8 "
    "- 929531864871588625928*t^7 + 131063992946893996255848*t^6 "
    "+ 2053335889501339274674952*t^5 - 36190045052461104716146029*t^4 "
    "+ 20411185409588063059906360356*t^3 + 799438095208865803179665780610*t^2 "
    "+ 43835855553952808207685006970115*t + 2766668711962335809450748011342401";

// Tritangent of the degree-8 branch sextic: u + 32v + 17w = 0.
inline constexpr std::array<std::uint64_t, 3> kDeg8Tritangent{1, 32, 17};

inline std::vector<MPoly<FiniteField>> deg8_net_f47() {
  FiniteField F(kPrime);
  return {parse_mpoly(F, kDeg8NetF47Q1, 6), parse_mpoly(F, kDeg8NetF47Q2, 6), parse_mpoly(F, kDeg8NetF47Q3, 6)};
}

inline std::vector<MPoly<IntegerRing>> deg8_net_rational() {
  IntegerRing Z;
  return {parse_mpoly(Z, kDeg8NetRationalQ1, 6), parse_mpoly(Z, kDeg8NetRationalQ2, 6),
          parse_mpoly(Z, kDeg8NetRationalQ3, 6)};
}

inline MPoly<FiniteField> deg8_branch_sextic() { return parse_mpoly(FiniteField(kPrime), kDeg8BranchSexticF47, 3); }

inline std::vector<MPoly<IntegerRing>> deg6_pair_rational() {
  IntegerRing Z;
  return {parse_mpoly(Z, kDeg6PairF2, 5), parse_mpoly(Z, kDeg6PairF3, 5)};
}

inline MPoly<FiniteField> deg6_branch_sextic() { return parse_mpoly(FiniteField(kPrime), kDeg6BranchSexticF47, 3); }

/// Full degree-22 polynomial (t - 47)^2 * cofactor, coefficients ascending.
inline std::vector<Integer> weil_with_double_root(const char* cofactor) {
  IntegerRing Z;
  auto f = parse_mpoly(Z, cofactor, 1) * parse_mpoly(Z, "(t - 47)^2", 1);
  return to_dense(f);
}

inline std::vector<Integer> deg8_weil() { return weil_with_double_root(kDeg8WeilCofactor); }
inline std::vector<Integer> deg6_weil() { return weil_with_double_root(kDeg6WeilCofactor); }

}  // namespace k3pic::reference
