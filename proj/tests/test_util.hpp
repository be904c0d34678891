#pragma once

// Random forms and decompositions shared by the test binaries.

#include "k3pic/geommodels.hpp"

#include <functional>
#include <ostream>

namespace k3pic {

template <class Ring>
void PrintTo(const MPoly<Ring>& f, std::ostream* os) {
  *os << f.to_string(Alphabet::for_nvars(f.nvars()));
}

}  // namespace k3pic

namespace k3pic::testing {

template <class Ring, class Gen>
MPoly<Ring> random_form(const Ring& R, int nvars, int degree, Gen&& coeff) {
  std::vector<typename MPoly<Ring>::Term> terms;
  Monomial m;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nvars - 1) {
      m.e[i] = static_cast<std::uint16_t>(left);
      m.deg = static_cast<std::uint16_t>(degree);
      terms.push_back({m, coeff()});
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m.e[i] = static_cast<std::uint16_t>(e);
      rec(i + 1, left - e);
    }
    m.e[i] = 0;
  };
  rec(0, degree);
  return MPoly<Ring>::from_terms(R, nvars, std::move(terms));
}

inline MPoly<FiniteField> random_form(const FiniteField& F, int nvars, int degree, SplitMix64& rng) {
  return random_form(F, nvars, degree, [&] { return rng.below(F.size()); });
}

inline MPoly<IntegerRing> random_form(const IntegerRing& Z, int nvars, int degree, SplitMix64& rng, long bound = 3) {
  return random_form(Z, nvars, degree, [&] { return Integer(rng.range(-bound, bound)); });
}

inline MPoly<RationalField> random_form(const RationalField& Q, int nvars, int degree, SplitMix64& rng, long bound = 3) {
  return random_form(Q, nvars, degree, [&] {
    Rational r(rng.range(-bound, bound), rng.range(1, 3));
    r.canonicalize();
    return r;
  });
}

template <class Ring, class... Extra>
LineDecomposition<Ring> random_decomposition(const Ring& R, SplitMix64& rng, Extra... extra) {
  auto f = [&](int d) { return random_form(R, 3, d, rng, extra...); };
  return {f(1), f(1), f(1), f(1), f(1), f(2), f(2), f(2), f(3)};
}

}  // namespace k3pic::testing
