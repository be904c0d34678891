#pragma once

// Buchberger's algorithm (grevlex, Gebauer-Moeller pair criteria, sugar
// selection) over F_q and Q, plus the emptiness tests built on it: weak
// Nullstellensatz, projective charts, and the affine charts of the
// Grassmannian of lines used to decide whether a variety contains a line.

#include "k3pic/mpoly.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

namespace k3pic {

struct GroebnerOptions {
  unsigned max_degree = 40;
  std::size_t max_pairs = 200000;
};

template <class Ring>
struct IdealBasis {
  Ring ring{};
  int nvars = 0;
  std::vector<MPoly<Ring>> generators;

  IdealBasis() = default;
  IdealBasis(Ring r, int n, std::vector<MPoly<Ring>> g = {}) : ring(std::move(r)), nvars(n), generators(std::move(g)) {
    std::erase_if(generators, [](const MPoly<Ring>& p) { return p.is_zero(); });
  }
  bool is_unit() const { return generators.size() == 1 && generators[0].is_constant(); }
};

struct GroebnerStats {
  std::size_t pairs = 0;
  std::size_t reductions_to_zero = 0;
  unsigned max_degree_seen = 0;
};

namespace detail {

// Coefficient policy: fields make polynomials monic, the integers keep them
// primitive with positive leading coefficient.
template <class ER>
struct Normalizer;

template <>
struct Normalizer<FiniteField> {
  static MPoly<FiniteField> normalize(const MPoly<FiniteField>& f) {
    if (f.is_zero() || f.lc() == 1) return f;
    return f.scale(f.ring().inv(f.lc()));
  }
  // f <- f - c*m*g with c chosen to cancel the term (m*lm(g), a).
  static MPoly<FiniteField> eliminate(const MPoly<FiniteField>& f, std::uint64_t a, const Monomial& m,
                                      const MPoly<FiniteField>& g) {
    const auto& F = f.ring();
    return f.sub_mul(F.div(a, g.lc()), m, g);
  }
  static MPoly<FiniteField> spoly(const MPoly<FiniteField>& f, const MPoly<FiniteField>& g) {
    const Monomial l = Monomial::lcm(f.lm(), g.lm());
    // Both monic.
    return f.mul_term(l / f.lm(), 1).sub_mul(1, l / g.lm(), g);
  }
};

inline Integer content(const MPoly<IntegerRing>& f) {
  Integer g = 0;
  for (const auto& t : f.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

template <>
struct Normalizer<IntegerRing> {
  static MPoly<IntegerRing> normalize(const MPoly<IntegerRing>& f) {
    if (f.is_zero()) return f;
    Integer g = content(f);
    if (f.lc() < 0) g = -g;
    if (g == 1) return f;
    IntegerRing Z;
    return f.map_coefficients(Z, [&](const Integer& c) {
      Integer q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      return q;
    });
  }
  static MPoly<IntegerRing> eliminate(const MPoly<IntegerRing>& f, const Integer& a, const Monomial& m,
                                      const MPoly<IntegerRing>& g) {
    Integer d;
    mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), g.lc().get_mpz_t());
    Integer fa, ga;
    mpz_divexact(fa.get_mpz_t(), g.lc().get_mpz_t(), d.get_mpz_t());
    mpz_divexact(ga.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    MPoly<IntegerRing> scaled = (fa == 1) ? f : f.scale(fa);
    return scaled.sub_mul(ga, m, g);
  }
  static MPoly<IntegerRing> spoly(const MPoly<IntegerRing>& f, const MPoly<IntegerRing>& g) {
    const Monomial l = Monomial::lcm(f.lm(), g.lm());
    Integer d;
    mpz_gcd(d.get_mpz_t(), f.lc().get_mpz_t(), g.lc().get_mpz_t());
    Integer cf = g.lc() / d, cg = f.lc() / d;
    return f.mul_term(l / f.lm(), cf).sub_mul(cg, l / g.lm(), g);
  }
};

template <class ER>
class BuchbergerEngine {
 public:
  using P = MPoly<ER>;
  using N = Normalizer<ER>;

  BuchbergerEngine(const ER& ring, int nvars, const GroebnerOptions& opts) : ring_(ring), nvars_(nvars), opts_(opts) {}

  /// Runs to completion; returns the reduced basis (sorted by leading monomial).
  std::vector<P> run(const std::vector<P>& input) {
    for (const auto& f : input) {
      P h = full_reduce(N::normalize(f));
      if (h.is_zero()) continue;
      if (h.is_constant()) return unit();
      insert(N::normalize(h), sugar_of(h));
    }
    while (!pairs_.empty()) {
      auto it = std::min_element(pairs_.begin(), pairs_.end(), [](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        const int c = grevlex_cmp(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.j != b.j) return a.j < b.j;
        return a.i < b.i;
      });
      Pair pr = *it;
      pairs_.erase(it);
      if (++stats_.pairs > opts_.max_pairs)
        throw Error(Errc::BudgetExceeded, "Groebner pair cap " + std::to_string(opts_.max_pairs) + " reached");
      if (pr.lcm.deg > opts_.max_degree)
        throw Error(Errc::BudgetExceeded, "Groebner degree cap " + std::to_string(opts_.max_degree) + " reached");
      stats_.max_degree_seen = std::max<unsigned>(stats_.max_degree_seen, pr.lcm.deg);
      P s = N::spoly(polys_[pr.i], polys_[pr.j]);
      unsigned sug = pr.sugar;
      P h = top_reduce(s, sug);
      if (h.is_zero()) {
        ++stats_.reductions_to_zero;
        continue;
      }
      if (h.is_constant()) return unit();
      insert(N::normalize(full_reduce(h)), sug);
    }
    return interreduce();
  }

  const GroebnerStats& stats() const { return stats_; }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };

  std::vector<P> unit() {
    return {P::constant(ring_, nvars_, ring_.one())};
  }

  static unsigned sugar_of(const P& f) { return static_cast<unsigned>(std::max(0, f.total_degree())); }

  const P* find_reducer(const Monomial& m) const {
    for (std::size_t k : active_)
      if (polys_[k].lm().divides(m)) return &polys_[k];
    return nullptr;
  }

  P top_reduce(P f, unsigned& sugar) const {
    while (!f.is_zero()) {
      const P* g = find_reducer(f.lm());
      if (!g) break;
      const Monomial m = f.lm() / g->lm();
      sugar = std::max(sugar, m.deg + sugar_[index_of(g)]);
      f = N::normalize(N::eliminate(f, f.lc(), m, *g));
    }
    return f;
  }

  // Reduces every term, not just the leading one.
  P full_reduce(P f) const {
    std::size_t pos = 0;
    while (pos < f.size()) {
      const auto& t = f.terms()[pos];
      const P* g = find_reducer(t.m);
      if (!g) {
        ++pos;
        continue;
      }
      const Monomial m = t.m / g->lm();
      f = N::normalize(N::eliminate(f, t.c, m, *g));
      // Terms ahead of pos are unchanged by construction (lower monomials only
      // are touched), apart from a possible rescaling.
    }
    return f;
  }

  std::size_t index_of(const P* g) const { return static_cast<std::size_t>(g - polys_.data()); }

  void insert(P h, unsigned sugar) {
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    sugar_.push_back(sugar);
    const Monomial lh = polys_[hi].lm();

    // Gebauer-Moeller update.
    std::vector<std::size_t> C(active_.begin(), active_.end());
    std::vector<std::size_t> D;
    auto lcm_with = [&](std::size_t g) { return Monomial::lcm(lh, polys_[g].lm()); };
    for (std::size_t a = 0; a < C.size(); ++a) {
      const std::size_t g1 = C[a];
      const Monomial l1 = lcm_with(g1);
      bool keep = Monomial::coprime(lh, polys_[g1].lm());
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (lcm_with(C[b]).divides(l1)) keep = false;
        for (std::size_t g2 : D)
          if (keep && lcm_with(g2).divides(l1)) keep = false;
      }
      if (keep) D.push_back(g1);
    }
    std::vector<Pair> E;
    for (std::size_t g : D) {
      if (Monomial::coprime(lh, polys_[g].lm())) continue;
      const Monomial l = lcm_with(g);
      const unsigned sg = std::max(sugar_[g] + (l.deg - polys_[g].lm().deg), sugar + (l.deg - lh.deg));
      E.push_back({g, hi, l, sg});
    }
    std::erase_if(pairs_, [&](const Pair& p) {
      return lh.divides(p.lcm) && Monomial::lcm(polys_[p.i].lm(), lh) != p.lcm &&
             Monomial::lcm(polys_[p.j].lm(), lh) != p.lcm;
    });
    pairs_.insert(pairs_.end(), E.begin(), E.end());
    std::erase_if(active_, [&](std::size_t g) { return lh.divides(polys_[g].lm()); });
    active_.push_back(hi);
  }

  std::vector<P> interreduce() {
    std::vector<std::size_t> idx = active_;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return grevlex_cmp(polys_[a].lm(), polys_[b].lm()) < 0; });
    std::vector<P> out;
    for (std::size_t k : idx) {
      // Reduce tails against the other active elements; leading terms are
      // pairwise non-divisible already.
      std::vector<std::size_t> saved = active_;
      std::erase(active_, k);
      P r = full_reduce(polys_[k]);
      active_ = saved;
      out.push_back(N::normalize(r));
    }
    return out;
  }

  ER ring_;
  int nvars_;
  GroebnerOptions opts_;
  std::vector<P> polys_;
  std::vector<unsigned> sugar_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  GroebnerStats stats_;
};

template <class Ring>
void check_ideal(const IdealBasis<Ring>& I) {
  for (const auto& g : I.generators)
    if (g.nvars() != I.nvars) throw Error(Errc::WrongVariableCount, "generator variable count");
}

}  // namespace detail

/// Reduced Groebner basis in grevlex. Over Q the work is done on primitive
/// integer polynomials and the result is made monic at the end.
inline IdealBasis<FiniteField> buchberger(const IdealBasis<FiniteField>& I, const GroebnerOptions& opts = {},
                                          GroebnerStats* stats = nullptr) {
  detail::check_ideal(I);
  detail::BuchbergerEngine<FiniteField> eng(I.ring, I.nvars, opts);
  auto basis = eng.run(I.generators);
  if (stats) *stats = eng.stats();
  return IdealBasis<FiniteField>(I.ring, I.nvars, std::move(basis));
}

inline IdealBasis<RationalField> buchberger(const IdealBasis<RationalField>& I, const GroebnerOptions& opts = {},
                                            GroebnerStats* stats = nullptr) {
  detail::check_ideal(I);
  std::vector<MPoly<IntegerRing>> gens;
  for (const auto& g : I.generators) gens.push_back(primitive_part(g));
  detail::BuchbergerEngine<IntegerRing> eng(IntegerRing{}, I.nvars, opts);
  auto basis = eng.run(gens);
  if (stats) *stats = eng.stats();
  IdealBasis<RationalField> out(RationalField{}, I.nvars);
  for (const auto& b : basis) {
    auto q = to_rational(b);
    out.generators.push_back(q.scale(1 / q.lc()));
  }
  return out;
}

/// The engine stops at the first nonzero constant, so this is cheap on
/// inconsistent systems.
template <class Ring>
bool contains_one(const IdealBasis<Ring>& I, const GroebnerOptions& opts = {}) {
  for (const auto& g : I.generators)
    if (g.is_constant() && !g.is_zero()) return true;
  return buchberger(I, opts).is_unit();
}

/// Normal form of f modulo a Groebner basis (monic basis over a field).
template <class Ring>
MPoly<Ring> normal_form(const MPoly<Ring>& f, const IdealBasis<Ring>& G) {
  MPoly<Ring> r(f.ring(), f.nvars()), p = f;
  while (!p.is_zero()) {
    const MPoly<Ring>* red = nullptr;
    for (const auto& g : G.generators)
      if (g.lm().divides(p.lm())) {
        red = &g;
        break;
      }
    if (!red) {
      r += MPoly<Ring>::monomial(f.ring(), f.nvars(), p.lm(), p.lc());
      p = p - MPoly<Ring>::monomial(f.ring(), f.nvars(), p.lm(), p.lc());
      continue;
    }
    p = p.sub_mul(f.ring().div(p.lc(), red->lc()), p.lm() / red->lm(), *red);
  }
  return r;
}

/// Sets x_i = 1 in homogeneous polynomials in k+1 variables: result in k variables.
template <class Ring>
MPoly<Ring> dehomogenize(const MPoly<Ring>& f, int i) {
  const int n = f.nvars();
  std::vector<typename MPoly<Ring>::Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m;
    for (int j = 0, k = 0; j < n; ++j) {
      if (j == i) continue;
      m.e[k++] = t.m.e[j];
      m.deg = static_cast<std::uint16_t>(m.deg + t.m.e[j]);
    }
    terms.push_back({m, t.c});
  }
  return MPoly<Ring>::from_terms(f.ring(), n - 1, std::move(terms));
}

/// True iff the homogeneous generators have no common zero in P^k over the
/// algebraic closure; one weak-Nullstellensatz test per chart x_i = 1.
template <class Ring>
bool projective_is_empty(const IdealBasis<Ring>& I, int k, const GroebnerOptions& opts = {}) {
  if (I.nvars != k + 1) throw Error(Errc::WrongVariableCount, "ambient dimension mismatch");
  for (const auto& g : I.generators)
    if (!g.is_homogeneous()) throw Error(Errc::InvalidArgument, "projective_is_empty needs homogeneous generators");
  for (int i = 0; i <= k; ++i) {
    IdealBasis<Ring> chart(I.ring, k);
    for (const auto& g : I.generators) {
      auto d = dehomogenize(g, i);
      if (!d.is_zero()) chart.generators.push_back(d);
    }
    if (!contains_one(chart, opts)) return false;
  }
  return true;
}

/// Pivot columns of a Grassmannian chart, listed in lexicographic order.
inline std::vector<std::pair<int, int>> line_chart_pivots(int m) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) out.push_back({i, j});
  return out;
}

/// Chart (i,j): lines spanned by rows r1, r2 with r1 = e_i + sum a_k e_k,
/// r2 = e_j + sum b_k e_k over the columns k != i, j. Parameters are
/// a (columns ascending) followed by b. Generators are the coefficients of
/// f(s*r1 + t*r2) in s, t.
template <class Ring>
std::vector<IdealBasis<Ring>> schubert_line_ideals(const std::vector<MPoly<Ring>>& fs, int m) {
  if (m != 3 && m != 4) throw Error(Errc::OutOfRange, "line ideals need m in {3,4}");
  if (fs.empty()) throw Error(Errc::InvalidArgument, "empty system");
  const Ring& R = fs[0].ring();
  const int np = 2 * (m - 1);
  const int nv = np + 2;
  using P = MPoly<Ring>;
  std::vector<IdealBasis<Ring>> out;
  for (auto [pi, pj] : line_chart_pivots(m)) {
    std::vector<P> img;
    const P s = P::variable(R, nv, np), t = P::variable(R, nv, np + 1);
    std::vector<int> free_cols;
    for (int k = 0; k <= m; ++k)
      if (k != pi && k != pj) free_cols.push_back(k);
    for (int k = 0; k <= m; ++k) {
      if (k == pi) {
        img.push_back(s);
      } else if (k == pj) {
        img.push_back(t);
      } else {
        const int pos = static_cast<int>(std::find(free_cols.begin(), free_cols.end(), k) - free_cols.begin());
        img.push_back(s * P::variable(R, nv, pos) + t * P::variable(R, nv, (m - 1) + pos));
      }
    }
    IdealBasis<Ring> I(R, np);
    for (const auto& f : fs) {
      if (f.nvars() != m + 1) throw Error(Errc::WrongVariableCount, "system lives in the wrong ambient space");
      P g = f.substitute(img);
      // Group by the (s,t) exponent.
      std::vector<std::pair<std::pair<unsigned, unsigned>, std::vector<typename P::Term>>> groups;
      for (const auto& tm : g.terms()) {
        std::pair<unsigned, unsigned> key{tm.m.e[np], tm.m.e[np + 1]};
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& gr) { return gr.first == key; });
        if (it == groups.end()) {
          groups.push_back({key, {}});
          it = groups.end() - 1;
        }
        Monomial mm = tm.m;
        mm.deg = static_cast<std::uint16_t>(mm.deg - mm.e[np] - mm.e[np + 1]);
        mm.e[np] = mm.e[np + 1] = 0;
        it->second.push_back({mm, tm.c});
      }
      std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
      for (auto& gr : groups) {
        P c = P::from_terms(R, np, std::move(gr.second));
        if (!c.is_zero()) I.generators.push_back(std::move(c));
      }
    }
    out.push_back(std::move(I));
  }
  return out;
}

/// Called with (chart index, pivots, contains_one result) after each chart.
using LineChartObserver = std::function<void(std::size_t, std::pair<int, int>, bool)>;

/// True iff no line over the algebraic closure lies on V(fs) in P^m.
template <class Ring>
bool lines_free_over_closure(const std::vector<MPoly<Ring>>& fs, int m, const GroebnerOptions& opts = {},
                             const LineChartObserver& observe = {}) {
  auto cells = schubert_line_ideals(fs, m);
  auto piv = line_chart_pivots(m);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    bool empty;
    try {
      empty = contains_one(cells[c], opts);
    } catch (const Error& e) {
      throw Error(e.code(), "chart (" + std::to_string(piv[c].first) + "," + std::to_string(piv[c].second) +
                                "): " + e.what());
    }
    if (observe) observe(c, piv[c], empty);
    if (!empty) return false;
  }
  return true;
}

/// How an emptiness claim over the algebraic closure of Q was settled.
enum class ClosureMethod { Direct, Specialization, RationalWitness };

inline const char* closure_method_name(ClosureMethod m) {
  switch (m) {
    case ClosureMethod::Direct: return "direct";
    case ClosureMethod::Specialization: return "specialization";
    case ClosureMethod::RationalWitness: return "rational-witness";
  }
  return "?";
}

struct ClosureOptions {
  GroebnerOptions groebner{};
  /// Primes tried for the specialization certificate, in order.
  std::vector<std::uint64_t> primes{3, 5, 7, 11, 13, 17, 19, 23};
  /// Box for the rational witness search (entries in [-box, box]).
  int witness_box = 1;
  /// Run exact Buchberger over Q when no certificate is found.
  bool direct_fallback = true;
};

struct LineFreenessReport {
  bool lines_free = false;
  ClosureMethod method = ClosureMethod::Direct;
  std::uint64_t prime = 0;
  /// Chart and parameters of a rational line, when one was found.
  std::pair<int, int> witness_chart{-1, -1};
  std::vector<Integer> witness;
};

/// Rows of the line through chart (i,j) with parameters a (then b).
inline std::array<std::vector<Integer>, 2> chart_rows(int m, std::pair<int, int> piv, const std::vector<Integer>& par) {
  std::array<std::vector<Integer>, 2> r{std::vector<Integer>(m + 1, 0), std::vector<Integer>(m + 1, 0)};
  r[0][piv.first] = 1;
  r[1][piv.second] = 1;
  int pos = 0;
  for (int k = 0; k <= m; ++k) {
    if (k == piv.first || k == piv.second) continue;
    r[0][k] = par[pos];
    r[1][k] = par[(m - 1) + pos];
    ++pos;
  }
  return r;
}

/// Whether every f vanishes on the span of the two rows.
inline bool line_lies_on(const std::vector<MPoly<IntegerRing>>& fs, const std::array<std::vector<Integer>, 2>& rows) {
  IntegerRing Z;
  const int n = static_cast<int>(rows[0].size());
  using P = MPoly<IntegerRing>;
  std::vector<P> img;
  P s = P::variable(Z, 2, 0), t = P::variable(Z, 2, 1);
  for (int k = 0; k < n; ++k) img.push_back(s.scale(rows[0][k]) + t.scale(rows[1][k]));
  for (const auto& f : fs)
    if (!f.substitute(img).is_zero()) return false;
  return true;
}

/// Decides whether V(fs) in P^m contains a line over the algebraic closure of
/// Q. The line scheme is proper over Z, so emptiness modulo a single prime
/// implies emptiness over Q-bar; a rational line found by search settles the
/// other direction. Exact Buchberger over Q is the last resort.
inline LineFreenessReport lines_free_report(const std::vector<MPoly<IntegerRing>>& fs, int m,
                                            const ClosureOptions& opts = {}) {
  LineFreenessReport rep;
  const auto piv = line_chart_pivots(m);
  const int np = 2 * (m - 1);
  if (opts.witness_box >= 0) {
    const int side = 2 * opts.witness_box + 1;
    std::size_t total = 1;
    for (int i = 0; i < np; ++i) total *= static_cast<std::size_t>(side);
    for (const auto& pv : piv) {
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<Integer> par(np);
        std::size_t c = code;
        for (int i = 0; i < np; ++i) {
          par[i] = static_cast<long>(c % side) - opts.witness_box;
          c /= side;
        }
        if (line_lies_on(fs, chart_rows(m, pv, par))) {
          rep.lines_free = false;
          rep.method = ClosureMethod::RationalWitness;
          rep.witness_chart = pv;
          rep.witness = par;
          return rep;
        }
      }
    }
  }
  for (std::uint64_t p : opts.primes) {
    FiniteField F(p);
    std::vector<MPoly<FiniteField>> red;
    bool all_zero = true;
    for (const auto& f : fs) {
      red.push_back(reduce_mod(f, F));
      all_zero = all_zero && red.back().is_zero();
    }
    if (all_zero) continue;
    if (lines_free_over_closure(red, m, opts.groebner)) {
      rep.lines_free = true;
      rep.method = ClosureMethod::Specialization;
      rep.prime = p;
      return rep;
    }
  }
  if (!opts.direct_fallback)
    throw Error(Errc::BudgetExceeded, "no specialization prime certifies line-freeness and direct search is disabled");
  std::vector<MPoly<RationalField>> q;
  for (const auto& f : fs) q.push_back(to_rational(f));
  rep.lines_free = lines_free_over_closure(q, m, opts.groebner);
  rep.method = ClosureMethod::Direct;
  return rep;
}

inline bool lines_free_over_closure(const std::vector<MPoly<IntegerRing>>& fs, int m, const ClosureOptions& opts = {}) {
  return lines_free_report(fs, m, opts).lines_free;
}

inline bool lines_free_over_closure(const std::vector<MPoly<RationalField>>& fs, int m, const ClosureOptions& opts) {
  std::vector<MPoly<IntegerRing>> z;
  for (const auto& f : fs) z.push_back(primitive_part(f));
  return lines_free_report(z, m, opts).lines_free;
}

}  // namespace k3pic
