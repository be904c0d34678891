#pragma once

// Exhaustive finite-field searches: split tritangent lines of a plane sextic
// and lines on surfaces in P^3 / P^4, over F_p and small extensions.

#include "k3pic/enumerate.hpp"
#include "k3pic/matrix.hpp"
#include "k3pic/univariate.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace k3pic {

struct ScanOptions {
  /// Largest extension degree searched.
  unsigned max_ext = 2;
  /// Bound on enumerated candidates per extension degree.
  std::uint64_t budget = std::uint64_t{1} << 36;
  unsigned threads = 0;
  /// Stop after the first hit (the smallest in canonical order within the
  /// first field that has one).
  bool stop_at_first = false;
};

namespace detail {

inline bool defined_over_subfield(const FiniteField& Fq, const std::vector<std::uint64_t>& coords, unsigned m) {
  for (unsigned d = 1; d < m; ++d) {
    if (m % d) continue;
    if (std::all_of(coords.begin(), coords.end(), [&](std::uint64_t a) { return Fq.in_subfield(a, d); })) return true;
  }
  return false;
}

inline std::string coords_string(const FiniteField& F, const std::vector<std::uint64_t>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + F.to_string(c[i]);
  return s;
}

}  // namespace detail

/// The line a u + b v + c w = 0, scaled so the first nonzero coefficient is 1.
struct LineInP2 {
  std::array<std::uint64_t, 3> c{};

  static LineInP2 normalized(const FiniteField& F, std::array<std::uint64_t, 3> abc) {
    int lead = 0;
    while (lead < 3 && abc[lead] == 0) ++lead;
    if (lead == 3) throw Error(Errc::ZeroLine, "zero line coefficients");
    const auto inv = F.inv(abc[lead]);
    for (auto& x : abc) x = F.mul(x, inv);
    return {abc};
  }
  std::string to_string(const FiniteField& F) const { return detail::coords_string(F, {c.begin(), c.end()}); }
  auto operator<=>(const LineInP2&) const = default;
};

struct TritangentCheck {
  bool split = false;
  /// The restriction vanishes identically.
  bool contained_in_branch = false;
  std::vector<unsigned> profile;
};

/// Restriction of g6 to L and its root multiplicities over the closure.
inline TritangentCheck tritangent_check(const MPoly<FiniteField>& g6, const LineInP2& L) {
  if (g6.is_zero()) throw Error(Errc::ZeroForm, "zero sextic");
  TritangentCheck r;
  const auto b = restrict_to_line(g6, L.c);
  if (b.is_zero()) {
    r.contained_in_branch = true;
    return r;
  }
  r.profile = squarefree_profile(b);
  r.split = std::all_of(r.profile.begin(), r.profile.end(), [](unsigned m) { return m % 2 == 0; });
  return r;
}

inline bool is_split_tritangent(const MPoly<FiniteField>& g6, const LineInP2& L) { return tritangent_check(g6, L).split; }

struct TritangentHit {
  /// Coefficients live in F_{p^ext}.
  unsigned ext = 1;
  LineInP2 line;
};

/// Split tritangent lines of a sextic over F_p with coefficients in
/// F_{p^m}, m <= max_ext, each reported once at its minimal field.
inline std::vector<TritangentHit> tritangent_scan(const MPoly<FiniteField>& g6, const ScanOptions& opts = {}) {
  if (g6.nvars() != 3 || g6.is_zero() || !g6.is_homogeneous()) throw Error(Errc::InvalidArgument, "expected a nonzero ternary form");
  std::vector<TritangentHit> hits;
  for (unsigned m = 1; m <= opts.max_ext; ++m) {
    const FiniteField Fq = detail::extension_of(g6.ring(), m);
    const std::uint64_t q = Fq.size();
    if (projective_point_count(q, 2) > opts.budget) throw Error(Errc::BudgetExceeded, "too many lines over F_{p^" + std::to_string(m) + "}");
    const auto g = m == 1 ? g6 : embed(g6, Fq);
    // Lines indexed like points of the dual plane: (1,b,c), (0,1,c), (0,0,1).
    const std::uint64_t total = q * q + q + 1;
    auto line_at = [&](std::uint64_t idx) -> LineInP2 {
      if (idx < q * q) return {{1, idx / q, idx % q}};
      if (idx < q * q + q) return {{0, 1, idx - q * q}};
      return {{0, 0, 1}};
    };
    auto found = detail::parallel_collect(total, opts.threads, [&](std::uint64_t b, std::uint64_t e) {
      std::vector<TritangentHit> out;
      for (std::uint64_t idx = b; idx < e; ++idx) {
        const LineInP2 L = line_at(idx);
        if (m > 1 && detail::defined_over_subfield(Fq, {L.c.begin(), L.c.end()}, m)) continue;
        if (!is_split_tritangent(g, L)) continue;
        out.push_back({m, L});
        if (opts.stop_at_first) break;
      }
      return out;
    });
    for (auto& h : found) {
      hits.push_back(h);
      if (opts.stop_at_first) return hits;
    }
  }
  return hits;
}

/// A line in P^n as the reduced row echelon form of a 2 x (n+1) matrix.
struct LineInPn {
  std::array<std::vector<std::uint64_t>, 2> rows;
  std::array<int, 2> pivots{-1, -1};

  int ambient() const { return static_cast<int>(rows[0].size()) - 1; }

  /// Canonical form of the span of two distinct points.
  static LineInPn through(const FiniteField& F, std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "points in different spaces");
    std::array<std::vector<std::uint64_t>, 2> r{std::move(a), std::move(b)};
    const std::size_t n = r[0].size();
    LineInPn L;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < 2; ++col) {
      std::size_t piv = row;
      while (piv < 2 && r[piv][col] == 0) ++piv;
      if (piv == 2) continue;
      std::swap(r[row], r[piv]);
      const auto inv = F.inv(r[row][col]);
      for (auto& x : r[row]) x = F.mul(x, inv);
      const std::size_t other = 1 - row;
      const auto f = r[other][col];
      if (f)
        for (std::size_t k = 0; k < n; ++k) r[other][k] = F.sub(r[other][k], F.mul(f, r[row][k]));
      L.pivots[row] = static_cast<int>(col);
      ++row;
    }
    if (row < 2) throw Error(Errc::InvalidArgument, "points do not span a line");
    L.rows = std::move(r);
    return L;
  }
  std::vector<std::uint64_t> flat() const {
    std::vector<std::uint64_t> v(rows[0]);
    v.insert(v.end(), rows[1].begin(), rows[1].end());
    return v;
  }
  std::string to_string(const FiniteField& F) const {
    return detail::coords_string(F, rows[0]) + " | " + detail::coords_string(F, rows[1]);
  }
  auto operator<=>(const LineInPn&) const = default;
};

/// Whether every form vanishes on the line.
inline bool line_lies_on(const std::vector<MPoly<FiniteField>>& fs, const LineInPn& L) {
  if (fs.empty()) return true;
  const FiniteField& F = fs[0].ring();
  using P = MPoly<FiniteField>;
  const int nv = L.ambient() + 1;
  std::vector<P> img;
  const P s = P::variable(F, 2, 0), t = P::variable(F, 2, 1);
  for (int i = 0; i < nv; ++i) img.push_back(s.scale(L.rows[0][i]) + t.scale(L.rows[1][i]));
  for (const auto& f : fs) {
    if (f.nvars() != nv) throw Error(Errc::WrongVariableCount, "form and line in different spaces");
    if (!f.substitute(img).is_zero()) return false;
  }
  return true;
}

namespace detail {

/// Basis of the kernel of a dense matrix over F_q (rows x cols).
inline std::vector<std::vector<std::uint64_t>> kernel_basis(const FiniteField& F, std::vector<std::vector<std::uint64_t>> A,
                                                            std::size_t cols) {
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < A.size(); ++col) {
    std::size_t piv = row;
    while (piv < A.size() && A[piv][col] == 0) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[row], A[piv]);
    const auto inv = F.inv(A[row][col]);
    for (auto& x : A[row]) x = F.mul(x, inv);
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][col] == 0) continue;
      const auto f = A[r][col];
      for (std::size_t k = 0; k < cols; ++k) A[r][k] = F.sub(A[r][k], F.mul(f, A[row][k]));
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t fcol = 0; fcol < cols; ++fcol) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(fcol)) != pivot_col.end()) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[fcol] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = F.neg(A[r][fcol]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Vectors completing {P} to a basis of span(P, K).
inline std::vector<std::vector<std::uint64_t>> complement_of_point(const FiniteField& F, const std::vector<std::uint64_t>& P,
                                                                   const std::vector<std::vector<std::uint64_t>>& K) {
  std::vector<std::vector<std::uint64_t>> echelon{P}, out;
  auto reduce = [&](std::vector<std::uint64_t> v) {
    for (const auto& e : echelon) {
      std::size_t lead = 0;
      while (e[lead] == 0) ++lead;
      if (v[lead]) {
        const auto f = F.div(v[lead], e[lead]);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = F.sub(v[k], F.mul(f, e[k]));
      }
    }
    return v;
  };
  for (const auto& k : K) {
    auto r = reduce(k);
    if (std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; })) continue;
    // Keep the echelon ordered by leading position so reduction stays valid.
    echelon.push_back(r);
    std::sort(echelon.begin(), echelon.end(), [](const auto& a, const auto& b) {
      auto lead = [](const auto& v) {
        std::size_t i = 0;
        while (v[i] == 0) ++i;
        return i;
      };
      return lead(a) < lead(b);
    });
    out.push_back(k);
  }
  return out;
}

}  // namespace detail

struct LineHit {
  unsigned ext = 1;
  LineInPn line;
};

/// Lines on V(fs) in P^m (m = 3 or 4) defined over F_{p^e}, e <= max_ext,
/// each reported once at its minimal field. Every F_q-line on V has F_q
/// points and lies in the tangent space at each of them, so the search runs
/// over points P of V(F_q) and directions in the Zariski tangent space at P.
inline std::vector<LineHit> lines_on_surface_scan(const std::vector<MPoly<FiniteField>>& fs, int m, const ScanOptions& opts = {}) {
  if (m != 3 && m != 4) throw Error(Errc::InvalidArgument, "ambient dimension must be 3 or 4");
  if (fs.empty()) throw Error(Errc::InvalidArgument, "no equations");
  for (const auto& f : fs)
    if (f.nvars() != m + 1) throw Error(Errc::WrongVariableCount, "forms must live in P^" + std::to_string(m));
  const int nv = m + 1;
  std::vector<LineHit> hits;
  for (unsigned e = 1; e <= opts.max_ext; ++e) {
    const FiniteField Fq = detail::extension_of(fs[0].ring(), e);
    const std::uint64_t q = Fq.size();
    std::vector<MPoly<FiniteField>> g;
    for (const auto& f : fs) g.push_back(e == 1 ? f : embed(f, Fq));
    std::vector<std::vector<MPoly<FiniteField>>> jac(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      for (int k = 0; k < nv; ++k) jac[i].push_back(g[i].partial_derivative(k));
    int maxdeg = 0;
    for (const auto& f : g) maxdeg = std::max(maxdeg, f.total_degree());

    CountOptions copts{opts.budget, opts.threads};
    const auto points = projective_zeros(fs, e, copts);

    auto on_line = [&](const std::vector<std::uint64_t>& P, const std::vector<std::uint64_t>& D) {
      if (static_cast<int>(q) >= maxdeg) {
        // A binary form of degree d vanishing at d + 1 points is zero.
        std::vector<std::uint64_t> x(nv);
        for (const auto& f : g) {
          if (f.evaluate(D) != 0) return false;
          for (int t = 0; t < maxdeg; ++t) {
            for (int i = 0; i < nv; ++i) x[i] = Fq.add(P[i], Fq.mul(static_cast<std::uint64_t>(t), D[i]));
            if (f.evaluate(x) != 0) return false;
          }
        }
        return true;
      }
      return line_lies_on(g, LineInPn::through(Fq, P, D));
    };

    auto found = detail::parallel_collect(points.size(), opts.threads, [&](std::uint64_t b, std::uint64_t end) {
      std::vector<LineInPn> out;
      for (std::uint64_t idx = b; idx < end; ++idx) {
        const auto& P = points[idx];
        std::vector<std::vector<std::uint64_t>> J;
        for (const auto& row : jac) {
          std::vector<std::uint64_t> r(nv);
          for (int k = 0; k < nv; ++k) r[k] = row[k].is_zero() ? 0 : row[k].evaluate(P);
          J.push_back(std::move(r));
        }
        const auto dirs = detail::complement_of_point(Fq, P, detail::kernel_basis(Fq, J, nv));
        if (dirs.empty()) continue;
        const unsigned r = static_cast<unsigned>(dirs.size());
        if (r > 1 && projective_point_count(q, r - 1) > opts.budget)
          throw Error(Errc::BudgetExceeded, "tangent space too large at a singular point");
        // Directions: projective combinations of the complement vectors.
        const Field fld = Fq.field();
        if (r == 1) {
          if (on_line(P, dirs[0])) out.push_back(LineInPn::through(Fq, P, dirs[0]));
          continue;
        }
        for (const auto& c : enumerate_projective(fld, r - 1)) {
          std::vector<std::uint64_t> D(nv, 0);
          for (unsigned j = 0; j < r; ++j)
            if (c[j])
              for (int i = 0; i < nv; ++i) D[i] = Fq.add(D[i], Fq.mul(c[j], dirs[j][i]));
          if (on_line(P, D)) out.push_back(LineInPn::through(Fq, P, D));
        }
      }
      return out;
    });
    std::set<LineInPn> unique(found.begin(), found.end());
    for (const auto& L : unique) {
      if (e > 1 && detail::defined_over_subfield(Fq, L.flat(), e)) continue;
      hits.push_back({e, L});
    }
    if (opts.stop_at_first && !hits.empty()) {
      hits.resize(1);
      return hits;
    }
  }
  return hits;
}

/// Substitution x = M y whose new coordinates put the line at
/// V(y0, ..., y_{n-2}): the complement basis vectors e_k (k off the
/// pivots) come first, then the two rows of L.
inline std::vector<MPoly<FiniteField>> line_to_standard_change(const FiniteField& F, const LineInPn& L) {
  using P = MPoly<FiniteField>;
  const int nv = L.ambient() + 1;
  std::vector<std::vector<std::uint64_t>> cols;
  for (int k = 0; k < nv; ++k) {
    if (k == L.pivots[0] || k == L.pivots[1]) continue;
    std::vector<std::uint64_t> e(nv, 0);
    e[k] = 1;
    cols.push_back(std::move(e));
  }
  cols.push_back(L.rows[0]);
  cols.push_back(L.rows[1]);
  std::vector<P> img(nv, P(F, nv));
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      if (cols[j][i]) img[i] += P::variable(F, nv, j).scale(cols[j][i]);
  return img;
}

/// Plain-text report, one hit per line: extension degree, then coefficients.
inline std::string scan_report(const FiniteField& base, const std::vector<TritangentHit>& hits) {
  std::ostringstream os;
  for (const auto& h : hits) os << h.ext << " " << h.line.to_string(detail::extension_of(base, h.ext)) << "\n";
  return os.str();
}

inline std::string scan_report(const FiniteField& base, const std::vector<LineHit>& hits) {
  std::ostringstream os;
  for (const auto& h : hits) os << h.ext << " " << h.line.to_string(detail::extension_of(base, h.ext)) << "\n";
  return os.str();
}

}  // namespace k3pic
