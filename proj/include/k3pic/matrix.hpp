#pragma once

// Square matrices of polynomials: determinant, adjugate, bordering, and the
// restriction of plane forms to lines.

#include "k3pic/mpoly.hpp"

#include <optional>
#include <vector>

namespace k3pic {

/// Exact quotient a / b, or nullopt when b does not divide a.
template <class Ring>
std::optional<MPoly<Ring>> mpoly_divide_exact(const MPoly<Ring>& a, const MPoly<Ring>& b) {
  if (b.is_zero()) throw Error(Errc::ZeroDivisor, "polynomial division by zero");
  const Ring& R = a.ring();
  std::vector<typename MPoly<Ring>::Term> q;
  MPoly<Ring> r = a;
  while (!r.is_zero()) {
    if (!b.lm().divides(r.lm())) return std::nullopt;
    typename Ring::value_type c;
    if constexpr (Ring::is_field) {
      c = R.div(r.lc(), b.lc());
    } else {
      if (!R.divides(b.lc(), r.lc())) return std::nullopt;
      c = R.div_exact(r.lc(), b.lc());
    }
    const Monomial m = r.lm() / b.lm();
    r = r.sub_mul(c, m, b);
    q.push_back({m, c});
  }
  return MPoly<Ring>::from_terms(R, a.nvars(), std::move(q));
}

template <class Ring>
class PolyMatrix {
 public:
  using P = MPoly<Ring>;

  PolyMatrix() = default;
  PolyMatrix(const Ring& ring, int nvars, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, P(ring, nvars)) {
    if (rows > 16 || cols > 16) throw Error(Errc::OutOfRange, "matrix dimension above 16");
  }
  static PolyMatrix from_rows(std::vector<std::vector<P>> rows) {
    if (rows.empty()) throw Error(Errc::DimensionMismatch, "empty matrix");
    const P& z = rows[0].at(0);
    PolyMatrix m(z.ring(), z.nvars(), rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error(Errc::DimensionMismatch, "ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = std::move(rows[i][j]);
    }
    return m;
  }
  static PolyMatrix identity(const Ring& ring, int nvars, std::size_t n) {
    PolyMatrix m(ring, nvars, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = P::constant(ring, nvars, ring.one());
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  P& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const P& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  PolyMatrix operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw Error(Errc::DimensionMismatch, "matrix product shape");
    const P& z = a_.front();
    PolyMatrix r(z.ring(), z.nvars(), rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j)
        for (std::size_t k = 0; k < cols_; ++k) r(i, j) += (*this)(i, k) * o(k, j);
    return r;
  }
  bool operator==(const PolyMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  /// Matrix with row i and column j removed.
  PolyMatrix minor(std::size_t i, std::size_t j) const {
    const P& z = a_.front();
    PolyMatrix r(z.ring(), z.nvars(), rows_ - 1, cols_ - 1);
    for (std::size_t a = 0, ra = 0; a < rows_; ++a) {
      if (a == i) continue;
      for (std::size_t b = 0, rb = 0; b < cols_; ++b) {
        if (b == j) continue;
        r(ra, rb++) = (*this)(a, b);
      }
      ++ra;
    }
    return r;
  }

  const P& any_entry() const { return a_.front(); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<P> a_;
};

namespace detail {

template <class Ring>
MPoly<Ring> det_laplace(const PolyMatrix<Ring>& m) {
  const auto n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  MPoly<Ring> acc(m.any_entry().ring(), m.any_entry().nvars());
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    MPoly<Ring> t = m(0, j) * det_laplace(m.minor(0, j));
    acc = (j % 2) ? acc - t : acc + t;
  }
  return acc;
}

// Fraction-free elimination; each division is exact by Sylvester's identity.
template <class Ring>
MPoly<Ring> det_bareiss(PolyMatrix<Ring> m) {
  const auto n = m.rows();
  const Ring& R = m.any_entry().ring();
  const int nv = m.any_entry().nvars();
  MPoly<Ring> prev = MPoly<Ring>::constant(R, nv, R.one());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) return MPoly<Ring>(R, nv);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MPoly<Ring> num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = mpoly_divide_exact(num, prev);
        if (!q) throw Error(Errc::InvalidArgument, "Bareiss step not exact (ring is not a domain?)");
        m(i, j) = std::move(*q);
      }
      m(i, k) = MPoly<Ring>(R, nv);
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

}  // namespace detail

template <class Ring>
MPoly<Ring> det(const PolyMatrix<Ring>& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "determinant of a non-square matrix");
  if (m.rows() <= 4) return detail::det_laplace(m);
  return detail::det_bareiss(m);
}

template <class Ring>
PolyMatrix<Ring> adjugate(const PolyMatrix<Ring>& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "adjugate of a non-square matrix");
  const auto n = m.rows();
  const Ring& R = m.any_entry().ring();
  const int nv = m.any_entry().nvars();
  PolyMatrix<Ring> adj(R, nv, n, n);
  if (n == 1) {
    adj(0, 0) = MPoly<Ring>::constant(R, nv, R.one());
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MPoly<Ring> c = det(m.minor(i, j));
      adj(j, i) = ((i + j) % 2) ? -c : c;
    }
  return adj;
}

/// [[0, v^t], [v, m]].
template <class Ring>
PolyMatrix<Ring> bordered(const PolyMatrix<Ring>& m, const std::vector<MPoly<Ring>>& v) {
  if (!m.is_square() || v.size() != m.rows()) throw Error(Errc::DimensionMismatch, "bordering vector length");
  const auto n = m.rows();
  PolyMatrix<Ring> b(m.any_entry().ring(), m.any_entry().nvars(), n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    b(0, i + 1) = v[i];
    b(i + 1, 0) = v[i];
    for (std::size_t j = 0; j < n; ++j) b(i + 1, j + 1) = m(i, j);
  }
  return b;
}

/// v^t adj(m) v + det([[0, v^t], [v, m]]) == 0. Always true; kept as a self-test.
template <class Ring>
bool bordered_det_identity_check(const PolyMatrix<Ring>& m, const std::vector<MPoly<Ring>>& v) {
  if (!m.is_square() || v.size() != m.rows()) throw Error(Errc::DimensionMismatch, "bordering vector length");
  const auto adj = adjugate(m);
  MPoly<Ring> q(m.any_entry().ring(), m.any_entry().nvars());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) q += v[i] * adj(i, j) * v[j];
  return (q + det(bordered(m, v))).is_zero();
}

/// Images of (u,v,w) under the canonical parametrization of a*u + b*v + c*w = 0:
/// the pivot is the first nonzero coefficient, the other two coordinates
/// become (s,t) in order. Over the integers the pivot is cleared by scaling
/// s,t instead of dividing.
template <class Ring>
std::vector<MPoly<Ring>> line_parametrization(const Ring& R, const std::array<typename Ring::value_type, 3>& line) {
  int piv = -1;
  for (int i = 0; i < 3; ++i)
    if (!R.is_zero(line[i])) {
      piv = i;
      break;
    }
  if (piv < 0) throw Error(Errc::ZeroLine, "zero line coefficients");
  using P = MPoly<Ring>;
  std::vector<P> img(3, P(R, 2));
  P s = P::variable(R, 2, 0), t = P::variable(R, 2, 1);
  int k = 0;
  P pivot_img(R, 2);
  for (int i = 0; i < 3; ++i) {
    if (i == piv) continue;
    P par = (k++ == 0) ? s : t;
    if constexpr (Ring::is_field) {
      img[i] = par;
      pivot_img -= par.scale(R.div(line[i], line[piv]));
    } else {
      img[i] = par.scale(line[piv]);
      pivot_img -= par.scale(line[i]);
    }
  }
  img[piv] = pivot_img;
  return img;
}

template <class Ring>
MPoly<Ring> restrict_to_line(const MPoly<Ring>& f, const std::array<typename Ring::value_type, 3>& line) {
  if (f.nvars() != 3) throw Error(Errc::WrongVariableCount, "restriction needs a ternary form");
  return f.substitute(line_parametrization(f.ring(), line));
}

}  // namespace k3pic
