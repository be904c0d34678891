#pragma once

// Shared machinery for exhaustive searches over finite fields: budgets,
// deterministic block-parallel reductions, and a straight-line form
// evaluator.

#include "k3pic/ffield.hpp"
#include "k3pic/mpoly.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace k3pic {

struct CountOptions {
  /// Upper bound on point evaluations.
  std::uint64_t budget = std::uint64_t{1} << 38;
  /// 0 means one per hardware thread.
  unsigned threads = 0;
};

namespace detail {

inline unsigned worker_count(unsigned requested, std::uint64_t work) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (work < t) t = static_cast<unsigned>(std::max<std::uint64_t>(work, 1));
  return t;
}

/// Runs f(begin, end) on `threads` contiguous blocks of [0, n) and returns
/// the block results in block order.
template <class Fn>
auto parallel_blocks(std::uint64_t n, unsigned threads, Fn&& f) {
  using R = decltype(f(std::uint64_t{0}, std::uint64_t{0}));
  const unsigned t = worker_count(threads, n);
  std::vector<R> partial(t);
  if (t == 1) {
    partial[0] = f(std::uint64_t{0}, n);
    return partial;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  for (unsigned i = 0; i < t; ++i) {
    const std::uint64_t b = n * i / t, e = n * (i + 1) / t;
    pool.emplace_back([&, i, b, e] {
      try {
        partial[i] = f(b, e);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return partial;
}

/// Block-parallel sum. Integer addition keeps the total independent of the
/// split.
template <class Fn>
std::int64_t parallel_sum(std::uint64_t n, unsigned threads, Fn&& f) {
  std::int64_t s = 0;
  for (auto v : parallel_blocks(n, threads, f)) s += v;
  return s;
}

/// Block-parallel concatenation in block order.
template <class Fn>
auto parallel_collect(std::uint64_t n, unsigned threads, Fn&& f) {
  auto parts = parallel_blocks(n, threads, f);
  decltype(f(std::uint64_t{0}, std::uint64_t{0})) out;
  for (auto& v : parts) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  return out;
}

inline std::uint64_t checked_power(std::uint64_t q, unsigned k, std::uint64_t budget, const char* what) {
  u128 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= q;
    if (r > budget) throw Error(Errc::BudgetExceeded, std::string(what) + " exceeds the evaluation budget");
  }
  return static_cast<std::uint64_t>(r);
}

inline FiniteField extension_of(const FiniteField& F, unsigned n) {
  if (!F.is_prime_field()) throw Error(Errc::RingMismatch, "counting expects a model over a prime field");
  if (F.characteristic() == 2) throw Error(Errc::EvenCharacteristic, "characteristic 2");
  if (n < 1) throw Error(Errc::InvalidArgument, "extension degree must be positive");
  return n == 1 ? F : FiniteField(F.characteristic(), n);
}

/// Straight-line evaluator for a form over F_q at points given by codes.
class CompiledForm {
 public:
  explicit CompiledForm(const MPoly<FiniteField>& f) : F_(f.ring()), nv_(f.nvars()), deg_(std::max(0, f.total_degree())) {
    for (const auto& t : f.terms()) {
      coeffs_.push_back(t.c);
      for (int i = 0; i < nv_; ++i) exps_.push_back(static_cast<std::uint8_t>(t.m.e[i]));
    }
  }

  /// `pw` holds x_i^e at pw[i * stride + e].
  std::uint64_t eval(const std::vector<std::uint64_t>& pw, std::size_t stride) const {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      std::uint64_t m = coeffs_[k];
      for (int i = 0; i < nv_ && m; ++i) {
        const unsigned e = exps_[k * nv_ + i];
        if (e) m = F_.mul(m, pw[i * stride + e]);
      }
      acc = F_.add(acc, m);
    }
    return acc;
  }
  int degree() const { return deg_; }

 private:
  FiniteField F_;
  int nv_;
  int deg_;
  std::vector<std::uint64_t> coeffs_;
  std::vector<std::uint8_t> exps_;
};

/// Block-parallel scan of P^k(F_{p^n}) for common zeros of forms in k+1
/// variables over F_p. Each block folds its zeros into an Acc via
/// visit(acc, point); points are visited in the canonical order (first
/// nonzero coordinate 1) within a block.
template <class Acc, class Visit>
std::vector<Acc> scan_projective_zeros(const std::vector<MPoly<FiniteField>>& fs, unsigned n, const CountOptions& opts,
                                       Visit visit) {
  if (fs.empty()) throw Error(Errc::InvalidArgument, "no equations");
  const int nv = fs[0].nvars();
  if (nv < 2) throw Error(Errc::WrongVariableCount, "need at least two variables");
  const FiniteField Fq = extension_of(fs[0].ring(), n);
  const std::uint64_t q = Fq.size();
  checked_power(q, static_cast<unsigned>(nv - 1), opts.budget, "q^k");
  std::vector<CompiledForm> forms;
  int maxdeg = 0;
  for (const auto& f : fs) {
    if (f.nvars() != nv) throw Error(Errc::WrongVariableCount, "equations in different ambient spaces");
    if (f.ring() != fs[0].ring()) throw Error(Errc::RingMismatch, "equations over different fields");
    if (!f.is_zero() && !f.is_homogeneous()) throw Error(Errc::InvalidArgument, "equations must be homogeneous");
    if (f.is_zero()) continue;
    forms.emplace_back(n == 1 ? f : embed(f, Fq));
    maxdeg = std::max(maxdeg, forms.back().degree());
  }
  std::vector<Acc> out;
  for (int lead = 0; lead < nv; ++lead) {
    const int free = nv - 1 - lead;
    const std::uint64_t cells = checked_power(q, static_cast<unsigned>(free), ~std::uint64_t{0}, "cell");
    auto parts = parallel_blocks(cells, opts.threads, [&](std::uint64_t b, std::uint64_t e) {
      const std::size_t stride = maxdeg + 1;
      std::vector<std::uint64_t> pw(nv * stride, 0);
      std::vector<std::uint64_t> x(nv, 0);
      Acc acc{};
      for (std::uint64_t idx = b; idx < e; ++idx) {
        x.assign(nv, 0);
        x[lead] = 1;
        std::uint64_t r = idx;
        for (int i = nv - 1; i > lead; --i) {
          x[i] = r % q;
          r /= q;
        }
        for (int i = 0; i < nv; ++i) {
          pw[i * stride] = 1;
          for (int k = 1; k <= maxdeg; ++k) pw[i * stride + k] = Fq.mul(pw[i * stride + k - 1], x[i]);
        }
        bool zero = true;
        for (const auto& f : forms)
          if (f.eval(pw, stride) != 0) {
            zero = false;
            break;
          }
        if (zero) visit(acc, x);
      }
      return acc;
    });
    for (auto& a : parts) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace detail

/// Common zeros in P^k(F_{p^n}) as coordinate codes, in canonical order.
inline std::vector<std::vector<std::uint64_t>> projective_zeros(const std::vector<MPoly<FiniteField>>& fs, unsigned n,
                                                                const CountOptions& opts = {}) {
  using Pts = std::vector<std::vector<std::uint64_t>>;
  Pts out;
  for (auto& part : detail::scan_projective_zeros<Pts>(fs, n, opts, [](Pts& acc, const std::vector<std::uint64_t>& x) { acc.push_back(x); }))
    for (auto& x : part) out.push_back(std::move(x));
  return out;
}

}  // namespace k3pic
