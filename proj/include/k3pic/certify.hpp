#pragma once

// Seeded search drivers, lifts to Z, and the two rank-one certification
// pipelines with a replaying verifier.

#include "k3pic/geommodels.hpp"
#include "k3pic/groebner.hpp"
#include "k3pic/linescan.hpp"
#include "k3pic/modelio.hpp"
#include "k3pic/zeta.hpp"

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace k3pic {

struct SearchConfig {
  std::uint64_t p = 5;
  std::uint64_t seed = 1;
  /// Sampled coefficients lie in [0, coeff_range) before reduction; 0 means all of F_p.
  std::uint64_t coeff_range = 0;
  CountOptions counting{std::uint64_t{1} << 36, 0};
  unsigned max_ext = 1;
  ClosureOptions closure{};
  /// Lifts add p * r with r uniform in [-lift_spread, lift_spread].
  long lift_spread = 0;

  void validate() const {
    if (p < 3 || !is_prime(p)) throw Error(Errc::NotPrime, "search prime must be an odd prime");
    if (counting.budget == 0) throw Error(Errc::InvalidArgument, "counting budget must be positive");
    if (max_ext == 0) throw Error(Errc::InvalidArgument, "max_ext must be positive");
    if (lift_spread < 0) throw Error(Errc::InvalidArgument, "lift spread must be non-negative");
  }
};

namespace detail {

/// Exponent vectors of degree d in n variables, lexicographically descending.
inline std::vector<Monomial> monomials_of_degree(int n, unsigned d) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, int i, unsigned left) -> void {
    if (i == n - 1) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

inline MPoly<FiniteField> random_form(const FiniteField& F, int n, unsigned d, std::uint64_t range, SplitMix64& g) {
  std::vector<MPoly<FiniteField>::Term> terms;
  const std::uint64_t r = range ? range : F.size();
  for (const auto& m : monomials_of_degree(n, d)) {
    const auto c = F.from_int(static_cast<long long>(g.below(r)));
    if (c) terms.push_back({m, c});
  }
  return MPoly<FiniteField>::from_terms(F, n, std::move(terms));
}

inline MPoly<IntegerRing> lift_form(const MPoly<FiniteField>& f, unsigned d, long k, SplitMix64& g) {
  if (!f.ring().is_prime_field()) throw Error(Errc::RingMismatch, "lifts need a prime field");
  const Integer P(static_cast<unsigned long>(f.ring().characteristic()));
  std::vector<MPoly<IntegerRing>::Term> terms;
  for (const auto& m : monomials_of_degree(f.nvars(), d)) {
    Integer c = centered_mod(Integer(static_cast<unsigned long>(f.coefficient(m))), P);
    if (k > 0) c += P * static_cast<long>(g.range(-k, k));
    if (c != 0) terms.push_back({m, c});
  }
  return MPoly<IntegerRing>::from_terms(IntegerRing{}, f.nvars(), std::move(terms));
}

// Lifts draw from a stream separate from sampling.
inline constexpr std::uint64_t kLiftStream = 0x6c696674ull;

}  // namespace detail

/// f2, f3 containing V(x0, x1, x2), sampled piecewise from the decomposition.
inline Degree6Pair<FiniteField> random_degree6_with_line(const SearchConfig& cfg) {
  cfg.validate();
  FiniteField F(cfg.p);
  SplitMix64 g(cfg.seed);
  auto form = [&](unsigned d) { return detail::random_form(F, 3, d, cfg.coeff_range, g); };
  LineDecomposition<FiniteField> d;
  d.l0 = form(1);
  d.l1 = form(1);
  d.l00 = form(1);
  d.l01 = form(1);
  d.l11 = form(1);
  d.q = form(2);
  d.q0 = form(2);
  d.q1 = form(2);
  d.c = form(3);
  return d.reassemble();
}

inline QuadricNet<FiniteField> random_net(const SearchConfig& cfg) {
  cfg.validate();
  FiniteField F(cfg.p);
  SplitMix64 g(cfg.seed);
  QuadricNet<FiniteField> n;
  for (auto& q : n.q) q = detail::random_form(F, 6, 2, cfg.coeff_range, g);
  return n;
}

inline Degree6Pair<IntegerRing> lift_model(const Degree6Pair<FiniteField>& m, const SearchConfig& cfg) {
  SplitMix64 g(derive_seed(cfg.seed, detail::kLiftStream));
  Degree6Pair<IntegerRing> out;
  out.f2 = detail::lift_form(m.f2, 2, cfg.lift_spread, g);
  out.f3 = detail::lift_form(m.f3, 3, cfg.lift_spread, g);
  return out;
}

inline QuadricNet<IntegerRing> lift_model(const QuadricNet<FiniteField>& m, const SearchConfig& cfg) {
  SplitMix64 g(derive_seed(cfg.seed, detail::kLiftStream));
  QuadricNet<IntegerRing> out;
  for (int i = 0; i < 3; ++i) out.q[i] = detail::lift_form(m.q[i], 2, cfg.lift_spread, g);
  return out;
}

/// Centered z with z = x mod p and z = y mod q.
inline std::vector<Integer> crt_interpolate_lift(const std::vector<std::uint64_t>& x, std::uint64_t p,
                                                 const std::vector<std::uint64_t>& y, std::uint64_t q) {
  if (p == q) throw Error(Errc::EqualPrimes, "CRT needs two distinct primes");
  if (!is_prime(p) || !is_prime(q)) throw Error(Errc::NotPrime, "CRT moduli must be prime");
  if (x.size() != y.size()) throw Error(Errc::DimensionMismatch, "coefficient vectors differ in length");
  const Integer P(static_cast<unsigned long>(p)), Q(static_cast<unsigned long>(q)), PQ = P * Q;
  Integer pinv;
  mpz_invert(pinv.get_mpz_t(), P.get_mpz_t(), Q.get_mpz_t());
  std::vector<Integer> z;
  z.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Integer xi(static_cast<unsigned long>(x[i] % p)), yi(static_cast<unsigned long>(y[i] % q));
    // z = x + p * ((y - x) / p mod q)
    Integer t = ((yi - xi) * pinv) % Q;
    if (t < 0) t += Q;
    z.push_back(centered_mod(xi + P * t, PQ));
  }
  return z;
}

/// Coefficientwise CRT of two forms of the same shape over F_p and F_q.
inline MPoly<IntegerRing> crt_interpolate_lift(const MPoly<FiniteField>& a, const MPoly<FiniteField>& b) {
  if (a.nvars() != b.nvars()) throw Error(Errc::WrongVariableCount, "forms in different variable counts");
  if (!a.ring().is_prime_field() || !b.ring().is_prime_field()) throw Error(Errc::RingMismatch, "CRT needs prime fields");
  std::vector<Monomial> mons;
  for (const auto& t : a.terms()) mons.push_back(t.m);
  for (const auto& t : b.terms()) mons.push_back(t.m);
  std::sort(mons.begin(), mons.end(), [](const Monomial& x, const Monomial& y) { return grevlex_cmp(x, y) < 0; });
  mons.erase(std::unique(mons.begin(), mons.end(), [](const Monomial& x, const Monomial& y) { return grevlex_cmp(x, y) == 0; }),
             mons.end());
  std::vector<std::uint64_t> x, y;
  for (const auto& m : mons) {
    x.push_back(a.coefficient(m));
    y.push_back(b.coefficient(m));
  }
  const auto z = crt_interpolate_lift(x, a.ring().characteristic(), y, b.ring().characteristic());
  std::vector<MPoly<IntegerRing>::Term> terms;
  for (std::size_t i = 0; i < mons.size(); ++i)
    if (z[i] != 0) terms.push_back({mons[i], z[i]});
  return MPoly<IntegerRing>::from_terms(IntegerRing{}, a.nvars(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Search drivers. Iteration i uses derive_seed(seed, i).

struct Degree6Candidate {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  Degree6Pair<FiniteField> pair;
  MPoly<FiniteField> g6;
};

/// First sample whose reduction and branch sextic are both smooth.
inline std::optional<Degree6Candidate> search_degree6(const SearchConfig& cfg, std::uint64_t max_tries) {
  cfg.validate();
  for (std::uint64_t i = 0; i < max_tries; ++i) {
    SearchConfig c = cfg;
    c.seed = derive_seed(cfg.seed, i);
    auto pair = random_degree6_with_line(c);
    if (pair.f2.is_zero() || pair.f3.is_zero()) continue;
    if (!smoothness_check(pair.polys(), 4, cfg.closure.groebner)) continue;
    MPoly<FiniteField> g6;
    try {
      g6 = branch_sextic(decompose_containing_line(pair)).g6;
    } catch (const Error& e) {
      if (e.code() == Errc::ZeroSextic) continue;
      throw;
    }
    if (!smoothness_check(std::vector<MPoly<FiniteField>>{g6}, 2, cfg.closure.groebner)) continue;
    return Degree6Candidate{i, c.seed, std::move(pair), std::move(g6)};
  }
  return std::nullopt;
}

struct Degree8Candidate {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  QuadricNet<FiniteField> net;
  MPoly<FiniteField> g6;
  TritangentHit tritangent;
};

/// First sample with smooth X_p, smooth discriminant sextic and a split
/// tritangent over F_p.
inline std::optional<Degree8Candidate> search_degree8(const SearchConfig& cfg, std::uint64_t max_tries) {
  cfg.validate();
  for (std::uint64_t i = 0; i < max_tries; ++i) {
    SearchConfig c = cfg;
    c.seed = derive_seed(cfg.seed, i);
    auto net = random_net(c);
    if (std::any_of(net.q.begin(), net.q.end(), [](const auto& q) { return q.is_zero(); })) continue;
    auto g6 = disc_sextic(net).g6;
    if (g6.is_zero() || !smoothness_check(std::vector<MPoly<FiniteField>>{g6}, 2, cfg.closure.groebner)) continue;
    if (!smoothness_check(net.polys(), 5, cfg.closure.groebner)) continue;
    ScanOptions so{1, cfg.counting.budget, cfg.counting.threads, true};
    auto hits = tritangent_scan(g6, so);
    if (hits.empty()) continue;
    return Degree8Candidate{i, c.seed, std::move(net), std::move(g6), hits.front()};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Certificates.

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Sectioned "key value" text closed by a content hash over the canonical body.
struct Certificate {
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  std::vector<Section> sections;
  /// Hex digest as recorded; set by seal() or parse().
  std::string hash;

  static constexpr const char* kSectionNames[4] = {"model", "reduction", "evidence", "conclusion"};

  Section& section(const std::string& name) {
    for (auto& s : sections)
      if (s.name == name) return s;
    sections.push_back({name, {}});
    return sections.back();
  }
  void add(const std::string& sec, const std::string& key, const std::string& value) {
    section(sec).entries.emplace_back(key, value);
  }
  const std::string* find(const std::string& sec, const std::string& key) const {
    for (const auto& s : sections)
      if (s.name == sec)
        for (const auto& [k, v] : s.entries)
          if (k == key) return &v;
    return nullptr;
  }
  std::string get(const std::string& sec, const std::string& key) const {
    const auto* v = find(sec, key);
    if (!v) throw Error(Errc::ParseError, "missing " + sec + "." + key);
    return *v;
  }
  std::vector<std::string> all(const std::string& sec, const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& s : sections)
      if (s.name == sec)
        for (const auto& [k, v] : s.entries)
          if (k == key) out.push_back(v);
    return out;
  }
  bool concluded() const {
    const auto* s = find("conclusion", "status");
    return s && *s == "proved";
  }
  std::string diagnosis() const {
    const auto* d = find("conclusion", "diagnosis");
    return d ? *d : std::string{};
  }
  int degree() const {
    const auto* d = find("model", "degree");
    return d && (*d == "6" || *d == "8") ? std::stoi(*d) : 0;
  }

  std::string body() const {
    std::string out;
    for (std::size_t i = 0; i < sections.size(); ++i) {
      if (i) out += "\n";
      out += "[" + sections[i].name + "]\n";
      for (const auto& [k, v] : sections[i].entries) out += k + " " + v + "\n";
    }
    return out;
  }
  void seal() { hash = hex64(fnv1a64(body())); }
  std::string to_string() const { return body() + "\nhash fnv1a64 " + hash + "\n"; }

  static Certificate parse(const std::string& text) {
    Certificate c;
    std::istringstream in(text);
    std::string line;
    bool sealed = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto fail = [&](const std::string& why) {
        return Error(Errc::ParseError, "certificate line " + std::to_string(lineno) + ": " + why);
      };
      if (sealed) throw fail("content after the hash line");
      if (line.front() == '[') {
        if (line.back() != ']' || line.size() < 3) throw fail("malformed section header");
        const auto name = line.substr(1, line.size() - 2);
        for (const auto& s : c.sections)
          if (s.name == name) throw fail("duplicate section [" + name + "]");
        c.sections.push_back({name, {}});
        continue;
      }
      const auto sp = line.find(' ');
      if (sp == std::string::npos || sp == 0) throw fail("expected 'key value'");
      const auto key = line.substr(0, sp), value = line.substr(sp + 1);
      if (key == "hash") {
        if (value.rfind("fnv1a64 ", 0) != 0) throw fail("unsupported hash");
        c.hash = value.substr(8);
        if (c.hash.size() != 16 || c.hash.find_first_not_of("0123456789abcdef") != std::string::npos)
          throw fail("malformed digest");
        sealed = true;
        continue;
      }
      if (c.sections.empty()) throw fail("entry outside any section");
      c.sections.back().entries.emplace_back(key, value);
    }
    if (!sealed) throw Error(Errc::ParseError, "certificate has no hash line");
    return c;
  }
};

enum class WeilProvenance { Reconstructed, ReferenceSupplied, UserSupplied };

inline const char* weil_provenance_name(WeilProvenance w) {
  switch (w) {
    case WeilProvenance::Reconstructed: return "reconstructed";
    case WeilProvenance::ReferenceSupplied: return "reference-supplied";
    case WeilProvenance::UserSupplied: return "user-supplied";
  }
  return "?";
}

inline std::optional<WeilProvenance> parse_weil_provenance(const std::string& s) {
  if (s == "reconstructed") return WeilProvenance::Reconstructed;
  if (s == "reference-supplied") return WeilProvenance::ReferenceSupplied;
  if (s == "user-supplied") return WeilProvenance::UserSupplied;
  return std::nullopt;
}

struct WeilSource {
  WeilProvenance provenance = WeilProvenance::Reconstructed;
  std::optional<WeilPolynomial> polynomial;
  /// Counts cache used when reconstructing; empty for none.
  std::string counts_cache;

  static WeilSource reconstructed(std::string cache = {}) { return {WeilProvenance::Reconstructed, std::nullopt, std::move(cache)}; }
  static WeilSource supplied(WeilPolynomial w, WeilProvenance prov = WeilProvenance::UserSupplied) {
    return {prov, std::move(w), {}};
  }
};

/// Reads a Weil polynomial in t, or the ascending coefficient list c0 .. c22.
inline WeilPolynomial parse_weil_polynomial(std::uint64_t p, const std::string& text) {
  std::string s = text;
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ' || s.back() == '\r')) s.pop_back();
  if (s.find('t') == std::string::npos) {
    std::istringstream in(s);
    std::vector<Integer> c;
    std::string tok;
    while (in >> tok) {
      Integer v;
      if (v.set_str(tok, 10) != 0) throw Error(Errc::ParseError, "bad coefficient '" + tok + "'");
      c.push_back(v);
    }
    return WeilPolynomial::from_coefficients(p, std::move(c));
  }
  auto f = parse_mpoly(IntegerRing{}, s, Alphabet::univariate(), 1);
  return WeilPolynomial::from_coefficients(p, to_dense(f));
}

namespace detail {

inline const char* kJustification6 =
    "X_p is smooth with a line so NS(X_p-bar) contains ((6,1),(1,-2)) and the rank bound gives rho(X_p-bar) = 2; "
    "specialization embeds NS(X-bar) with torsion-free cokernel for p > 2, so rho(X-bar) = 2 would put the line "
    "class in NS(X-bar) and force a line on X over Q-bar; X has none, hence rho(X-bar) = 1";

inline const char* kJustification8 =
    "the discriminant double cover Y_p is smooth with a split tritangent so NS(Y_p-bar) contains ((2,1),(1,-2)) "
    "and the rank bound gives rho(Y_p-bar) = 2; the branch sextic of Y has no tritangent line over Q-bar, so "
    "rho(Y-bar) = 1 by specialization; rho(X-bar) = rho(Y-bar) for a net of quadrics and its discriminant "
    "double cover (external theorem, cited not verified)";

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string rows_string(const LineInPn& L) {
  std::string s;
  for (int r = 0; r < 2; ++r) {
    if (r) s += " ;";
    for (auto x : L.rows[r]) s += (s.empty() ? "" : " ") + std::to_string(x);
  }
  return s;
}

inline std::string images_string(const std::vector<MPoly<FiniteField>>& img) {
  std::string s;
  for (std::size_t i = 0; i < img.size(); ++i) s += (i ? " ; " : "") + img[i].to_string(Alphabet::projective(4));
  return s;
}

inline std::string list_string(const std::vector<std::uint64_t>& v) {
  if (v.empty()) return "none";
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

inline std::string profile_string(const std::vector<unsigned>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s.empty() ? "none" : s;
}

inline std::string ints_string(const std::vector<Integer>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x.get_str();
  return s;
}

inline bool is_default_closure(const ClosureOptions& o) {
  const ClosureOptions d{};
  return o.primes == d.primes && o.witness_box == d.witness_box && o.direct_fallback == d.direct_fallback &&
         o.groebner.max_degree == d.groebner.max_degree && o.groebner.max_pairs == d.groebner.max_pairs;
}

/// Non-default closure options are recorded so the verifier replays them.
inline void record_closure(Certificate& c, const ClosureOptions& o) {
  if (is_default_closure(o)) return;
  c.add("evidence", "closure_primes", list_string(o.primes));
  c.add("evidence", "closure_witness_box", std::to_string(o.witness_box));
  c.add("evidence", "closure_direct", yes_no(o.direct_fallback));
  c.add("evidence", "closure_groebner", std::to_string(o.groebner.max_degree) + " " + std::to_string(o.groebner.max_pairs));
}

inline std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string::npos || (s.size() > 1 && s[0] == '0'))
    throw Error(Errc::ParseError, "bad unsigned integer '" + s + "'");
  return std::stoull(s);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline ClosureOptions recorded_closure(const Certificate& c) {
  ClosureOptions o;
  const auto* pr = c.find("evidence", "closure_primes");
  if (!pr) return o;
  o.primes.clear();
  for (const auto& t : split_ws(*pr)) o.primes.push_back(parse_u64(t));
  o.witness_box = static_cast<int>(parse_u64(c.get("evidence", "closure_witness_box")));
  const auto d = c.get("evidence", "closure_direct");
  if (d != "yes" && d != "no") throw Error(Errc::ParseError, "bad closure_direct");
  o.direct_fallback = d == "yes";
  const auto g = split_ws(c.get("evidence", "closure_groebner"));
  if (g.size() != 2) throw Error(Errc::ParseError, "bad closure_groebner");
  o.groebner.max_degree = static_cast<unsigned>(parse_u64(g[0]));
  o.groebner.max_pairs = parse_u64(g[1]);
  return o;
}

struct StageError {
  int stage;
  std::string label;
  std::string message;
};

inline void conclude_incomplete(Certificate& c, const StageError& e) {
  c.add("conclusion", "status", "incomplete");
  c.add("conclusion", "diagnosis", "stage " + std::to_string(e.stage) + " (" + e.label + "): " + e.message);
}

/// Twist of s^2 = lambda g6 realising V(fs), by comparing counts at odd n
/// (over even extensions both twists agree).
struct TwistNote {
  std::string twist = "undetermined";
  unsigned n = 1;
  std::string model_count = "unavailable";
  Integer plain = 0, twisted = 0;
};

inline TwistNote determine_twist(const Degree6Pair<FiniteField>& pair, const MPoly<FiniteField>& g6, const CountOptions& opts) {
  const FiniteField& F = g6.ring();
  const auto nr = F.nonresidue();
  TwistNote t;
  for (unsigned n : {1u, 3u}) {
    Integer model;
    try {
      model = count_complete_intersection_p4(pair, n, opts);
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
      if (n == 1) {
        t.plain = count_double_cover(DoubleCoverModel<FiniteField>::direct(g6, 1), 1, opts);
        t.twisted = count_double_cover(DoubleCoverModel<FiniteField>::direct(g6, nr), 1, opts);
      }
      break;
    }
    const Integer plain = count_double_cover(DoubleCoverModel<FiniteField>::direct(g6, 1), n, opts);
    const Integer twisted = count_double_cover(DoubleCoverModel<FiniteField>::direct(g6, nr), n, opts);
    t = TwistNote{};
    t.n = n;
    t.plain = plain;
    t.twisted = twisted;
    t.model_count = model.get_str();
    if (plain == twisted) continue;
    if (model == plain) t.twist = "1";
    else if (model == twisted) t.twist = std::to_string(nr);
    else t.twist = "inconsistent";
    break;
  }
  return t;
}

/// chi of the scalar c in g6|L = c h^2, read off the leading s-coefficient.
inline bool tritangent_scalar_is_square(const MPoly<FiniteField>& g6, const LineInP2& L) {
  const auto b = restrict_to_line(g6, L.c);
  if (b.is_zero()) throw Error(Errc::InvalidArgument, "line lies in the branch curve");
  const auto* lead = &b.terms().front();
  for (const auto& t : b.terms())
    if (t.m.e[0] > lead->m.e[0]) lead = &t;
  const FiniteField& F = b.ring();
  return F.pow(lead->c, (F.size() - 1) / 2) == 1;
}

/// Weil polynomial from counts of the double plane s^2 = lambda g6. Tries
/// the known factors in order; one more count settles an ambiguous sign.
inline std::pair<WeilPolynomial, PointCounts> reconstruct_from_model(const DoubleCoverModel<FiniteField>& model,
                                                                    const std::vector<KnownFactor>& knowns,
                                                                    const std::string& cache, const CountOptions& opts) {
  constexpr unsigned D = WeilPolynomial::kDegree;
  std::string last = "no known factor fits the counts";
  for (const auto& known : knowns) {
    unsigned m = (D - known.degree()) / 2;
    for (;;) {
      const auto pc = count_double_cover_cached(model, m, cache, opts);
      std::vector<WeilPolynomial> cands;
      try {
        cands = reconstruct_weil(pc, known);
      } catch (const Error& e) {
        if (e.code() != Errc::NoCandidate) throw;
        last = e.what();
        break;
      }
      if (cands.size() == 1) return {cands.front(), pc};
      if (m >= D / 2 + 1) throw Error(Errc::NoCandidate, "sign undetermined even with N_1..N_" + std::to_string(m));
      ++m;
    }
  }
  throw Error(Errc::NoCandidate, last);
}

inline void record_weil(Certificate& c, const WeilPolynomial& w, WeilProvenance prov, const KnownFactor& known,
                        const std::optional<PointCounts>& counts, const std::string& count_twist) {
  c.add("evidence", "weil_provenance", weil_provenance_name(prov));
  if (counts) {
    c.add("evidence", "weil_count_twist", count_twist);
    for (const auto& [n, N] : counts->counts) c.add("evidence", "count", std::to_string(n) + " " + N.get_str());
  }
  c.add("evidence", "weil", w.to_string());
  c.add("evidence", "weil_sign", std::to_string(w.sign));
  c.add("evidence", "known_factor", known.to_string(w.p));
}

/// Validation, known factor and rank bound: the Weil and rank stages.
inline void weil_links(Certificate& c, WeilPolynomial& w, const KnownFactor& known, int weil_stage, int rank_stage) {
  const auto v = validate_weil(w);
  if (!v.ok()) {
    std::string why;
    for (const auto& f : v.failures) why += (why.empty() ? "" : "; ") + f;
    throw StageError{weil_stage, "weil", why};
  }
  w.sign = v.sign;
  try {
    divide_known_factor(w, known);
  } catch (const Error&) {
    throw StageError{weil_stage, "weil", "known factor " + known.to_string(w.p) + " does not divide the Weil polynomial"};
  }
  c.add("evidence", "weil_validation", "ok");
  const auto rep = cyclotomic_rank_bound(w);
  c.add("evidence", "rank_bound", std::to_string(rep.rank_bound));
  c.add("evidence", "cyclotomic", rep.to_string());
  if (rep.rank_bound != 2) throw StageError{rank_stage, "rank", "rank bound is " + std::to_string(rep.rank_bound) + ", not 2"};
}

inline WeilPolynomial supplied_weil(const WeilSource& src, std::uint64_t p, int stage) {
  if (!src.polynomial) throw StageError{stage, "weil", "no Weil polynomial supplied"};
  WeilPolynomial w = *src.polynomial;
  if (w.p != p) throw StageError{stage, "weil", "supplied Weil polynomial is for p = " + std::to_string(w.p)};
  return w;
}

}  // namespace detail

/// Degree-6 chain: good reduction, a line mod p, smooth branch curve, Weil
/// polynomial with rank bound 2, no lines over Q-bar.
inline Certificate certify_degree6(const Degree6Pair<IntegerRing>& pair, std::uint64_t p, const SearchConfig& cfg,
                                   const WeilSource& src) {
  using detail::StageError;
  Certificate c;
  for (const char* name : Certificate::kSectionNames) c.section(name);
  c.add("model", "degree", "6");
  c.add("model", "kind", "pair");
  c.add("model", "ring", "Z");
  c.add("model", "f2", pair.f2.to_string(Alphabet::projective(4)));
  c.add("model", "f3", pair.f3.to_string(Alphabet::projective(4)));
  int stage = 1;
  std::string label = "reduction";
  try {
    if (p < 3 || !is_prime(p)) throw StageError{1, label, "p must be an odd prime"};
    c.add("reduction", "prime", std::to_string(p));
    const FiniteField F(p);
    const auto pp = Degree6Pair<FiniteField>::from(reduce_mod(pair.f2, F), reduce_mod(pair.f3, F));
    const bool smooth = smoothness_check(pp.polys(), 4, cfg.closure.groebner);
    c.add("reduction", "smooth_model", detail::yes_no(smooth));
    if (!smooth) throw StageError{1, label, "X_p is singular"};

    stage = 2;
    label = "line mod p";
    const LineInPn standard = LineInPn::through(F, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1});
    std::optional<LineInPn> line;
    if (line_lies_on(pp.polys(), standard)) {
      line = standard;
    } else {
      ScanOptions so{1, cfg.counting.budget, cfg.counting.threads, true};
      const auto hits = lines_on_surface_scan(pp.polys(), 4, so);
      if (hits.empty()) throw StageError{2, label, "X_p contains no line over F_p"};
      line = hits.front().line;
    }
    c.add("reduction", "line", detail::rows_string(*line));
    Degree6Pair<FiniteField> moved = pp;
    if (*line == standard) {
      c.add("reduction", "change", "identity");
    } else {
      const auto img = line_to_standard_change(F, *line);
      c.add("reduction", "change", detail::images_string(img));
      moved = Degree6Pair<FiniteField>{pp.f2.substitute(img), pp.f3.substitute(img)};
    }

    stage = 3;
    label = "branch";
    const auto dec = decompose_containing_line(moved);
    const auto g6 = branch_sextic(dec).g6;
    c.add("reduction", "branch_sextic", g6.to_string(Alphabet::plane()));
    const bool smooth_d = smoothness_check(std::vector<MPoly<FiniteField>>{g6}, 2, cfg.closure.groebner);
    c.add("reduction", "smooth_branch", detail::yes_no(smooth_d));
    if (!smooth_d) throw StageError{3, label, "branch sextic is singular"};
    const auto tw = detail::determine_twist(pp, g6, cfg.counting);
    c.add("reduction", "twist", tw.twist);
    c.add("reduction", "twist_degree", std::to_string(tw.n));
    c.add("reduction", "twist_count_model", tw.model_count);
    c.add("reduction", "twist_count_plain", tw.plain.get_str());
    c.add("reduction", "twist_count_twisted", tw.twisted.get_str());
    if (tw.twist == "inconsistent") throw StageError{3, label, "X_p count matches neither twist"};
    c.add("reduction", "lattice", LatticeStamp(6, 1, -2).to_string());

    stage = 4;
    label = "weil";
    const bool twist_known = tw.twist != "undetermined";
    const std::vector<KnownFactor> knowns = twist_known ? std::vector<KnownFactor>{{2, 0}} : std::vector<KnownFactor>{{2, 0}, {1, 1}};
    WeilPolynomial w;
    KnownFactor known{2, 0};
    std::optional<PointCounts> counts;
    std::string count_twist = twist_known ? tw.twist : "1";
    if (src.provenance == WeilProvenance::Reconstructed) {
      const auto lambda = F.from_integer(Integer(count_twist));
      auto [rw, pc] = detail::reconstruct_from_model(DoubleCoverModel<FiniteField>::direct(g6, lambda), knowns,
                                                     src.counts_cache, cfg.counting);
      w = rw;
      known = rw.known;
      counts = pc;
    } else {
      w = detail::supplied_weil(src, p, 4);
      if (!twist_known) {
        bool fits = false;
        for (const auto& k : knowns) {
          try {
            divide_known_factor(w, k);
            known = k;
            fits = true;
            break;
          } catch (const Error&) {
          }
        }
        if (!fits) known = knowns.front();
      }
    }
    w.sign = validate_weil(w, false).sign;
    detail::record_weil(c, w, src.provenance, known, counts, count_twist);
    detail::weil_links(c, w, known, 4, 5);

    stage = 6;
    label = "lines over Q-bar";
    detail::record_closure(c, cfg.closure);
    const auto rep = lines_free_report(pair.polys(), 4, cfg.closure);
    c.add("evidence", "lines_free", detail::yes_no(rep.lines_free));
    c.add("evidence", "lines_free_method", closure_method_name(rep.method));
    if (rep.method == ClosureMethod::Specialization) c.add("evidence", "lines_free_prime", std::to_string(rep.prime));
    if (rep.method == ClosureMethod::RationalWitness) {
      const auto rows = chart_rows(4, rep.witness_chart, rep.witness);
      c.add("evidence", "lines_witness", detail::ints_string(rows[0]) + " ; " + detail::ints_string(rows[1]));
    }
    if (!rep.lines_free) throw StageError{6, label, "X contains a line over Q-bar"};
  } catch (const StageError& e) {
    detail::conclude_incomplete(c, e);
    c.seal();
    return c;
  } catch (const Error& e) {
    detail::conclude_incomplete(c, {stage, label, e.what()});
    c.seal();
    return c;
  }
  c.add("conclusion", "status", "proved");
  c.add("conclusion", "rank", "1");
  c.add("conclusion", "justification", detail::kJustification6);
  c.seal();
  return c;
}

/// Degree-8 chain through the discriminant double cover.
inline Certificate certify_degree8(const QuadricNet<IntegerRing>& net, std::uint64_t p, const SearchConfig& cfg,
                                   const WeilSource& src) {
  using detail::StageError;
  Certificate c;
  for (const char* name : Certificate::kSectionNames) c.section(name);
  c.add("model", "degree", "8");
  c.add("model", "kind", "net");
  c.add("model", "ring", "Z");
  for (int i = 0; i < 3; ++i) c.add("model", "q" + std::to_string(i), net.q[i].to_string(Alphabet::projective(5)));
  int stage = 1;
  std::string label = "reduction";
  try {
    if (p < 3 || !is_prime(p)) throw StageError{1, label, "p must be an odd prime"};
    c.add("reduction", "prime", std::to_string(p));
    const FiniteField F(p);
    std::vector<MPoly<FiniteField>> qs;
    for (const auto& q : net.q) qs.push_back(reduce_mod(q, F));
    const auto np = QuadricNet<FiniteField>::from(qs);
    const bool smooth = smoothness_check(np.polys(), 5, cfg.closure.groebner);
    c.add("reduction", "smooth_model", detail::yes_no(smooth));
    if (!smooth) throw StageError{1, label, "X_p is singular"};
    const auto g6 = disc_sextic(np).g6;
    if (g6.is_zero()) throw StageError{1, label, "discriminant vanishes identically mod p"};
    c.add("reduction", "branch_sextic", g6.to_string(Alphabet::plane()));
    const bool smooth_d = smoothness_check(std::vector<MPoly<FiniteField>>{g6}, 2, cfg.closure.groebner);
    c.add("reduction", "smooth_branch", detail::yes_no(smooth_d));
    if (!smooth_d) throw StageError{1, label, "discriminant sextic is singular"};

    stage = 2;
    label = "tritangent mod p";
    ScanOptions so{cfg.max_ext, cfg.counting.budget, cfg.counting.threads, true};
    const auto hits = tritangent_scan(g6, so);
    if (hits.empty()) throw StageError{2, label, "no split tritangent over F_{p^e}, e <= " + std::to_string(cfg.max_ext)};
    const auto& hit = hits.front();
    const FiniteField Fq = detail::extension_of(F, hit.ext);
    c.add("reduction", "tritangent", std::to_string(hit.ext) + " " + std::to_string(hit.line.c[0]) + " " +
                                         std::to_string(hit.line.c[1]) + " " + std::to_string(hit.line.c[2]));
    const auto g6q = hit.ext == 1 ? g6 : embed(g6, Fq);
    c.add("reduction", "tritangent_profile", detail::profile_string(tritangent_check(g6q, hit.line).profile));
    // Over F_p the two components are rational exactly when c is a square.
    KnownFactor known{1, 0};
    if (hit.ext == 1) {
      const bool sq = detail::tritangent_scalar_is_square(g6, hit.line);
      c.add("reduction", "tritangent_scalar_square", detail::yes_no(sq));
      known = sq ? KnownFactor{2, 0} : KnownFactor{1, 1};
    }
    c.add("reduction", "lattice", LatticeStamp(2, 1, -2).to_string());

    stage = 3;
    label = "weil";
    WeilPolynomial w;
    std::optional<PointCounts> counts;
    if (src.provenance == WeilProvenance::Reconstructed) {
      auto [rw, pc] = detail::reconstruct_from_model(DoubleCoverModel<FiniteField>::direct(g6, 1), {known},
                                                     src.counts_cache, cfg.counting);
      w = rw;
      counts = pc;
    } else {
      w = detail::supplied_weil(src, p, 3);
    }
    w.sign = validate_weil(w, false).sign;
    detail::record_weil(c, w, src.provenance, known, counts, "1");
    detail::weil_links(c, w, known, 3, 3);

    stage = 4;
    label = "tritangents over Q-bar";
    detail::record_closure(c, cfg.closure);
    const auto gz = disc_sextic(net).g6;
    const auto rep = tritangent_free_report(gz, cfg.closure);
    c.add("evidence", "tritangent_free", detail::yes_no(rep.tritangent_free));
    c.add("evidence", "tritangent_free_method", closure_method_name(rep.method));
    if (rep.method == ClosureMethod::Specialization) {
      c.add("evidence", "tritangent_free_prime", std::to_string(rep.prime));
      c.add("evidence", "tritangent_free_skipped", detail::list_string(rep.skipped));
    }
    if (rep.method == ClosureMethod::RationalWitness)
      c.add("evidence", "tritangent_witness", detail::ints_string({rep.witness.begin(), rep.witness.end()}));
    if (!rep.tritangent_free) throw StageError{4, label, "the branch sextic over Q has a tritangent line"};
  } catch (const StageError& e) {
    detail::conclude_incomplete(c, e);
    c.seal();
    return c;
  } catch (const Error& e) {
    detail::conclude_incomplete(c, {stage, label, e.what()});
    c.seal();
    return c;
  }
  c.add("conclusion", "status", "proved");
  c.add("conclusion", "rank", "1");
  c.add("conclusion", "justification", detail::kJustification8);
  c.seal();
  return c;
}

// ---------------------------------------------------------------------------
// Verification.

struct VerifyResult {
  bool ok = false;
  /// "link: reason" for the first check that failed.
  std::string broken_link;
  explicit operator bool() const { return ok; }
};

namespace detail {

struct LinkFailure {
  std::string link, reason;
};

inline void require(bool cond, const char* link, const std::string& reason) {
  if (!cond) throw LinkFailure{link, reason};
}

inline void expect_equal(const std::string& recorded, const std::string& recomputed, const char* link, const std::string& what) {
  require(recorded == recomputed, link, what + " differs from the recomputed value");
}

inline void check_schema(const Certificate& c) {
  require(c.sections.size() == 4, "schema", "expected sections [model] [reduction] [evidence] [conclusion]");
  for (int i = 0; i < 4; ++i)
    require(c.sections[i].name == Certificate::kSectionNames[i], "schema",
            "section " + std::to_string(i + 1) + " must be [" + Certificate::kSectionNames[i] + "]");
  const int d = c.degree();
  require(d == 6 || d == 8, "schema", "degree must be 6 or 8");
  auto once = [&](const char* sec, const char* key) {
    require(c.all(sec, key).size() == 1, "schema", std::string(sec) + "." + key + " must appear exactly once");
  };
  const auto* status = c.find("conclusion", "status");
  require(status && (*status == "proved" || *status == "incomplete"), "schema", "conclusion.status must be proved or incomplete");
  require(*status == "proved", "conclusion", "certificate carries no conclusion: " + c.diagnosis());
  std::vector<std::pair<const char*, const char*>> keys = {
      {"model", "degree"},        {"model", "kind"},           {"model", "ring"},
      {"reduction", "prime"},     {"reduction", "smooth_model"}, {"reduction", "branch_sextic"},
      {"reduction", "smooth_branch"}, {"reduction", "lattice"},  {"evidence", "weil_provenance"},
      {"evidence", "weil"},       {"evidence", "weil_sign"},   {"evidence", "known_factor"},
      {"evidence", "weil_validation"}, {"evidence", "rank_bound"}, {"evidence", "cyclotomic"},
      {"conclusion", "status"},   {"conclusion", "rank"},      {"conclusion", "justification"}};
  if (d == 6) {
    for (auto k : {"f2", "f3"}) keys.push_back({"model", k});
    for (auto k : {"line", "change", "twist", "twist_degree", "twist_count_model", "twist_count_plain", "twist_count_twisted"})
      keys.push_back({"reduction", k});
    for (auto k : {"lines_free", "lines_free_method"}) keys.push_back({"evidence", k});
  } else {
    for (auto k : {"q0", "q1", "q2"}) keys.push_back({"model", k});
    for (auto k : {"tritangent", "tritangent_profile"}) keys.push_back({"reduction", k});
    for (auto k : {"tritangent_free", "tritangent_free_method"}) keys.push_back({"evidence", k});
  }
  for (auto [s, k] : keys) once(s, k);
  require(!c.find("conclusion", "diagnosis"), "schema", "a proved certificate carries no diagnosis");
}

inline std::uint64_t recorded_prime(const Certificate& c) {
  std::uint64_t p = 0;
  try {
    p = parse_u64(c.get("reduction", "prime"));
  } catch (const Error&) {
    throw LinkFailure{"consistency", "bad prime"};
  }
  require(p >= 3 && is_prime(p), "consistency", "recorded p is not an odd prime");
  return p;
}

inline LineInPn parse_line_rows(const std::string& s, const FiniteField& F, int nv) {
  const auto tok = split_ws(s);
  require(static_cast<int>(tok.size()) == 2 * nv + 1 && tok[nv] == ";", "consistency", "malformed line rows");
  std::vector<std::uint64_t> a, b;
  for (int i = 0; i < nv; ++i) {
    a.push_back(parse_u64(tok[i]));
    b.push_back(parse_u64(tok[nv + 1 + i]));
  }
  for (auto x : a) require(x < F.size(), "consistency", "line coordinate outside F_p");
  for (auto x : b) require(x < F.size(), "consistency", "line coordinate outside F_p");
  const auto L = LineInPn::through(F, a, b);
  require(L.rows[0] == a && L.rows[1] == b, "consistency", "line rows are not in reduced echelon form");
  return L;
}

/// Weil and rank links shared by both degrees.
inline void check_weil(const Certificate& c, std::uint64_t p, const std::vector<KnownFactor>& allowed,
                       const std::optional<MPoly<FiniteField>>& count_g6) {
  const auto prov = parse_weil_provenance(c.get("evidence", "weil_provenance"));
  require(prov.has_value(), "weil", "unknown provenance");
  WeilPolynomial w;
  try {
    w = parse_weil_polynomial(p, c.get("evidence", "weil"));
  } catch (const Error& e) {
    throw LinkFailure{"weil", e.what()};
  }
  const auto v = validate_weil(w);
  require(v.functional_equation, "functional equation", "the Weil polynomial fails the functional equation");
  require(v.ok(), "weil", v.failures.empty() ? "" : v.failures.front());
  w.sign = v.sign;
  expect_equal(c.get("evidence", "weil_sign"), std::to_string(v.sign), "weil", "weil_sign");
  expect_equal(c.get("evidence", "weil_validation"), "ok", "weil", "weil_validation");
  const auto kf = c.get("evidence", "known_factor");
  const KnownFactor* known = nullptr;
  for (const auto& k : allowed)
    if (k.to_string(p) == kf) known = &k;
  require(known != nullptr, "weil", "known factor is not the one the reduction implies");
  try {
    divide_known_factor(w, *known);
  } catch (const Error&) {
    throw LinkFailure{"weil", "known factor does not divide the Weil polynomial"};
  }
  const bool reconstructed = *prov == WeilProvenance::Reconstructed;
  const auto counts = c.all("evidence", "count");
  require(reconstructed == !counts.empty(), "weil", "counts are recorded exactly for reconstructed polynomials");
  require(reconstructed == (c.find("evidence", "weil_count_twist") != nullptr), "weil", "count twist recorded exactly for reconstruction");
  if (reconstructed) {
    PointCounts pc;
    pc.p = p;
    for (const auto& s : counts) {
      const auto t = split_ws(s);
      require(t.size() == 2, "weil", "malformed count");
      Integer N;
      require(N.set_str(t[1], 10) == 0, "weil", "malformed count");
      try {
        pc.add(static_cast<unsigned>(parse_u64(t[0])), N);
      } catch (const Error& e) {
        throw LinkFailure{"weil", e.what()};
      }
    }
    std::vector<WeilPolynomial> cands;
    try {
      cands = reconstruct_weil(pc, *known);
    } catch (const Error& e) {
      throw LinkFailure{"weil", std::string("recorded counts do not reconstruct: ") + e.what()};
    }
    require(cands.size() == 1 && cands.front() == w, "weil", "recorded counts reconstruct a different polynomial");
    // Cheap counts (N_1 and N_2) are recounted outright.
    if (count_g6) {
      const auto& F = count_g6->ring();
      Integer lam;
      require(lam.set_str(c.get("evidence", "weil_count_twist"), 10) == 0 && lam > 0 && lam < static_cast<unsigned long>(p),
              "weil", "bad count twist");
      const auto model = DoubleCoverModel<FiniteField>::direct(*count_g6, F.from_integer(lam));
      for (unsigned n = 1; n <= 2 && pc.counts.count(n); ++n)
        require(count_double_cover(model, n) == pc.counts.at(n), "weil", "N_" + std::to_string(n) + " does not recount");
    }
  }
  const auto rep = cyclotomic_rank_bound(w);
  expect_equal(c.get("evidence", "rank_bound"), std::to_string(rep.rank_bound), "rank", "rank_bound");
  expect_equal(c.get("evidence", "cyclotomic"), rep.to_string(), "rank", "cyclotomic report");
  require(rep.rank_bound == 2, "rank", "rank bound is not 2");
}

inline void verify6(const Certificate& c) {
  // Consistency: the recorded reduction data follow from the model.
  expect_equal(c.get("model", "kind"), "pair", "consistency", "kind");
  expect_equal(c.get("model", "ring"), "Z", "consistency", "ring");
  Degree6Pair<IntegerRing> pair;
  try {
    pair = Degree6Pair<IntegerRing>::from(parse_mpoly(IntegerRing{}, c.get("model", "f2"), Alphabet::projective(4), 5),
                                          parse_mpoly(IntegerRing{}, c.get("model", "f3"), Alphabet::projective(4), 5));
  } catch (const Error& e) {
    throw LinkFailure{"consistency", e.what()};
  }
  const std::uint64_t p = recorded_prime(c);
  const FiniteField F(p);
  Degree6Pair<FiniteField> pp;
  try {
    pp = Degree6Pair<FiniteField>::from(reduce_mod(pair.f2, F), reduce_mod(pair.f3, F));
  } catch (const Error& e) {
    throw LinkFailure{"consistency", e.what()};
  }
  const auto L = parse_line_rows(c.get("reduction", "line"), F, 5);
  require(line_lies_on(pp.polys(), L), "consistency", "the recorded line does not lie on X_p");
  const LineInPn standard = LineInPn::through(F, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1});
  Degree6Pair<FiniteField> moved = pp;
  if (L == standard) {
    expect_equal(c.get("reduction", "change"), "identity", "consistency", "coordinate change");
  } else {
    const auto img = line_to_standard_change(F, L);
    expect_equal(c.get("reduction", "change"), images_string(img), "consistency", "coordinate change");
    moved = Degree6Pair<FiniteField>{pp.f2.substitute(img), pp.f3.substitute(img)};
  }
  MPoly<FiniteField> g6;
  try {
    g6 = branch_sextic(decompose_containing_line(moved)).g6;
  } catch (const Error& e) {
    throw LinkFailure{"consistency", e.what()};
  }
  expect_equal(c.get("reduction", "branch_sextic"), g6.to_string(Alphabet::plane()), "consistency", "branch sextic");
  expect_equal(c.get("reduction", "lattice"), LatticeStamp(6, 1, -2).to_string(), "consistency", "lattice stamp");

  // Twist note: character sums are recomputed, the X_p count is trusted.
  const unsigned n = static_cast<unsigned>(parse_u64(c.get("reduction", "twist_degree")));
  require(n == 1 || n == 3, "consistency", "twist degree must be 1 or 3");
  const auto nr = F.nonresidue();
  if (n == 3)
    require(count_double_cover(DoubleCoverModel<FiniteField>::direct(g6, 1), 1) ==
                count_double_cover(DoubleCoverModel<FiniteField>::direct(g6, nr), 1),
            "consistency", "degree-3 twist counts are only used when degree 1 is inconclusive");
  const Integer plain = count_double_cover(DoubleCoverModel<FiniteField>::direct(g6, 1), n);
  const Integer twisted = count_double_cover(DoubleCoverModel<FiniteField>::direct(g6, nr), n);
  expect_equal(c.get("reduction", "twist_count_plain"), plain.get_str(), "consistency", "plain twist count");
  expect_equal(c.get("reduction", "twist_count_twisted"), twisted.get_str(), "consistency", "twisted count");
  const auto mc = c.get("reduction", "twist_count_model");
  std::string expected_twist = "undetermined";
  if (mc != "unavailable") {
    Integer N;
    require(N.set_str(mc, 10) == 0 && N >= 0 && N.get_str() == mc, "consistency", "malformed model count");
    if (plain != twisted) {
      require(N == plain || N == twisted, "consistency", "model count matches neither twist");
      expected_twist = N == plain ? "1" : std::to_string(nr);
    }
  } else {
    require(n == 1, "consistency", "an unavailable count is recorded at degree 1");
  }
  expect_equal(c.get("reduction", "twist"), expected_twist, "consistency", "twist");

  // Evidence: smoothness recomputed mod p.
  expect_equal(c.get("reduction", "smooth_model"), yes_no(smoothness_check(pp.polys(), 4)), "evidence", "smooth_model");
  expect_equal(c.get("reduction", "smooth_branch"), yes_no(smoothness_check(std::vector<MPoly<FiniteField>>{g6}, 2)),
               "evidence", "smooth_branch");
  require(c.get("reduction", "smooth_model") == "yes" && c.get("reduction", "smooth_branch") == "yes", "evidence",
          "good reduction and a smooth branch curve are required");

  const bool twist_known = expected_twist != "undetermined";
  std::vector<KnownFactor> allowed = twist_known ? std::vector<KnownFactor>{{2, 0}} : std::vector<KnownFactor>{{2, 0}, {1, 1}};
  std::optional<MPoly<FiniteField>> count_g6 = g6;
  if (const auto* ct = c.find("evidence", "weil_count_twist"))
    expect_equal(*ct, twist_known ? expected_twist : "1", "weil", "count twist");
  check_weil(c, p, allowed, count_g6);

  // Specialization: the Q-bar claim is replayed from the model.
  const auto opts = recorded_closure(c);
  const auto rep = lines_free_report(pair.polys(), 4, opts);
  expect_equal(c.get("evidence", "lines_free"), yes_no(rep.lines_free), "lines over Q-bar", "lines_free");
  expect_equal(c.get("evidence", "lines_free_method"), closure_method_name(rep.method), "lines over Q-bar", "method");
  const auto* pr = c.find("evidence", "lines_free_prime");
  if (rep.method == ClosureMethod::Specialization) {
    require(pr && *pr == std::to_string(rep.prime), "lines over Q-bar", "certifying prime differs");
  } else {
    require(!pr, "lines over Q-bar", "a prime is recorded without specialization");
  }
  require(rep.lines_free, "lines over Q-bar", "X contains a line over Q-bar");
  expect_equal(c.get("conclusion", "rank"), "1", "conclusion", "rank");
  expect_equal(c.get("conclusion", "justification"), kJustification6, "conclusion", "justification");
}

inline void verify8(const Certificate& c) {
  expect_equal(c.get("model", "kind"), "net", "consistency", "kind");
  expect_equal(c.get("model", "ring"), "Z", "consistency", "ring");
  QuadricNet<IntegerRing> net;
  try {
    std::vector<MPoly<IntegerRing>> qs;
    for (const char* k : {"q0", "q1", "q2"}) qs.push_back(parse_mpoly(IntegerRing{}, c.get("model", k), Alphabet::projective(5), 6));
    net = QuadricNet<IntegerRing>::from(qs);
  } catch (const Error& e) {
    throw LinkFailure{"consistency", e.what()};
  }
  const std::uint64_t p = recorded_prime(c);
  const FiniteField F(p);
  QuadricNet<FiniteField> np;
  MPoly<FiniteField> g6;
  try {
    std::vector<MPoly<FiniteField>> qs;
    for (const auto& q : net.q) qs.push_back(reduce_mod(q, F));
    np = QuadricNet<FiniteField>::from(qs);
    g6 = disc_sextic(np).g6;
  } catch (const Error& e) {
    throw LinkFailure{"consistency", e.what()};
  }
  require(!g6.is_zero(), "consistency", "discriminant vanishes mod p");
  expect_equal(c.get("reduction", "branch_sextic"), g6.to_string(Alphabet::plane()), "consistency", "branch sextic");
  expect_equal(c.get("reduction", "lattice"), LatticeStamp(2, 1, -2).to_string(), "consistency", "lattice stamp");

  const auto tok = split_ws(c.get("reduction", "tritangent"));
  require(tok.size() == 4, "consistency", "malformed tritangent");
  const unsigned ext = static_cast<unsigned>(parse_u64(tok[0]));
  require(ext >= 1 && ext <= 4, "consistency", "tritangent extension degree out of range");
  const FiniteField Fq = extension_of(F, ext);
  std::array<std::uint64_t, 3> abc{};
  for (int i = 0; i < 3; ++i) {
    abc[i] = parse_u64(tok[i + 1]);
    require(abc[i] < Fq.size(), "consistency", "tritangent coefficient outside the field");
  }
  LineInP2 L;
  try {
    L = LineInP2::normalized(Fq, abc);
  } catch (const Error& e) {
    throw LinkFailure{"consistency", e.what()};
  }
  require(L.c == abc, "consistency", "tritangent is not normalized");
  require(ext == 1 || !defined_over_subfield(Fq, {abc.begin(), abc.end()}, ext), "consistency",
          "tritangent recorded above its field of definition");

  expect_equal(c.get("reduction", "smooth_model"), yes_no(smoothness_check(np.polys(), 5)), "evidence", "smooth_model");
  expect_equal(c.get("reduction", "smooth_branch"), yes_no(smoothness_check(std::vector<MPoly<FiniteField>>{g6}, 2)),
               "evidence", "smooth_branch");
  require(c.get("reduction", "smooth_model") == "yes" && c.get("reduction", "smooth_branch") == "yes", "evidence",
          "good reduction and a smooth branch curve are required");
  const auto g6q = ext == 1 ? g6 : embed(g6, Fq);
  const auto chk = tritangent_check(g6q, L);
  require(chk.split, "evidence", "the recorded line is not a split tritangent");
  expect_equal(c.get("reduction", "tritangent_profile"), profile_string(chk.profile), "evidence", "tritangent profile");
  KnownFactor known{1, 0};
  const auto* sq = c.find("reduction", "tritangent_scalar_square");
  require((ext == 1) == (sq != nullptr), "evidence", "scalar square flag recorded exactly for F_p tritangents");
  if (ext == 1) {
    const bool s = tritangent_scalar_is_square(g6, L);
    expect_equal(*sq, yes_no(s), "evidence", "tritangent scalar");
    known = s ? KnownFactor{2, 0} : KnownFactor{1, 1};
  }
  if (const auto* ct = c.find("evidence", "weil_count_twist")) expect_equal(*ct, "1", "weil", "count twist");
  check_weil(c, p, {known}, g6);

  const auto opts = recorded_closure(c);
  const auto rep = tritangent_free_report(disc_sextic(net).g6, opts);
  const char* link = "tritangents over Q-bar";
  expect_equal(c.get("evidence", "tritangent_free"), yes_no(rep.tritangent_free), link, "tritangent_free");
  expect_equal(c.get("evidence", "tritangent_free_method"), closure_method_name(rep.method), link, "method");
  const auto* pr = c.find("evidence", "tritangent_free_prime");
  const auto* sk = c.find("evidence", "tritangent_free_skipped");
  if (rep.method == ClosureMethod::Specialization) {
    require(pr && *pr == std::to_string(rep.prime), link, "certifying prime differs");
    require(sk && *sk == list_string(rep.skipped), link, "skipped primes differ");
  } else {
    require(!pr && !sk, link, "a prime is recorded without specialization");
  }
  require(rep.tritangent_free, link, "the branch sextic over Q has a tritangent line");
  expect_equal(c.get("conclusion", "rank"), "1", "conclusion", "rank");
  expect_equal(c.get("conclusion", "justification"), kJustification8, "conclusion", "justification");
}

}  // namespace detail

/// Replays every link except point counts beyond N_2: schema, hash,
/// consistency, evidence, Weil, then the specialization checks.
inline VerifyResult verify_certificate_report(const Certificate& c) {
  try {
    detail::check_schema(c);
    detail::require(c.hash == hex64(fnv1a64(c.body())), "hash", "content hash mismatch");
    if (c.degree() == 6) {
      detail::verify6(c);
    } else {
      detail::verify8(c);
    }
  } catch (const detail::LinkFailure& f) {
    return {false, f.link + ": " + f.reason};
  } catch (const Error& e) {
    return {false, std::string("replay: ") + e.what()};
  }
  return {true, {}};
}

inline bool verify_certificate(const Certificate& c) { return verify_certificate_report(c).ok; }

/// Throws ParseError on malformed text.
inline bool verify_certificate(const std::string& text) { return verify_certificate(Certificate::parse(text)); }

}  // namespace k3pic
