// k3pic command line. Models, Weil polynomials and certificates are plain
// text files; results go to stdout unless --out is given.

#include "k3pic/certify.hpp"
#include "k3pic/modelio.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace k3pic;

namespace {

struct Common {
  std::uint64_t prime = 0;
  std::uint64_t seed = 1;
  std::uint64_t budget = std::uint64_t{1} << 36;
  unsigned max_ext = 1;
  std::string weil_file;
  std::string counts_cache;
  std::string out;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(c.out, text);
  }
}

std::uint64_t need_prime(const Common& c) {
  if (c.prime < 3 || !is_prime(c.prime)) throw Error(Errc::InvalidArgument, "--prime must be an odd prime");
  return c.prime;
}

CountOptions counting(const Common& c) {
  CountOptions o;
  o.budget = c.budget;
  return o;
}

SearchConfig search_config(const Common& c) {
  SearchConfig cfg;
  cfg.p = c.prime ? c.prime : cfg.p;
  cfg.seed = c.seed;
  cfg.counting = counting(c);
  cfg.max_ext = c.max_ext;
  return cfg;
}

WeilSource weil_source(const Common& c, std::uint64_t p, bool reference) {
  if (c.weil_file.empty()) return WeilSource::reconstructed(c.counts_cache);
  auto w = parse_weil_polynomial(p, read_text_file(c.weil_file));
  return WeilSource::supplied(std::move(w), reference ? WeilProvenance::ReferenceSupplied : WeilProvenance::UserSupplied);
}

// Branch sextic of a double-cover or net model file over F_p.
MPoly<FiniteField> sextic_of(const ModelFile& m, const FiniteField& F) {
  if (m.kind == "double-cover") return m.double_cover(F).g6;
  if (m.kind == "net") return disc_sextic(m.net(F)).g6;
  throw Error(Errc::InvalidArgument, "expected a double-cover or net model, got a " + m.kind);
}

Integer count_model(const ModelFile& m, const FiniteField& F, unsigned n, const CountOptions& o) {
  if (m.kind == "double-cover") return count_double_cover(m.double_cover(F), n, o);
  if (m.kind == "pair") return count_complete_intersection_p4(m.pair(F), n, o);
  return count_projective_zeros(m.polynomials(F), n, o);
}

template <class Model>
ModelFile lifted_file(const Model& m, const Common& c, unsigned spread) {
  SearchConfig cfg = search_config(c);
  cfg.p = m.polys()[0].ring().characteristic();
  cfg.lift_spread = spread;
  return model_file(lift_model(m, cfg));
}

std::string report_lines(const LineFreenessReport& r) {
  std::ostringstream os;
  os << "lines_free " << (r.lines_free ? "yes" : "no") << "\nmethod " << closure_method_name(r.method) << "\n";
  if (r.prime) os << "prime " << r.prime << "\n";
  if (r.witness_chart.first >= 0) {
    os << "witness_chart " << r.witness_chart.first << " " << r.witness_chart.second << "\nwitness";
    for (const auto& x : r.witness) os << " " << x.get_str();
    os << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Picard rank one certificates for K3 surfaces of degree 6 and 8"};
  app.require_subcommand(1);
  Common c;
  std::string model, model_b;
  unsigned n = 1, spread = 0, known_minus = 2, known_plus = 0;
  std::uint64_t tries = 10000;
  bool lift = false, reference = false;

  auto prime = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--prime,-p", c.prime, "prime p");
    if (required) o->required();
  };
  auto seed = [&](CLI::App* s) { s->add_option("--seed", c.seed, "random seed"); };
  auto budget = [&](CLI::App* s) { s->add_option("--budget", c.budget, "bound on point evaluations"); };
  auto max_ext = [&](CLI::App* s) { s->add_option("--max-ext", c.max_ext, "largest extension degree searched"); };
  auto out = [&](CLI::App* s) { s->add_option("--out,-o", c.out, "output file"); };
  auto weil = [&](CLI::App* s) {
    s->add_option("--weil-file", c.weil_file, "Weil polynomial (polynomial in t or ascending coefficients)");
    s->add_flag("--reference", reference, "mark the Weil file as a reference value");
  };
  auto cache = [&](CLI::App* s) { s->add_option("--counts-cache", c.counts_cache, "resumable point-count cache"); };
  auto model_arg = [&](CLI::App* s) { s->add_option("model", model, "model file")->required(); };

  auto* deg6 = app.add_subcommand("deg6", "degree-6 complete intersections in P^4")->require_subcommand(1);
  {
    auto* s = deg6->add_subcommand("random", "sample a smooth model containing V(x0,x1,x2) over F_p");
    prime(s, true), seed(s), out(s);
    s->add_option("--tries", tries, "samples tried before giving up");
    s->add_flag("--lift", lift, "write the integer lift instead of the F_p model");
    s->add_option("--spread", spread, "size of the random multiples of p in the lift");
    s->callback([&] {
      auto cfg = search_config(c);
      const auto cand = search_degree6(cfg, tries);
      if (!cand) throw Error(Errc::InvalidArgument, "no smooth sample in " + std::to_string(tries) + " tries");
      cfg.lift_spread = spread;
      const auto f = lift ? model_file(lift_model(cand->pair, cfg)) : model_file(cand->pair);
      emit(c, "# sample " + std::to_string(cand->index) + " seed " + std::to_string(cand->seed) + "\n" + f.to_string());
    });
  }
  {
    auto* s = deg6->add_subcommand("certify", "certify geometric Picard rank 1 of an integer (f2, f3)");
    model_arg(s), prime(s, true), seed(s), budget(s), weil(s), cache(s), out(s);
    s->callback([&] {
      const auto pair = read_model_file(model).pair(IntegerRing{});
      const auto cert = certify_degree6(pair, need_prime(c), search_config(c), weil_source(c, c.prime, reference));
      emit(c, cert.to_string());
      if (!cert.concluded()) throw Error(Errc::InvalidArgument, "not proved: " + cert.diagnosis());
    });
  }

  auto* deg8 = app.add_subcommand("deg8", "degree-8 complete intersections in P^5")->require_subcommand(1);
  {
    auto* s = deg8->add_subcommand("disc", "branch sextic -det(u Q1 + v Q2 + w Q3) of a net");
    model_arg(s), prime(s, false), out(s);
    s->callback([&] {
      const auto m = read_model_file(model);
      if (c.prime) {
        emit(c, model_file(disc_sextic(m.net(FiniteField(need_prime(c))))).to_string());
      } else {
        emit(c, model_file(disc_sextic(m.net(IntegerRing{}))).to_string());
      }
    });
  }
  {
    auto* s = deg8->add_subcommand("certify", "certify geometric Picard rank 1 of an integer net");
    model_arg(s), prime(s, true), seed(s), budget(s), max_ext(s), weil(s), cache(s), out(s);
    s->callback([&] {
      const auto net = read_model_file(model).net(IntegerRing{});
      const auto cert = certify_degree8(net, need_prime(c), search_config(c), weil_source(c, c.prime, reference));
      emit(c, cert.to_string());
      if (!cert.concluded()) throw Error(Errc::InvalidArgument, "not proved: " + cert.diagnosis());
    });
  }

  auto* zeta = app.add_subcommand("zeta", "point counts and Weil polynomials")->require_subcommand(1);
  {
    auto* s = zeta->add_subcommand("count", "#X(F_{p^k}) for k = 1..n");
    model_arg(s), prime(s, true), budget(s), cache(s), out(s);
    s->add_option("-n", n, "largest extension degree");
    s->callback([&] {
      const auto m = read_model_file(model);
      const FiniteField F(need_prime(c));
      std::ostringstream os;
      if (m.kind == "double-cover") {
        const auto pc = count_double_cover_cached(m.double_cover(F), n, c.counts_cache, counting(c));
        for (const auto& [k, N] : pc.counts)
          if (k <= n) os << k << " " << N.get_str() << "\n";
      } else {
        for (unsigned k = 1; k <= n; ++k) os << k << " " << count_model(m, F, k, counting(c)).get_str() << "\n";
      }
      emit(c, os.str());
    });
  }
  {
    auto* s = zeta->add_subcommand("weil", "reconstruct the Weil polynomial of a double cover from point counts");
    model_arg(s), prime(s, true), budget(s), cache(s), out(s);
    s->add_option("--known-minus", known_minus, "multiplicity of the known root p");
    s->add_option("--known-plus", known_plus, "multiplicity of the known root -p");
    s->callback([&] {
      const auto m = read_model_file(model);
      const FiniteField F(need_prime(c));
      const auto dc = m.double_cover(F);
      const KnownFactor known{known_minus, known_plus};
      unsigned need = (WeilPolynomial::kDegree - known.degree()) / 2;
      auto pc = count_double_cover_cached(dc, need, c.counts_cache, counting(c));
      auto cands = reconstruct_weil(pc, known);
      if (cands.size() > 1) {
        // One more count separates the two signs of the functional equation.
        pc = count_double_cover_cached(dc, need + 1, c.counts_cache, counting(c));
        cands = reconstruct_weil(pc, known);
      }
      std::string text;
      for (const auto& w : cands) text += w.to_string() + "\n";
      emit(c, text);
    });
  }

  auto* rank = app.add_subcommand("rank", "Picard rank bounds")->require_subcommand(1);
  {
    auto* s = rank->add_subcommand("bound", "validate a Weil polynomial and count cyclotomic eigenvalues");
    s->add_option("weil", c.weil_file, "Weil polynomial file")->required();
    prime(s, true), out(s);
    s->callback([&] {
      const auto w = parse_weil_polynomial(need_prime(c), read_text_file(c.weil_file));
      const auto v = validate_weil(w);
      std::ostringstream os;
      os << "validation " << (v.ok() ? "ok" : "failed") << "\nsign " << v.sign << "\n";
      for (const auto& f : v.failures) os << "failure " << f << "\n";
      if (v.ok()) {
        const auto rep = cyclotomic_rank_bound(w);
        os << "cyclotomic " << rep.to_string() << "\nrank_bound " << rep.rank_bound << "\n";
      }
      emit(c, os.str());
      if (!v.ok()) throw Error(Errc::NotWeil, "not a Weil polynomial");
    });
  }

  auto* lines = app.add_subcommand("lines", "lines on degree-6 surfaces in P^4")->require_subcommand(1);
  {
    auto* s = lines->add_subcommand("scan", "lines over F_{p^e}, e <= max-ext");
    model_arg(s), prime(s, true), budget(s), max_ext(s), out(s);
    s->callback([&] {
      const FiniteField F(need_prime(c));
      ScanOptions o;
      o.max_ext = c.max_ext;
      o.budget = c.budget;
      emit(c, scan_report(F, lines_on_surface_scan(read_model_file(model).pair(F).polys(), 4, o)));
    });
  }
  {
    auto* s = lines->add_subcommand("free", "decide whether an integer pair has a line over Q-bar");
    model_arg(s), out(s);
    s->callback([&] { emit(c, report_lines(lines_free_report(read_model_file(model).pair(IntegerRing{}).polys(), 4))); });
  }

  auto* trit = app.add_subcommand("tritangent", "split tritangent lines of a branch sextic")->require_subcommand(1);
  {
    auto* s = trit->add_subcommand("scan", "split tritangents over F_{p^e}, e <= max-ext");
    model_arg(s), prime(s, true), budget(s), max_ext(s), out(s);
    s->callback([&] {
      const FiniteField F(need_prime(c));
      ScanOptions o;
      o.max_ext = c.max_ext;
      o.budget = c.budget;
      emit(c, scan_report(F, tritangent_scan(sextic_of(read_model_file(model), F), o)));
    });
  }

  {
    auto* s = app.add_subcommand("lift", "lift an F_p pair or net to the integers");
    model_arg(s), seed(s), out(s);
    s->add_option("--spread", spread, "size of the random multiples of p");
    s->callback([&] {
      const auto m = read_model_file(model);
      if (!m.prime) throw Error(Errc::InvalidArgument, "model already has integer coefficients");
      const FiniteField F(m.prime);
      if (m.kind == "pair") emit(c, lifted_file(m.pair(F), c, spread).to_string());
      else if (m.kind == "net") emit(c, lifted_file(m.net(F), c, spread).to_string());
      else throw Error(Errc::InvalidArgument, "lift expects a pair or a net");
    });
  }
  {
    auto* s = app.add_subcommand("crt-lift", "combine models over F_p and F_q into one integer model");
    s->add_option("first", model, "model over F_p")->required();
    s->add_option("second", model_b, "model over F_q")->required();
    out(s);
    s->callback([&] {
      const auto a = read_model_file(model), b = read_model_file(model_b);
      if (a.kind != b.kind) throw Error(Errc::InvalidArgument, "models of different kinds");
      if (!a.prime || !b.prime) throw Error(Errc::InvalidArgument, "both models need prime-field coefficients");
      const auto pa = a.polynomials(FiniteField(a.prime)), pb = b.polynomials(FiniteField(b.prime));
      ModelFile z = a;
      z.prime = 0;
      z.polys.clear();
      const int nv = ModelFile::nvars_of(a.kind);
      for (std::size_t i = 0; i < pa.size(); ++i)
        z.polys.push_back(crt_interpolate_lift(pa[i], pb[i]).to_string(Alphabet::for_nvars(nv)));
      emit(c, z.to_string());
    });
  }
  {
    auto* s = app.add_subcommand("verify", "replay a certificate");
    s->add_option("certificate", model, "certificate file")->required();
    s->callback([&] {
      const auto r = verify_certificate_report(Certificate::parse(read_text_file(model)));
      std::cout << (r.ok ? "ok" : "rejected: " + r.broken_link) << "\n";
      if (!r.ok) throw Error(Errc::InvalidArgument, "certificate rejected");
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
