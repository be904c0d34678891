#pragma once

// Plain-text model files. Header lines "kind", "ring", "provenance" and
// "twist" come first, then one polynomial per line in canonical form.

#include "k3pic/geommodels.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace k3pic {

struct ModelFile {
  /// "pair" (f2, f3 in P^4), "net" (three quadrics in P^5) or "double-cover" (g6).
  std::string kind = "pair";
  /// 0 for integer coefficients.
  std::uint64_t prime = 0;
  Provenance provenance = Provenance::Direct;
  Integer twist = 1;
  std::vector<std::string> polys;

  static int nvars_of(const std::string& kind) {
    if (kind == "pair") return 5;
    if (kind == "net") return 6;
    if (kind == "double-cover") return 3;
    throw Error(Errc::ParseError, "unknown model kind '" + kind + "'");
  }
  static std::size_t count_of(const std::string& kind) {
    if (kind == "pair") return 2;
    if (kind == "net") return 3;
    nvars_of(kind);
    return 1;
  }
  std::string ring_name() const { return prime ? "F_" + std::to_string(prime) : "Z"; }

  std::string to_string() const {
    std::ostringstream os;
    os << "kind " << kind << "\nring " << ring_name() << "\nprovenance " << provenance_name(provenance) << "\ntwist "
       << twist.get_str() << "\n";
    for (const auto& p : polys) os << p << "\n";
    return os.str();
  }

  static ModelFile parse(const std::string& text) {
    ModelFile m;
    std::istringstream in(text);
    std::string line;
    bool have_kind = false;
    auto header = [&](const std::string& key, std::string& value) {
      if (line.rfind(key + " ", 0) != 0) return false;
      value = line.substr(key.size() + 1);
      return true;
    };
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      std::string v;
      if (header("kind", v)) {
        nvars_of(v);
        m.kind = v;
        have_kind = true;
      } else if (header("ring", v)) {
        if (v == "Z" || v == "Q") {
          m.prime = 0;
        } else if (v.rfind("F_", 0) == 0) {
          try {
            m.prime = std::stoull(v.substr(2));
          } catch (const std::exception&) {
            throw Error(Errc::ParseError, "bad ring '" + v + "'");
          }
          if (!is_prime(m.prime)) throw Error(Errc::ParseError, "ring F_" + std::to_string(m.prime) + " is not a prime field");
        } else {
          throw Error(Errc::ParseError, "bad ring '" + v + "'");
        }
      } else if (header("provenance", v)) {
        try {
          m.provenance = parse_provenance(v);
        } catch (const Error&) {
          throw Error(Errc::ParseError, "bad provenance '" + v + "'");
        }
      } else if (header("twist", v)) {
        if (m.twist.set_str(v, 10) != 0 || m.twist == 0) throw Error(Errc::ParseError, "bad twist '" + v + "'");
      } else {
        m.polys.push_back(line);
      }
    }
    if (!have_kind) throw Error(Errc::ParseError, "model file has no kind line");
    if (m.polys.size() != count_of(m.kind))
      throw Error(Errc::ParseError, "a " + m.kind + " needs " + std::to_string(count_of(m.kind)) + " polynomials, found " +
                                        std::to_string(m.polys.size()));
    return m;
  }

  /// Polynomials over R. Integer files may be read over Z or reduced to F_p;
  /// F_p files only over the same prime field.
  template <class Ring>
  std::vector<MPoly<Ring>> polynomials(const Ring& R) const {
    const int nv = nvars_of(kind);
    const Alphabet alpha = Alphabet::for_nvars(nv);
    std::vector<MPoly<Ring>> out;
    for (const auto& s : polys) {
      if constexpr (std::is_same_v<Ring, FiniteField>) {
        if (prime == 0) {
          out.push_back(reduce_mod(parse_mpoly(IntegerRing{}, s, alpha, nv), R));
        } else {
          if (!R.is_prime_field() || R.characteristic() != prime) throw Error(Errc::RingMismatch, "model lives over F_" + std::to_string(prime));
          out.push_back(parse_mpoly(R, s, alpha, nv));
        }
      } else {
        if (prime != 0) throw Error(Errc::RingMismatch, "model lives over F_" + std::to_string(prime));
        out.push_back(parse_mpoly(R, s, alpha, nv));
      }
    }
    return out;
  }

  template <class Ring>
  Degree6Pair<Ring> pair(const Ring& R) const {
    if (kind != "pair") throw Error(Errc::InvalidArgument, "model is a " + kind + ", not a pair");
    auto ps = polynomials(R);
    return Degree6Pair<Ring>::from(ps[0], ps[1]);
  }
  template <class Ring>
  QuadricNet<Ring> net(const Ring& R) const {
    if (kind != "net") throw Error(Errc::InvalidArgument, "model is a " + kind + ", not a net");
    return QuadricNet<Ring>::from(polynomials(R));
  }
  template <class Ring>
  DoubleCoverModel<Ring> double_cover(const Ring& R) const {
    if (kind != "double-cover") throw Error(Errc::InvalidArgument, "model is a " + kind + ", not a double cover");
    typename Ring::value_type lambda;
    if constexpr (std::is_same_v<Ring, FiniteField>) {
      lambda = R.from_integer(twist);
    } else {
      lambda = twist;
    }
    auto m = DoubleCoverModel<Ring>::direct(polynomials(R)[0], lambda);
    m.provenance = provenance;
    return m;
  }
};

namespace detail {

template <class Ring>
std::uint64_t prime_of(const Ring& R) {
  if constexpr (std::is_same_v<Ring, FiniteField>) {
    if (!R.is_prime_field()) throw Error(Errc::RingMismatch, "model files hold prime-field or integer coefficients");
    return R.characteristic();
  } else {
    return 0;
  }
}

}  // namespace detail

template <class Ring>
ModelFile model_file(const Degree6Pair<Ring>& p) {
  ModelFile m;
  m.kind = "pair";
  m.prime = detail::prime_of(p.f2.ring());
  for (const auto& f : p.polys()) m.polys.push_back(f.to_string(Alphabet::projective(4)));
  return m;
}

template <class Ring>
ModelFile model_file(const QuadricNet<Ring>& n) {
  ModelFile m;
  m.kind = "net";
  m.prime = detail::prime_of(n.q[0].ring());
  for (const auto& f : n.q) m.polys.push_back(f.to_string(Alphabet::projective(5)));
  return m;
}

template <class Ring>
ModelFile model_file(const DoubleCoverModel<Ring>& d) {
  ModelFile m;
  m.kind = "double-cover";
  m.prime = detail::prime_of(d.g6.ring());
  m.provenance = d.provenance;
  if constexpr (std::is_same_v<Ring, FiniteField>) {
    m.twist = Integer(static_cast<unsigned long>(d.twist));
  } else {
    m.twist = d.twist;
  }
  m.polys.push_back(d.g6.to_string(Alphabet::plane()));
  return m;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::InvalidArgument, "short write to " + path);
}

inline ModelFile read_model_file(const std::string& path) { return ModelFile::parse(read_text_file(path)); }
inline void write_model_file(const std::string& path, const ModelFile& m) { write_text_file(path, m.to_string()); }

}  // namespace k3pic
