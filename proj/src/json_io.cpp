#include "nullcert/json_io.hpp"

#include <fstream>

namespace nullcert {

SemidirectGroup group_from_json(const Json& j) {
  std::string family = j.at("family").get<std::string>();
  std::uint64_t p = j.at("p").get<std::uint64_t>();
  if (family == "dihedral") return make_dihedral(p);
  if (family == "g3p") {
    if (j.contains("r")) return make_g3p(p, j.at("r").get<std::uint64_t>());
    return make_g3p(p);
  }
  if (family == "direct") return make_direct(p, j.at("e").get<int>());
  if (family == "custom") {
    FiniteGroupTable h;
    const auto& rows = j.at("cayley");
    h.order = (int)rows.size();
    for (const auto& row : rows)
      for (const auto& v : row) h.cayley.push_back(v.get<int>());
    h.identity = j.value("identity", 0);
    MultiplierMap phi;
    for (const auto& m : j.at("multipliers"))
      phi.multipliers.push_back(m.get<std::uint64_t>());
    return make_custom(p, std::move(h), std::move(phi));
  }
  throw std::invalid_argument("group_from_json: unknown family " + family);
}

Json group_to_json(const SemidirectGroup& g) {
  Json j;
  j["family"] = to_string(g.family());
  j["p"] = g.p();
  switch (g.family()) {
    case FamilyTag::g3p:
      j["r"] = g.r();
      break;
    case FamilyTag::direct:
      j["e"] = g.coset_count();
      break;
    case FamilyTag::custom: {
      Json rows = Json::array();
      for (int a = 0; a < g.h().order; ++a) {
        Json row = Json::array();
        for (int b = 0; b < g.h().order; ++b) row.push_back(g.h().mul(a, b));
        rows.push_back(row);
      }
      j["cayley"] = rows;
      j["identity"] = g.h().identity;
      j["multipliers"] = g.phi().multipliers;
      break;
    }
    default:
      break;
  }
  return j;
}

Json bigint_to_json(const BigInt& v) {
  static const BigInt kMax = BigInt(std::numeric_limits<std::int64_t>::max());
  static const BigInt kMin = BigInt(std::numeric_limits<std::int64_t>::min());
  if (v <= kMax && v >= kMin) return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  return BigInt(j.get<std::int64_t>());
}

Json coefficient_to_json(const Coefficient& c) {
  if (std::holds_alternative<BigInt>(c))
    return bigint_to_json(std::get<BigInt>(c));
  const auto& e = std::get<Eisenstein>(c);
  Json j;
  j["a"] = bigint_to_json(e.v);  // coefficient written a*r + b
  j["b"] = bigint_to_json(e.u);
  return j;
}

Coefficient coefficient_from_json(const Json& j) {
  if (j.is_object())
    return Eisenstein(bigint_from_json(j.at("b")), bigint_from_json(j.at("a")));
  return bigint_from_json(j);
}

Json certificate_to_json(const Certificate& cert) {
  Json j;
  j["family"] = cert.family;
  j["k"] = cert.k;
  j["lambda"] = cert.lambda;
  j["a"] = cert.a;
  j["mode"] = to_string(cert.mode);
  j["factor_mode"] = to_string(cert.factor_mode);
  j["target"] = cert.target;
  j["coefficient"] = coefficient_to_json(cert.coefficient);
  Json bad = Json::array();
  for (const auto& p : cert.bad_primes) bad.push_back(bigint_to_json(p));
  j["bad_primes"] = bad;
  j["degree"] = cert.degree;
  if (!cert.notes.empty()) j["notes"] = cert.notes;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.family = j.at("family").get<std::string>();
  cert.k = j.at("k").get<int>();
  cert.lambda = j.at("lambda").get<std::vector<int>>();
  cert.a = j.at("a").get<std::vector<int>>();
  cert.mode = cert_mode_from_string(j.at("mode").get<std::string>());
  cert.factor_mode =
      factor_mode_from_string(j.at("factor_mode").get<std::string>());
  cert.target = j.at("target").get<std::vector<int>>();
  cert.coefficient = coefficient_from_json(j.at("coefficient"));
  for (const auto& p : j.at("bad_primes"))
    cert.bad_primes.push_back(bigint_from_json(p));
  cert.degree = j.at("degree").get<int>();
  cert.notes = j.value("notes", "");
  return cert;
}

Json tail_certificate_to_json(const TailCertificate& cert) {
  Json j = certificate_to_json(cert.base);
  j["t"] = cert.t;
  j["abar"] = cert.abar;
  j["ell"] = cert.ell;
  return j;
}

TailCertificate tail_certificate_from_json(const Json& j) {
  TailCertificate cert;
  cert.base = certificate_from_json(j);
  cert.t = j.at("t").get<int>();
  cert.abar = j.at("abar").get<int>();
  cert.ell = j.at("ell").get<int>();
  return cert;
}

template <class T>
Json poly_to_json(const SparsePoly<T>& p) {
  std::vector<std::pair<std::vector<int>, Json>> rows;
  for (const auto& [key, c] : p.terms) {
    Monomial m = Monomial::from_key(key, p.nvars);
    if constexpr (std::is_same_v<T, BigInt>)
      rows.emplace_back(m.exponents(), bigint_to_json(c));
    else
      rows.emplace_back(m.exponents(), coefficient_to_json(Coefficient{c}));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Json out = Json::array();
  for (auto& [exps, c] : rows) {
    Json term;
    term["exponents"] = exps;
    term["coeff"] = c;
    out.push_back(term);
  }
  return out;
}

template Json poly_to_json<BigInt>(const SparsePoly<BigInt>&);
template Json poly_to_json<Eisenstein>(const SparsePoly<Eisenstein>&);

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace nullcert
