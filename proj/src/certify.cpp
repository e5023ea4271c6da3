#include "nullcert/certify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace nullcert {

std::string to_string(CertMode m) {
  return m == CertMode::linear ? "linear" : "sequencing";
}
std::string to_string(FactorMode m) {
  return m == FactorMode::raw ? "raw" : "deduped";
}
CertMode cert_mode_from_string(const std::string& s) {
  if (s == "linear") return CertMode::linear;
  if (s == "sequencing") return CertMode::sequencing;
  throw std::invalid_argument("unknown mode: " + s);
}
FactorMode factor_mode_from_string(const std::string& s) {
  if (s == "raw") return FactorMode::raw;
  if (s == "deduped") return FactorMode::deduped;
  throw std::invalid_argument("unknown factor mode: " + s);
}

CertFamily cert_family_dihedral() {
  CertFamily f;
  f.name = "dihedral";
  f.h = FiniteGroupTable::cyclic(2);
  f.eisenstein = false;
  f.phi = {Eisenstein(1), Eisenstein(-1)};
  return f;
}

CertFamily cert_family_direct(int e) {
  CertFamily f;
  f.name = "direct" + std::to_string(e);
  f.h = FiniteGroupTable::cyclic(e);
  f.eisenstein = false;
  f.phi.assign(e, Eisenstein(1));
  return f;
}

CertFamily cert_family_g3p() {
  CertFamily f;
  f.name = "g3p";
  f.h = FiniteGroupTable::cyclic(3);
  f.eisenstein = true;
  f.phi = {Eisenstein(1), Eisenstein::r(), Eisenstein::r2()};
  return f;
}

const CertFamily& cert_family(const std::string& name) {
  static const CertFamily dihedral = cert_family_dihedral();
  static const CertFamily direct2 = cert_family_direct(2);
  static const CertFamily direct3 = cert_family_direct(3);
  static const CertFamily g3p = cert_family_g3p();
  if (name == "dihedral") return dihedral;
  if (name == "direct2") return direct2;
  if (name == "direct3") return direct3;
  if (name == "g3p") return g3p;
  throw std::invalid_argument("unknown certificate family: " + name);
}

std::string cert_family_of(const SemidirectGroup& g) {
  switch (g.family()) {
    case FamilyTag::dihedral: return "dihedral";
    case FamilyTag::g3p: return "g3p";
    case FamilyTag::direct: return "direct" + std::to_string(g.coset_count());
    case FamilyTag::custom: break;
  }
  throw std::invalid_argument("no certificate family for custom groups");
}

namespace {

// window form x_{i+1} + phi_{a_{i+1}} x_{i+2} + ... + phi_{a_{i+1}..a_{j-1}} x_j
// over 0-indexed variables i..j-1.
FactorSpec window_form(const CertFamily& fam, const std::vector<int>& a, int i,
                       int j, char block) {
  FactorSpec f;
  f.block = block;
  f.i = i;
  f.j = j;
  int acc = fam.h.identity;
  f.coeffs.emplace_back(i, Eisenstein(1));
  for (int m = i + 2; m <= j; ++m) {
    acc = fam.h.mul(acc, a[m - 2]);
    f.coeffs.emplace_back(m - 1, fam.phi[acc]);
  }
  return f;
}

}  // namespace

std::vector<FactorSpec> build_pa(const CertFamily& fam,
                                 const QuotientSequencing& qs, CertMode mode) {
  const auto& a = qs.a;
  const auto& b = qs.b;
  const int k = (int)a.size();
  for (int ai : a)
    if (ai < 0 || ai >= fam.e())
      throw std::invalid_argument("build_pa: arrangement entry outside H");
  std::vector<FactorSpec> out;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (a[i] == a[j])
        out.push_back({'d', i, j, {{i, Eisenstein(-1)}, {j, Eisenstein(1)}}});
  for (int i = 0; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      if (b[i] != b[j] || j == i + 1) continue;
      if (mode != CertMode::linear && i == 0 && j == k) continue;
      out.push_back(window_form(fam, a, i, j, 'w'));
    }
  return out;
}

std::vector<FactorSpec> windowed_factors(const CertFamily& fam,
                                         const QuotientSequencing& qs, int t) {
  const auto& a = qs.a;
  const auto& b = qs.b;
  const int k = (int)a.size();
  std::vector<FactorSpec> out;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (a[i] == a[j])
        out.push_back({'d', i, j, {{i, Eisenstein(-1)}, {j, Eisenstein(1)}}});
  for (int i = 0; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      if (b[i] != b[j] || j == i + 1 || j - i > t) continue;
      out.push_back(window_form(fam, a, i, j, 'w'));
    }
  return out;
}

std::vector<FactorSpec> build_qa(const CertFamily& fam,
                                 const QuotientSequencing& qs, int t) {
  const int k = (int)qs.a.size();
  if (t < 1 || t >= k) throw std::invalid_argument("build_qa: need 1 <= t < k");
  return windowed_factors(fam, qs, t);
}

namespace {

bool proportional_units(const FactorSpec& a, const FactorSpec& b) {
  if (a.coeffs.size() != b.coeffs.size()) return false;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    if (a.coeffs[i].first != b.coeffs[i].first) return false;
  const Eisenstein& a0 = a.coeffs[0].second;
  const Eisenstein& b0 = b.coeffs[0].second;
  for (std::size_t i = 1; i < a.coeffs.size(); ++i)
    if (!(a0 * b.coeffs[i].second == b0 * a.coeffs[i].second)) return false;
  return true;
}

}  // namespace

std::vector<FactorSpec> apply_factor_mode(std::vector<FactorSpec> factors,
                                          FactorMode mode) {
  if (mode == FactorMode::raw) return factors;
  std::vector<FactorSpec> out;
  for (auto& f : factors) {
    if (f.block == 'b') {
      out.push_back(std::move(f));
      continue;
    }
    bool dup = false;
    for (const auto& kept : out) {
      if (kept.block == 'b') continue;
      if (proportional_units(kept, f)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(f));
  }
  return out;
}

template <class T>
std::vector<LinearForm<T>> to_forms(std::span<const FactorSpec> factors,
                                    int nvars) {
  std::vector<LinearForm<T>> forms;
  forms.reserve(factors.size());
  for (const auto& f : factors) {
    LinearForm<T> lf;
    lf.nvars = nvars;
    for (const auto& [v, c] : f.coeffs) {
      if constexpr (std::is_same_v<T, BigInt>) {
        if (!c.v.is_zero())
          throw std::invalid_argument(
              "to_forms<BigInt>: factor has a symbolic r coefficient");
        lf.add_term(v, c.u);
      } else {
        lf.add_term(v, c);
      }
    }
    lf.normalize();
    forms.push_back(std::move(lf));
  }
  return forms;
}

template std::vector<LinearForm<BigInt>> to_forms<BigInt>(
    std::span<const FactorSpec>, int);
template std::vector<LinearForm<Eisenstein>> to_forms<Eisenstein>(
    std::span<const FactorSpec>, int);

Monomial bounding_monomial(const TypeVector& lambda,
                           const std::vector<int>& a) {
  TypeVector counts(lambda.size(), 0);
  for (int ai : a) {
    if (ai < 0 || ai >= (int)lambda.size())
      throw std::invalid_argument("bounding_monomial: arrangement entry outside H");
    counts[ai]++;
  }
  if (counts != lambda)
    throw std::invalid_argument("bounding_monomial: lambda inconsistent with arrangement");
  Monomial cap((int)a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    cap.set_exponent((int)i, lambda[a[i]] - 1);
  return cap;
}

bool coefficient_is_zero(const Coefficient& c) {
  return std::visit([](const auto& v) { return is_zero(v); }, c);
}

std::string coefficient_str(const Coefficient& c) {
  if (std::holds_alternative<BigInt>(c))
    return std::get<BigInt>(c).str();
  return std::get<Eisenstein>(c).str();
}

std::vector<BigInt> bad_primes_of(const Coefficient& c) {
  if (std::holds_alternative<BigInt>(c))
    return bad_primes(std::vector<BigInt>{std::get<BigInt>(c)});
  return bad_primes(std::vector<Eisenstein>{std::get<Eisenstein>(c)});
}

namespace {

Coefficient extract_coefficient(const CertFamily& fam,
                                std::span<const FactorSpec> factors,
                                const Monomial& target) {
  if (fam.eisenstein) {
    auto forms = to_forms<Eisenstein>(factors, target.nvars());
    return coefficient_of<Eisenstein>(forms, target);
  }
  auto forms = to_forms<BigInt>(factors, target.nvars());
  return coefficient_of<BigInt>(forms, target);
}

}  // namespace

VerifyOutcome verify_certificate(const Certificate& cert) {
  VerifyOutcome out;
  const CertFamily& fam = cert_family(cert.family);
  if ((int)cert.a.size() != cert.k || (int)cert.target.size() != cert.k)
    throw std::invalid_argument("verify_certificate: malformed certificate");
  auto qs = QuotientSequencing::from_arrangement(fam.h, cert.a);
  auto raw = build_pa(fam, qs, cert.mode);
  auto deduped = apply_factor_mode(raw, FactorMode::deduped);
  out.factor_count_raw = (int)raw.size();
  out.factor_count_deduped = (int)deduped.size();

  Monomial cap = bounding_monomial(cert.lambda, cert.a);
  Monomial target(cert.target);
  const auto& factors =
      cert.factor_mode == FactorMode::raw ? raw : deduped;
  int degree = target.degree();
  out.structurally_valid =
      degree == (int)factors.size() && target.divides(cap);
  out.recomputed = extract_coefficient(fam, factors, target);
  std::ostringstream notes;
  if (!out.structurally_valid) {
    notes << "structurally invalid: target degree " << degree
          << " vs factor count " << factors.size();
    if (!target.divides(cap)) notes << "; target does not divide the bounding monomial";
    notes << ". ";
  }
  bool coeff_match = !coefficient_is_zero(out.recomputed) &&
                     out.recomputed == cert.coefficient;
  if (!coefficient_is_zero(out.recomputed))
    out.recomputed_bad_primes = bad_primes_of(out.recomputed);
  out.valid = out.structurally_valid && coeff_match &&
              out.recomputed_bad_primes == cert.bad_primes;
  if (out.structurally_valid && !coeff_match)
    notes << "coefficient mismatch: recomputed " << coefficient_str(out.recomputed)
          << " vs stated " << coefficient_str(cert.coefficient) << ". ";
  out.notes = notes.str();
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= (unsigned char)c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

// One deterministic candidate target: walk the factors in a shuffled order,
// each picking a support variable with remaining cap room.
std::optional<Monomial> sample_target(const std::vector<FactorSpec>& factors,
                                      const Monomial& cap,
                                      std::mt19937_64& rng) {
  const int n = cap.nvars();
  std::vector<int> counts(n, 0);
  std::vector<int> order(factors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int fi : order) {
    const auto& f = factors[fi];
    int choices[Monomial::kMaxVars];
    int nc = 0;
    for (const auto& [v, c] : f.coeffs)
      if (counts[v] < cap.exponent(v)) choices[nc++] = v;
    if (nc == 0) return std::nullopt;
    counts[choices[rng() % nc]]++;
  }
  Monomial m(n);
  for (int v = 0; v < n; ++v) m.set_exponent(v, counts[v]);
  return m;
}

}  // namespace

TargetSearchResult find_nonzero_max_degree_target(
    const CertFamily& fam, const std::vector<FactorSpec>& factors,
    const Monomial& cap, const SearchConfig& cfg, std::uint64_t seed_hash) {
  TargetSearchResult res;
  const int n = cap.nvars();
  auto acceptable = [&](const Coefficient& c) {
    if (coefficient_is_zero(c)) return false;
    if (cfg.avoid_prime == 0) return true;
    for (const auto& bp : bad_primes_of(c))
      if (bp == cfg.avoid_prime) return false;
    return true;
  };

  // cheap lattice-size precheck: skip the exact expansion when the divisor
  // lattice of the cap cannot fit the frontier budget anyway
  double lattice = 1.0;
  for (int v = 0; v < n && lattice < 1e18; ++v)
    lattice *= cap.exponent(v) + 1;
  bool try_expansion =
      lattice <= (double)std::max<std::size_t>(cfg.expand_budget, 1);

  if (try_expansion) {
    try {
      ExpandOptions opt;
      opt.node_budget = cfg.expand_budget;
      std::optional<Monomial> best;
      Coefficient best_coeff{BigInt(0)};
      if (fam.eisenstein) {
        auto forms = to_forms<Eisenstein>(factors, n);
        auto poly = expand_truncated<Eisenstein>(forms, cap, opt);
        for (const auto& [key, c] : poly.terms) {
          Monomial m = Monomial::from_key(key, n);
          if (!acceptable(Coefficient{c})) continue;
          if (!best || lex_less(m, *best)) {
            best = m;
            best_coeff = c;
          }
        }
      } else {
        auto forms = to_forms<BigInt>(factors, n);
        auto poly = expand_truncated<BigInt>(forms, cap, opt);
        for (const auto& [key, c] : poly.terms) {
          Monomial m = Monomial::from_key(key, n);
          if (!acceptable(Coefficient{c})) continue;
          if (!best || lex_less(m, *best)) {
            best = m;
            best_coeff = c;
          }
        }
      }
      if (best) {
        res.target = best;
        res.coefficient = best_coeff;
      }
      res.exhaustive = true;
      return res;
    } catch (const BudgetExceeded&) {
      // fall through to sampled candidates
    }
  }

  // deterministic sampling of candidate targets, verified exactly in
  // lexicographic order
  std::mt19937_64 rng(seed_hash);
  std::vector<Monomial> candidates;
  for (int s = 0; s < cfg.samples; ++s) {
    auto m = sample_target(factors, cap, rng);
    if (!m) continue;
    bool known = false;
    for (const auto& c : candidates)
      if (c == *m) {
        known = true;
        break;
      }
    if (!known) candidates.push_back(*m);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Monomial& x, const Monomial& y) { return lex_less(x, y); });
  int budget = cfg.max_verifications;
  for (const auto& m : candidates) {
    if (budget-- <= 0) {
      res.budget_hit = true;
      break;
    }
    Coefficient c = extract_coefficient(fam, factors, m);
    if (acceptable(c)) {
      res.target = m;
      res.coefficient = c;
      return res;
    }
  }
  return res;
}

namespace {

std::uint64_t search_seed(const CertFamily& fam, const TypeVector& lambda,
                          const std::vector<int>& a, CertMode mode,
                          const SearchConfig& cfg) {
  std::ostringstream os;
  os << fam.name << "|" << to_string(mode) << "|s" << cfg.seed << "|p"
     << cfg.avoid_prime << "|";
  for (int l : lambda) os << l << ",";
  os << "|";
  for (int ai : a) os << ai << ",";
  return fnv1a(os.str());
}

}  // namespace

SearchOutcome search_certificate(const CertFamily& fam,
                                 const TypeVector& lambda, CertMode mode,
                                 const SearchConfig& cfg) {
  SearchOutcome out;
  if ((int)lambda.size() != fam.e())
    throw std::invalid_argument("search_certificate: lambda length must be |H|");
  int k = 0;
  for (int l : lambda) {
    if (l < 0) throw std::invalid_argument("search_certificate: negative count");
    k += l;
  }
  if (k < 2) throw std::invalid_argument("search_certificate: k too small");
  if (fam.name == "dihedral" &&
      (lambda == TypeVector{k, 0} || lambda == TypeVector{0, k}))
    throw std::invalid_argument(
        "search_certificate: dihedral types (k,0) and (0,k) are covered by "
        "prior results, not by these certificates");
  if (fam.name == "g3p" && lambda == TypeVector{k, 0, 0})
    throw std::invalid_argument(
        "search_certificate: g3p type (k,0,0) reduces to Z_p");

  // lexicographically ordered multiset permutations
  std::vector<int> a;
  for (int c = 0; c < (int)lambda.size(); ++c)
    a.insert(a.end(), lambda[c], c);

  long long degcap = 0;
  for (int c = 0; c < (int)lambda.size(); ++c)
    degcap += (long long)lambda[c] * (lambda[c] - 1);

  do {
    if (out.arrangements_tried >= cfg.max_arrangements) {
      out.budget_exhausted = true;
      out.notes = "arrangement budget exhausted";
      return out;
    }
    out.arrangements_tried++;
    auto qs = QuotientSequencing::from_arrangement(fam.h, a);
    auto raw = build_pa(fam, qs, mode);
    Monomial cap = bounding_monomial(lambda, a);
    for (FactorMode fm : {FactorMode::raw, FactorMode::deduped}) {
      if (cfg.factor_mode == FactorModePreference::raw_only &&
          fm != FactorMode::raw)
        continue;
      if (cfg.factor_mode == FactorModePreference::deduped_only &&
          fm != FactorMode::deduped)
        continue;
      auto factors = apply_factor_mode(raw, fm);
      if (fm == FactorMode::deduped && factors.size() == raw.size() &&
          cfg.factor_mode != FactorModePreference::deduped_only)
        continue;  // nothing collapsed; same polynomial as raw
      if ((int)factors.size() > degcap) continue;  // no divisor can reach degree
      auto attempt = find_nonzero_max_degree_target(
          fam, factors, cap, cfg, search_seed(fam, lambda, a, mode, cfg));
      if (attempt.budget_hit) out.budget_exhausted = true;
      if (attempt.target) {
        Certificate cert;
        cert.family = fam.name;
        cert.k = k;
        cert.lambda = lambda;
        cert.a = a;
        cert.mode = mode;
        cert.factor_mode = fm;
        cert.target = attempt.target->exponents();
        cert.coefficient = attempt.coefficient;
        cert.bad_primes = bad_primes_of(attempt.coefficient);
        cert.degree = (int)factors.size();
        out.certificate = std::move(cert);
        return out;
      }
    }
  } while (std::next_permutation(a.begin(), a.end()));
  if (!out.budget_exhausted)
    out.notes = "all arrangements exhausted without a nonzero coefficient";
  return out;
}

bool applies_to_composite(const BigInt& m, int k) {
  if (m < 2) throw std::invalid_argument("applies_to_composite: need m >= 2");
  if (k < 1) throw std::invalid_argument("applies_to_composite: need k >= 1");
  BigInt kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  for (const auto& [p, e] : factorize(m))
    if (p <= kfact) return false;
  return true;
}

bool certificate_applies(const Certificate& cert, std::uint64_t p) {
  if (p <= 3 || !is_prime_u64(p)) return false;
  const CertFamily& fam = cert_family(cert.family);
  if (fam.eisenstein && p % 6 != 1) return false;
  // the type must fit: identity coset holds p-1 non-identity elements,
  // every other coset holds p
  for (std::size_t c = 0; c < cert.lambda.size(); ++c) {
    std::uint64_t room = (int)c == fam.h.identity ? p - 1 : p;
    if ((std::uint64_t)cert.lambda[c] > room) return false;
  }
  for (const auto& bp : cert.bad_primes)
    if (bp == p) return false;
  return true;
}

std::optional<Ordering> guided_sequence(const SemidirectGroup& g,
                                        const Subset& s,
                                        const Certificate& cert) {
  if (subset_type(g, s) != cert.lambda)
    throw std::invalid_argument("guided_sequence: subset type differs from certificate");
  const int k = s.k();
  // elements per coset, canonical order
  std::vector<std::vector<GroupElement>> pool(g.coset_count());
  for (auto e : s.elements) pool[e.a].push_back(e);
  for (auto& v : pool) std::sort(v.begin(), v.end());
  std::vector<std::vector<bool>> used(g.coset_count());
  for (int c = 0; c < g.coset_count(); ++c) used[c].assign(pool[c].size(), false);

  Ordering current;
  std::vector<GroupElement> sums{g.identity()};
  // distinctness window: full for linear; sequencing tolerates s_0 = s_k only
  auto ok_sum = [&](const GroupElement& cand, int jpos) {
    for (int i = 0; i < (int)sums.size(); ++i) {
      if (sums[i] == cand) {
        if (cert.mode == CertMode::sequencing && i == 0 && jpos == k)
          continue;  // cyclic allowance
        return false;
      }
    }
    return true;
  };
  std::function<bool()> rec = [&]() -> bool {
    int pos = (int)current.size();
    if (pos == k) return true;
    int coset = cert.a[pos];
    auto& vals = pool[coset];
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (used[coset][i]) continue;
      GroupElement next = g.multiply(sums.back(), vals[i]);
      if (!ok_sum(next, pos + 1)) continue;
      used[coset][i] = true;
      current.push_back(vals[i]);
      sums.push_back(next);
      if (rec()) return true;
      sums.pop_back();
      current.pop_back();
      used[coset][i] = false;
    }
    return false;
  };
  if (rec()) return current;
  return std::nullopt;
}

}  // namespace nullcert
