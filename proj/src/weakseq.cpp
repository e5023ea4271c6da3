#include "nullcert/weakseq.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace nullcert {

PrefixPlan make_prefix_plan(const SemidirectGroup& g, const Subset& s, int t,
                            int h) {
  const int k = s.k();
  if (t < 2 || t >= k)
    throw std::invalid_argument("prefix plan: need 2 <= t < k");
  if (k - h < 2 * (t - 1))
    throw std::invalid_argument("prefix plan: need k - h >= 2(t-1)");
  if (h < t - 1) throw std::invalid_argument("prefix plan: need h >= t-1");

  TypeVector lambda = subset_type(g, s);
  int abar = 0;
  for (int c = 1; c < (int)lambda.size(); ++c)
    if (lambda[c] > lambda[abar]) abar = c;
  if (lambda[abar] < 2 * (t - 1))
    throw std::invalid_argument(
        "prefix plan: fewer than 2(t-1) elements carry the abundant coset");

  PrefixPlan plan;
  plan.t = t;
  plan.h = h;
  plan.ell = k - h;
  plan.abar = abar;
  std::vector<GroupElement> abundant;
  for (const auto& e : s.elements)
    if (e.a == abar) abundant.push_back(e);
  std::sort(abundant.begin(), abundant.end());
  plan.reserved.assign(abundant.begin(), abundant.begin() + 2 * (t - 1));
  for (const auto& e : s.elements) {
    bool in_reserved =
        std::find(plan.reserved.begin(), plan.reserved.end(), e) !=
        plan.reserved.end();
    if (!in_reserved) plan.remainder.push_back(e);
  }
  std::sort(plan.remainder.begin(), plan.remainder.end());
  return plan;
}

Ordering greedy_prefix(const SemidirectGroup& g, const PrefixPlan& plan) {
  const int t = plan.t;
  const int h = plan.h;
  Ordering prefix;
  std::vector<GroupElement> sums{g.identity()};
  std::vector<bool> used_res(plan.reserved.size(), false);
  std::vector<bool> used_rem(plan.remainder.size(), false);

  for (int m = 0; m < h; ++m) {
    // positions 1..h-t+1 (0-based m <= h-t) from S''; the last t-1 from S'
    bool from_remainder = m <= h - t;
    const auto& pool = from_remainder ? plan.remainder : plan.reserved;
    auto& used = from_remainder ? used_rem : used_res;
    bool placed = false;
    for (std::size_t i = 0; i < pool.size() && !placed; ++i) {
      if (used[i]) continue;
      GroupElement next = g.multiply(sums.back(), pool[i]);
      bool ok = true;
      int j = (int)sums.size();
      for (int d = 1; d <= t && j - d >= 0; ++d)
        if (sums[j - d] == next) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used[i] = true;
      prefix.push_back(pool[i]);
      sums.push_back(next);
      placed = true;
    }
    if (!placed)
      throw std::logic_error(
          "greedy_prefix: no admissible candidate (contradicts the "
          "constructive existence argument)");
  }
  return prefix;
}

Ordering greedy_prefix(const SemidirectGroup& g, const Subset& s, int t,
                       int h) {
  return greedy_prefix(g, make_prefix_plan(g, s, t, h));
}

std::vector<FactorSpec> build_r_poly(const CertFamily& fam,
                                     const std::vector<int>& tail_arrangement,
                                     int abar, int t) {
  const auto& a2 = tail_arrangement;
  const int ell = (int)a2.size();
  if (abar < 0 || abar >= fam.e())
    throw std::invalid_argument("build_r_poly: abar outside H");
  if (t < 1) throw std::invalid_argument("build_r_poly: t must be positive");
  if (t > ell)
    throw std::invalid_argument("build_r_poly: need tail length >= t");
  auto qs = QuotientSequencing::from_arrangement(fam.h, a2);
  auto out = windowed_factors(fam, qs, t);

  // boundary block: pairs (i, j) with abar^{i+1} a''_1 ... a''_j = id
  for (int i = 0; i <= t - 1; ++i) {
    int lead = fam.h.power(abar, i + 1);
    for (int j = 1; j <= t - i - 1; ++j) {
      int prod = lead;
      for (int m = 0; m < j; ++m) prod = fam.h.mul(prod, a2[m]);
      if (prod != fam.h.identity) continue;
      FactorSpec f;
      f.block = 'b';
      f.i = i;
      f.j = j;
      int acc = lead;
      f.coeffs.emplace_back(0, fam.phi[acc]);
      for (int m = 2; m <= j; ++m) {
        acc = fam.h.mul(acc, a2[m - 2]);
        f.coeffs.emplace_back(m - 1, fam.phi[acc]);
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

namespace {

Monomial tail_bounding_monomial(const TypeVector& tail_lambda,
                                const std::vector<int>& a2) {
  return bounding_monomial(tail_lambda, a2);
}

Coefficient extract(const CertFamily& fam, std::span<const FactorSpec> factors,
                    const Monomial& target) {
  if (fam.eisenstein) {
    auto forms = to_forms<Eisenstein>(factors, target.nvars());
    return Coefficient{coefficient_of<Eisenstein>(forms, target)};
  }
  auto forms = to_forms<BigInt>(factors, target.nvars());
  return Coefficient{coefficient_of<BigInt>(forms, target)};
}

}  // namespace

TailSearchOutcome weak_certificate_search(const CertFamily& fam,
                                          const TypeVector& tail_lambda,
                                          int abar, int t,
                                          const SearchConfig& cfg) {
  TailSearchOutcome out;
  if ((int)tail_lambda.size() != fam.e())
    throw std::invalid_argument("weak search: lambda length must be |H|");
  int ell = 0;
  for (int l : tail_lambda) ell += l;
  if (ell < 2 * (t - 1))
    throw std::invalid_argument("weak search: need tail length >= 2(t-1)");
  if (tail_lambda[abar] < t - 1)
    throw std::invalid_argument(
        "weak search: abar must appear at least t-1 times in the tail");

  std::vector<int> a2;
  for (int c = 0; c < (int)tail_lambda.size(); ++c)
    a2.insert(a2.end(), tail_lambda[c], c);

  long long degcap = 0;
  for (int c = 0; c < (int)tail_lambda.size(); ++c)
    degcap += (long long)tail_lambda[c] * (tail_lambda[c] - 1);

  do {
    if (out.arrangements_tried >= cfg.max_arrangements) {
      out.budget_exhausted = true;
      out.notes = "arrangement budget exhausted";
      return out;
    }
    out.arrangements_tried++;
    auto raw = build_r_poly(fam, a2, abar, t);
    Monomial cap = tail_bounding_monomial(tail_lambda, a2);
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
        continue;
      if ((int)factors.size() > degcap) continue;

      std::ostringstream seed_src;
      seed_src << fam.name << "|r|" << abar << "|" << t << "|s" << cfg.seed
               << "|p" << cfg.avoid_prime << "|";
      for (int ai : a2) seed_src << ai << ",";
      auto attempt = find_nonzero_max_degree_target(fam, factors, cap, cfg,
                                                    fnv1a(seed_src.str()));
      if (attempt.budget_hit) out.budget_exhausted = true;
      if (attempt.target) {
        TailCertificate cert;
        cert.base.family = fam.name;
        cert.base.k = ell;
        cert.base.lambda = tail_lambda;
        cert.base.a = a2;
        cert.base.mode = CertMode::sequencing;  // window predicate only
        cert.base.factor_mode = fm;
        cert.base.target = attempt.target->exponents();
        cert.base.coefficient = attempt.coefficient;
        cert.base.bad_primes = bad_primes_of(attempt.coefficient);
        cert.base.degree = (int)factors.size();
        cert.base.notes = "b-run-t-1";
        cert.t = t;
        cert.abar = abar;
        cert.ell = ell;
        out.certificate = std::move(cert);
        return out;
      }
    }
  } while (std::next_permutation(a2.begin(), a2.end()));
  if (!out.budget_exhausted)
    out.notes = "all tail arrangements exhausted without a nonzero coefficient";
  return out;
}

VerifyOutcome verify_tail_certificate(const TailCertificate& cert) {
  VerifyOutcome out;
  const CertFamily& fam = cert_family(cert.base.family);
  auto raw = build_r_poly(fam, cert.base.a, cert.abar, cert.t);
  auto deduped = apply_factor_mode(raw, FactorMode::deduped);
  out.factor_count_raw = (int)raw.size();
  out.factor_count_deduped = (int)deduped.size();
  Monomial cap = bounding_monomial(cert.base.lambda, cert.base.a);
  Monomial target(cert.base.target);
  const auto& factors =
      cert.base.factor_mode == FactorMode::raw ? raw : deduped;
  out.structurally_valid =
      target.degree() == (int)factors.size() && target.divides(cap);
  out.recomputed = extract(fam, factors, target);
  if (!coefficient_is_zero(out.recomputed))
    out.recomputed_bad_primes = bad_primes_of(out.recomputed);
  bool coeff_match = !coefficient_is_zero(out.recomputed) &&
                     out.recomputed == cert.base.coefficient;
  out.valid = out.structurally_valid && coeff_match &&
              out.recomputed_bad_primes == cert.base.bad_primes;
  if (!out.structurally_valid) {
    std::ostringstream os;
    os << "structurally invalid: target degree " << target.degree()
       << " vs factor count " << factors.size();
    out.notes = os.str();
  } else if (!coeff_match) {
    out.notes = "coefficient mismatch: recomputed " +
                coefficient_str(out.recomputed) + " vs stated " +
                coefficient_str(cert.base.coefficient);
  }
  return out;
}

std::string TailCertificateStore::key(const std::string& family, int t,
                                      int abar, const TypeVector& lambda) {
  std::ostringstream os;
  os << family << "|t" << t << "|a" << abar << "|";
  for (int l : lambda) os << l << ",";
  return os.str();
}

namespace {

bool avoids_prime(const TailCertificate& cert, std::uint64_t p) {
  if (p == 0) return true;
  for (const auto& bp : cert.base.bad_primes)
    if (bp == p) return false;
  return true;
}

}  // namespace

const TailCertificate* TailCertificateStore::find(const std::string& family,
                                                  int t, int abar,
                                                  const TypeVector& lambda,
                                                  std::uint64_t p) const {
  auto it = store_.find(key(family, t, abar, lambda));
  if (it == store_.end()) return nullptr;
  for (const auto& cert : it->second)
    if (avoids_prime(cert, p)) return &cert;
  return nullptr;
}

void TailCertificateStore::insert(TailCertificate cert) {
  store_[key(cert.base.family, cert.t, cert.abar, cert.base.lambda)].push_back(
      std::move(cert));
}

const TailCertificate* TailCertificateStore::obtain(const CertFamily& fam,
                                                    const TypeVector& lambda,
                                                    int abar, int t,
                                                    std::uint64_t p,
                                                    const SearchConfig& cfg) {
  if (const auto* hit = find(fam.name, t, abar, lambda, p)) return hit;
  std::string neg_key =
      key(fam.name, t, abar, lambda) + "|p" + std::to_string(p);
  if (negative_.count(neg_key)) return nullptr;
  SearchConfig pcfg = cfg;
  pcfg.avoid_prime = p;
  auto res = weak_certificate_search(fam, lambda, abar, t, pcfg);
  if (!res.certificate) {
    negative_.emplace(neg_key, res.budget_exhausted);
    return nullptr;
  }
  insert(std::move(*res.certificate));
  return find(fam.name, t, abar, lambda, p);
}

std::vector<const TailCertificate*> TailCertificateStore::all() const {
  std::vector<const TailCertificate*> out;
  for (const auto& [k, v] : store_)
    for (const auto& cert : v) out.push_back(&cert);
  return out;
}

namespace {

// Tail completion: backtracking over concrete values consistent with the
// certified arrangement pattern, keeping every window-t pair of partial sums
// distinct across the prefix/tail junction.
std::optional<Ordering> complete_tail(const SemidirectGroup& g,
                                      const Ordering& prefix,
                                      const std::vector<GroupElement>& tail,
                                      const std::vector<int>& a2, int t) {
  const int e = g.coset_count();
  const int ell = (int)a2.size();
  const int h = (int)prefix.size();
  std::vector<std::vector<GroupElement>> pool(e);
  for (const auto& el : tail) pool[el.a].push_back(el);
  for (auto& v : pool) std::sort(v.begin(), v.end());
  std::vector<std::vector<bool>> used(e);
  for (int c = 0; c < e; ++c) used[c].assign(pool[c].size(), false);

  std::vector<GroupElement> sums = partial_sums(g, prefix);
  Ordering current = prefix;
  std::function<bool()> rec = [&]() -> bool {
    int pos = (int)current.size() - h;
    if (pos == ell) return true;
    int coset = a2[pos];
    auto& vals = pool[coset];
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (used[coset][i]) continue;
      GroupElement next = g.multiply(sums.back(), vals[i]);
      bool ok = true;
      int j = (int)sums.size();
      for (int d = 1; d <= t && j - d >= 0; ++d)
        if (sums[j - d] == next) {
          ok = false;
          break;
        }
      if (!ok) continue;
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

}  // namespace

AssembleResult assemble_weak_sequencing(const SemidirectGroup& g,
                                        const Subset& s, int t,
                                        TailCertificateStore& store,
                                        const SearchConfig& cfg) {
  AssembleResult result;
  const int k = s.k();
  const int e = g.coset_count();
  if (k <= (2 * t - 3) * e)
    throw std::invalid_argument(
        "assemble_weak_sequencing: requires k > (2t-3)|H| (threshold " +
        std::to_string((2 * t - 3) * e) + ")");
  const CertFamily& fam = cert_family(cert_family_of(g));
  if (fam.eisenstein && g.p() % 6 != 1)
    throw std::invalid_argument(
        "assemble_weak_sequencing: family needs p == 1 (mod 6)");

  // Certificates are ell-indexed; use the smallest certified tail length for
  // the tail type that emerges from the prefix plan.
  for (int ell = 2 * (t - 1); k - ell >= t - 1; ++ell) {
    const int h = k - ell;
    auto plan = make_prefix_plan(g, s, t, h);
    Ordering prefix = greedy_prefix(g, plan);

    std::vector<GroupElement> tail_elems;
    for (const auto& el : s.elements)
      if (std::find(prefix.begin(), prefix.end(), el) == prefix.end())
        tail_elems.push_back(el);
    TypeVector tail_lambda(e, 0);
    for (const auto& el : tail_elems) tail_lambda[el.a]++;

    const TailCertificate* cert =
        store.obtain(fam, tail_lambda, plan.abar, t, g.p(), cfg);
    if (!cert) continue;

    auto ordering = complete_tail(g, prefix, tail_elems, cert->base.a, t);
    if (ordering) {
      result.ordering = std::move(ordering);
      return result;
    }
    result.soundness_alarm = true;
    result.notes =
        "soundness alarm: tail completion exhausted despite a valid "
        "certificate (ell=" +
        std::to_string(ell) + ")";
    return result;
  }
  result.notes =
      "no certified tail length for this subset's emerging tail types";
  return result;
}

}  // namespace nullcert
