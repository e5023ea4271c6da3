#ifndef NULLCERT_CERTIFY_HPP
#define NULLCERT_CERTIFY_HPP

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nullcert/groups.hpp"
#include "nullcert/polyring.hpp"
#include "nullcert/sequencing.hpp"

namespace nullcert {

enum class CertMode { sequencing, linear };
enum class FactorMode { raw, deduped };

std::string to_string(CertMode m);
std::string to_string(FactorMode m);
CertMode cert_mode_from_string(const std::string& s);
FactorMode factor_mode_from_string(const std::string& s);

// Family-level data for certificates: H together with symbolic unit
// multipliers.  Property-(*) families carry +-1 units and certify over the
// integers; g3p carries powers of r and certifies in the Eisenstein ring,
// so one certificate quantifies over every admissible prime p.
struct CertFamily {
  std::string name;  // "dihedral" | "direct2" | "direct3" | "g3p"
  FiniteGroupTable h;
  bool eisenstein{false};
  std::vector<Eisenstein> phi;  // unit multiplier per H element

  int e() const { return h.order; }
};

CertFamily cert_family_dihedral();
CertFamily cert_family_direct(int e);
CertFamily cert_family_g3p();
const CertFamily& cert_family(const std::string& name);
// The certificate family matching a concrete group (dihedral/g3p/direct).
std::string cert_family_of(const SemidirectGroup& g);

// One linear factor of the sequencing polynomial, tagged by block:
// 'd' difference (x_j - x_i), 'w' partial-sum window, 'b' tail boundary.
// Coefficients are units, stored as Eisenstein values ((+-1,0) for
// property-(*) families).
struct FactorSpec {
  char block{'d'};
  int i{0}, j{0};
  std::vector<std::pair<int, Eisenstein>> coeffs;
};

// Eq.-(1) factor list for the arrangement: differences for every equal-coset
// pair, and a partial-sum window form for every 0 <= i < j <= k with
// b_i = b_j and j != i+1.  mode linear keeps the pair {0,k} (forcing
// s_0 != s_k); mode sequencing drops it.
std::vector<FactorSpec> build_pa(const CertFamily& fam,
                                 const QuotientSequencing& qs, CertMode mode);

// Weak variant: window pairs additionally restricted to j - i <= t.
// Requires 1 <= t < k.
std::vector<FactorSpec> build_qa(const CertFamily& fam,
                                 const QuotientSequencing& qs, int t);

// Same construction without the t < k guard (the restriction is vacuous at
// t = k); used by tail polynomials whose length can equal t.
std::vector<FactorSpec> windowed_factors(const CertFamily& fam,
                                         const QuotientSequencing& qs, int t);

// FactorMode::deduped collapses proportional duplicates among the
// difference/window blocks, keeping the first occurrence verbatim.
// Boundary factors ('b') are distinct constraints that may coincide in form
// and are never collapsed.
std::vector<FactorSpec> apply_factor_mode(std::vector<FactorSpec> factors,
                                          FactorMode mode);

// Lift factor specs into ring-typed linear forms.  The BigInt instantiation
// requires every unit to be rational (+-1); g3p factors need Eisenstein.
template <class T>
std::vector<LinearForm<T>> to_forms(std::span<const FactorSpec> factors,
                                    int nvars);

// Exponent of x_i is lambda_{a_i} - 1.
Monomial bounding_monomial(const TypeVector& lambda, const std::vector<int>& a);

using Coefficient = std::variant<BigInt, Eisenstein>;

bool coefficient_is_zero(const Coefficient& c);
std::string coefficient_str(const Coefficient& c);
std::vector<BigInt> bad_primes_of(const Coefficient& c);

struct Certificate {
  std::string family;
  int k{0};
  TypeVector lambda;
  std::vector<int> a;
  CertMode mode{CertMode::linear};
  FactorMode factor_mode{FactorMode::raw};
  std::vector<int> target;
  Coefficient coefficient{BigInt(0)};
  std::vector<BigInt> bad_primes;
  int degree{0};  // factor count in the stated factor mode
  std::string notes;
};

struct VerifyOutcome {
  bool valid{false};
  // target total degree == factor count in the stated mode
  bool structurally_valid{false};
  Coefficient recomputed{BigInt(0)};
  std::vector<BigInt> recomputed_bad_primes;
  int factor_count_raw{0};
  int factor_count_deduped{0};
  std::string notes;
};

// Rebuilds the polynomial in cert.factor_mode, recomputes the coefficient
// and bad primes, and flags degree mismatches as structurally invalid.
VerifyOutcome verify_certificate(const Certificate& cert);

enum class FactorModePreference { any, raw_only, deduped_only };

struct SearchConfig {
  std::size_t expand_budget{2'000'000};  // frontier nodes for exact expansion
  int samples{400};                      // candidate targets per arrangement
  int max_verifications{48};             // coefficient extractions per arrangement
  std::uint64_t max_arrangements{1'000'000};
  std::uint64_t seed{1};
  int jobs{1};
  // when nonzero, only accept witnesses whose coefficient survives at this
  // prime (it must not land among the certificate's bad primes)
  std::uint64_t avoid_prime{0};
  // restrict which factor mode emitted certificates may use
  FactorModePreference factor_mode{FactorModePreference::any};
};

struct SearchOutcome {
  std::optional<Certificate> certificate;
  bool budget_exhausted{false};
  std::uint64_t arrangements_tried{0};
  std::string notes;
};

// Iterates candidate arrangements of the multiset defined by lambda in
// canonical (lexicographic) order; per arrangement expands with cap equal to
// the bounding monomial (or, past the expansion budget, verifies
// deterministically sampled candidate targets) and returns the first
// certificate whose target has total degree equal to the factor count,
// divides the cap, and has nonzero coefficient.
SearchOutcome search_certificate(const CertFamily& fam,
                                 const TypeVector& lambda, CertMode mode,
                                 const SearchConfig& cfg = {});

// Shared kernel of the certificate searches: find a maximum-degree divisor
// of `cap` with nonzero coefficient in the product of `factors`.  Uses exact
// cap-truncated expansion while the frontier budget allows (lex-smallest
// target, a proven negative otherwise) and falls back to deterministically
// sampled candidate targets verified by exact extraction.
struct TargetSearchResult {
  std::optional<Monomial> target;
  Coefficient coefficient{BigInt(0)};
  bool budget_hit{false};
  bool exhaustive{false};  // expansion completed: a negative is a proof
};
TargetSearchResult find_nonzero_max_degree_target(
    const CertFamily& fam, const std::vector<FactorSpec>& factors,
    const Monomial& cap, const SearchConfig& cfg, std::uint64_t seed_hash);

std::uint64_t fnv1a(const std::string& s);

// True iff every prime factor of m exceeds k!.
bool applies_to_composite(const BigInt& m, int k);

// Whether a family-level certificate applies to the concrete prime p:
// p > 3, the type fits in the group, and p is not a bad prime.
bool certificate_applies(const Certificate& cert, std::uint64_t p);

// Search a concrete ordering of S matching the certificate's arrangement
// pattern whose partial sums satisfy the certificate's mode (used by the
// soundness cross-checks and the certificate-guided sequencer).
std::optional<Ordering> guided_sequence(const SemidirectGroup& g,
                                        const Subset& s,
                                        const Certificate& cert);

}  // namespace nullcert

#endif  // NULLCERT_CERTIFY_HPP
