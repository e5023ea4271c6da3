#ifndef NULLCERT_WEAKSEQ_HPP
#define NULLCERT_WEAKSEQ_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nullcert/certify.hpp"

namespace nullcert {

// Reservation plan for the greedy prefix: h prefix slots, ell = k - h tail
// slots, abar the abundant coset, and 2(t-1) reserved coset-abar elements.
struct PrefixPlan {
  int t{0};
  int h{0};
  int ell{0};
  int abar{0};
  std::vector<GroupElement> reserved;   // S', size 2(t-1), coset abar
  std::vector<GroupElement> remainder;  // S'' = S \ S'
};

// Chooses abar as the most frequent coset (ties to the smaller index) and
// reserves the canonically smallest 2(t-1) elements of that coset.
// Preconditions: k - h >= 2(t-1), h >= t-1, and the abundant coset holds at
// least 2(t-1) elements.
PrefixPlan make_prefix_plan(const SemidirectGroup& g, const Subset& s, int t,
                            int h);

// Constructive prefix of h elements: positions 1..h-t+1 drawn from S'',
// positions h-t+2..h from S', scanning candidates in canonical element order
// and accepting the first that keeps all window-t partial sums distinct.
// The result satisfies (a) the prefix is a partial t-weak sequencing,
// (b) its last t-1 positions carry coset abar, (c) t-1 reserved elements
// remain for the tail.
Ordering greedy_prefix(const SemidirectGroup& g, const Subset& s, int t, int h);
Ordering greedy_prefix(const SemidirectGroup& g, const PrefixPlan& plan);

// Tail polynomial of the weak pipeline: the factors of q_{a''} (windowed
// by t) plus, for each boundary pair (i in [0,t-1], j in [1,t-i-1]) with
// abar^{i+1} * a''_1 ... a''_j = id in H, the form
// phi_{abar^{i+1}} z_1 + ... + phi_{abar^{i+1} a''_1 .. a''_{j-1}} z_j.
// Depends only on (a'', abar, t, family).
std::vector<FactorSpec> build_r_poly(const CertFamily& fam,
                                     const std::vector<int>& tail_arrangement,
                                     int abar, int t);

struct TailCertificate {
  Certificate base;  // base.a is the tail arrangement a'', base.k = ell
  int t{0};
  int abar{0};
  int ell{0};
};

struct TailSearchOutcome {
  std::optional<TailCertificate> certificate;
  bool budget_exhausted{false};
  std::uint64_t arrangements_tried{0};
  std::string notes;
};

// Searches tail arrangements of the multiset lambda'' honoring the
// (c)-constraint (abar appears >= t-1 times), expanding r_{a'',abar,ell}
// with cap equal to the tail bounding monomial.
TailSearchOutcome weak_certificate_search(const CertFamily& fam,
                                          const TypeVector& tail_lambda,
                                          int abar, int t,
                                          const SearchConfig& cfg = {});

VerifyOutcome verify_tail_certificate(const TailCertificate& cert);

// In-memory store of tail certificates keyed by (family, t, abar, lambda'');
// searches on demand and caches results, including exhausted searches.
// Several certificates may exist per key (witnesses selected to avoid
// different primes); each certificate stays family-level.
class TailCertificateStore {
 public:
  // first stored certificate applicable at p (p = 0 accepts any)
  const TailCertificate* find(const std::string& family, int t, int abar,
                              const TypeVector& lambda,
                              std::uint64_t p = 0) const;
  void insert(TailCertificate cert);
  // find or search; p != 0 requires (and searches for) a witness whose bad
  // primes avoid p; returns nullptr when the search exhausts
  const TailCertificate* obtain(const CertFamily& fam, const TypeVector& lambda,
                                int abar, int t, std::uint64_t p = 0,
                                const SearchConfig& cfg = {});

  std::vector<const TailCertificate*> all() const;

 private:
  std::map<std::string, std::vector<TailCertificate>> store_;
  std::map<std::string, bool> negative_;  // exhausted searches (key includes p)
  static std::string key(const std::string& family, int t, int abar,
                         const TypeVector& lambda);
};

struct AssembleResult {
  std::optional<Ordering> ordering;
  bool soundness_alarm{false};  // certificate present but completion failed
  std::string notes;
};

// End-to-end t-weak sequencing: greedy prefix, tail certificate lookup, and
// backtracking completion of the tail consistent with the certified
// arrangement pattern.  Preconditions: k > (2t-3)|H| and p outside the
// matched certificate's bad primes.
AssembleResult assemble_weak_sequencing(const SemidirectGroup& g,
                                        const Subset& s, int t,
                                        TailCertificateStore& store,
                                        const SearchConfig& cfg = {});

}  // namespace nullcert

#endif  // NULLCERT_WEAKSEQ_HPP
