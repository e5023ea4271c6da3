#ifndef NULLCERT_SEQUENCING_HPP
#define NULLCERT_SEQUENCING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nullcert/groups.hpp"

namespace nullcert {

// A subset of the non-identity elements of g, kept in a canonical order.
struct Subset {
  std::vector<GroupElement> elements;

  int k() const { return (int)elements.size(); }
};

// Distinct non-identity elements required; throws otherwise.
Subset make_subset(const SemidirectGroup& g, std::vector<GroupElement> elems);

// Text form "x.a" comma-separated, e.g. "3.1,2.0,5.1".
Subset parse_subset(const SemidirectGroup& g, const std::string& text);
std::string format_subset(const Subset& s);

using Ordering = std::vector<GroupElement>;   // a permutation of a subset
using TypeVector = std::vector<int>;          // lambda, length |H|

struct QuotientSequencing {
  std::vector<int> a;  // arrangement over H-indices, length k
  std::vector<int> b;  // partial products in H, length k+1, b[0] = id

  static QuotientSequencing from_arrangement(const FiniteGroupTable& h,
                                             std::vector<int> a);
};

// s_0 = id, s_j = s_{j-1} * x_j; returns k+1 sums.
std::vector<GroupElement> partial_sums(const SemidirectGroup& g,
                                       const Ordering& ordering);

bool is_linear_sequencing(const SemidirectGroup& g, const Ordering& ordering);
bool is_cyclic_sequencing(const SemidirectGroup& g, const Ordering& ordering);
// s_i != s_j for all 0 <= i < j <= k with j - i <= t; requires 1 <= t <= k.
bool is_t_weak_sequencing(const SemidirectGroup& g, const Ordering& ordering,
                          int t);

TypeVector subset_type(const SemidirectGroup& g, const Subset& s);

// Every H-element occurs at most r times among b_0..b_k.
bool is_quotient_sequencing(const FiniteGroupTable& h,
                            const std::vector<int>& arrangement, int r);

struct OracleMode {
  enum Kind { linear, any, t_weak } kind{any};
  int t{0};  // for t_weak

  static OracleMode Linear() { return {linear, 0}; }
  static OracleMode Any() { return {any, 0}; }
  static OracleMode TWeak(int t) { return {t_weak, t}; }
};

// Deterministic backtracking oracle; explores elements in canonical sorted
// order and prunes on the first repeated partial sum within the active
// window.  Returns an ordering satisfying the mode, or nullopt if exhaustive
// search proves none exists.  Throws if k exceeds the cap.
std::optional<Ordering> brute_force_sequence(const SemidirectGroup& g,
                                             const Subset& s, OracleMode mode,
                                             int cap = 12);

struct SubsetVerdict {
  Subset subset;
  bool linear{false};
  bool cyclic{false};
};

struct TypeCheckReport {
  TypeVector lambda;
  OracleMode mode;
  std::uint64_t total{0};
  std::uint64_t linear{0};
  std::uint64_t cyclic_only{0};
  std::uint64_t satisfied{0};    // satisfied the requested mode
  std::uint64_t unsatisfied{0};  // exhausted without an ordering
  std::vector<SubsetVerdict> failures;  // the unsatisfied subsets
  std::vector<SubsetVerdict> verdicts;  // per-subset detail, if requested
};

// Iterates all subsets of type lambda (coset-wise combinations, no symmetry
// reduction by default) and runs the brute-force oracle on each.  Throws if
// the subset count exceeds `budget`.
//
// scaling_reduction: opt-in orbit reduction under the automorphisms
// (x, a) |-> (c*x, a) for c in Z_p^*.  These are group automorphisms (the
// H part and the multiplier action commute with scaling), they preserve the
// type and map orderings to orderings with scaled partial sums, so every
// sequencing verdict is constant on each orbit; only the canonically
// smallest representative per orbit is checked, and the counters then count
// orbits rather than subsets.
TypeCheckReport exhaustive_type_check(const SemidirectGroup& g,
                                      const TypeVector& lambda, OracleMode mode,
                                      std::uint64_t budget = 5'000'000,
                                      bool keep_verdicts = false, int jobs = 1,
                                      bool scaling_reduction = false);

// Enumeration helper: all subsets of a given type, canonical order.
std::vector<Subset> subsets_of_type(const SemidirectGroup& g,
                                    const TypeVector& lambda,
                                    std::uint64_t budget);

}  // namespace nullcert

#endif  // NULLCERT_SEQUENCING_HPP
