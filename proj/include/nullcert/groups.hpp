#ifndef NULLCERT_GROUPS_HPP
#define NULLCERT_GROUPS_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullcert {

bool is_prime_u64(std::uint64_t n);

// A finite group given by an explicit Cayley table over element indices
// 0..order-1.  validate() checks the Latin-square, identity and inverse
// invariants.
struct FiniteGroupTable {
  int order{0};
  std::vector<int> cayley;  // row-major: cayley[a*order + b] = a*b
  int identity{0};
  std::vector<std::string> names;  // optional labels

  int mul(int a, int b) const { return cayley[a * order + b]; }
  int inverse(int a) const;
  int power(int a, int n) const;

  static FiniteGroupTable cyclic(int e);
  void validate() const;
};

// Unit multipliers of Z_p, one per element of H; must be a homomorphism
// into Z_p^* (checked exhaustively over H x H at construction).
struct MultiplierMap {
  std::vector<std::uint64_t> multipliers;

  void validate(const FiniteGroupTable& h, std::uint64_t p) const;
};

enum class FamilyTag { dihedral, g3p, direct, custom };

std::string to_string(FamilyTag tag);
FamilyTag family_tag_from_string(const std::string& s);

struct GroupElement {
  std::uint64_t x{0};  // residue mod p
  int a{0};            // element index in H

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

// The semidirect product Z_p x|_phi H on pairs (x, a) with
// (x1,a1)(x2,a2) = (x1 + phi[a1]*x2 mod p, a1*a2).
// Immutable after construction; all operations are pure.
class SemidirectGroup {
 public:
  SemidirectGroup(std::uint64_t p, FiniteGroupTable h, MultiplierMap phi,
                  FamilyTag family, std::uint64_t r = 1);

  std::uint64_t p() const { return p_; }
  const FiniteGroupTable& h() const { return h_; }
  const MultiplierMap& phi() const { return phi_; }
  FamilyTag family() const { return family_; }
  std::uint64_t r() const { return r_; }
  std::uint64_t order() const { return p_ * h_.order; }
  int coset_count() const { return h_.order; }

  GroupElement identity() const { return {0, h_.identity}; }
  GroupElement multiply(const GroupElement& u, const GroupElement& v) const;
  GroupElement inverse(const GroupElement& u) const;
  bool is_valid(const GroupElement& u) const {
    return u.x < p_ && u.a >= 0 && u.a < h_.order;
  }

  // All non-identity elements, in canonical (a, x) order.
  std::vector<GroupElement> non_identity_elements() const;

  std::string describe() const;

 private:
  std::uint64_t p_;
  FiniteGroupTable h_;
  MultiplierMap phi_;
  FamilyTag family_;
  std::uint64_t r_;
};

// All r in [2, p-1] with r^3 == 1 (mod p); empty iff p != 1 (mod 6)
// for p > 3.  Rejects non-prime p.
std::vector<std::uint64_t> find_cube_roots(std::uint64_t p);

SemidirectGroup make_dihedral(std::uint64_t p);
SemidirectGroup make_g3p(std::uint64_t p, std::uint64_t r);
// Convenience: picks the smallest nontrivial cube root.
SemidirectGroup make_g3p(std::uint64_t p);
SemidirectGroup make_direct(std::uint64_t p, int e);
SemidirectGroup make_custom(std::uint64_t p, FiniteGroupTable h,
                            MultiplierMap phi);

}  // namespace nullcert

#endif  // NULLCERT_GROUPS_HPP
