#include "nullcert/groups.hpp"

#include <algorithm>
#include <sstream>

namespace nullcert {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int FiniteGroupTable::inverse(int a) const {
  for (int b = 0; b < order; ++b)
    if (mul(a, b) == identity && mul(b, a) == identity) return b;
  throw std::logic_error("FiniteGroupTable: element has no inverse");
}

int FiniteGroupTable::power(int a, int n) const {
  int acc = identity;
  for (int i = 0; i < n; ++i) acc = mul(acc, a);
  return acc;
}

FiniteGroupTable FiniteGroupTable::cyclic(int e) {
  if (e < 1) throw std::invalid_argument("cyclic: order must be >= 1");
  FiniteGroupTable t;
  t.order = e;
  t.identity = 0;
  t.cayley.resize(e * e);
  for (int a = 0; a < e; ++a)
    for (int b = 0; b < e; ++b) t.cayley[a * e + b] = (a + b) % e;
  return t;
}

void FiniteGroupTable::validate() const {
  if (order < 1) throw std::invalid_argument("group table: empty");
  if ((int)cayley.size() != order * order)
    throw std::invalid_argument("group table: wrong table size");
  for (int x : cayley)
    if (x < 0 || x >= order)
      throw std::invalid_argument("group table: entry out of range");
  if (identity < 0 || identity >= order)
    throw std::invalid_argument("group table: identity index out of range");
  // Latin square
  for (int a = 0; a < order; ++a) {
    std::vector<bool> row(order, false), col(order, false);
    for (int b = 0; b < order; ++b) {
      if (row[mul(a, b)]) throw std::invalid_argument("group table: not a Latin square (row)");
      row[mul(a, b)] = true;
      if (col[mul(b, a)]) throw std::invalid_argument("group table: not a Latin square (column)");
      col[mul(b, a)] = true;
    }
  }
  for (int a = 0; a < order; ++a)
    if (mul(a, identity) != a || mul(identity, a) != a)
      throw std::invalid_argument("group table: identity is not two-sided");
  for (int a = 0; a < order; ++a) inverse(a);  // throws if missing
  // associativity makes a Cayley table a group; check it outright (orders
  // here are tiny)
  if (order <= 64) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("group table: not associative");
  }
}

void MultiplierMap::validate(const FiniteGroupTable& h, std::uint64_t p) const {
  if ((int)multipliers.size() != h.order)
    throw std::invalid_argument("multipliers: size must equal |H|");
  for (auto m : multipliers)
    if (m == 0 || m >= p)
      throw std::invalid_argument("multipliers: values must lie in Z_p^*");
  if (multipliers[h.identity] != 1)
    throw std::invalid_argument("multipliers: identity must map to 1");
  for (int a = 0; a < h.order; ++a)
    for (int b = 0; b < h.order; ++b) {
      std::uint64_t lhs = multipliers[h.mul(a, b)];
      std::uint64_t rhs = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(multipliers[a]) * multipliers[b]) % p);
      if (lhs != rhs)
        throw std::invalid_argument("multipliers: not a homomorphism into Z_p^*");
    }
}

std::string to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::dihedral: return "dihedral";
    case FamilyTag::g3p: return "g3p";
    case FamilyTag::direct: return "direct";
    case FamilyTag::custom: return "custom";
  }
  return "?";
}

FamilyTag family_tag_from_string(const std::string& s) {
  if (s == "dihedral") return FamilyTag::dihedral;
  if (s == "g3p") return FamilyTag::g3p;
  if (s == "direct") return FamilyTag::direct;
  if (s == "custom") return FamilyTag::custom;
  throw std::invalid_argument("unknown family: " + s);
}

SemidirectGroup::SemidirectGroup(std::uint64_t p, FiniteGroupTable h,
                                 MultiplierMap phi, FamilyTag family,
                                 std::uint64_t r)
    : p_(p), h_(std::move(h)), phi_(std::move(phi)), family_(family), r_(r) {
  if (!is_prime_u64(p_)) throw std::invalid_argument("p must be prime");
  h_.validate();
  phi_.validate(h_, p_);
}

GroupElement SemidirectGroup::multiply(const GroupElement& u,
                                       const GroupElement& v) const {
  std::uint64_t x = (u.x + static_cast<std::uint64_t>(
                               (static_cast<unsigned __int128>(
                                    phi_.multipliers[u.a]) *
                                v.x) %
                               p_)) %
                    p_;
  return {x, h_.mul(u.a, v.a)};
}

GroupElement SemidirectGroup::inverse(const GroupElement& u) const {
  int ainv = h_.inverse(u.a);
  // (y, ainv)(x, a) = (y + phi[ainv] x, id) = (0, id)
  std::uint64_t y =
      (p_ - static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(phi_.multipliers[ainv]) * u.x) %
                p_)) %
      p_;
  return {y, ainv};
}

std::vector<GroupElement> SemidirectGroup::non_identity_elements() const {
  std::vector<GroupElement> out;
  out.reserve(order() - 1);
  for (int a = 0; a < h_.order; ++a)
    for (std::uint64_t x = 0; x < p_; ++x) {
      GroupElement g{x, a};
      if (g == identity()) continue;
      out.push_back(g);
    }
  return out;
}

std::string SemidirectGroup::describe() const {
  std::ostringstream os;
  os << to_string(family_) << "(p=" << p_;
  if (family_ == FamilyTag::g3p) os << ",r=" << r_;
  if (family_ == FamilyTag::direct || family_ == FamilyTag::custom)
    os << ",e=" << h_.order;
  os << ")";
  return os.str();
}

std::vector<std::uint64_t> find_cube_roots(std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("find_cube_roots: p must be prime");
  std::vector<std::uint64_t> roots;
  for (std::uint64_t r = 2; r < p; ++r) {
    unsigned __int128 r2 = (static_cast<unsigned __int128>(r) * r) % p;
    if ((r2 * r) % p == 1) roots.push_back(r);
  }
  return roots;
}

SemidirectGroup make_dihedral(std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("make_dihedral: p must be prime");
  MultiplierMap phi{{1, p - 1}};
  return SemidirectGroup(p, FiniteGroupTable::cyclic(2), phi,
                         FamilyTag::dihedral);
}

SemidirectGroup make_g3p(std::uint64_t p, std::uint64_t r) {
  if (!is_prime_u64(p)) throw std::invalid_argument("make_g3p: p must be prime");
  if (r <= 1 || r >= p)
    throw std::invalid_argument(
        "make_g3p: r must be a nontrivial cube root of unity (r=1 would give "
        "the direct product)");
  unsigned __int128 r2 = (static_cast<unsigned __int128>(r) * r) % p;
  if ((r2 * r) % p != 1)
    throw std::invalid_argument("make_g3p: r^3 != 1 (mod p)");
  MultiplierMap phi{{1, r, static_cast<std::uint64_t>(r2)}};
  return SemidirectGroup(p, FiniteGroupTable::cyclic(3), phi, FamilyTag::g3p,
                         r);
}

SemidirectGroup make_g3p(std::uint64_t p) {
  auto roots = find_cube_roots(p);
  if (roots.empty())
    throw std::invalid_argument("make_g3p: no nontrivial cube root mod p (need p == 1 mod 6)");
  return make_g3p(p, roots.front());
}

SemidirectGroup make_direct(std::uint64_t p, int e) {
  if (!is_prime_u64(p)) throw std::invalid_argument("make_direct: p must be prime");
  if (e < 1) throw std::invalid_argument("make_direct: e must be >= 1");
  MultiplierMap phi;
  phi.multipliers.assign(e, 1);
  return SemidirectGroup(p, FiniteGroupTable::cyclic(e), phi, FamilyTag::direct);
}

SemidirectGroup make_custom(std::uint64_t p, FiniteGroupTable h,
                            MultiplierMap phi) {
  return SemidirectGroup(p, std::move(h), std::move(phi), FamilyTag::custom);
}

}  // namespace nullcert
