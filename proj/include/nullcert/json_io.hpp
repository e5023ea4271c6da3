#ifndef NULLCERT_JSON_IO_HPP
#define NULLCERT_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "nullcert/certify.hpp"
#include "nullcert/groups.hpp"
#include "nullcert/polyring.hpp"
#include "nullcert/weakseq.hpp"

namespace nullcert {

// Canonical key ordering is part of the persistence contract; everything
// below emits nlohmann::ordered_json.
using Json = nlohmann::ordered_json;

// {"family":"dihedral","p":7} | {"family":"g3p","p":7,"r":2} |
// {"family":"direct","p":5,"e":3} |
// {"family":"custom","p":..,"cayley":..,"multipliers":..}
SemidirectGroup group_from_json(const Json& j);
Json group_to_json(const SemidirectGroup& g);

// Coefficients serialize as a plain integer (decimal string when outside
// int64) or {"a":..,"b":..} for a*r + b.
Json coefficient_to_json(const Coefficient& c);
Coefficient coefficient_from_json(const Json& j);

Json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json tail_certificate_to_json(const TailCertificate& cert);
TailCertificate tail_certificate_from_json(const Json& j);

// {"exponents":[..],"coeff":..} per term, sorted by exponent vector.
template <class T>
Json poly_to_json(const SparsePoly<T>& p);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace nullcert

#endif  // NULLCERT_JSON_IO_HPP
