#include "nullcert/polyring.hpp"

#include <numeric>
#include <random>
#include <sstream>

namespace nullcert {

std::string Eisenstein::str() const {
  std::ostringstream os;
  if (v.is_zero()) {
    os << u;
  } else {
    os << v << "*r";
    if (u > 0) os << "+" << u;
    if (u < 0) os << u;
  }
  return os.str();
}

namespace {

BigInt mulmod(const BigInt& a, const BigInt& b, const BigInt& m) {
  return (a * b) % m;
}

BigInt powmod(BigInt base, BigInt exp, const BigInt& m) {
  BigInt result = 1;
  base %= m;
  while (exp > 0) {
    if ((exp & 1) != 0) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin(const BigInt& n, const BigInt& a) {
  if (n % a == 0) return n == a;
  BigInt d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  BigInt x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 0; i < s - 1; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

BigInt pollard_rho(const BigInt& n) {
  if ((n & 1) == 0) return 2;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ n.convert_to<std::uint64_t>());
  while (true) {
    BigInt x = rng() % n;
    BigInt y = x;
    BigInt c = rng() % n + 1;
    BigInt d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      d = gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // deterministic for n < 3.3e24 with this witness set
  for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (!miller_rabin(n, a)) return false;
  return true;
}

std::vector<std::pair<BigInt, int>> factorize(BigInt n) {
  if (n < 0) n = -n;
  std::vector<std::pair<BigInt, int>> out;
  if (n <= 1) return out;
  auto push = [&](const BigInt& p) {
    for (auto& [q, e] : out)
      if (q == p) {
        ++e;
        return;
      }
    out.emplace_back(p, 1);
  };
  for (std::uint64_t p = 2; p < 100000 && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      push(p);
      n /= p;
    }
  }
  // remaining part: peel with primality test + rho
  std::vector<BigInt> stack;
  if (n > 1) stack.push_back(n);
  while (!stack.empty()) {
    BigInt m = stack.back();
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime(m)) {
      push(m);
      continue;
    }
    BigInt d = pollard_rho(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BigInt> bad_primes(const std::vector<BigInt>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("bad_primes: empty list");
  BigInt g = 0;
  for (const auto& c : coeffs) g = gcd(g, c);
  if (g.is_zero())
    throw std::invalid_argument("bad_primes: all coefficients are zero");
  std::vector<BigInt> primes;
  for (auto& [p, e] : factorize(g)) primes.push_back(p);
  return primes;
}

std::vector<BigInt> bad_primes(const std::vector<Eisenstein>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("bad_primes: empty list");
  BigInt g = 0;
  bool all_zero = true;
  for (const auto& c : coeffs) {
    if (!is_zero(c)) all_zero = false;
    g = gcd(g, eisenstein_norm(c));
  }
  if (all_zero)
    throw std::invalid_argument("bad_primes: all coefficients are zero");
  std::vector<BigInt> primes;
  for (auto& [p, e] : factorize(g))
    if (p % 6 == 1) primes.push_back(p);
  return primes;
}

}  // namespace nullcert
