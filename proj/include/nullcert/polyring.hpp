#ifndef NULLCERT_POLYRING_HPP
#define NULLCERT_POLYRING_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nullcert/errors.hpp"

namespace nullcert {

using BigInt = boost::multiprecision::cpp_int;

inline bool is_zero(const BigInt& v) { return v.is_zero(); }

// Eisenstein-style quadratic integer u + v*r reduced by r^2 = -r - 1,
// so r is a primitive cube root of unity (r^3 = 1).
struct Eisenstein {
  BigInt u{0};
  BigInt v{0};

  Eisenstein() = default;
  Eisenstein(long long n) : u(n) {}  // NOLINT: implicit for 0/1 literals
  Eisenstein(BigInt uu, BigInt vv) : u(std::move(uu)), v(std::move(vv)) {}

  static Eisenstein r() { return {BigInt(0), BigInt(1)}; }
  static Eisenstein r2() { return {BigInt(-1), BigInt(-1)}; }

  friend Eisenstein operator+(const Eisenstein& a, const Eisenstein& b) {
    return {a.u + b.u, a.v + b.v};
  }
  friend Eisenstein operator-(const Eisenstein& a, const Eisenstein& b) {
    return {a.u - b.u, a.v - b.v};
  }
  friend Eisenstein operator-(const Eisenstein& a) { return {-a.u, -a.v}; }
  friend Eisenstein operator*(const Eisenstein& a, const Eisenstein& b) {
    return {a.u * b.u - a.v * b.v, a.u * b.v + a.v * b.u - a.v * b.v};
  }
  Eisenstein& operator+=(const Eisenstein& b) {
    u += b.u;
    v += b.v;
    return *this;
  }
  Eisenstein& operator*=(const Eisenstein& b) {
    *this = *this * b;
    return *this;
  }
  friend bool operator==(const Eisenstein& a, const Eisenstein& b) = default;

  std::string str() const;
};

inline bool is_zero(const Eisenstein& c) { return c.u.is_zero() && c.v.is_zero(); }

// Norm of c written a*r + b (a = v, b = u): b^2 - a*b + a^2.  A coefficient
// a*r + b vanishes mod a prime p == 1 (mod 6), with r a nontrivial cube root
// of unity mod p, only if p divides this norm.
inline BigInt eisenstein_norm(const Eisenstein& c) {
  return c.u * c.u - c.v * c.u + c.v * c.v;
}

// Residues mod a prime p, value-carried modulus.
struct ModInt {
  std::uint64_t value{0};
  std::uint64_t p{0};

  ModInt() = default;
  // ring literal (0 or 1) with the modulus still unbound; any arithmetic
  // against a bound value adopts that value's modulus
  explicit ModInt(long long n) : value(static_cast<std::uint64_t>(n)) {}
  ModInt(long long n, std::uint64_t prime) : p(prime) {
    long long m = n % static_cast<long long>(prime);
    if (m < 0) m += static_cast<long long>(prime);
    value = static_cast<std::uint64_t>(m);
  }
  friend ModInt operator+(const ModInt& a, const ModInt& b) {
    ModInt c;
    c.p = a.p ? a.p : b.p;
    c.value = (a.value + b.value) % c.p;
    return c;
  }
  friend ModInt operator-(const ModInt& a, const ModInt& b) {
    ModInt c;
    c.p = a.p ? a.p : b.p;
    c.value = (a.value + c.p - b.value % c.p) % c.p;
    return c;
  }
  friend ModInt operator-(const ModInt& a) {
    ModInt c;
    c.p = a.p;
    c.value = a.value == 0 ? 0 : a.p - a.value;
    return c;
  }
  friend ModInt operator*(const ModInt& a, const ModInt& b) {
    ModInt c;
    c.p = a.p ? a.p : b.p;
    c.value = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a.value) * b.value) % c.p);
    return c;
  }
  ModInt& operator+=(const ModInt& b) {
    *this = *this + b;
    return *this;
  }
  ModInt& operator*=(const ModInt& b) {
    *this = *this * b;
    return *this;
  }
  friend bool operator==(const ModInt& a, const ModInt& b) {
    return a.value == b.value;
  }
};

inline bool is_zero(const ModInt& c) { return c.value == 0; }

// Exponent vector packed 4 bits per variable (exponents <= 15, <= 16 vars).
class Monomial {
 public:
  static constexpr int kMaxVars = 16;
  static constexpr int kMaxExp = 15;

  Monomial() = default;
  explicit Monomial(int nvars) : nvars_(nvars) { check_nvars(nvars); }
  Monomial(std::initializer_list<int> exps)
      : Monomial(std::vector<int>(exps)) {}
  explicit Monomial(const std::vector<int>& exps) : nvars_((int)exps.size()) {
    check_nvars(nvars_);
    for (int i = 0; i < nvars_; ++i) set_exponent(i, exps[i]);
  }

  int nvars() const { return nvars_; }
  std::uint64_t key() const { return bits_; }

  int exponent(int i) const { return (int)((bits_ >> (4 * i)) & 0xFULL); }
  void set_exponent(int i, int e) {
    if (e < 0 || e > kMaxExp)
      throw std::invalid_argument("Monomial: exponent out of range [0,15]");
    bits_ = (bits_ & ~(0xFULL << (4 * i))) |
            (static_cast<std::uint64_t>(e) << (4 * i));
  }
  Monomial incremented(int i) const {
    Monomial m = *this;
    m.set_exponent(i, exponent(i) + 1);
    return m;
  }

  int degree() const {
    std::uint64_t b = bits_;
    int d = 0;
    while (b) {
      d += (int)(b & 0xFULL);
      b >>= 4;
    }
    return d;
  }

  // Componentwise <=.
  bool divides(const Monomial& other) const {
    for (int i = 0; i < nvars_; ++i)
      if (exponent(i) > other.exponent(i)) return false;
    return true;
  }

  std::vector<int> exponents() const {
    std::vector<int> e(nvars_);
    for (int i = 0; i < nvars_; ++i) e[i] = exponent(i);
    return e;
  }

  static Monomial from_key(std::uint64_t key, int nvars) {
    Monomial m(nvars);
    m.bits_ = key;
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.bits_ == b.bits_ && a.nvars_ == b.nvars_;
  }
  // Lexicographic by exponent vector (x1 first).
  friend bool lex_less(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < std::max(a.nvars_, b.nvars_); ++i) {
      int ea = i < a.nvars_ ? a.exponent(i) : 0;
      int eb = i < b.nvars_ ? b.exponent(i) : 0;
      if (ea != eb) return ea < eb;
    }
    return false;
  }

 private:
  static void check_nvars(int n) {
    if (n < 0 || n > kMaxVars)
      throw std::invalid_argument("Monomial: supports at most 16 variables");
  }
  std::uint64_t bits_{0};
  int nvars_{0};
};

// Homogeneous linear form sum coeff_i * x_i; sparse, sorted by variable.
template <class T>
struct LinearForm {
  int nvars{0};
  std::vector<std::pair<int, T>> terms;  // (variable index, coefficient)

  void add_term(int var, T coeff) {
    if (var < 0 || var >= nvars) throw std::invalid_argument("LinearForm: bad variable");
    if (is_zero(coeff)) return;
    terms.emplace_back(var, std::move(coeff));
  }
  void normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  bool empty() const { return terms.empty(); }
  int max_var() const { return terms.back().first; }
  int min_var() const { return terms.front().first; }
};

template <class T>
struct SparsePoly {
  int nvars{0};
  std::unordered_map<std::uint64_t, T> terms;  // keyed by Monomial::key

  explicit SparsePoly(int n = 0) : nvars(n) {}
  std::size_t size() const { return terms.size(); }
  int degree() const {
    int d = 0;
    for (const auto& [k, c] : terms)
      d = std::max(d, Monomial::from_key(k, nvars).degree());
    return d;
  }
  T coefficient(const Monomial& m) const {
    auto it = terms.find(m.key());
    if (it == terms.end()) return T{};
    return it->second;
  }
};

struct ExpandOptions {
  // Abort (throw BudgetExceeded) if the working frontier ever exceeds this
  // many monomials; 0 means unlimited.
  std::size_t node_budget{0};
};

namespace detail {

template <class T>
std::vector<std::size_t> expansion_order(std::span<const LinearForm<T>> forms) {
  std::vector<std::size_t> idx(forms.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& fa = forms[a];
    const auto& fb = forms[b];
    if (fa.max_var() != fb.max_var()) return fa.max_var() < fb.max_var();
    if (fa.terms.size() != fb.terms.size())
      return fa.terms.size() < fb.terms.size();
    return fa.min_var() < fb.min_var();
  });
  return idx;
}

template <class T>
void check_forms(std::span<const LinearForm<T>> forms, int nvars) {
  for (const auto& f : forms) {
    if (f.nvars != nvars)
      throw std::invalid_argument("polyring: forms disagree on variable count");
    if (f.empty())
      throw std::invalid_argument("polyring: zero linear form");
  }
}

}  // namespace detail

// Exact product of the forms with every monomial not dividing `cap` deleted.
// Multiplication order and pruning do not change the retained coefficients.
template <class T>
SparsePoly<T> expand_truncated(std::span<const LinearForm<T>> forms,
                               const Monomial& cap,
                               const ExpandOptions& opt = {}) {
  const int n = cap.nvars();
  detail::check_forms(forms, n);
  const std::size_t nf = forms.size();
  auto order = detail::expansion_order(forms);

  // rem[v] = number of unprocessed forms whose support contains v
  std::vector<int> rem(n, 0);
  for (const auto& f : forms)
    for (const auto& [v, c] : f.terms) rem[v]++;

  SparsePoly<T> front(n);
  front.terms.emplace(Monomial(n).key(), T{1});

  for (std::size_t step = 0; step < nf; ++step) {
    const auto& f = forms[order[step]];
    for (const auto& [v, c] : f.terms) rem[v]--;
    const int steps_left = (int)(nf - step - 1);

    SparsePoly<T> next(n);
    next.terms.reserve(front.terms.size() * 2);
    for (const auto& [key, coeff] : front.terms) {
      Monomial m = Monomial::from_key(key, n);
      for (const auto& [v, c] : f.terms) {
        int ev = m.exponent(v);
        if (ev >= cap.exponent(v)) continue;  // would leave the cap lattice
        Monomial m2 = m.incremented(v);
        // Keep only monomials that can still grow into a divisor of cap:
        // the remaining forms must be able to supply the missing degree.
        long long room = 0;
        for (int u = 0; u < n; ++u)
          room += std::min(cap.exponent(u) - m2.exponent(u), rem[u]);
        if (room < steps_left) continue;
        T prod = coeff * c;
        auto [it, inserted] = next.terms.emplace(m2.key(), prod);
        if (!inserted) it->second += prod;
      }
    }
    // drop explicit zeros
    for (auto it = next.terms.begin(); it != next.terms.end();)
      it = is_zero(it->second) ? next.terms.erase(it) : std::next(it);
    if (opt.node_budget && next.terms.size() > opt.node_budget)
      throw BudgetExceeded("expand_truncated: frontier budget exceeded");
    front = std::move(next);
    if (front.terms.empty()) return front;
  }
  return front;
}

// Exact coefficient of `target` in the product of the forms.  A product of
// homogeneous linear forms is homogeneous, so a target whose total degree
// differs from the number of forms has coefficient zero by construction.
template <class T>
T coefficient_of(std::span<const LinearForm<T>> forms, const Monomial& target) {
  const int n = target.nvars();
  detail::check_forms(forms, n);
  const std::size_t nf = forms.size();
  if ((int)nf != target.degree()) return T{};
  auto order = detail::expansion_order(forms);

  std::vector<int> rem(n, 0);
  for (const auto& f : forms)
    for (const auto& [v, c] : f.terms) rem[v]++;
  for (int v = 0; v < n; ++v)
    if (rem[v] < target.exponent(v)) return T{};

  std::unordered_map<std::uint64_t, T> front;
  front.emplace(Monomial(n).key(), T{1});

  for (std::size_t step = 0; step < nf && !front.empty(); ++step) {
    const auto& f = forms[order[step]];
    for (const auto& [v, c] : f.terms) rem[v]--;

    std::unordered_map<std::uint64_t, T> next;
    next.reserve(front.size() * 2);
    for (const auto& [key, coeff] : front) {
      Monomial m = Monomial::from_key(key, n);
      for (const auto& [v, c] : f.terms) {
        if (m.exponent(v) >= target.exponent(v)) continue;
        Monomial m2 = m.incremented(v);
        // every support variable of f must remain completable
        bool ok = true;
        for (const auto& [u, cu] : f.terms) {
          int have = m2.exponent(u);
          if (target.exponent(u) - have > rem[u]) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        T prod = coeff * c;
        auto [it, inserted] = next.emplace(m2.key(), prod);
        if (!inserted) it->second += prod;
      }
    }
    for (auto it = next.begin(); it != next.end();)
      it = is_zero(it->second) ? next.erase(it) : std::next(it);
    front = std::move(next);
  }
  auto it = front.find(target.key());
  return it == front.end() ? T{} : it->second;
}

// Groups forms that are scalar multiples of one another.  Returns one
// representative per class (the first occurrence, kept verbatim) plus the
// class multiplicities, aligned by index.
template <class T>
std::pair<std::vector<LinearForm<T>>, std::vector<int>> dedupe_proportional(
    std::span<const LinearForm<T>> forms) {
  std::vector<LinearForm<T>> reps;
  std::vector<int> mult;
  auto proportional = [](const LinearForm<T>& a, const LinearForm<T>& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i)
      if (a.terms[i].first != b.terms[i].first) return false;
    // cross-ratio test, valid over an integral domain
    const T& a0 = a.terms[0].second;
    const T& b0 = b.terms[0].second;
    for (std::size_t i = 1; i < a.terms.size(); ++i)
      if (!(a0 * b.terms[i].second == b0 * a.terms[i].second)) return false;
    return true;
  };
  for (const auto& f : forms) {
    bool found = false;
    for (std::size_t c = 0; c < reps.size(); ++c) {
      if (proportional(reps[c], f)) {
        mult[c]++;
        found = true;
        break;
      }
    }
    if (!found) {
      reps.push_back(f);
      mult.push_back(1);
    }
  }
  return {std::move(reps), std::move(mult)};
}

// ---- integer factorization / primality over BigInt (trial + Miller-Rabin +
// Pollard rho); sizes here are modest (certificate coefficients). ----
bool is_prime(const BigInt& n);
std::vector<std::pair<BigInt, int>> factorize(BigInt n);

// Primes dividing every listed coefficient (integers), via gcd.
std::vector<BigInt> bad_primes(const std::vector<BigInt>& coeffs);
// Primes == 1 (mod 6) dividing every listed norm (Eisenstein coefficients).
std::vector<BigInt> bad_primes(const std::vector<Eisenstein>& coeffs);

}  // namespace nullcert

#endif  // NULLCERT_POLYRING_HPP
