#include <doctest.h>

#include <map>
#include <random>

#include "nullcert/polyring.hpp"

using namespace nullcert;

namespace {

// reference expansion: full sequential product, then filter by cap
template <class T>
std::map<std::vector<int>, T> naive_truncated(
    const std::vector<LinearForm<T>>& forms, const Monomial& cap) {
  int n = cap.nvars();
  std::map<std::vector<int>, T> acc{{std::vector<int>(n, 0), T{1}}};
  for (const auto& f : forms) {
    std::map<std::vector<int>, T> next;
    for (const auto& [m, c] : acc)
      for (const auto& [v, cf] : f.terms) {
        auto m2 = m;
        m2[v]++;
        T prod = c * cf;
        auto it = next.find(m2);
        if (it == next.end())
          next.emplace(m2, prod);
        else
          it->second += prod;
      }
    acc = std::move(next);
  }
  std::map<std::vector<int>, T> out;
  for (const auto& [m, c] : acc) {
    bool ok = !is_zero(c);
    for (int v = 0; v < n && ok; ++v)
      if (m[v] > cap.exponent(v)) ok = false;
    if (ok) out.emplace(m, c);
  }
  return out;
}

LinearForm<BigInt> form(int nvars, std::initializer_list<std::pair<int, int>> terms) {
  LinearForm<BigInt> f;
  f.nvars = nvars;
  for (auto [v, c] : terms) f.add_term(v, BigInt(c));
  f.normalize();
  return f;
}

}  // namespace

TEST_CASE("monomial packing") {
  Monomial m({2, 0, 15, 7});
  CHECK(m.exponent(0) == 2);
  CHECK(m.exponent(2) == 15);
  CHECK(m.degree() == 24);
  CHECK(m.divides(Monomial({3, 0, 15, 9})));
  CHECK_FALSE(m.divides(Monomial({1, 0, 15, 9})));
  CHECK(Monomial::from_key(m.key(), 4) == m);
  CHECK_THROWS_AS(Monomial({16}), std::invalid_argument);
  CHECK(lex_less(Monomial({1, 2}), Monomial({2, 0})));
  CHECK(lex_less(Monomial({2, 0}), Monomial({2, 1})));
}

TEST_CASE("eisenstein arithmetic") {
  Eisenstein r = Eisenstein::r();
  CHECK(r * r == Eisenstein::r2());
  CHECK(r * r * r == Eisenstein(1));
  CHECK(r * r + r + Eisenstein(1) == Eisenstein(0));

  // norm of a*r + b is b^2 - ab + a^2
  CHECK(eisenstein_norm(-r) == 1);
  CHECK(eisenstein_norm(r + Eisenstein(1)) == 1);
  Eisenstein c = Eisenstein(-3) + Eisenstein(2) * r;  // 2r - 3
  CHECK(eisenstein_norm(c) == 19);
  // and indeed r == 3 * 2^{-1} == 11 satisfies r^2 + r + 1 == 0 mod 19
  CHECK((11 * 11 + 11 + 1) % 19 == 0);
}

TEST_CASE("eisenstein ring axioms and norm multiplicativity on random pairs") {
  std::mt19937_64 rng(5);
  auto rand_e = [&]() {
    return Eisenstein((long long)(rng() % 41) - 20, (long long)(rng() % 41) - 20);
  };
  for (int i = 0; i < 1000; ++i) {
    auto a = rand_e(), b = rand_e(), c = rand_e();
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(eisenstein_norm(a * b) == eisenstein_norm(a) * eisenstein_norm(b));
  }
}

TEST_CASE("expand_truncated basics") {
  auto f1 = form(2, {{0, 1}});
  auto f2 = form(2, {{1, 1}});
  std::vector<LinearForm<BigInt>> fs{f1, f2};
  auto p = expand_truncated<BigInt>(fs, Monomial({1, 1}));
  CHECK(p.size() == 1);
  CHECK(p.coefficient(Monomial({1, 1})) == 1);

  std::vector<LinearForm<BigInt>> gs{form(2, {{0, 1}, {1, 1}}),
                                     form(2, {{0, 1}, {1, -1}})};
  auto q = expand_truncated<BigInt>(gs, Monomial({1, 1}));
  CHECK(q.size() == 0);  // x1^2 - x2^2 has no monomial dividing x1 x2
}

TEST_CASE("expand_truncated equals naive expansion with cap filter") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + (int)(rng() % 5);       // <= 6 variables
    int nf = 1 + (int)(rng() % 8);      // <= 8 factors
    std::vector<LinearForm<BigInt>> fs;
    for (int i = 0; i < nf; ++i) {
      LinearForm<BigInt> f;
      f.nvars = n;
      int support = 1 + (int)(rng() % n);
      std::vector<int> vars(n);
      for (int v = 0; v < n; ++v) vars[v] = v;
      std::shuffle(vars.begin(), vars.end(), rng);
      for (int sV = 0; sV < support; ++sV) {
        int c = (int)(rng() % 5) - 2;
        if (c == 0) c = 1;
        f.add_term(vars[sV], BigInt(c));
      }
      f.normalize();
      fs.push_back(std::move(f));
    }
    std::vector<int> capv(n);
    for (int v = 0; v < n; ++v) capv[v] = (int)(rng() % (nf + 1));
    Monomial cap(capv);
    auto fast = expand_truncated<BigInt>(fs, cap);
    auto slow = naive_truncated(fs, cap);
    CHECK(fast.size() == slow.size());
    for (const auto& [m, c] : slow)
      CHECK(fast.coefficient(Monomial(m)) == c);
    // and coefficient_of agrees on every retained monomial
    for (const auto& [m, c] : slow)
      CHECK(coefficient_of<BigInt>(fs, Monomial(m)) ==
            ((int)fs.size() == Monomial(m).degree() ? c : BigInt(0)));
  }
}

TEST_CASE("products of homogeneous forms are homogeneous") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + (int)(rng() % 3);
    int nf = 2 + (int)(rng() % 6);
    std::vector<LinearForm<BigInt>> fs;
    for (int i = 0; i < nf; ++i) {
      LinearForm<BigInt> f;
      f.nvars = n;
      for (int v = 0; v < n; ++v)
        if (rng() % 2) f.add_term(v, BigInt((int)(rng() % 3) + 1));
      if (f.empty()) f.add_term(0, BigInt(1));
      f.normalize();
      fs.push_back(std::move(f));
    }
    std::vector<int> capv(n, 15);
    auto p = expand_truncated<BigInt>(fs, Monomial(capv));
    for (const auto& [key, c] : p.terms)
      CHECK(Monomial::from_key(key, n).degree() == nf);
  }
}

TEST_CASE("coefficient_of is multiplication-order invariant") {
  std::mt19937_64 rng(17);
  std::vector<LinearForm<BigInt>> fs{
      form(4, {{0, 1}, {1, -1}}), form(4, {{1, 1}, {2, 1}, {3, -1}}),
      form(4, {{0, 1}, {3, 1}}), form(4, {{2, 1}, {3, 1}}),
      form(4, {{0, -1}, {2, 1}})};
  Monomial target({2, 1, 1, 1});
  BigInt expect = coefficient_of<BigInt>(fs, target);
  for (int i = 0; i < 10; ++i) {
    std::shuffle(fs.begin(), fs.end(), rng);
    CHECK(coefficient_of<BigInt>(fs, target) == expect);
  }
}

TEST_CASE("coefficient_of returns zero off the homogeneous degree") {
  std::vector<LinearForm<BigInt>> fs{form(2, {{0, 1}, {1, 1}}),
                                     form(2, {{0, 1}, {1, -1}})};
  CHECK(coefficient_of<BigInt>(fs, Monomial({1, 0})) == 0);
  CHECK(coefficient_of<BigInt>(fs, Monomial({2, 1})) == 0);
  CHECK(coefficient_of<BigInt>(fs, Monomial({2, 0})) == 1);
  CHECK(coefficient_of<BigInt>(fs, Monomial({0, 2})) == -1);
}

TEST_CASE("expansion budget") {
  std::vector<LinearForm<BigInt>> fs;
  for (int i = 0; i < 8; ++i) {
    LinearForm<BigInt> f;
    f.nvars = 8;
    for (int v = 0; v < 8; ++v) f.add_term(v, BigInt(1));
    f.normalize();
    fs.push_back(std::move(f));
  }
  ExpandOptions opt;
  opt.node_budget = 10;
  CHECK_THROWS_AS(expand_truncated<BigInt>(fs, Monomial(std::vector<int>(8, 8)), opt),
                  BudgetExceeded);
}

TEST_CASE("dedupe_proportional") {
  std::vector<LinearForm<BigInt>> fs{form(3, {{0, 1}, {1, -1}}),
                                     form(3, {{0, -1}, {1, 1}})};
  auto [reps, mult] = dedupe_proportional<BigInt>(fs);
  CHECK(reps.size() == 1);
  CHECK(mult == std::vector<int>{2});
  // the first occurrence is the representative, kept verbatim
  CHECK(reps[0].terms[0].second == 1);

  std::vector<LinearForm<BigInt>> gs{form(3, {{0, 1}, {1, -1}, {2, -1}}),
                                     form(3, {{0, 1}, {1, -1}, {2, -1}})};
  auto [reps2, mult2] = dedupe_proportional<BigInt>(gs);
  CHECK(reps2.size() == 1);
  CHECK(mult2 == std::vector<int>{2});

  std::vector<LinearForm<BigInt>> hs{form(3, {{0, 1}, {1, 1}}),
                                     form(3, {{0, 1}, {1, -1}})};
  auto [reps3, mult3] = dedupe_proportional<BigInt>(hs);
  CHECK(reps3.size() == 2);
}

TEST_CASE("the ring is pluggable: Z_p coefficients") {
  // same computation as the integer case, reduced mod 11
  std::vector<LinearForm<ModInt>> fs;
  std::vector<LinearForm<BigInt>> ref;
  std::mt19937_64 rng(23);
  for (int i = 0; i < 6; ++i) {
    LinearForm<ModInt> f;
    LinearForm<BigInt> g;
    f.nvars = g.nvars = 4;
    for (int v = 0; v < 4; ++v)
      if (rng() % 2) {
        int c = (int)(rng() % 7) - 3;
        if (c == 0) c = 2;
        f.add_term(v, ModInt(c, 11));
        g.add_term(v, BigInt(c));
      }
    if (f.terms.empty()) {
      f.add_term(0, ModInt(1, 11));
      g.add_term(0, BigInt(1));
    }
    f.normalize();
    g.normalize();
    fs.push_back(std::move(f));
    ref.push_back(std::move(g));
  }
  Monomial target({2, 2, 1, 1});
  ModInt got = coefficient_of<ModInt>(fs, target);
  BigInt want = coefficient_of<BigInt>(ref, target);
  BigInt wmod = ((want % 11) + 11) % 11;
  CHECK(BigInt(got.p == 0 ? 0 : got.value) == wmod);
}

TEST_CASE("factorization utilities") {
  CHECK(is_prime(BigInt(131)));
  CHECK_FALSE(is_prime(BigInt(38514)));
  auto f = factorize(BigInt(38514));
  CHECK(f == std::vector<std::pair<BigInt, int>>{{2, 1}, {3, 1}, {7, 2}, {131, 1}});
  CHECK(factorize(BigInt(-12)) ==
        std::vector<std::pair<BigInt, int>>{{2, 2}, {3, 1}});
  // a larger semiprime exercises the rho path
  CHECK(factorize(BigInt("215947813") * 1000003)[0].first == BigInt(1000003));
}

TEST_CASE("bad primes") {
  CHECK(bad_primes(std::vector<BigInt>{38514}) ==
        std::vector<BigInt>{2, 3, 7, 131});
  CHECK(bad_primes(std::vector<BigInt>{6, 10}) == std::vector<BigInt>{2});
  CHECK(bad_primes(std::vector<Eisenstein>{-Eisenstein::r()}).empty());
  CHECK_THROWS_AS(bad_primes(std::vector<BigInt>{0, 0}), std::invalid_argument);
  // 2r - 3 has norm 19 (19 == 1 mod 6)
  Eisenstein c = Eisenstein(-3) + Eisenstein(2) * Eisenstein::r();
  CHECK(bad_primes(std::vector<Eisenstein>{c}) == std::vector<BigInt>{19});
}
