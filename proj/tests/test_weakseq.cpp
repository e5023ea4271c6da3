#include <doctest.h>

#include <map>
#include <random>

#include "nullcert/weakseq.hpp"

using namespace nullcert;

namespace {

std::map<int, Eisenstein> factor_map(const FactorSpec& f) {
  std::map<int, Eisenstein> m;
  for (const auto& [v, c] : f.coeffs) m[v] = c;
  return m;
}

const Eisenstein kOne{1};
const Eisenstein kMinus{-1};

Subset random_subset(const SemidirectGroup& g, int k, int min_abundant,
                     std::mt19937_64& rng) {
  while (true) {
    auto pool = g.non_identity_elements();
    std::shuffle(pool.begin(), pool.end(), rng);
    Subset s{std::vector<GroupElement>(pool.begin(), pool.begin() + k)};
    auto lambda = subset_type(g, s);
    if (*std::max_element(lambda.begin(), lambda.end()) >= min_abundant)
      return s;
  }
}

}  // namespace

TEST_CASE("q_a with t=1 keeps only difference factors") {
  auto fam = cert_family_dihedral();
  auto qs = QuotientSequencing::from_arrangement(fam.h, {0, 0, 1, 0, 1});
  auto q1 = build_qa(fam, qs, 1);
  for (const auto& f : q1) CHECK(f.block == 'd');
}

TEST_CASE("q_a factors form a subset of p_a factors") {
  auto fam = cert_family_dihedral();
  auto qs = QuotientSequencing::from_arrangement(fam.h, {1, 0, 1, 0, 1, 0});
  auto p = build_pa(fam, qs, CertMode::sequencing);
  for (int t = 1; t < 6; ++t) {
    auto q = build_qa(fam, qs, t);
    CHECK(q.size() <= p.size());
    for (const auto& f : q) {
      bool found = false;
      for (const auto& pf : p)
        if (pf.block == f.block && pf.i == f.i && pf.j == f.j) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("the weak worked example: 12 factors including the duplicate") {
  auto fam = cert_family_dihedral();
  auto fs = build_r_poly(fam, {1, 0, 1, 0, 1, 0}, 0, 4);
  REQUIRE(fs.size() == 12);
  std::vector<std::map<int, Eisenstein>> expect = {
      {{2, kOne}, {0, kMinus}},                            // z3 - z1
      {{4, kOne}, {0, kMinus}},                            // z5 - z1
      {{3, kOne}, {1, kMinus}},                            // z4 - z2
      {{5, kOne}, {1, kMinus}},                            // z6 - z2
      {{4, kOne}, {2, kMinus}},                            // z5 - z3
      {{5, kOne}, {3, kMinus}},                            // z6 - z4
      {{0, kOne}, {1, kMinus}, {2, kMinus}},               // z1 - z2 - z3
      {{0, kOne}, {1, kMinus}, {2, kMinus}, {3, kOne}},    // z1 - z2 - z3 + z4
      {{1, kOne}, {2, kOne}, {3, kMinus}, {4, kMinus}},    // z2 + z3 - z4 - z5
      {{2, kOne}, {3, kMinus}, {4, kMinus}},               // z3 - z4 - z5
      {{2, kOne}, {3, kMinus}, {4, kMinus}, {5, kOne}},    // z3 - z4 - z5 + z6
      {{0, kOne}, {1, kMinus}, {2, kMinus}},               // boundary duplicate
  };
  for (std::size_t i = 0; i < fs.size(); ++i) CHECK(factor_map(fs[i]) == expect[i]);
  CHECK(fs.back().block == 'b');

  auto forms = to_forms<BigInt>(fs, 6);
  CHECK(coefficient_of<BigInt>(forms, Monomial({2, 2, 2, 2, 2, 2})) == -12);

  SUBCASE("dedupe keeps the boundary duplicate") {
    auto ded = apply_factor_mode(fs, FactorMode::deduped);
    CHECK(ded.size() == 12);  // no window/difference duplicates here
  }
}

TEST_CASE("boundary block is empty when no junction equality exists") {
  auto fam = cert_family_dihedral();
  // abar = 1 and tail starting 0,0: 1^(i+1) * prefix never reaches id for
  // j <= t-i-1 with t=2
  auto fs = build_r_poly(fam, {0, 0, 1, 1}, 1, 2);
  for (const auto& f : fs) CHECK(f.block != 'b');
}

TEST_CASE("r factor count equals q count plus boundary equalities") {
  auto fam = cert_family_direct(2);
  std::vector<int> a2{0, 1, 0, 0, 1, 1, 1, 0, 0, 1};
  int t = 6;
  auto qs = QuotientSequencing::from_arrangement(fam.h, a2);
  auto q = build_qa(fam, qs, t);
  auto r = build_r_poly(fam, a2, 0, t);
  int boundary = 0;
  for (const auto& f : r)
    if (f.block == 'b') boundary++;
  CHECK(r.size() == q.size() + boundary);
  CHECK(boundary == 6);
}

TEST_CASE("prefix plan preconditions") {
  auto g = make_dihedral(13);
  std::mt19937_64 rng(123);
  auto s = random_subset(g, 14, 6, rng);
  CHECK_THROWS_AS(make_prefix_plan(g, s, 4, 14), std::invalid_argument);
  CHECK_THROWS_AS(make_prefix_plan(g, s, 4, 2), std::invalid_argument);

  // too few abundant-coset elements: k = 6 with lambda (3,3), t = 4 needs 6
  auto small = parse_subset(g, "1.0,2.0,3.0,1.1,2.1,3.1");
  CHECK_THROWS_AS(make_prefix_plan(g, small, 4, 0), std::invalid_argument);
}

TEST_CASE("greedy prefix satisfies (a), (b), (c)") {
  auto g = make_dihedral(13);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    int t = 2 + (int)(rng() % 3);  // 2..4
    int k = 14;
    auto s = random_subset(g, k, 2 * (t - 1), rng);
    int h = k - 2 * (t - 1);
    auto plan = make_prefix_plan(g, s, t, h);
    auto prefix = greedy_prefix(g, plan);
    REQUIRE((int)prefix.size() == h);
    // (a) the prefix is a partial t-weak sequencing
    CHECK(is_t_weak_sequencing(g, prefix, t));
    // (b) positions h-t+2..h carry the abundant coset
    for (int m = h - t + 1; m < h; ++m) CHECK(prefix[m].a == plan.abar);
    // (c) at least t-1 abundant-coset elements remain for the tail
    int left = 0;
    for (const auto& e : s.elements)
      if (e.a == plan.abar &&
          std::find(prefix.begin(), prefix.end(), e) == prefix.end())
        left++;
    CHECK(left >= t - 1);
    // prefix elements are distinct members of S
    for (const auto& e : prefix)
      CHECK(std::find(s.elements.begin(), s.elements.end(), e) !=
            s.elements.end());
  }
}

TEST_CASE("single-element prefix for t=2") {
  auto g = make_dihedral(7);
  auto s = parse_subset(g, "1.0,2.0,3.0,1.1,2.1");
  auto prefix = greedy_prefix(g, s, 2, 1);
  REQUIRE(prefix.size() == 1);
  CHECK(prefix[0].a == 0);  // abundant coset
}

TEST_CASE("weak certificate search on the worked tail type") {
  auto res = weak_certificate_search(cert_family_dihedral(), {3, 3}, 0, 4);
  REQUIRE(res.certificate.has_value());
  const auto& c = *res.certificate;
  CHECK(c.ell == 6);
  CHECK(c.t == 4);
  CHECK(c.abar == 0);
  CHECK(verify_tail_certificate(c).valid);
  // determinism
  auto again = weak_certificate_search(cert_family_dihedral(), {3, 3}, 0, 4);
  REQUIRE(again.certificate.has_value());
  CHECK(again.certificate->base.a == c.base.a);
  CHECK(again.certificate->base.target == c.base.target);

  SUBCASE("precondition violations") {
    CHECK_THROWS_AS(weak_certificate_search(cert_family_dihedral(), {5, 1}, 1, 4),
                    std::invalid_argument);  // abar count < t-1
    CHECK_THROWS_AS(weak_certificate_search(cert_family_dihedral(), {2, 2}, 0, 4),
                    std::invalid_argument);  // ell < 2(t-1)
  }
}

TEST_CASE("certificate store caches") {
  TailCertificateStore store;
  auto fam = cert_family_dihedral();
  const auto* a = store.obtain(fam, {3, 3}, 0, 4);
  REQUIRE(a != nullptr);
  const auto* b = store.obtain(fam, {3, 3}, 0, 4);
  CHECK(a == b);
  CHECK(store.all().size() == 1);
}

TEST_CASE("assemble_weak_sequencing end to end") {
  TailCertificateStore store;
  std::mt19937_64 rng(2024);

  SUBCASE("dihedral p=13, t=4, k=14") {
    auto g = make_dihedral(13);
    for (int trial = 0; trial < 10; ++trial) {
      auto s = random_subset(g, 14, 6, rng);
      auto res = assemble_weak_sequencing(g, s, 4, store);
      CHECK_FALSE(res.soundness_alarm);
      REQUIRE(res.ordering.has_value());
      CHECK(is_t_weak_sequencing(g, *res.ordering, 4));
      CHECK(res.ordering->size() == s.elements.size());
    }
  }
  SUBCASE("direct product p=13, t=3, k=12") {
    auto g = make_direct(13, 2);
    for (int trial = 0; trial < 10; ++trial) {
      auto s = random_subset(g, 12, 4, rng);
      auto res = assemble_weak_sequencing(g, s, 3, store);
      CHECK_FALSE(res.soundness_alarm);
      REQUIRE(res.ordering.has_value());
      CHECK(is_t_weak_sequencing(g, *res.ordering, 3));
    }
  }
  SUBCASE("below the size threshold") {
    auto g = make_dihedral(13);
    auto s = parse_subset(g, "1.0,2.0,3.0,4.0,5.0,6.0,1.1,2.1,3.1,4.1");
    CHECK_THROWS_AS(assemble_weak_sequencing(g, s, 4, store),
                    std::invalid_argument);
  }
}
