#include <doctest.h>

#include "nullcert/json_io.hpp"
#include "nullcert/report.hpp"

using namespace nullcert;

TEST_CASE("group descriptors round trip") {
  for (const char* text :
       {R"({"family":"dihedral","p":7})", R"({"family":"g3p","p":7,"r":2})",
        R"({"family":"direct","p":5,"e":3})"}) {
    auto g = group_from_json(Json::parse(text));
    auto j = group_to_json(g);
    auto g2 = group_from_json(j);
    CHECK(g2.p() == g.p());
    CHECK(g2.family() == g.family());
    CHECK(g2.coset_count() == g.coset_count());
    CHECK(g2.phi().multipliers == g.phi().multipliers);
  }
}

TEST_CASE("custom group descriptor") {
  auto j = Json::parse(
      R"({"family":"custom","p":5,"cayley":[[0,1],[1,0]],"multipliers":[1,4]})");
  auto g = group_from_json(j);
  CHECK(g.order() == 10);
  CHECK(g.multiply({1, 1}, {1, 1}) == GroupElement{0, 0});
  auto round = group_from_json(group_to_json(g));
  CHECK(round.phi().multipliers == g.phi().multipliers);
}

TEST_CASE("coefficient serialization") {
  CHECK(coefficient_to_json(Coefficient{BigInt(-12)}) == Json(-12));
  // a*r + b serializes with the a/b convention
  Json j = coefficient_to_json(Coefficient{-Eisenstein::r()});
  CHECK(j.at("a") == Json(-1));
  CHECK(j.at("b") == Json(0));
  CHECK(coefficient_from_json(j) == Coefficient{-Eisenstein::r()});

  // beyond int64: decimal string
  BigInt big = BigInt("123456789012345678901234567890");
  Json jb = bigint_to_json(big);
  CHECK(jb.is_string());
  CHECK(bigint_from_json(jb) == big);
}

TEST_CASE("certificate round trip") {
  Certificate cert;
  cert.family = "g3p";
  cert.k = 5;
  cert.lambda = {1, 3, 1};
  cert.a = {1, 1, 0, 2, 1};
  cert.mode = CertMode::linear;
  cert.factor_mode = FactorMode::raw;
  cert.target = {2, 2, 0, 0, 2};
  cert.coefficient = -Eisenstein::r();
  cert.bad_primes = {};
  cert.degree = 6;
  auto j = certificate_to_json(cert);
  auto back = certificate_from_json(j);
  CHECK(back.family == cert.family);
  CHECK(back.lambda == cert.lambda);
  CHECK(back.a == cert.a);
  CHECK(back.mode == cert.mode);
  CHECK(back.factor_mode == cert.factor_mode);
  CHECK(back.target == cert.target);
  CHECK(back.coefficient == cert.coefficient);
  CHECK(back.degree == cert.degree);
  CHECK(verify_certificate(back).valid);
}

TEST_CASE("tail certificate round trip") {
  auto res = weak_certificate_search(cert_family_dihedral(), {3, 3}, 0, 4);
  REQUIRE(res.certificate.has_value());
  auto j = tail_certificate_to_json(*res.certificate);
  auto back = tail_certificate_from_json(j);
  CHECK(back.t == 4);
  CHECK(back.abar == 0);
  CHECK(back.ell == 6);
  CHECK(verify_tail_certificate(back).valid);
}

TEST_CASE("polynomial serialization shape") {
  LinearForm<BigInt> f1, f2;
  f1.nvars = f2.nvars = 2;
  f1.add_term(0, BigInt(1));
  f2.add_term(1, BigInt(1));
  f1.normalize();
  f2.normalize();
  std::vector<LinearForm<BigInt>> fs{f1, f2};
  auto p = expand_truncated<BigInt>(fs, Monomial({1, 1}));
  Json j = poly_to_json(p);
  REQUIRE(j.size() == 1);
  CHECK(j[0].at("exponents") == Json::array({1, 1}));
  CHECK(j[0].at("coeff") == Json(1));
}

TEST_CASE("factored display") {
  CHECK(factored_string(BigInt(38514)) == "2 * 3 * 7^2 * 131");
  CHECK(factored_string(BigInt(-96)) == "-2^5 * 3");
  CHECK(factored_string(BigInt(0)) == "0");
  CHECK(factored_string(BigInt(1)) == "1");
  CHECK(factored_string(BigInt(-1)) == "-1");
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  auto a = reproduce_table("tab6_D", 1);
  auto b = reproduce_table("tab6_D", 2);
  CHECK(a.dump() == b.dump());

  SweepOptions opt;
  opt.family = "dihedral";
  opt.k_min = 5;
  opt.k_max = 6;
  opt.jobs = 1;
  auto s1 = cmd_sweep(opt);
  opt.jobs = 2;
  auto s2 = cmd_sweep(opt);
  CHECK(s1.dump() == s2.dump());
}

TEST_CASE("oracle report carries verdicts behind the verbose flag") {
  auto g = make_dihedral(5);
  OracleOptions opt;
  opt.k = 2;
  opt.mode = OracleMode::Any();
  opt.verbose = false;
  auto quiet = cmd_oracle(g, opt);
  CHECK_FALSE(quiet.at("rows")[0].contains("verdicts"));
  opt.verbose = true;
  auto loud = cmd_oracle(g, opt);
  CHECK(loud.at("rows")[0].contains("verdicts"));
  CHECK(loud.at("summary").at("unsatisfied_total") == Json(0));
}

TEST_CASE("compositions enumerate all types") {
  auto cs = compositions(5, 2);
  CHECK(cs.size() == 6);
  CHECK(cs.front() == TypeVector{0, 5});
  CHECK(cs.back() == TypeVector{5, 0});
  CHECK(compositions(10, 3).size() == 66);
}
