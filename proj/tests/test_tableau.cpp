#include <doctest.h>

#include "fixtures.hpp"
#include "imexstab/tableau.hpp"

using namespace imexstab;

TEST_CASE("parses the minimal 1-stage pair") {
  const ImexTableau t =
      parse_tableau(R"({"s":1,"A":[[1]],"w":[1],"B":[[0]],"omega":[1]})");
  CHECK(t.s == 1);
  CHECK(t.A(0, 0) == 1.0);
  CHECK(t.w(0) == 1.0);
  CHECK(t.B(0, 0) == 0.0);
  CHECK(t.omega(0) == 1.0);
}

TEST_CASE("rejects dimension mismatch") {
  CHECK_THROWS_AS(parse_tableau(R"({"s":1,"A":[[1]],"w":[1,0],"B":[[0]],"omega":[1]})"),
                  TableauError);
}

TEST_CASE("rejects diagonal entry in B") {
  CHECK_THROWS_AS(
      parse_tableau(
          R"({"s":2,"A":[[1,0],[0,1]],"w":[0.5,0.5],"B":[[0.5,0],[1,0]],"omega":[0.5,0.5]})"),
      TableauError);
}

TEST_CASE("rejects malformed documents") {
  CHECK_THROWS_AS(parse_tableau("not json"), TableauError);
  CHECK_THROWS_AS(parse_tableau(R"({"s":1,"A":[[1]],"w":[1],"B":[[0]]})"), TableauError);
  CHECK_THROWS_AS(parse_tableau(R"({"s":1,"A":[["x"]],"w":[1],"B":[[0]],"omega":[1]})"),
                  TableauError);
  CHECK_THROWS_AS(parse_tableau(R"({"s":0,"A":[],"w":[],"B":[],"omega":[]})"), TableauError);
}

TEST_CASE("validate passes the Euler pair") {
  CHECK(validate(testutil::euler_pair()).empty());
}

TEST_CASE("validate flags weight sum") {
  ImexTableau t = testutil::euler_pair();
  t.w(0) = 0.9;
  const auto diags = validate(t);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::Warning);
  CHECK(diags[0].message.find("sum(w)") != std::string::npos);
}

TEST_CASE("validate flags non-positive diagonal of A") {
  ImexTableau t = testutil::euler_pair();
  t.A(0, 0) = 0.0;
  const auto diags = validate(t);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].severity == Severity::Warning);
  CHECK(diags[0].message.find("a_11") != std::string::npos);
}

TEST_CASE("validate flags B structure as an error") {
  ImexTableau t = testutil::euler_pair();
  t.B(0, 0) = 0.5;
  const auto diags = validate(t);
  REQUIRE(!diags.empty());
  CHECK(diags[0].severity == Severity::Error);
}

TEST_CASE("serialize/parse round-trip is bit-identical on all fixtures") {
  for (const char* name : {"euler_pair.json", "rk3_explicit.json", "imex_ssp2.json",
                           "imex_sdirk3_ssp3.json"}) {
    const ImexTableau t = testutil::load_fixture(name);
    const ImexTableau u = parse_tableau(serialize(t));
    CHECK(u.s == t.s);
    CHECK(u.name == t.name);
    CHECK((u.A.array() == t.A.array()).all());
    CHECK((u.B.array() == t.B.array()).all());
    CHECK((u.w.array() == t.w.array()).all());
    CHECK((u.omega.array() == t.omega.array()).all());
  }
}

TEST_CASE("validate is deterministic and does not mutate") {
  ImexTableau t = testutil::imex_sdirk3();
  const std::string before = serialize(t);
  const auto d1 = validate(t);
  const auto d2 = validate(t);
  CHECK(serialize(t) == before);
  REQUIRE(d1.size() == d2.size());
  for (size_t i = 0; i < d1.size(); ++i) CHECK(d1[i].message == d2[i].message);
}
