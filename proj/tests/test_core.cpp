#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace siltlab;

TEST_CASE("prime and rational fields", "[algebra-core]") {
  PrimeField f(7);
  CHECK(f.mul(f.inv(3), 3) == 1);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.parse("1/2") == f.inv(2));
  CHECK_THROWS_AS(PrimeField(8), BadField);
  RationalField q;
  CHECK(q.mul(q.inv(q.from_int(3)), q.from_int(3)) == q.one());
  CHECK(parse_field_flag("prime:5").p == 5);
  CHECK(parse_field_flag("rational").rational);
  CHECK_THROWS_AS(parse_field_flag("gf4"), BadField);
}

TEST_CASE("algebra dimension matches path count", "[algebra-core]") {
  for (auto name : {"a2", "a3", "a3_rel", "n3", "kronecker"}) {
    auto j = read_json_file(oracle::fixture(name));
    auto A = parse_algebra(j, PrimeField(101));
    INFO(name);
    CHECK(A.dim() == oracle::monomial_path_count(j));
  }
}

TEST_CASE("malformed quivers are rejected", "[algebra-core]") {
  auto j = read_json_file(oracle::fixture("a2"));
  j["relations"] = json::array({{{"terms", json::array({{{"coeff", "1"}, {"path", json::array({"a", "a"})}}})}}});
  CHECK_THROWS_AS(parse_algebra(j, PrimeField(101)), Error);
  auto k = read_json_file(oracle::fixture("a2"));
  k["arrows"][0]["to"] = "nowhere";
  CHECK_THROWS_AS(parse_algebra(k, PrimeField(101)), Error);
  // x^2 = 0 missing: infinite dimensional
  auto n = read_json_file(oracle::fixture("n3"));
  n["relations"] = json::array();
  CHECK_THROWS_AS(parse_algebra(n, PrimeField(101)), Error);
}

TEST_CASE("Hom dimensions agree with the defining equations", "[rep-lab]") {
  for (auto name : {"a2", "a3", "a3_rel", "n3"}) {
    auto A = oracle::load(name);
    auto U = make_universe(A, "auto");
    INFO(name);
    for (const auto& M : U.modules)
      for (const auto& N : U.modules) CHECK(hom_dim(M, N) == oracle::hom_dim(M, N));
  }
}

TEST_CASE("bricks are the modules with one-dimensional endomorphisms", "[rep-lab]") {
  for (auto name : {"a2", "a3", "a3_rel", "n3"}) {
    auto A = oracle::load(name);
    auto U = make_universe(A, "auto");
    Subset expect;
    for (std::size_t i = 0; i < U.size(); ++i)
      if (oracle::hom_dim(U.modules[i], U.modules[i]) == 1) expect.push_back(static_cast<int>(i));
    CHECK(bricks(U) == expect);
  }
}

TEST_CASE("universe of A2", "[rep-lab]") {
  auto A = oracle::load("a2");
  auto U = make_universe(A, "auto");
  REQUIRE(U.complete);
  CHECK(U.size() == 3);
  auto T = two_term_universe(U);
  CHECK(T.size() == 5);
  // X_S1 = (P2 -> P1)
  std::set<std::vector<int>> gs;
  for (const auto& e : T.entries) gs.insert(e.g);
  CHECK(gs == std::set<std::vector<int>>{{1, 0}, {0, 1}, {1, -1}, {-1, 0}, {0, -1}});
}

TEST_CASE("module and complex JSON round trip", "[rep-lab]") {
  auto A = oracle::load("a3");
  auto U = make_universe(A, "auto");
  for (const auto& M : U.modules) {
    auto back = parse_module(A, module_json(M));
    CHECK(is_isomorphic(back, M));
  }
  auto T = two_term_universe(U);
  for (const auto& e : T.entries) {
    auto back = parse_complex(A, complex_json(A, e.cx));
    CHECK(find_isomorphism(A, back, e.cx).has_value());
  }
}

TEST_CASE("tau-duality: homotopy E equals the tau formula", "[two-term-cat][tau-duality]") {
  for (auto name : {"a2", "a3", "a3_rel", "n3"}) {
    auto A = oracle::load(name);
    auto U = make_universe(A, "auto");
    auto T = two_term_universe(U);
    INFO(name);
    for (const auto& X : T.entries)
      for (const auto& Y : T.entries) CHECK(ext_E(A, X.cx, Y.cx).dim() == static_cast<std::size_t>(ext_dim_tau(A, X.cx, Y.cx)));
  }
}

TEST_CASE("cones of universe maps are identified", "[two-term-cat]") {
  auto A = oracle::load("a2");
  auto U = make_universe(A, "auto");
  auto T = two_term_universe(U);
  // P1 -> X_S1 is nonzero; its cone is P2[1]
  int p1 = -1, xs = -1;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (T.entries[i].g == std::vector<int>{1, 0}) p1 = static_cast<int>(i);
    if (T.entries[i].g == std::vector<int>{1, -1}) xs = static_cast<int>(i);
  }
  auto H = hom_K(A, T.entries[p1].cx, T.entries[xs].cx);
  REQUIRE(H.dim() == 1);
  auto c = cone_of_map(A, T.entries[p1].cx, T.entries[xs].cx, H.basis(0));
  REQUIRE(c);
  auto ids = identify_two_term(T, *c.obj);
  REQUIRE(ids.size() == 1);
  CHECK(T.entries[ids[0]].g == std::vector<int>{0, -1});
}

TEST_CASE("E is additive on direct sums", "[two-term-cat]") {
  auto A = oracle::load("a3");
  auto U = make_universe(A, "auto");
  auto T = two_term_universe(U);
  auto TT = two_term_tables(T, 1, false);
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < T.size(); ++j) {
      auto S = direct_sum_all(A, std::vector<TwoTermComplex<PrimeField>>{T.entries[i].cx, T.entries[j].cx});
      CHECK(ext_E(A, S, S).dim() == static_cast<std::size_t>(TT.ext[i][i] + TT.ext[i][j] + TT.ext[j][i] + TT.ext[j][j]));
    }
}
