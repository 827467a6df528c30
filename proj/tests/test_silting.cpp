#include <catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace siltlab;

namespace {

template <class F>
std::set<GMatrix> node_set(const MutationGraph<F>& G) {
  std::set<GMatrix> s;
  for (const auto& n : G.nodes) s.insert(n.g);
  return s;
}

std::vector<int> gsum(const GMatrix& g) {
  std::vector<int> s(g.empty() ? 0 : g[0].size(), 0);
  for (const auto& v : g)
    for (std::size_t i = 0; i < v.size(); ++i) s[i] += v[i];
  return s;
}

}  // namespace

TEST_CASE("siltings are the maximal compatible sets", "[silting-engine]") {
  for (auto name : {"a2", "a3", "a3_rel", "n3"}) {
    auto A = oracle::load(name);
    auto U = make_universe(A, "auto");
    auto T = two_term_universe(U);
    auto TT = two_term_tables(T, 1, false);
    auto cliques = oracle::compatible_sets(TT.ext, A.n());
    std::set<GMatrix> expect;
    for (const auto& c : cliques) expect.insert(oracle::g_of(T, c));
    auto G = enumerate_silting(A, 100);
    INFO(name);
    REQUIRE(G.complete);
    CHECK(G.nodes.size() == cliques.size());
    CHECK(node_set(G) == expect);
    CHECK(G.collision_failures == 0);
    CHECK(G.window_exits == 0);
    // every compatible set extends to a silting one, and presiltings match
    auto all = oracle::compatible_sets(TT.ext);
    CHECK(presiltings_from_siltings(A, G).size() == all.size());
  }
}

TEST_CASE("A2 mutation graph is a pentagon", "[silting-engine]") {
  auto A = oracle::load("a2");
  auto G = enumerate_silting(A, 50);
  REQUIRE(G.complete);
  std::set<std::pair<int, int>> und;
  std::vector<int> deg(G.nodes.size(), 0);
  for (auto [a, b, k] : G.edges) {
    (void)k;
    if (und.insert({std::min(a, b), std::max(a, b)}).second) {
      ++deg[a];
      ++deg[b];
    }
  }
  CHECK(und.size() == 5);
  for (int d : deg) CHECK(d == 2);
}

TEST_CASE("mutation exchanges exactly one summand", "[silting-engine]") {
  for (auto name : {"a3", "a3_rel"}) {
    auto A = oracle::load(name);
    auto G = enumerate_silting(A, 100);
    for (auto [a, b, k] : G.edges) {
      (void)k;
      const auto& x = G.nodes[a].g;
      const auto& y = G.nodes[b].g;
      std::vector<std::vector<int>> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common), std::greater<>());
      CHECK(common.size() == static_cast<std::size_t>(A.n() - 1));
    }
  }
}

TEST_CASE("Bongartz completion of X_S1 on A2", "[silting-engine]") {
  auto A = oracle::load("a2");
  auto U = make_universe(A, "auto");
  auto T = two_term_universe(U);
  const TwoTermComplex<PrimeField>* xs = nullptr;
  for (const auto& e : T.entries)
    if (e.g == std::vector<int>{1, -1}) xs = &e.cx;
  REQUIRE(xs);
  auto B = bongartz_complete(A, {*xs});
  CHECK(B.g == GMatrix{{1, 0}, {1, -1}});
  auto C = bongartz_cocomplete(A, {*xs});
  CHECK(C.g == GMatrix{{1, -1}, {0, -1}});
}

TEST_CASE("presilting objects are determined by g-vectors", "[silting-engine]") {
  for (auto name : {"a2", "a3", "a3_rel", "n3"}) {
    auto A = oracle::load(name);
    auto G = enumerate_silting(A, 100);
    auto P = presiltings_from_siltings(A, G);
    for (std::size_t i = 0; i < P.size(); ++i)
      for (std::size_t j = i + 1; j < P.size(); ++j)
        if (gsum(P[i].g) == gsum(P[j].g)) {
          auto a = direct_sum_all(A, P[i].summands), b = direct_sum_all(A, P[j].summands);
          CHECK(find_isomorphism(A, a, b).has_value());
        }
    for (const auto& p : P) CHECK(is_silting(A, direct_sum_all(A, p.summands)) == (p.size() == static_cast<std::size_t>(A.n())));
  }
}

TEST_CASE("fan coverage against a coefficient search", "[silting-engine][fan-coverage]") {
  for (auto name : {"a2", "a3", "n3"}) {
    auto A = oracle::load(name);
    auto G = enumerate_silting(A, 100);
    auto rep = fan_covers(A, G, 3);
    INFO(name);
    CHECK(rep.uncovered.empty());
    int covered = 0;
    auto pts = oracle::lattice_box(A.n(), 3);
    for (const auto& p : pts) {
      bool any = false;
      for (const auto& n : G.nodes) any = any || oracle::in_integer_cone(n.g, p, 9);
      covered += any;
    }
    CHECK(covered == static_cast<int>(pts.size()));
    CHECK(rep.points == pts.size());
  }
}

TEST_CASE("Kronecker enumeration stays unknown under the cap", "[silting-engine]") {
  auto A = oracle::load("kronecker");
  auto G = enumerate_silting(A, 12);
  auto d = decide_g_finite(G);
  CHECK_FALSE(G.complete);
  CHECK_FALSE(d.finite);
  CHECK(d.str() == "unknown(12)");
  CHECK_THROWS_AS(require_complete(G), GraphIncomplete);
}

TEST_CASE("rational field gives the same A2 pentagon", "[silting-engine]") {
  auto A = oracle::load("a2", RationalField{});
  auto G = enumerate_silting(A, 50);
  REQUIRE(G.complete);
  CHECK(G.nodes.size() == 5);
}
