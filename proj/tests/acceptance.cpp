// One PASS/FAIL line per acceptance criterion.  Exit status 1 if any fails.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"

#include <siltlab/reduction.hpp>

using namespace siltlab;

namespace {

struct Data {
  FinDimAlgebra<PrimeField> A;
  Universe<PrimeField> U;
  ModuleTables<PrimeField> MT;
  TwoTermUniverse<PrimeField> T;
  TwoTermTables<PrimeField> TT;
  std::vector<Subset> tors;
  MutationGraph<PrimeField> G;
  std::vector<SiltingObject<PrimeField>> pres;
  RuleTable rules;
  std::vector<Subset> thick;
};

std::map<std::string, std::unique_ptr<Data>> cache;

Data& get(const std::string& name) {
  auto& slot = cache[name];
  if (slot) return *slot;
  slot = std::make_unique<Data>();
  auto& d = *slot;
  d.A = oracle::load(name);
  d.U = make_universe(d.A, "auto");
  d.MT = module_tables(d.U);
  d.T = two_term_universe(d.U);
  d.TT = two_term_tables(d.T, 1, false);
  d.tors = enumerate_torsion_classes(d.U, d.MT);
  d.G = enumerate_silting(d.A, 100);
  d.pres = presiltings_from_siltings(d.A, d.G);
  d.rules = thick_rules(d.T, ClosureOptions{});
  d.thick = d.rules.scan(d.T.size());
  return d;
}

Subset ids_of(const Data& d, const std::vector<TwoTermComplex<PrimeField>>& xs) {
  Subset ids;
  for (const auto& X : xs)
    for (int k : identify_two_term(d.T, X)) ids.push_back(k);
  return normalized(ids);
}

std::vector<int> gsum(const GMatrix& g) {
  std::vector<int> s(g.empty() ? 0 : g[0].size(), 0);
  for (const auto& v : g)
    for (std::size_t i = 0; i < v.size(); ++i) s[i] += v[i];
  return s;
}

struct Check {
  bool ok = true;
  std::ostringstream msg;
  void expect(bool c, const std::string& what) {
    if (!c) {
      if (!ok) msg << "; ";
      msg << what;
      ok = false;
    }
  }
};

// counts for criteria 1 and 2
void counts(Check& c, const std::string& name, std::size_t expect, std::size_t expect_bricks) {
  auto& d = get(name);
  auto cliques = oracle::compatible_sets(d.TT.ext, d.A.n());
  auto tscan = oracle::torsion_by_scan(d.U);
  auto cscan = oracle::cotorsion_by_scan(d.TT.ext);
  auto se = silting_entries(d.T, d.G);
  std::size_t complete = 0;
  for (const auto& p : cscan) complete += is_complete(d.T, p, &se).state == Verdict::complete;
  std::size_t br = 0;
  for (const auto& M : d.U.modules) br += oracle::hom_dim(M, M) == 1;
  auto tag = [&](const char* w, std::size_t got) { return name + " " + w + " " + std::to_string(got) + " != " + std::to_string(expect); };
  c.expect(d.G.complete && d.G.nodes.size() == expect, tag("siltings", d.G.nodes.size()));
  c.expect(cliques.size() == expect, tag("clique oracle", cliques.size()));
  c.expect(d.tors.size() == expect, tag("torsion", d.tors.size()));
  c.expect(tscan.size() == expect, tag("torsion scan", tscan.size()));
  c.expect(complete == expect, tag("complete cotorsion", complete));
  c.expect(d.thick.size() == expect, tag("thick", d.thick.size()));
  c.expect(bricks(d.U).size() == expect_bricks && br == expect_bricks, name + " bricks " + std::to_string(bricks(d.U).size()));
  if (c.ok) c.msg << name << ": " << expect << " siltings/torsion/complete cotorsion/thick, " << expect_bricks << " bricks";
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* const finite_fixtures[] = {"a2", "a3", "a3_rel", "n3"};

}  // namespace

int main() {
  int failed = 0;
  auto criterion = [&](int k, const std::string& tag, const std::function<void(Check&)>& body) {
    Check c;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.msg << "exception: " << e.what();
    }
    failed += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " [" << k << "] " << tag << ": " << c.msg.str() << std::endl;
  };

  criterion(1, "a2-counts", [](Check& c) { counts(c, "a2", 5, 3); });
  criterion(2, "a3-counts", [](Check& c) { counts(c, "a3", 14, 6); });

  criterion(3, "cotorsion-torsion-bijection", [](Check& c) {
    for (auto name : finite_fixtures) {
      auto& d = get(name);
      auto L = enumerate_cotorsion_pairs(d.T, d.TT.ext, d.tors);
      c.expect(L.roundtrip, std::string(name) + " psi/psi_inverse not inverse");
      c.expect(L.order_iso, std::string(name) + " lattices not order-isomorphic");
      // independent Hasse check: covers computed from the pair inclusions
      std::vector<Subset> ys;
      for (const auto& p : L.pairs) ys.push_back(p.y);
      c.expect(hasse_edges(ys) == hasse_edges(d.tors), std::string(name) + " Hasse graphs differ");
      for (std::size_t i = 0; i < L.pairs.size(); ++i) c.expect(psi(d.T, L.pairs[i]) == d.tors[i], std::string(name) + " psi mismatch");
    }
    if (c.ok) c.msg << "roundtrip and Hasse isomorphism on a2, a3, a3_rel, n3";
  });

  criterion(4, "g-finiteness", [](Check& c) {
    for (auto name : finite_fixtures) {
      auto& d = get(name);
      auto g = decide_g_finite(d.G);
      auto cscan = oracle::cotorsion_by_scan(d.TT.ext);
      auto se = silting_entries(d.T, d.G);
      std::size_t complete = 0;
      for (const auto& p : cscan) complete += is_complete(d.T, p, &se).state == Verdict::complete;
      bool ok = g.finite && g.count == static_cast<int>(complete) && complete == cscan.size() && cscan.size() == d.thick.size();
      c.expect(ok, std::string(name) + " " + g.str() + " complete " + std::to_string(complete) + " pairs " + std::to_string(cscan.size()) + " thick " + std::to_string(d.thick.size()));
      if (ok) c.msg << name << " " << g.str() << ", ";
    }
    auto K = oracle::load("kronecker");
    auto G = enumerate_silting(K, 50);
    auto g = decide_g_finite(G);
    c.expect(!g.finite && g.str() == "unknown(50)", "kronecker " + g.str());
    auto U = make_universe(K, "search");
    auto T = two_term_universe(U);
    auto TT = two_term_tables(T, 1, false);
    auto P = tube_probe(T, TT.ext);
    c.expect(P.witness && P.meet.empty(), "kronecker probe meet is nonempty");
    if (c.ok) c.msg << "kronecker " << g.str() << " with empty x meet y on the tube probe";
  });

  criterion(5, "thick-from-presilting", [](Check& c) {
    for (auto name : {"a2", "a3"}) {
      auto& d = get(name);
      std::size_t agree = 0;
      for (const auto& P : d.pres) {
        auto ids = ids_of(d, P.summands);
        agree += thick_of_presilting(d.T, std::vector<int>(ids.begin(), ids.end()), ClosureOptions{}) == d.rules.closure(ids);
      }
      c.expect(agree == d.pres.size(), std::string(name) + " " + std::to_string(agree) + "/" + std::to_string(d.pres.size()));
      c.expect(d.pres.size() == oracle::compatible_sets(d.TT.ext).size(), std::string(name) + " presilting count differs from compatible sets");
      c.msg << name << " " << agree << "/" << d.pres.size() << " ";
    }
  });

  criterion(6, "g-vector-determines-presilting", [](Check& c) {
    std::size_t objects = 0, resolved = 0;
    for (auto name : finite_fixtures) {
      auto& d = get(name);
      // presilting objects with multiplicities 1 or 2, keyed by g-vector
      std::map<std::vector<int>, std::vector<int>> seen;
      for (const auto& s : oracle::compatible_sets(d.TT.ext)) {
        for (unsigned long m = 0; m < (1ul << s.size()); ++m) {
          std::vector<int> parts, g(d.A.n(), 0);
          for (std::size_t k = 0; k < s.size(); ++k)
            for (int r = 0; r < 1 + int(m >> k & 1); ++r) {
              parts.push_back(s[k]);
              for (int v = 0; v < d.A.n(); ++v) g[v] += d.T.entries[s[k]].g[v];
            }
          ++objects;
          auto [it, fresh] = seen.emplace(g, parts);
          if (fresh) continue;
          std::vector<TwoTermComplex<PrimeField>> a, b;
          for (int i : it->second) a.push_back(d.T.entries[i].cx);
          for (int i : parts) b.push_back(d.T.entries[i].cx);
          c.expect(find_isomorphism(d.A, direct_sum_all(d.A, a), direct_sum_all(d.A, b)).has_value(), std::string(name) + " g-vector " + gvec_str(g) + " shared by non-isomorphic presiltings");
        }
      }
      c.expect(d.G.collision_failures == 0, std::string(name) + " mutation graph collision without isomorphism");
      resolved += d.G.collisions;
      for (const auto& P : d.pres)
        c.expect(is_silting(d.A, direct_sum_all(d.A, P.summands)) == (P.size() == static_cast<std::size_t>(d.A.n())), std::string(name) + " silting iff |U| = n fails at " + gmatrix_str(P.g));
    }
    if (c.ok) c.msg << objects << " presilting objects with distinct g-vectors, " << resolved << " graph collisions resolved by isomorphism; silting iff |U| = |Lambda|";
  });

  criterion(7, "fan-coverage", [](Check& c) {
    for (auto name : {"a2", "a3", "n3"}) {
      auto& d = get(name);
      auto rep = fan_covers(d.A, d.G, 3);
      auto pts = oracle::lattice_box(d.A.n(), 3);
      std::size_t hit = 0;
      for (const auto& p : pts) {
        bool any = false;
        for (const auto& n : d.G.nodes) any = any || oracle::in_integer_cone(n.g, p, 9);
        hit += any;
      }
      c.expect(rep.uncovered.empty() && hit == pts.size(), std::string(name) + " uncovered points");
      c.msg << name << " " << hit << "/" << pts.size() << " ";
    }
  });

  criterion(8, "enough-injectives-and-silting-bijection", [](Check& c) {
    for (auto name : finite_fixtures) {
      auto& d = get(name);
      for (const auto& H : d.thick) {
        c.expect(has_enough_injectives(d.T, d.TT.ext, H).ok(), std::string(name) + " enough injectives");
        c.expect(has_enough_projectives(d.T, d.TT.ext, H).ok(), std::string(name) + " enough projectives");
      }
      std::set<Subset> image;
      for (const auto& S : d.G.nodes) {
        std::vector<TwoTermComplex<PrimeField>> rho;
        for (int i : u_rho(d.A, S)) rho.push_back(S.summands[i]);
        image.insert(d.rules.closure(ids_of(d, rho)));
      }
      c.expect(image.size() == d.G.nodes.size() && image == std::set<Subset>(d.thick.begin(), d.thick.end()), std::string(name) + " silting to thick not bijective");
    }
    if (c.ok) c.msg << "every thick subcategory has enough injectives and projectives; U -> thick(U_rho) bijective";
  });

  criterion(9, "wide-thick-duality", [](Check& c) {
    for (auto name : finite_fixtures) {
      auto& d = get(name);
      auto P = perp_table(d.T);
      auto wide = wide_rules(d.U, ClosureOptions{}).scan(d.U.size());
      c.expect(P.agree, std::string(name) + " perp descriptions disagree");
      for (const auto& H : d.thick) c.expect(t_map(P, w_map(P, H)) == H, std::string(name) + " t o w != id");
      for (const auto& W : wide) c.expect(w_map(P, t_map(P, W)) == W, std::string(name) + " w o t != id");
      c.msg << name << " " << d.thick.size() << " thick/" << wide.size() << " wide ";
    }
  });

  criterion(10, "tau-duality", [](Check& c) {
    std::size_t pairs = 0;
    for (auto name : finite_fixtures) {
      auto& d = get(name);
      for (std::size_t i = 0; i < d.T.size(); ++i)
        for (std::size_t j = 0; j < d.T.size(); ++j) {
          ++pairs;
          const auto& X = d.T.entries[i];
          const auto& Y = d.T.entries[j];
          auto h = ext_E(d.A, X.cx, Y.cx).dim();
          // formula side evaluated with the oracle Hom
          std::size_t formula = 0;
          auto top = h0(d.A, Y.cx);
          if (X.module >= 0)
            formula = d.T.taus[i].total() ? oracle::hom_dim(top, d.T.taus[i]) : 0;
          else
            formula = top.dims[X.vertex];
          c.expect(h == formula, std::string(name) + " E(" + X.id + "," + Y.id + ")");
        }
    }
    if (c.ok) c.msg << pairs << " pairs";
  });

  criterion(11, "reduction-bijection", [](Check& c) {
    int tested = 0;
    for (auto name : {"a2", "a3"}) {
      auto& d = get(name);
      auto maximal = oracle::compatible_sets(d.TT.ext, d.A.n());
      for (std::size_t i = 0; i < d.T.size(); ++i) {
        if (d.TT.ext[i][i]) continue;
        ++tested;
        auto U = make_silting_object(d.A, {d.T.entries[i].cx});
        std::size_t containing = 0;
        for (const auto& m : maximal) containing += subset_contains(m, static_cast<int>(i));
        auto r = verify_reduction_bijection(d.A, d.G, U, 100);
        c.expect(r.ok() && static_cast<std::size_t>(r.n2) == containing, std::string(name) + " " + d.T.entries[i].id + ": " + std::to_string(containing) + " vs " + std::to_string(r.n2));
      }
    }
    if (c.ok) c.msg << tested << " indecomposable presiltings";
  });

  criterion(12, "zero-class-shrink", [](Check& c) {
    auto A = oracle::load("n3");
    int x = -1;
    for (int b : A.piece[0][0])
      if (b != A.idem[0] && A.labels[b] == "x") x = b;
    auto X = make_complex(A, std::vector<int>{0}, std::vector<int>{0});
    X.d.at(0, 0) = A.unit_vec(x);
    auto r = nilpotent_shrink(A, X);
    bool wit = true;
    for (const auto& s : r.steps) wit = wit && s.witness_ok;
    auto target = direct_sum_all(A, std::vector<TwoTermComplex<PrimeField>>{stalk(A, {0}), shifted(A, {0})});
    c.expect(r.reached && r.steps.size() == 2, std::to_string(r.steps.size()) + " steps");
    c.expect(wit, "witness check failed");
    c.expect(find_isomorphism(A, r.final_object, target).has_value(), "final object is not P + P[1]");
    if (c.ok) c.msg << r.steps[0].object << " => " << r.steps[1].object << " => P + P[1]";
  });

  criterion(13, "determinism", [](Check& c) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "siltlab-acceptance";
    fs::create_directories(dir);
    for (auto name : {"a2", "a3", "a3_rel", "n3", "kronecker"}) {
      std::vector<std::string> outs;
      for (auto [run, threads] : {std::pair{0, 1}, std::pair{1, 1}, std::pair{2, 4}}) {
        auto out = (dir / (std::string(name) + "." + std::to_string(run) + ".json")).string();
        std::string cmd = std::string("\"") + SILT_LAB_EXE + "\" verify \"" + oracle::fixture(name) + "\" --threads " + std::to_string(threads) + " --json \"" + out + "\" > /dev/null";
        int rc = std::system(cmd.c_str());
        c.expect(rc == 0, std::string(name) + " exit status " + std::to_string(rc));
        outs.push_back(slurp(out));
      }
      c.expect(!outs[0].empty() && outs[0] == outs[1] && outs[1] == outs[2], std::string(name) + " reports differ");
    }
    if (c.ok) c.msg << "identical reports for 2 runs at 1 thread and 1 run at 4 threads on 5 fixtures";
  });

  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
