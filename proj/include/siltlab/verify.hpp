#pragma once

#include <chrono>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "reduction.hpp"

namespace siltlab {

struct VerifyOptions {
  std::string profile = "full";  // fast | full | audit
  int cap = 50;
  std::uint64_t seed = 0;
  int threads = 1;
  ClosureOptions closure;
  int fan_radius = 3;
  std::string source;  // algebra path, for replay commands
  bool timing = false;
};

struct Suite {
  std::string tag;
  std::string status = "verified";  // verified | violated | skipped
  std::string reason;
  std::string witness;
  std::string replay;
  json counts = json::object();
  double seconds = 0;
};

struct VerificationReport {
  std::string algebra;
  json header = json::object();
  json counts = json::object();
  std::vector<Suite> suites;

  bool violated() const {
    for (const auto& s : suites)
      if (s.status == "violated") return true;
    return false;
  }
  json to_json(bool timing) const {
    json j = header;
    j["algebra"] = algebra;
    j["counts"] = counts;
    j["suites"] = json::array();
    for (const auto& s : suites) {
      json e{{"tag", s.tag}, {"status", s.status}};
      if (!s.reason.empty()) e["reason"] = s.reason;
      if (!s.witness.empty()) e["witness"] = s.witness;
      if (!s.replay.empty()) e["replay"] = s.replay;
      if (!s.counts.empty()) e["counts"] = s.counts;
      if (timing) e["seconds"] = s.seconds;
      j["suites"].push_back(e);
    }
    j["status"] = violated() ? "violated" : "verified";
    return j;
  }
};

inline std::string ids_str(const std::vector<std::string>& names, const Subset& S) {
  std::string s = "{";
  for (std::size_t i = 0; i < S.size(); ++i) s += (i ? "," : "") + names[S[i]];
  return s + "}";
}

template <class F>
struct VerifyContext {
  const FinDimAlgebra<F>* A = nullptr;
  Universe<F> U;
  ModuleTables<F> MT;
  TwoTermUniverse<F> T;
  TwoTermTables<F> TT;
  MutationGraph<F> G;
  GFiniteness gf;
  std::vector<SiltingObject<F>> pres;
  std::vector<Subset> pres_ids;
  std::vector<Subset> silt_ids;
  std::vector<Subset> tors;
  std::optional<RuleTable> rules;
  std::vector<Subset> thick;  // closures of presiltings, deduplicated, sorted
  std::vector<std::string> names;
};

template <class F>
VerificationReport verify_algebra(const FinDimAlgebra<F>& A, const VerifyOptions& opt) {
  VerificationReport rep;
  rep.algebra = A.name;
  rep.header = {{"field", A.field.describe()}, {"profile", opt.profile}, {"cap", opt.cap}, {"seed", opt.seed}, {"ext_cap", opt.closure.ext_cap}, {"mult_cap", opt.closure.mult_cap}};
  const bool fast = opt.profile == "fast", audit = opt.profile == "audit";
  ClosureOptions copt = opt.closure;
  copt.seed = opt.seed;
  copt.threads = opt.threads;

  VerifyContext<F> C;
  C.A = &A;
  C.U = make_universe(A, "auto");
  C.MT = module_tables(C.U, opt.threads);
  C.T = two_term_universe(C.U);
  C.TT = two_term_tables(C.T, opt.threads, false);
  for (const auto& e : C.T.entries) C.names.push_back(e.id);
  C.G = enumerate_silting(A, opt.cap, opt.seed);
  C.gf = decide_g_finite(C.G);
  const bool complete = C.U.complete;
  const bool finite = C.gf.finite && complete;
  rep.header["universe"] = {{"provider", C.U.provider}, {"modules", C.U.size()}, {"two_term", C.T.size()}, {"complete", complete}};
  rep.counts["g_finiteness"] = C.gf.str();
  rep.counts["silting"] = C.G.nodes.size();
  if (complete) {
    C.tors = enumerate_torsion_classes(C.U, C.MT);
    rep.counts["torsion"] = C.tors.size();
    rep.counts["bricks"] = bricks(C.U).size();
  }
  if (finite) {
    C.pres = presiltings_from_siltings(A, C.G);
    for (const auto& P : C.pres) {
      Subset s;
      for (const auto& X : P.summands)
        for (int k : identify_two_term(C.T, X, opt.seed)) s.push_back(k);
      C.pres_ids.push_back(normalized(s));
    }
    C.silt_ids = silting_entries(C.T, C.G, opt.seed);
    rep.counts["presilting"] = C.pres.size();
    C.rules = thick_rules(C.T, copt);
    std::set<Subset> th;
    for (const auto& s : C.pres_ids) th.insert(C.rules->closure(s));
    C.thick.assign(th.begin(), th.end());
    std::sort(C.thick.begin(), C.thick.end(), [](const Subset& a, const Subset& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    rep.counts["thick"] = C.thick.size();
  }
  std::string replay = "silt-lab verify " + (opt.source.empty() ? std::string("<algebra.json>") : opt.source) + " --profile " + opt.profile + " --cap " + std::to_string(opt.cap) + " --seed " + std::to_string(opt.seed);

  auto run = [&](const std::string& tag, const std::string& skip, const std::function<void(Suite&)>& body) {
    Suite s;
    s.tag = tag;
    auto t0 = std::chrono::steady_clock::now();
    if (!skip.empty()) {
      s.status = "skipped";
      s.reason = skip;
    } else {
      try {
        body(s);
      } catch (const Error& e) {
        s.status = "skipped";
        s.reason = e.what();
      }
    }
    if (s.status == "violated") s.replay = replay;
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.suites.push_back(std::move(s));
  };
  auto fail = [](Suite& s, const std::string& w) {
    if (s.status == "violated") return;
    s.status = "violated";
    s.witness = w;
  };
  const std::string not_finite = complete ? C.gf.str() : "universe incomplete, " + C.gf.str();

  run("tau-duality", "", [&](Suite& s) {
    int pairs = 0;
    for (std::size_t i = 0; i < C.T.size(); ++i)
      for (std::size_t j = 0; j < C.T.size(); ++j) {
        ++pairs;
        int h = static_cast<int>(ext_E(A, C.T.entries[i].cx, C.T.entries[j].cx).dim());
        if (h != C.TT.ext[i][j]) fail(s, "E(" + C.names[i] + "," + C.names[j] + "): homotopy " + std::to_string(h) + ", tau formula " + std::to_string(C.TT.ext[i][j]));
      }
    s.counts["pairs"] = pairs;
  });

  run("g-finiteness", finite ? "" : not_finite, [&](Suite& s) {
    auto L = enumerate_cotorsion_pairs(C.T, C.TT.ext, C.tors, opt.threads);
    int comp = 0;
    for (const auto& p : L.pairs) comp += is_complete(C.T, p, &C.silt_ids, opt.seed).state == Verdict::complete;
    std::size_t n = C.G.nodes.size();
    s.counts = {{"silting", n}, {"torsion", C.tors.size()}, {"cotorsion", L.pairs.size()}, {"complete_cotorsion", comp}, {"thick", C.thick.size()}};
    if (C.tors.size() != n || L.pairs.size() != n || static_cast<std::size_t>(comp) != n || C.thick.size() != n)
      fail(s, "counts differ: " + s.counts.dump());
    for (std::size_t i = 0; i < C.tors.size(); ++i)
      if (!is_functorially_finite(C.U, C.MT, C.tors[i])) fail(s, "torsion class " + std::to_string(i) + " not functorially finite");
  });

  run("cotorsion-torsion-bijection", complete ? "" : "universe incomplete", [&](Suite& s) {
    auto L = enumerate_cotorsion_pairs(C.T, C.TT.ext, C.tors, opt.threads);
    int closed = 0;
    for (std::size_t i = 0; i < L.pairs.size(); ++i) {
      closed += L.closed[i];
      if (!L.closed[i]) fail(s, "psi_inverse of torsion class " + std::to_string(i) + " is not a cotorsion pair");
    }
    if (!L.roundtrip) fail(s, "psi and psi_inverse are not mutually inverse");
    s.counts = {{"pairs", L.pairs.size()}, {"closed", closed}};
  });

  run("lattice-isomorphism", complete ? "" : "universe incomplete", [&](Suite& s) {
    auto L = enumerate_cotorsion_pairs(C.T, C.TT.ext, C.tors, opt.threads);
    if (!L.order_iso) fail(s, "ypart order differs from torsion order");
    s.counts = {{"hasse_edges", L.hasse.size()}, {"torsion_hasse_edges", L.tors_hasse.size()}};
  });

  run("cotorsion-completeness", "", [&](Suite& s) {
    if (finite) {
      auto L = enumerate_cotorsion_pairs(C.T, C.TT.ext, C.tors, opt.threads);
      std::set<int> used;
      for (std::size_t i = 0; i < L.pairs.size(); ++i) {
        auto c = is_complete(C.T, L.pairs[i], &C.silt_ids, opt.seed);
        if (c.state != Verdict::complete) fail(s, "pair " + std::to_string(i) + ": " + c.witness);
        if (c.silting < 0) fail(s, "pair " + std::to_string(i) + ": x meet y is not add of a silting object");
        used.insert(c.silting);
      }
      if (used.size() != L.pairs.size()) fail(s, "silting witnesses not distinct");
      s.counts = {{"complete", L.pairs.size()}, {"witnesses", used.size()}};
      return;
    }
    if (complete) {
      s.status = "skipped";
      s.reason = C.gf.str();
      return;
    }
    // bounded probe: preinjectives plus one tube
    auto P = tube_probe(C.T, C.TT.ext);
    s.counts = {{"probe_modules", C.U.size()}, {"torsion_probe", P.tors.size()}, {"x", P.pair.x.size()}, {"y", P.pair.y.size()}, {"meet", P.meet.size()}, {"presilting_in_meet", P.presilting_in_meet.size()}};
    if (P.tube_root < 0 || P.tors.empty()) {
      s.status = "skipped";
      s.reason = "probe has no regular module";
      return;
    }
    s.witness = "T = preinjectives + tube of " + Universe<F>::id(P.tube_root) + " on the probe: x meet y = " + ids_str(C.names, P.meet) + ", no nonzero presilting, so no silting U with x meet y = add U";
    if (!P.witness) fail(s, "x meet y contains presilting " + ids_str(C.names, P.presilting_in_meet));
  });

  run("g-vector-determines-presilting", finite ? "" : not_finite, [&](Suite& s) {
    if (C.G.collision_failures) fail(s, std::to_string(C.G.collision_failures) + " g-matrix collisions without isomorphism");
    std::map<std::vector<int>, int> cls;
    for (std::size_t i = 0; i < C.pres.size(); ++i) {
      std::vector<int> g(A.n(), 0);
      for (const auto& v : C.pres[i].g)
        for (int t = 0; t < A.n(); ++t) g[t] += v[t];
      auto [it, fresh] = cls.emplace(g, static_cast<int>(i));
      if (!fresh) fail(s, "presiltings " + gmatrix_str(C.pres[it->second].g) + " and " + gmatrix_str(C.pres[i].g) + " share class " + gvec_str(g));
    }
    s.counts = {{"presilting", C.pres.size()}, {"collisions_checked", C.G.collisions}};
  });

  run("silting-maximality", finite ? "" : not_finite, [&](Suite& s) {
    int silt = 0;
    for (const auto& P : C.pres) {
      auto X = total(A, P);
      if (!is_presilting(A, X)) fail(s, gmatrix_str(P.g) + " has self-extensions");
      bool full = bongartz_complete(A, P.summands, opt.seed).size() == P.size();
      bool maximal = static_cast<int>(P.size()) == A.n();
      silt += full;
      if (full != maximal) fail(s, gmatrix_str(P.g) + ": completion adds summands iff |U| < |Lambda| fails");
    }
    s.counts = {{"presilting", C.pres.size()}, {"silting", silt}};
  });

  run("fan-coverage", finite ? "" : not_finite, [&](Suite& s) {
    auto r = fan_covers(A, C.G, opt.fan_radius);
    s.counts = {{"radius", r.radius}, {"points", r.points}, {"uncovered", r.uncovered.size()}};
    if (!r.uncovered.empty()) fail(s, "uncovered " + gvec_str(r.uncovered[0]));
  });

  run("thick-generation", fast ? "profile fast" : finite ? "" : not_finite, [&](Suite& s) {
    int agree = 0;
    for (std::size_t i = 0; i < C.pres.size(); ++i) {
      std::vector<int> u(C.pres_ids[i].begin(), C.pres_ids[i].end());
      auto star = thick_of_presilting(C.T, u, copt);
      auto clo = C.rules->closure(C.pres_ids[i]);
      if (star == clo)
        ++agree;
      else
        fail(s, "U = " + ids_str(C.names, C.pres_ids[i]) + ": star product " + ids_str(C.names, star) + ", closure " + ids_str(C.names, clo));
      if (!C.rules->is_closed(clo)) fail(s, "closure of " + ids_str(C.names, C.pres_ids[i]) + " is not thick");
    }
    s.counts = {{"presilting", C.pres.size()}, {"agree", agree}, {"rules_exhaustive", C.rules->exhaustive}};
  });

  run("thick-from-presilting", fast ? "profile fast" : finite ? (C.T.size() > 16 ? "universe too large for the subset scan" : "") : not_finite, [&](Suite& s) {
    auto scan = C.rules->scan(C.T.size());
    s.counts = {{"scan", scan.size()}, {"from_presilting", C.thick.size()}};
    if (scan != C.thick) fail(s, "scan finds " + std::to_string(scan.size()) + " thick subcategories, presiltings give " + std::to_string(C.thick.size()));
  });

  run("enough-injectives", finite ? "" : not_finite, [&](Suite& s) {
    int ok = 0;
    for (const auto& H : C.thick) {
      auto r = has_enough_injectives(C.T, C.TT.ext, H, opt.seed);
      ok += r.ok();
      if (!r.ok()) fail(s, "H = " + ids_str(C.names, H) + " at " + r.witness);
    }
    s.counts = {{"thick", C.thick.size()}, {"enough", ok}};
  });

  run("enough-projectives", finite ? "" : not_finite, [&](Suite& s) {
    int ok = 0;
    for (const auto& H : C.thick) {
      auto r = has_enough_projectives(C.T, C.TT.ext, H, opt.seed);
      ok += r.ok();
      if (!r.ok()) fail(s, "H = " + ids_str(C.names, H) + " at " + r.witness);
    }
    s.counts = {{"thick", C.thick.size()}, {"enough", ok}};
  });

  run("thick-silting-bijection", finite ? "" : not_finite, [&](Suite& s) {
    std::set<Subset> img;
    for (std::size_t k = 0; k < C.G.nodes.size(); ++k) {
      Subset ids;
      for (int i : u_rho(A, C.G.nodes[k]))
        for (int e : identify_two_term(C.T, C.G.nodes[k].summands[i], opt.seed)) ids.push_back(e);
      img.insert(C.rules->closure(normalized(ids)));
    }
    std::set<Subset> all(C.thick.begin(), C.thick.end());
    s.counts = {{"silting", C.G.nodes.size()}, {"image", img.size()}, {"thick", all.size()}};
    if (img.size() != C.G.nodes.size()) fail(s, "silting to thick(U_rho) is not injective");
    if (img != all) fail(s, "image of silting to thick(U_rho) is not the set of thick subcategories");
  });

  run("wide-thick-duality", finite ? "" : not_finite, [&](Suite& s) {
    auto P = perp_table(C.T, opt.threads);
    if (!P.agree) fail(s, "Hom(d_X, M) bijectivity differs from the perpendicular description");
    auto wide = wide_rules(C.U, copt).scan(C.U.size());
    int tw = 0, wt = 0;
    for (const auto& H : C.thick) {
      if (t_map(P, w_map(P, H)) == H)
        ++tw;
      else
        fail(s, "t(w(H)) != H for H = " + ids_str(C.names, H));
    }
    for (const auto& W : wide) {
      if (w_map(P, t_map(P, W)) == W)
        ++wt;
      else
        fail(s, "w(t(W)) != W for a wide subcategory of size " + std::to_string(W.size()));
    }
    s.counts = {{"thick", C.thick.size()}, {"wide", wide.size()}, {"tw_identity", tw}, {"wt_identity", wt}};
  });

  run("presilting-in-thick", finite ? "" : not_finite, [&](Suite& s) {
    int n = 0, zero = 0;
    for (const auto& H : C.thick)
      for (int x : H) {
        auto e = extract_presilting(C.T, C.G, H, x, opt.seed);
        ++n;
        zero += e.zero_class;
        if (e.zero_class && !e.shrink.reached) fail(s, C.names[x] + ": shrink did not reach P + P[1]");
        if (!e.in_h) fail(s, C.names[x] + ": presilting with the same class is not in H = " + ids_str(C.names, H));
      }
    s.counts = {{"checked", n}, {"zero_class", zero}};
  });

  run("reduction-bijection", fast ? "profile fast" : finite ? "" : not_finite, [&](Suite& s) {
    int n = 0;
    for (const auto& P : C.pres) {
      if (P.size() > 1) continue;
      auto r = verify_reduction_bijection(A, C.G, P, opt.cap, opt.seed);
      ++n;
      if (!r.ok()) fail(s, "U = " + gmatrix_str(P.g) + ": " + std::to_string(r.n1) + " siltings contain U, reduced algebra has " + std::to_string(r.n2) + (r.connected ? "" : ", not connected"));
    }
    s.counts = {{"checked", n}};
  });

  run("zero-class-shrink", "", [&](Suite& s) {
    const F& f = A.field;
    int checked = 0;
    for (int v = 0; v < A.n(); ++v) {
      int idx = -1;
      for (int b : A.piece[v][v])
        if (b != A.idem[v]) {
          idx = b;
          break;
        }
      if (idx < 0) continue;
      auto X = make_complex(A, std::vector<int>{v}, std::vector<int>{v});
      X.d.at(0, 0) = A.unit_vec(idx);
      int m = 1;
      for (auto p = A.unit_vec(idx); !vec_is_zero(f, p); p = A.mul(p, A.unit_vec(idx))) ++m;
      int expect = 0;
      while ((1 << expect) < m) ++expect;
      auto r = nilpotent_shrink(A, X);
      ++checked;
      bool ok = r.reached && static_cast<int>(r.steps.size()) == expect;
      for (const auto& st : r.steps) ok = ok && st.witness_ok;
      s.counts[A.vertex_names[v]] = {{"nilpotency", m}, {"steps", r.steps.size()}};
      if (!ok) fail(s, "P" + A.vertex_names[v] + " with f = " + A.labels[idx] + ": " + std::to_string(r.steps.size()) + " steps, expected " + std::to_string(expect));
    }
    if (!checked) {
      s.status = "skipped";
      s.reason = "no radical endomorphism of an indecomposable projective";
    }
  });
  run("homotopy-audit", !audit ? "profile " + opt.profile : complete ? "" : "universe incomplete", [&](Suite& s) {
    std::size_t n = C.T.size();
    std::vector<std::vector<int>> eh(n, std::vector<int>(n, 0));
    parallel_for(n * n, opt.threads, [&](std::size_t k) { eh[k / n][k % n] = static_cast<int>(ext_E(A, C.T.entries[k / n].cx, C.T.entries[k % n].cx).dim()); });
    int pairs = 0;
    for (std::size_t i = 0; i < C.tors.size(); ++i) {
      auto a = psi_inverse(C.T, C.TT.ext, C.tors[i], 4, false).pair;
      auto b = psi_inverse(C.T, eh, C.tors[i], 4, false);
      ++pairs;
      if (!b.closed || perp_right(eh, a.x) != a.y || perp_left(eh, a.y) != a.x) fail(s, "pair of torsion class " + std::to_string(i) + " differs under the homotopy E-table");
    }
    for (std::size_t i = 0; i < C.tors.size(); ++i)
      if (!is_torsion_class(C.U, C.tors[i], opt.closure.ext_cap, opt.seed)) fail(s, "torsion class " + std::to_string(i) + " fails the direct quotient/extension check");
    s.counts = {{"pairs", pairs}, {"torsion_checked", C.tors.size()}};
  });
  return rep;
}

}  // namespace siltlab
