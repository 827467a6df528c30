#pragma once

#include <map>
#include <string>
#include <vector>

#include "silting.hpp"
#include "universe.hpp"

namespace siltlab {

// Subsets of the two-term universe stand for their additive closures.
struct CotorsionPair {
  Subset x, y;
  bool operator==(const CotorsionPair&) const = default;
};

inline Subset perp_right(const std::vector<std::vector<int>>& ext, const Subset& S) {
  Subset out;
  for (std::size_t j = 0; j < ext.size(); ++j) {
    bool ok = true;
    for (int i : S) ok = ok && ext[i][j] == 0;
    if (ok) out.push_back(static_cast<int>(j));
  }
  return out;
}

inline Subset perp_left(const std::vector<std::vector<int>>& ext, const Subset& S) {
  Subset out;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    bool ok = true;
    for (int j : S) ok = ok && ext[i][j] == 0;
    if (ok) out.push_back(static_cast<int>(i));
  }
  return out;
}

inline Subset subset_intersection(const Subset& a, const Subset& b) {
  Subset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_cotorsion_pair(const std::vector<std::vector<int>>& ext, const CotorsionPair& C) {
  return perp_right(ext, C.x) == C.y && perp_left(ext, C.y) == C.x;
}

// H^0 of the y-part, as module ids.
template <class F>
Subset psi(const TwoTermUniverse<F>& T, const CotorsionPair& C) {
  Subset out;
  for (int j : C.y)
    if (T.entries[j].module >= 0) out.push_back(T.entries[j].module);
  return normalized(out);
}

template <class F>
struct PsiInverse {
  CotorsionPair pair;
  bool closed = false;  // x^perp = y and ^perp y = x recomputed from the E-table
};

// y = {X | H^0 X in T}; x from the closed form: X_M with tau M in T^perp, and
// P_v[1] with Hom(P_v, T) = 0.
template <class F>
PsiInverse<F> psi_inverse(const TwoTermUniverse<F>& T, const std::vector<std::vector<int>>& ext, const Subset& tors, std::size_t ext_cap = 4, bool check = true) {
  const auto& U = *T.mods;
  if (check && !is_torsion_class(U, tors, ext_cap)) throw NotATorsionClass("subset is not a torsion class");
  PsiInverse<F> r;
  for (std::size_t j = 0; j < T.size(); ++j) {
    const auto& e = T.entries[j];
    if (e.module < 0 || subset_contains(tors, e.module)) r.pair.y.push_back(static_cast<int>(j));
  }
  for (std::size_t i = 0; i < T.size(); ++i) {
    const auto& e = T.entries[i];
    bool ok = true;
    for (int m : tors) {
      if (e.module >= 0)
        ok = ok && (T.taus[i].total() == 0 || hom_dim(U.modules[m], T.taus[i]) == 0);
      else
        ok = ok && U.modules[m].dims[e.vertex] == 0;
      if (!ok) break;
    }
    if (ok) r.pair.x.push_back(static_cast<int>(i));
  }
  r.closed = is_cotorsion_pair(ext, r.pair);
  return r;
}

// Entry ids of each silting node's summands.
template <class F>
std::vector<Subset> silting_entries(const TwoTermUniverse<F>& T, const MutationGraph<F>& G, std::uint64_t seed = 0) {
  std::vector<Subset> out;
  for (const auto& S : G.nodes) {
    Subset s;
    for (const auto& X : S.summands)
      for (int k : identify_two_term(T, X, seed)) s.push_back(k);
    out.push_back(normalized(s));
  }
  return out;
}

enum class Verdict { complete, incomplete, inconclusive };

inline std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::complete: return "complete";
    case Verdict::incomplete: return "incomplete";
    default: return "inconclusive";
  }
}

struct Completeness {
  Verdict state = Verdict::inconclusive;
  int silting = -1;     // node whose summands are exactly x meet y
  std::string witness;  // failing object and reason
};

namespace detail {

template <class F>
std::vector<TwoTermComplex<F>> entry_objects(const TwoTermUniverse<F>& T, const Subset& S) {
  std::vector<TwoTermComplex<F>> out;
  for (int i : S) out.push_back(T.entries[i].cx);
  return out;
}

}  // namespace detail

// K has a conflation Y >-> X ->> K (and K >-> Y' ->> X') iff the minimal
// right add(x)- (left add(y)-) approximation of K is a deflation (inflation)
// with cocone in y (cone in x), so checking every K decides completeness.
template <class F>
Completeness is_complete(const TwoTermUniverse<F>& T, const CotorsionPair& C, const std::vector<Subset>* siltings = nullptr, std::uint64_t seed = 0) {
  const auto& A = *T.alg;
  Completeness r;
  if (!T.complete()) {
    r.witness = "universe incomplete";
    return r;
  }
  auto meet = subset_intersection(C.x, C.y);
  if (siltings)
    for (std::size_t s = 0; s < siltings->size(); ++s)
      if ((*siltings)[s] == meet) r.silting = static_cast<int>(s);
  auto xs = detail::entry_objects(T, C.x), ys = detail::entry_objects(T, C.y);
  auto inside = [&](const TwoTermComplex<F>& Z, const Subset& S) {
    for (int k : identify_two_term(T, Z, seed))
      if (!subset_contains(S, k)) return false;
    return true;
  };
  for (std::size_t k = 0; k < T.size(); ++k) {
    const auto& K = T.entries[k].cx;
    if (!subset_contains(C.x, static_cast<int>(k))) {
      auto ap = right_approximation(A, xs, K);
      auto cc = cocone_of_map(A, ap.object, K, ap.map);
      if (!cc || !inside(*cc.obj, C.y)) {
        r.state = Verdict::incomplete;
        r.witness = T.entries[k].id + ": right approximation by x is not a deflation with cocone in y";
        return r;
      }
    }
    if (!subset_contains(C.y, static_cast<int>(k))) {
      auto ap = left_approximation(A, ys, K);
      auto c = cone_of_map(A, K, ap.object, ap.map);
      if (!c || !inside(*c.obj, C.x)) {
        r.state = Verdict::incomplete;
        r.witness = T.entries[k].id + ": left approximation by y is not an inflation with cone in x";
        return r;
      }
    }
  }
  r.state = Verdict::complete;
  return r;
}

template <class F>
struct CotorsionLattice {
  std::vector<CotorsionPair> pairs;     // pairs[i] = psi_inverse(tors[i])
  std::vector<Subset> tors;
  std::vector<bool> closed;
  std::vector<std::pair<int, int>> hasse;       // by ypart inclusion
  std::vector<std::pair<int, int>> tors_hasse;  // by inclusion
  bool roundtrip = true;      // psi o psi_inverse = id and psi_inverse o psi = id
  bool order_iso = true;      // y <= y' iff T <= T'
};

template <class F>
CotorsionLattice<F> enumerate_cotorsion_pairs(const TwoTermUniverse<F>& T, const std::vector<std::vector<int>>& ext, const std::vector<Subset>& tors, int threads = 1) {
  require_complete(*T.mods, "enumerate_cotorsion_pairs");
  CotorsionLattice<F> L;
  L.tors = tors;
  std::size_t n = tors.size();
  L.pairs.resize(n);
  L.closed.resize(n);
  std::vector<PsiInverse<F>> inv(n);
  parallel_for(n, threads, [&](std::size_t i) { inv[i] = psi_inverse(T, ext, tors[i], 4, false); });
  for (std::size_t i = 0; i < n; ++i) {
    L.pairs[i] = inv[i].pair;
    L.closed[i] = inv[i].closed;
    if (psi(T, L.pairs[i]) != tors[i]) L.roundtrip = false;
  }
  // psi_inverse o psi on the pairs themselves
  for (std::size_t i = 0; i < n; ++i) {
    auto back = psi_inverse(T, ext, psi(T, L.pairs[i]), 4, false).pair;
    if (!(back == L.pairs[i])) L.roundtrip = false;
  }
  std::vector<Subset> ys;
  for (const auto& p : L.pairs) ys.push_back(p.y);
  L.hasse = hasse_edges(ys);
  L.tors_hasse = hasse_edges(tors);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (subset_includes(ys[b], ys[a]) != subset_includes(tors[b], tors[a])) L.order_iso = false;
  if (L.hasse != L.tors_hasse) L.order_iso = false;
  return L;
}

// Kronecker-type probe: on a bounded universe, the pair attached to
// T = preinjectives + one tube.  A complete pair would need x meet y = add(U)
// for a silting U with |Lambda| summands; here the meet has no nonzero
// presilting object.
template <class F>
struct TubeProbe {
  Subset tors;           // module ids in T (probe part)
  CotorsionPair pair;    // computed on the probe
  Subset meet;
  Subset presilting_in_meet;
  std::vector<std::string> classes;  // per module: preprojective / regular / preinjective
  int tube_root = -1;
  bool witness = false;  // meet holds no nonzero presilting
};

template <class F>
TubeProbe<F> tube_probe(const TwoTermUniverse<F>& T, const std::vector<std::vector<int>>& ext) {
  const auto& U = *T.mods;
  TubeProbe<F> r;
  for (std::size_t m = 0; m < U.size(); ++m) {
    int d = U.modules[m].total(), t = T.taus[m].total();
    r.classes.push_back(t < d ? "preprojective" : t == d ? "regular" : "preinjective");
  }
  // the tube of the smallest regular module
  for (std::size_t m = 0; m < U.size(); ++m)
    if (r.classes[m] == "regular") {
      r.tube_root = static_cast<int>(m);
      break;
    }
  for (std::size_t m = 0; m < U.size(); ++m) {
    bool in = r.classes[m] == "preinjective";
    if (r.classes[m] == "regular" && r.tube_root >= 0) in = hom_dim(U.modules[r.tube_root], U.modules[m]) > 0;
    if (in) r.tors.push_back(static_cast<int>(m));
  }
  r.pair = psi_inverse(T, ext, r.tors, 0, false).pair;
  r.meet = subset_intersection(r.pair.x, r.pair.y);
  for (int i : r.meet)
    if (ext[i][i] == 0) r.presilting_in_meet.push_back(i);
  r.witness = r.presilting_in_meet.empty();
  return r;
}

}  // namespace siltlab
