#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <siltlab/verify.hpp>

using namespace siltlab;

namespace {

struct Opts {
  std::string algebra;
  std::string field;
  std::uint64_t seed = 0;
  int threads = 1;
  int cap = 50;
  std::size_t ext_cap = 4;
  int mult_cap = 2;
  std::string json_out;
  std::string dot_out;
  std::string hasse_out;
  std::string profile = "full";
  std::string presilting;
  bool audit = false;
  bool verify = false;
  bool timing = false;
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void emit(const Opts& o, const json& j) {
  if (!o.json_out.empty()) write_text(o.json_out, j.dump(2) + "\n");
}

bool quiet(const Opts& o) { return o.json_out == "-"; }

std::string dot_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

std::string hasse_dot(const std::string& name, const std::vector<std::string>& labels, const std::vector<std::pair<int, int>>& edges) {
  std::ostringstream s;
  s << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < labels.size(); ++i) s << "  n" << i << " [label=\"" << dot_escape(labels[i]) << "\"];\n";
  for (auto [a, b] : edges) s << "  n" << a << " -> n" << b << ";\n";
  s << "}\n";
  return s.str();
}

json subset_json(const std::vector<std::string>& names, const Subset& S) {
  json a = json::array();
  for (int i : S) a.push_back(names[i]);
  return a;
}

template <class F>
std::vector<std::string> module_names(const Universe<F>& U) {
  std::vector<std::string> n;
  for (std::size_t i = 0; i < U.size(); ++i) n.push_back(Universe<F>::id(i));
  return n;
}

template <class F>
std::vector<std::string> entry_names(const TwoTermUniverse<F>& T) {
  std::vector<std::string> n;
  for (const auto& e : T.entries) n.push_back(e.id);
  return n;
}

ClosureOptions closure_opts(const Opts& o) {
  ClosureOptions c;
  c.ext_cap = o.ext_cap;
  c.mult_cap = o.mult_cap;
  c.seed = o.seed;
  c.threads = o.threads;
  return c;
}

// ---------------------------------------------------------------------------

template <class F>
int cmd_universe(const FinDimAlgebra<F>& A, const Opts& o) {
  auto U = make_universe(A, "auto");
  auto T = two_term_universe(U);
  json mods = json::array();
  for (std::size_t i = 0; i < U.size(); ++i) {
    const auto& M = U.modules[i];
    mods.push_back({{"id", Universe<F>::id(i)}, {"dims", M.dims}, {"brick", is_brick(M)}, {"tau_dims", T.taus[i].dims}, {"module", module_json(M)}});
  }
  json tt = json::array();
  for (const auto& e : T.entries) tt.push_back({{"id", e.id}, {"complex", complex_str(A, e.cx)}, {"g", e.g}, {"data", complex_json(A, e.cx)}});
  json j{{"algebra", A.name}, {"field", A.field.describe()}, {"dim", A.dim()}, {"basis", A.labels}, {"provider", U.provider}, {"complete", U.complete}, {"modules", mods}, {"two_term", tt}};
  if (!quiet(o)) {
    std::cout << A.name << ": dim " << A.dim() << ", " << U.size() << " modules, " << T.size() << " two-term indecomposables (" << U.provider << (U.complete ? ", complete" : ", bounded") << ")\n";
    for (const auto& e : T.entries) std::cout << "  " << e.id << "  " << complex_str(A, e.cx) << "  g=" << gvec_str(e.g) << "\n";
  }
  emit(o, j);
  return 0;
}

template <class F>
int cmd_silting(const FinDimAlgebra<F>& A, const Opts& o) {
  auto G = enumerate_silting(A, o.cap, o.seed);
  auto d = decide_g_finite(G);
  json nodes = json::array();
  for (std::size_t i = 0; i < G.nodes.size(); ++i) {
    json parts = json::array();
    for (const auto& X : G.nodes[i].summands) parts.push_back(complex_str(A, X));
    nodes.push_back({{"index", i}, {"g", G.nodes[i].g}, {"summands", parts}});
  }
  json edges = json::array();
  for (auto [a, b, k] : G.edges) edges.push_back({a, b, k});
  json j{{"algebra", A.name}, {"cap", o.cap}, {"status", G.complete ? "complete" : "capped(" + std::to_string(G.cap) + ")"}, {"g_finiteness", d.str()}, {"nodes", nodes}, {"edges", edges},
         {"collisions", G.collisions}, {"collision_failures", G.collision_failures}, {"window_exits", G.window_exits}};
  if (!quiet(o)) {
    std::cout << A.name << ": " << d.str() << ", " << G.nodes.size() << " siltings, " << G.edges.size() << " mutation edges\n";
    if (G.complete)
      for (const auto& S : G.nodes) std::cout << "  " << gmatrix_str(S.g) << "\n";
  }
  if (!o.dot_out.empty()) {
    std::ostringstream s;
    s << "graph \"" << dot_escape(A.name) << "\" {\n";
    for (std::size_t i = 0; i < G.nodes.size(); ++i) s << "  n" << i << " [label=\"" << gmatrix_str(G.nodes[i].g) << "\"];\n";
    std::set<std::pair<int, int>> seen;
    for (auto [a, b, k] : G.edges) {
      (void)k;
      if (seen.insert({std::min(a, b), std::max(a, b)}).second) s << "  n" << std::min(a, b) << " -- n" << std::max(a, b) << ";\n";
    }
    s << "}\n";
    write_text(o.dot_out, s.str());
  }
  emit(o, j);
  return 0;
}

template <class F>
int cmd_torsion(const FinDimAlgebra<F>& A, const Opts& o) {
  auto U = make_universe(A, "auto");
  auto MT = module_tables(U, o.threads);
  auto tors = enumerate_torsion_classes(U, MT);
  auto names = module_names(U);
  auto edges = hasse_edges(tors);
  json cls = json::array();
  std::vector<std::string> labels;
  for (const auto& t : tors) {
    cls.push_back({{"members", subset_json(names, t)}, {"functorially_finite", is_functorially_finite(U, MT, t)}, {"ext_projectives", subset_json(names, ext_projectives(MT, t))}});
    labels.push_back(subset_json(names, t).dump());
  }
  json j{{"algebra", A.name}, {"torsion_classes", cls}, {"hasse", edges}, {"bricks", subset_json(names, bricks(U))}};
  if (!quiet(o)) {
    std::cout << A.name << ": " << tors.size() << " torsion classes, " << edges.size() << " Hasse edges\n";
    for (const auto& l : labels) std::cout << "  " << l << "\n";
  }
  if (!o.hasse_out.empty()) write_text(o.hasse_out, hasse_dot(A.name + " torsion", labels, edges));
  emit(o, j);
  return 0;
}

template <class F>
int cmd_cotorsion(const FinDimAlgebra<F>& A, const Opts& o) {
  auto U = make_universe(A, "auto");
  auto T = two_term_universe(U);
  auto TT = two_term_tables(T, o.threads, false);
  auto names = entry_names(T);
  if (!U.complete) {
    auto P = tube_probe(T, TT.ext);
    json j{{"algebra", A.name},
           {"complete_universe", false},
           {"probe", {{"torsion", subset_json(module_names(U), P.tors)}, {"x", subset_json(names, P.pair.x)}, {"y", subset_json(names, P.pair.y)}, {"meet", subset_json(names, P.meet)}, {"presilting_in_meet", subset_json(names, P.presilting_in_meet)}, {"witness", P.witness}}}};
    if (!quiet(o)) std::cout << A.name << ": bounded universe; preinjective + tube probe has x meet y = " << subset_json(names, P.meet).dump() << (P.witness ? " (no nonzero presilting)" : "") << "\n";
    emit(o, j);
    return 0;
  }
  auto MT = module_tables(U, o.threads);
  auto tors = enumerate_torsion_classes(U, MT);
  auto L = enumerate_cotorsion_pairs(T, TT.ext, tors, o.threads);
  auto G = enumerate_silting(A, o.cap, o.seed);
  std::vector<Subset> se;
  if (G.complete) se = silting_entries(T, G, o.seed);
  json pairs = json::array();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < L.pairs.size(); ++i) {
    auto c = is_complete(T, L.pairs[i], G.complete ? &se : nullptr, o.seed);
    json p{{"x", subset_json(names, L.pairs[i].x)}, {"y", subset_json(names, L.pairs[i].y)}, {"torsion", subset_json(module_names(U), tors[i])}, {"completeness", verdict_str(c.state)}};
    if (c.silting >= 0) p["silting"] = G.nodes[c.silting].g;
    if (!c.witness.empty()) p["witness"] = c.witness;
    pairs.push_back(p);
    labels.push_back(subset_json(names, L.pairs[i].y).dump());
  }
  json j{{"algebra", A.name}, {"pairs", pairs}, {"hasse", L.hasse}, {"roundtrip", L.roundtrip}, {"order_isomorphic", L.order_iso}};
  if (!quiet(o)) {
    std::cout << A.name << ": " << L.pairs.size() << " cotorsion pairs, roundtrip " << (L.roundtrip ? "ok" : "FAILED") << ", lattice " << (L.order_iso ? "isomorphic" : "NOT isomorphic") << " to torsion classes\n";
    for (const auto& p : pairs) std::cout << "  y=" << p["y"].dump() << "  " << p["completeness"].get<std::string>() << "\n";
  }
  if (!o.hasse_out.empty()) write_text(o.hasse_out, hasse_dot(A.name + " cotorsion", labels, L.hasse));
  emit(o, j);
  return 0;
}

template <class F>
int cmd_thick(const FinDimAlgebra<F>& A, const Opts& o) {
  auto U = make_universe(A, "auto");
  require_complete(U, "thick");
  auto T = two_term_universe(U);
  auto TT = two_term_tables(T, o.threads, false);
  auto G = enumerate_silting(A, o.cap, o.seed);
  if (!G.complete) throw NotGFinite("enumeration of thick subcategories needs a g-finite algebra, got " + decide_g_finite(G).str());
  auto names = entry_names(T);
  auto pres = presiltings_from_siltings(A, G);
  auto copt = closure_opts(o);
  auto R = thick_rules(T, copt);
  std::map<Subset, json> found;
  bool agree = true;
  for (const auto& P : pres) {
    Subset ids;
    for (const auto& X : P.summands)
      for (int k : identify_two_term(T, X, o.seed)) ids.push_back(k);
    ids = normalized(ids);
    auto H = R.closure(ids);
    if (o.audit) agree = agree && thick_of_presilting(T, std::vector<int>(ids.begin(), ids.end()), copt) == H;
    if (found.count(H)) continue;
    found[H] = {{"members", subset_json(names, H)},
                {"generator", subset_json(names, ids)},
                {"injectives", subset_json(names, injectives_of(TT.ext, H))},
                {"projectives", subset_json(names, projectives_of(TT.ext, H))},
                {"enough_injectives", verdict_str(has_enough_injectives(T, TT.ext, H, o.seed).state)},
                {"enough_projectives", verdict_str(has_enough_projectives(T, TT.ext, H, o.seed).state)}};
  }
  std::vector<Subset> keys;
  for (const auto& [k, v] : found) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [](const Subset& a, const Subset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  json list = json::array();
  for (const auto& k : keys) list.push_back(found[k]);
  json j{{"algebra", A.name}, {"thick", list}, {"rules_exhaustive", R.exhaustive}};
  if (o.audit) {
    auto scan = R.scan(T.size());
    j["audit"] = {{"scan", scan.size()}, {"matches_presilting_list", scan == keys}, {"star_product_agrees", agree}};
  }
  if (!quiet(o)) {
    std::cout << A.name << ": " << keys.size() << " thick subcategories\n";
    for (const auto& h : list) std::cout << "  " << h["members"].dump() << "  inj " << h["enough_injectives"].get<std::string>() << ", proj " << h["enough_projectives"].get<std::string>() << "\n";
    if (o.audit) std::cout << "audit: " << j["audit"].dump() << "\n";
  }
  emit(o, j);
  return 0;
}

template <class F>
int cmd_wide(const FinDimAlgebra<F>& A, const Opts& o) {
  auto U = make_universe(A, "auto");
  auto T = two_term_universe(U);
  auto P = perp_table(T, o.threads);
  auto wide = wide_rules(U, closure_opts(o)).scan(U.size());
  auto mn = module_names(U);
  auto en = entry_names(T);
  json list = json::array();
  for (const auto& W : wide) {
    auto H = t_map(P, W);
    list.push_back({{"members", subset_json(mn, W)}, {"t_map", subset_json(en, H)}, {"roundtrip", w_map(P, H) == W}});
  }
  json j{{"algebra", A.name}, {"wide", list}, {"perp_descriptions_agree", P.agree}};
  if (!quiet(o)) {
    std::cout << A.name << ": " << wide.size() << " wide subcategories\n";
    for (const auto& w : list) std::cout << "  " << w["members"].dump() << "  T = " << w["t_map"].dump() << "\n";
  }
  emit(o, j);
  return 0;
}

// "(1,-1);(0,1)" or "X_M0,P_2[1]"
template <class F>
std::vector<int> parse_presilting(const TwoTermUniverse<F>& T, const std::string& s) {
  std::vector<int> ids;
  if (s.empty()) return ids;
  if (s[0] == '(') {
    std::string cur;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      char c = i < s.size() ? s[i] : ';';
      if (c == ';' || c == ' ') {
        if (cur.empty()) continue;
        if (cur.front() != '(' || cur.back() != ')') throw InputError("bad g-vector '" + cur + "'");
        std::vector<int> g;
        std::stringstream ss(cur.substr(1, cur.size() - 2));
        std::string t;
        while (std::getline(ss, t, ',')) g.push_back(std::stoi(t));
        int hit = -1;
        for (std::size_t k = 0; k < T.size(); ++k)
          if (T.entries[k].g == g && ext_dim_entries(T, static_cast<int>(k), static_cast<int>(k)) == 0) hit = static_cast<int>(k);
        if (hit < 0) throw GVectorNotPresilting("no indecomposable presilting with g-vector " + cur);
        ids.push_back(hit);
        cur.clear();
      } else {
        cur += c;
      }
    }
  } else {
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) {
      int hit = -1;
      for (std::size_t k = 0; k < T.size(); ++k)
        if (T.entries[k].id == t) hit = static_cast<int>(k);
      if (hit < 0) throw InputError("unknown summand id '" + t + "'");
      ids.push_back(hit);
    }
  }
  return ids;
}

template <class F>
int cmd_reduce(const FinDimAlgebra<F>& A, const Opts& o) {
  auto U = make_universe(A, "auto");
  auto T = two_term_universe(U);
  auto ids = parse_presilting(T, o.presilting);
  std::vector<TwoTermComplex<F>> parts;
  for (int i : ids) parts.push_back(T.entries[i].cx);
  if (!is_presilting(A, direct_sum_all(A, parts))) throw NotPresilting(o.presilting + " has self-extensions");
  auto S = make_silting_object(A, basic_summands(A, parts, o.seed));
  auto R = reduce(A, S, o.seed);
  json tu = json::array();
  for (const auto& X : R.TU.summands) tu.push_back(complex_str(A, X));
  json j{{"algebra", A.name},
         {"presilting", S.g},
         {"bongartz_completion", tu},
         {"endo_dim", R.endo_dim},
         {"endo_dim_presentation", R.endo_dim_presentation},
         {"reduced_dim", R.reduced_zero ? 0 : R.reduced.dim()},
         {"reduced_vertices", R.reduced_zero ? 0 : R.reduced.n()}};
  int rc = 0;
  if (o.verify) {
    auto G = enumerate_silting(A, o.cap, o.seed);
    require_complete(G);
    auto c = verify_reduction_bijection(A, G, S, o.cap, o.seed);
    j["verify"] = {{"n1", c.n1}, {"n2", c.n2}, {"connected", c.connected}, {"reduced_finite", c.reduced_finite}, {"ok", c.ok()}};
    if (!c.ok()) rc = 1;
  }
  if (!quiet(o)) {
    std::cout << A.name << ": U = " << gmatrix_str(S.g) << ", dim End(H0 T_U) = " << R.endo_dim << ", reduced algebra dim " << j["reduced_dim"] << " with " << j["reduced_vertices"] << " vertices\n";
    if (o.verify) std::cout << "  siltings containing U: " << j["verify"]["n1"] << ", siltings of reduced algebra: " << j["verify"]["n2"] << (rc ? "  MISMATCH" : "") << "\n";
  }
  emit(o, j);
  return rc;
}

template <class F>
int cmd_verify(const FinDimAlgebra<F>& A, const Opts& o) {
  if (o.profile != "fast" && o.profile != "full" && o.profile != "audit") throw InputError("profile must be fast, full or audit");
  VerifyOptions v;
  v.profile = o.profile;
  v.cap = o.cap;
  v.seed = o.seed;
  v.threads = o.threads;
  v.closure = closure_opts(o);
  v.source = o.algebra;
  v.timing = o.timing;
  auto rep = verify_algebra(A, v);
  if (!quiet(o)) {
    std::cout << A.name << " [" << o.profile << "]: " << rep.counts.dump() << "\n";
    for (const auto& s : rep.suites) {
      std::cout << "  " << s.status << "  " << s.tag;
      if (!s.reason.empty()) std::cout << "  (" << s.reason << ")";
      if (!s.witness.empty()) std::cout << "  " << s.witness;
      if (o.timing) std::cout << "  " << s.seconds << "s";
      std::cout << "\n";
    }
  }
  emit(o, rep.to_json(o.timing));
  return rep.violated() ? 1 : 0;
}

template <class F>
int dispatch(const std::string& cmd, const F& f, const json& doc, const Opts& o) {
  auto A = parse_algebra(doc, f);
  if (cmd == "universe") return cmd_universe(A, o);
  if (cmd == "silting") return cmd_silting(A, o);
  if (cmd == "torsion") return cmd_torsion(A, o);
  if (cmd == "cotorsion") return cmd_cotorsion(A, o);
  if (cmd == "thick") return cmd_thick(A, o);
  if (cmd == "wide") return cmd_wide(A, o);
  if (cmd == "reduce") return cmd_reduce(A, o);
  return cmd_verify(A, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"silt-lab: two-term silting, torsion, cotorsion and thick subcategories of bound quiver algebras"};
  app.require_subcommand(1);
  Opts o;
  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {{"verify", "run every verification suite and print a report"},
                      {"silting", "enumerate two-term silting objects by mutation"},
                      {"torsion", "enumerate torsion classes"},
                      {"cotorsion", "enumerate cotorsion pairs and check completeness"},
                      {"thick", "enumerate thick subcategories"},
                      {"wide", "enumerate wide subcategories and their thick partners"},
                      {"reduce", "silting reduction at a presilting object"},
                      {"universe", "list indecomposable modules and two-term objects"}};
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("algebra", o.algebra, "algebra JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--field", o.field, "override the field: prime, prime:<p> or rational");
    sub->add_option("--seed", o.seed, "seed for decomposition and map sampling")->default_val(0);
    sub->add_option("--threads", o.threads, "worker threads")->default_val(1)->check(CLI::PositiveNumber);
    sub->add_option("--json", o.json_out, "write the JSON report here ('-' for stdout)");
    sub->add_option("--cap", o.cap, "node cap for silting enumeration")->default_val(50)->check(CLI::PositiveNumber);
    sub->add_option("--ext-cap", o.ext_cap, "largest extension/Hom space searched exhaustively")->default_val(4);
    sub->add_option("--mult-cap", o.mult_cap, "summands per side of candidate conflations")->default_val(2)->check(CLI::PositiveNumber);
    std::string n = c.name;
    if (n == "verify") {
      sub->add_option("--profile", o.profile, "fast, full or audit")->default_val("full");
      sub->add_flag("--timing", o.timing, "include runtimes in the report");
    }
    if (n == "silting") sub->add_option("--dot", o.dot_out, "write the mutation graph as DOT");
    if (n == "torsion" || n == "cotorsion") sub->add_option("--hasse", o.hasse_out, "write the Hasse diagram as DOT");
    if (n == "thick") sub->add_flag("--audit", o.audit, "scan all subsets and cross-check the star product");
    if (n == "reduce") {
      sub->add_option("--presilting", o.presilting, "g-vectors \"(1,-1);(0,1)\" or ids \"X_M0,P_2[1]\"")->required();
      sub->add_flag("--verify", o.verify, "compare silting counts on both sides");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    auto doc = read_json_file(o.algebra);
    FieldSpec fs;
    if (!o.field.empty())
      fs = parse_field_flag(o.field);
    else if (doc.contains("field"))
      fs = parse_field_spec(doc.at("field"));
    if (fs.rational) return dispatch(cmd, RationalField{}, doc, o);
    return dispatch(cmd, PrimeField(fs.p), doc, o);
  } catch (const Error& e) {
    std::cerr << "silt-lab: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "silt-lab: InputError: " << e.what() << "\n";
    return 2;
  }
}
