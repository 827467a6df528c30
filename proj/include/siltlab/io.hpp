#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rep.hpp"

namespace siltlab {

using json = nlohmann::json;

struct FieldSpec {
  bool rational = false;
  std::uint32_t p = 101;
  std::string str() const { return rational ? "rational" : "prime(" + std::to_string(p) + ")"; }
};

inline FieldSpec parse_field_spec(const json& j) {
  FieldSpec s;
  if (!j.is_object() || !j.contains("type")) throw InputError("field must be an object with a \"type\"");
  auto t = j.at("type").get<std::string>();
  if (t == "rational") {
    s.rational = true;
  } else if (t == "prime") {
    auto p = j.value("p", 101ll);
    if (p < 2 || p >= (1ll << 31) || !is_prime(static_cast<std::uint64_t>(p))) throw BadField("p = " + std::to_string(p) + " is not a prime below 2^31");
    s.p = static_cast<std::uint32_t>(p);
  } else {
    throw BadField("unknown field type '" + t + "'");
  }
  return s;
}

// "prime:7", "prime", "rational"
inline FieldSpec parse_field_flag(const std::string& s) {
  if (s == "rational") return {true, 0};
  if (s == "prime") return {};
  if (s.rfind("prime:", 0) == 0) {
    json j{{"type", "prime"}, {"p", std::stoll(s.substr(6))}};
    return parse_field_spec(j);
  }
  throw BadField("unknown field '" + s + "' (use prime, prime:<p> or rational)");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline std::string coeff_string(const json& c) {
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_integer()) return std::to_string(c.get<long long>());
  throw InputError("coefficient must be an integer or a \"num/den\" string");
}

template <class F>
typename F::elem parse_coeff(const F& f, const json& c) {
  try {
    return f.parse(coeff_string(c));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("bad coefficient: ") + e.what());
  }
}

template <class F>
Vec<F> parse_vec(const F& f, const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw InputError("expected a vector of length " + std::to_string(n));
  Vec<F> v;
  for (const auto& c : j) v.push_back(parse_coeff(f, c));
  return v;
}

template <class F>
json vec_json(const F& f, const Vec<F>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(f.str(x));
  return a;
}

inline BoundQuiver parse_quiver(const json& j) {
  BoundQuiver q;
  for (const auto& v : j.at("vertices")) q.vertices.push_back(v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>()));
  for (const auto& a : j.value("arrows", json::array())) {
    auto id = [](const json& x) { return x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()); };
    q.arrows.push_back({a.at("name").get<std::string>(), id(a.at("from")), id(a.at("to"))});
  }
  for (const auto& r : j.value("relations", json::array())) {
    std::vector<RelationTerm> rel;
    for (const auto& t : r.at("terms")) rel.push_back({coeff_string(t.value("coeff", json("1"))), t.at("path").get<std::vector<std::string>>()});
    q.relations.push_back(std::move(rel));
  }
  return q;
}

// Either a bound quiver or {"structure": {"dim", "table", "idempotents"}},
// where table[i][j] is the coefficient vector of b_i * b_j.
template <class F>
FinDimAlgebra<F> parse_algebra(const json& j, const F& f, const std::string& name = "") {
  try {
    if (j.contains("structure")) {
      const auto& s = j.at("structure");
      int dim = s.at("dim").get<int>();
      std::vector<Vec<F>> table;
      const auto& t = s.at("table");
      if (!t.is_array() || static_cast<int>(t.size()) != dim) throw InputError("table must have dim rows");
      for (const auto& row : t) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim) throw InputError("table rows must have dim entries");
        for (const auto& cell : row) table.push_back(parse_vec(f, cell, dim));
      }
      std::vector<Vec<F>> idem;
      for (const auto& e : s.at("idempotents")) idem.push_back(parse_vec(f, e, dim));
      auto A = abstract_algebra(f, dim, table, idem, name.empty() ? j.value("name", std::string("abstract")) : name);
      if (!A.check_associative()) throw InputError("structure constants are not associative");
      if (!A.check_idempotents()) throw InputError("idempotents are not a complete orthogonal set");
      return A;
    }
    auto A = path_algebra(parse_quiver(j), f);
    A.name = name.empty() ? j.value("name", std::string("quiver")) : name;
    return A;
  } catch (const json::exception& e) {
    throw InputError(std::string("algebra document: ") + e.what());
  }
}

template <class F>
json algebra_json(const FinDimAlgebra<F>& A) {
  const F& f = A.field;
  json t = json::array();
  for (int i = 0; i < A.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < A.dim(); ++k) {
      auto v = A.zero_vec();
      for (const auto& [b, c] : A.mul_basis(i, k)) v[b] = c;
      row.push_back(vec_json(f, v));
    }
    t.push_back(row);
  }
  json idem = json::array();
  for (int v = 0; v < A.n(); ++v) idem.push_back(vec_json(f, A.unit_vec(A.idem[v])));
  json field = f.characteristic() == 0 ? json{{"type", "rational"}} : json{{"type", "prime"}, {"p", f.characteristic()}};
  return {{"name", A.name}, {"field", field}, {"labels", A.labels}, {"structure", {{"dim", A.dim()}, {"table", t}, {"idempotents", idem}}}};
}

template <class F>
Mat<F> parse_mat(const F& f, const json& j, std::size_t r, std::size_t c) {
  Mat<F> m = zeros(f, r, c);
  if (r == 0 || c == 0) return m;
  if (!j.is_array() || j.size() != r) throw InputError("matrix must have " + std::to_string(r) + " rows");
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw InputError("matrix rows must have " + std::to_string(c) + " entries");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = parse_coeff(f, j[i][k]);
  }
  return m;
}

template <class F>
json mat_json(const F& f, const Mat<F>& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols; ++k) row.push_back(f.str(m(i, k)));
    a.push_back(row);
  }
  return a;
}

// {"dims":[...], "matrices": {"<generator label>": [[...]]}}; missing
// generators act by zero.
template <class F>
Rep<F> parse_module(const FinDimAlgebra<F>& A, const json& j) {
  Rep<F> M{&A, j.at("dims").get<std::vector<int>>(), {}};
  if (static_cast<int>(M.dims.size()) != A.n()) throw InputError("dims must have one entry per vertex");
  for (int d : M.dims)
    if (d < 0) throw InputError("negative dimension");
  auto mats = j.value("matrices", json::object());
  for (auto it = mats.begin(); it != mats.end(); ++it) {
    bool found = false;
    for (int g : A.gens) found |= A.labels[g] == it.key();
    if (!found) throw InputError("unknown generator '" + it.key() + "'");
  }
  for (int g : A.gens) {
    auto r = M.dims[A.tgt[g]], c = M.dims[A.src[g]];
    M.act.push_back(mats.contains(A.labels[g]) ? parse_mat(A.field, mats[A.labels[g]], r, c) : zeros(A.field, r, c));
  }
  if (!satisfies_relations(M)) throw InputError("module matrices violate the relations");
  return M;
}

template <class F>
json module_json(const Rep<F>& M) {
  const auto& A = *M.alg;
  json mats = json::object();
  for (std::size_t gi = 0; gi < A.gens.size(); ++gi) mats[A.labels[A.gens[gi]]] = mat_json(A.field, M.act[gi]);
  return {{"dims", M.dims}, {"matrices", mats}};
}

// {"pminus":[mult], "pzero":[mult], "diff":[[coefficient vector]]} with rows
// and columns listing projective summands by vertex, repeated by multiplicity.
template <class F>
TwoTermComplex<F> parse_complex(const FinDimAlgebra<F>& A, const json& j) {
  auto expand = [&](const json& m) {
    auto mult = m.get<std::vector<int>>();
    if (static_cast<int>(mult.size()) != A.n()) throw InputError("multiplicity vectors need one entry per vertex");
    std::vector<int> out;
    for (int v = 0; v < A.n(); ++v) {
      if (mult[v] < 0) throw InputError("negative multiplicity");
      for (int k = 0; k < mult[v]; ++k) out.push_back(v);
    }
    return out;
  };
  auto X = make_complex(A, expand(j.at("pminus")), expand(j.at("pzero")));
  const auto& d = j.value("diff", json::array());
  if (X.minus.empty() || X.zero.empty()) return X;
  if (!d.is_array() || d.size() != X.minus.size()) throw InputError("diff needs one row per P^{-1} summand");
  for (std::size_t r = 0; r < X.minus.size(); ++r) {
    if (d[r].size() != X.zero.size()) throw InputError("diff needs one column per P^0 summand");
    for (std::size_t c = 0; c < X.zero.size(); ++c) {
      auto v = parse_vec(A.field, d[r][c], A.dim());
      if (!A.in_piece(v, X.minus[r], X.zero[c])) throw InputError("diff entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not in e_i A e_j");
      X.d.at(r, c) = v;
    }
  }
  return X;
}

template <class F>
json complex_json(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  json d = json::array();
  for (std::size_t r = 0; r < X.minus.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < X.zero.size(); ++c) row.push_back(vec_json(A.field, X.d.at(r, c)));
    d.push_back(row);
  }
  return {{"pminus", multiplicities<F>(A.n(), X.minus)}, {"pzero", multiplicities<F>(A.n(), X.zero)}, {"diff", d}};
}

template <class F>
std::string complex_str(const FinDimAlgebra<F>& A, const TwoTermComplex<F>& X) {
  auto side = [&](const std::vector<int>& v) {
    if (v.empty()) return std::string("0");
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "+" : "") + std::string("P") + A.vertex_names[v[i]];
    return s;
  };
  std::string s = side(X.minus) + " -> " + side(X.zero);
  if (!X.minus.empty() && !X.zero.empty()) {
    s += " [";
    for (std::size_t r = 0; r < X.minus.size(); ++r) {
      s += r ? "; " : "";
      for (std::size_t c = 0; c < X.zero.size(); ++c) s += (c ? ", " : "") + A.element_str(X.d.at(r, c));
    }
    s += "]";
  }
  return s;
}

}  // namespace siltlab
