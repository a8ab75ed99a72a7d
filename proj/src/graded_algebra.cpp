#include "carnot/graded_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "carnot/config.hpp"
#include "carnot/linalg.hpp"
#include "carnot/word_algebra.hpp"

namespace carnot {

using json = nlohmann::json;

GradedAlgebra::GradedAlgebra(std::string name, std::vector<int> dims, std::vector<BracketPair> pairs)
    : name_(std::move(name)), dims_(std::move(dims)) {
  if (dims_.empty()) throw Error(ErrorKind::Parse, "algebra needs at least one layer");
  for (int d : dims_)
    if (d <= 0) throw Error(ErrorKind::Parse, "layer dimensions must be positive");
  offsets_.reserve(dims_.size());
  for (std::size_t l = 0; l < dims_.size(); ++l) {
    offsets_.push_back(total_);
    for (int i = 0; i < dims_[l]; ++i) layer_of_.push_back(static_cast<int>(l) + 1);
    total_ += dims_[l];
  }
  pair_index_.assign(static_cast<std::size_t>(total_) * total_, -1);
  std::sort(pairs.begin(), pairs.end(),
            [](const BracketPair& x, const BracketPair& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  for (auto& p : pairs) {
    if (p.a >= p.b || p.a < 0 || p.b >= total_) throw Error(ErrorKind::Internal, "malformed bracket pair");
    p.terms.erase(std::remove_if(p.terms.begin(), p.terms.end(), [](const BracketTerm& t) { return t.coeff == 0; }),
                  p.terms.end());
    if (p.terms.empty()) continue;
    for (auto& t : p.terms) {
      if (t.out < 0 || t.out >= total_) throw Error(ErrorKind::Parse, "bracket output index out of range");
      t.coeff_d = t.coeff.get_d();
    }
    std::sort(p.terms.begin(), p.terms.end(), [](const BracketTerm& x, const BracketTerm& y) { return x.out < y.out; });
    if (pair_index_[p.a * total_ + p.b] != -1) throw Error(ErrorKind::Parse, "duplicate bracket pair");
    pair_index_[p.a * total_ + p.b] = static_cast<int>(pairs_.size());
    pairs_.push_back(std::move(p));
  }
}

int GradedAlgebra::dim(int layer) const {
  if (layer < 1 || layer > step()) throw Error(ErrorKind::LayerOutOfRange, "layer " + std::to_string(layer));
  return dims_[layer - 1];
}

int GradedAlgebra::offset(int layer) const {
  if (layer < 1 || layer > step()) throw Error(ErrorKind::LayerOutOfRange, "layer " + std::to_string(layer));
  return offsets_[layer - 1];
}

std::vector<BracketTerm> GradedAlgebra::basis_bracket(int a, int b) const {
  if (a == b) return {};
  const bool flip = a > b;
  const int idx = flip ? pair_index_[b * total_ + a] : pair_index_[a * total_ + b];
  if (idx < 0) return {};
  std::vector<BracketTerm> out = pairs_[idx].terms;
  if (flip)
    for (auto& t : out) {
      t.coeff = -t.coeff;
      t.coeff_d = -t.coeff_d;
    }
  return out;
}

int GradedAlgebra::hausdorff_dimension() const {
  int q = 0;
  for (int l = 1; l <= step(); ++l) q += l * dims_[l - 1];
  return q;
}

bool operator==(const GradedAlgebra& x, const GradedAlgebra& y) {
  if (x.name_ != y.name_ || x.dims_ != y.dims_ || x.pairs_.size() != y.pairs_.size()) return false;
  for (std::size_t i = 0; i < x.pairs_.size(); ++i) {
    const auto& p = x.pairs_[i];
    const auto& q = y.pairs_[i];
    if (p.a != q.a || p.b != q.b || p.terms.size() != q.terms.size()) return false;
    for (std::size_t t = 0; t < p.terms.size(); ++t)
      if (p.terms[t].out != q.terms[t].out || p.terms[t].coeff != q.terms[t].coeff) return false;
  }
  return true;
}

XVec to_radical(const RVec& v, const std::shared_ptr<RadicalField>& field) {
  std::vector<Radical> out;
  out.reserve(v.size());
  for (const auto& x : v.coords()) out.emplace_back(x, field);
  return XVec(std::move(out));
}

namespace {

std::string basis_label(const GradedAlgebra& A, int index) {
  const int l = A.layer_of(index);
  return "(" + std::to_string(l) + "," + std::to_string(index - A.offset(l) + 1) + ")";
}

}  // namespace

void check_grading(const GradedAlgebra& A) {
  for (const auto& p : A.pairs()) {
    const int target = A.layer_of(p.a) + A.layer_of(p.b);
    for (const auto& t : p.terms) {
      if (A.layer_of(t.out) != target)
        throw Error(ErrorKind::Grading, "[" + basis_label(A, p.a) + "," + basis_label(A, p.b) + "] has a component in layer " +
                                            std::to_string(A.layer_of(t.out)) + ", expected layer " +
                                            std::to_string(target));
    }
  }
}

void check_jacobi(const GradedAlgebra& A) {
  const int n = A.dim();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        if (A.layer_of(a) + A.layer_of(b) + A.layer_of(c) > A.step()) continue;
        const RVec ea = basis_vec<Rational>(A, a);
        const RVec eb = basis_vec<Rational>(A, b);
        const RVec ec = basis_vec<Rational>(A, c);
        RVec sum = bracket(A, ea, bracket(A, eb, ec));
        sum += bracket(A, eb, bracket(A, ec, ea));
        sum += bracket(A, ec, bracket(A, ea, eb));
        if (!sum.is_zero())
          throw Error(ErrorKind::Jacobi, "Jacobi identity fails on basis triple " + basis_label(A, a) + " " +
                                             basis_label(A, b) + " " + basis_label(A, c));
      }
}

void check_bracket_generating(const GradedAlgebra& A) {
  // Image of phi_i is [V_1, image of phi_{i-1}].
  std::vector<RVec> previous;
  for (int s = 0; s < A.dim(1); ++s) previous.push_back(basis_vec<Rational>(A, s));
  for (int l = 2; l <= A.step(); ++l) {
    QMatrix rows;
    for (int s = 0; s < A.dim(1); ++s) {
      const RVec es = basis_vec<Rational>(A, s);
      for (const auto& w : previous) rows.push_back(project_layer(A, bracket(A, es, w), l));
    }
    QMatrix basis = rows.empty() ? QMatrix{} : q_row_basis(rows);
    if (static_cast<int>(basis.size()) < A.dim(l))
      throw Error(ErrorKind::NotBracketGenerating, "layer " + std::to_string(l) + ": rank of the bracket map is " +
                                                       std::to_string(basis.size()) + " < " +
                                                       std::to_string(A.dim(l)));
    previous.clear();
    for (const auto& row : basis) previous.push_back(inject_layer(A, row, l));
  }
}

void validate(const GradedAlgebra& A) {
  check_grading(A);
  check_jacobi(A);
  check_bracket_generating(A);
}

namespace {

Rational json_rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return exact_from_double(j.get<double>());
  throw Error(ErrorKind::Parse, "expected a rational number, got " + j.dump());
}

int json_index(const GradedAlgebra& A, const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw Error(ErrorKind::Parse, "basis reference must be [layer, idx], got " + j.dump());
  const int l = j[0].get<int>();
  const int i = j[1].get<int>();
  if (l < 1 || l > A.step() || i < 1 || i > A.dim(l))
    throw Error(ErrorKind::Parse, "basis reference " + j.dump() + " out of range");
  return A.offset(l) + i - 1;
}

// Rational L D L^T; returns T with T^T G T = I when all pivots are squares.
QMatrix orthonormalizing_matrix(const QMatrix& g) {
  const std::size_t n = g.size();
  for (const auto& row : g)
    if (row.size() != n) throw Error(ErrorKind::Parse, "gram1 must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g[i][j] != g[j][i]) throw Error(ErrorKind::Parse, "gram1 must be symmetric");
  QMatrix l = q_identity(n);
  std::vector<Rational> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational s = g[j][j];
    for (std::size_t k = 0; k < j; ++k) s -= l[j][k] * l[j][k] * d[k];
    if (s <= 0) throw Error(ErrorKind::Parse, "gram1 is not positive definite");
    d[j] = s;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational t = g[i][j];
      for (std::size_t k = 0; k < j; ++k) t -= l[i][k] * l[j][k] * d[k];
      l[i][j] = t / d[j];
    }
  }
  // T = L^{-T} D^{-1/2}
  QMatrix t = q_inverse(q_transpose(l));
  for (std::size_t j = 0; j < n; ++j) {
    auto root = exact_root(d[j], 2);
    if (!root)
      throw Error(ErrorKind::Parse, "gram1 needs an irrational basis change (pivot " + to_string(d[j]) +
                                        " is not a rational square)");
    for (std::size_t i = 0; i < n; ++i) t[i][j] /= *root;
  }
  return t;
}

GradedAlgebra change_layer1_basis(const GradedAlgebra& A, const QMatrix& t) {
  const int d1 = A.dim(1);
  std::vector<RVec> new_basis;
  for (int i = 0; i < A.dim(); ++i) {
    RVec v = zero_vec<Rational>(A);
    if (i < d1) {
      for (int r = 0; r < d1; ++r) v[r] = t[r][i];
    } else {
      v[i] = 1;
    }
    new_basis.push_back(std::move(v));
  }
  QMatrix to_new = q_inverse(q_transpose([&] {
    QMatrix m;
    for (const auto& v : new_basis) m.push_back(v.coords());
    return m;
  }()));
  std::vector<BracketPair> pairs;
  for (int a = 0; a < A.dim(); ++a)
    for (int b = a + 1; b < A.dim(); ++b) {
      const RVec br = bracket(A, new_basis[a], new_basis[b]);
      if (br.is_zero()) continue;
      const std::vector<Rational> coords = q_apply(to_new, br.coords());
      BracketPair p{a, b, {}};
      for (int o = 0; o < A.dim(); ++o)
        if (coords[o] != 0) p.terms.push_back({o, coords[o], 0.0});
      pairs.push_back(std::move(p));
    }
  return GradedAlgebra(A.name(), A.dims(), std::move(pairs));
}

}  // namespace

GradedAlgebra load_algebra(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "algebra document must be an object");
  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty())
    throw Error(ErrorKind::Parse, "missing dims");
  std::vector<int> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long>() <= 0) throw Error(ErrorKind::Parse, "dims must be positive integers");
    dims.push_back(d.get<int>());
  }
  const std::string name = doc.value("name", std::string("unnamed"));
  const GradedAlgebra shape(name, dims, {});

  struct Listed {
    std::vector<Rational> out;
    bool reversed;
  };
  std::map<std::pair<int, int>, Listed> listed;
  if (doc.contains("brackets")) {
    if (!doc["brackets"].is_array()) throw Error(ErrorKind::Parse, "brackets must be an array");
    for (const auto& entry : doc["brackets"]) {
      if (!entry.is_object() || !entry.contains("a") || !entry.contains("b"))
        throw Error(ErrorKind::Parse, "bracket entry needs a and b");
      const int a = json_index(shape, entry["a"]);
      const int b = json_index(shape, entry["b"]);
      std::vector<Rational> out(static_cast<std::size_t>(shape.dim()), Rational(0));
      if (entry.contains("out")) {
        if (!entry["out"].is_array()) throw Error(ErrorKind::Parse, "out must be an array");
        for (const auto& term : entry["out"]) {
          if (!term.is_object() || !term.contains("layer") || !term.contains("idx") || !term.contains("coeff"))
            throw Error(ErrorKind::Parse, "output term needs layer, idx, coeff");
          const int o = json_index(shape, json::array({term["layer"], term["idx"]}));
          out[o] += json_rational(term["coeff"]);
        }
      }
      const bool nonzero = std::any_of(out.begin(), out.end(), [](const Rational& q) { return q != 0; });
      if (a == b) {
        if (nonzero) throw Error(ErrorKind::Antisymmetry, "[x,x] must vanish for basis " + entry["a"].dump());
        continue;
      }
      const bool reversed = a > b;
      if (reversed)
        for (auto& q : out) q = -q;
      const auto key = std::minmax(a, b);
      auto it = listed.find(key);
      if (it == listed.end()) {
        listed.emplace(key, Listed{std::move(out), reversed});
      } else if (it->second.out != out) {
        if (it->second.reversed != reversed)
          throw Error(ErrorKind::Antisymmetry, "[" + entry["a"].dump() + "," + entry["b"].dump() +
                                                   "] contradicts the reversed listing");
        throw Error(ErrorKind::Parse, "bracket " + entry["a"].dump() + "," + entry["b"].dump() + " listed twice");
      }
    }
  }
  std::vector<BracketPair> pairs;
  for (const auto& [key, entry] : listed) {
    BracketPair p{key.first, key.second, {}};
    for (int o = 0; o < shape.dim(); ++o)
      if (entry.out[o] != 0) p.terms.push_back({o, entry.out[o], 0.0});
    if (!p.terms.empty()) pairs.push_back(std::move(p));
  }
  GradedAlgebra algebra(name, dims, std::move(pairs));
  check_grading(algebra);
  check_jacobi(algebra);
  check_bracket_generating(algebra);
  if (doc.contains("gram1")) {
    QMatrix g;
    for (const auto& row : doc["gram1"]) {
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(json_rational(x));
      g.push_back(std::move(r));
    }
    if (static_cast<int>(g.size()) != algebra.dim(1)) throw Error(ErrorKind::Parse, "gram1 must be d1 x d1");
    algebra = change_layer1_basis(algebra, orthonormalizing_matrix(g));
  }
  return algebra;
}

GradedAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_algebra(buf.str());
}

std::string algebra_to_json(const GradedAlgebra& A) {
  json doc;
  doc["name"] = A.name();
  doc["dims"] = A.dims();
  json brackets = json::array();
  auto ref = [&](int index) {
    const int l = A.layer_of(index);
    return json::array({l, index - A.offset(l) + 1});
  };
  for (const auto& p : A.pairs()) {
    json out = json::array();
    for (const auto& t : p.terms) {
      const int l = A.layer_of(t.out);
      out.push_back({{"layer", l}, {"idx", t.out - A.offset(l) + 1}, {"coeff", to_string(t.coeff)}});
    }
    brackets.push_back({{"a", ref(p.a)}, {"b", ref(p.b)}, {"out", out}});
  }
  doc["brackets"] = brackets;
  return doc.dump(2);
}

namespace {

BracketPair simple_pair(int a, int b, int out, long coeff = 1) {
  return BracketPair{a, b, {BracketTerm{out, Rational(coeff), 0.0}}};
}

GradedAlgebra free_nilpotent(int d1, int k) {
  if (d1 < 1 || k < 1) throw Error(ErrorKind::UnsupportedParams, "free_nilpotent needs d1 >= 1 and k >= 1");
  const std::size_t work = saturating_pow(static_cast<std::size_t>(d1), static_cast<std::size_t>(k));
  if (work > workload_cap())
    throw Error(ErrorKind::UnsupportedParams, "free_nilpotent(" + std::to_string(d1) + "," + std::to_string(k) +
                                                  ") needs d1^k = " + std::to_string(work) + " basis work, cap is " +
                                                  std::to_string(workload_cap()));
  const std::vector<Word> words = lyndon_words(d1, k);
  std::vector<std::vector<Word>> by_length(static_cast<std::size_t>(k) + 1);
  for (const auto& w : words) by_length[w.size()].push_back(w);
  std::vector<int> dims;
  for (int l = 1; l <= k; ++l) {
    std::sort(by_length[l].begin(), by_length[l].end());
    if (by_length[l].empty()) break;
    dims.push_back(static_cast<int>(by_length[l].size()));
  }
  std::vector<Word> basis;
  std::vector<WordSeries> expansions;
  for (std::size_t l = 1; l <= dims.size(); ++l)
    for (const auto& w : by_length[l]) {
      basis.push_back(w);
      expansions.push_back(lyndon_polynomial(w, k));
    }
  std::vector<int> offsets{0};
  for (int d : dims) offsets.push_back(offsets.back() + d);
  std::vector<BracketPair> pairs;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a + 1; b < basis.size(); ++b) {
      const std::size_t len = basis[a].size() + basis[b].size();
      if (len > dims.size()) continue;
      const WordSeries br = commutator(expansions[a], expansions[b]);
      if (br.empty()) continue;
      const auto coords = lyndon_coordinates(br, by_length[len], k);
      BracketPair p{static_cast<int>(a), static_cast<int>(b), {}};
      for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) p.terms.push_back({offsets[len - 1] + static_cast<int>(i), coords[i], 0.0});
      if (!p.terms.empty()) pairs.push_back(std::move(p));
    }
  return GradedAlgebra("free_nilpotent(" + std::to_string(d1) + "," + std::to_string(k) + ")", dims,
                       std::move(pairs));
}

}  // namespace

GradedAlgebra builtin_family(std::string_view name, const std::vector<int>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n)
      throw Error(ErrorKind::UnsupportedParams, std::string(name) + " takes " + std::to_string(n) + " parameter(s)");
  };
  if (name == "heisenberg") {
    if (params.size() > 1) want(1);
    const int n = params.empty() ? 1 : params[0];
    if (n < 1) throw Error(ErrorKind::UnsupportedParams, "heisenberg(n) needs n >= 1");
    std::vector<BracketPair> pairs;
    for (int i = 0; i < n; ++i) pairs.push_back(simple_pair(i, n + i, 2 * n));
    const std::string label = n == 1 ? "heisenberg" : "heisenberg(" + std::to_string(n) + ")";
    return GradedAlgebra(label, {2 * n, 1}, std::move(pairs));
  }
  if (name == "engel") {
    want(0);
    return GradedAlgebra("engel", {2, 1, 1}, {simple_pair(0, 1, 2), simple_pair(0, 2, 3)});
  }
  if (name == "free_nilpotent") {
    want(2);
    return free_nilpotent(params[0], params[1]);
  }
  if (name == "abelian") {
    if (params.size() > 1) want(1);
    const int d = params.empty() ? 1 : params[0];
    if (d < 1) throw Error(ErrorKind::UnsupportedParams, "abelian(d) needs d >= 1");
    return GradedAlgebra("abelian(" + std::to_string(d) + ")", {d}, {});
  }
  throw Error(ErrorKind::UnknownFamily, "unknown algebra family '" + std::string(name) + "'");
}

bool looks_like_builtin(std::string_view text) {
  const auto paren = text.find('(');
  const std::string_view head = text.substr(0, paren);
  return head == "heisenberg" || head == "engel" || head == "free_nilpotent" || head == "abelian";
}

GradedAlgebra builtin_from_string(std::string_view text) {
  std::string_view s = text;
  const auto paren = s.find('(');
  const std::string name(s.substr(0, paren));
  std::vector<int> params;
  if (paren != std::string_view::npos) {
    if (s.back() != ')') throw Error(ErrorKind::Parse, "bad builtin name '" + std::string(text) + "'");
    std::string inner(s.substr(paren + 1, s.size() - paren - 2));
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stoi(item, &used));
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "bad parameter '" + item + "' in '" + std::string(text) + "'");
      }
    }
  }
  return builtin_family(name, params);
}

GradedAlgebra resolve_algebra(std::string_view text) {
  if (looks_like_builtin(text)) return builtin_from_string(text);
  return load_algebra_file(std::string(text));
}

}  // namespace carnot
