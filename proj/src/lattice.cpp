#include "carnot/lattice.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace carnot {

namespace {

int leading_layer(const GradedAlgebra& A, const RVec& v) {
  for (int i = 0; i < A.dim(); ++i)
    if (v[i] != 0) return A.layer_of(i);
  return 0;
}

}  // namespace

void validate_lattice(const GradedAlgebra& A, const Lattice& L) {
  if (L.generators.empty()) throw Error(ErrorKind::Parse, "lattice needs at least one generator");
  for (const auto& g : L.generators) check_member(A, g.size());
  if (static_cast<int>(L.malcev_basis.size()) != A.dim())
    throw Error(ErrorKind::SingularBasis, "Malcev basis needs " + std::to_string(A.dim()) + " elements");
  QMatrix m;
  for (const auto& b : L.malcev_basis) {
    check_member(A, b.size());
    m.push_back(b.coords());
  }
  if (q_rank(m) < m.size()) throw Error(ErrorKind::SingularBasis, "Malcev basis is linearly dependent");
  int previous = 1;
  std::map<int, QMatrix> leading;
  for (std::size_t i = 0; i < L.malcev_basis.size(); ++i) {
    const int l = leading_layer(A, L.malcev_basis[i]);
    if (l < previous)
      throw Error(ErrorKind::NotFiltrationAdapted, "basis element " + std::to_string(i + 1) +
                                                       " starts in a lower layer than its predecessor");
    previous = l;
    leading[l].push_back(project_layer(A, L.malcev_basis[i], l));
  }
  for (int l = 1; l <= A.step(); ++l) {
    auto it = leading.find(l);
    const std::size_t count = it == leading.end() ? 0 : it->second.size();
    if (static_cast<int>(count) != A.dim(l) || q_rank(it->second) != count)
      throw Error(ErrorKind::NotFiltrationAdapted, "basis elements led by layer " + std::to_string(l) +
                                                       " do not project to a basis of that layer");
  }
}

double covolume(const GradedAlgebra& A, const Lattice& L, const PoppMetric& P) {
  validate_lattice(A, L);
  return popp_covolume(P, L.malcev_basis);
}

std::vector<LatticeElement> enumerate_ball(const GradedAlgebra& A, const Lattice& L, int r, std::size_t cap) {
  if (r < 1) throw Error(ErrorKind::Usage, "word radius must be at least 1");
  std::vector<std::pair<RVec, int>> letters;
  for (std::size_t i = 0; i < L.generators.size(); ++i) {
    check_member(A, L.generators[i].size());
    letters.emplace_back(L.generators[i], static_cast<int>(i) + 1);
    letters.emplace_back(-L.generators[i], -static_cast<int>(i) - 1);
  }
  std::set<std::vector<Rational>> seen;
  seen.insert(zero_vec<Rational>(A).coords());
  std::vector<LatticeElement> out;
  std::vector<LatticeElement> frontier{LatticeElement{zero_vec<Rational>(A), {}}};
  for (int len = 1; len <= r && !frontier.empty(); ++len) {
    std::vector<LatticeElement> next;
    for (const auto& e : frontier)
      for (const auto& [g, label] : letters) {
        RVec x = bch_product(A, e.log, g);
        if (!seen.insert(x.coords()).second) continue;
        if (seen.size() - 1 > cap)
          throw Error(ErrorKind::ExplosionGuard, "word ball exceeds " + std::to_string(cap) + " elements");
        LatticeElement n{std::move(x), e.word};
        n.word.push_back(label);
        next.push_back(n);
        out.push_back(std::move(n));
      }
    frontier = std::move(next);
  }
  return out;
}

SystoleBound systole_upper_bound(const GradedAlgebra& A, const Lattice& L, const PoppMetric& P, int r) {
  SystoleBound out;
  for (auto& e : enumerate_ball(A, L, r)) {
    RootContext<Radical> ctx;
    const auto cert = certified_dcc_upper(A, P, lift_vec(ctx, e.log), ctx);
    ElementBound b{std::move(e), 0.0, cert.bound};
    b.lower = dcc_lower_bound(A, b.element.log);
    out.all.push_back(std::move(b));
  }
  if (out.all.empty()) throw Error(ErrorKind::Internal, "lattice ball is empty");
  const ElementBound* best = &out.all.front();
  for (const auto& b : out.all)
    if (b.upper < best->upper || (b.upper == best->upper && b.element.log.coords() < best->element.log.coords()))
      best = &b;
  out.best = *best;
  return out;
}

SystoleReport check_systolic_inequality(const GradedAlgebra& A, const Lattice& L, const PoppMetric& P,
                                        const BoxConstants& B, int r) {
  if (B.dims != A.dims()) throw Error(ErrorKind::AlgebraMismatch, "constants computed for different dims");
  SystoleReport rep;
  rep.vol = covolume(A, L, P);
  rep.systole = systole_upper_bound(A, L, P, r);
  rep.rhs = B.C * std::pow(rep.vol, 1.0 / B.Q);
  rep.satisfied = rep.systole.best.upper <= rep.rhs;
  return rep;
}

namespace {

RVec parse_coords(const GradedAlgebra* A, const nlohmann::json& row) {
  if (!row.is_array()) throw Error(ErrorKind::Parse, "coordinates must be an array");
  std::vector<Rational> c;
  for (const auto& x : row) {
    if (x.is_string()) {
      c.push_back(parse_rational(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      c.emplace_back(x.get<long>());
    } else if (x.is_number_float()) {
      c.push_back(exact_from_double(x.get<double>()));
    } else {
      throw Error(ErrorKind::Parse, "bad coordinate " + x.dump());
    }
  }
  if (A) check_member(*A, c.size());
  return RVec(std::move(c));
}

}  // namespace

Lattice load_lattice(std::string_view json_text, const std::string& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("algebra") || !doc["algebra"].is_string())
    throw Error(ErrorKind::Parse, "lattice needs an algebra reference");
  Lattice L;
  L.algebra = doc["algebra"].get<std::string>();
  const GradedAlgebra A = lattice_algebra(L, base_dir);
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw Error(ErrorKind::Parse, "lattice needs generators");
  for (const auto& row : doc["generators"]) L.generators.push_back(parse_coords(&A, row));
  if (!doc.contains("malcev_basis") || !doc["malcev_basis"].is_array())
    throw Error(ErrorKind::Parse, "lattice needs malcev_basis");
  for (const auto& row : doc["malcev_basis"]) L.malcev_basis.push_back(parse_coords(&A, row));
  validate_lattice(A, L);
  return L;
}

Lattice load_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return load_lattice(buf.str(), dir.empty() ? "." : dir.string());
}

GradedAlgebra lattice_algebra(const Lattice& L, const std::string& base_dir) {
  if (looks_like_builtin(L.algebra)) return builtin_from_string(L.algebra);
  std::filesystem::path p(L.algebra);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  return load_algebra_file(p.string());
}

Lattice dilate_lattice(const GradedAlgebra& A, const Lattice& L, const Rational& t) {
  Lattice out = L;
  for (auto& g : out.generators) g = dilate(A, t, g);
  for (auto& b : out.malcev_basis) b = dilate(A, t, b);
  return out;
}

}  // namespace carnot
