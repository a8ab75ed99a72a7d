#pragma once

// Stratified nilpotent Lie algebras given by rational structure constants,
// and vectors in graded coordinates (which double as group elements in
// exponential coordinates of the first kind).

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carnot/error.hpp"
#include "carnot/rational.hpp"
#include "carnot/scalar.hpp"

namespace carnot {

struct BracketTerm {
  int out;  // global basis index
  Rational coeff;
  double coeff_d;
};

// Structure constants of [e_a, e_b] for global indices a < b.
struct BracketPair {
  int a;
  int b;
  std::vector<BracketTerm> terms;
};

class GradedAlgebra {
 public:
  GradedAlgebra(std::string name, std::vector<int> dims, std::vector<BracketPair> pairs);

  const std::string& name() const { return name_; }
  int step() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return total_; }
  // Layers are numbered from 1.
  int dim(int layer) const;
  int offset(int layer) const;
  int layer_of(int index) const { return layer_of_[index]; }
  const std::vector<BracketPair>& pairs() const { return pairs_; }

  // Signed structure constants of [e_a, e_b] for any a, b.
  std::vector<BracketTerm> basis_bracket(int a, int b) const;

  int hausdorff_dimension() const;

  friend bool operator==(const GradedAlgebra& x, const GradedAlgebra& y);

 private:
  std::string name_;
  std::vector<int> dims_;
  std::vector<int> offsets_;
  std::vector<int> layer_of_;
  int total_ = 0;
  std::vector<BracketPair> pairs_;
  std::vector<int> pair_index_;  // total_ * total_, -1 when the bracket vanishes
};

template <class S>
class GVec {
 public:
  GVec() = default;
  explicit GVec(std::size_t n) : c_(n, S(0)) {}
  explicit GVec(std::vector<S> c) : c_(std::move(c)) {}

  std::size_t size() const { return c_.size(); }
  S& operator[](std::size_t i) { return c_[i]; }
  const S& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<S>& coords() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!ScalarOps<S>::is_zero(x)) return false;
    return true;
  }

  GVec& operator+=(const GVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  GVec& operator-=(const GVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  GVec& operator*=(const S& t) {
    for (auto& x : c_) x *= t;
    return *this;
  }
  friend GVec operator+(GVec a, const GVec& b) { return a += b; }
  friend GVec operator-(GVec a, const GVec& b) { return a -= b; }
  friend GVec operator*(const S& t, GVec a) { return a *= t; }
  GVec operator-() const {
    GVec out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
  }
  friend bool operator==(const GVec& a, const GVec& b) { return a.c_ == b.c_; }

 private:
  void check_same(const GVec& o) const {
    if (o.c_.size() != c_.size()) throw Error(ErrorKind::AlgebraMismatch, "vector sizes differ");
  }

  std::vector<S> c_;
};

using RVec = GVec<Rational>;
using XVec = GVec<Radical>;
using DVec = GVec<double>;

template <class T, class S>
GVec<T> convert(const GVec<S>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& x : v.coords()) {
    if constexpr (std::is_same_v<T, double>) {
      out.push_back(ScalarOps<S>::to_double(x));
    } else {
      out.push_back(T(x));
    }
  }
  return GVec<T>(std::move(out));
}

// Lifts a rational vector into a radical field.
XVec to_radical(const RVec& v, const std::shared_ptr<RadicalField>& field);

inline void check_member(const GradedAlgebra& A, std::size_t n) {
  if (static_cast<int>(n) != A.dim())
    throw Error(ErrorKind::AlgebraMismatch,
                "vector of size " + std::to_string(n) + " used with " + A.name() + " of dimension " +
                    std::to_string(A.dim()));
}

template <class S>
GVec<S> zero_vec(const GradedAlgebra& A) {
  return GVec<S>(static_cast<std::size_t>(A.dim()));
}

template <class S>
GVec<S> basis_vec(const GradedAlgebra& A, int index) {
  GVec<S> v = zero_vec<S>(A);
  v[index] = S(1);
  return v;
}

template <class S>
GVec<S> bracket(const GradedAlgebra& A, const GVec<S>& u, const GVec<S>& v) {
  check_member(A, u.size());
  check_member(A, v.size());
  GVec<S> out = zero_vec<S>(A);
  for (const auto& p : A.pairs()) {
    const bool ua = !ScalarOps<S>::is_zero(u[p.a]);
    const bool ub = !ScalarOps<S>::is_zero(u[p.b]);
    const bool va = !ScalarOps<S>::is_zero(v[p.a]);
    const bool vb = !ScalarOps<S>::is_zero(v[p.b]);
    if (!((ua && vb) || (ub && va))) continue;
    S w(0);
    if (ua && vb) w = u[p.a] * v[p.b];
    if (ub && va) w -= u[p.b] * v[p.a];
    if (ScalarOps<S>::is_zero(w)) continue;
    for (const auto& t : p.terms) out[t.out] += w * ScalarOps<S>::coeff(t.coeff, t.coeff_d);
  }
  return out;
}

// Right-nested [u_1, [u_2, [..., u_j]]]; zero when j exceeds the step.
template <class S>
GVec<S> iterated_bracket(const GradedAlgebra& A, std::span<const GVec<S>> us) {
  if (us.empty()) throw Error(ErrorKind::ArityTooSmall, "iterated bracket of no vectors");
  for (const auto& u : us) check_member(A, u.size());
  if (static_cast<int>(us.size()) > A.step()) return zero_vec<S>(A);
  GVec<S> acc = us.back();
  for (std::size_t i = us.size() - 1; i-- > 0;) {
    if (acc.is_zero()) break;
    acc = bracket(A, us[i], acc);
  }
  return acc;
}

template <class S>
GVec<S> iterated_bracket(const GradedAlgebra& A, const std::vector<GVec<S>>& us) {
  return iterated_bracket(A, std::span<const GVec<S>>(us));
}

// delta_t: layer j scaled by t^j.
template <class S>
GVec<S> dilate(const GradedAlgebra& A, const S& t, const GVec<S>& v) {
  check_member(A, v.size());
  if (!(t > 0)) throw Error(ErrorKind::NonpositiveScale, "dilation factor must be positive");
  GVec<S> out = v;
  S factor = t;
  for (int l = 1; l <= A.step(); ++l) {
    for (int i = A.offset(l); i < A.offset(l) + A.dim(l); ++i) out[i] *= factor;
    factor *= t;
  }
  return out;
}

template <class S>
std::vector<S> project_layer(const GradedAlgebra& A, const GVec<S>& v, int layer) {
  check_member(A, v.size());
  if (layer < 1 || layer > A.step())
    throw Error(ErrorKind::LayerOutOfRange, "layer " + std::to_string(layer) + " of step-" +
                                                std::to_string(A.step()) + " algebra");
  const auto first = v.coords().begin() + A.offset(layer);
  return std::vector<S>(first, first + A.dim(layer));
}

template <class S>
GVec<S> inject_layer(const GradedAlgebra& A, std::span<const S> block, int layer) {
  if (layer < 1 || layer > A.step()) throw Error(ErrorKind::LayerOutOfRange, "layer " + std::to_string(layer));
  if (static_cast<int>(block.size()) != A.dim(layer))
    throw Error(ErrorKind::AlgebraMismatch, "layer block has wrong size");
  GVec<S> out = zero_vec<S>(A);
  for (std::size_t i = 0; i < block.size(); ++i) out[A.offset(layer) + i] = block[i];
  return out;
}

template <class S>
GVec<S> inject_layer(const GradedAlgebra& A, const std::vector<S>& block, int layer) {
  return inject_layer(A, std::span<const S>(block), layer);
}

template <class S>
bool is_horizontal(const GradedAlgebra& A, const GVec<S>& v) {
  for (int i = A.dim(1); i < A.dim(); ++i)
    if (!ScalarOps<S>::is_zero(v[i])) return false;
  return true;
}

// Validation steps in reporting order (antisymmetry is enforced while parsing).
void check_grading(const GradedAlgebra& A);
void check_jacobi(const GradedAlgebra& A);
void check_bracket_generating(const GradedAlgebra& A);
void validate(const GradedAlgebra& A);

// Algebra document (JSON). Throws ParseError / AntisymmetryViolation /
// GradingViolation / JacobiViolation / NotBracketGenerating.
GradedAlgebra load_algebra(std::string_view json_text);
GradedAlgebra load_algebra_file(const std::string& path);
std::string algebra_to_json(const GradedAlgebra& A);

// heisenberg(n), engel, free_nilpotent(d1, k), abelian(d).
GradedAlgebra builtin_family(std::string_view name, const std::vector<int>& params);
// Accepts "heisenberg", "heisenberg(2)", "engel", "free_nilpotent(2,3)", ...
GradedAlgebra builtin_from_string(std::string_view text);
bool looks_like_builtin(std::string_view text);
// Builtin name or path to an algebra document.
GradedAlgebra resolve_algebra(std::string_view text);

}  // namespace carnot
