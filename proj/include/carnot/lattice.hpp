#pragma once

// Lattices given by generator logs and a filtration-adapted Malcev basis;
// covolume, word-ball enumeration and systole bounds.

#include <string>
#include <string_view>
#include <vector>

#include "carnot/certificates.hpp"
#include "carnot/path.hpp"

namespace carnot {

struct Lattice {
  std::string algebra;  // builtin name or path, as given
  std::vector<RVec> generators;
  std::vector<RVec> malcev_basis;
};

// Rank and filtration checks; throws SingularBasis / NotFiltrationAdapted.
void validate_lattice(const GradedAlgebra& A, const Lattice& L);

double covolume(const GradedAlgebra& A, const Lattice& L, const PoppMetric& P);

struct LatticeElement {
  RVec log;
  std::vector<int> word;  // +-(i+1) for generator i and its inverse
};

inline constexpr std::size_t kDefaultBallCap = 1000000;

// Nontrivial products of at most r generators and inverses, deduplicated, in
// breadth-first order.
std::vector<LatticeElement> enumerate_ball(const GradedAlgebra& A, const Lattice& L, int r,
                                           std::size_t cap = kDefaultBallCap);

struct ElementBound {
  LatticeElement element;
  double lower = 0.0;
  double upper = 0.0;
};

struct SystoleBound {
  ElementBound best;
  std::vector<ElementBound> all;
};

SystoleBound systole_upper_bound(const GradedAlgebra& A, const Lattice& L, const PoppMetric& P, int r);

struct SystoleReport {
  SystoleBound systole;
  double vol = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

SystoleReport check_systolic_inequality(const GradedAlgebra& A, const Lattice& L, const PoppMetric& P,
                                        const BoxConstants& B, int r);

// {"algebra": ..., "generators": [[...]], "malcev_basis": [[...]]}
Lattice load_lattice(std::string_view json_text, const std::string& base_dir = ".");
Lattice load_lattice_file(const std::string& path);
// Resolves the lattice's algebra reference relative to base_dir.
GradedAlgebra lattice_algebra(const Lattice& L, const std::string& base_dir = ".");

// Image of the lattice under the dilation by t.
Lattice dilate_lattice(const GradedAlgebra& A, const Lattice& L, const Rational& t);

}  // namespace carnot
