#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bicotwist/linalg.hpp"

namespace bicotwist {

// Outcome of one named verification step. `pass` is exact; `witness` carries
// a counterexample (basis indices/labels) or an informational value.
struct CheckResult {
  std::string id;
  bool pass = true;
  std::string witness;
};

bool all_pass(const std::vector<CheckResult>& checks);

Vec basis_vec(Index n, Index i);

// A finite-dimensional Hopf algebra as verified structure tensors over
// Q(zeta_N). Basis e_0..e_{n-1}; mult(i,j,k) is the e_k coefficient of
// e_i e_j; comult(i,j,k) the e_j (x) e_k coefficient of Delta(e_i);
// antipode(i,j) the e_i coefficient of S(e_j).
struct HopfAlgebra {
  long scalar_order = 1;
  Index n = 0;
  std::vector<std::string> labels;
  Tensor3 mult;
  Vec unit;
  Tensor3 comult;
  Vec counit;
  Mat antipode;

  // Sparse comultiplication legs, built by finalize().
  struct Leg2 {
    Index p, q;
    Scalar v;
  };
  struct Leg3 {
    Index p, q, r;
    Scalar v;
  };
  std::vector<std::vector<Leg2>> comult_nz;   // Delta(e_i)
  std::vector<std::vector<Leg3>> comult2_nz;  // (Delta (x) id)Delta(e_i)

  void finalize();  // shape checks + sparse legs; throws Error on bad shapes

  Vec product(const Vec& x, const Vec& y) const;
  Mat left_mult(const Vec& a) const;   // matrix of x -> a x
  Mat right_mult(const Vec& a) const;  // matrix of x -> x a
  Scalar counit_of(const Vec& x) const;
  Vec antipode_of(const Vec& x) const;
  Vec one() const { return unit; }
  std::string label(Index i) const;
  std::string element_str(const Vec& x) const;

  bool is_commutative() const;
  bool is_cocommutative() const;
};

// The seven Hopf axiom checks, each exact, with counterexample witnesses.
std::vector<CheckResult> verify_hopf(const HopfAlgebra& algebra);

// Multiplication-table validation for group constructors.
struct GroupTable {
  std::vector<std::vector<int>> table;
  std::vector<std::string> labels;
  int identity = -1;
  std::vector<int> inverse;
};
// Throws Error naming the failed axiom ("identity", "associativity fails at
// (i,j,k)", "inverse missing for g", ...).
GroupTable validate_group_table(const std::vector<std::vector<int>>& table,
                                const std::vector<std::string>& labels);

HopfAlgebra group_algebra(const std::vector<std::vector<int>>& table,
                          const std::vector<std::string>& labels, long scalar_order);
HopfAlgebra function_algebra(const std::vector<std::vector<int>>& table,
                             const std::vector<std::string>& labels, long scalar_order);

// Scalar-valued bilinear functional on A (x) A: values(i,j) = f(e_i (x) e_j).
struct Functional2 {
  std::shared_ptr<const HopfAlgebra> host;
  Mat values;

  Scalar eval(const Vec& a, const Vec& b) const;
};

Functional2 convolution_unit(std::shared_ptr<const HopfAlgebra> algebra);
Functional2 convolution(const Functional2& f, const Functional2& g);
// Solves f * x = eps(x)eps = x * f exactly; throws Error("not convolution
// invertible") when the linear system is inconsistent.
Functional2 convolution_inverse(const Functional2& f);

}  // namespace bicotwist
