#pragma once

#include <Eigen/Core>

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bicotwist/cyclotomic.hpp"

namespace Eigen {

template <>
struct NumTraits<bicotwist::Cyclotomic> {
  using Real = bicotwist::Cyclotomic;
  using NonInteger = bicotwist::Cyclotomic;
  using Literal = bicotwist::Cyclotomic;
  using Nested = bicotwist::Cyclotomic;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 128
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace bicotwist {

using Scalar = Cyclotomic;
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

bool is_zero(const Mat& m);
bool is_zero(const Vec& v);

// Exact reduced row echelon form with deterministic pivoting (first nonzero
// entry in column order), so all derived bases are reproducible.
struct Rref {
  Mat mat;
  std::vector<Index> pivot_cols;
};
Rref row_reduce(Mat m);

Index rank(const Mat& m);

// Basis of the null space as columns (free variables in column order, each
// normalized with a 1 in its free coordinate). Empty (n x 0) when injective.
Mat kernel(const Mat& m);

struct SolveResult {
  bool exists = false;
  Mat solution;  // one exact solution; only valid when exists
};
// Solves A x = b exactly (b may have several columns); verifies the witness
// A*x == b before returning exists = true, reports inconsistency otherwise.
SolveResult solve(const Mat& a, const Mat& b);

std::optional<Mat> inverse(const Mat& m);

// Dense order-3 tensor of exact scalars, shape-checked.
struct Tensor3 {
  Index d0 = 0, d1 = 0, d2 = 0;
  std::vector<Scalar> a;

  Tensor3() = default;
  Tensor3(Index n0, Index n1, Index n2)
      : d0(n0), d1(n1), d2(n2), a(static_cast<std::size_t>(n0 * n1 * n2), Scalar(0)) {}

  Scalar& operator()(Index i, Index j, Index k) { return a[(i * d1 + j) * d2 + k]; }
  const Scalar& operator()(Index i, Index j, Index k) const { return a[(i * d1 + j) * d2 + k]; }
};

// General dense tensor used by einsum results.
struct Tensor {
  std::vector<Index> dims;
  std::vector<Scalar> a;

  Index size() const;
  Scalar& at(const std::vector<Index>& idx);
  const Scalar& at(const std::vector<Index>& idx) const;
  Mat as_matrix() const;    // requires rank 2
  Tensor3 as_tensor3() const;  // requires rank 3
};

struct TensorArg {
  std::vector<Index> dims;
  const Scalar* data;  // row-major
  std::shared_ptr<std::vector<Scalar>> owned;  // backing store for staged copies

  TensorArg(const Mat& m);
  TensorArg(const Tensor3& t);
  TensorArg(const Tensor& t);
  TensorArg(const Vec& v);
};

// Exact Einstein-style contraction, e.g. einsum("ij,jk->ik", {A, B}).
// Index letters appearing in several operands are matched by dimension and
// summed unless they appear in the output. Errors on dangling output indices
// or dimension mismatches.
Tensor einsum(const std::string& spec, const std::vector<TensorArg>& args);

}  // namespace bicotwist
