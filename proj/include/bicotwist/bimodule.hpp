#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bicotwist/hopf.hpp"

namespace bicotwist {

// Right-right Yetter-Drinfeld data over a Hopf algebra.
//   action(a,i,j):   v_i <| e_a = sum_j action(a,i,j) v_j
//   coaction(i,j,a): rho(v_i)   = sum_{j,a} coaction(i,j,a) v_j (x) e_a
struct YDModule {
  std::shared_ptr<const HopfAlgebra> host;
  Index dim = 0;
  Tensor3 action;
  Tensor3 coaction;
};

// Coaction axioms, action axioms and the Yetter-Drinfeld compatibility
//   rho(v <| a) = v_(0) <| a_(2)  (x)  S(a_(1)) v_(1) a_(3),
// each exact with a witness pair on failure.
std::vector<CheckResult> verify_yd(const YDModule& yd);

// Matrix with entries in the algebra (each entry a coefficient vector).
struct AMat {
  Index rows = 0, cols = 0;
  std::vector<Vec> entries;  // row-major

  AMat() = default;
  AMat(Index r, Index c, Index n)
      : rows(r), cols(c), entries(static_cast<std::size_t>(r * c), Vec::Zero(n)) {}
  Vec& at(Index r, Index c) { return entries[r * cols + c]; }
  const Vec& at(Index r, Index c) const { return entries[r * cols + c]; }
};

// A bicovariant bimodule with all structure maps materialized as exact
// matrices on the underlying space (dimension D over the scalar field):
//   lact[b], ract[b] : action of the basis element e_b,
//   lco : D -> (n*D), row a*D+m,  Delta_M(x) = sum e_a (x) m
//   rco : D -> (D*n), row m*n+a,  x -> sum m (x) e_a
// omega holds a basis of the left-invariant subspace as columns; derive()
// computes the coaction matrix R, the right-invariant basis eta and the
// free-module isomorphisms used for normal forms.
struct Bimod {
  std::shared_ptr<const HopfAlgebra> algebra;
  Index D = 0;
  std::vector<Mat> lact, ract;
  Mat lco, rco;
  Mat omega;

  // derived
  Index d = 0;
  AMat R;      // rco(omega_i) = sum_j omega_j (x) R(j,i)
  Mat eta;     // eta_k = sum_j omega_j . S(R(j,k))
  Mat phi_r, phi_r_inv;  // (i,a) -> omega_i . e_a and its inverse
  Mat phi_l, phi_l_inv;  // (i,a) -> e_a . omega_i

  void derive();

  Vec left_mult_alg(const Vec& a, const Vec& x) const;
  Vec right_mult_alg(const Vec& x, const Vec& a) const;

  // Unique right coefficients: x = sum_i omega_i . c_i.
  std::vector<Vec> normal_form(const Vec& x) const;
  // Unique left coefficients: x = sum_i b_i . omega_i.
  std::vector<Vec> left_coeffs(const Vec& x) const;
  Vec from_normal_form(const std::vector<Vec>& coeffs) const;

  // Coordinates of a vector known to lie in span(omega).
  Vec invariant_coords(const Vec& z) const;

  struct TwoSidedLeg {
    Index p, m, q;
    Scalar v;
  };
  // Legs of (id (x) rco) lco per basis column: x -> sum e_p (x) m (x) e_q.
  std::vector<std::vector<TwoSidedLeg>> two_sided_legs() const;
};

// Standard model A (x) V of the bimodule generated by Yetter-Drinfeld data,
// coordinates (a,i) -> e_a (x) v_i, omega_i = 1 (x) v_i. Throws Error with a
// witness when the YD axioms fail.
Bimod build_bimodule(std::shared_ptr<const HopfAlgebra> algebra, const YDModule& yd);

// A as a bicovariant bimodule over itself (both coactions Delta).
Bimod regular_bimodule(std::shared_ptr<const HopfAlgebra> algebra);

// M (x)_A N in right-coefficient coordinates (alpha,beta,a) ->
// (omega^M_alpha (x) omega^N_beta) . e_a.
Bimod tensor_bimodule(const Bimod& m, const Bimod& n);

// Embeds a pure tensor x (x) y into the coordinates of tensor_bimodule(M,N).
Vec pure_tensor(const Bimod& m, const Bimod& n, const Vec& x, const Vec& y);

// Exact comodule/covariance/compatibility checks plus the R-matrix
// identities; all fixtures must pass, corrupted structures report witnesses.
std::vector<CheckResult> verify_bicovariance(const Bimod& m);

enum class Covariance { Left, Right, Bi };

// Covariance (and optional A-linearity) of a linear map T : M -> N given as
// a matrix between underlying spaces.
std::vector<CheckResult> check_covariant_map(const Bimod& m, const Bimod& n, const Mat& t,
                                             Covariance which, bool check_left_linear = false,
                                             bool check_right_linear = false);

// Right adjoint action and R-coaction restricted to the invariant basis;
// rebuilding from this data must reproduce the module (Schauenburg
// equivalence, verified instance-wise).
YDModule extract_yd(const Bimod& m);

// Returns eps(a).1 == a ? eps(a) : nullopt.
std::optional<Scalar> scalar_of(const HopfAlgebra& algebra, const Vec& a);

}  // namespace bicotwist
