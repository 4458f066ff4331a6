#pragma once

#include "bicotwist/metric.hpp"

namespace bicotwist {

// A 2-cocycle on A: unital, convolution-invertible functional on A (x) A
// satisfying gamma(a1 (x) b1) gamma(a2 b2 (x) c) = gamma(b1 (x) c1)
// gamma(a (x) b2 c2). gammabar is the convolution inverse.
struct Cocycle {
  std::shared_ptr<const HopfAlgebra> host;
  Mat gamma;
  Mat gammabar;

  Scalar eval(const Vec& a, const Vec& b) const;
  Scalar eval_bar(const Vec& a, const Vec& b) const;
};

// Exact checks: unitality, the cocycle identity (witness triple), existence
// of the convolution inverse, the inverse identity, unitality of the inverse.
std::vector<CheckResult> cocycle_checks(const HopfAlgebra& algebra, const Mat& gamma);

// Validates and packages a cocycle; throws Error ("not unital", "cocycle
// identity fails at (i,j,k)", "not convolution invertible", ...).
Cocycle make_cocycle(std::shared_ptr<const HopfAlgebra> algebra, const Mat& gamma);

// Same coalgebra, product a *_g b = gamma(a1 (x) b1) a2 b2 gammabar(a3 (x) b3),
// antipode recomputed by solving the antipode axiom (unique solution).
HopfAlgebra twist_algebra(const HopfAlgebra& a, const Cocycle& c);

// Same underlying space and coactions, twisted actions. `twisted` must be
// the algebra produced by twist_algebra.
Bimod twist_bimodule(const Bimod& m, const Cocycle& c,
                     std::shared_ptr<const HopfAlgebra> twisted);

bool is_bicovariant(const Bimod& m, const Bimod& n, const Mat& t);

// Deformation of a bicovariant map is the same linear map; refuses
// non-covariant input.
Mat twist_map(const Bimod& m, const Bimod& n, const Mat& t);

// Extracted Yetter-Drinfeld data regenerates the twisted module: the
// multiplication map a (x) v -> a * omega_v intertwines every structure map
// of build_bimodule(A_gamma, extracted) with those of m.
std::vector<CheckResult> check_yd_rebuild(const Bimod& m);

// The full deformation pipeline for one module and one cocycle.
struct TwistContext {
  std::shared_ptr<const HopfAlgebra> algebra;
  Cocycle cocycle;
  std::shared_ptr<const Bimod> m;
  std::shared_ptr<const Bimod> m2;  // M (x)_A M
  std::shared_ptr<const Braiding> sigma;

  std::shared_ptr<const HopfAlgebra> twisted_algebra;
  std::shared_ptr<const Bimod> mg;   // M_gamma
  std::shared_ptr<const Bimod> mg2;  // M_gamma (x)_{A_gamma} M_gamma
  std::shared_ptr<const Bimod> m2g;  // (M (x)_A M)_gamma

  Mat xi;      // mg2 coords -> m2g coords (same space as m2)
  Mat xi_inv;
};

TwistContext make_twist_context(std::shared_ptr<const Bimod> m, std::shared_ptr<const Bimod> m2,
                                std::shared_ptr<const Braiding> sigma, const Cocycle& c);

// Invertibility, A_gamma-bilinearity, bicovariance, agreement with the
// Sweedler formula on every basis column, and the invariant-pair law
// xi^{-1}(eta (x) omega) = eta (x)' omega.
std::vector<CheckResult> xi_checks(const TwistContext& ctx);

// xi^{-1} . sigma . xi with scalar coefficients extracted; Theorem: equals
// construct_braiding(twist_bimodule(M)).
Braiding sigma_twist(const TwistContext& ctx);

// Closed form (g_gamma)_ij = sum_kl g_kl gammabar(R_ki (x) R_lj) packaged as
// a metric on M_gamma. Precondition: g bi-invariant pseudo-Riemannian.
Metric metric_twist(const TwistContext& ctx, const Metric& g,
                    std::shared_ptr<const Braiding> twisted_sigma);

// Right A-module with two compatible coactions and no left action.
struct RightModule {
  std::shared_ptr<const HopfAlgebra> algebra;
  Index D = 0;
  std::vector<Mat> ract;
  Mat lco;  // (n*D) x D
  Mat rco;  // (D*n) x D
};

std::vector<CheckResult> verify_right_bicov_module(const RightModule& v);

// V_g(E) as the free right module on the dual basis, with coactions
//   Delta(omega*_i a) = (1 (x) omega*_i) Delta(a),
//   rco(omega*_i a)   = sum_j (omega*_j (x) S(R_ij)) Delta(a).
RightModule vg_module_structure(const Metric& g);

// V_g in free-module coordinates (j,a): omega_i . a -> sum_j omega*_j (g_ij a).
Mat vg_free_matrix(const Metric& g);

// Module axioms, bicovariance of V_g (both displayed equations) and the
// supporting identity sum_j g_ij S(R_jm) = sum_j g_jm R_ji.
std::vector<CheckResult> vg_module_checks(const Metric& g);

RightModule twist_right_module(const RightModule& v, const Cocycle& c,
                               std::shared_ptr<const HopfAlgebra> twisted);

// (V_g)_gamma = V_{g_gamma}: the twisted evaluation of V_g against E_gamma
// computes g_gamma, as matrices on the underlying spaces.
std::vector<CheckResult> vg_twist_remark_checks(const TwistContext& ctx, const Metric& g,
                                                const Metric& g_twisted);

// Round trips: gammabar is a cocycle on A_gamma, double twist restores the
// algebra, the module, the braiding and the metric exactly; solution-space
// dimensions match and metric_twist maps a basis to a basis.
std::vector<CheckResult> untwist_roundtrip_checks(const TwistContext& ctx, const Metric& g,
                                                  const Metric& g_twisted);

}  // namespace bicotwist
