#pragma once

#include "bicotwist/braiding.hpp"

namespace bicotwist {

// Right-A-linear map g : M (x)_A M -> A determined by its values
// g(i,j) = g(omega_i (x) omega_j) in A; gmap realizes it on the underlying
// space of M (x)_A M (column ((i*d+j)*n + a) holds g(i,j) * e_a).
struct Metric {
  std::shared_ptr<const Bimod> host;
  std::shared_ptr<const Bimod> square;
  std::shared_ptr<const Braiding> braiding;
  AMat g;
  Mat gmap;

  bool scalar_entries() const;
  Mat scalar_matrix() const;  // requires scalar_entries()
};

Metric make_metric(std::shared_ptr<const Bimod> host, std::shared_ptr<const Bimod> square,
                   std::shared_ptr<const Braiding> braiding, const AMat& g);
Metric make_metric(std::shared_ptr<const Bimod> host, std::shared_ptr<const Bimod> square,
                   std::shared_ptr<const Braiding> braiding, const Mat& scalar_g);

// V_g as a matrix: e -> (g(e (x) omega_j))_j, rows blocked (j, a).
Mat vg_matrix(const Metric& g);

// Right A-linearity (structural), g o sigma = g, and nondegeneracy
// (zero kernel of V_g on the full space), with witnesses.
std::vector<CheckResult> check_metric(const Metric& g);

// Evaluates BOTH the invariance identity and the covariance identity and
// requires them to agree (they are equivalent); returns the shared verdict.
bool check_left_invariant(const Metric& g);
bool check_right_invariant(const Metric& g);

// Scalar coefficients plus the coaction-matrix identity
// g_ij = sum_{kl} g_kl R_ki R_lj, exactly in A.
bool check_bi_invariant(const Metric& g);

// Inverse of the scalar coefficient matrix; throws Error("degenerate
// metric") when singular, requires scalar entries.
Mat metric_inverse(const Metric& g);

// Left A-linearity g(a.x) = a g(x) (right linearity is structural). The
// ev/coev duality only exists for bilinear metrics.
bool metric_left_linear(const Metric& g);

// Functionals omega*_i with omega*_i(omega_j) = delta_ij as right-A-linear
// maps M -> A (maps[i] sends x to the i-th right coefficient).
struct DualBasis {
  std::shared_ptr<const Bimod> host;
  std::vector<Mat> maps;  // each n x D
};
DualBasis dual_basis(const Bimod& m);
// e = sum_i omega_i . omega*_i(e) on every basis vector.
CheckResult dual_reconstruction(const Bimod& m);

// Snake identities for ev_g / coev_g plus bicovariance and bilinearity of
// both maps. Preconditions: nondegenerate, scalar coefficient matrix.
std::vector<CheckResult> ev_coev_check(const Metric& g);

// Two-forms as the quotient by Ker(sigma - 1); wedge maps onto a
// deterministic complement of the kernel.
struct TwoForms {
  Index invariant_dim = 0;  // dimension of Lambda^2 over the invariant basis
  Index full_dim = 0;       // dimension over the scalar field
  Mat kernel_basis;         // basis of Ker(sigma - 1) on M (x) M
  Mat wedge;                // (full_dim) x D2 projection-to-complement
};
TwoForms two_forms(const Braiding& b);

// h = sum_ij g_ij . (omega_i (x) omega_j); reports [wedge(h) = 0] and
// [g o sigma = g] (the two must agree for every right-linear g).
struct BeggsMajid {
  bool wedge_h_zero = false;
  bool symmetric = false;
  bool equivalent() const { return wedge_h_zero == symmetric; }
};
BeggsMajid beggs_majid_check(const Braiding& b, const AMat& g);

// Exact solution space of the bi-invariance constraints on scalar matrices
// (g o sigma = g together with the R-identity), plus the first nondegenerate
// small-integer combination in a deterministic candidate order. A seed, when
// given, deterministically permutes the candidate order.
struct BiinvariantSpace {
  std::vector<Mat> basis;  // d x d scalar matrices
  std::optional<Mat> nondegenerate;
  long candidates_tried = 0;
};
BiinvariantSpace enumerate_biinvariant(const Braiding& b,
                                       std::optional<unsigned long> seed = std::nullopt);

}  // namespace bicotwist
