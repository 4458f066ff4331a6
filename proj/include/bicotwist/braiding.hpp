#pragma once

#include "bicotwist/bimodule.hpp"

namespace bicotwist {

// Woronowicz's braiding on M (x)_A M, determined by flipping left-invariant
// against right-invariant elements. coeffs is the scalar matrix
// B[(k*d+l)][(i*d+j)] with sigma(omega_i (x) omega_j) = sum B ... omega_k (x)
// omega_l; full realizes sigma on the underlying space of M (x)_A M.
struct Braiding {
  std::shared_ptr<const Bimod> host;    // M
  std::shared_ptr<const Bimod> square;  // M (x)_A M
  Mat coeffs;
  Mat full;
};

// Builds sigma by expanding omega_j through the eta basis and normal-forming
// sigma(omega_i (x) omega_j) = sum_k eta_k (x) omega_i . R_{kj}. Throws Error
// if any resulting coefficient fails to be scalar (internal inconsistency).
Braiding construct_braiding(std::shared_ptr<const Bimod> m, std::shared_ptr<const Bimod> square);

// Defining flip on all (omega_i, eta_k) pairs, bimodule-map property,
// bicovariance, invertibility, braid equation, and the uniqueness
// solution-space dimension (must be 0).
std::vector<CheckResult> verify_braiding(const Braiding& b);

Vec apply_braiding(const Braiding& b, const Vec& x);

bool braiding_squared_is_identity(const Braiding& b);

// Independent oracle: solves the linear system "right-A-linear map tau with
// tau(omega_i (x) eta_k) = eta_k (x) omega_i" from scratch and reports the
// homogeneous solution-space dimension. The i-indexed blocks decouple, so the
// solve runs per block.
struct BraidingSolve {
  bool consistent = false;
  Index kernel_dim = 0;
  Mat full;  // the solved map on M (x)_A M (valid when consistent)
};
BraidingSolve solve_braiding_defining_system(const Bimod& m, const Bimod& square);

}  // namespace bicotwist
