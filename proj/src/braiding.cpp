#include "bicotwist/braiding.hpp"

namespace bicotwist {

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

}  // namespace

Braiding construct_braiding(std::shared_ptr<const Bimod> m, std::shared_ptr<const Bimod> square) {
  const Bimod& mm = *m;
  const Bimod& m2 = *square;
  const HopfAlgebra& a = *mm.algebra;
  const Index d = mm.d, n = a.n;

  Braiding b;
  b.host = m;
  b.square = square;
  b.coeffs = Mat::Zero(d * d, d * d);

  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      // sigma(omega_i (x) omega_j) = sum_k eta_k (x) (omega_i . R_{kj}).
      Vec image = Vec::Zero(m2.D);
      for (Index k = 0; k < d; ++k) {
        Vec x = mm.right_mult_alg(mm.omega.col(i), mm.R.at(k, j));
        image += pure_tensor(mm, mm, mm.eta.col(k), x);
      }
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          Vec coef = image.segment((k * d + l) * n, n);
          auto s = scalar_of(a, coef);
          if (!s)
            throw Error("braiding coefficient sigma(" + std::to_string(k) + "," +
                        std::to_string(l) + ";" + std::to_string(i) + "," + std::to_string(j) +
                        ") is not scalar: " + a.element_str(coef));
          b.coeffs(k * d + l, i * d + j) = *s;
        }
    }

  b.full = Mat::Zero(m2.D, m2.D);
  for (Index ij = 0; ij < d * d; ++ij)
    for (Index kl = 0; kl < d * d; ++kl) {
      const Scalar& v = b.coeffs(kl, ij);
      if (v.is_zero()) continue;
      for (Index av = 0; av < n; ++av) b.full(kl * n + av, ij * n + av) = v;
    }
  return b;
}

std::vector<CheckResult> verify_braiding(const Braiding& b) {
  std::vector<CheckResult> out;
  const Bimod& m = *b.host;
  const Bimod& m2 = *b.square;
  const Index d = m.d;

  CheckResult flip{"braiding.defining_flip"};
  for (Index i = 0; i < d && flip.pass; ++i)
    for (Index k = 0; k < d; ++k) {
      Vec lhs = b.full * pure_tensor(m, m, m.omega.col(i), m.eta.col(k));
      Vec rhs = pure_tensor(m, m, m.eta.col(k), m.omega.col(i));
      if (!is_zero(Vec(lhs - rhs))) {
        flip.pass = false;
        flip.witness = "(omega_" + std::to_string(i) + ", eta_" + std::to_string(k) + ")";
        break;
      }
    }
  out.push_back(flip);

  CheckResult lin{"braiding.bimodule_map"};
  for (Index av = 0; av < m.algebra->n; ++av) {
    if (!is_zero(Mat(b.full * m2.lact[av] - m2.lact[av] * b.full))) {
      lin.pass = false;
      lin.witness = "left action of " + m.algebra->label(av);
      break;
    }
    if (!is_zero(Mat(b.full * m2.ract[av] - m2.ract[av] * b.full))) {
      lin.pass = false;
      lin.witness = "right action of " + m.algebra->label(av);
      break;
    }
  }
  out.push_back(lin);

  CheckResult cov{"braiding.bicovariant"};
  for (const auto& c : check_covariant_map(m2, m2, b.full, Covariance::Bi))
    if (!c.pass) {
      cov.pass = false;
      cov.witness = c.id + " " + c.witness;
      break;
    }
  out.push_back(cov);

  CheckResult invertible{"braiding.invertible"};
  if (rank(b.coeffs) != d * d) {
    invertible.pass = false;
    invertible.witness = "rank " + std::to_string(rank(b.coeffs));
  }
  out.push_back(invertible);

  CheckResult braid{"braiding.braid_equation"};
  {
    Mat id_d = Mat::Identity(d, d);
    Mat b12 = kron(b.coeffs, id_d);
    Mat b23 = kron(id_d, b.coeffs);
    if (!is_zero(Mat(b23 * b12 * b23 - b12 * b23 * b12))) {
      braid.pass = false;
      braid.witness = "on the invariant basis of M (x) M (x) M";
    }
  }
  out.push_back(braid);

  CheckResult unique{"braiding.uniqueness"};
  {
    BraidingSolve s = solve_braiding_defining_system(m, m2);
    if (!s.consistent) {
      unique.pass = false;
      unique.witness = "defining system inconsistent";
    } else if (s.kernel_dim != 0) {
      unique.pass = false;
      unique.witness = "solution space dimension " + std::to_string(s.kernel_dim);
    } else if (!is_zero(Mat(s.full - b.full))) {
      unique.pass = false;
      unique.witness = "independent solve disagrees with construction";
    }
  }
  out.push_back(unique);

  return out;
}

Vec apply_braiding(const Braiding& b, const Vec& x) {
  if (x.size() != b.full.cols()) throw Error("apply_braiding: element not in host tensor square");
  return b.full * x;
}

bool braiding_squared_is_identity(const Braiding& b) {
  return is_zero(Mat(b.coeffs * b.coeffs - Mat::Identity(b.coeffs.rows(), b.coeffs.cols())));
}

BraidingSolve solve_braiding_defining_system(const Bimod& m, const Bimod& m2) {
  const Index d = m.d, n = m.algebra->n, d2 = m2.D;
  BraidingSolve out;
  out.full = Mat::Zero(d2, d2);
  out.consistent = true;
  out.kernel_dim = 0;

  // tau is right-A-linear with unknown images X_(i,l) of omega_i (x) omega_l;
  // the constraints tau(omega_i (x) eta_k) = eta_k (x) omega_i couple only
  // images sharing the first index, so solve one block per i.
  for (Index i = 0; i < d; ++i) {
    Mat sys = Mat::Zero(d * d2, d * d2);
    Mat rhs = Mat::Zero(d * d2, 1);
    for (Index k = 0; k < d; ++k) {
      Vec z = pure_tensor(m, m, m.omega.col(i), m.eta.col(k));
      Vec target = pure_tensor(m, m, m.eta.col(k), m.omega.col(i));
      for (Index l = 0; l < d; ++l)
        for (Index av = 0; av < n; ++av) {
          const Scalar& w = z((i * d + l) * n + av);
          if (w.is_zero()) continue;
          // tau((omega_i (x) omega_l) . e_av) = ract[av] X_(i,l).
          for (Index row = 0; row < d2; ++row)
            for (Index colm = 0; colm < d2; ++colm) {
              const Scalar& r = m2.ract[av](row, colm);
              if (!r.is_zero()) sys(k * d2 + row, l * d2 + colm) += w * r;
            }
        }
      rhs.block(k * d2, 0, d2, 1) = target;
    }
    SolveResult s = solve(sys, rhs);
    if (!s.exists) {
      out.consistent = false;
      return out;
    }
    out.kernel_dim += kernel(sys).cols();
    // Assemble the full map columns for this block.
    for (Index l = 0; l < d; ++l) {
      Vec x = s.solution.block(l * d2, 0, d2, 1);
      for (Index av = 0; av < n; ++av) out.full.col((i * d + l) * n + av) = m2.ract[av] * x;
    }
  }
  return out;
}

}  // namespace bicotwist
