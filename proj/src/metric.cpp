#include "bicotwist/metric.hpp"

#include <algorithm>
#include <random>

namespace bicotwist {

bool Metric::scalar_entries() const {
  for (const auto& e : g.entries)
    if (!scalar_of(*host->algebra, e)) return false;
  return true;
}

Mat Metric::scalar_matrix() const {
  Mat out(g.rows, g.cols);
  for (Index i = 0; i < g.rows; ++i)
    for (Index j = 0; j < g.cols; ++j) {
      auto s = scalar_of(*host->algebra, g.at(i, j));
      if (!s) throw Error("metric coefficient matrix is not scalar");
      out(i, j) = *s;
    }
  return out;
}

Metric make_metric(std::shared_ptr<const Bimod> host, std::shared_ptr<const Bimod> square,
                   std::shared_ptr<const Braiding> braiding, const AMat& g) {
  const HopfAlgebra& a = *host->algebra;
  const Index d = host->d, n = a.n;
  if (g.rows != d || g.cols != d) throw Error("metric: coefficient matrix shape mismatch");
  Metric m;
  m.host = host;
  m.square = square;
  m.braiding = braiding;
  m.g = g;
  m.gmap = Mat::Zero(n, square->D);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index av = 0; av < n; ++av)
        m.gmap.col((i * d + j) * n + av) = a.product(g.at(i, j), basis_vec(n, av));
  return m;
}

Metric make_metric(std::shared_ptr<const Bimod> host, std::shared_ptr<const Bimod> square,
                   std::shared_ptr<const Braiding> braiding, const Mat& scalar_g) {
  const Index d = host->d, n = host->algebra->n;
  AMat g(d, d, n);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g.at(i, j) = scalar_g(i, j) * host->algebra->unit;
  return make_metric(host, square, braiding, g);
}

Mat vg_matrix(const Metric& g) {
  const Bimod& m = *g.host;
  const Index n = m.algebra->n, d = m.d;
  Mat out = Mat::Zero(d * n, m.D);
  for (Index x = 0; x < m.D; ++x)
    for (Index j = 0; j < d; ++j) {
      Vec value = g.gmap * pure_tensor(m, m, basis_vec(m.D, x), m.omega.col(j));
      out.block(j * n, x, n, 1) = value;
    }
  return out;
}

std::vector<CheckResult> check_metric(const Metric& g) {
  std::vector<CheckResult> out;
  const Bimod& m2 = *g.square;
  const HopfAlgebra& a = *g.host->algebra;

  CheckResult rl{"metric.right_linear"};
  for (Index b = 0; b < a.n; ++b) {
    Mat lhs = g.gmap * m2.ract[b];
    Mat rhs = a.right_mult(basis_vec(a.n, b)) * g.gmap;
    if (!is_zero(Mat(lhs - rhs))) {
      rl.pass = false;
      rl.witness = a.label(b);
      break;
    }
  }
  out.push_back(rl);

  CheckResult sym{"metric.symmetric"};
  if (!is_zero(Mat(g.gmap * g.braiding->full - g.gmap))) {
    sym.pass = false;
    Mat diff = g.gmap * g.braiding->full - g.gmap;
    for (Index c = 0; c < diff.cols() && sym.witness.empty(); ++c)
      if (!is_zero(Vec(diff.col(c)))) sym.witness = "basis #" + std::to_string(c);
  }
  out.push_back(sym);

  CheckResult nd{"metric.nondegenerate"};
  {
    Mat ker = kernel(vg_matrix(g));
    if (ker.cols() != 0) {
      nd.pass = false;
      // Describe the witness through its right coefficients.
      std::string desc;
      auto coeffs = g.host->normal_form(Vec(ker.col(0)));
      for (Index i = 0; i < g.host->d; ++i) {
        if (is_zero(coeffs[i])) continue;
        if (!desc.empty()) desc += " + ";
        desc += "omega_" + std::to_string(i) + ".(" + a.element_str(coeffs[i]) + ")";
      }
      nd.witness = desc;
    }
  }
  out.push_back(nd);

  return out;
}

namespace {

// Def-based left invariance: (id (x) eps g)(Delta_{M(x)M}(x)) = g(x).
bool left_invariant_def(const Metric& g) {
  const Bimod& m2 = *g.square;
  const HopfAlgebra& a = *g.host->algebra;
  const Index n = a.n;
  for (Index x = 0; x < m2.D; ++x) {
    Vec y = m2.lco.col(x);
    Vec lhs = Vec::Zero(n);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < m2.D; ++mid) {
        const Scalar& v = y(p * m2.D + mid);
        if (v.is_zero()) continue;
        lhs(p) += v * a.counit_of(Vec(g.gmap.col(mid)));
      }
    if (!is_zero(Vec(lhs - g.gmap.col(x)))) return false;
  }
  return true;
}

// Covariance-based: Delta(g(x)) = (id (x) g)(Delta_{M(x)M}(x)).
bool left_invariant_cov(const Metric& g) {
  const Bimod& m2 = *g.square;
  const HopfAlgebra& a = *g.host->algebra;
  const Index n = a.n;
  for (Index x = 0; x < m2.D; ++x) {
    Vec y = m2.lco.col(x);
    Vec rhs = Vec::Zero(n * n);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < m2.D; ++mid) {
        const Scalar& v = y(p * m2.D + mid);
        if (v.is_zero()) continue;
        Vec gv = g.gmap.col(mid);
        for (Index b = 0; b < n; ++b)
          if (!gv(b).is_zero()) rhs(p * n + b) += v * gv(b);
      }
    Vec gx = g.gmap.col(x);
    Vec lhs = Vec::Zero(n * n);
    for (Index c = 0; c < n; ++c) {
      if (gx(c).is_zero()) continue;
      for (const auto& [p, q, v] : a.comult_nz[c]) lhs(p * n + q) += gx(c) * v;
    }
    if (!is_zero(Vec(lhs - rhs))) return false;
  }
  return true;
}

bool right_invariant_def(const Metric& g) {
  const Bimod& m2 = *g.square;
  const HopfAlgebra& a = *g.host->algebra;
  const Index n = a.n;
  for (Index x = 0; x < m2.D; ++x) {
    Vec y = m2.rco.col(x);
    Vec lhs = Vec::Zero(n);
    for (Index mid = 0; mid < m2.D; ++mid)
      for (Index q = 0; q < n; ++q) {
        const Scalar& v = y(mid * n + q);
        if (v.is_zero()) continue;
        lhs(q) += v * a.counit_of(Vec(g.gmap.col(mid)));
      }
    if (!is_zero(Vec(lhs - g.gmap.col(x)))) return false;
  }
  return true;
}

bool right_invariant_cov(const Metric& g) {
  const Bimod& m2 = *g.square;
  const HopfAlgebra& a = *g.host->algebra;
  const Index n = a.n;
  for (Index x = 0; x < m2.D; ++x) {
    Vec y = m2.rco.col(x);
    Vec rhs = Vec::Zero(n * n);
    for (Index mid = 0; mid < m2.D; ++mid)
      for (Index q = 0; q < n; ++q) {
        const Scalar& v = y(mid * n + q);
        if (v.is_zero()) continue;
        Vec gv = g.gmap.col(mid);
        for (Index b = 0; b < n; ++b)
          if (!gv(b).is_zero()) rhs(b * n + q) += v * gv(b);
      }
    Vec gx = g.gmap.col(x);
    Vec lhs = Vec::Zero(n * n);
    for (Index c = 0; c < n; ++c) {
      if (gx(c).is_zero()) continue;
      for (const auto& [p, q, v] : a.comult_nz[c]) lhs(p * n + q) += gx(c) * v;
    }
    if (!is_zero(Vec(lhs - rhs))) return false;
  }
  return true;
}

}  // namespace

bool check_left_invariant(const Metric& g) {
  bool by_def = left_invariant_def(g);
  bool by_cov = left_invariant_cov(g);
  if (by_def != by_cov)
    throw Error("left invariance characterizations disagree (internal inconsistency)");
  return by_def;
}

bool check_right_invariant(const Metric& g) {
  bool by_def = right_invariant_def(g);
  bool by_cov = right_invariant_cov(g);
  if (by_def != by_cov)
    throw Error("right invariance characterizations disagree (internal inconsistency)");
  return by_def;
}

bool check_bi_invariant(const Metric& g) {
  if (!g.scalar_entries()) return false;
  const Bimod& m = *g.host;
  const HopfAlgebra& a = *m.algebra;
  Mat lam = g.scalar_matrix();
  for (Index i = 0; i < m.d; ++i)
    for (Index j = 0; j < m.d; ++j) {
      Vec acc = Vec::Zero(a.n);
      for (Index k = 0; k < m.d; ++k)
        for (Index l = 0; l < m.d; ++l) {
          if (lam(k, l).is_zero()) continue;
          acc += lam(k, l) * a.product(m.R.at(k, i), m.R.at(l, j));
        }
      if (!is_zero(Vec(acc - lam(i, j) * a.unit))) return false;
    }
  return true;
}

Mat metric_inverse(const Metric& g) {
  Mat lam = g.scalar_matrix();
  auto inv = inverse(lam);
  if (!inv) throw Error("degenerate metric");
  return *inv;
}

bool metric_left_linear(const Metric& g) {
  const HopfAlgebra& a = *g.host->algebra;
  for (Index b = 0; b < a.n; ++b) {
    Mat lhs = g.gmap * g.square->lact[b];
    Mat rhs = a.left_mult(basis_vec(a.n, b)) * g.gmap;
    if (!is_zero(Mat(lhs - rhs))) return false;
  }
  return true;
}

DualBasis dual_basis(const Bimod& m) {
  DualBasis out;
  out.maps.reserve(m.d);
  const Index n = m.algebra->n;
  for (Index i = 0; i < m.d; ++i) out.maps.push_back(m.phi_r_inv.middleRows(i * n, n));
  return out;
}

CheckResult dual_reconstruction(const Bimod& m) {
  CheckResult c{"metric.dual_reconstruction"};
  DualBasis dual = dual_basis(m);
  for (Index x = 0; x < m.D; ++x) {
    Vec acc = Vec::Zero(m.D);
    for (Index i = 0; i < m.d; ++i)
      acc += m.right_mult_alg(m.omega.col(i), Vec(dual.maps[i].col(x)));
    if (!is_zero(Vec(acc - basis_vec(m.D, x)))) {
      c.pass = false;
      c.witness = "basis #" + std::to_string(x);
      break;
    }
  }
  return c;
}

std::vector<CheckResult> ev_coev_check(const Metric& g) {
  const Bimod& m = *g.host;
  const Bimod& m2 = *g.square;
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n, d = m.d;

  if (!g.scalar_entries()) throw Error("ev_coev requires a scalar coefficient matrix");
  if (!metric_left_linear(g)) throw Error("ev_coev requires an A-bilinear metric");
  Mat ginv = metric_inverse(g);  // throws "degenerate metric" when singular

  std::vector<CheckResult> out;

  Vec coev_one = Vec::Zero(m2.D);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      if (!ginv(i, j).is_zero()) coev_one += ginv(i, j) * m2.omega.col(i * d + j);

  CheckResult bilinear{"metric.coev_bilinear"};
  for (Index b = 0; b < n; ++b)
    if (!is_zero(Vec(m2.lact[b] * coev_one - m2.ract[b] * coev_one))) {
      bilinear.pass = false;
      bilinear.witness = a.label(b);
      break;
    }
  out.push_back(bilinear);

  Mat coev = Mat::Zero(m2.D, n);
  for (Index b = 0; b < n; ++b) coev.col(b) = m2.lact[b] * coev_one;

  CheckResult snake1{"metric.snake_left"};
  for (Index x = 0; x < m.D && snake1.pass; ++x) {
    auto cx = m.normal_form(basis_vec(m.D, x));
    Vec result = Vec::Zero(m.D);
    for (Index i = 0; i < d; ++i) {
      if (is_zero(cx[i])) continue;
      Vec w = m2.left_mult_alg(cx[i], coev_one);
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l)
          for (Index b = 0; b < n; ++b) {
            const Scalar& v = w((k * d + l) * n + b);
            if (v.is_zero()) continue;
            Vec tail = m.ract[b] * m.omega.col(l);
            result += v * m.left_mult_alg(g.g.at(i, k), tail);
          }
    }
    if (!is_zero(Vec(result - basis_vec(m.D, x)))) {
      snake1.pass = false;
      snake1.witness = "basis #" + std::to_string(x);
    }
  }
  out.push_back(snake1);

  CheckResult snake2{"metric.snake_right"};
  for (Index x = 0; x < m.D && snake2.pass; ++x) {
    Vec result = Vec::Zero(m.D);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        if (ginv(i, j).is_zero()) continue;
        Vec c = g.gmap * pure_tensor(m, m, m.omega.col(j), basis_vec(m.D, x));
        result += ginv(i, j) * m.right_mult_alg(m.omega.col(i), c);
      }
    if (!is_zero(Vec(result - basis_vec(m.D, x)))) {
      snake2.pass = false;
      snake2.witness = "basis #" + std::to_string(x);
    }
  }
  out.push_back(snake2);

  CheckResult evcov{"metric.ev_bicovariant"};
  evcov.pass = check_left_invariant(g) && check_right_invariant(g);
  if (!evcov.pass) evcov.witness = "ev_g = g is not bicovariant";
  out.push_back(evcov);

  CheckResult coevcov{"metric.coev_bicovariant"};
  {
    Bimod reg = regular_bimodule(m.algebra);
    for (const auto& c : check_covariant_map(reg, m2, coev, Covariance::Bi))
      if (!c.pass) {
        coevcov.pass = false;
        coevcov.witness = c.id + " " + c.witness;
        break;
      }
  }
  out.push_back(coevcov);

  return out;
}

TwoForms two_forms(const Braiding& b) {
  TwoForms out;
  const Index d2 = b.coeffs.rows();
  const Index full = b.full.rows();
  Mat inv_ker = kernel(Mat(b.coeffs - Mat::Identity(d2, d2)));
  out.invariant_dim = d2 - inv_ker.cols();
  out.kernel_basis = kernel(Mat(b.full - Mat::Identity(full, full)));
  out.full_dim = full - out.kernel_basis.cols();

  // Deterministic complement: coordinates outside the pivot set of the
  // kernel's row space.
  Mat kt = out.kernel_basis.transpose();
  Rref rr = row_reduce(kt);
  std::vector<bool> pivot(full, false);
  for (Index c : rr.pivot_cols) pivot[c] = true;
  std::vector<Index> free_coords;
  for (Index i = 0; i < full; ++i)
    if (!pivot[i]) free_coords.push_back(i);

  Mat basis(full, full);
  basis.leftCols(out.kernel_basis.cols()) = out.kernel_basis;
  for (std::size_t k = 0; k < free_coords.size(); ++k)
    basis.col(out.kernel_basis.cols() + static_cast<Index>(k)) =
        basis_vec(full, free_coords[k]);
  auto inv = inverse(basis);
  if (!inv) throw Error("two_forms: complement construction failed");
  out.wedge = inv->bottomRows(out.full_dim);
  return out;
}

BeggsMajid beggs_majid_check(const Braiding& b, const AMat& g) {
  const Bimod& m2 = *b.square;
  const Bimod& m = *b.host;
  const Index d = m.d, n = m.algebra->n;
  BeggsMajid out;

  Vec h = Vec::Zero(m2.D);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      h += m2.left_mult_alg(g.at(i, j), Vec(m2.omega.col(i * d + j)));
  out.wedge_h_zero = is_zero(Vec(b.full * h - h));

  Mat gmap = Mat::Zero(n, m2.D);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index av = 0; av < n; ++av)
        gmap.col((i * d + j) * n + av) = m.algebra->product(g.at(i, j), basis_vec(n, av));
  out.symmetric = is_zero(Mat(gmap * b.full - gmap));
  return out;
}

BiinvariantSpace enumerate_biinvariant(const Braiding& b, std::optional<unsigned long> seed) {
  const Bimod& m = *b.host;
  const HopfAlgebra& a = *m.algebra;
  const Index d = m.d, n = a.n, d2 = d * d;

  // Unknown scalar vector lambda over the invariant basis, constraints:
  //   sum_kl sigma^{kl}_{ij} lambda_kl = lambda_ij  (g o sigma = g)
  //   sum_kl lambda_kl R_ki R_lj = lambda_ij . 1    (bi-invariance)
  Mat sys = Mat::Zero(d2 + d2 * n, d2);
  for (Index ij = 0; ij < d2; ++ij) {
    for (Index kl = 0; kl < d2; ++kl) sys(ij, kl) = b.coeffs(kl, ij);
    sys(ij, ij) -= Scalar(1);
  }
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Index ij = i * d + j;
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          Vec prod = a.product(m.R.at(k, i), m.R.at(l, j));
          for (Index c = 0; c < n; ++c)
            sys(d2 + ij * n + c, k * d + l) += prod(c);
        }
      for (Index c = 0; c < n; ++c) sys(d2 + ij * n + c, ij) -= a.unit(c);
    }

  BiinvariantSpace out;
  Mat ker = kernel(sys);
  for (Index s = 0; s < ker.cols(); ++s) {
    Mat gm(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) gm(i, j) = ker(i * d + j, s);
    out.basis.push_back(gm);
  }

  const Index dim = ker.cols();
  if (dim == 0) return out;

  // Candidate integer combinations with coefficients in {-2..2}, enumerated
  // by increasing max-norm then lexicographically; an optional seed shuffles
  // the order deterministically.
  std::vector<std::vector<long>> candidates;
  std::vector<long> cur(dim, 0);
  auto enumerate = [&](auto&& self, Index pos) -> void {
    if (pos == dim) {
      bool zero = std::all_of(cur.begin(), cur.end(), [](long v) { return v == 0; });
      if (!zero) candidates.push_back(cur);
      return;
    }
    for (long v : {0L, 1L, -1L, 2L, -2L}) {
      cur[pos] = v;
      self(self, pos + 1);
    }
  };
  if (dim <= 8) enumerate(enumerate, 0);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const std::vector<long>& x, const std::vector<long>& y) {
                     long mx = 0, my = 0;
                     for (long v : x) mx = std::max(mx, std::abs(v));
                     for (long v : y) my = std::max(my, std::abs(v));
                     return mx < my;
                   });
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
  }

  for (const auto& c : candidates) {
    ++out.candidates_tried;
    Mat gm = Mat::Zero(d, d);
    for (Index s = 0; s < dim; ++s)
      if (c[s] != 0) gm += Scalar(c[s]) * out.basis[s];
    if (rank(gm) == d) {
      out.nondegenerate = gm;
      break;
    }
  }
  return out;
}

}  // namespace bicotwist
