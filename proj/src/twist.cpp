#include "bicotwist/twist.hpp"

namespace bicotwist {

namespace {

std::vector<Bimod::TwoSidedLeg> legs_of(const Bimod& m, const Vec& x) {
  const Index n = m.algebra->n, D = m.D;
  std::vector<Bimod::TwoSidedLeg> out;
  Vec first = m.lco * x;
  for (Index p = 0; p < n; ++p)
    for (Index mid = 0; mid < D; ++mid) {
      const Scalar& v1 = first(p * D + mid);
      if (v1.is_zero()) continue;
      Vec second = m.rco.col(mid);
      for (Index mm = 0; mm < D; ++mm)
        for (Index q = 0; q < n; ++q) {
          const Scalar& v2 = second(mm * n + q);
          if (!v2.is_zero()) out.push_back({p, mm, q, v1 * v2});
        }
    }
  return out;
}

}  // namespace

Scalar Cocycle::eval(const Vec& a, const Vec& b) const {
  Scalar out(0);
  for (Index i = 0; i < host->n; ++i) {
    if (a(i).is_zero()) continue;
    for (Index j = 0; j < host->n; ++j)
      if (!b(j).is_zero()) out += a(i) * b(j) * gamma(i, j);
  }
  return out;
}

Scalar Cocycle::eval_bar(const Vec& a, const Vec& b) const {
  Scalar out(0);
  for (Index i = 0; i < host->n; ++i) {
    if (a(i).is_zero()) continue;
    for (Index j = 0; j < host->n; ++j)
      if (!b(j).is_zero()) out += a(i) * b(j) * gammabar(i, j);
  }
  return out;
}

std::vector<CheckResult> cocycle_checks(const HopfAlgebra& a, const Mat& gamma) {
  std::vector<CheckResult> out;
  const Index n = a.n;

  CheckResult unital{"cocycle.unital"};
  for (Index i = 0; i < n; ++i) {
    Scalar left(0), right(0);
    for (Index j = 0; j < n; ++j) {
      left += gamma(i, j) * a.unit(j);
      right += gamma(j, i) * a.unit(j);
    }
    if (left != a.counit(i) || right != a.counit(i)) {
      unital.pass = false;
      unital.witness = a.label(i);
      break;
    }
  }
  out.push_back(unital);

  CheckResult identity{"cocycle.identity"};
  for (Index i = 0; i < n && identity.pass; ++i)
    for (Index j = 0; j < n && identity.pass; ++j)
      for (Index k = 0; k < n; ++k) {
        Scalar lhs(0), rhs(0);
        for (const auto& [p, q, v1] : a.comult_nz[i])
          for (const auto& [r, s, v2] : a.comult_nz[j]) {
            Scalar inner(0);
            for (Index t = 0; t < n; ++t) {
              const Scalar& mqs = a.mult(q, s, t);
              if (!mqs.is_zero()) inner += mqs * gamma(t, k);
            }
            lhs += v1 * v2 * gamma(p, r) * inner;
          }
        for (const auto& [r, s, v1] : a.comult_nz[j])
          for (const auto& [p, q, v2] : a.comult_nz[k]) {
            Scalar inner(0);
            for (Index t = 0; t < n; ++t) {
              const Scalar& msq = a.mult(s, q, t);
              if (!msq.is_zero()) inner += msq * gamma(i, t);
            }
            rhs += v1 * v2 * gamma(r, p) * inner;
          }
        if (lhs != rhs) {
          identity.pass = false;
          identity.witness =
              "(" + a.label(i) + ", " + a.label(j) + ", " + a.label(k) + ")";
          break;
        }
      }
  out.push_back(identity);

  CheckResult invertible{"cocycle.convolution_invertible"};
  Mat gammabar;
  try {
    auto host = std::make_shared<HopfAlgebra>(a);
    Functional2 f{host, gamma};
    gammabar = convolution_inverse(f).values;
  } catch (const Error& e) {
    invertible.pass = false;
    invertible.witness = e.what();
  }
  out.push_back(invertible);

  if (invertible.pass) {
    CheckResult invid{"cocycle.inverse_identity"};
    for (Index i = 0; i < n && invid.pass; ++i)
      for (Index j = 0; j < n && invid.pass; ++j)
        for (Index k = 0; k < n; ++k) {
          // gammabar(a1 b1 (x) c) gammabar(a2 (x) b2) =
          // gammabar(a (x) b1 c1) gammabar(b2 (x) c2)
          Scalar lhs(0), rhs(0);
          for (const auto& [p, q, v1] : a.comult_nz[i])
            for (const auto& [r, s, v2] : a.comult_nz[j]) {
              Scalar inner(0);
              for (Index t = 0; t < n; ++t) {
                const Scalar& mpr = a.mult(p, r, t);
                if (!mpr.is_zero()) inner += mpr * gammabar(t, k);
              }
              lhs += v1 * v2 * inner * gammabar(q, s);
            }
          for (const auto& [r, s, v1] : a.comult_nz[j])
            for (const auto& [p, q, v2] : a.comult_nz[k]) {
              Scalar inner(0);
              for (Index t = 0; t < n; ++t) {
                const Scalar& mrp = a.mult(r, p, t);
                if (!mrp.is_zero()) inner += mrp * gammabar(i, t);
              }
              rhs += v1 * v2 * inner * gammabar(s, q);
            }
          if (lhs != rhs) {
            invid.pass = false;
            invid.witness = "(" + a.label(i) + ", " + a.label(j) + ", " + a.label(k) + ")";
            break;
          }
        }
    out.push_back(invid);
  }

  return out;
}

Cocycle make_cocycle(std::shared_ptr<const HopfAlgebra> algebra, const Mat& gamma) {
  const HopfAlgebra& a = *algebra;
  auto checks = cocycle_checks(a, gamma);
  for (const auto& c : checks) {
    if (c.pass) continue;
    if (c.id == "cocycle.unital") throw Error("not unital: " + c.witness);
    if (c.id == "cocycle.identity") throw Error("cocycle identity fails at " + c.witness);
    if (c.id == "cocycle.convolution_invertible") throw Error("not convolution invertible");
    throw Error(c.id + " fails at " + c.witness);
  }
  Cocycle out;
  out.host = algebra;
  out.gamma = gamma;
  Functional2 f{algebra, gamma};
  out.gammabar = convolution_inverse(f).values;
  return out;
}

HopfAlgebra twist_algebra(const HopfAlgebra& a, const Cocycle& c) {
  const Index n = a.n;
  HopfAlgebra out = a;  // same coalgebra, unit, counit, labels
  out.mult = Tensor3(n, n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (const auto& [p, q, r, v1] : a.comult2_nz[i])
        for (const auto& [s, t, u, v2] : a.comult2_nz[j]) {
          Scalar w = v1 * v2 * c.gamma(p, s) * c.gammabar(r, u);
          if (w.is_zero()) continue;
          for (Index k = 0; k < n; ++k) {
            const Scalar& m = a.mult(q, t, k);
            if (!m.is_zero()) out.mult(i, j, k) += w * m;
          }
        }

  // Antipode from the antipode axiom, a linear system with unique solution.
  const Index nn = n * n;
  Mat sys = Mat::Zero(2 * nn, nn);
  Mat rhs = Mat::Zero(2 * nn, 1);
  for (Index i = 0; i < n; ++i) {
    for (const auto& [j, k, v] : a.comult_nz[i])
      for (Index p = 0; p < n; ++p)
        for (Index mcol = 0; mcol < n; ++mcol) {
          const Scalar& ml = out.mult(p, k, mcol);
          if (!ml.is_zero()) sys(i * n + mcol, p * n + j) += v * ml;
          const Scalar& mr = out.mult(j, p, mcol);
          if (!mr.is_zero()) sys(nn + i * n + mcol, p * n + k) += v * mr;
        }
    for (Index mcol = 0; mcol < n; ++mcol) {
      rhs(i * n + mcol, 0) = a.counit(i) * a.unit(mcol);
      rhs(nn + i * n + mcol, 0) = rhs(i * n + mcol, 0);
    }
  }
  SolveResult s = solve(sys, rhs);
  if (!s.exists) throw Error("twisted antipode system inconsistent");
  out.antipode = Mat::Zero(n, n);
  for (Index p = 0; p < n; ++p)
    for (Index j = 0; j < n; ++j) out.antipode(p, j) = s.solution(p * n + j, 0);
  out.finalize();
  return out;
}

Bimod twist_bimodule(const Bimod& m, const Cocycle& c,
                     std::shared_ptr<const HopfAlgebra> twisted) {
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n, D = m.D;
  Bimod out;
  out.algebra = twisted;
  out.D = D;
  out.lco = m.lco;
  out.rco = m.rco;
  out.omega = m.omega;
  out.lact.assign(n, Mat::Zero(D, D));
  out.ract.assign(n, Mat::Zero(D, D));

  auto legs = m.two_sided_legs();
  for (Index b = 0; b < n; ++b)
    for (Index x = 0; x < D; ++x) {
      for (const auto& [u, mid, v, lv] : legs[x])
        for (const auto& [p, q, r, cv] : a.comult2_nz[b]) {
          Scalar wl = lv * cv * c.gamma(p, u) * c.gammabar(r, v);
          if (!wl.is_zero()) out.lact[b].col(x) += wl * m.lact[q].col(mid);
          Scalar wr = lv * cv * c.gamma(u, p) * c.gammabar(v, r);
          if (!wr.is_zero()) out.ract[b].col(x) += wr * m.ract[q].col(mid);
        }
    }
  out.derive();
  return out;
}

bool is_bicovariant(const Bimod& m, const Bimod& n, const Mat& t) {
  return all_pass(check_covariant_map(m, n, t, Covariance::Bi));
}

Mat twist_map(const Bimod& m, const Bimod& n, const Mat& t) {
  if (!is_bicovariant(m, n, t)) throw Error("twist_map: map is not bicovariant");
  return t;
}

std::vector<CheckResult> check_yd_rebuild(const Bimod& m) {
  std::vector<CheckResult> out;
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n;

  YDModule yd = extract_yd(m);
  CheckResult valid{"twist.extracted_yd_valid"};
  for (const auto& c : verify_yd(yd))
    if (!c.pass) {
      valid.pass = false;
      valid.witness = c.id + " " + c.witness;
      break;
    }
  out.push_back(valid);
  if (!valid.pass) return out;

  Bimod rebuilt = build_bimodule(m.algebra, yd);
  CheckResult rebuild{"twist.yd_rebuild"};
  // Multiplication isomorphism a (x) v -> a * omega_v.
  Mat phi = Mat::Zero(m.D, rebuilt.D);
  for (Index av = 0; av < n; ++av)
    for (Index i = 0; i < m.d; ++i) phi.col(av * m.d + i) = m.lact[av] * m.omega.col(i);
  if (rank(phi) != m.D) {
    rebuild.pass = false;
    rebuild.witness = "multiplication map not invertible";
  } else {
    for (Index b = 0; b < n && rebuild.pass; ++b) {
      if (!is_zero(Mat(phi * rebuilt.lact[b] - m.lact[b] * phi)) ||
          !is_zero(Mat(phi * rebuilt.ract[b] - m.ract[b] * phi))) {
        rebuild.pass = false;
        rebuild.witness = "action mismatch at " + a.label(b);
      }
    }
    if (rebuild.pass) {
      // Coactions: (id (x) phi) lco_std = lco phi and (phi (x) id) rco_std = rco phi.
      Mat lhs_l = Mat::Zero(n * m.D, rebuilt.D);
      Mat lhs_r = Mat::Zero(m.D * n, rebuilt.D);
      for (Index x = 0; x < rebuilt.D; ++x) {
        Vec y = rebuilt.lco.col(x);
        for (Index p = 0; p < n; ++p)
          for (Index mid = 0; mid < rebuilt.D; ++mid) {
            const Scalar& v = y(p * rebuilt.D + mid);
            if (!v.is_zero()) lhs_l.col(x).segment(p * m.D, m.D) += v * phi.col(mid);
          }
        Vec z = rebuilt.rco.col(x);
        for (Index mid = 0; mid < rebuilt.D; ++mid)
          for (Index q = 0; q < n; ++q) {
            const Scalar& v = z(mid * n + q);
            if (v.is_zero()) continue;
            for (Index mm = 0; mm < m.D; ++mm)
              if (!phi(mm, mid).is_zero()) lhs_r(mm * n + q, x) += v * phi(mm, mid);
          }
      }
      if (!is_zero(Mat(lhs_l - m.lco * phi)) || !is_zero(Mat(lhs_r - m.rco * phi))) {
        rebuild.pass = false;
        rebuild.witness = "coaction mismatch";
      }
    }
  }
  out.push_back(rebuild);
  return out;
}

TwistContext make_twist_context(std::shared_ptr<const Bimod> m, std::shared_ptr<const Bimod> m2,
                                std::shared_ptr<const Braiding> sigma, const Cocycle& c) {
  TwistContext ctx;
  ctx.algebra = m->algebra;
  ctx.cocycle = c;
  ctx.m = m;
  ctx.m2 = m2;
  ctx.sigma = sigma;
  ctx.twisted_algebra = std::make_shared<HopfAlgebra>(twist_algebra(*m->algebra, c));
  ctx.mg = std::make_shared<Bimod>(twist_bimodule(*m, c, ctx.twisted_algebra));
  ctx.mg2 = std::make_shared<Bimod>(tensor_bimodule(*ctx.mg, *ctx.mg));
  ctx.m2g = std::make_shared<Bimod>(twist_bimodule(*m2, c, ctx.twisted_algebra));

  // xi on the invariant basis: xi(omega_i (x)' omega_j) =
  // sum_kl (omega_k (x) omega_l) gammabar(R_ki (x) R_lj), extended by right
  // A_gamma-linearity through the twisted action on (M (x) M)_gamma.
  const Index d = m->d, n = m->algebra->n;
  ctx.xi = Mat::Zero(ctx.m2g->D, ctx.mg2->D);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Vec base = Vec::Zero(ctx.m2g->D);
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          Scalar w = c.eval_bar(m->R.at(k, i), m->R.at(l, j));
          if (!w.is_zero()) base += w * m2->omega.col(k * d + l);
        }
      for (Index av = 0; av < n; ++av)
        ctx.xi.col((i * d + j) * n + av) = ctx.m2g->ract[av] * base;
    }
  auto inv = inverse(ctx.xi);
  if (!inv) throw Error("xi is not invertible (internal inconsistency)");
  ctx.xi_inv = std::move(*inv);
  return ctx;
}

namespace {

// Literal Sweedler evaluation of xi (or its inverse) on a pure tensor.
Vec xi_sweedler(const TwistContext& ctx, const Vec& x, const Vec& y, bool forward) {
  const Bimod& m = *ctx.m;
  const Bimod& target = forward ? *ctx.m2 : *ctx.mg2;
  const Bimod& leg_space = m;  // coactions are unchanged by twisting
  auto legs_x = legs_of(leg_space, x);
  auto legs_y = legs_of(leg_space, y);
  Vec out = Vec::Zero(target.D);
  for (const auto& [px, mx, qx, vx] : legs_x)
    for (const auto& [py, my, qy, vy] : legs_y) {
      Scalar first = forward ? ctx.cocycle.gamma(px, py) : ctx.cocycle.gammabar(px, py);
      Scalar second = forward ? ctx.cocycle.gammabar(qx, qy) : ctx.cocycle.gamma(qx, qy);
      Scalar w = vx * vy * first * second;
      if (w.is_zero()) continue;
      const Bimod& emb = forward ? *ctx.m : *ctx.mg;
      out += w * pure_tensor(emb, emb, basis_vec(m.D, mx), basis_vec(m.D, my));
    }
  return out;
}

}  // namespace

std::vector<CheckResult> xi_checks(const TwistContext& ctx) {
  std::vector<CheckResult> out;
  const Bimod& mg2 = *ctx.mg2;
  const Bimod& m2g = *ctx.m2g;
  const Bimod& m = *ctx.m;
  const Bimod& mg = *ctx.mg;
  const HopfAlgebra& ag = *ctx.twisted_algebra;
  const Index n = ag.n;

  CheckResult invertible{"xi.invertible"};
  if (!is_zero(Mat(ctx.xi * ctx.xi_inv - Mat::Identity(m2g.D, m2g.D))) ||
      !is_zero(Mat(ctx.xi_inv * ctx.xi - Mat::Identity(mg2.D, mg2.D)))) {
    invertible.pass = false;
  }
  out.push_back(invertible);

  CheckResult bilinear{"xi.bilinear"};
  for (Index b = 0; b < n; ++b)
    if (!is_zero(Mat(ctx.xi * mg2.lact[b] - m2g.lact[b] * ctx.xi)) ||
        !is_zero(Mat(ctx.xi * mg2.ract[b] - m2g.ract[b] * ctx.xi))) {
      bilinear.pass = false;
      bilinear.witness = ag.label(b);
      break;
    }
  out.push_back(bilinear);

  CheckResult cov{"xi.bicovariant"};
  for (const auto& c : check_covariant_map(mg2, m2g, ctx.xi, Covariance::Bi))
    if (!c.pass) {
      cov.pass = false;
      cov.witness = c.id + " " + c.witness;
      break;
    }
  out.push_back(cov);

  CheckResult sweedler{"xi.sweedler_formula"};
  {
    const Index d = m.d;
    for (Index i = 0; i < d && sweedler.pass; ++i)
      for (Index j = 0; j < d && sweedler.pass; ++j)
        for (Index av = 0; av < n; ++av) {
          Vec y = mg.ract[av] * mg.omega.col(j);
          Vec direct = xi_sweedler(ctx, mg.omega.col(i), y, true);
          Vec via_matrix = ctx.xi.col((i * d + j) * n + av);
          if (!is_zero(Vec(direct - via_matrix))) {
            sweedler.pass = false;
            sweedler.witness = "forward at (" + std::to_string(i) + "," + std::to_string(j) +
                               "," + ag.label(av) + ")";
            break;
          }
        }
    for (Index i = 0; i < d && sweedler.pass; ++i)
      for (Index j = 0; j < d && sweedler.pass; ++j)
        for (Index av = 0; av < n; ++av) {
          Vec y = m.ract[av] * m.omega.col(j);
          Vec direct = xi_sweedler(ctx, m.omega.col(i), y, false);
          Vec via_matrix = ctx.xi_inv.col((i * d + j) * n + av);
          if (!is_zero(Vec(direct - via_matrix))) {
            sweedler.pass = false;
            sweedler.witness = "inverse at (" + std::to_string(i) + "," + std::to_string(j) +
                               "," + ag.label(av) + ")";
            break;
          }
        }
  }
  out.push_back(sweedler);

  CheckResult pair{"xi.invariant_pair"};
  {
    // xi^{-1}(gamma(eta_(-1) (x) 1) eta_(0) (x) omega_(0) gammabar(1 (x)
    // omega_(1))) = eta (x)' omega, evaluated literally.
    const Index d = m.d, D = m.D;
    for (Index k = 0; k < d && pair.pass; ++k)
      for (Index i = 0; i < d; ++i) {
        Vec arg = Vec::Zero(ctx.m2->D);
        Vec lhs_eta = m.lco * m.eta.col(k);
        Vec rhs_omega = m.rco * m.omega.col(i);
        for (Index p = 0; p < n; ++p)
          for (Index me = 0; me < D; ++me) {
            const Scalar& v1 = lhs_eta(p * D + me);
            if (v1.is_zero()) continue;
            Scalar c1 = ctx.cocycle.eval(basis_vec(n, p), m.algebra->unit);
            if (c1.is_zero()) continue;
            for (Index mw = 0; mw < D; ++mw)
              for (Index q = 0; q < n; ++q) {
                const Scalar& v2 = rhs_omega(mw * n + q);
                if (v2.is_zero()) continue;
                Scalar c2 = ctx.cocycle.eval_bar(m.algebra->unit, basis_vec(n, q));
                if (c2.is_zero()) continue;
                arg += v1 * v2 * c1 * c2 * pure_tensor(m, m, basis_vec(D, me), basis_vec(D, mw));
              }
          }
        Vec lhs = ctx.xi_inv * arg;
        Vec expected = pure_tensor(mg, mg, m.eta.col(k), m.omega.col(i));
        if (!is_zero(Vec(lhs - expected))) {
          pair.pass = false;
          pair.witness = "(eta_" + std::to_string(k) + ", omega_" + std::to_string(i) + ")";
          break;
        }
      }
  }
  out.push_back(pair);

  return out;
}

Braiding sigma_twist(const TwistContext& ctx) {
  Braiding out;
  out.host = ctx.mg;
  out.square = ctx.mg2;
  out.full = ctx.xi_inv * ctx.sigma->full * ctx.xi;
  const Index d = ctx.mg->d, n = ctx.twisted_algebra->n;
  out.coeffs = Mat::Zero(d * d, d * d);
  for (Index ij = 0; ij < d * d; ++ij) {
    Vec image = out.full * ctx.mg2->omega.col(ij);
    for (Index kl = 0; kl < d * d; ++kl) {
      Vec coef = image.segment(kl * n, n);
      auto s = scalar_of(*ctx.twisted_algebra, coef);
      if (!s) throw Error("sigma_twist: non-scalar coefficient (internal inconsistency)");
      out.coeffs(kl, ij) = *s;
    }
  }
  return out;
}

Metric metric_twist(const TwistContext& ctx, const Metric& g,
                    std::shared_ptr<const Braiding> twisted_sigma) {
  if (!all_pass(check_metric(g)))
    throw Error("metric_twist: input is not a pseudo-Riemannian metric");
  if (!check_bi_invariant(g)) throw Error("metric_twist: input metric is not bi-invariant");
  const Bimod& m = *g.host;
  const Index d = m.d;
  Mat lam = g.scalar_matrix();
  Mat twisted(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Scalar acc(0);
      for (Index k = 0; k < d; ++k)
        for (Index l = 0; l < d; ++l) {
          if (lam(k, l).is_zero()) continue;
          acc += lam(k, l) * ctx.cocycle.eval_bar(m.R.at(k, i), m.R.at(l, j));
        }
      twisted(i, j) = acc;
    }
  return make_metric(ctx.mg, ctx.mg2, twisted_sigma, twisted);
}

std::vector<CheckResult> verify_right_bicov_module(const RightModule& v) {
  std::vector<CheckResult> out;
  const HopfAlgebra& a = *v.algebra;
  const Index n = a.n, D = v.D;

  CheckResult mod{"rightmod.module_axioms"};
  for (Index b = 0; b < n && mod.pass; ++b)
    for (Index c = 0; c < n; ++c) {
      Mat lhs = v.ract[c] * v.ract[b];
      Mat rhs = Mat::Zero(D, D);
      for (Index k = 0; k < n; ++k) {
        const Scalar& w = a.mult(b, c, k);
        if (!w.is_zero()) rhs += w * v.ract[k];
      }
      if (!is_zero(Mat(lhs - rhs))) {
        mod.pass = false;
        mod.witness = "(" + a.label(b) + ", " + a.label(c) + ")";
        break;
      }
    }
  if (mod.pass) {
    Mat unit_r = Mat::Zero(D, D);
    for (Index b = 0; b < n; ++b)
      if (!a.unit(b).is_zero()) unit_r += a.unit(b) * v.ract[b];
    if (!is_zero(Mat(unit_r - Mat::Identity(D, D)))) {
      mod.pass = false;
      mod.witness = "unit action";
    }
  }
  out.push_back(mod);

  CheckResult lcom{"rightmod.left_comodule"};
  CheckResult rcom{"rightmod.right_comodule"};
  CheckResult mixed{"rightmod.mixed_compatibility"};
  for (Index x = 0; x < D; ++x) {
    Vec y = v.lco.col(x);
    Vec lhs = Vec::Zero(n * n * D), rhs = Vec::Zero(n * n * D), eps = Vec::Zero(D);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < D; ++mid) {
        const Scalar& w = y(p * D + mid);
        if (w.is_zero()) continue;
        for (const auto& [r, s, u] : a.comult_nz[p]) lhs((r * n + s) * D + mid) += w * u;
        Vec inner = v.lco.col(mid);
        for (Index q = 0; q < n; ++q)
          for (Index mm = 0; mm < D; ++mm) {
            const Scalar& z = inner(q * D + mm);
            if (!z.is_zero()) rhs((p * n + q) * D + mm) += w * z;
          }
        eps(mid) += a.counit(p) * w;
      }
    if (lcom.pass && (!is_zero(Vec(lhs - rhs)) || !is_zero(Vec(eps - basis_vec(D, x))))) {
      lcom.pass = false;
      lcom.witness = "basis #" + std::to_string(x);
    }

    Vec yr = v.rco.col(x);
    Vec lhs2 = Vec::Zero(D * n * n), rhs2 = Vec::Zero(D * n * n), eps2 = Vec::Zero(D);
    for (Index mid = 0; mid < D; ++mid)
      for (Index p = 0; p < n; ++p) {
        const Scalar& w = yr(mid * n + p);
        if (w.is_zero()) continue;
        Vec inner = v.rco.col(mid);
        for (Index mm = 0; mm < D; ++mm)
          for (Index q = 0; q < n; ++q) {
            const Scalar& z = inner(mm * n + q);
            if (!z.is_zero()) lhs2((mm * n + q) * n + p) += w * z;
          }
        for (const auto& [r, s, u] : a.comult_nz[p]) rhs2((mid * n + r) * n + s) += w * u;
        eps2(mid) += a.counit(p) * w;
      }
    if (rcom.pass && (!is_zero(Vec(lhs2 - rhs2)) || !is_zero(Vec(eps2 - basis_vec(D, x))))) {
      rcom.pass = false;
      rcom.witness = "basis #" + std::to_string(x);
    }

    Vec lhs3 = Vec::Zero(n * D * n), rhs3 = Vec::Zero(n * D * n);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < D; ++mid) {
        const Scalar& w = y(p * D + mid);
        if (w.is_zero()) continue;
        Vec inner = v.rco.col(mid);
        for (Index mm = 0; mm < D; ++mm)
          for (Index q = 0; q < n; ++q) {
            const Scalar& z = inner(mm * n + q);
            if (!z.is_zero()) lhs3((p * D + mm) * n + q) += w * z;
          }
      }
    for (Index mid = 0; mid < D; ++mid)
      for (Index q = 0; q < n; ++q) {
        const Scalar& w = yr(mid * n + q);
        if (w.is_zero()) continue;
        Vec inner = v.lco.col(mid);
        for (Index p = 0; p < n; ++p)
          for (Index mm = 0; mm < D; ++mm) {
            const Scalar& z = inner(p * D + mm);
            if (!z.is_zero()) rhs3((p * D + mm) * n + q) += w * z;
          }
      }
    if (mixed.pass && !is_zero(Vec(lhs3 - rhs3))) {
      mixed.pass = false;
      mixed.witness = "basis #" + std::to_string(x);
    }
  }
  out.push_back(lcom);
  out.push_back(rcom);
  out.push_back(mixed);

  CheckResult cova{"rightmod.coactions_covariant"};
  for (Index b = 0; b < n && cova.pass; ++b)
    for (Index x = 0; x < D; ++x) {
      // Delta_M(m a) = Delta_M(m) Delta(a) and likewise for rco.
      Vec lhs_l = v.lco * (v.ract[b] * basis_vec(D, x));
      Vec lhs_r = v.rco * (v.ract[b] * basis_vec(D, x));
      Vec rhs_l = Vec::Zero(n * D), rhs_r = Vec::Zero(D * n);
      Vec y = v.lco.col(x);
      Vec yr = v.rco.col(x);
      for (const auto& [r, s, u] : a.comult_nz[b]) {
        for (Index p = 0; p < n; ++p)
          for (Index mid = 0; mid < D; ++mid) {
            const Scalar& w = y(p * D + mid);
            if (w.is_zero()) continue;
            Vec prod = a.product(basis_vec(n, p), basis_vec(n, r));
            Vec ms = v.ract[s] * basis_vec(D, mid);
            for (Index t = 0; t < n; ++t)
              if (!prod(t).is_zero()) rhs_l.segment(t * D, D) += u * w * prod(t) * ms;
          }
        for (Index mid = 0; mid < D; ++mid)
          for (Index p = 0; p < n; ++p) {
            const Scalar& w = yr(mid * n + p);
            if (w.is_zero()) continue;
            Vec prod = a.product(basis_vec(n, p), basis_vec(n, s));
            Vec ms = v.ract[r] * basis_vec(D, mid);
            for (Index t = 0; t < n; ++t)
              for (Index mm = 0; mm < D; ++mm)
                if (!prod(t).is_zero() && !ms(mm).is_zero())
                  rhs_r(mm * n + t) += u * w * prod(t) * ms(mm);
          }
      }
      if (!is_zero(Vec(lhs_l - rhs_l)) || !is_zero(Vec(lhs_r - rhs_r))) {
        cova.pass = false;
        cova.witness = "(" + a.label(b) + ", basis #" + std::to_string(x) + ")";
        break;
      }
    }
  out.push_back(cova);
  return out;
}

RightModule vg_module_structure(const Metric& g) {
  const Bimod& m = *g.host;
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n, d = m.d;
  RightModule v;
  v.algebra = m.algebra;
  v.D = d * n;
  v.ract.assign(n, Mat::Zero(v.D, v.D));
  v.lco = Mat::Zero(n * v.D, v.D);
  v.rco = Mat::Zero(v.D * n, v.D);
  for (Index i = 0; i < d; ++i)
    for (Index av = 0; av < n; ++av) {
      for (Index b = 0; b < n; ++b)
        for (Index t = 0; t < n; ++t) {
          const Scalar& w = a.mult(av, b, t);
          if (!w.is_zero()) v.ract[b](i * n + t, i * n + av) += w;
        }
      for (const auto& [p, q, w] : a.comult_nz[av]) {
        v.lco(p * v.D + (i * n + q), i * n + av) += w;
        for (Index j = 0; j < d; ++j) {
          Vec srij = a.antipode_of(m.R.at(i, j));
          Vec prod = a.product(srij, basis_vec(n, q));
          for (Index t = 0; t < n; ++t)
            if (!prod(t).is_zero()) v.rco((j * n + p) * n + t, i * n + av) += w * prod(t);
        }
      }
    }
  return v;
}

Mat vg_free_matrix(const Metric& g) {
  const Bimod& m = *g.host;
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n, d = m.d;
  Mat out = Mat::Zero(d * n, m.D);
  for (Index x = 0; x < m.D; ++x) {
    auto coeffs = m.normal_form(basis_vec(m.D, x));
    for (Index i = 0; i < d; ++i) {
      if (is_zero(coeffs[i])) continue;
      for (Index j = 0; j < d; ++j) {
        Vec w = a.product(g.g.at(i, j), coeffs[i]);
        out.block(j * n, x, n, 1) += w;
      }
    }
  }
  return out;
}

std::vector<CheckResult> vg_module_checks(const Metric& g) {
  std::vector<CheckResult> out;
  const Bimod& m = *g.host;
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n, d = m.d;

  RightModule v = vg_module_structure(g);
  for (auto& c : verify_right_bicov_module(v)) out.push_back(std::move(c));

  Mat w = vg_free_matrix(g);

  CheckResult cov1{"vgmod.vg_left_covariant"};
  CheckResult cov2{"vgmod.vg_right_covariant"};
  for (Index x = 0; x < m.D; ++x) {
    Vec y = m.lco.col(x);
    Vec rhs = Vec::Zero(n * v.D);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < m.D; ++mid) {
        const Scalar& u = y(p * m.D + mid);
        if (!u.is_zero()) rhs.segment(p * v.D, v.D) += u * (w * basis_vec(m.D, mid));
      }
    if (cov1.pass && !is_zero(Vec(v.lco * (w * basis_vec(m.D, x)) - rhs))) {
      cov1.pass = false;
      cov1.witness = "basis #" + std::to_string(x);
    }

    Vec yr = m.rco.col(x);
    Vec rhs2 = Vec::Zero(v.D * n);
    for (Index mid = 0; mid < m.D; ++mid)
      for (Index q = 0; q < n; ++q) {
        const Scalar& u = yr(mid * n + q);
        if (u.is_zero()) continue;
        Vec wm = w * basis_vec(m.D, mid);
        for (Index t = 0; t < v.D; ++t)
          if (!wm(t).is_zero()) rhs2(t * n + q) += u * wm(t);
      }
    if (cov2.pass && !is_zero(Vec(v.rco * (w * basis_vec(m.D, x)) - rhs2))) {
      cov2.pass = false;
      cov2.witness = "basis #" + std::to_string(x);
    }
  }
  out.push_back(cov1);
  out.push_back(cov2);

  CheckResult ident{"vgmod.supporting_identity"};
  for (Index i = 0; i < d && ident.pass; ++i)
    for (Index mm = 0; mm < d; ++mm) {
      Vec lhs = Vec::Zero(n), rhs = Vec::Zero(n);
      for (Index j = 0; j < d; ++j) {
        lhs += a.product(g.g.at(i, j), a.antipode_of(m.R.at(j, mm)));
        rhs += a.product(g.g.at(j, mm), m.R.at(j, i));
      }
      if (!is_zero(Vec(lhs - rhs))) {
        ident.pass = false;
        ident.witness = "(i,m) = (" + std::to_string(i) + "," + std::to_string(mm) + ")";
        break;
      }
    }
  out.push_back(ident);

  return out;
}

RightModule twist_right_module(const RightModule& v, const Cocycle& c,
                               std::shared_ptr<const HopfAlgebra> twisted) {
  const HopfAlgebra& a = *v.algebra;
  const Index n = a.n, D = v.D;
  RightModule out;
  out.algebra = twisted;
  out.D = D;
  out.lco = v.lco;
  out.rco = v.rco;
  out.ract.assign(n, Mat::Zero(D, D));

  // Two-sided legs of each basis column.
  for (Index x = 0; x < D; ++x) {
    Vec first = v.lco.col(x);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < D; ++mid) {
        const Scalar& v1 = first(p * D + mid);
        if (v1.is_zero()) continue;
        Vec second = v.rco.col(mid);
        for (Index mm = 0; mm < D; ++mm)
          for (Index q = 0; q < n; ++q) {
            const Scalar& v2 = second(mm * n + q);
            if (v2.is_zero()) continue;
            for (Index b = 0; b < n; ++b)
              for (const auto& [r, s, t, cv] : a.comult2_nz[b]) {
                Scalar w = v1 * v2 * cv * c.gamma(p, r) * c.gammabar(q, t);
                if (!w.is_zero()) out.ract[b].col(x) += w * v.ract[s].col(mm);
              }
          }
      }
  }
  return out;
}

std::vector<CheckResult> vg_twist_remark_checks(const TwistContext& ctx, const Metric& g,
                                                const Metric& g_twisted) {
  std::vector<CheckResult> out;
  const Bimod& m = *ctx.m;
  const Bimod& mg = *ctx.mg;
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n, d = m.d;

  // Stepping stone: g(omega (x) eta) = g_gamma(omega (x)' eta) on all pairs.
  CheckResult pairs{"vgtwist.invariant_values"};
  for (Index i = 0; i < d && pairs.pass; ++i)
    for (Index k = 0; k < d; ++k) {
      Vec lhs = g.gmap * pure_tensor(m, m, m.omega.col(i), m.eta.col(k));
      Vec rhs = g_twisted.gmap * pure_tensor(mg, mg, m.omega.col(i), m.eta.col(k));
      if (!is_zero(Vec(lhs - rhs))) {
        pairs.pass = false;
        pairs.witness = "(omega_" + std::to_string(i) + ", eta_" + std::to_string(k) + ")";
        break;
      }
    }
  out.push_back(pairs);

  // Full Remark: ev_gamma((V_g)_gamma (x)' id) = g_gamma as matrices.
  CheckResult remark{"vgtwist.vg_equals_vgtwisted"};
  {
    RightModule v = vg_module_structure(g);
    // R-matrix of V_g(E) on the dual basis: rco(omega*_i) = sum_k omega*_k
    // (x) S(R_ik).
    AMat rv(d, d, n);
    for (Index i = 0; i < d; ++i)
      for (Index k = 0; k < d; ++k) rv.at(k, i) = a.antipode_of(m.R.at(i, k));

    // T = V (x)_A E over A (coordinates (i,j,a)) and its twist.
    auto build_tensor = [&](const Bimod& e,
                            std::shared_ptr<const HopfAlgebra> alg) -> RightModule {
      const HopfAlgebra& ha = *alg;
      RightModule t;
      t.algebra = alg;
      t.D = d * d * n;
      auto idx = [&](Index i, Index j, Index av) { return (i * d + j) * n + av; };
      t.ract.assign(n, Mat::Zero(t.D, t.D));
      t.lco = Mat::Zero(n * t.D, t.D);
      t.rco = Mat::Zero(t.D * n, t.D);
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          for (Index av = 0; av < n; ++av) {
            for (Index b = 0; b < n; ++b)
              for (Index tt = 0; tt < n; ++tt) {
                const Scalar& w = ha.mult(av, b, tt);
                if (!w.is_zero()) t.ract[b](idx(i, j, tt), idx(i, j, av)) += w;
              }
            for (const auto& [p, q, w] : ha.comult_nz[av]) {
              t.lco(p * t.D + idx(i, j, q), idx(i, j, av)) += w;
              for (Index k = 0; k < d; ++k)
                for (Index l = 0; l < d; ++l) {
                  Vec coef = ha.product(rv.at(k, i), e.R.at(l, j));
                  Vec prod = ha.product(coef, basis_vec(n, q));
                  for (Index tt = 0; tt < n; ++tt)
                    if (!prod(tt).is_zero())
                      t.rco(idx(k, l, p) * n + tt, idx(i, j, av)) += w * prod(tt);
                }
            }
          }
      return t;
    };

    RightModule t = build_tensor(m, ctx.algebra);
    RightModule tg = twist_right_module(t, ctx.cocycle, ctx.twisted_algebra);
    // Note: e.R is identical for m and mg (coactions unchanged).

    // xi' : (V_gamma (x)' E_gamma) -> (V (x) E)_gamma on the invariant basis,
    // extended right-A_gamma-linearly.
    auto idx = [&](Index i, Index j, Index av) { return (i * d + j) * n + av; };
    Mat xi_p = Mat::Zero(t.D, t.D);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        Vec base = Vec::Zero(t.D);
        for (Index k = 0; k < d; ++k)
          for (Index l = 0; l < d; ++l) {
            Scalar w = ctx.cocycle.eval_bar(rv.at(k, i), m.R.at(l, j));
            if (w.is_zero()) continue;
            for (Index av = 0; av < n; ++av)
              if (!a.unit(av).is_zero()) base(idx(k, l, av)) += w * a.unit(av);
          }
        for (Index av = 0; av < n; ++av) xi_p.col(idx(i, j, av)) = tg.ract[av] * base;
      }

    // ev on T: (i,j,a) -> delta_ij e_a.
    Mat ev = Mat::Zero(n, t.D);
    for (Index i = 0; i < d; ++i)
      for (Index av = 0; av < n; ++av) ev(av, idx(i, i, av)) = Scalar(1);

    // (V_g (x)' id) : mg2 coords -> (V_gamma (x)' E_gamma) coords.
    Mat lam = g.scalar_matrix();
    Mat w_tensor_id = Mat::Zero(t.D, ctx.mg2->D);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index av = 0; av < n; ++av)
          for (Index k = 0; k < d; ++k)
            if (!lam(i, k).is_zero())
              w_tensor_id(idx(k, j, av), idx(i, j, av)) += lam(i, k);

    Mat lhs = ev * xi_p * w_tensor_id;
    if (!is_zero(Mat(lhs - g_twisted.gmap))) {
      remark.pass = false;
      remark.witness = "deformed evaluation of V_g differs from V_{g_gamma}";
    }
  }
  out.push_back(remark);

  return out;
}

std::vector<CheckResult> untwist_roundtrip_checks(const TwistContext& ctx, const Metric& g,
                                                  const Metric& g_twisted) {
  std::vector<CheckResult> out;
  const HopfAlgebra& a = *ctx.algebra;

  CheckResult cocycle_ok{"untwist.gammabar_is_cocycle"};
  for (const auto& c : cocycle_checks(*ctx.twisted_algebra, ctx.cocycle.gammabar))
    if (!c.pass) {
      cocycle_ok.pass = false;
      cocycle_ok.witness = c.id + " " + c.witness;
      break;
    }
  out.push_back(cocycle_ok);
  if (!cocycle_ok.pass) return out;

  Cocycle cbar = make_cocycle(ctx.twisted_algebra, ctx.cocycle.gammabar);
  TwistContext back = make_twist_context(ctx.mg, ctx.mg2, g_twisted.braiding, cbar);

  CheckResult alg{"untwist.algebra_restored"};
  {
    const HopfAlgebra& a2 = *back.twisted_algebra;
    bool same = true;
    for (Index i = 0; i < a.n && same; ++i)
      for (Index j = 0; j < a.n && same; ++j)
        for (Index k = 0; k < a.n; ++k)
          if (a2.mult(i, j, k) != a.mult(i, j, k)) {
            same = false;
            break;
          }
    if (!is_zero(Mat(a2.antipode - a.antipode))) same = false;
    if (!same) {
      alg.pass = false;
      alg.witness = "(A_gamma)_{gammabar} != A";
    }
  }
  out.push_back(alg);

  CheckResult bimod{"untwist.bimodule_restored"};
  for (Index b = 0; b < a.n; ++b)
    if (!is_zero(Mat(back.mg->lact[b] - ctx.m->lact[b])) ||
        !is_zero(Mat(back.mg->ract[b] - ctx.m->ract[b]))) {
      bimod.pass = false;
      bimod.witness = a.label(b);
      break;
    }
  out.push_back(bimod);

  CheckResult braid{"untwist.braiding_restored"};
  {
    Braiding sigma_back = sigma_twist(back);
    if (!is_zero(Mat(sigma_back.coeffs - ctx.sigma->coeffs)) ||
        !is_zero(Mat(sigma_back.full - ctx.sigma->full))) {
      braid.pass = false;
    }
  }
  out.push_back(braid);

  CheckResult metric_rt{"untwist.metric_roundtrip"};
  {
    // (g')_{gammabar} followed by gamma restores g'; and the untwist of the
    // twisted metric is the original.
    Metric g_back = metric_twist(back, g_twisted, ctx.sigma);
    bool ok = true;
    for (Index i = 0; i < g.g.rows && ok; ++i)
      for (Index j = 0; j < g.g.cols; ++j)
        if (!is_zero(Vec(g_back.g.at(i, j) - g.g.at(i, j)))) {
          ok = false;
          break;
        }
    if (ok) {
      Metric g_on_m = make_metric(ctx.m, ctx.m2, ctx.sigma, g_back.g);
      Metric g_fwd = metric_twist(ctx, g_on_m, g_twisted.braiding);
      for (Index i = 0; i < g.g.rows && ok; ++i)
        for (Index j = 0; j < g.g.cols; ++j)
          if (!is_zero(Vec(g_fwd.g.at(i, j) - g_twisted.g.at(i, j)))) {
            ok = false;
            break;
          }
    }
    if (!ok) {
      metric_rt.pass = false;
      metric_rt.witness = "((g')_{gamma^-1})_gamma != g'";
    }
  }
  out.push_back(metric_rt);

  CheckResult sol{"untwist.solution_space_bijection"};
  {
    BiinvariantSpace before = enumerate_biinvariant(*ctx.sigma);
    BiinvariantSpace after = enumerate_biinvariant(*g_twisted.braiding);
    if (before.basis.size() != after.basis.size()) {
      sol.pass = false;
      sol.witness = "dimensions differ: " + std::to_string(before.basis.size()) + " vs " +
                    std::to_string(after.basis.size());
    } else if (!before.basis.empty()) {
      const Bimod& m = *ctx.m;
      const Index d = m.d;
      const Index dim = static_cast<Index>(before.basis.size());
      // Images of the basis under the closed form must span the twisted space.
      Mat space(d * d, dim), images(d * d, dim);
      for (Index s = 0; s < dim; ++s)
        for (Index i = 0; i < d; ++i)
          for (Index j = 0; j < d; ++j) {
            space(i * d + j, s) = after.basis[s](i, j);
            Scalar acc(0);
            for (Index k = 0; k < d; ++k)
              for (Index l = 0; l < d; ++l) {
                const Scalar& lam = before.basis[s](k, l);
                if (!lam.is_zero())
                  acc += lam * ctx.cocycle.eval_bar(m.R.at(k, i), m.R.at(l, j));
              }
            images(i * d + j, s) = acc;
          }
      if (rank(images) != dim || !solve(space, images).exists) {
        sol.pass = false;
        sol.witness = "metric_twist does not map a basis onto a basis";
      }
    }
  }
  out.push_back(sol);

  return out;
}

}  // namespace bicotwist
