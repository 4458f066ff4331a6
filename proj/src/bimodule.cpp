#include "bicotwist/bimodule.hpp"

#include <sstream>

namespace bicotwist {

namespace {

std::string pair_witness(const HopfAlgebra& a, Index ai, const std::string& v) {
  return "(" + a.label(ai) + ", " + v + ")";
}

}  // namespace

std::vector<CheckResult> verify_yd(const YDModule& yd) {
  std::vector<CheckResult> out;
  const HopfAlgebra& a = *yd.host;
  const Index n = a.n, d = yd.dim;
  if (yd.action.d0 != n || yd.action.d1 != d || yd.action.d2 != d)
    throw Error("yd action tensor shape mismatch");
  if (yd.coaction.d0 != d || yd.coaction.d1 != d || yd.coaction.d2 != n)
    throw Error("yd coaction tensor shape mismatch");

  CheckResult coact{"yd.coaction_axioms"};
  for (Index i = 0; i < d && coact.pass; ++i) {
    // (rho (x) id)rho vs (id (x) Delta)rho on v_i, coefficients at (k,b,c).
    Tensor3 lhs(d, n, n), rhs(d, n, n);
    for (Index j = 0; j < d; ++j)
      for (Index c = 0; c < n; ++c) {
        const Scalar& w = yd.coaction(i, j, c);
        if (w.is_zero()) continue;
        for (Index k = 0; k < d; ++k)
          for (Index b = 0; b < n; ++b) {
            const Scalar& u = yd.coaction(j, k, b);
            if (!u.is_zero()) lhs(k, b, c) += w * u;
          }
        for (const auto& [p, q, v] : a.comult_nz[c]) rhs(j, p, q) += w * v;
      }
    for (Index k = 0; k < d && coact.pass; ++k)
      for (Index b = 0; b < n && coact.pass; ++b)
        for (Index c = 0; c < n; ++c)
          if (lhs(k, b, c) != rhs(k, b, c)) {
            coact.pass = false;
            coact.witness = "coassociativity at v" + std::to_string(i);
            break;
          }
    if (!coact.pass) break;
    for (Index j = 0; j < d; ++j) {
      Scalar acc(0);
      for (Index c = 0; c < n; ++c) acc += yd.coaction(i, j, c) * a.counit(c);
      if (acc != (i == j ? Scalar(1) : Scalar(0))) {
        coact.pass = false;
        coact.witness = "counit law at v" + std::to_string(i);
        break;
      }
    }
  }
  out.push_back(coact);

  CheckResult act{"yd.action_axioms"};
  for (Index p = 0; p < n && act.pass; ++p)
    for (Index q = 0; q < n && act.pass; ++q)
      for (Index i = 0; i < d && act.pass; ++i)
        for (Index k = 0; k < d; ++k) {
          Scalar lhs(0), rhs(0);
          for (Index j = 0; j < d; ++j) lhs += yd.action(p, i, j) * yd.action(q, j, k);
          for (Index c = 0; c < n; ++c) rhs += a.mult(p, q, c) * yd.action(c, i, k);
          if (lhs != rhs) {
            act.pass = false;
            act.witness = pair_witness(a, p, "v" + std::to_string(i)) + " vs " + a.label(q);
            break;
          }
        }
  if (act.pass) {
    for (Index i = 0; i < d && act.pass; ++i)
      for (Index j = 0; j < d; ++j) {
        Scalar acc(0);
        for (Index c = 0; c < n; ++c) acc += a.unit(c) * yd.action(c, i, j);
        if (acc != (i == j ? Scalar(1) : Scalar(0))) {
          act.pass = false;
          act.witness = "unit action at v" + std::to_string(i);
          break;
        }
      }
  }
  out.push_back(act);

  CheckResult comp{"yd.compatibility"};
  for (Index b = 0; b < n && comp.pass; ++b)
    for (Index i = 0; i < d; ++i) {
      // lhs: rho(v_i <| e_b), coefficients (k, t).
      Mat lhs = Mat::Zero(d, n), rhs = Mat::Zero(d, n);
      for (Index j = 0; j < d; ++j) {
        const Scalar& w = yd.action(b, i, j);
        if (w.is_zero()) continue;
        for (Index k = 0; k < d; ++k)
          for (Index t = 0; t < n; ++t) lhs(k, t) += w * yd.coaction(j, k, t);
      }
      for (const auto& [p, q, r, v] : a.comult2_nz[b])
        for (Index j = 0; j < d; ++j)
          for (Index c = 0; c < n; ++c) {
            const Scalar& w = yd.coaction(i, j, c);
            if (w.is_zero()) continue;
            Vec alg =
                a.product(a.product(a.antipode_of(basis_vec(n, p)), basis_vec(n, c)),
                          basis_vec(n, r));
            for (Index k = 0; k < d; ++k) {
              const Scalar& u = yd.action(q, j, k);
              if (u.is_zero()) continue;
              for (Index t = 0; t < n; ++t)
                if (!alg(t).is_zero()) rhs(k, t) += v * w * u * alg(t);
            }
          }
      if (!is_zero(Mat(lhs - rhs))) {
        comp.pass = false;
        comp.witness = pair_witness(a, b, "v" + std::to_string(i));
        break;
      }
    }
  out.push_back(comp);
  return out;
}

void Bimod::derive() {
  const HopfAlgebra& a = *algebra;
  const Index n = a.n;
  d = omega.cols();
  if (D <= 0 || d <= 0) throw Error("bimodule: empty underlying space or invariant basis");

  // omega columns must be left-invariant.
  for (Index i = 0; i < d; ++i) {
    Vec img = lco * omega.col(i);
    for (Index p = 0; p < n; ++p)
      for (Index m = 0; m < D; ++m)
        if (img(p * D + m) != a.unit(p) * omega(m, i))
          throw Error("bimodule: provided invariant basis is not left-invariant");
  }
  if (rank(omega) != d) throw Error("bimodule: invariant basis not linearly independent");

  // Read off R from rco(omega_i) = sum_j omega_j (x) R_(j,i).
  Mat pairing = Mat::Zero(D * n, d * n);
  for (Index j = 0; j < d; ++j)
    for (Index b = 0; b < n; ++b)
      for (Index m = 0; m < D; ++m) pairing(m * n + b, j * n + b) = omega(m, j);
  Mat target(D * n, d);
  for (Index i = 0; i < d; ++i) target.col(i) = rco * omega.col(i);
  SolveResult sol = solve(pairing, target);
  if (!sol.exists) throw Error("bimodule: right coaction does not preserve span(omega)");
  R = AMat(d, d, n);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index b = 0; b < n; ++b) R.at(j, i)(b) = sol.solution(j * n + b, i);

  eta = Mat::Zero(D, d);
  for (Index k = 0; k < d; ++k) {
    Vec acc = Vec::Zero(D);
    for (Index j = 0; j < d; ++j)
      acc += right_mult_alg(omega.col(j), a.antipode_of(R.at(j, k)));
    eta.col(k) = acc;
  }
  // eta must be right-invariant (theorem; abort on internal inconsistency).
  for (Index k = 0; k < d; ++k) {
    Vec img = rco * eta.col(k);
    for (Index m = 0; m < D; ++m)
      for (Index b = 0; b < n; ++b)
        if (img(m * n + b) != eta(m, k) * a.unit(b))
          throw Error("bimodule: derived eta basis is not right-invariant");
  }

  phi_r = Mat::Zero(D, d * n);
  phi_l = Mat::Zero(D, d * n);
  for (Index i = 0; i < d; ++i)
    for (Index b = 0; b < n; ++b) {
      phi_r.col(i * n + b) = ract[b] * omega.col(i);
      phi_l.col(i * n + b) = lact[b] * omega.col(i);
    }
  if (D != d * n) throw Error("bimodule: dimension is not free of rank d over the algebra");
  auto inv_r = inverse(phi_r);
  if (!inv_r) throw Error("bimodule: right multiplication map is not an isomorphism");
  phi_r_inv = std::move(*inv_r);
  auto inv_l = inverse(phi_l);
  if (!inv_l) throw Error("bimodule: left multiplication map is not an isomorphism");
  phi_l_inv = std::move(*inv_l);
}

Vec Bimod::left_mult_alg(const Vec& a, const Vec& x) const {
  Vec out = Vec::Zero(D);
  for (Index b = 0; b < algebra->n; ++b)
    if (!a(b).is_zero()) out += a(b) * (lact[b] * x);
  return out;
}

Vec Bimod::right_mult_alg(const Vec& x, const Vec& a) const {
  Vec out = Vec::Zero(D);
  for (Index b = 0; b < algebra->n; ++b)
    if (!a(b).is_zero()) out += a(b) * (ract[b] * x);
  return out;
}

std::vector<Vec> Bimod::normal_form(const Vec& x) const {
  const Index n = algebra->n;
  Vec y = phi_r_inv * x;
  std::vector<Vec> coeffs(d);
  for (Index i = 0; i < d; ++i) coeffs[i] = y.segment(i * n, n);
  return coeffs;
}

std::vector<Vec> Bimod::left_coeffs(const Vec& x) const {
  const Index n = algebra->n;
  Vec y = phi_l_inv * x;
  std::vector<Vec> coeffs(d);
  for (Index i = 0; i < d; ++i) coeffs[i] = y.segment(i * n, n);
  return coeffs;
}

Vec Bimod::from_normal_form(const std::vector<Vec>& coeffs) const {
  const Index n = algebra->n;
  Vec flat = Vec::Zero(d * n);
  for (Index i = 0; i < d; ++i) flat.segment(i * n, n) = coeffs[static_cast<std::size_t>(i)];
  return phi_r * flat;
}

Vec Bimod::invariant_coords(const Vec& z) const {
  SolveResult s = solve(omega, z);
  if (!s.exists) throw Error("bimodule: vector is not left-invariant");
  return s.solution.col(0);
}

std::vector<std::vector<Bimod::TwoSidedLeg>> Bimod::two_sided_legs() const {
  const Index n = algebra->n;
  std::vector<std::vector<TwoSidedLeg>> out(D);
  for (Index x = 0; x < D; ++x) {
    Vec first = lco.col(x);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < D; ++mid) {
        const Scalar& v1 = first(p * D + mid);
        if (v1.is_zero()) continue;
        Vec second = rco.col(mid);
        for (Index mm = 0; mm < D; ++mm)
          for (Index q = 0; q < n; ++q) {
            const Scalar& v2 = second(mm * n + q);
            if (!v2.is_zero()) out[x].push_back({p, mm, q, v1 * v2});
          }
      }
  }
  return out;
}

Bimod build_bimodule(std::shared_ptr<const HopfAlgebra> algebra, const YDModule& yd) {
  auto yd_checks = verify_yd(yd);
  for (const auto& c : yd_checks)
    if (!c.pass) throw Error("yd module invalid: " + c.id + " witness " + c.witness);

  const HopfAlgebra& a = *algebra;
  const Index n = a.n, dv = yd.dim;
  Bimod m;
  m.algebra = algebra;
  m.D = n * dv;
  auto idx = [dv](Index av, Index i) { return av * dv + i; };

  m.lact.assign(n, Mat::Zero(m.D, m.D));
  m.ract.assign(n, Mat::Zero(m.D, m.D));
  m.lco = Mat::Zero(n * m.D, m.D);
  m.rco = Mat::Zero(m.D * n, m.D);

  for (Index b = 0; b < n; ++b)
    for (Index av = 0; av < n; ++av)
      for (Index i = 0; i < dv; ++i) {
        for (Index c = 0; c < n; ++c) {
          const Scalar& w = a.mult(b, av, c);
          if (!w.is_zero()) m.lact[b](idx(c, i), idx(av, i)) += w;
        }
        for (const auto& [p, q, v] : a.comult_nz[b])
          for (Index c = 0; c < n; ++c) {
            const Scalar& w = a.mult(av, p, c);
            if (w.is_zero()) continue;
            for (Index j = 0; j < dv; ++j) {
              const Scalar& u = yd.action(q, i, j);
              if (!u.is_zero()) m.ract[b](idx(c, j), idx(av, i)) += v * w * u;
            }
          }
      }

  for (Index av = 0; av < n; ++av)
    for (Index i = 0; i < dv; ++i)
      for (const auto& [p, q, v] : a.comult_nz[av]) {
        m.lco(p * m.D + idx(q, i), idx(av, i)) += v;
        for (Index j = 0; j < dv; ++j)
          for (Index c = 0; c < n; ++c) {
            const Scalar& w = yd.coaction(i, j, c);
            if (w.is_zero()) continue;
            for (Index t = 0; t < n; ++t) {
              const Scalar& u = a.mult(q, c, t);
              if (!u.is_zero()) m.rco(idx(p, j) * n + t, idx(av, i)) += v * w * u;
            }
          }
      }

  m.omega = Mat::Zero(m.D, dv);
  for (Index i = 0; i < dv; ++i)
    for (Index av = 0; av < n; ++av) m.omega(idx(av, i), i) = a.unit(av);

  m.derive();
  return m;
}

Bimod regular_bimodule(std::shared_ptr<const HopfAlgebra> algebra) {
  const HopfAlgebra& a = *algebra;
  const Index n = a.n;
  Bimod m;
  m.algebra = algebra;
  m.D = n;
  m.lact.assign(n, Mat());
  m.ract.assign(n, Mat());
  for (Index b = 0; b < n; ++b) {
    m.lact[b] = a.left_mult(basis_vec(n, b));
    m.ract[b] = a.right_mult(basis_vec(n, b));
  }
  m.lco = Mat::Zero(n * n, n);
  m.rco = Mat::Zero(n * n, n);
  for (Index i = 0; i < n; ++i)
    for (const auto& [p, q, v] : a.comult_nz[i]) {
      m.lco(p * n + q, i) += v;
      m.rco(p * n + q, i) += v;
    }
  m.omega = a.unit;
  m.derive();
  return m;
}

Bimod tensor_bimodule(const Bimod& mm, const Bimod& nn) {
  if (mm.algebra.get() != nn.algebra.get())
    throw Error("tensor_bimodule: factors live over different algebras");
  const HopfAlgebra& a = *mm.algebra;
  const Index n = a.n, dm = mm.d, dn = nn.d;
  Bimod t;
  t.algebra = mm.algebra;
  t.D = dm * dn * n;
  auto idx = [dn, n](Index al, Index be, Index av) { return (al * dn + be) * n + av; };

  // Commutation data: e_b . omega_alpha = sum omega_alpha' . K[b][alpha][alpha'].
  std::vector<std::vector<std::vector<Vec>>> km(n), kn(n);
  for (Index b = 0; b < n; ++b) {
    km[b].resize(dm);
    for (Index al = 0; al < dm; ++al) km[b][al] = mm.normal_form(mm.lact[b] * mm.omega.col(al));
    kn[b].resize(dn);
    for (Index be = 0; be < dn; ++be) kn[b][be] = nn.normal_form(nn.lact[b] * nn.omega.col(be));
  }

  t.lact.assign(n, Mat::Zero(t.D, t.D));
  t.ract.assign(n, Mat::Zero(t.D, t.D));
  t.lco = Mat::Zero(n * t.D, t.D);
  t.rco = Mat::Zero(t.D * n, t.D);

  for (Index b = 0; b < n; ++b)
    for (Index al = 0; al < dm; ++al)
      for (Index be = 0; be < dn; ++be) {
        // b . (omega_al (x) omega_be) in right-coefficient form.
        for (Index alp = 0; alp < dm; ++alp) {
          const Vec& z = km[b][al][alp];
          if (is_zero(z)) continue;
          for (Index bep = 0; bep < dn; ++bep) {
            Vec w = Vec::Zero(n);
            for (Index c = 0; c < n; ++c)
              if (!z(c).is_zero()) w += z(c) * kn[c][be][bep];
            if (is_zero(w)) continue;
            for (Index av = 0; av < n; ++av) {
              Vec prod = a.product(w, basis_vec(n, av));
              for (Index tt = 0; tt < n; ++tt)
                if (!prod(tt).is_zero()) t.lact[b](idx(alp, bep, tt), idx(al, be, av)) += prod(tt);
            }
          }
        }
        for (Index av = 0; av < n; ++av)
          for (Index c = 0; c < n; ++c) {
            const Scalar& w = a.mult(av, b, c);
            if (!w.is_zero()) t.ract[b](idx(al, be, c), idx(al, be, av)) += w;
          }
      }

  // Coactions.
  AMat rr(dm * dn, dm * dn, n);
  for (Index alp = 0; alp < dm; ++alp)
    for (Index al = 0; al < dm; ++al)
      for (Index bep = 0; bep < dn; ++bep)
        for (Index be = 0; be < dn; ++be)
          rr.at(alp * dn + bep, al * dn + be) = a.product(mm.R.at(alp, al), nn.R.at(bep, be));

  for (Index al = 0; al < dm; ++al)
    for (Index be = 0; be < dn; ++be)
      for (Index av = 0; av < n; ++av)
        for (const auto& [p, q, v] : a.comult_nz[av]) {
          t.lco(p * t.D + idx(al, be, q), idx(al, be, av)) += v;
          for (Index alp = 0; alp < dm; ++alp)
            for (Index bep = 0; bep < dn; ++bep) {
              const Vec& coef = rr.at(alp * dn + bep, al * dn + be);
              if (is_zero(coef)) continue;
              Vec prod = a.product(coef, basis_vec(n, q));
              for (Index tt = 0; tt < n; ++tt)
                if (!prod(tt).is_zero())
                  t.rco(idx(alp, bep, p) * n + tt, idx(al, be, av)) += v * prod(tt);
            }
        }

  t.omega = Mat::Zero(t.D, dm * dn);
  for (Index al = 0; al < dm; ++al)
    for (Index be = 0; be < dn; ++be)
      for (Index av = 0; av < n; ++av) t.omega(idx(al, be, av), al * dn + be) = a.unit(av);

  t.derive();
  return t;
}

Vec pure_tensor(const Bimod& m, const Bimod& n, const Vec& x, const Vec& y) {
  const Index nn = m.algebra->n, dn = n.d;
  Vec out = Vec::Zero(m.d * n.d * nn);
  std::vector<Vec> cx = m.normal_form(x);
  for (Index al = 0; al < m.d; ++al) {
    if (is_zero(cx[al])) continue;
    Vec z = n.left_mult_alg(cx[al], y);
    std::vector<Vec> cz = n.normal_form(z);
    for (Index be = 0; be < dn; ++be)
      for (Index av = 0; av < nn; ++av) out((al * dn + be) * nn + av) += cz[be](av);
  }
  return out;
}

std::vector<CheckResult> verify_bicovariance(const Bimod& m) {
  std::vector<CheckResult> out;
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n, D = m.D;

  auto witness = [&](Index col) { return "basis #" + std::to_string(col); };

  CheckResult lcom{"bimod.left_comodule"};
  for (Index x = 0; x < D && lcom.pass; ++x) {
    Vec y = m.lco.col(x);
    Vec lhs = Vec::Zero(n * n * D), rhs = Vec::Zero(n * n * D);
    Vec eps = Vec::Zero(D);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < D; ++mid) {
        const Scalar& v = y(p * D + mid);
        if (v.is_zero()) continue;
        for (const auto& [r, s, w] : a.comult_nz[p]) lhs((r * n + s) * D + mid) += v * w;
        Vec inner = m.lco.col(mid);
        for (Index q = 0; q < n; ++q)
          for (Index mmid = 0; mmid < D; ++mmid) {
            const Scalar& u = inner(q * D + mmid);
            if (!u.is_zero()) rhs((p * n + q) * D + mmid) += v * u;
          }
        eps(mid) += a.counit(p) * v;
      }
    Vec e = basis_vec(D, x);
    if (!is_zero(Vec(lhs - rhs)) || !is_zero(Vec(eps - e))) {
      lcom.pass = false;
      lcom.witness = witness(x);
    }
  }
  out.push_back(lcom);

  CheckResult rcom{"bimod.right_comodule"};
  for (Index x = 0; x < D && rcom.pass; ++x) {
    Vec y = m.rco.col(x);
    Vec lhs = Vec::Zero(D * n * n), rhs = Vec::Zero(D * n * n);
    Vec eps = Vec::Zero(D);
    for (Index mid = 0; mid < D; ++mid)
      for (Index p = 0; p < n; ++p) {
        const Scalar& v = y(mid * n + p);
        if (v.is_zero()) continue;
        // (rco (x) id) rco vs (id (x) Delta) rco at (mm, q, r).
        Vec inner = m.rco.col(mid);
        for (Index mmid = 0; mmid < D; ++mmid)
          for (Index q = 0; q < n; ++q) {
            const Scalar& u = inner(mmid * n + q);
            if (!u.is_zero()) lhs((mmid * n + q) * n + p) += v * u;
          }
        for (const auto& [r, s, w] : a.comult_nz[p]) rhs((mid * n + r) * n + s) += v * w;
        eps(mid) += a.counit(p) * v;
      }
    Vec e = basis_vec(D, x);
    if (!is_zero(Vec(lhs - rhs)) || !is_zero(Vec(eps - e))) {
      rcom.pass = false;
      rcom.witness = witness(x);
    }
  }
  out.push_back(rcom);

  CheckResult mod{"bimod.module_axioms"};
  for (Index b = 0; b < n && mod.pass; ++b)
    for (Index c = 0; c < n; ++c) {
      Mat lhs_l = m.lact[b] * m.lact[c];
      Mat rhs_l = Mat::Zero(D, D);
      Mat lhs_r = m.ract[c] * m.ract[b];
      Mat rhs_r = Mat::Zero(D, D);
      for (Index k = 0; k < n; ++k) {
        const Scalar& w = a.mult(b, c, k);
        if (w.is_zero()) continue;
        rhs_l += w * m.lact[k];
        rhs_r += w * m.ract[k];
      }
      if (!is_zero(Mat(lhs_l - rhs_l)) || !is_zero(Mat(lhs_r - rhs_r))) {
        mod.pass = false;
        mod.witness = "(" + a.label(b) + ", " + a.label(c) + ")";
        break;
      }
      if (!is_zero(Mat(m.lact[b] * m.ract[c] - m.ract[c] * m.lact[b]))) {
        mod.pass = false;
        mod.witness = "actions do not commute at (" + a.label(b) + ", " + a.label(c) + ")";
        break;
      }
    }
  if (mod.pass) {
    Mat unit_l = Mat::Zero(D, D), unit_r = Mat::Zero(D, D);
    for (Index b = 0; b < n; ++b) {
      if (a.unit(b).is_zero()) continue;
      unit_l += a.unit(b) * m.lact[b];
      unit_r += a.unit(b) * m.ract[b];
    }
    if (!is_zero(Mat(unit_l - Mat::Identity(D, D))) || !is_zero(Mat(unit_r - Mat::Identity(D, D)))) {
      mod.pass = false;
      mod.witness = "unit does not act as identity";
    }
  }
  out.push_back(mod);

  CheckResult lcov{"bimod.left_covariance"};
  for (Index b = 0; b < n && lcov.pass; ++b)
    for (Index x = 0; x < D; ++x) {
      // Delta_M(e_b . x) vs Delta(e_b) Delta_M(x), and the right-action twin.
      Vec y = m.lco.col(x);
      Vec lhs_l = m.lco * (m.lact[b] * basis_vec(D, x));
      Vec lhs_r = m.lco * (m.ract[b] * basis_vec(D, x));
      Vec rhs_l = Vec::Zero(n * D), rhs_r = Vec::Zero(n * D);
      for (Index p = 0; p < n; ++p)
        for (Index mid = 0; mid < D; ++mid) {
          const Scalar& v = y(p * D + mid);
          if (v.is_zero()) continue;
          for (const auto& [r, s, w] : a.comult_nz[b]) {
            Vec prod_l = a.product(basis_vec(n, r), basis_vec(n, p));
            Vec prod_r = a.product(basis_vec(n, p), basis_vec(n, r));
            for (Index t = 0; t < n; ++t) {
              if (!prod_l(t).is_zero())
                rhs_l.segment(t * D, D) += v * w * prod_l(t) * (m.lact[s] * basis_vec(D, mid));
              if (!prod_r(t).is_zero())
                rhs_r.segment(t * D, D) += v * w * prod_r(t) * (m.ract[s] * basis_vec(D, mid));
            }
          }
        }
      if (!is_zero(Vec(lhs_l - rhs_l)) || !is_zero(Vec(lhs_r - rhs_r))) {
        lcov.pass = false;
        lcov.witness = "(" + a.label(b) + ", " + witness(x) + ")";
        break;
      }
    }
  out.push_back(lcov);

  CheckResult rcov{"bimod.right_covariance"};
  for (Index b = 0; b < n && rcov.pass; ++b)
    for (Index x = 0; x < D; ++x) {
      Vec y = m.rco.col(x);
      Vec lhs_l = m.rco * (m.lact[b] * basis_vec(D, x));
      Vec lhs_r = m.rco * (m.ract[b] * basis_vec(D, x));
      Vec rhs_l = Vec::Zero(D * n), rhs_r = Vec::Zero(D * n);
      for (Index mid = 0; mid < D; ++mid)
        for (Index p = 0; p < n; ++p) {
          const Scalar& v = y(mid * n + p);
          if (v.is_zero()) continue;
          for (const auto& [r, s, w] : a.comult_nz[b]) {
            Vec prod_l = a.product(basis_vec(n, s), basis_vec(n, p));
            Vec prod_r = a.product(basis_vec(n, p), basis_vec(n, s));
            Vec ml = m.lact[r] * basis_vec(D, mid);
            Vec mr = m.ract[r] * basis_vec(D, mid);
            for (Index t = 0; t < n; ++t)
              for (Index mmid = 0; mmid < D; ++mmid) {
                if (!prod_l(t).is_zero() && !ml(mmid).is_zero())
                  rhs_l(mmid * n + t) += v * w * prod_l(t) * ml(mmid);
                if (!prod_r(t).is_zero() && !mr(mmid).is_zero())
                  rhs_r(mmid * n + t) += v * w * prod_r(t) * mr(mmid);
              }
          }
        }
      if (!is_zero(Vec(lhs_l - rhs_l)) || !is_zero(Vec(lhs_r - rhs_r))) {
        rcov.pass = false;
        rcov.witness = "(" + a.label(b) + ", " + witness(x) + ")";
        break;
      }
    }
  out.push_back(rcov);

  CheckResult mixed{"bimod.mixed_compatibility"};
  for (Index x = 0; x < D && mixed.pass; ++x) {
    // (id (x) rco) lco vs (lco (x) id) rco, coefficients (p, mm, q).
    Vec lhs = Vec::Zero(n * D * n), rhs = Vec::Zero(n * D * n);
    Vec yl = m.lco.col(x);
    for (Index p = 0; p < n; ++p)
      for (Index mid = 0; mid < D; ++mid) {
        const Scalar& v = yl(p * D + mid);
        if (v.is_zero()) continue;
        Vec inner = m.rco.col(mid);
        for (Index mmid = 0; mmid < D; ++mmid)
          for (Index q = 0; q < n; ++q) {
            const Scalar& u = inner(mmid * n + q);
            if (!u.is_zero()) lhs((p * D + mmid) * n + q) += v * u;
          }
      }
    Vec yr = m.rco.col(x);
    for (Index mid = 0; mid < D; ++mid)
      for (Index q = 0; q < n; ++q) {
        const Scalar& v = yr(mid * n + q);
        if (v.is_zero()) continue;
        Vec inner = m.lco.col(mid);
        for (Index p = 0; p < n; ++p)
          for (Index mmid = 0; mmid < D; ++mmid) {
            const Scalar& u = inner(p * D + mmid);
            if (!u.is_zero()) rhs((p * D + mmid) * n + q) += v * u;
          }
      }
    if (!is_zero(Vec(lhs - rhs))) {
      mixed.pass = false;
      mixed.witness = witness(x);
    }
  }
  out.push_back(mixed);

  CheckResult rmat{"bimod.r_matrix"};
  {
    const Index d = m.d;
    for (Index i = 0; i < d && rmat.pass; ++i)
      for (Index j = 0; j < d; ++j) {
        // Delta(R_ij) = sum_k R_ik (x) R_kj and eps(R_ij) = delta_ij.
        Vec lhs = Vec::Zero(n * n), rhs = Vec::Zero(n * n);
        const Vec& rij = m.R.at(i, j);
        for (Index c = 0; c < n; ++c) {
          if (rij(c).is_zero()) continue;
          for (const auto& [p, q, v] : a.comult_nz[c]) lhs(p * n + q) += rij(c) * v;
        }
        for (Index k = 0; k < d; ++k) {
          const Vec& rik = m.R.at(i, k);
          const Vec& rkj = m.R.at(k, j);
          for (Index p = 0; p < n; ++p) {
            if (rik(p).is_zero()) continue;
            for (Index q = 0; q < n; ++q)
              if (!rkj(q).is_zero()) rhs(p * n + q) += rik(p) * rkj(q);
          }
        }
        Scalar eps = a.counit_of(rij);
        Vec s_left = Vec::Zero(n), s_right = Vec::Zero(n);
        for (Index k = 0; k < d; ++k) {
          s_left += a.product(a.antipode_of(m.R.at(i, k)), m.R.at(k, j));
          s_right += a.product(m.R.at(i, k), a.antipode_of(m.R.at(k, j)));
        }
        Vec expected = (i == j ? Scalar(1) : Scalar(0)) * a.unit;
        if (!is_zero(Vec(lhs - rhs)) || eps != (i == j ? Scalar(1) : Scalar(0)) ||
            !is_zero(Vec(s_left - expected)) || !is_zero(Vec(s_right - expected))) {
          rmat.pass = false;
          rmat.witness = "R(" + std::to_string(i) + "," + std::to_string(j) + ")";
          break;
        }
      }
  }
  out.push_back(rmat);

  CheckResult inv{"bimod.invariant_subspace"};
  {
    // dim ker(lco - unit (x) id) must equal d.
    Mat k = Mat::Zero(n * D, D);
    for (Index x = 0; x < D; ++x) {
      k.col(x) = m.lco.col(x);
      for (Index p = 0; p < n; ++p) k(p * D + x, x) -= a.unit(p);
    }
    Index dim = kernel(k).cols();
    if (dim != m.d) {
      inv.pass = false;
      inv.witness = "dim ker = " + std::to_string(dim) + ", expected " + std::to_string(m.d);
    }
  }
  out.push_back(inv);

  return out;
}

std::vector<CheckResult> check_covariant_map(const Bimod& m, const Bimod& n, const Mat& t,
                                             Covariance which, bool check_left_linear,
                                             bool check_right_linear) {
  if (t.rows() != n.D || t.cols() != m.D) throw Error("check_covariant_map: shape mismatch");
  std::vector<CheckResult> out;
  const Index nn = m.algebra->n;

  if (which == Covariance::Left || which == Covariance::Bi) {
    CheckResult c{"map.left_covariant"};
    for (Index x = 0; x < m.D && c.pass; ++x) {
      Vec y = m.lco.col(x);
      Vec lhs = Vec::Zero(nn * n.D);
      for (Index p = 0; p < nn; ++p)
        for (Index mid = 0; mid < m.D; ++mid) {
          const Scalar& v = y(p * m.D + mid);
          if (!v.is_zero()) lhs.segment(p * n.D, n.D) += v * (t * basis_vec(m.D, mid));
        }
      Vec rhs = n.lco * (t * basis_vec(m.D, x));
      if (!is_zero(Vec(lhs - rhs))) {
        c.pass = false;
        c.witness = "basis #" + std::to_string(x);
      }
    }
    out.push_back(c);
  }
  if (which == Covariance::Right || which == Covariance::Bi) {
    CheckResult c{"map.right_covariant"};
    for (Index x = 0; x < m.D && c.pass; ++x) {
      Vec y = m.rco.col(x);
      Vec lhs = Vec::Zero(n.D * nn);
      for (Index mid = 0; mid < m.D; ++mid)
        for (Index p = 0; p < nn; ++p) {
          const Scalar& v = y(mid * nn + p);
          if (v.is_zero()) continue;
          Vec timg = t * basis_vec(m.D, mid);
          for (Index mmid = 0; mmid < n.D; ++mmid)
            if (!timg(mmid).is_zero()) lhs(mmid * nn + p) += v * timg(mmid);
        }
      Vec rhs = n.rco * (t * basis_vec(m.D, x));
      if (!is_zero(Vec(lhs - rhs))) {
        c.pass = false;
        c.witness = "basis #" + std::to_string(x);
      }
    }
    out.push_back(c);
  }
  if (check_left_linear) {
    CheckResult c{"map.left_linear"};
    for (Index b = 0; b < nn; ++b)
      if (!is_zero(Mat(t * m.lact[b] - n.lact[b] * t))) {
        c.pass = false;
        c.witness = m.algebra->label(b);
        break;
      }
    out.push_back(c);
  }
  if (check_right_linear) {
    CheckResult c{"map.right_linear"};
    for (Index b = 0; b < nn; ++b)
      if (!is_zero(Mat(t * m.ract[b] - n.ract[b] * t))) {
        c.pass = false;
        c.witness = m.algebra->label(b);
        break;
      }
    out.push_back(c);
  }
  return out;
}

YDModule extract_yd(const Bimod& m) {
  const HopfAlgebra& a = *m.algebra;
  const Index n = a.n, d = m.d;
  YDModule yd;
  yd.host = m.algebra;
  yd.dim = d;
  yd.action = Tensor3(n, d, d);
  yd.coaction = Tensor3(d, d, n);
  for (Index b = 0; b < n; ++b)
    for (Index i = 0; i < d; ++i) {
      // omega_i <| e_b = S(b_(1)) . omega_i . b_(2), a left-invariant element.
      Vec acc = Vec::Zero(m.D);
      for (const auto& [p, q, v] : a.comult_nz[b]) {
        Vec z = m.right_mult_alg(m.omega.col(i), basis_vec(n, q));
        acc += v * m.left_mult_alg(a.antipode_of(basis_vec(n, p)), z);
      }
      Vec coords = m.invariant_coords(acc);
      for (Index j = 0; j < d; ++j) yd.action(b, i, j) = coords(j);
    }
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index b = 0; b < n; ++b) yd.coaction(i, j, b) = m.R.at(j, i)(b);
  return yd;
}

std::optional<Scalar> scalar_of(const HopfAlgebra& algebra, const Vec& a) {
  Scalar eps = algebra.counit_of(a);
  if (!is_zero(Vec(a - eps * algebra.unit))) return std::nullopt;
  return eps;
}

}  // namespace bicotwist
