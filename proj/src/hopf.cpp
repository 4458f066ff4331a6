#include "bicotwist/hopf.hpp"

#include <sstream>

namespace bicotwist {

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Vec basis_vec(Index n, Index i) {
  Vec v = Vec::Zero(n);
  v(i) = Scalar(1);
  return v;
}

void HopfAlgebra::finalize() {
  if (n <= 0) throw Error("hopf algebra dimension must be positive");
  if (mult.d0 != n || mult.d1 != n || mult.d2 != n) throw Error("mult tensor shape mismatch");
  if (comult.d0 != n || comult.d1 != n || comult.d2 != n)
    throw Error("comult tensor shape mismatch");
  if (unit.size() != n || counit.size() != n) throw Error("unit/counit shape mismatch");
  if (antipode.rows() != n || antipode.cols() != n) throw Error("antipode shape mismatch");
  if (labels.size() != static_cast<std::size_t>(n)) {
    labels.resize(n);
    for (Index i = 0; i < n; ++i)
      if (labels[i].empty()) labels[i] = "e" + std::to_string(i);
  }

  comult_nz.assign(n, {});
  for (Index i = 0; i < n; ++i)
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q)
        if (!comult(i, p, q).is_zero()) comult_nz[i].push_back({p, q, comult(i, p, q)});

  comult2_nz.assign(n, {});
  for (Index i = 0; i < n; ++i)
    for (const auto& [t, r, v1] : comult_nz[i])
      for (const auto& [p, q, v2] : comult_nz[t]) {
        Scalar v = v1 * v2;
        if (!v.is_zero()) comult2_nz[i].push_back({p, q, r, v});
      }
}

Vec HopfAlgebra::product(const Vec& x, const Vec& y) const {
  Vec out = Vec::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (x(i).is_zero()) continue;
    for (Index j = 0; j < n; ++j) {
      if (y(j).is_zero()) continue;
      Scalar xy = x(i) * y(j);
      for (Index k = 0; k < n; ++k) {
        const Scalar& m = mult(i, j, k);
        if (!m.is_zero()) out(k) += xy * m;
      }
    }
  }
  return out;
}

Mat HopfAlgebra::left_mult(const Vec& a) const {
  Mat out = Mat::Zero(n, n);
  for (Index j = 0; j < n; ++j) out.col(j) = product(a, basis_vec(n, j));
  return out;
}

Mat HopfAlgebra::right_mult(const Vec& a) const {
  Mat out = Mat::Zero(n, n);
  for (Index j = 0; j < n; ++j) out.col(j) = product(basis_vec(n, j), a);
  return out;
}

Scalar HopfAlgebra::counit_of(const Vec& x) const {
  Scalar out(0);
  for (Index i = 0; i < n; ++i)
    if (!x(i).is_zero()) out += x(i) * counit(i);
  return out;
}

Vec HopfAlgebra::antipode_of(const Vec& x) const { return antipode * x; }

std::string HopfAlgebra::label(Index i) const { return labels[i]; }

std::string HopfAlgebra::element_str(const Vec& x) const {
  std::ostringstream os;
  bool first = true;
  for (Index i = 0; i < n; ++i) {
    if (x(i).is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << x(i).str() << ")*" << labels[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool HopfAlgebra::is_commutative() const {
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        if (mult(i, j, k) != mult(j, i, k)) return false;
  return true;
}

bool HopfAlgebra::is_cocommutative() const {
  for (Index i = 0; i < n; ++i)
    for (Index p = 0; p < n; ++p)
      for (Index q = 0; q < n; ++q)
        if (comult(i, p, q) != comult(i, q, p)) return false;
  return true;
}

namespace {

std::string triple_witness(const HopfAlgebra& a, Index i, Index j, Index k) {
  return "(" + a.label(i) + ", " + a.label(j) + ", " + a.label(k) + ")";
}

// Delta(x) as a coefficient vector on A (x) A, index p*n+q.
Vec comult_of(const HopfAlgebra& a, const Vec& x) {
  Vec out = Vec::Zero(a.n * a.n);
  for (Index i = 0; i < a.n; ++i) {
    if (x(i).is_zero()) continue;
    for (const auto& [p, q, v] : a.comult_nz[i]) out(p * a.n + q) += x(i) * v;
  }
  return out;
}

}  // namespace

std::vector<CheckResult> verify_hopf(const HopfAlgebra& a) {
  std::vector<CheckResult> out;
  const Index n = a.n;

  CheckResult assoc{"hopf.associativity"};
  for (Index i = 0; i < n && assoc.pass; ++i)
    for (Index j = 0; j < n && assoc.pass; ++j)
      for (Index k = 0; k < n; ++k) {
        Vec lhs = a.product(a.product(basis_vec(n, i), basis_vec(n, j)), basis_vec(n, k));
        Vec rhs = a.product(basis_vec(n, i), a.product(basis_vec(n, j), basis_vec(n, k)));
        if (!is_zero(Vec(lhs - rhs))) {
          assoc.pass = false;
          assoc.witness = triple_witness(a, i, j, k);
          break;
        }
      }
  out.push_back(assoc);

  CheckResult unit{"hopf.unit"};
  for (Index i = 0; i < n; ++i) {
    Vec e = basis_vec(n, i);
    if (!is_zero(Vec(a.product(a.unit, e) - e)) || !is_zero(Vec(a.product(e, a.unit) - e))) {
      unit.pass = false;
      unit.witness = a.label(i);
      break;
    }
  }
  out.push_back(unit);

  CheckResult coassoc{"hopf.coassociativity"};
  for (Index i = 0; i < n; ++i) {
    // (Delta (x) id)Delta vs (id (x) Delta)Delta on e_i, both as (p,q,r) maps.
    Vec lhs = Vec::Zero(n * n * n), rhs = Vec::Zero(n * n * n);
    for (const auto& [t, r, v1] : a.comult_nz[i])
      for (const auto& [p, q, v2] : a.comult_nz[t]) lhs((p * n + q) * n + r) += v1 * v2;
    for (const auto& [p, t, v1] : a.comult_nz[i])
      for (const auto& [q, r, v2] : a.comult_nz[t]) rhs((p * n + q) * n + r) += v1 * v2;
    if (!is_zero(Vec(lhs - rhs))) {
      coassoc.pass = false;
      coassoc.witness = a.label(i);
      break;
    }
  }
  out.push_back(coassoc);

  CheckResult counit{"hopf.counit"};
  for (Index i = 0; i < n; ++i) {
    Vec left = Vec::Zero(n), right = Vec::Zero(n);
    for (const auto& [p, q, v] : a.comult_nz[i]) {
      left(q) += a.counit(p) * v;
      right(p) += a.counit(q) * v;
    }
    Vec e = basis_vec(n, i);
    if (!is_zero(Vec(left - e)) || !is_zero(Vec(right - e))) {
      counit.pass = false;
      counit.witness = a.label(i);
      break;
    }
  }
  out.push_back(counit);

  CheckResult dalg{"hopf.comult_algebra_map"};
  for (Index i = 0; i < n && dalg.pass; ++i)
    for (Index j = 0; j < n; ++j) {
      Vec lhs = comult_of(a, a.product(basis_vec(n, i), basis_vec(n, j)));
      Vec rhs = Vec::Zero(n * n);
      for (const auto& [p, q, v1] : a.comult_nz[i])
        for (const auto& [r, s, v2] : a.comult_nz[j]) {
          Vec pr = a.product(basis_vec(n, p), basis_vec(n, r));
          Vec qs = a.product(basis_vec(n, q), basis_vec(n, s));
          Scalar w = v1 * v2;
          for (Index x = 0; x < n; ++x) {
            if (pr(x).is_zero()) continue;
            for (Index y = 0; y < n; ++y)
              if (!qs(y).is_zero()) rhs(x * n + y) += w * pr(x) * qs(y);
          }
        }
      if (!is_zero(Vec(lhs - rhs))) {
        dalg.pass = false;
        dalg.witness = "(" + a.label(i) + ", " + a.label(j) + ")";
        break;
      }
    }
  if (dalg.pass) {
    Vec d1 = comult_of(a, a.unit);
    Vec oo = Vec::Zero(n * n);
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) oo(x * n + y) = a.unit(x) * a.unit(y);
    if (!is_zero(Vec(d1 - oo))) {
      dalg.pass = false;
      dalg.witness = "Delta(1) != 1(x)1";
    }
  }
  out.push_back(dalg);

  CheckResult ealg{"hopf.counit_algebra_map"};
  for (Index i = 0; i < n && ealg.pass; ++i)
    for (Index j = 0; j < n; ++j) {
      Scalar lhs = a.counit_of(a.product(basis_vec(n, i), basis_vec(n, j)));
      Scalar rhs = a.counit(i) * a.counit(j);
      if (lhs != rhs) {
        ealg.pass = false;
        ealg.witness = "(" + a.label(i) + ", " + a.label(j) + ")";
        break;
      }
    }
  if (ealg.pass && a.counit_of(a.unit) != Scalar(1)) {
    ealg.pass = false;
    ealg.witness = "eps(1) != 1";
  }
  out.push_back(ealg);

  CheckResult anti{"hopf.antipode"};
  for (Index i = 0; i < n; ++i) {
    Vec lhs = Vec::Zero(n), rhs = Vec::Zero(n);
    for (const auto& [p, q, v] : a.comult_nz[i]) {
      lhs += v * a.product(a.antipode_of(basis_vec(n, p)), basis_vec(n, q));
      rhs += v * a.product(basis_vec(n, p), a.antipode_of(basis_vec(n, q)));
    }
    Vec expected = a.counit(i) * a.unit;
    if (!is_zero(Vec(lhs - expected)) || !is_zero(Vec(rhs - expected))) {
      anti.pass = false;
      anti.witness = a.label(i);
      break;
    }
  }
  if (anti.pass && rank(a.antipode) != n) {
    anti.pass = false;
    anti.witness = "antipode matrix not invertible";
  }
  out.push_back(anti);

  return out;
}

GroupTable validate_group_table(const std::vector<std::vector<int>>& table,
                                const std::vector<std::string>& labels_in) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error("group table: empty table");
  GroupTable g;
  g.table = table;
  g.labels = labels_in;
  if (g.labels.size() != static_cast<std::size_t>(n)) {
    g.labels.resize(n);
    for (int i = 0; i < n; ++i)
      if (g.labels[i].empty()) g.labels[i] = "g" + std::to_string(i);
  }
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error("group table: table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("group table: entry out of range");
  }
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = table[e][i] == i && table[i][e] == i;
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) throw Error("algebra: identity element missing");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw Error("algebra: associativity fails at (" + g.labels[i] + ", " + g.labels[j] +
                      ", " + g.labels[k] + ")");
  g.inverse.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (table[i][j] == g.identity && table[j][i] == g.identity) {
        g.inverse[i] = j;
        break;
      }
    if (g.inverse[i] < 0) throw Error("algebra: inverse missing for " + g.labels[i]);
  }
  return g;
}

HopfAlgebra group_algebra(const std::vector<std::vector<int>>& table,
                          const std::vector<std::string>& labels, long scalar_order) {
  GroupTable g = validate_group_table(table, labels);
  const Index n = static_cast<Index>(table.size());
  HopfAlgebra a;
  a.scalar_order = scalar_order;
  a.n = n;
  a.labels = g.labels;
  a.mult = Tensor3(n, n, n);
  a.comult = Tensor3(n, n, n);
  a.unit = Vec::Zero(n);
  a.counit = Vec::Zero(n);
  a.antipode = Mat::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a.mult(i, j, g.table[i][j]) = Scalar(1);
    a.comult(i, i, i) = Scalar(1);
    a.counit(i) = Scalar(1);
    a.antipode(g.inverse[i], i) = Scalar(1);
  }
  a.unit(g.identity) = Scalar(1);
  a.finalize();
  return a;
}

HopfAlgebra function_algebra(const std::vector<std::vector<int>>& table,
                             const std::vector<std::string>& labels, long scalar_order) {
  GroupTable g = validate_group_table(table, labels);
  const Index n = static_cast<Index>(table.size());
  HopfAlgebra a;
  a.scalar_order = scalar_order;
  a.n = n;
  a.labels.resize(n);
  for (Index i = 0; i < n; ++i) a.labels[i] = "d_" + g.labels[i];
  a.mult = Tensor3(n, n, n);
  a.comult = Tensor3(n, n, n);
  a.unit = Vec::Zero(n);
  a.counit = Vec::Zero(n);
  a.antipode = Mat::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    a.mult(i, i, i) = Scalar(1);
    a.unit(i) = Scalar(1);
    a.antipode(g.inverse[i], i) = Scalar(1);
  }
  // Delta(d_g) = sum_{h k = g} d_h (x) d_k.
  for (Index h = 0; h < n; ++h)
    for (Index k = 0; k < n; ++k) a.comult(g.table[h][k], h, k) = Scalar(1);
  a.counit(g.identity) = Scalar(1);
  a.finalize();
  return a;
}

Scalar Functional2::eval(const Vec& a, const Vec& b) const {
  Scalar out(0);
  const Index n = host->n;
  for (Index i = 0; i < n; ++i) {
    if (a(i).is_zero()) continue;
    for (Index j = 0; j < n; ++j)
      if (!b(j).is_zero()) out += a(i) * b(j) * values(i, j);
  }
  return out;
}

Functional2 convolution_unit(std::shared_ptr<const HopfAlgebra> algebra) {
  const Index n = algebra->n;
  Functional2 f{algebra, Mat::Zero(n, n)};
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) f.values(i, j) = algebra->counit(i) * algebra->counit(j);
  return f;
}

Functional2 convolution(const Functional2& f, const Functional2& g) {
  if (f.host.get() != g.host.get()) throw Error("convolution: host algebras differ");
  const HopfAlgebra& a = *f.host;
  Functional2 out{f.host, Mat::Zero(a.n, a.n)};
  for (Index i = 0; i < a.n; ++i)
    for (Index j = 0; j < a.n; ++j) {
      Scalar acc(0);
      for (const auto& [p, q, v1] : a.comult_nz[i])
        for (const auto& [r, s, v2] : a.comult_nz[j])
          acc += v1 * v2 * f.values(p, r) * g.values(q, s);
      out.values(i, j) = acc;
    }
  return out;
}

Functional2 convolution_inverse(const Functional2& f) {
  const HopfAlgebra& a = *f.host;
  const Index n = a.n;
  const Index nn = n * n;
  // Stack f * x = eps(x)eps and x * f = eps(x)eps as one linear system in the
  // n^2 unknowns x(q,s).
  Mat sys = Mat::Zero(2 * nn, nn);
  Mat rhs = Mat::Zero(2 * nn, 1);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Index row = i * n + j;
      for (const auto& [p, q, v1] : a.comult_nz[i])
        for (const auto& [r, s, v2] : a.comult_nz[j]) {
          sys(row, q * n + s) += v1 * v2 * f.values(p, r);
          sys(nn + row, p * n + r) += v1 * v2 * f.values(q, s);
        }
      rhs(row, 0) = a.counit(i) * a.counit(j);
      rhs(nn + row, 0) = rhs(row, 0);
    }
  SolveResult s = solve(sys, rhs);
  if (!s.exists) throw Error("not convolution invertible");
  Functional2 out{f.host, Mat::Zero(n, n)};
  for (Index q = 0; q < n; ++q)
    for (Index t = 0; t < n; ++t) out.values(q, t) = s.solution(q * n + t, 0);
  return out;
}

}  // namespace bicotwist
