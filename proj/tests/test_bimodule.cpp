#include <doctest.h>

#include <random>

#include "bicotwist/instances.hpp"

using namespace bicotwist;

namespace {

BuiltInstance fix(const std::string& name) { return build_instance(builtin(name)); }

Vec alg_elt(const HopfAlgebra& a, Index i) { return basis_vec(a.n, i); }

}  // namespace

TEST_CASE("trivial fixture: free of rank 1 with R = (1)") {
  BuiltInstance b = fix("FIX-TRIV");
  CHECK(b.m->d == 1);
  CHECK(b.m->D == 2);
  CHECK(is_zero(Vec(b.m->R.at(0, 0) - b.algebra->unit)));
  // eta_1 = omega_1 when R = (1).
  CHECK(is_zero(Vec(b.m->eta.col(0) - b.m->omega.col(0))));
  CHECK(all_pass(verify_bicovariance(*b.m)));
}

TEST_CASE("FIX-Z4: R = diag(u, u3) and eta basis") {
  BuiltInstance b = fix("FIX-Z4");
  const Bimod& m = *b.m;
  CHECK(m.d == 2);
  CHECK(is_zero(Vec(m.R.at(0, 0) - alg_elt(*b.algebra, 1))));
  CHECK(is_zero(Vec(m.R.at(1, 1) - alg_elt(*b.algebra, 3))));
  CHECK(is_zero(m.R.at(0, 1)));
  CHECK(is_zero(m.R.at(1, 0)));
  // eta_1 = omega_1 u^3, eta_2 = omega_2 u.
  CHECK(is_zero(Vec(m.eta.col(0) - m.right_mult_alg(m.omega.col(0), alg_elt(*b.algebra, 3)))));
  CHECK(is_zero(Vec(m.eta.col(1) - m.right_mult_alg(m.omega.col(1), alg_elt(*b.algebra, 1)))));
  CHECK(all_pass(verify_bicovariance(m)));
}

TEST_CASE("FIX-S3: conjugation module of dimension 18") {
  BuiltInstance b = fix("FIX-S3");
  CHECK(all_pass(verify_yd(b.yd)));
  CHECK(b.m->D == 18);
  CHECK(b.m->d == 3);
  CHECK(all_pass(verify_bicovariance(*b.m)));
  // eta_t = omega_t . t for each transposition (transpositions are involutions).
  const int tr[3] = {3, 4, 5};
  for (int k = 0; k < 3; ++k) {
    Vec expected = b.m->right_mult_alg(b.m->omega.col(k), alg_elt(*b.algebra, tr[k]));
    CHECK(is_zero(Vec(b.m->eta.col(k) - expected)));
  }
}

TEST_CASE("regular bimodule: A over itself") {
  auto a = std::make_shared<HopfAlgebra>(group_algebra(cyclic_group_table(4),
                                                       {"e", "u", "u2", "u3"}, 4));
  Bimod reg = regular_bimodule(a);
  CHECK(reg.d == 1);
  CHECK(reg.D == 4);
  CHECK(all_pass(verify_bicovariance(reg)));
}

TEST_CASE("normal forms") {
  BuiltInstance b = fix("FIX-Z4");
  const Bimod& m = *b.m;
  const HopfAlgebra& a = *b.algebra;

  // x = omega_1 . u has right coefficients (u, 0); trivial action makes the
  // left coefficients agree.
  Vec x = m.right_mult_alg(m.omega.col(0), alg_elt(a, 1));
  auto rc = m.normal_form(x);
  CHECK(is_zero(Vec(rc[0] - alg_elt(a, 1))));
  CHECK(is_zero(rc[1]));
  auto lc = m.left_coeffs(x);
  CHECK(is_zero(Vec(lc[0] - alg_elt(a, 1))));
  CHECK(is_zero(lc[1]));

  // Zero element has the zero coefficient vector.
  auto zc = m.normal_form(Vec(Vec::Zero(m.D)));
  CHECK(is_zero(zc[0]));
  CHECK(is_zero(zc[1]));

  // Right -> left -> right round trip is the identity on random elements.
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> coeff(-2, 2);
  for (int round = 0; round < 20; ++round) {
    Vec v(m.D);
    for (Index i = 0; i < m.D; ++i)
      v(i) = Scalar(coeff(rng)) * Cyclotomic::root_of_unity(4, rng() % 4);
    CHECK(is_zero(Vec(m.from_normal_form(m.normal_form(v)) - v)));
    auto left = m.left_coeffs(v);
    Vec rebuilt = Vec::Zero(m.D);
    for (Index i = 0; i < m.d; ++i) rebuilt += m.left_mult_alg(left[i], m.omega.col(i));
    CHECK(is_zero(Vec(rebuilt - v)));
  }
}

TEST_CASE("FIX-S3: g . omega_t = omega_{g t g^-1} . g") {
  BuiltInstance b = fix("FIX-S3");
  const Bimod& m = *b.m;
  auto table = s3_group_table();
  const int tr[3] = {3, 4, 5};
  auto trindex = [&](int g) {
    for (int k = 0; k < 3; ++k)
      if (tr[k] == g) return k;
    return -1;
  };
  for (int g = 0; g < 6; ++g) {
    int ginv = -1;
    for (int j = 0; j < 6; ++j)
      if (table[g][j] == 0) ginv = j;
    for (int t = 0; t < 3; ++t) {
      Vec lhs = m.left_mult_alg(alg_elt(*b.algebra, g), m.omega.col(t));
      int conj = table[table[g][tr[t]]][ginv];  // g t g^-1
      Vec rhs = m.right_mult_alg(m.omega.col(trindex(conj)), alg_elt(*b.algebra, g));
      CHECK(is_zero(Vec(lhs - rhs)));
    }
  }
}

TEST_CASE("corrupted right action fails covariance with a witness") {
  BuiltInstance b = fix("FIX-S3");
  Bimod bad = *b.m;
  // Right action without the second comultiplication leg: (a (x) v) . b :=
  // ab (x) v, dropping the action on v.
  const HopfAlgebra& a = *b.algebra;
  const Index dv = bad.d;
  for (Index g = 0; g < a.n; ++g) {
    bad.ract[g] = Mat::Zero(bad.D, bad.D);
    for (Index av = 0; av < a.n; ++av)
      for (Index i = 0; i < dv; ++i)
        for (Index c = 0; c < a.n; ++c)
          if (!a.mult(av, g, c).is_zero())
            bad.ract[g](c * dv + i, av * dv + i) += a.mult(av, g, c);
  }
  auto checks = verify_bicovariance(bad);
  CHECK_FALSE(all_pass(checks));
  bool right_side_failed = false;
  for (const auto& c : checks)
    if (!c.pass && (c.id == "bimod.right_covariance" || c.id == "bimod.r_matrix")) {
      right_side_failed = true;
      CHECK_FALSE(c.witness.empty());
    }
  CHECK(right_side_failed);
}

TEST_CASE("covariant map checks") {
  BuiltInstance b = fix("FIX-Z4");
  const Bimod& m = *b.m;

  // Identity map is bicovariant and bilinear.
  auto id_checks =
      check_covariant_map(m, m, Mat(Mat::Identity(m.D, m.D)), Covariance::Bi, true, true);
  CHECK(all_pass(id_checks));

  // omega_1 -> omega_1 . u extended right-linearly shifts degree: right
  // covariance fails, left covariance holds.
  const HopfAlgebra& a = *b.algebra;
  Mat block = Mat::Zero(m.d * a.n, m.d * a.n);
  for (Index av = 0; av < a.n; ++av) {
    Vec prod = a.product(alg_elt(a, 1), basis_vec(a.n, av));
    for (Index t = 0; t < a.n; ++t)
      if (!prod(t).is_zero()) block(0 * a.n + t, 0 * a.n + av) += prod(t);
    block(1 * a.n + av, 1 * a.n + av) = Scalar(1);
  }
  Mat t = m.phi_r * block * m.phi_r_inv;
  CHECK_FALSE(all_pass(check_covariant_map(m, m, t, Covariance::Right)));
}

TEST_CASE("invariants of the tensor square") {
  BuiltInstance b = fix("FIX-Z4");
  CHECK(b.m2->d == b.m->d * b.m->d);
  CHECK(all_pass(verify_bicovariance(*b.m2)));

  BuiltInstance s3 = fix("FIX-S3");
  CHECK(s3.m2->d == 9);
}

TEST_CASE("brute-force cross-check of the group-algebra construction") {
  // For C[Z4] with group-like degrees the structure maps can be tabulated
  // directly: basis g (x) v_i, (g (x) v_i) . h = gh (x) v_i (trivial action),
  // Delta_M(g (x) v_i) = g (x) (g (x) v_i), rco(g (x) v_i) = (g (x) v_i) (x)
  // g d_i.
  BuiltInstance b = fix("FIX-Z4");
  const Bimod& m = *b.m;
  const Index n = 4, dv = 2;
  const int deg[2] = {1, 3};
  auto table = cyclic_group_table(4);
  auto idx = [&](Index g, Index i) { return g * dv + i; };

  for (Index h = 0; h < n; ++h) {
    Mat lact = Mat::Zero(m.D, m.D), ract = Mat::Zero(m.D, m.D);
    for (Index g = 0; g < n; ++g)
      for (Index i = 0; i < dv; ++i) {
        lact(idx(table[h][g], i), idx(g, i)) = Scalar(1);
        ract(idx(table[g][h], i), idx(g, i)) = Scalar(1);
      }
    CHECK(is_zero(Mat(lact - m.lact[h])));
    CHECK(is_zero(Mat(ract - m.ract[h])));
  }
  Mat lco = Mat::Zero(n * m.D, m.D), rco = Mat::Zero(m.D * n, m.D);
  for (Index g = 0; g < n; ++g)
    for (Index i = 0; i < dv; ++i) {
      lco(g * m.D + idx(g, i), idx(g, i)) = Scalar(1);
      rco(idx(g, i) * n + table[g][deg[i]], idx(g, i)) = Scalar(1);
    }
  CHECK(is_zero(Mat(lco - m.lco)));
  CHECK(is_zero(Mat(rco - m.rco)));
}

TEST_CASE("extracted YD data reproduces the input") {
  for (const char* name : {"FIX-Z4", "FIX-S3", "FIX-FS3"}) {
    BuiltInstance b = fix(name);
    YDModule yd = extract_yd(*b.m);
    for (Index a = 0; a < b.algebra->n; ++a)
      for (Index i = 0; i < b.m->d; ++i)
        for (Index j = 0; j < b.m->d; ++j)
          CHECK(yd.action(a, i, j) == b.yd.action(a, i, j));
    for (Index i = 0; i < b.m->d; ++i)
      for (Index j = 0; j < b.m->d; ++j)
        for (Index a = 0; a < b.algebra->n; ++a)
          CHECK(yd.coaction(i, j, a) == b.yd.coaction(i, j, a));
  }
}

TEST_CASE("every fixture module is bicovariant with valid R-matrix identities") {
  for (const auto& name : builtin_names()) {
    BuiltInstance b = fix(name);
    auto checks = verify_bicovariance(*b.m);
    for (const auto& c : checks) {
      INFO(name << " " << c.id << " " << c.witness);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("invalid YD data is rejected with a witness") {
  auto a = std::make_shared<HopfAlgebra>(group_algebra(cyclic_group_table(4),
                                                       {"e", "u", "u2", "u3"}, 4));
  YDModule yd;
  yd.host = a;
  yd.dim = 1;
  yd.action = Tensor3(4, 1, 1);
  for (Index g = 0; g < 4; ++g) yd.action(g, 0, 0) = a->counit(g);
  yd.coaction = Tensor3(1, 1, 4);
  yd.coaction(0, 0, 1) = Scalar(1);
  yd.coaction(0, 0, 2) = Scalar(1);  // not a comodule: 2 group-like legs
  auto checks = verify_yd(yd);
  CHECK_FALSE(all_pass(checks));
  CHECK_THROWS_AS(build_bimodule(a, yd), Error);
}
