#include <doctest.h>

#include <random>

#include "bicotwist/instances.hpp"

using namespace bicotwist;

namespace {

std::shared_ptr<HopfAlgebra> make_group(const std::string& name) {
  InstanceSpec s = builtin(name == "Z2"         ? "FIX-TRIV"
                           : name == "Z4"       ? "FIX-Z4"
                           : name == "Z2xZ2"    ? "FIX-Z2xZ2"
                                                : "FIX-S3");
  return std::make_shared<HopfAlgebra>(group_algebra(s.table, s.group_labels, s.scalar_order));
}

}  // namespace

TEST_CASE("group algebras satisfy all seven Hopf checks") {
  for (const char* g : {"Z2", "Z4", "Z2xZ2", "S3"}) {
    auto a = make_group(g);
    auto checks = verify_hopf(*a);
    CHECK(checks.size() == 7);
    for (const auto& c : checks) {
      INFO(g << " " << c.id << " " << c.witness);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("function algebras satisfy all seven Hopf checks") {
  for (const char* g : {"Z2", "Z4", "Z2xZ2", "S3"}) {
    InstanceSpec s = builtin(std::string(g) == "Z2"      ? "FIX-TRIV"
                             : std::string(g) == "Z4"    ? "FIX-Z4"
                             : std::string(g) == "Z2xZ2" ? "FIX-Z2xZ2"
                                                         : "FIX-S3");
    HopfAlgebra a = function_algebra(s.table, s.group_labels, s.scalar_order);
    for (const auto& c : verify_hopf(a)) {
      INFO(g << " " << c.id << " " << c.witness);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("group algebra structure") {
  HopfAlgebra z2 = group_algebra(cyclic_group_table(2), {"e", "u"}, 1);
  CHECK(is_zero(Mat(z2.antipode - Mat::Identity(2, 2))));  // every element self-inverse

  HopfAlgebra z4 = group_algebra(cyclic_group_table(4), {"e", "u", "u2", "u3"}, 4);
  // S(u) = u^3.
  CHECK(z4.antipode(3, 1) == Scalar(1));
  CHECK(z4.antipode(1, 3) == Scalar(1));

  HopfAlgebra s3 = group_algebra(s3_group_table(), s3_labels(), 1);
  CHECK(s3.n == 6);
  CHECK(s3.is_cocommutative());
  CHECK_FALSE(s3.is_commutative());
}

TEST_CASE("function algebra structure") {
  HopfAlgebra fz2 = function_algebra(cyclic_group_table(2), {"e", "u"}, 1);
  CHECK(fz2.is_commutative());
  CHECK(fz2.is_cocommutative());

  HopfAlgebra fs3 = function_algebra(s3_group_table(), s3_labels(), 1);
  CHECK(fs3.is_commutative());
  CHECK_FALSE(fs3.is_cocommutative());
  // The unit is sum_g d_g; the counit picks out d_e.
  for (Index i = 0; i < fs3.n; ++i) CHECK(fs3.unit(i) == Scalar(1));
  CHECK(fs3.counit(0) == Scalar(1));
  for (Index i = 1; i < fs3.n; ++i) CHECK(fs3.counit(i) == Scalar(0));
}

TEST_CASE("non-group tables are rejected with the failed axiom") {
  auto bad = cyclic_group_table(4);
  bad[1][1] = 1;  // u.u := u
  CHECK_THROWS_WITH_AS(validate_group_table(bad, {"e", "u", "u2", "u3"}),
                       doctest::Contains("associativity fails"), Error);

  std::vector<std::vector<int>> no_id = {{0, 0}, {0, 0}};
  CHECK_THROWS_WITH_AS(validate_group_table(no_id, {"a", "b"}),
                       doctest::Contains("identity"), Error);
}

TEST_CASE("tampered multiplication tensor fails verification with a witness") {
  HopfAlgebra z4 = group_algebra(cyclic_group_table(4), {"e", "u", "u2", "u3"}, 4);
  // Corrupt u.u := u behind the validated constructor's back.
  z4.mult(1, 1, 2) = Scalar(0);
  z4.mult(1, 1, 1) = Scalar(1);
  z4.finalize();
  auto checks = verify_hopf(z4);
  bool assoc_or_antipode_failed = false;
  for (const auto& c : checks)
    if (!c.pass && (c.id == "hopf.associativity" || c.id == "hopf.antipode")) {
      assoc_or_antipode_failed = true;
      CHECK_FALSE(c.witness.empty());
    }
  CHECK(assoc_or_antipode_failed);
}

TEST_CASE("antipode is an anti-algebra and anti-coalgebra map") {
  for (const char* g : {"Z4", "S3"}) {
    auto ap = make_group(g);
    const HopfAlgebra& a = *ap;
    for (Index i = 0; i < a.n; ++i)
      for (Index j = 0; j < a.n; ++j) {
        Vec lhs = a.antipode_of(a.product(basis_vec(a.n, i), basis_vec(a.n, j)));
        Vec rhs = a.product(a.antipode_of(basis_vec(a.n, j)), a.antipode_of(basis_vec(a.n, i)));
        CHECK(is_zero(Vec(lhs - rhs)));
      }
    // Delta(S(x)) = (S (x) S)(flip(Delta(x))).
    for (Index i = 0; i < a.n; ++i) {
      Vec sx = a.antipode_of(basis_vec(a.n, i));
      Vec lhs = Vec::Zero(a.n * a.n), rhs = Vec::Zero(a.n * a.n);
      for (Index c = 0; c < a.n; ++c) {
        if (sx(c).is_zero()) continue;
        for (const auto& [p, q, v] : a.comult_nz[c]) lhs(p * a.n + q) += sx(c) * v;
      }
      for (const auto& [p, q, v] : a.comult_nz[i]) {
        Vec sq = a.antipode_of(basis_vec(a.n, q));
        Vec sp = a.antipode_of(basis_vec(a.n, p));
        for (Index x = 0; x < a.n; ++x)
          for (Index y = 0; y < a.n; ++y)
            if (!sq(x).is_zero() && !sp(y).is_zero()) rhs(x * a.n + y) += v * sq(x) * sp(y);
      }
      CHECK(is_zero(Vec(lhs - rhs)));
    }
  }
}

TEST_CASE("group algebras are cocommutative") {
  for (const char* g : {"Z2", "Z4", "Z2xZ2", "S3"}) CHECK(make_group(g)->is_cocommutative());
}

TEST_CASE("convolution algebra") {
  auto a = std::make_shared<HopfAlgebra>(group_algebra(cyclic_group_table(4),
                                                       {"e", "u", "u2", "u3"}, 4));
  Functional2 unit = convolution_unit(a);
  // The unit is self-inverse.
  Functional2 inv = convolution_inverse(unit);
  CHECK(is_zero(Mat(inv.values - unit.values)));

  // Bicharacter inverts pointwise on group-likes.
  Mat gamma(4, 4);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) gamma(i, j) = Cyclotomic::root_of_unity(4, i * j);
  Functional2 bichar{a, gamma};
  Functional2 bichar_inv = convolution_inverse(bichar);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      CHECK(bichar_inv.values(i, j) == Cyclotomic::root_of_unity(4, -i * j));

  // Associativity with random functionals, and two-sided unit laws.
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<long> coeff(-2, 2);
  auto random_functional = [&] {
    Functional2 f{a, Mat(4, 4)};
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j)
        f.values(i, j) = Scalar(coeff(rng)) * Cyclotomic::root_of_unity(4, rng() % 4);
    return f;
  };
  for (int round = 0; round < 10; ++round) {
    Functional2 f = random_functional(), g = random_functional(), h = random_functional();
    Mat lhs = convolution(convolution(f, g), h).values;
    Mat rhs = convolution(f, convolution(g, h)).values;
    CHECK(is_zero(Mat(lhs - rhs)));
    CHECK(is_zero(Mat(convolution(f, unit).values - f.values)));
    CHECK(is_zero(Mat(convolution(unit, f).values - f.values)));
  }
}

TEST_CASE("rank-deficient functional is not convolution invertible") {
  auto a = std::make_shared<HopfAlgebra>(function_algebra(cyclic_group_table(2), {"e", "u"}, 1));
  // phi vanishes off the unit row: phi(d_g (x) d_h) = [g = e].
  Functional2 phi{a, Mat::Zero(2, 2)};
  phi.values(0, 0) = Scalar(1);
  phi.values(0, 1) = Scalar(1);
  CHECK_THROWS_WITH_AS(convolution_inverse(phi), doctest::Contains("not convolution invertible"),
                       Error);
}
