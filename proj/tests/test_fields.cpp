#include <doctest.h>

#include <cmath>
#include <limits>

#include "lietop/errors.hpp"
#include "lietop/fields.hpp"
#include "test_support.hpp"

using namespace lietop;
using testsupport::random_polynomial;
using testsupport::random_vector_field;

namespace {

Point pt(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) p[i++] = x;
  return p;
}

}  // namespace

TEST_CASE("gradient of x1^2 + x2^2") {
  ScalarField f(2, [](const Point& p) { return p[0] * p[0] + p[1] * p[1]; });
  Vector g = gradient(f, pt({1, 2}));
  CHECK(g[0] == doctest::Approx(2).epsilon(1e-9));
  CHECK(g[1] == doctest::Approx(4).epsilon(1e-9));
}

TEST_CASE("gradient of a constant is zero") {
  Vector g = gradient(ScalarField::constant(3, 7.5), pt({0.3, -2, 9}));
  CHECK(g.norm() == 0.0);
  ScalarField f(3, [](const Point&) { return 7.5; });
  CHECK(gradient(f, pt({0.3, -2, 9})).norm() == 0.0);
}

TEST_CASE("gradient of the rigid body energy") {
  const double lam[3] = {1, 2, 3};
  ScalarField H(3, [&](const Point& m) {
    return 0.5 * (lam[0] * m[0] * m[0] + lam[1] * m[1] * m[1] +
                  lam[2] * m[2] * m[2]);
  });
  Vector g = gradient(H, pt({1, 1, 1}));
  for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(lam[i]).epsilon(1e-9));
}

TEST_CASE("gradient rejects bad input") {
  ScalarField f(2, [](const Point& p) { return std::log(p[0]); });
  CHECK_THROWS_AS(gradient(f, pt({0, 1})), DomainError);
  CHECK_THROWS_AS(gradient(f, pt({1, 1, 1})), DimError);
  Point bad = pt({std::numeric_limits<double>::quiet_NaN(), 1});
  CHECK_THROWS_AS(gradient(f, bad), DomainError);
  CHECK_THROWS_AS(ScalarField(0, [](const Point&) { return 0.0; }), DimError);
}

TEST_CASE("jacobian of simple linear fields") {
  VectorField id(3, [](const Point& p) { return Vector(p); });
  CHECK((jacobian(id, pt({1, -2, 0.5})) - Matrix::Identity(3, 3)).norm() < 1e-9);

  Vector c = pt({1, 2, 3});
  CHECK(jacobian(VectorField::constant(c), pt({4, 5, 6})).norm() == 0.0);

  VectorField rot(2, [](const Point& p) { return Vector(pt({-p[1], p[0]})); });
  Matrix expected(2, 2);
  expected << 0, -1, 1, 0;
  CHECK((jacobian(rot, pt({0.7, -1.3})) - expected).norm() < 1e-9);
}

TEST_CASE("lie bracket examples") {
  Rng rng(11);
  VectorField X = random_vector_field(rng, 3);
  VectorField XX = lie_bracket(X, X);
  for (auto& p : sample_probes(3, 20, 5)) CHECK(XX(p).norm() == 0.0);

  VectorField d1 = VectorField::coordinate(2, 0);
  VectorField d2 = VectorField::coordinate(2, 1);
  CHECK(lie_bracket(d1, d2)(pt({0.4, 1.1})).norm() == 0.0);

  // X = (x2, 0), Y = (0, x1): DY X - DX Y = (0, x2) - (x1, 0)
  VectorField A(2, [](const Point& p) { return Vector(pt({p[1], 0})); });
  VectorField B(2, [](const Point& p) { return Vector(pt({0, p[0]})); });
  VectorField AB = lie_bracket(A, B);
  for (auto& p : sample_probes(2, 20, 6)) {
    Vector v = AB(p);
    CHECK(v[0] == doctest::Approx(-p[0]).epsilon(1e-8));
    CHECK(v[1] == doctest::Approx(p[1]).epsilon(1e-8));
  }

  CHECK_THROWS_AS(lie_bracket(A, VectorField::zero(3)), DimError);
}

TEST_CASE("lie bracket is bilinear and antisymmetric") {
  Rng rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    VectorField X = random_vector_field(rng, 3);
    VectorField Y = random_vector_field(rng, 3);
    VectorField Z = random_vector_field(rng, 3);
    const double a = rng.uniform(-2, 2);
    ScalarField ca = ScalarField::constant(3, a);
    VectorField lhs = lie_bracket(ca * X + Y, Z);
    VectorField XZ = lie_bracket(X, Z);
    VectorField YZ = lie_bracket(Y, Z);
    VectorField ZX = lie_bracket(Z, X);
    for (auto& p : sample_probes(3, 20, 100 + trial, 1.0)) {
      CHECK((lhs(p) - (a * XZ(p) + YZ(p))).norm() < 1e-6);
      CHECK((XZ(p) + ZX(p)).norm() < 1e-6);
    }
  }
}

TEST_CASE("lie bracket satisfies the Jacobi identity") {
  Rng rng(77);
  VectorField X = random_vector_field(rng, 3, 2);
  VectorField Y = random_vector_field(rng, 3, 2);
  VectorField Z = random_vector_field(rng, 3, 2);
  VectorField a = lie_bracket(lie_bracket(X, Y), Z);
  VectorField b = lie_bracket(lie_bracket(Y, Z), X);
  VectorField c = lie_bracket(lie_bracket(Z, X), Y);
  for (auto& p : sample_probes(3, 20, 9, 1.0))
    CHECK((a(p) + b(p) + c(p)).norm() < 1e-4);
}

TEST_CASE("analytic gradients agree with finite differences") {
  Rng rng(5);
  FdConfig cfg;
  for (int trial = 0; trial < 10; ++trial) {
    auto P = random_polynomial(rng, 4);
    ScalarField f = testsupport::as_field(P);
    REQUIRE(f.has_gradient());
    for (auto& p : sample_probes(4, 10, trial))
      CHECK((fd_gradient(f, p) - f.analytic_gradient(p)).lpNorm<Eigen::Infinity>() <
            cfg.fd_tol);
  }
}

TEST_CASE("field arithmetic propagates gradients") {
  ScalarField x = ScalarField::coordinate(2, 0);
  ScalarField y = ScalarField::coordinate(2, 1);
  ScalarField f = x * y - 3.0 * x + (-y);
  REQUIRE(f.has_gradient());
  Point p = pt({2, 5});
  CHECK(f(p) == doctest::Approx(10 - 6 - 5));
  Vector g = gradient(f, p);
  CHECK(g[0] == doctest::Approx(5 - 3));
  CHECK(g[1] == doctest::Approx(2 - 1));
}

TEST_CASE("evaluation is deterministic") {
  Rng rng(8);
  ScalarField f = testsupport::random_scalar(rng, 3, 3, false);
  Point p = pt({0.1, 0.2, 0.3});
  CHECK(f(p) == f(p));
  CHECK(gradient(f, p) == gradient(f, p));
}

TEST_CASE("directional derivative and partials") {
  ScalarField f(2, [](const Point& p) { return p[0] * p[0] * p[1]; });
  Point p = pt({1.5, -2});
  CHECK(partial(f, 0)(p) == doctest::Approx(2 * 1.5 * -2).epsilon(1e-8));
  CHECK(partial(f, 1)(p) == doctest::Approx(1.5 * 1.5).epsilon(1e-8));
  VectorField X = VectorField::coordinate(2, 0);
  CHECK(directional_derivative(X, f)(p) == doctest::Approx(-6).epsilon(1e-8));
}

TEST_CASE("fd config validation") {
  FdConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.rel_step = 0;
  CHECK_THROWS_AS(cfg.validate(), ParamError);
}
