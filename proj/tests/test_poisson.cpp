#include <doctest.h>

#include <cmath>

#include "lietop/catalog.hpp"
#include "lietop/coadjoint.hpp"
#include "lietop/errors.hpp"
#include "lietop/poisson.hpp"
#include "test_support.hpp"

using namespace lietop;
using testsupport::random_scalar;

namespace {

PoissonStructure so3() {
  return PoissonStructure(3, [](const Point& m) {
    return Matrix(hat(Vec3(m[0], m[1], m[2])));
  });
}

ScalarField coord(int dim, int i) { return ScalarField::coordinate(dim, i); }

Point pt3(double a, double b, double c) {
  Point p(3);
  p << a, b, c;
  return p;
}

}  // namespace

TEST_CASE("bracket of a function with itself vanishes") {
  Rng rng(1);
  for (const char* name : {"canonical", "euler-top", "kowalewski", "clebsch"}) {
    HamiltonianSystem S = get(name);
    ScalarField F = random_scalar(rng, S.dim());
    ScalarField FF = poisson_bracket(S.structure(), F, F);
    for (auto& p : sample_probes(S.dim(), 10, 2)) CHECK(std::abs(FF(p)) < 1e-12);
  }
}

TEST_CASE("canonical brackets") {
  // (q1, q2, p1, p2) with {F, G} = F_q G_p - F_p G_q
  PoissonStructure P = PoissonStructure::constant(canonical_matrix(2));
  Point p = Point::Constant(4, 0.3);
  CHECK(poisson_bracket(P, coord(4, 0), coord(4, 2))(p) == 1.0);
  CHECK(poisson_bracket(P, coord(4, 2), coord(4, 0))(p) == -1.0);
  CHECK(poisson_bracket(P, coord(4, 0), coord(4, 1))(p) == 0.0);
  CHECK(poisson_bracket(P, coord(4, 2), coord(4, 3))(p) == 0.0);
}

TEST_CASE("rigid body bracket of coordinates") {
  CHECK(poisson_bracket(so3(), coord(3, 0), coord(3, 1))(pt3(0, 0, 1)) == -1.0);
}

TEST_CASE("hamiltonian vector fields") {
  HamiltonianSystem S = get("euler-top");
  VectorField X = hamiltonian_vector_field(S);
  Vector v = X(pt3(1, 1, 1));
  CHECK(v[0] == doctest::Approx(1));
  CHECK(v[1] == doctest::Approx(-2));
  CHECK(v[2] == doctest::Approx(1));

  VectorField Z = hamiltonian_vector_field(S.structure(), ScalarField::constant(3, 4.0));
  CHECK(Z(pt3(0.2, -1, 3)).norm() == 0.0);

  // Kowalewski at m = (0, 0, 1), gamma = 0: m1' = m2 m3, m2' = -m1 m3 + 2 g3,
  // m3' = -2 g2, g1' = 2 m3 g2 - m2 g3, g2' = m1 g3 - 2 m3 g1, g3' = m2 g1 - m1 g2
  HamiltonianSystem K = get("kowalewski");
  VectorField XK = hamiltonian_vector_field(K);
  auto rhs = [](const Point& x) {
    Vector v(6);
    const double m1 = x[0], m2 = x[1], m3 = x[2], g1 = x[3], g2 = x[4], g3 = x[5];
    v << m2 * m3, -m1 * m3 + 2 * g3, -2 * g2, 2 * m3 * g2 - m2 * g3,
        m1 * g3 - 2 * m3 * g1, m2 * g1 - m1 * g2;
    return v;
  };
  Point a = Point::Zero(6);
  a[2] = 1;
  CHECK((XK(a) - rhs(a)).norm() < 1e-14);
  for (auto& p : sample_probes(6, 20, 3)) CHECK((XK(p) - rhs(p)).norm() < 1e-12);
}

TEST_CASE("jacobi residual") {
  PoissonStructure C = PoissonStructure::constant(canonical_matrix(3));
  CHECK(jacobi_residual(C, Point::Constant(6, 0.7)) == 0.0);

  for (auto& p : sample_probes(3, 50, 4)) CHECK(jacobi_residual(so3(), p) < 1e-10);

  // With J = hat(v) the criterion reduces to |v . curl v|. J12 = m3^2 makes
  // v = (m1, m2, -m3^2) a gradient, so that corruption is still Poisson.
  auto corrupted = [](auto entry) {
    return PoissonStructure(3, [entry](const Point& m) {
      Matrix J = hat(Vec3(m[0], m[1], m[2]));
      J(0, 1) = entry(m);
      J(1, 0) = -entry(m);
      return J;
    });
  };
  PoissonStructure gradient_like = corrupted([](const Point& m) { return m[2] * m[2]; });
  CHECK(jacobi_residual(gradient_like, pt3(1, 1, 1)) < 1e-10);
  // J12 = m1 - m3: v = (m1, m2, m3 - m1), curl v = (0, 1, 0), residual |m2|
  PoissonStructure bad = corrupted([](const Point& m) { return m[0] - m[2]; });
  CHECK(jacobi_residual(bad, pt3(1, 1, 1)) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(jacobi_residual(bad, pt3(0.3, -2.5, 1)) == doctest::Approx(2.5).epsilon(1e-8));
}

TEST_CASE("cyclic bracket sum") {
  Rng rng(5);
  PoissonStructure C = PoissonStructure::constant(canonical_matrix(2));
  for (int trial = 0; trial < 5; ++trial) {
    ScalarField F = random_scalar(rng, 4);
    ScalarField G = random_scalar(rng, 4);
    ScalarField H = random_scalar(rng, 4);
    for (auto& p : sample_probes(4, 5, trial, 1.0)) {
      CHECK(std::abs(bracket_jacobi_residual(C, F, G, H, p)) < 1e-4);
      CHECK(std::abs(bracket_jacobi_residual(C, F, F, H, p)) < 1e-4);
    }
  }
  for (auto& p : sample_probes(3, 10, 6))
    CHECK(std::abs(bracket_jacobi_residual(so3(), coord(3, 0), coord(3, 1),
                                           coord(3, 2), p)) < 1e-6);
}

TEST_CASE("antisymmetry and Leibniz") {
  Rng rng(7);
  for (const char* name : {"canonical", "euler-top", "so4-geodesic", "kowalewski"}) {
    HamiltonianSystem S = get(name);
    const int m = S.dim();
    ScalarField F = random_scalar(rng, m);
    ScalarField G = random_scalar(rng, m);
    ScalarField H = random_scalar(rng, m);
    const PoissonStructure& P = S.structure();
    ScalarField FG_H = poisson_bracket(P, F * G, H);
    ScalarField G_H = poisson_bracket(P, G, H);
    ScalarField F_H = poisson_bracket(P, F, H);
    ScalarField FG = poisson_bracket(P, F, G);
    ScalarField GF = poisson_bracket(P, G, F);
    for (auto& p : sample_probes(m, 10, 8, 1.0)) {
      CHECK(std::abs(FG(p) + GF(p)) <= 1e-12 * std::max(1.0, std::abs(FG(p))));
      CHECK(std::abs(FG_H(p) - F(p) * G_H(p) - G(p) * F_H(p)) < 1e-4);
    }
  }
}

TEST_CASE("bracket of two angular momenta under a central potential") {
  HamiltonianSystem S = get("canonical");
  ScalarField L1 = angular_momentum(0);
  ScalarField L2 = angular_momentum(1);
  ScalarField L3 = angular_momentum(2);
  ScalarField B = poisson_bracket(S.structure(), L1, L2);
  auto probes = sample_probes(6, 20, 9);
  for (auto& p : probes) {
    CHECK(B(p) == doctest::Approx(L3(p)).epsilon(1e-12));
    CHECK(B(p) == doctest::Approx(p[0] * p[4] - p[1] * p[3]).epsilon(1e-12));
  }
  CHECK(poisson_theorem_check(S, L1, L2, probes) < 1e-6);
  CHECK(poisson_theorem_check(S, L1, L1, probes) == 0.0);

  ScalarField q1 = coord(6, 0);
  try {
    poisson_theorem_check(S, q1, L2, probes);
    FAIL("expected a precondition failure");
  } catch (const PreconditionError& e) {
    CHECK(e.probe() == 0);
  }
}

TEST_CASE("Yang-Mills integrals are in involution") {
  HamiltonianSystem S = get("yang-mills");
  ScalarField B = poisson_bracket(S.structure(), S.integrals()[0].field,
                                  S.integrals()[1].field);
  for (auto& p : sample_probes(4, 100, 10)) CHECK(std::abs(B(p)) <= 1e-10);
}

TEST_CASE("casimirs annihilate the structure") {
  for (const char* name : {"euler-top", "so4-geodesic", "kowalewski", "clebsch"}) {
    HamiltonianSystem S = get(name);
    for (const auto& c : S.casimirs())
      CHECK_MESSAGE(casimir_residual(S.structure(), c.field,
                                     sample_probes(S.dim(), 20, 11)) < 1e-10,
                    name);
  }
}

TEST_CASE("audit verdicts") {
  for (int n : {1, 2, 4}) {
    HamiltonianSystem S = get("harmonic", {{"n", double(n)}});
    AuditReport r = audit(S, sample_probes(2 * n, 30, 12));
    CHECK(r.verdict == "liouville-integrable-at-probes");
    CHECK(r.involution_matrix.maxCoeff() < 1e-10);
  }
  AuditReport e = audit(get("euler-top"), sample_probes(3, 30, 13));
  CHECK(e.verdict == "liouville-integrable-at-probes");
  CHECK(e.n == 1);
  CHECK(e.k == 1);

  HamiltonianSystem h = get("harmonic", {{"n", 2}});
  HamiltonianSystem dup("dup", h.structure(),
                        {h.integrals()[0], h.integrals()[0]}, {}, 2, 0);
  AuditReport d = audit(dup, sample_probes(4, 20, 14));
  CHECK_FALSE(d.independence_ok);
  CHECK(d.verdict == "not-integrable-at-probes");

  AuditReport hh = audit(get("henon-heiles"), sample_probes(4, 20, 15));
  CHECK(hh.verdict == "no-verdict");

  CHECK_THROWS_AS(audit(h, {}), ArgError);
}

TEST_CASE("audit report serializes with the documented keys") {
  AuditReport r = audit(get("euler-top"), sample_probes(3, 5, 16));
  nlohmann::json j = to_json(r);
  for (const char* key : {"skew_ok", "jacobi_ok", "casimirs_ok", "involution_matrix",
                          "independence_ok", "verdict"})
    CHECK(j.contains(key));
  CHECK(j["verdict"] == "liouville-integrable-at-probes");
}

TEST_CASE("eigen structure") {
  PoissonStructure C = PoissonStructure::constant(canonical_matrix(2));
  EigenReport c = eigen_structure(C, Point::Zero(4));
  CHECK(c.rank == 4);
  CHECK(c.ok());
  for (auto& ev : c.eigenvalues) {
    CHECK(std::abs(ev.real()) < 1e-14);
    CHECK(std::abs(std::abs(ev.imag()) - 1) < 1e-14);
  }

  EigenReport s = eigen_structure(so3(), pt3(1, 1, 1));
  CHECK(s.rank == 2);
  CHECK(s.ok());
  std::vector<double> im;
  for (auto& ev : s.eigenvalues) im.push_back(ev.imag());
  std::sort(im.begin(), im.end());
  CHECK(im[0] == doctest::Approx(-std::sqrt(3.0)));
  CHECK(std::abs(im[1]) < 1e-12);
  CHECK(im[2] == doctest::Approx(std::sqrt(3.0)));

  EigenReport z = eigen_structure(so3(), Point::Zero(3));
  CHECK(z.rank == 0);
  CHECK(z.even_rank);
}

TEST_CASE("structure validation") {
  PoissonStructure odd(2, [](const Point&) { return Matrix(Matrix::Zero(3, 3)); });
  CHECK_THROWS_AS(odd.matrix(Point::Zero(2)), ShapeError);
  HamiltonianSystem S = get("euler-top");
  CHECK_THROWS_AS(HamiltonianSystem("x", S.structure(), S.integrals(), {}, 1, 0),
                  DimError);
}
