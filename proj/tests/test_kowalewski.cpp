#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lietop/catalog.hpp"
#include "lietop/errors.hpp"
#include "lietop/kowalewski.hpp"
#include "lietop/poisson.hpp"
#include "lietop/random.hpp"

using namespace lietop;

namespace {

Point state(double m1, double m2, double m3, double g1, double g2, double g3,
            bool normalize = true) {
  Point x(6);
  x << m1, m2, m3, g1, g2, g3;
  if (normalize) x.tail(3).normalize();
  return x;
}

Point reference_state() { return state(0.1, 0.2, 0.3, 0.9, 0.1, 0.2); }

Trajectory reference_trajectory(double t1 = 10.0) {
  return trace(hamiltonian_vector_field(get("kowalewski")), reference_state(), t1);
}

// H4 = ((m1^2 - m2^2)/4 - g1)^2 + (m1 m2 / 2 - g2)^2
double H4(const Point& x) {
  const double a = (x[0] * x[0] - x[1] * x[1]) / 4 - x[3];
  const double b = x[0] * x[1] / 2 - x[4];
  return a * a + b * b;
}

// test-side polynomials written straight from their definitions
cd R_ref(const KowalewskiConstants& c, cd x) {
  return -std::pow(x, 4) + 6 * c.h1 * x * x - 4 * c.h2 * x + (1 - c.k2);
}

cd Rxx_ref(const KowalewskiConstants& c, cd x1, cd x2) {
  return -x1 * x1 * x2 * x2 + 6 * c.h1 * x1 * x2 - 2 * c.h2 * (x1 + x2) + (1 - c.k2);
}

cd random_complex(Rng& rng, double r = 1.5) {
  return {rng.uniform(-r, r), rng.uniform(-r, r)};
}

KowalewskiConstants random_constants(Rng& rng) {
  return {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 1)};
}

}  // namespace

TEST_CASE("change of variables") {
  ComplexPoint z = to_kowalewski_vars(Point::Zero(6));
  for (cd v : {z.x1, z.x2, z.y1, z.y2, z.m3, z.g3}) CHECK(std::abs(v) == 0.0);

  for (auto& p : sample_probes(6, 50, 2, 1.0)) {
    ComplexPoint cp = to_kowalewski_vars(p);
    CHECK(std::abs(cp.x2 - std::conj(cp.x1)) == 0.0);
    CHECK(std::abs(cp.y2 - std::conj(cp.y1)) < 1e-15);
    CHECK(std::abs(cp.y1 * cp.y2 - H4(p)) <= 1e-12);
  }
  CHECK_THROWS_AS(to_kowalewski_vars(Point::Zero(5)), DimError);
}

TEST_CASE("constants need a unit gravity vector") {
  CHECK_NOTHROW(KowalewskiConstants::from_state(reference_state()));
  CHECK_THROWS_AS(KowalewskiConstants::from_state(state(0, 0, 0, 1, 1, 0, false)),
                  ParamError);
  auto c = KowalewskiConstants::from_integrals(6, 4, 0.5);
  CHECK(c.h1 == 1);
  CHECK(c.h2 == 2);
  CHECK(c.k2 == 0.5);
}

TEST_CASE("quartic at vanishing constants") {
  KowalewskiPolynomials P({0, 0, 0});
  std::vector<double> expected{1, 0, 0, 0, -1};
  CHECK(P.R_coeffs() == expected);
}

TEST_CASE("R1 factorization") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    KowalewskiConstants c = random_constants(rng);
    KowalewskiPolynomials P(c);
    const cd x1 = random_complex(rng), x2 = random_complex(rng);
    if (std::abs(x1 - x2) < 1e-2) continue;
    const cd rhs = (R_ref(c, x1) * R_ref(c, x2) - std::pow(Rxx_ref(c, x1, x2), 2)) /
                   std::pow(x1 - x2, 2);
    const cd lhs = P.R1(x1, x2);
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    CHECK(std::abs(P.R(x1) - R_ref(c, x1)) < 1e-12);
    CHECK(std::abs(P.Rxx(x1, x2) - Rxx_ref(c, x1, x2)) < 1e-12);
  }
}

TEST_CASE("quintic") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    KowalewskiConstants c = random_constants(rng);
    KowalewskiPolynomials P(c);
    REQUIRE(P.P5_coeffs().size() == 6);
    CHECK(P.P5_coeffs()[5] == 4.0);
    REQUIRE(P.separating_coeffs().size() == 6);
    CHECK(P.separating_coeffs()[5] == doctest::Approx(0.5));
    const cd s = random_complex(rng);
    const cd quad = (s - 3 * c.h1) * (s - 3 * c.h1) - c.k2;
    const cd cubic = 4.0 * s * s * s - c.g2() * s - c.g3();
    CHECK(std::abs(P.P5(s) - quad * cubic) < 1e-10);
    const cd u = (s - 2 * c.h1) / 2.0;
    CHECK(std::abs(P.separating_quintic(s) - quad * (4.0 * u * u * u - c.g2() * u - c.g3())) <
          1e-10);
  }
  KowalewskiConstants c{0.3, -0.2, 0.4};
  CHECK(c.g2() == doctest::Approx(0.4 - 1 + 0.27));
  CHECK(c.g3() == doctest::Approx(0.3 * (0.4 - 1 - 0.09) + 0.04));
}

TEST_CASE("integrals and identities along the flow") {
  Trajectory tr = reference_trajectory();
  const auto c = KowalewskiConstants::from_state(tr.states.front());
  auto rows = verify_trajectory(tr);
  REQUIRE(rows.size() == tr.size());
  double worst_r = 0, worst_drift = 0, worst_q = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    worst_r = std::max({worst_r, rows[i].r1, rows[i].r2});
    for (double d : rows[i].drift) worst_drift = std::max(worst_drift, d);
    for (double q : quotient_identity_residuals(to_kowalewski_vars(tr.states[i]), c))
      worst_q = std::max(worst_q, q);
  }
  CHECK(worst_r < 1e-6);
  CHECK(worst_drift <= 1e-7);
  CHECK(worst_q <= 1e-8);

  // m3^2 = 6 h1 + y1 + y2 - (x1 + x2)^2, expanded in the real variables
  for (std::size_t i = 0; i < tr.size(); i += 97) {
    const Point& x = tr.states[i];
    const double rhs = 6 * c.h1 + (x[0] * x[0] - x[1] * x[1]) / 2 - 2 * x[3] - x[0] * x[0];
    CHECK(std::abs(x[2] * x[2] - rhs) <= 1e-10);
  }
}

TEST_CASE("kummer residual controls") {
  KowalewskiConstants c{0.2, 0.1, 0.3};
  ComplexPoint fp = solve_fixed_point(c);
  CHECK(std::abs(fp.m3) == 0.0);
  for (cd e : fixed_point_equations(fp, c)) CHECK(std::abs(e) < 1e-12);
  KummerResidual k = kummer_residual(fp, c);
  CHECK(k.r1 < 1e-10);
  CHECK(k.r2 < 1e-10);

  const Point x = reference_state();
  const auto c0 = KowalewskiConstants::from_state(x);
  Point y = x;
  y[0] += 0.3;
  y[4] -= 0.2;
  KummerResidual bad = kummer_residual(to_kowalewski_vars(y), c0);
  CHECK(std::max(bad.r1, bad.r2) > 1e-3);
}

TEST_CASE("s variables") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    KowalewskiConstants c = random_constants(rng);
    KowalewskiPolynomials P(c);
    ComplexPoint cp{random_complex(rng), random_complex(rng), 0, 0, 0, 0};
    const cd d2 = std::pow(cp.x1 - cp.x2, 2);
    if (std::abs(d2) < 1e-3) continue;
    auto [s1, s2] = s_variables(cp, c);
    const cd sum = 2.0 * Rxx_ref(c, cp.x1, cp.x2) / d2 + 6 * c.h1;
    // (s1 - 3h1)(s2 - 3h1) = (Rxx^2 - R R) / d^4 = -R1 / d^2
    const cd prod = -P.R1(cp.x1, cp.x2) / d2 + 3 * c.h1 * sum - 9 * c.h1 * c.h1;
    CHECK(std::abs(s1 + s2 - sum) <= 1e-8 * std::max(1.0, std::abs(sum)));
    CHECK(std::abs(s1 * s2 - prod) <= 1e-8 * std::max(1.0, std::abs(prod)));
    const cd root = std::sqrt(R_ref(c, cp.x1)) * std::sqrt(R_ref(c, cp.x2));
    const cd lhs = (s1 - 3 * c.h1) * (s1 - 3 * c.h1) - c.k2;
    const cd rhs = std::pow((Rxx_ref(c, cp.x1, cp.x2) - root) / d2, 2) - c.k2;
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
  }

  Trajectory tr = reference_trajectory(5.0);
  const auto c = KowalewskiConstants::from_state(tr.states.front());
  SVariableTracker tracker(c);
  for (std::size_t i = 0; i < tr.size(); i += 10) {
    if (std::abs(tr.states[i][1]) < 1e-3) {
      tracker.reset();
      continue;
    }
    auto [s1, s2] = tracker.next(to_kowalewski_vars(tr.states[i]));
    const double scale = std::max(1.0, std::abs(s1));
    const bool real_pair = std::abs(s1.imag()) < 1e-8 * scale && std::abs(s2.imag()) < 1e-8 * scale;
    const bool conjugate = std::abs(s1 - std::conj(s2)) < 1e-8 * scale;
    CHECK((real_pair || conjugate));
  }

  ComplexPoint same{0.5, 0.5, 0, 0, 0, 0};
  CHECK_THROWS_AS(s_variables(same, c), SingularError);
}

TEST_CASE("euler relation for the s variables") {
  Trajectory tr = reference_trajectory();
  const auto c = KowalewskiConstants::from_state(tr.states.front());
  EulerRelationReport rep = euler_relation_check(tr, c);
  CHECK(rep.used > tr.size() / 2);
  CHECK(rep.max_residual <= 1e-3);

  EulerRelationOptions in_s;
  in_s.cubic_in_s = true;
  CHECK(euler_relation_check(tr, c, in_s).max_residual > 0.1);
}

TEST_CASE("csv report") {
  Trajectory tr = reference_trajectory(0.01);
  std::ostringstream os;
  write_csv(os, verify_trajectory(tr));
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "t,r1,r2,dH1,dH2,dH3,dH4");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == int(tr.size()));
  CHECK(verify_trajectory(Trajectory{}).empty());
}
