#include "lietop/coadjoint.hpp"

#include <cmath>

#include "lietop/catalog.hpp"
#include "lietop/errors.hpp"
#include "lietop/poisson.hpp"

namespace lietop {

Mat3 hat(const Vec3& a) {
  Mat3 A;
  A << 0, -a[2], a[1], a[2], 0, -a[0], -a[1], a[0], 0;
  return A;
}

Vec3 unhat(const Mat3& A) {
  if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ShapeError("unhat: matrix is not skew-symmetric");
  return {A(2, 1), A(0, 2), A(1, 0)};
}

Mat3 commutator(const Mat3& A, const Mat3& B) { return A * B - B * A; }

Mat3 rodrigues(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0)) throw ParamError("rodrigues: zero axis");
  const Mat3 K = hat(axis / n);
  return Mat3::Identity() + std::sin(angle) * K + (1 - std::cos(angle)) * K * K;
}

bool is_rotation(const Mat3& Y, double tol) {
  return (Y.transpose() * Y - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(Y.determinant() - 1) <= tol;
}

namespace {

void require_action_inputs(const Mat3& Y, const Mat3& A) {
  if (!is_rotation(Y)) throw ParamError("group element is not a rotation");
  if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ShapeError("algebra element is not skew-symmetric");
}

}  // namespace

Mat3 adjoint_action(const Mat3& Y, const Mat3& A) {
  require_action_inputs(Y, A);
  return Y * A * Y.transpose();
}

Mat3 coadjoint_action(const Mat3& Y, const Mat3& A) {
  require_action_inputs(Y, A);
  return Y.transpose() * A * Y;
}

DifferentialForm orbit_form_s2(S2Chart chart) {
  int i = 0, j = 1, d = 2;
  if (chart == S2Chart::yz) {
    i = 1;
    j = 2;
    d = 0;
  } else if (chart == S2Chart::zx) {
    i = 2;
    j = 0;
    d = 1;
  }
  ScalarField c(3, [d](const Point& x) {
    if (std::abs(x[d]) < 1e-12)
      throw ChartSingularError("orbit form evaluated on its chart boundary");
    return 1.0 / x[d];
  });
  return DifferentialForm::monomial(3, {i, j}, c);
}

double reduced_euler_equivalence(const Vec3& lambda,
                                 const std::vector<Vec3>& probes) {
  const auto S = get("euler-top", {{"lambda1", lambda[0]},
                                   {"lambda2", lambda[1]},
                                   {"lambda3", lambda[2]}});
  const VectorField X = hamiltonian_vector_field(S);
  const ScalarField& H = S.hamiltonian();
  double worst = 0;
  for (const auto& m : probes) {
    if (std::abs(m[2]) <= 0.1)
      throw ChartSingularError("reduced chart needs |m3| > 0.1");
    // H restricted to the sphere through m, with m3 = m3(m1, m2):
    // dH_red/dm_i = dH/dm_i - dH/dm3 * m_i / m3.
    const Vector g = gradient(H, m);
    const double d1 = g[0] - g[2] * m[0] / m[2];
    const double d2 = g[1] - g[2] * m[1] / m[2];
    const double r1 = -m[2] * d2;
    const double r2 = m[2] * d1;
    const Vector full = X(m);
    worst = std::max({worst, std::abs(r1 - full[0]), std::abs(r2 - full[1])});
  }
  return worst;
}

DifferentialForm orbit_form_so4() {
  const auto x3 = ScalarField::coordinate(6, 2);
  const auto x6 = ScalarField::coordinate(6, 5);
  return DifferentialForm::monomial(6, {0, 1}, -x3) +
         DifferentialForm::monomial(6, {0, 4}, -x6) +
         DifferentialForm::monomial(6, {1, 3}, x6) +
         DifferentialForm::monomial(6, {3, 4}, -x3);
}

Matrix so4_orbit_tangent_basis(const Point& x) {
  const auto S = get("so4-geodesic");
  const Matrix J = S.structure().matrix(x);
  const Eigen::JacobiSVD<Matrix> svd(J, Eigen::ComputeFullU);
  const int r = numerical_rank(J);
  return svd.matrixU().leftCols(r);
}

double so4_orbit_closedness(const std::vector<Point>& probes,
                            const FdConfig& cfg) {
  const DifferentialForm dw = exterior_derivative(orbit_form_so4(), cfg);
  double worst = 0;
  for (const auto& x : probes) {
    const Matrix T = so4_orbit_tangent_basis(x);
    const int r = static_cast<int>(T.cols());
    for (int a = 0; a < r; ++a)
      for (int b = a + 1; b < r; ++b)
        for (int c = b + 1; c < r; ++c)
          worst = std::max(worst, std::abs(dw.evaluate(
                                      x, {T.col(a), T.col(b), T.col(c)})));
  }
  return worst;
}

}  // namespace lietop
