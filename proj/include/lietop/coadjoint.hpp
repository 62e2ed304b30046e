#pragma once

#include <vector>

#include "lietop/exterior.hpp"
#include "lietop/fields.hpp"

namespace lietop {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// hat(a) b = a x b
Mat3 hat(const Vec3& a);
/// Inverse of hat; throws ShapeError unless |A + A^T| <= 1e-12.
Vec3 unhat(const Mat3& A);
Mat3 commutator(const Mat3& A, const Mat3& B);
/// Rotation by angle about axis (normalized internally).
Mat3 rodrigues(const Vec3& axis, double angle);
bool is_rotation(const Mat3& Y, double tol = 1e-10);

/// Y A Y^-1
Mat3 adjoint_action(const Mat3& Y, const Mat3& A);
/// Y^-1 A Y
Mat3 coadjoint_action(const Mat3& Y, const Mat3& A);

enum class S2Chart { xy, yz, zx };

/// dx1^dx2/x3, dx2^dx3/x1 or dx3^dx1/x2 on R^3. Coefficients throw
/// ChartSingularError when the denominator is below 1e-12.
DifferentialForm orbit_form_s2(S2Chart chart);

/// Reduced bracket [[0, -m3], [m3, 0]] on the (m1, m2) chart of the sphere
/// against the full Euler field; max abs difference over probes.
double reduced_euler_equivalence(const Vec3& lambda,
                                 const std::vector<Vec3>& probes);

/// -x3 dx1^dx2 - x6 dx1^dx5 + x6 dx2^dx4 - x3 dx4^dx5 on R^6.
DifferentialForm orbit_form_so4();

/// Orthonormal basis of the so(4) orbit tangent space at x (range of J(x)).
Matrix so4_orbit_tangent_basis(const Point& x);

/// max |d Omega(t_a, t_b, t_c)| over orbit tangent basis triples and probes.
double so4_orbit_closedness(const std::vector<Point>& probes,
                            const FdConfig& cfg = {});

}  // namespace lietop
