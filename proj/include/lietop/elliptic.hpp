#pragma once

#include <array>
#include <vector>

#include "lietop/fields.hpp"
#include "lietop/flows.hpp"

namespace lietop {

/** @brief Squared modulus k^2 in [0, 1). */
class EllipticModulus {
 public:
  explicit EllipticModulus(double k2);
  double k2() const { return k2_; }

 private:
  double k2_;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

/// sn, cn, dn by descending Landen transformation (AGM).
JacobiTriple jacobi_sn_cn_dn(double u, const EllipticModulus& m);
/// Amplitude am(u), continuous and increasing in u.
double jacobi_amplitude(double u, const EllipticModulus& m);
/// K(k) = pi / (2 AGM(1, sqrt(1 - k^2)))
double complete_elliptic_k(const EllipticModulus& m);
/// Incomplete integral of the first kind, F(phi | k^2), inverting am.
double elliptic_f(double phi, const EllipticModulus& m);

/** @brief Closed-form solution of the free rigid body.
 *
 *  Stored in the labelling lambda_1 >= lambda_2 > lambda_3 with
 *  r^2 > 2 H1 / lambda_2, where
 *    m1 = amp1 cn(nu t + u0), m2 = s3 amp2 sn(nu t + u0), m3 = s3 amp3 dn(nu t + u0).
 *  from_state() relabels an arbitrary body into that form; odd relabellings
 *  reverse time.
 */
class EulerTopClosedForm {
 public:
  /// Ordered data anchored at m2(0) = 0 with m1(0) = sigma1 amp1 and
  /// m3(0) = sigma3 amp3.
  EulerTopClosedForm(const Eigen::Vector3d& lambda, double H1, double r2,
                     int sigma1 = 1, int sigma3 = 1);

  static EulerTopClosedForm from_state(const Eigen::Vector3d& lambda,
                                       const Eigen::Vector3d& m0);

  Eigen::Vector3d operator()(double t) const;

  double k2() const { return k2_; }
  double nu() const { return nu_; }
  const Eigen::Vector3d& amplitudes() const { return amp_; }
  /// Ordered slot i holds original component perm()[i].
  const std::array<int, 3>& perm() const { return perm_; }
  int time_sign() const { return time_sign_; }
  double phase() const { return u0_; }

 private:
  EulerTopClosedForm() = default;
  void init(const Eigen::Vector3d& ordered_lambda, double H1, double r2);

  std::array<int, 3> perm_{0, 1, 2};
  int time_sign_ = 1;
  Eigen::Vector3d amp_;
  double nu_ = 0;
  double k2_ = 0;
  int sigma3_ = 1;
  double u0_ = 0;
};

Eigen::Vector3d euler_closed_form(const EulerTopClosedForm& cf, double t);

/// lambda_1 == lambda_2: m1 + i m2 rotates at rate m3(0) (lambda_1 - lambda_3).
Eigen::Vector3d degenerate_axisymmetric(const Eigen::Vector3d& lambda,
                                        const Eigen::Vector3d& m0, double t);

/// |w^2 + P(z)| per sample, z = y1^2 + y2^2, w = y1 x1 + y2 x2,
/// P(z) = z^3/2 - 2 c1 z + c2^2.
std::vector<double> ym_curve_residuals(const Trajectory& traj, double c1,
                                       double c2);
double ym_curve_residual(const Trajectory& traj, double c1, double c2);

}  // namespace lietop
