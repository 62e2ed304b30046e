#include "lietop/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lietop/errors.hpp"

namespace lietop {

using std::numbers::pi;

EllipticModulus::EllipticModulus(double k2) : k2_(k2) {
  if (!(k2 >= 0 && k2 < 1))
    throw ParamError("elliptic modulus k^2 must lie in [0, 1)");
}

namespace {

constexpr int kMaxLanden = 16;

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return a;
}

// Amplitude for |u| <= K.
double amplitude_reduced(double u, double k2) {
  double a[kMaxLanden + 1], c[kMaxLanden + 1];
  a[0] = 1;
  double b = std::sqrt(1 - k2);
  c[0] = std::sqrt(k2);
  int n = 0;
  while (std::abs(c[n]) > 1e-16 * a[n] && n < kMaxLanden) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i)
    phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  return phi;
}

}  // namespace

double complete_elliptic_k(const EllipticModulus& m) {
  return pi / (2 * agm(1.0, std::sqrt(1 - m.k2())));
}

double jacobi_amplitude(double u, const EllipticModulus& m) {
  if (!std::isfinite(u)) throw ArgError("jacobi_amplitude: u must be finite");
  if (m.k2() == 0) return u;
  // am(u + 2K) = am(u) + pi
  const double K = complete_elliptic_k(m);
  const double n = std::round(u / (2 * K));
  return amplitude_reduced(u - 2 * K * n, m.k2()) + n * pi;
}

JacobiTriple jacobi_sn_cn_dn(double u, const EllipticModulus& m) {
  const double phi = jacobi_amplitude(u, m);
  const double sn = std::sin(phi);
  return {sn, std::cos(phi), std::sqrt(1 - m.k2() * sn * sn)};
}

double elliptic_f(double phi, const EllipticModulus& m) {
  if (m.k2() == 0) return phi;
  const double K = complete_elliptic_k(m);
  const double n = std::round(phi / pi);
  const double r = phi - n * pi;  // |r| <= pi/2
  double lo = -K, hi = K;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * K; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (jacobi_amplitude(mid, m) < r)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi) + 2 * K * n;
}

void EulerTopClosedForm::init(const Eigen::Vector3d& l, double H1, double r2) {
  // Either lambda1 >= lambda2 > lambda3 or the reversed order; every factor
  // below changes sign together.
  const double s = l[0] > l[2] ? 1.0 : -1.0;
  const double e1 = r2 * l[0] - 2 * H1;
  const double e3 = 2 * H1 - r2 * l[2];
  if (!(s * (l[0] - l[1]) >= 0 && s * (l[1] - l[2]) > 0))
    throw ParamError("closed form needs monotone lambda with lambda2 != lambda3");
  if (!(s * e1 > 0 && s * e3 > 0))
    throw ParamError("r^2 outside the window between 2H1/lambda1 and 2H1/lambda3");
  amp_ = {std::sqrt(e3 / (l[0] - l[2])), std::sqrt(e3 / (l[1] - l[2])),
          std::sqrt(e1 / (l[0] - l[2]))};
  nu_ = std::sqrt((l[1] - l[2]) * e1);
  k2_ = (l[0] - l[1]) * e3 / ((l[1] - l[2]) * e1);
  static_cast<void>(EllipticModulus(k2_));
}

EulerTopClosedForm::EulerTopClosedForm(const Eigen::Vector3d& lambda, double H1,
                                       double r2, int sigma1, int sigma3) {
  if (std::abs(sigma1) != 1 || std::abs(sigma3) != 1)
    throw ParamError("sign pair entries must be +1 or -1");
  if (!(lambda[0] >= lambda[1] && lambda[1] > lambda[2]))
    throw ParamError("closed form needs lambda1 >= lambda2 > lambda3");
  if (lambda[0] != lambda[1] && !(r2 > 2 * H1 / lambda[1]))
    throw ParamError("closed form branch needs r^2 > 2H1/lambda2");
  init(lambda, H1, r2);
  sigma3_ = sigma3;
  u0_ = sigma1 > 0 ? 0.0 : 2 * complete_elliptic_k(EllipticModulus(k2_));
}

EulerTopClosedForm EulerTopClosedForm::from_state(const Eigen::Vector3d& lambda,
                                                  const Eigen::Vector3d& m0) {
  const double H1 = 0.5 * lambda.dot(m0.cwiseProduct(m0));
  const double r2 = m0.squaredNorm();
  EulerTopClosedForm cf;
  std::array<int, 3> p{0, 1, 2};
  std::stable_sort(p.begin(), p.end(),
                   [&](int a, int b) { return lambda[a] > lambda[b]; });
  // ascending order solves the equations with lambda negated, so time runs backwards
  bool reversed = false;
  if (lambda[p[0]] != lambda[p[1]] && r2 < 2 * H1 / lambda[p[1]]) {
    std::reverse(p.begin(), p.end());
    reversed = true;
  }
  if (r2 == 2 * H1 / lambda[p[1]] && lambda[p[0]] != lambda[p[1]])
    throw ParamError("state lies on the separatrix r^2 = 2H1/lambda2");
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (p[i] > p[j]) ++inversions;
  cf.perm_ = p;
  cf.time_sign_ = (inversions % 2 == 0) != reversed ? 1 : -1;
  const Eigen::Vector3d l(lambda[p[0]], lambda[p[1]], lambda[p[2]]);
  const Eigen::Vector3d m(m0[p[0]], m0[p[1]], m0[p[2]]);
  cf.init(l, H1, r2);
  cf.sigma3_ = m[2] >= 0 ? 1 : -1;
  const double phi = std::atan2(cf.sigma3_ * m[1] / cf.amp_[1], m[0] / cf.amp_[0]);
  cf.u0_ = elliptic_f(phi, EllipticModulus(cf.k2_));
  return cf;
}

Eigen::Vector3d EulerTopClosedForm::operator()(double t) const {
  const auto j =
      jacobi_sn_cn_dn(nu_ * time_sign_ * t + u0_, EllipticModulus(k2_));
  const Eigen::Vector3d ordered(amp_[0] * j.cn, sigma3_ * amp_[1] * j.sn,
                                sigma3_ * amp_[2] * j.dn);
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) out[perm_[i]] = ordered[i];
  return out;
}

Eigen::Vector3d euler_closed_form(const EulerTopClosedForm& cf, double t) {
  return cf(t);
}

Eigen::Vector3d degenerate_axisymmetric(const Eigen::Vector3d& lambda,
                                        const Eigen::Vector3d& m0, double t) {
  if (lambda[0] != lambda[1])
    throw ParamError("degenerate_axisymmetric needs lambda1 == lambda2");
  const double A = m0[2];
  const double C = std::hypot(m0[0], m0[1]);
  const double angle = A * (lambda[0] - lambda[2]) * t + std::atan2(m0[1], m0[0]);
  return {C * std::cos(angle), C * std::sin(angle), A};
}

std::vector<double> ym_curve_residuals(const Trajectory& traj, double c1,
                                       double c2) {
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& x : traj.states) {
    if (x.size() != 4) throw DimError("ym_curve_residual: expected 4-d states");
    const double z = x[0] * x[0] + x[1] * x[1];
    const double w = x[0] * x[2] + x[1] * x[3];
    out.push_back(std::abs(w * w + 0.5 * z * z * z - 2 * c1 * z + c2 * c2));
  }
  return out;
}

double ym_curve_residual(const Trajectory& traj, double c1, double c2) {
  const auto r = ym_curve_residuals(traj, c1, c2);
  return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

}  // namespace lietop
