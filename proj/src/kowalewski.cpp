#include "lietop/kowalewski.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <iomanip>

#include "lietop/errors.hpp"
#include "lietop/random.hpp"

namespace lietop {

namespace {

std::array<double, 4> integrals(const Point& x) {
  const double a = (x[0] * x[0] - x[1] * x[1]) / 4 - x[3];
  const double b = x[0] * x[1] / 2 - x[4];
  return {0.5 * (x[0] * x[0] + x[1] * x[1]) + x[2] * x[2] + 2 * x[3],
          x[0] * x[3] + x[1] * x[4] + x[2] * x[5],
          x[3] * x[3] + x[4] * x[4] + x[5] * x[5], a * a + b * b};
}

}  // namespace

KowalewskiConstants KowalewskiConstants::from_integrals(double H1, double H2,
                                                        double H4) {
  return {H1 / 6, H2 / 2, H4};
}

KowalewskiConstants KowalewskiConstants::from_state(const Point& state) {
  check_point(state, 6, "KowalewskiConstants");
  const auto H = integrals(state);
  if (std::abs(H[2] - 1) > 1e-8)
    throw ParamError("Kowalewski constants need |gamma|^2 = 1, got " +
                     std::to_string(H[2]));
  return from_integrals(H[0], H[1], H[3]);
}

ComplexPoint to_kowalewski_vars(const Point& s) {
  check_point(s, 6, "to_kowalewski_vars");
  const cd x1(s[0] / 2, s[1] / 2), x2(s[0] / 2, -s[1] / 2);
  return {x1, x2, x1 * x1 - cd(s[3], s[4]), x2 * x2 - cd(s[3], -s[4]),
          cd(s[2]), cd(s[5])};
}

std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

cd poly_eval(const std::vector<double>& c, cd x) {
  cd acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

KowalewskiPolynomials::KowalewskiPolynomials(const KowalewskiConstants& c)
    : c_(c) {
  const double h1 = c.h1, h2 = c.h2, k2 = c.k2;
  R_ = {1 - k2, -4 * h2, 6 * h1, 0, -1};
  // (s - 3h1)^2 - k^2
  const std::vector<double> quad{9 * h1 * h1 - k2, -6 * h1, 1};
  P5_ = poly_mul(quad, {-c.g3(), -c.g2(), 0, 4});
  // 4u^3 - g2 u - g3 with u = (s - 2h1)/2, expanded in s
  const std::vector<double> u{-h1, 0.5};
  const auto u3 = poly_mul(poly_mul(u, u), u);
  std::vector<double> cubic(4, 0.0);
  for (int i = 0; i < 4; ++i) cubic[i] = 4 * u3[i];
  cubic[0] += -c.g2() * u[0] - c.g3();
  cubic[1] += -c.g2() * u[1];
  Ps_ = poly_mul(quad, cubic);
}

cd KowalewskiPolynomials::R1(cd x1, cd x2) const {
  const double h1 = c_.h1, h2 = c_.h2, k2 = c_.k2;
  const cd s = x1 + x2, p = x1 * x2;
  return -6 * h1 * p * p + 4 * h2 * p * s - (1 - k2) * s * s +
         6 * h1 * (1 - k2) - 4 * h2 * h2;
}

cd KowalewskiPolynomials::Rxx(cd x1, cd x2) const {
  const cd p = x1 * x2;
  return -p * p + 6 * c_.h1 * p - 2 * c_.h2 * (x1 + x2) + (1 - c_.k2);
}

KowalewskiPolynomials polynomials(const KowalewskiConstants& c) {
  return KowalewskiPolynomials(c);
}

KummerResidual kummer_residual(const ComplexPoint& cp,
                               const KowalewskiConstants& c) {
  const KowalewskiPolynomials P(c);
  const cd d = cp.x1 - cp.x2;
  return {std::abs(cp.y1 * cp.y2 - c.k2),
          std::abs(cp.y1 * P.R(cp.x2) + cp.y2 * P.R(cp.x1) +
                   P.R1(cp.x1, cp.x2) + c.k2 * d * d)};
}

std::array<double, 4> quotient_identity_residuals(const ComplexPoint& cp,
                                                  const KowalewskiConstants& c) {
  const cd x1 = cp.x1, x2 = cp.x2, y1 = cp.y1, y2 = cp.y2;
  const cd s = x1 + x2;
  return {std::abs(y1 * y2 - c.k2),
          std::abs(cp.m3 * cp.m3 - (6 * c.h1 + y1 + y2 - s * s)),
          std::abs(cp.m3 * cp.g3 -
                   (2 * c.h2 + x1 * y2 + x2 * y1 - x1 * x2 * s)),
          std::abs(cp.g3 * cp.g3 - (1 - c.k2 + x1 * x1 * y2 + x2 * x2 * y1 -
                                    x1 * x1 * x2 * x2))};
}

namespace {

std::pair<cd, cd> s_from_root(const ComplexPoint& cp,
                              const KowalewskiConstants& c,
                              const KowalewskiPolynomials& P, cd root) {
  const cd d = (cp.x1 - cp.x2) * (cp.x1 - cp.x2);
  const cd r = P.Rxx(cp.x1, cp.x2);
  return {(r - root) / d + 3 * c.h1, (r + root) / d + 3 * c.h1};
}

void require_separated(const ComplexPoint& cp) {
  if (std::abs(cp.x1 - cp.x2) < 1e-10)
    throw SingularError("s_variables: x1 and x2 coincide");
}

}  // namespace

std::pair<cd, cd> s_variables(const ComplexPoint& cp,
                              const KowalewskiConstants& c) {
  require_separated(cp);
  const KowalewskiPolynomials P(c);
  const cd root = std::sqrt(P.R(cp.x1)) * std::sqrt(P.R(cp.x2));
  return s_from_root(cp, c, P, root);
}

std::pair<cd, cd> SVariableTracker::next(const ComplexPoint& cp) {
  require_separated(cp);
  cd root = std::sqrt(poly_.R(cp.x1)) * std::sqrt(poly_.R(cp.x2));
  if (prev_ && std::abs(-root - *prev_) < std::abs(root - *prev_)) root = -root;
  prev_ = root;
  return s_from_root(cp, c_, poly_, root);
}

std::array<cd, 4> fixed_point_equations(const ComplexPoint& cp,
                                        const KowalewskiConstants& c) {
  const cd x1 = cp.x1, x2 = cp.x2, y1 = cp.y1, y2 = cp.y2;
  return {y1 * y2 - c.k2, y1 + y2 - (x1 + x2) * (x1 + x2) + 6 * c.h1,
          x2 * y1 + x1 * y2 - x1 * x2 * (x1 + x2) + 2 * c.h2,
          x2 * x2 * y1 + x1 * x1 * y2 - x1 * x1 * x2 * x2 - c.k2 + 1.0};
}

ComplexPoint solve_fixed_point(const KowalewskiConstants& c, std::uint64_t seed,
                               int max_starts) {
  Rng rng(seed);
  for (int start = 0; start < max_starts; ++start) {
    Eigen::Vector4cd z;
    for (int i = 0; i < 4; ++i)
      z[i] = cd(rng.uniform(-2, 2), rng.uniform(-2, 2));
    for (int it = 0; it < 100; ++it) {
      const ComplexPoint cp{z[0], z[1], z[2], z[3], 0, 0};
      const auto f = fixed_point_equations(cp, c);
      Eigen::Vector4cd F(f[0], f[1], f[2], f[3]);
      if (!F.allFinite()) break;
      if (F.cwiseAbs().maxCoeff() < 1e-14) {
        if (std::abs(z[0] * z[0] - z[1] * z[1]) < 1e-6) break;
        return cp;
      }
      const cd x1 = z[0], x2 = z[1], y1 = z[2], y2 = z[3];
      Eigen::Matrix4cd Jf;
      Jf << 0.0, 0.0, y2, y1,
          -2.0 * (x1 + x2), -2.0 * (x1 + x2), 1.0, 1.0,
          y2 - 2.0 * x1 * x2 - x2 * x2, y1 - x1 * x1 - 2.0 * x1 * x2, x2, x1,
          2.0 * x1 * y2 - 2.0 * x1 * x2 * x2, 2.0 * x2 * y1 - 2.0 * x1 * x1 * x2,
          x2 * x2, x1 * x1;
      const auto lu = Jf.fullPivLu();
      if (!lu.isInvertible()) break;
      z -= lu.solve(F);
    }
  }
  throw SingularError("solve_fixed_point: Newton did not converge");
}

std::vector<KowalewskiSample> verify_trajectory(const Trajectory& traj) {
  std::vector<KowalewskiSample> out;
  if (traj.size() == 0) return out;
  const auto H0 = integrals(traj.states.front());
  const auto c = KowalewskiConstants::from_state(traj.states.front());
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto H = integrals(traj.states[i]);
    const auto k = kummer_residual(to_kowalewski_vars(traj.states[i]), c);
    KowalewskiSample s{traj.times[i], k.r1, k.r2, {}};
    for (int j = 0; j < 4; ++j) s.drift[j] = std::abs(H[j] - H0[j]);
    out.push_back(s);
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<KowalewskiSample>& rows) {
  const auto old = os.precision(17);
  os << "t,r1,r2,dH1,dH2,dH3,dH4\n";
  for (const auto& r : rows)
    os << r.t << ',' << r.r1 << ',' << r.r2 << ',' << r.drift[0] << ','
       << r.drift[1] << ',' << r.drift[2] << ',' << r.drift[3] << '\n';
  os.precision(old);
}

EulerRelationReport euler_relation_check(const Trajectory& traj,
                                         const KowalewskiConstants& c,
                                         const EulerRelationOptions& opts) {
  EulerRelationReport rep;
  const std::size_t n = traj.size();
  const KowalewskiPolynomials P(c);
  std::vector<std::pair<cd, cd>> s(n);
  std::vector<bool> valid(n, false);
  SVariableTracker tracker(c);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(traj.states[i][1]) < opts.min_m2) continue;
    s[i] = tracker.next(to_kowalewski_vars(traj.states[i]));
    valid[i] = true;
  }
  // Five-point stencil on a uniform grid.
  for (std::size_t i = 2; i + 2 < n; ++i) {
    bool ok = true;
    for (std::size_t j = i - 2; j <= i + 2; ++j) ok = ok && valid[j];
    if (!ok) {
      ++rep.skipped;
      continue;
    }
    const double h = (traj.times[i + 2] - traj.times[i - 2]) / 4;
    auto deriv = [&](auto get) {
      return (-get(s[i + 2]) + 8.0 * get(s[i + 1]) - 8.0 * get(s[i - 1]) +
              get(s[i - 2])) /
             (12 * h);
    };
    const cd ds1 = deriv([](const auto& v) { return v.first; });
    const cd ds2 = deriv([](const auto& v) { return v.second; });
    const auto quintic = [&](cd v) {
      return opts.cubic_in_s ? P.P5(v) : P.separating_quintic(v);
    };
    const cd p1 = quintic(s[i].first);
    const cd p2 = quintic(s[i].second);
    if (std::abs(p1) < opts.min_quintic || std::abs(p2) < opts.min_quintic) {
      ++rep.skipped;
      continue;
    }
    const cd a1 = ds1 / std::sqrt(p1);
    const cd a2 = ds2 / std::sqrt(p2);
    const double scale = std::max(std::abs(a1), std::abs(a2));
    if (scale == 0) {
      ++rep.skipped;
      continue;
    }
    const double r = std::min(std::abs(a1 + a2), std::abs(a1 - a2)) / scale;
    rep.max_residual = std::max(rep.max_residual, r);
    ++rep.used;
  }
  return rep;
}

}  // namespace lietop
