#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "lietop/fields.hpp"
#include "lietop/flows.hpp"

namespace lietop {

using cd = std::complex<double>;

/** @brief Level-set constants c1 = 6 h1, c2 = 2 h2, c4 = k^2 (c3 = 1). */
struct KowalewskiConstants {
  double h1 = 0;
  double h2 = 0;
  double k2 = 0;

  static KowalewskiConstants from_integrals(double H1, double H2, double H4);
  /// Requires |gamma|^2 = 1 within 1e-8.
  static KowalewskiConstants from_state(const Point& state);

  double g2() const { return k2 - 1 + 3 * h1 * h1; }
  double g3() const { return h1 * (k2 - 1 - h1 * h1) + h2 * h2; }
};

struct ComplexPoint {
  cd x1, x2, y1, y2, m3, g3;
};

/// x1,2 = (m1 +- i m2)/2, y1,2 = x1,2^2 - (g1 +- i g2).
ComplexPoint to_kowalewski_vars(const Point& state);

/// Ascending coefficient vectors.
std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b);
cd poly_eval(const std::vector<double>& c, cd x);

/** @brief R(x), R1(x1,x2), R(x1,x2) and the quintics in s. */
class KowalewskiPolynomials {
 public:
  explicit KowalewskiPolynomials(const KowalewskiConstants& c);

  /// -x^4 + 6 h1 x^2 - 4 h2 x + 1 - k^2
  const std::vector<double>& R_coeffs() const { return R_; }
  /// ((s - 3 h1)^2 - k^2)(4 s^3 - g2 s - g3)
  const std::vector<double>& P5_coeffs() const { return P5_; }
  /// ((s - 3 h1)^2 - k^2)(4 u^3 - g2 u - g3), u = (s - 2 h1)/2. This is the
  /// quintic that separates the flow in s1, s2.
  const std::vector<double>& separating_coeffs() const { return Ps_; }

  cd R(cd x) const { return poly_eval(R_, x); }
  cd R1(cd x1, cd x2) const;
  cd Rxx(cd x1, cd x2) const;
  cd P5(cd s) const { return poly_eval(P5_, s); }
  cd separating_quintic(cd s) const { return poly_eval(Ps_, s); }

 private:
  KowalewskiConstants c_;
  std::vector<double> R_, P5_, Ps_;
};

KowalewskiPolynomials polynomials(const KowalewskiConstants& c);

struct KummerResidual {
  double r1;
  double r2;
};

KummerResidual kummer_residual(const ComplexPoint& cp,
                               const KowalewskiConstants& c);

/// Residuals of y1 y2 = k^2 and the m3^2, m3 g3, g3^2 expressions.
std::array<double, 4> quotient_identity_residuals(const ComplexPoint& cp,
                                                  const KowalewskiConstants& c);

/// (s1, s2) with the principal branch of sqrt R(x1) sqrt R(x2).
/// Throws SingularError when |x1 - x2| < 1e-10.
std::pair<cd, cd> s_variables(const ComplexPoint& cp,
                              const KowalewskiConstants& c);

/** @brief s-variables along a sampled path with a continuous root branch. */
class SVariableTracker {
 public:
  explicit SVariableTracker(const KowalewskiConstants& c) : c_(c), poly_(c) {}
  std::pair<cd, cd> next(const ComplexPoint& cp);
  void reset() { prev_.reset(); }

 private:
  KowalewskiConstants c_;
  KowalewskiPolynomials poly_;
  std::optional<cd> prev_;
};

/// Newton solve of the fixed-point system m3 = g3 = 0 for (x1, x2, y1, y2).
/// Tries seeded starts until one converges; throws SingularError otherwise.
ComplexPoint solve_fixed_point(const KowalewskiConstants& c,
                               std::uint64_t seed = 1, int max_starts = 200);
/// Residuals of the four fixed-point equations.
std::array<cd, 4> fixed_point_equations(const ComplexPoint& cp,
                                        const KowalewskiConstants& c);

struct KowalewskiSample {
  double t;
  double r1;
  double r2;
  std::array<double, 4> drift;
};

/// Per-sample Kummer residuals and |H_i - c_i| against the first sample.
std::vector<KowalewskiSample> verify_trajectory(const Trajectory& traj);
void write_csv(std::ostream& os, const std::vector<KowalewskiSample>& rows);

struct EulerRelationOptions {
  /// Skip stencils with |m2| below this (s1 passes through infinity at m2 = 0).
  double min_m2 = 0.05;
  /// Skip samples where |separating quintic| at s1 or s2 is below this.
  double min_quintic = 1e-4;
  /// Use P5 with the cubic factor in s itself instead of the separating one.
  bool cubic_in_s = false;
};

struct EulerRelationReport {
  double max_residual = 0;
  std::size_t used = 0;
  std::size_t skipped = 0;
};

/** @brief Finite-difference check of ds1/sqrt(P(s1)) +- ds2/sqrt(P(s2)) = 0.
 *
 *  Uses the separating quintic. Residual per sample is
 *  min(|a1 + a2|, |a1 - a2|) / max(|a1|, |a2|), a_i = s_i' / sqrt(P(s_i)).
 */
EulerRelationReport euler_relation_check(const Trajectory& traj,
                                         const KowalewskiConstants& c,
                                         const EulerRelationOptions& opts = {});

}  // namespace lietop
