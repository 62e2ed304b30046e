#pragma once

#include <string>
#include <vector>

#include "lietop/fields.hpp"

namespace lietop {

class DifferentialForm;

struct Integrator {
  enum class Scheme { rk4 };
  Scheme scheme = Scheme::rk4;
  double step = 1e-3;

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Point> states;
  /// invariant_log[i][s] is integral i evaluated at sample s.
  std::vector<std::vector<double>> invariant_log;

  std::size_t size() const { return times.size(); }
  /// max_s |I_i(s) - I_i(0)|
  double max_drift(std::size_t i) const;
};

/// Number of equal RK4 substeps used to cover |t|.
long long substep_count(double t, const Integrator& integ);

/** @brief Time-t flow map of X by fixed-step RK4.
 *
 *  Negative t integrates the reversed field. Throws BlowupError carrying the
 *  last time the state was finite.
 */
Point flow(const VectorField& X, const Point& x0, double t,
           const Integrator& integ = {});

Trajectory trace(const VectorField& X, const Point& x0, double t1,
                 const Integrator& integ = {},
                 const std::vector<ScalarField>& integrals = {});

double group_law_residual(const VectorField& X, const Point& x0, double t,
                          double s, const Integrator& integ = {});

/// Pushforward of v by the time-t flow, by central differences of the flow map.
Vector flow_pushforward(const VectorField& X, const Point& p, const Vector& v,
                        double t, const Integrator& integ = {},
                        double h = 1e-5);

/// (g_t^* omega)(p)(vs)
double pullback_form(const VectorField& X, const DifferentialForm& omega,
                     const Point& p, const std::vector<Vector>& vs, double t,
                     const Integrator& integ = {}, double h = 1e-5);

}  // namespace lietop
