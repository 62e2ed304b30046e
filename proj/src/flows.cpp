#include "lietop/flows.hpp"

#include <cmath>
#include <string>

#include "lietop/errors.hpp"
#include "lietop/exterior.hpp"

namespace lietop {

void Integrator::validate() const {
  if (!(step > 0) || !std::isfinite(step))
    throw ParamError("Integrator: step must be positive and finite");
}

double Trajectory::max_drift(std::size_t i) const {
  if (i >= invariant_log.size()) throw ArgError("max_drift: no such integral");
  const auto& log = invariant_log[i];
  double d = 0;
  for (double v : log) d = std::max(d, std::abs(v - log.front()));
  return d;
}

long long substep_count(double t, const Integrator& integ) {
  integ.validate();
  if (!std::isfinite(t)) throw ArgError("flow: time must be finite");
  const double n = std::ceil(std::abs(t) / integ.step);
  if (n > 1e8) throw ArgError("flow: more than 1e8 substeps requested");
  return static_cast<long long>(n);
}

namespace {

Point rk4_step(const VectorField& X, const Point& x, double h) {
  const Vector k1 = X(x);
  const Vector k2 = X(x + 0.5 * h * k1);
  const Vector k3 = X(x + 0.5 * h * k2);
  const Vector k4 = X(x + h * k3);
  return x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
}

// A field that overflows on a runaway stage raises DomainError before the
// state itself turns non-finite. Past the first step that is a blowup.
Point guarded_step(const VectorField& X, const Point& x, double h, long long i) {
  try {
    return rk4_step(X, x, h);
  } catch (const DomainError& e) {
    if (i == 0) throw;
    const double t_good = static_cast<double>(i) * h;
    throw BlowupError(t_good, "flow: field evaluation failed after t = " +
                                  std::to_string(t_good) + " (" + e.what() + ")");
  }
}

void require_finite(const Point& x, double t_good) {
  if (!x.allFinite())
    throw BlowupError(t_good, "flow: state became non-finite after t = " +
                                  std::to_string(t_good));
}

}  // namespace

Point flow(const VectorField& X, const Point& x0, double t,
           const Integrator& integ) {
  check_point(x0, X.dim(), "flow");
  if (!x0.allFinite()) throw ArgError("flow: initial point is not finite");
  const long long n = substep_count(t, integ);
  if (n == 0) return x0;
  const double h = t / static_cast<double>(n);
  Point x = x0;
  for (long long i = 0; i < n; ++i) {
    Point next = guarded_step(X, x, h, i);
    require_finite(next, static_cast<double>(i) * h);
    x = std::move(next);
  }
  return x;
}

Trajectory trace(const VectorField& X, const Point& x0, double t1,
                 const Integrator& integ,
                 const std::vector<ScalarField>& integrals) {
  check_point(x0, X.dim(), "trace");
  if (!x0.allFinite()) throw ArgError("trace: initial point is not finite");
  if (t1 < 0) throw ArgError("trace: t1 must be non-negative");
  const long long n = substep_count(t1, integ);
  const double h = n > 0 ? t1 / static_cast<double>(n) : 0.0;
  Trajectory tr;
  tr.times.reserve(n + 1);
  tr.states.reserve(n + 1);
  tr.invariant_log.assign(integrals.size(), {});
  auto record = [&](double t, const Point& x) {
    tr.times.push_back(t);
    tr.states.push_back(x);
    for (std::size_t i = 0; i < integrals.size(); ++i)
      tr.invariant_log[i].push_back(integrals[i](x));
  };
  Point x = x0;
  record(0.0, x);
  for (long long i = 0; i < n; ++i) {
    Point next = guarded_step(X, x, h, i);
    require_finite(next, static_cast<double>(i) * h);
    x = std::move(next);
    record(i + 1 == n ? t1 : static_cast<double>(i + 1) * h, x);
  }
  return tr;
}

double group_law_residual(const VectorField& X, const Point& x0, double t,
                          double s, const Integrator& integ) {
  const Point a = flow(X, x0, t + s, integ);
  const Point b = flow(X, flow(X, x0, s, integ), t, integ);
  return (a - b).norm();
}

Vector flow_pushforward(const VectorField& X, const Point& p, const Vector& v,
                        double t, const Integrator& integ, double h) {
  if (t == 0.0) return v;
  return (flow(X, p + h * v, t, integ) - flow(X, p - h * v, t, integ)) /
         (2 * h);
}

double pullback_form(const VectorField& X, const DifferentialForm& omega,
                     const Point& p, const std::vector<Vector>& vs, double t,
                     const Integrator& integ, double h) {
  if (t == 0.0) return omega.evaluate(p, vs);
  std::vector<Vector> pushed;
  pushed.reserve(vs.size());
  for (const auto& v : vs) pushed.push_back(flow_pushforward(X, p, v, t, integ, h));
  return omega.evaluate(flow(X, p, t, integ), pushed);
}

}  // namespace lietop
