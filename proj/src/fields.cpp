#include "lietop/fields.hpp"

#include <cmath>
#include <string>

#include "lietop/errors.hpp"

namespace lietop {

void FdConfig::validate() const {
  if (!(rel_step > 0) || !std::isfinite(rel_step))
    throw ParamError("FdConfig: rel_step must be positive");
  if (!(fd_tol > 0) || !std::isfinite(fd_tol))
    throw ParamError("FdConfig: fd_tol must be positive");
}

void check_point(const Point& p, int dim, const char* who) {
  if (p.size() != dim)
    throw DimError(std::string(who) + ": point has length " +
                   std::to_string(p.size()) + ", expected " +
                   std::to_string(dim));
}

ScalarField::ScalarField(int dim, Eval eval, Grad grad)
    : dim_(dim),
      eval_(std::make_shared<const Eval>(std::move(eval))),
      grad_(std::make_shared<const Grad>(std::move(grad))) {
  if (dim <= 0) throw DimError("ScalarField: dimension must be positive");
  if (!*eval_) throw ArgError("ScalarField: empty evaluator");
}

ScalarField ScalarField::constant(int dim, double c) {
  return ScalarField(
      dim, [c](const Point&) { return c; },
      [dim](const Point&) { return Vector(Vector::Zero(dim)); });
}

ScalarField ScalarField::coordinate(int dim, int i) {
  if (i < 0 || i >= dim) throw DimError("coordinate index out of range");
  return ScalarField(
      dim, [i](const Point& p) { return p[i]; },
      [dim, i](const Point&) { return Vector(Vector::Unit(dim, i)); });
}

double ScalarField::operator()(const Point& p) const {
  check_point(p, dim_, "ScalarField");
  return (*eval_)(p);
}

Vector ScalarField::analytic_gradient(const Point& p) const {
  check_point(p, dim_, "ScalarField gradient");
  Vector g = (*grad_)(p);
  if (g.size() != dim_) throw DimError("analytic gradient has wrong length");
  return g;
}

namespace {

void same_dim(int a, int b, const char* who) {
  if (a != b) throw DimError(std::string(who) + ": dimension mismatch");
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  same_dim(a.dim(), b.dim(), "ScalarField +");
  ScalarField::Grad g;
  if (a.has_gradient() && b.has_gradient())
    g = [a, b](const Point& p) {
      return Vector(a.analytic_gradient(p) + b.analytic_gradient(p));
    };
  return ScalarField(
      a.dim(), [a, b](const Point& p) { return a(p) + b(p); }, g);
}

ScalarField operator-(const ScalarField& a) { return -1.0 * a; }

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return a + (-b);
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  same_dim(a.dim(), b.dim(), "ScalarField *");
  ScalarField::Grad g;
  if (a.has_gradient() && b.has_gradient())
    g = [a, b](const Point& p) {
      return Vector(a(p) * b.analytic_gradient(p) +
                    b(p) * a.analytic_gradient(p));
    };
  return ScalarField(
      a.dim(), [a, b](const Point& p) { return a(p) * b(p); }, g);
}

ScalarField operator*(double c, const ScalarField& a) {
  ScalarField::Grad g;
  if (a.has_gradient())
    g = [a, c](const Point& p) { return Vector(c * a.analytic_gradient(p)); };
  return ScalarField(
      a.dim(), [a, c](const Point& p) { return c * a(p); }, g);
}

VectorField::VectorField(int dim, Eval eval)
    : dim_(dim), eval_(std::make_shared<const Eval>(std::move(eval))) {
  if (dim <= 0) throw DimError("VectorField: dimension must be positive");
  if (!*eval_) throw ArgError("VectorField: empty evaluator");
}

VectorField VectorField::zero(int dim) {
  return VectorField(dim,
                     [dim](const Point&) { return Vector(Vector::Zero(dim)); });
}

VectorField VectorField::constant(const Vector& v) {
  return VectorField(static_cast<int>(v.size()),
                     [v](const Point&) { return v; });
}

VectorField VectorField::coordinate(int dim, int j) {
  if (j < 0 || j >= dim) throw DimError("coordinate index out of range");
  return constant(Vector::Unit(dim, j));
}

Vector VectorField::operator()(const Point& p) const {
  check_point(p, dim_, "VectorField");
  Vector v = (*eval_)(p);
  if (v.size() != dim_) throw DimError("VectorField: output has wrong length");
  return v;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  same_dim(a.dim(), b.dim(), "VectorField +");
  return VectorField(a.dim(),
                     [a, b](const Point& p) { return Vector(a(p) + b(p)); });
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  same_dim(a.dim(), b.dim(), "VectorField -");
  return VectorField(a.dim(),
                     [a, b](const Point& p) { return Vector(a(p) - b(p)); });
}

VectorField operator*(const ScalarField& f, const VectorField& X) {
  same_dim(f.dim(), X.dim(), "ScalarField * VectorField");
  return VectorField(X.dim(),
                     [f, X](const Point& p) { return Vector(f(p) * X(p)); });
}

Vector fd_gradient(const ScalarField& f, const Point& p, const FdConfig& cfg) {
  check_point(p, f.dim(), "gradient");
  if (!p.allFinite()) throw DomainError("gradient: probe point is not finite");
  const int m = f.dim();
  Vector g(m);
  Point q = p;
  for (int i = 0; i < m; ++i) {
    const double h = cfg.rel_step * std::max(1.0, std::abs(p[i]));
    q[i] = p[i] + h;
    const double fp = f(q);
    q[i] = p[i] - h;
    const double fm = f(q);
    q[i] = p[i];
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw DomainError("gradient: non-finite evaluation near probe point");
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

Vector gradient(const ScalarField& f, const Point& p, const FdConfig& cfg) {
  if (f.has_gradient()) {
    Vector g = f.analytic_gradient(p);
    if (!g.allFinite()) throw DomainError("gradient: non-finite analytic value");
    return g;
  }
  return fd_gradient(f, p, cfg);
}

Matrix jacobian(const VectorField& X, const Point& p, const FdConfig& cfg) {
  check_point(p, X.dim(), "jacobian");
  if (!p.allFinite()) throw DomainError("jacobian: probe point is not finite");
  const int m = X.dim();
  Matrix J(m, m);
  Point q = p;
  for (int j = 0; j < m; ++j) {
    const double h = cfg.rel_step * std::max(1.0, std::abs(p[j]));
    q[j] = p[j] + h;
    const Vector fp = X(q);
    q[j] = p[j] - h;
    const Vector fm = X(q);
    q[j] = p[j];
    if (!fp.allFinite() || !fm.allFinite())
      throw DomainError("jacobian: non-finite evaluation near probe point");
    J.col(j) = (fp - fm) / (2 * h);
  }
  return J;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y,
                        const FdConfig& cfg) {
  same_dim(X.dim(), Y.dim(), "lie_bracket");
  return VectorField(X.dim(), [X, Y, cfg](const Point& p) {
    return Vector(jacobian(Y, p, cfg) * X(p) - jacobian(X, p, cfg) * Y(p));
  });
}

ScalarField directional_derivative(const VectorField& X, const ScalarField& f,
                                   const FdConfig& cfg) {
  same_dim(X.dim(), f.dim(), "directional_derivative");
  return ScalarField(X.dim(), [X, f, cfg](const Point& p) {
    return X(p).dot(gradient(f, p, cfg));
  });
}

ScalarField partial(const ScalarField& f, int j, const FdConfig& cfg) {
  if (j < 0 || j >= f.dim()) throw DimError("partial: index out of range");
  return ScalarField(f.dim(), [f, j, cfg](const Point& p) {
    if (f.has_gradient()) return f.analytic_gradient(p)[j];
    const double h = cfg.rel_step * std::max(1.0, std::abs(p[j]));
    Point q = p;
    q[j] = p[j] + h;
    const double fp = f(q);
    q[j] = p[j] - h;
    const double fm = f(q);
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw DomainError("partial: non-finite evaluation near probe point");
    return (fp - fm) / (2 * h);
  });
}

}  // namespace lietop
