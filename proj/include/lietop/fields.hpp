#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>

namespace lietop {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// A point of R^m in the single global chart.
using Point = Eigen::VectorXd;

struct FdConfig {
  double rel_step = 6.055454452393343e-06;  // cbrt(DBL_EPSILON)
  double fd_tol = 1e-6;

  void validate() const;
};

/** @brief Scalar field on R^m with an optional analytic gradient. */
class ScalarField {
 public:
  using Eval = std::function<double(const Point&)>;
  using Grad = std::function<Vector(const Point&)>;

  ScalarField(int dim, Eval eval, Grad grad = {});

  static ScalarField constant(int dim, double c);
  /// The coordinate function x_i (0-based).
  static ScalarField coordinate(int dim, int i);

  int dim() const { return dim_; }
  double operator()(const Point& p) const;
  bool has_gradient() const { return static_cast<bool>(*grad_); }
  /// Analytic gradient; only valid when has_gradient().
  Vector analytic_gradient(const Point& p) const;

 private:
  int dim_;
  std::shared_ptr<const Eval> eval_;
  std::shared_ptr<const Grad> grad_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);

/** @brief Vector field on R^m. */
class VectorField {
 public:
  using Eval = std::function<Vector(const Point&)>;

  VectorField(int dim, Eval eval);

  static VectorField zero(int dim);
  static VectorField constant(const Vector& v);
  /// The coordinate field d/dx_j (0-based).
  static VectorField coordinate(int dim, int j);

  int dim() const { return dim_; }
  Vector operator()(const Point& p) const;

 private:
  int dim_;
  std::shared_ptr<const Eval> eval_;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const ScalarField& f, const VectorField& X);

void check_point(const Point& p, int dim, const char* who);

Vector gradient(const ScalarField& f, const Point& p, const FdConfig& cfg = {});
/// Central-difference gradient, ignoring any analytic gradient.
Vector fd_gradient(const ScalarField& f, const Point& p, const FdConfig& cfg = {});
Matrix jacobian(const VectorField& X, const Point& p, const FdConfig& cfg = {});
/// p -> DY(p) X(p) - DX(p) Y(p)
VectorField lie_bracket(const VectorField& X, const VectorField& Y,
                        const FdConfig& cfg = {});
/// X.f as a scalar field.
ScalarField directional_derivative(const VectorField& X, const ScalarField& f,
                                   const FdConfig& cfg = {});
/// Partial derivative df/dx_j as a scalar field.
ScalarField partial(const ScalarField& f, int j, const FdConfig& cfg = {});

}  // namespace lietop
