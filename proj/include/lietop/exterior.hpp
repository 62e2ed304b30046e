#pragma once

#include <map>
#include <vector>

#include "lietop/fields.hpp"
#include "lietop/flows.hpp"

namespace lietop {

/// Strictly increasing 0-based coordinate indices i_1 < ... < i_k.
using IndexTuple = std::vector<int>;

/** @brief Degree-k form on R^m, sum of f_I dx_I over increasing tuples I.
 *
 *  Only strictly increasing keys are stored. A degree-0 form always holds a
 *  single coefficient under the empty tuple.
 */
class DifferentialForm {
 public:
  using Coefficients = std::map<IndexTuple, ScalarField>;

  /// The zero form.
  DifferentialForm(int dim, int degree);
  DifferentialForm(int dim, int degree, Coefficients coeffs);

  static DifferentialForm function(const ScalarField& f);
  /// c dx_{i_1} ^ ... ^ dx_{i_k} for arbitrary index order; repeated indices
  /// give the zero form.
  static DifferentialForm monomial(int dim, const std::vector<int>& idx,
                                   const ScalarField& c);
  static DifferentialForm monomial(int dim, const std::vector<int>& idx,
                                   double c = 1.0);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Coefficients& coefficients() const { return coeffs_; }

  /// Sum over keys of f_I(p) times the minor of [v_1 ... v_k] on rows I.
  double evaluate(const Point& p, const std::vector<Vector>& vs) const;
  /// Numeric coefficients at p.
  std::map<IndexTuple, double> coefficients_at(const Point& p) const;
  /// Largest |coefficient| at p; 0 for the empty form.
  double max_abs_coefficient(const Point& p) const;

 private:
  int dim_;
  int degree_;
  Coefficients coeffs_;
};

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm operator*(const ScalarField& f, const DifferentialForm& w);
DifferentialForm operator*(double c, const DifferentialForm& w);

/// Sign of the permutation sorting idx, or 0 if idx has a repeat.
int sort_sign(std::vector<int>& idx);

double determinant(const Matrix& M);

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm interior_product(const VectorField& X,
                                  const DifferentialForm& w);
DifferentialForm exterior_derivative(const DifferentialForm& w,
                                     const FdConfig& cfg = {});
DifferentialForm lie_derivative_cartan(const VectorField& X,
                                       const DifferentialForm& w,
                                       const FdConfig& cfg = {});

/// Central difference in t of (g_t^* w)(p)(vs) over [-dt, dt].
double lie_derivative_flow(const VectorField& X, const DifferentialForm& w,
                           const Point& p, const std::vector<Vector>& vs,
                           double dt = 1e-3, const Integrator& integ = {});

struct NondegeneracyReport {
  bool nondegenerate = false;
  /// Coefficient of dx_1 ^ ... ^ dx_2n in the n-fold wedge power.
  double top_coefficient = 0;
  /// top_coefficient / n!
  double normalized_top = 0;
  /// S_ij = w(e_i, e_j)
  Matrix skew;
  double det = 0;
};

NondegeneracyReport check_nondegenerate(const DifferentialForm& w,
                                        const Point& p);

}  // namespace lietop
