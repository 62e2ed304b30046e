#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "lietop/fields.hpp"

namespace lietop {

/** @brief Skew matrix field J(x) with optional analytic partials. */
class PoissonStructure {
 public:
  using MatrixFn = std::function<Matrix(const Point&)>;
  /// Returns D with D[k] = dJ/dx_k.
  using DerivFn = std::function<std::vector<Matrix>(const Point&)>;

  PoissonStructure(int dim, MatrixFn J, DerivFn dJ = {});

  /// Constant structure; its derivative is zero.
  static PoissonStructure constant(const Matrix& J);

  int dim() const { return dim_; }
  Matrix matrix(const Point& p) const;
  bool has_derivative() const { return static_cast<bool>(dJ_); }
  /// Analytic partials when available, central differences otherwise.
  std::vector<Matrix> derivatives(const Point& p, const FdConfig& cfg = {}) const;
  std::vector<Matrix> fd_derivatives(const Point& p,
                                     const FdConfig& cfg = {}) const;

 private:
  int dim_;
  MatrixFn J_;
  DerivFn dJ_;
};

struct NamedField {
  std::string name;
  ScalarField field;
};

/** @brief Poisson structure with Hamiltonian, integrals and Casimirs.
 *
 *  dim == 2n + k. The first integral is the Hamiltonian.
 */
class HamiltonianSystem {
 public:
  HamiltonianSystem(std::string name, PoissonStructure structure,
                    std::vector<NamedField> integrals,
                    std::vector<NamedField> casimirs, int n, int k);

  const std::string& name() const { return name_; }
  const PoissonStructure& structure() const { return structure_; }
  const ScalarField& hamiltonian() const { return integrals_.front().field; }
  const std::vector<NamedField>& integrals() const { return integrals_; }
  const std::vector<NamedField>& casimirs() const { return casimirs_; }
  /// Integrals followed by Casimirs.
  std::vector<NamedField> conserved() const;
  int n() const { return n_; }
  int k() const { return k_; }
  int dim() const { return structure_.dim(); }

 private:
  std::string name_;
  PoissonStructure structure_;
  std::vector<NamedField> integrals_;
  std::vector<NamedField> casimirs_;
  int n_;
  int k_;
};

ScalarField poisson_bracket(const PoissonStructure& P, const ScalarField& F,
                            const ScalarField& G, const FdConfig& cfg = {});
VectorField hamiltonian_vector_field(const HamiltonianSystem& S,
                                     const FdConfig& cfg = {});
VectorField hamiltonian_vector_field(const PoissonStructure& P,
                                     const ScalarField& H,
                                     const FdConfig& cfg = {});

double jacobi_residual(const PoissonStructure& P, const Point& p,
                       const FdConfig& cfg = {});
/// {{H,F},G} + {{F,G},H} + {{G,H},F} at p.
double bracket_jacobi_residual(const PoissonStructure& P, const ScalarField& F,
                               const ScalarField& G, const ScalarField& H,
                               const Point& p, const FdConfig& cfg = {});

/// max |{H,{F,G}}| over probes. F and G must be first integrals to within tol
/// at every probe, else PreconditionError naming the probe.
double poisson_theorem_check(const HamiltonianSystem& S, const ScalarField& F,
                             const ScalarField& G,
                             const std::vector<Point>& probes,
                             double tol = 1e-6, const FdConfig& cfg = {});

/// max |J(p) grad C(p)| over probes
double casimir_residual(const PoissonStructure& P, const ScalarField& C,
                        const std::vector<Point>& probes,
                        const FdConfig& cfg = {});

/// Numerical rank: singular values above rel * sigma_max.
int numerical_rank(const Matrix& A, double rel = 1e-8);

struct AuditOptions {
  double skew_tol = 1e-12;
  double jacobi_tol = 1e-8;
  double casimir_tol = 1e-8;
  /// Relative to 1 + |grad F| |J| |grad G|.
  double involution_tol = 1e-8;
  double rank_rel = 1e-8;
  /// Seeds the single resampling of rank-deficient probes.
  std::uint64_t seed = 0;
  FdConfig fd;
};

struct AuditReport {
  std::string system;
  int n = 0;
  int k = 0;
  bool skew_ok = false;
  double max_skew = 0;
  bool jacobi_ok = false;
  double max_jacobi = 0;
  bool casimirs_ok = false;
  double max_casimir = 0;
  std::vector<std::string> function_names;
  /// Max |{F_i, F_j}| over probes, over integrals then Casimirs.
  Matrix involution_matrix;
  bool involution_ok = false;
  bool independence_ok = false;
  int min_rank = 0;
  /// Indices of probes still rank deficient after one resample.
  std::vector<std::size_t> deficient_probes;
  std::size_t probe_count = 0;
  std::string verdict;
};

AuditReport audit(const HamiltonianSystem& S, const std::vector<Point>& probes,
                  const AuditOptions& opts = {});

nlohmann::json to_json(const AuditReport& r);

struct EigenReport {
  int rank = 0;
  std::vector<std::complex<double>> eigenvalues;
  bool even_rank = false;
  bool pure_imaginary = false;
  /// min |Im| / |Re| over the nonzero eigenvalues (inf when Re == 0).
  double min_dominance = 0;
  bool ok() const { return even_rank && pure_imaginary; }
};

EigenReport eigen_structure(const PoissonStructure& P, const Point& p,
                            double rank_rel = 1e-8);

}  // namespace lietop
