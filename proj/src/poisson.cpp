#include "lietop/poisson.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

#include "lietop/errors.hpp"
#include "lietop/random.hpp"

namespace lietop {

PoissonStructure::PoissonStructure(int dim, MatrixFn J, DerivFn dJ)
    : dim_(dim), J_(std::move(J)), dJ_(std::move(dJ)) {
  if (dim <= 0) throw DimError("PoissonStructure: dimension must be positive");
  if (!J_) throw ArgError("PoissonStructure: empty matrix function");
}

PoissonStructure PoissonStructure::constant(const Matrix& J) {
  const int m = static_cast<int>(J.rows());
  if (J.cols() != m) throw ShapeError("PoissonStructure: J must be square");
  return PoissonStructure(
      m, [J](const Point&) { return J; },
      [m](const Point&) {
        return std::vector<Matrix>(m, Matrix::Zero(m, m));
      });
}

Matrix PoissonStructure::matrix(const Point& p) const {
  check_point(p, dim_, "PoissonStructure");
  Matrix J = J_(p);
  if (J.rows() != dim_ || J.cols() != dim_)
    throw ShapeError("PoissonStructure: J(p) has wrong shape");
  if (!J.allFinite()) throw DomainError("PoissonStructure: non-finite J(p)");
  return J;
}

std::vector<Matrix> PoissonStructure::fd_derivatives(const Point& p,
                                                     const FdConfig& cfg) const {
  check_point(p, dim_, "PoissonStructure derivatives");
  std::vector<Matrix> D(dim_);
  Point q = p;
  for (int k = 0; k < dim_; ++k) {
    const double h = cfg.rel_step * std::max(1.0, std::abs(p[k]));
    q[k] = p[k] + h;
    const Matrix Jp = matrix(q);
    q[k] = p[k] - h;
    const Matrix Jm = matrix(q);
    q[k] = p[k];
    D[k] = (Jp - Jm) / (2 * h);
  }
  return D;
}

std::vector<Matrix> PoissonStructure::derivatives(const Point& p,
                                                  const FdConfig& cfg) const {
  if (!dJ_) return fd_derivatives(p, cfg);
  check_point(p, dim_, "PoissonStructure derivatives");
  auto D = dJ_(p);
  if (static_cast<int>(D.size()) != dim_)
    throw ShapeError("PoissonStructure: dJ has wrong length");
  return D;
}

HamiltonianSystem::HamiltonianSystem(std::string name,
                                     PoissonStructure structure,
                                     std::vector<NamedField> integrals,
                                     std::vector<NamedField> casimirs, int n,
                                     int k)
    : name_(std::move(name)),
      structure_(std::move(structure)),
      integrals_(std::move(integrals)),
      casimirs_(std::move(casimirs)),
      n_(n),
      k_(k) {
  if (integrals_.empty())
    throw ArgError("HamiltonianSystem: the Hamiltonian must be given");
  if (n < 0 || k < 0 || structure_.dim() != 2 * n + k)
    throw DimError("HamiltonianSystem: dimension " +
                   std::to_string(structure_.dim()) + " != 2n + k");
  for (const auto& f : conserved())
    if (f.field.dim() != structure_.dim())
      throw DimError("HamiltonianSystem: field '" + f.name +
                     "' has wrong dimension");
}

std::vector<NamedField> HamiltonianSystem::conserved() const {
  std::vector<NamedField> out = integrals_;
  out.insert(out.end(), casimirs_.begin(), casimirs_.end());
  return out;
}

ScalarField poisson_bracket(const PoissonStructure& P, const ScalarField& F,
                            const ScalarField& G, const FdConfig& cfg) {
  if (F.dim() != P.dim() || G.dim() != P.dim())
    throw DimError("poisson_bracket: dimension mismatch");
  return ScalarField(P.dim(), [P, F, G, cfg](const Point& p) {
    return gradient(F, p, cfg).dot(P.matrix(p) * gradient(G, p, cfg));
  });
}

VectorField hamiltonian_vector_field(const PoissonStructure& P,
                                     const ScalarField& H,
                                     const FdConfig& cfg) {
  if (H.dim() != P.dim())
    throw DimError("hamiltonian_vector_field: dimension mismatch");
  return VectorField(P.dim(), [P, H, cfg](const Point& p) {
    return Vector(P.matrix(p) * gradient(H, p, cfg));
  });
}

VectorField hamiltonian_vector_field(const HamiltonianSystem& S,
                                     const FdConfig& cfg) {
  return hamiltonian_vector_field(S.structure(), S.hamiltonian(), cfg);
}

double jacobi_residual(const PoissonStructure& P, const Point& p,
                       const FdConfig& cfg) {
  const Matrix J = P.matrix(p);
  const auto D = P.derivatives(p, cfg);
  const int m = P.dim();
  double worst = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int l = j + 1; l < m; ++l) {
        double s = 0;
        for (int k = 0; k < m; ++k)
          s += J(k, j) * D[k](l, i) + J(k, i) * D[k](j, l) +
               J(k, l) * D[k](i, j);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

double bracket_jacobi_residual(const PoissonStructure& P, const ScalarField& F,
                               const ScalarField& G, const ScalarField& H,
                               const Point& p, const FdConfig& cfg) {
  const auto b = [&](const ScalarField& a, const ScalarField& c) {
    return poisson_bracket(P, a, c, cfg);
  };
  return std::abs(b(b(H, F), G)(p) + b(b(F, G), H)(p) + b(b(G, H), F)(p));
}

double poisson_theorem_check(const HamiltonianSystem& S, const ScalarField& F,
                             const ScalarField& G,
                             const std::vector<Point>& probes, double tol,
                             const FdConfig& cfg) {
  if (probes.empty()) throw ArgError("poisson_theorem_check: no probes");
  const auto& P = S.structure();
  const auto& H = S.hamiltonian();
  const ScalarField HF = poisson_bracket(P, H, F, cfg);
  const ScalarField HG = poisson_bracket(P, H, G, cfg);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double a = std::abs(HF(probes[i]));
    const double b = std::abs(HG(probes[i]));
    if (a > tol || b > tol)
      throw PreconditionError(
          i, "poisson_theorem_check: input is not a first integral at probe " +
                 std::to_string(i) + " (|{H,F}| = " + std::to_string(a) +
                 ", |{H,G}| = " + std::to_string(b) + ")");
  }
  const ScalarField HFG = poisson_bracket(P, H, poisson_bracket(P, F, G, cfg), cfg);
  double worst = 0;
  for (const auto& p : probes) worst = std::max(worst, std::abs(HFG(p)));
  return worst;
}

double casimir_residual(const PoissonStructure& P, const ScalarField& C,
                        const std::vector<Point>& probes, const FdConfig& cfg) {
  double worst = 0;
  for (const auto& p : probes)
    worst = std::max(worst, (P.matrix(p) * gradient(C, p, cfg)).norm());
  return worst;
}

int numerical_rank(const Matrix& A, double rel) {
  if (A.size() == 0) return 0;
  const Eigen::JacobiSVD<Matrix> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > rel * s[0]) ++r;
  return r;
}

namespace {

Matrix gradient_matrix(const std::vector<NamedField>& fs, const Point& p,
                       const FdConfig& cfg) {
  Matrix G(static_cast<long>(fs.size()), p.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    G.row(static_cast<long>(i)) = gradient(fs[i].field, p, cfg).transpose();
  return G;
}

}  // namespace

AuditReport audit(const HamiltonianSystem& S, const std::vector<Point>& probes,
                  const AuditOptions& opts) {
  if (probes.empty()) throw ArgError("audit: empty probe list");
  const auto& P = S.structure();
  const auto fs = S.conserved();
  const int nf = static_cast<int>(fs.size());
  AuditReport r;
  r.system = S.name();
  r.n = S.n();
  r.k = S.k();
  r.probe_count = probes.size();
  for (const auto& f : fs) r.function_names.push_back(f.name);
  r.involution_matrix = Matrix::Zero(nf, nf);
  r.min_rank = std::numeric_limits<int>::max();
  bool involution_ok = true;
  bool casimirs_ok = true;
  Rng rng(opts.seed);

  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    const Point& p = probes[pi];
    const Matrix J = P.matrix(p);
    const double jn = J.norm();
    r.max_skew = std::max(r.max_skew, (J + J.transpose()).cwiseAbs().maxCoeff());
    r.max_jacobi = std::max(r.max_jacobi, jacobi_residual(P, p, opts.fd));

    Matrix G = gradient_matrix(fs, p, opts.fd);
    for (const auto& c : S.casimirs()) {
      const Vector g = gradient(c.field, p, opts.fd);
      const double res = (J * g).norm();
      r.max_casimir = std::max(r.max_casimir, res);
      if (res > opts.casimir_tol * std::max(1.0, jn * g.norm())) casimirs_ok = false;
    }
    for (int a = 0; a < nf; ++a)
      for (int b = 0; b < nf; ++b) {
        const double v = std::abs(G.row(a).dot(J * G.row(b).transpose()));
        r.involution_matrix(a, b) = std::max(r.involution_matrix(a, b), v);
        const double scale = 1.0 + G.row(a).norm() * jn * G.row(b).norm();
        if (v > opts.involution_tol * scale) involution_ok = false;
      }

    int rank = numerical_rank(G, opts.rank_rel);
    if (rank < nf) {
      Point q = p;
      for (int i = 0; i < q.size(); ++i)
        q[i] += 1e-3 * std::max(1.0, std::abs(p[i])) * rng.uniform(-1, 1);
      rank = numerical_rank(gradient_matrix(fs, q, opts.fd), opts.rank_rel);
      if (rank < nf) r.deficient_probes.push_back(pi);
    }
    r.min_rank = std::min(r.min_rank, rank);
  }

  r.skew_ok = r.max_skew <= opts.skew_tol;
  r.jacobi_ok = r.max_jacobi <= opts.jacobi_tol;
  r.casimirs_ok = casimirs_ok;
  r.involution_ok = involution_ok;
  r.independence_ok = r.min_rank == nf;
  if (nf < S.n() + S.k())
    r.verdict = "no-verdict";
  else if (r.skew_ok && r.jacobi_ok && r.casimirs_ok && r.involution_ok &&
           r.independence_ok && r.min_rank == S.n() + S.k())
    r.verdict = "liouville-integrable-at-probes";
  else
    r.verdict = "not-integrable-at-probes";
  return r;
}

nlohmann::json to_json(const AuditReport& r) {
  nlohmann::json inv = nlohmann::json::array();
  for (int a = 0; a < r.involution_matrix.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int b = 0; b < r.involution_matrix.cols(); ++b)
      row.push_back(r.involution_matrix(a, b));
    inv.push_back(row);
  }
  return {
      {"system", r.system},
      {"n", r.n},
      {"k", r.k},
      {"probe_count", r.probe_count},
      {"skew_ok", r.skew_ok},
      {"max_skew", r.max_skew},
      {"jacobi_ok", r.jacobi_ok},
      {"max_jacobi", r.max_jacobi},
      {"casimirs_ok", r.casimirs_ok},
      {"max_casimir", r.max_casimir},
      {"functions", r.function_names},
      {"involution_matrix", inv},
      {"involution_ok", r.involution_ok},
      {"independence_ok", r.independence_ok},
      {"min_rank", r.min_rank},
      {"deficient_probes", r.deficient_probes},
      {"verdict", r.verdict},
  };
}

EigenReport eigen_structure(const PoissonStructure& P, const Point& p,
                            double rank_rel) {
  const Matrix J = P.matrix(p);
  EigenReport r;
  r.rank = numerical_rank(J, rank_rel);
  r.even_rank = r.rank % 2 == 0;
  const Eigen::EigenSolver<Matrix> es(J, false);
  double smax = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    r.eigenvalues.push_back(es.eigenvalues()[i]);
    smax = std::max(smax, std::abs(es.eigenvalues()[i]));
  }
  r.pure_imaginary = true;
  r.min_dominance = std::numeric_limits<double>::infinity();
  for (const auto& ev : r.eigenvalues) {
    if (std::abs(ev) <= rank_rel * smax) continue;
    const double re = std::abs(ev.real());
    const double im = std::abs(ev.imag());
    const double dom = re == 0 ? std::numeric_limits<double>::infinity() : im / re;
    r.min_dominance = std::min(r.min_dominance, dom);
    if (re > 1e-8 * im) r.pure_imaginary = false;
  }
  return r;
}

}  // namespace lietop
