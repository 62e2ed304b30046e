#include "lietop/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lietop/errors.hpp"

namespace lietop {

namespace {

void validate_key(const IndexTuple& key, int dim, int degree) {
  if (static_cast<int>(key.size()) != degree)
    throw DimError("form key length differs from degree");
  for (std::size_t a = 0; a < key.size(); ++a) {
    if (key[a] < 0 || key[a] >= dim) throw DimError("form index out of range");
    if (a > 0 && key[a] <= key[a - 1])
      throw DimError("form key is not strictly increasing");
  }
}

void accumulate(DifferentialForm::Coefficients& c, const IndexTuple& key,
                const ScalarField& f) {
  auto it = c.find(key);
  if (it == c.end())
    c.emplace(key, f);
  else
    it->second = it->second + f;
}

ScalarField component(const VectorField& X, int i) {
  return ScalarField(X.dim(), [X, i](const Point& p) { return X(p)[i]; });
}

}  // namespace

int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

double determinant(const Matrix& M) {
  switch (M.rows()) {
    case 0:
      return 1.0;
    case 1:
      return M(0, 0);
    case 2:
      return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
    case 3:
      return M(0, 0) * (M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1)) -
             M(0, 1) * (M(1, 0) * M(2, 2) - M(1, 2) * M(2, 0)) +
             M(0, 2) * (M(1, 0) * M(2, 1) - M(1, 1) * M(2, 0));
    default:
      return M.determinant();
  }
}

DifferentialForm::DifferentialForm(int dim, int degree)
    : dim_(dim), degree_(degree) {
  if (dim <= 0) throw DimError("DifferentialForm: dimension must be positive");
  if (degree < 0 || degree > dim)
    throw DimError("DifferentialForm: degree out of range");
  if (degree == 0) coeffs_.emplace(IndexTuple{}, ScalarField::constant(dim, 0));
}

DifferentialForm::DifferentialForm(int dim, int degree, Coefficients coeffs)
    : DifferentialForm(dim, degree) {
  for (auto& [key, f] : coeffs) {
    validate_key(key, dim, degree);
    if (f.dim() != dim) throw DimError("coefficient field has wrong dimension");
  }
  if (degree == 0 && coeffs.empty()) return;
  coeffs_ = std::move(coeffs);
}

DifferentialForm DifferentialForm::function(const ScalarField& f) {
  return DifferentialForm(f.dim(), 0, {{IndexTuple{}, f}});
}

DifferentialForm DifferentialForm::monomial(int dim, const std::vector<int>& idx,
                                            const ScalarField& c) {
  IndexTuple key = idx;
  const int s = sort_sign(key);
  const int k = static_cast<int>(idx.size());
  if (s == 0) return DifferentialForm(dim, k);
  return DifferentialForm(dim, k, {{key, s > 0 ? c : -c}});
}

DifferentialForm DifferentialForm::monomial(int dim, const std::vector<int>& idx,
                                            double c) {
  return monomial(dim, idx, ScalarField::constant(dim, c));
}

double DifferentialForm::evaluate(const Point& p,
                                  const std::vector<Vector>& vs) const {
  check_point(p, dim_, "evaluate");
  if (static_cast<int>(vs.size()) != degree_)
    throw DimError("evaluate: expected " + std::to_string(degree_) +
                   " vectors, got " + std::to_string(vs.size()));
  for (const auto& v : vs)
    if (v.size() != dim_) throw DimError("evaluate: vector has wrong length");
  const int k = degree_;
  double total = 0;
  Matrix minor(k, k);
  for (const auto& [key, f] : coeffs_) {
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) minor(a, b) = vs[b][key[a]];
    total += f(p) * determinant(minor);
  }
  return total;
}

std::map<IndexTuple, double> DifferentialForm::coefficients_at(
    const Point& p) const {
  std::map<IndexTuple, double> out;
  for (const auto& [key, f] : coeffs_) out.emplace(key, f(p));
  return out;
}

double DifferentialForm::max_abs_coefficient(const Point& p) const {
  double m = 0;
  for (const auto& [key, f] : coeffs_) m = std::max(m, std::abs(f(p)));
  return m;
}

DifferentialForm operator+(const DifferentialForm& a,
                           const DifferentialForm& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree())
    throw DimError("form sum: dimension or degree mismatch");
  auto c = a.coefficients();
  for (const auto& [key, f] : b.coefficients()) accumulate(c, key, f);
  return DifferentialForm(a.dim(), a.degree(), std::move(c));
}

DifferentialForm operator*(const ScalarField& f, const DifferentialForm& w) {
  if (f.dim() != w.dim()) throw DimError("form scaling: dimension mismatch");
  DifferentialForm::Coefficients c;
  for (const auto& [key, g] : w.coefficients()) c.emplace(key, f * g);
  return DifferentialForm(w.dim(), w.degree(), std::move(c));
}

DifferentialForm operator*(double s, const DifferentialForm& w) {
  DifferentialForm::Coefficients c;
  for (const auto& [key, g] : w.coefficients()) c.emplace(key, s * g);
  return DifferentialForm(w.dim(), w.degree(), std::move(c));
}

DifferentialForm operator-(const DifferentialForm& a,
                           const DifferentialForm& b) {
  return a + (-1.0) * b;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.dim() != b.dim()) throw DimError("wedge: dimension mismatch");
  const int k = a.degree() + b.degree();
  if (k > a.dim()) throw DimError("wedge: degree exceeds dimension");
  DifferentialForm::Coefficients c;
  for (const auto& [I, f] : a.coefficients())
    for (const auto& [J, g] : b.coefficients()) {
      IndexTuple K = I;
      K.insert(K.end(), J.begin(), J.end());
      const int s = sort_sign(K);
      if (s == 0) continue;
      accumulate(c, K, s > 0 ? f * g : -(f * g));
    }
  return DifferentialForm(a.dim(), k, std::move(c));
}

DifferentialForm interior_product(const VectorField& X,
                                  const DifferentialForm& w) {
  if (X.dim() != w.dim()) throw DimError("interior_product: dimension mismatch");
  if (w.degree() == 0)
    throw DegreeError("interior_product: cannot contract a 0-form");
  DifferentialForm::Coefficients c;
  for (const auto& [I, f] : w.coefficients())
    for (std::size_t a = 0; a < I.size(); ++a) {
      IndexTuple K = I;
      K.erase(K.begin() + static_cast<long>(a));
      const ScalarField term = f * component(X, I[a]);
      accumulate(c, K, a % 2 == 0 ? term : -term);
    }
  return DifferentialForm(w.dim(), w.degree() - 1, std::move(c));
}

DifferentialForm exterior_derivative(const DifferentialForm& w,
                                     const FdConfig& cfg) {
  if (w.degree() >= w.dim())
    throw DegreeError("exterior_derivative: degree must be below dimension");
  DifferentialForm::Coefficients c;
  for (const auto& [I, f] : w.coefficients())
    for (int j = 0; j < w.dim(); ++j) {
      if (std::find(I.begin(), I.end(), j) != I.end()) continue;
      IndexTuple K{j};
      K.insert(K.end(), I.begin(), I.end());
      const int s = sort_sign(K);
      const ScalarField dj = partial(f, j, cfg);
      const ScalarField checked(w.dim(), [dj](const Point& p) {
        const double v = dj(p);
        if (!std::isfinite(v))
          throw DomainError("exterior_derivative: non-finite coefficient");
        return v;
      });
      accumulate(c, K, s > 0 ? checked : -checked);
    }
  return DifferentialForm(w.dim(), w.degree() + 1, std::move(c));
}

DifferentialForm lie_derivative_cartan(const VectorField& X,
                                       const DifferentialForm& w,
                                       const FdConfig& cfg) {
  if (X.dim() != w.dim()) throw DimError("lie_derivative: dimension mismatch");
  if (w.degree() == 0)
    return DifferentialForm::function(
        directional_derivative(X, w.coefficients().begin()->second, cfg));
  DifferentialForm out = exterior_derivative(interior_product(X, w), cfg);
  if (w.degree() < w.dim())
    out = out + interior_product(X, exterior_derivative(w, cfg));
  return out;
}

double lie_derivative_flow(const VectorField& X, const DifferentialForm& w,
                           const Point& p, const std::vector<Vector>& vs,
                           double dt, const Integrator& integ) {
  if (!(dt > 0)) throw ArgError("lie_derivative_flow: dt must be positive");
  try {
    const double fwd = pullback_form(X, w, p, vs, dt, integ);
    const double bwd = pullback_form(X, w, p, vs, -dt, integ);
    return (fwd - bwd) / (2 * dt);
  } catch (const BlowupError& e) {
    throw DomainError(std::string("lie_derivative_flow: ") + e.what());
  }
}

NondegeneracyReport check_nondegenerate(const DifferentialForm& w,
                                        const Point& p) {
  if (w.degree() != 2) throw DegreeError("check_nondegenerate: need a 2-form");
  if (w.dim() % 2 != 0) throw DimError("check_nondegenerate: odd dimension");
  const int m = w.dim();
  const int n = m / 2;
  NondegeneracyReport r;
  r.skew = Matrix::Zero(m, m);
  for (const auto& [key, value] : w.coefficients_at(p)) {
    r.skew(key[0], key[1]) += value;
    r.skew(key[1], key[0]) -= value;
  }
  r.det = r.skew.determinant();
  DifferentialForm power = w;
  for (int i = 1; i < n; ++i) power = wedge(power, w);
  IndexTuple top(m);
  for (int i = 0; i < m; ++i) top[i] = i;
  const auto& c = power.coefficients();
  auto it = c.find(top);
  r.top_coefficient = it == c.end() ? 0.0 : it->second(p);
  double fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  r.normalized_top = r.top_coefficient / fact;
  r.nondegenerate = std::abs(r.top_coefficient) > 1e-12;
  return r;
}

}  // namespace lietop
