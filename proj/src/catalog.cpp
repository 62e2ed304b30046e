#include "lietop/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lietop/coadjoint.hpp"
#include "lietop/errors.hpp"

namespace lietop {

Matrix canonical_matrix(int n) {
  Matrix J = Matrix::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = Matrix::Identity(n, n);
  J.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return J;
}

namespace {

using V3 = Eigen::Vector3d;

V3 seg(const Point& x, int start) { return x.segment<3>(start); }

/// Structure linear in x, with dJ/dx_k = J(e_k).
PoissonStructure linear_structure(int dim, PoissonStructure::MatrixFn J) {
  return PoissonStructure(dim, J, [dim, J](const Point&) {
    std::vector<Matrix> D;
    D.reserve(dim);
    for (int k = 0; k < dim; ++k) D.push_back(J(Vector::Unit(dim, k)));
    return D;
  });
}

ScalarField quadratic_diag(const Vector& w) {
  const int m = static_cast<int>(w.size());
  return ScalarField(
      m, [w](const Point& x) { return 0.5 * x.dot(w.cwiseProduct(x)); },
      [w](const Point& x) { return Vector(w.cwiseProduct(x)); });
}

double param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ParamError("missing parameter '" + key + "'");
  return it->second;
}

std::vector<ParameterSpec> numbered(const std::string& stem, int count,
                                    const std::vector<double>& defaults) {
  std::vector<ParameterSpec> out;
  for (int i = 0; i < count; ++i)
    out.push_back({stem + std::to_string(i + 1), defaults[i]});
  return out;
}

Vector numbered_values(const Params& p, const std::string& stem, int count) {
  Vector v(count);
  for (int i = 0; i < count; ++i) v[i] = param(p, stem + std::to_string(i + 1));
  return v;
}

// ---- canonical: central potential on R^6 --------------------------------

HamiltonianSystem build_canonical(const Params& p) {
  const double mu = param(p, "mu");
  const double a = param(p, "a");
  const double b = param(p, "b");
  if (!(mu > 0)) throw ParamError("canonical: mu must be positive");
  ScalarField H(
      6,
      [=](const Point& x) {
        const double r2 = x.head<3>().squaredNorm();
        return x.tail<3>().squaredNorm() / (2 * mu) + 0.5 * a * r2 +
               0.25 * b * r2 * r2;
      },
      [=](const Point& x) {
        const double r2 = x.head<3>().squaredNorm();
        Vector g(6);
        g.head<3>() = (a + b * r2) * x.head<3>();
        g.tail<3>() = x.tail<3>() / mu;
        return g;
      });
  const ScalarField L1 = angular_momentum(0), L2 = angular_momentum(1),
                    L3 = angular_momentum(2);
  ScalarField Lsq = L1 * L1 + L2 * L2 + L3 * L3;
  return HamiltonianSystem("canonical",
                           PoissonStructure::constant(canonical_matrix(3)),
                           {{"H", H}, {"L^2", Lsq}, {"L3", L3}}, {}, 3, 0);
}

// ---- Henon-Heiles ---------------------------------------------------------

HamiltonianSystem build_henon_heiles(const Params& p) {
  const double A = param(p, "A");
  const double B = param(p, "B");
  const double eps = param(p, "epsilon");
  // x = (y1, y2, x1, x2)
  ScalarField H(
      4,
      [=](const Point& x) {
        return 0.5 * (x[2] * x[2] + x[3] * x[3] + A * x[0] * x[0] +
                      B * x[1] * x[1]) +
               x[0] * x[0] * x[1] + eps / 3 * x[1] * x[1] * x[1];
      },
      [=](const Point& x) {
        Vector g(4);
        g << A * x[0] + 2 * x[0] * x[1],
            B * x[1] + x[0] * x[0] + eps * x[1] * x[1], x[2], x[3];
        return g;
      });
  return HamiltonianSystem("henon-heiles",
                           PoissonStructure::constant(canonical_matrix(2)),
                           {{"H", H}}, {}, 2, 0);
}

// ---- harmonic oscillator --------------------------------------------------

constexpr int kMaxHarmonic = 8;

int harmonic_n(const Params& p) {
  const double n = param(p, "n");
  if (n != std::floor(n) || n < 1 || n > kMaxHarmonic)
    throw ParamError("harmonic: n must be an integer in [1, 8]");
  return static_cast<int>(n);
}

ScalarField harmonic_mode(int n, int j, double lam) {
  return ScalarField(
      2 * n,
      [=](const Point& x) {
        return 0.5 * x[n + j] * x[n + j] + lam * x[j] * x[j];
      },
      [=](const Point& x) {
        Vector g = Vector::Zero(2 * n);
        g[j] = 2 * lam * x[j];
        g[n + j] = x[n + j];
        return g;
      });
}

HamiltonianSystem build_harmonic(const Params& p) {
  const int n = harmonic_n(p);
  const Vector lam = numbered_values(p, "lambda", n);
  std::vector<ScalarField> modes;
  for (int j = 0; j < n; ++j) modes.push_back(harmonic_mode(n, j, lam[j]));
  ScalarField H = modes[0];
  for (int j = 1; j < n; ++j) H = H + modes[j];
  std::vector<NamedField> integrals{{"H", H}};
  for (int j = 1; j < n; ++j)
    integrals.push_back({"H" + std::to_string(j + 1), modes[j]});
  return HamiltonianSystem("harmonic",
                           PoissonStructure::constant(canonical_matrix(n)),
                           std::move(integrals), {}, n, 0);
}

// ---- Euler top ------------------------------------------------------------

HamiltonianSystem build_euler_top(const Params& p) {
  const Vector lam = numbered_values(p, "lambda", 3);
  auto P = linear_structure(3, [](const Point& m) { return hat(seg(m, 0)); });
  return HamiltonianSystem("euler-top", P, {{"H1", quadratic_diag(lam)}},
                           {{"H2", quadratic_diag(Vector::Ones(3))}}, 1, 1);
}

// ---- so(4) geodesic flow --------------------------------------------------

Matrix so4_matrix(const Point& x) {
  Matrix J(6, 6);
  const Matrix U = hat(seg(x, 0)), W = hat(seg(x, 3));
  J << U, W, W, U;
  return J;
}

HamiltonianSystem build_so4(const Params& p) {
  const Vector lam = numbered_values(p, "lambda", 6);
  ScalarField C1 = quadratic_diag(Vector::Ones(6));
  ScalarField C2(
      6, [](const Point& x) { return seg(x, 0).dot(seg(x, 3)); },
      [](const Point& x) {
        Vector g(6);
        g << seg(x, 3), seg(x, 0);
        return g;
      });
  return HamiltonianSystem("so4-geodesic", linear_structure(6, so4_matrix),
                           {{"H", quadratic_diag(lam)}},
                           {{"C1", C1}, {"C2", C2}}, 2, 2);
}

// ---- Kowalewski top -------------------------------------------------------

Matrix kowalewski_matrix(const Point& x) {
  Matrix J = Matrix::Zero(6, 6);
  const Matrix G = hat(seg(x, 3));
  J.topLeftCorner(3, 3) = hat(seg(x, 0));
  J.topRightCorner(3, 3) = G;
  J.bottomLeftCorner(3, 3) = G;
  return J;
}

HamiltonianSystem build_kowalewski(const Params&) {
  ScalarField H1(
      6,
      [](const Point& x) {
        return 0.5 * (x[0] * x[0] + x[1] * x[1]) + x[2] * x[2] + 2 * x[3];
      },
      [](const Point& x) {
        Vector g(6);
        g << x[0], x[1], 2 * x[2], 2, 0, 0;
        return g;
      });
  ScalarField H2(
      6, [](const Point& x) { return seg(x, 0).dot(seg(x, 3)); },
      [](const Point& x) {
        Vector g(6);
        g << seg(x, 3), seg(x, 0);
        return g;
      });
  ScalarField H3(
      6, [](const Point& x) { return seg(x, 3).squaredNorm(); },
      [](const Point& x) {
        Vector g = Vector::Zero(6);
        g.tail<3>() = 2 * seg(x, 3);
        return g;
      });
  ScalarField H4(
      6,
      [](const Point& x) {
        const double a = (x[0] * x[0] - x[1] * x[1]) / 4 - x[3];
        const double b = x[0] * x[1] / 2 - x[4];
        return a * a + b * b;
      },
      [](const Point& x) {
        const double a = (x[0] * x[0] - x[1] * x[1]) / 4 - x[3];
        const double b = x[0] * x[1] / 2 - x[4];
        Vector g(6);
        g << a * x[0] + b * x[1], -a * x[1] + b * x[0], 0, -2 * a, -2 * b, 0;
        return g;
      });
  return HamiltonianSystem("kowalewski",
                           linear_structure(6, kowalewski_matrix),
                           {{"H1", H1}, {"H4", H4}}, {{"H2", H2}, {"H3", H3}},
                           2, 2);
}

// ---- Clebsch case ---------------------------------------------------------

Matrix clebsch_matrix(const Point& x) {
  Matrix J = Matrix::Zero(6, 6);
  const Matrix Pm = hat(seg(x, 0));
  J.topRightCorner(3, 3) = Pm;
  J.bottomLeftCorner(3, 3) = Pm;
  J.bottomRightCorner(3, 3) = hat(seg(x, 3));
  return J;
}

HamiltonianSystem build_clebsch(const Params& p) {
  const double residual = clebsch_condition(p);
  if (!(std::abs(residual) < 1e-12)) {
    std::ostringstream os;
    os << "clebsch: (a2-a3)/b1 + (a3-a1)/b2 + (a1-a2)/b3 = " << residual
       << ", must vanish";
    throw ParamError(os.str());
  }
  const Vector a = numbered_values(p, "a", 3);
  const Vector b = numbered_values(p, "b", 3);
  Vector w(6);
  w << a, b;
  // Second integral F = 1/2 (|l|^2 + sum c_k p_k^2), in involution with H
  // whenever the condition above holds.
  Vector c(6);
  c << 0, -(a[0] - a[1]) / b[2], (a[2] - a[0]) / b[1], 1, 1, 1;
  ScalarField C1(
      6, [](const Point& x) { return seg(x, 0).squaredNorm(); },
      [](const Point& x) {
        Vector g = Vector::Zero(6);
        g.head<3>() = 2 * seg(x, 0);
        return g;
      });
  ScalarField C2(
      6, [](const Point& x) { return seg(x, 0).dot(seg(x, 3)); },
      [](const Point& x) {
        Vector g(6);
        g << seg(x, 3), seg(x, 0);
        return g;
      });
  return HamiltonianSystem("clebsch", linear_structure(6, clebsch_matrix),
                           {{"H", quadratic_diag(w)}, {"F", quadratic_diag(c)}},
                           {{"p.p", C1}, {"p.l", C2}}, 2, 2);
}

// ---- Yang-Mills -----------------------------------------------------------

HamiltonianSystem build_yang_mills(const Params&) {
  ScalarField H1(
      4, [](const Point& x) { return ym_hamiltonian(x); },
      [](const Point& x) {
        const double z = x[0] * x[0] + x[1] * x[1];
        Vector g(4);
        g << z * x[0], z * x[1], x[2], x[3];
        return g;
      });
  ScalarField H2(
      4, [](const Point& x) { return x[2] * x[1] - x[3] * x[0]; },
      [](const Point& x) {
        Vector g(4);
        g << -x[3], x[2], x[1], -x[0];
        return g;
      });
  return HamiltonianSystem("yang-mills",
                           PoissonStructure::constant(canonical_matrix(2)),
                           {{"H1", H1}, {"H2", H2}}, {}, 2, 0);
}

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<long>(v.size()));
  int i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

std::vector<SystemSpec> make_registry() {
  std::vector<SystemSpec> r;
  r.push_back({"canonical",
               "central potential |p|^2/(2 mu) + a r^2/2 + b r^4/4 on R^6 with "
               "constant canonical J",
               6, 3, 0, {{"mu", 1.0}, {"a", 1.0}, {"b", 0.5}},
               build_canonical, [](const Params&) {
                 return std::vector<Point>{pt({1, 0, 0.2, 0.1, 0.8, 0.3})};
               }});
  r.push_back({"henon-heiles",
               "Henon-Heiles potential, canonical J on (y1, y2, x1, x2)", 4, 2,
               0, {{"A", 1.0}, {"B", 1.0}, {"epsilon", -1.0}},
               build_henon_heiles, [](const Params&) {
                 return std::vector<Point>{pt({0.1, 0.1, 0.2, 0.1})};
               }});
  {
    std::vector<ParameterSpec> ps{{"n", 2}};
    std::vector<double> defaults;
    for (int j = 1; j <= kMaxHarmonic; ++j) defaults.push_back(j);
    auto lam = numbered("lambda", kMaxHarmonic, defaults);
    ps.insert(ps.end(), lam.begin(), lam.end());
    r.push_back({"harmonic",
                 "uncoupled oscillators sum p_j^2/2 + lambda_j q_j^2", 4, 2, 0,
                 ps, build_harmonic, [](const Params& p) {
                   const int n = harmonic_n(p);
                   Point x = Point::Zero(2 * n);
                   for (int j = 0; j < n; ++j) {
                     x[j] = 1.0 / (j + 1);
                     x[n + j] = 0.3;
                   }
                   return std::vector<Point>{x};
                 }});
  }
  r.push_back({"euler-top", "free rigid body on so(3)*", 3, 1, 1,
               numbered("lambda", 3, {1, 2, 3}), build_euler_top,
               [](const Params&) {
                 return std::vector<Point>{pt({1, 0, 0.5}),
                                           pt({1, 0.5, 0.25})};
               }});
  r.push_back({"so4-geodesic", "geodesic flow on SO(4), diagonal metric", 6,
               2, 2, numbered("lambda", 6, {1, 2, 3, 4, 5, 6}), build_so4,
               [](const Params&) {
                 return std::vector<Point>{pt({0.3, -0.2, 0.5, 0.1, 0.4, -0.3})};
               }});
  r.push_back({"kowalewski", "Kowalewski top, time rescaled t -> 2t", 6, 2, 2,
               {}, build_kowalewski, [](const Params&) {
                 Point x = pt({0.1, 0.2, 0.3, 0.9, 0.1, 0.2});
                 x.tail<3>().normalize();
                 return std::vector<Point>{x};
               }});
  {
    std::vector<ParameterSpec> ps = numbered("a", 3, {1.0, 0.5, 1.0 / 3.0});
    auto b = numbered("b", 3, {1, 2, 3});
    ps.insert(ps.end(), b.begin(), b.end());
    r.push_back({"clebsch", "Kirchhoff equations in the Clebsch case", 6, 2, 2,
                 ps, build_clebsch, [](const Params&) {
                   return std::vector<Point>{
                       pt({0.5, 0.3, -0.4, 0.2, -0.1, 0.3})};
                 }});
  }
  r.push_back({"yang-mills",
               "reduced SU(2) Yang-Mills system on (y1, y2, x1, x2)", 4, 2, 0,
               {}, build_yang_mills, [](const Params&) {
                 return std::vector<Point>{pt({1, 0, 0, 1})};
               }});
  return r;
}

}  // namespace

ScalarField angular_momentum(int i) {
  if (i < 0 || i > 2) throw DimError("angular_momentum: index out of range");
  return ScalarField(
      6,
      [i](const Point& x) { return seg(x, 0).cross(seg(x, 3))[i]; },
      [i](const Point& x) {
        // d(q x p)_i/dq = p x e_i, d/dp = e_i x q
        const V3 e = V3::Unit(i);
        Vector g(6);
        g << seg(x, 3).cross(e), e.cross(seg(x, 0));
        return g;
      });
}

double clebsch_condition(const Params& p) {
  const Vector a = numbered_values(p, "a", 3);
  const Vector b = numbered_values(p, "b", 3);
  if (b.cwiseAbs().minCoeff() == 0) throw ParamError("clebsch: b_k must be nonzero");
  return (a[1] - a[2]) / b[0] + (a[2] - a[0]) / b[1] + (a[0] - a[1]) / b[2];
}

const std::vector<SystemSpec>& registry() {
  static const std::vector<SystemSpec> r = make_registry();
  return r;
}

const SystemSpec& lookup(const std::string& name) {
  for (const auto& s : registry())
    if (s.name == name) return s;
  throw LookupError("unknown system '" + name + "'");
}

Params resolve_params(const SystemSpec& spec, const Params& overrides) {
  Params out;
  for (const auto& ps : spec.parameters) out[ps.name] = ps.default_value;
  for (const auto& [key, value] : overrides) {
    if (!out.count(key))
      throw ParamError("system '" + spec.name + "' has no parameter '" + key + "'");
    if (!std::isfinite(value))
      throw ParamError("parameter '" + key + "' must be finite");
    out[key] = value;
  }
  return out;
}

HamiltonianSystem get(const std::string& name, const Params& params) {
  const auto& spec = lookup(name);
  return spec.builder(resolve_params(spec, params));
}

std::vector<Point> reference_initial_conditions(const std::string& name,
                                                const Params& params) {
  const auto& spec = lookup(name);
  return spec.reference_initial_conditions(resolve_params(spec, params));
}

nlohmann::json registry_json() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : registry()) {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : s.parameters)
      params.push_back({{"name", p.name}, {"default", p.default_value}});
    out.push_back({{"name", s.name},
                   {"description", s.description},
                   {"dim", s.dim},
                   {"n", s.n},
                   {"k", s.k},
                   {"parameters", params}});
  }
  return out;
}

namespace {
const double kQScale = std::pow(2.0, -0.25);
}

YmCanonical ym_from_reduced(const Point& yx) {
  check_point(yx, 4, "ym_from_reduced");
  const std::complex<double> i(0, 1);
  const double s = std::numbers::sqrt2 / 2;
  return {kQScale * (yx[0] + i * yx[1]), kQScale * (yx[0] - i * yx[1]),
          s * (yx[2] + yx[3]), s * (yx[2] - yx[3])};
}

std::array<std::complex<double>, 4> symplectic_transform_ym(
    std::complex<double> q1, std::complex<double> q2, double p1, double p2) {
  const std::complex<double> i(0, 1);
  const double s = std::numbers::sqrt2 / 2;
  return {(q1 + q2) / (2 * kQScale), (q1 - q2) / (2.0 * i * kQScale),
          s * (p1 + p2), s * (p1 - p2)};
}

Matrix ym_real_slice_matrix() {
  const double s = std::numbers::sqrt2 / 2;
  Matrix M = Matrix::Zero(4, 4);
  M(0, 0) = kQScale;
  M(1, 1) = kQScale;
  M(2, 2) = s;
  M(2, 3) = s;
  M(3, 2) = s;
  M(3, 3) = -s;
  return M;
}

std::complex<double> ym_hamiltonian_qp(const YmCanonical& c) {
  return 0.5 * (c.p1 * c.p1 + c.p2 * c.p2 + c.q1 * c.q1 * c.q2 * c.q2);
}

double ym_hamiltonian(const Point& yx) {
  const double z = yx[0] * yx[0] + yx[1] * yx[1];
  return 0.5 * (yx[2] * yx[2] + yx[3] * yx[3]) + 0.25 * z * z;
}

}  // namespace lietop
