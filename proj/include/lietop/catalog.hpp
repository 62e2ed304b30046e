#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lietop/poisson.hpp"

namespace lietop {

using Params = std::map<std::string, double>;

struct ParameterSpec {
  std::string name;
  double default_value;
};

struct SystemSpec {
  std::string name;
  std::string description;
  int dim;
  int n;
  int k;
  std::vector<ParameterSpec> parameters;
  std::function<HamiltonianSystem(const Params&)> builder;
  std::function<std::vector<Point>(const Params&)> reference_initial_conditions;
};

const std::vector<SystemSpec>& registry();
/// Throws LookupError for unknown names.
const SystemSpec& lookup(const std::string& name);
/// Defaults overlaid with overrides; unknown keys throw ParamError.
Params resolve_params(const SystemSpec& spec, const Params& overrides);

HamiltonianSystem get(const std::string& name, const Params& params = {});
std::vector<Point> reference_initial_conditions(const std::string& name,
                                                const Params& params = {});
nlohmann::json registry_json();

/// Canonical structure [[0, I], [-I, 0]] in (q, p) ordering.
Matrix canonical_matrix(int n);

/// Angular momentum component L_i = (q x p)_i on R^6 = (q, p).
ScalarField angular_momentum(int i);

/// (a2 - a3)/b1 + (a3 - a1)/b2 + (a1 - a2)/b3
double clebsch_condition(const Params& p);

/** @name Yang-Mills reduction
 *  Reduced coordinates (y1, y2, x1, x2) and the (q, p) form where
 *  p = (x1 +- x2)/sqrt2 and q = 2^(-1/4) (y1 +- i y2).
 */
///@{
struct YmCanonical {
  std::complex<double> q1, q2;
  double p1, p2;
};

YmCanonical ym_from_reduced(const Point& yx);
/// Inverse substitution; for real reduced points q2 = conj(q1).
std::array<std::complex<double>, 4> symplectic_transform_ym(
    std::complex<double> q1, std::complex<double> q2, double p1, double p2);
/// Real slice (y1, y2, x1, x2) -> (Re q1, Im q1, p1, p2).
Matrix ym_real_slice_matrix();
std::complex<double> ym_hamiltonian_qp(const YmCanonical& c);
double ym_hamiltonian(const Point& yx);
///@}

}  // namespace lietop
