#include "lietop/random.hpp"

#include <cmath>
#include <numbers>

namespace lietop {

double Rng::normal() {
  double u = unit();
  while (u == 0.0) u = unit();
  const double v = unit();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2 * std::numbers::pi * v);
}

Vector Rng::uniform_vector(int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

std::vector<Point> sample_probes(int dim, std::size_t count, std::uint64_t seed,
                                 double half_width) {
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(rng.uniform_vector(dim, -half_width, half_width));
  return out;
}

}  // namespace lietop
