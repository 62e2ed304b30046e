#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lietop/fields.hpp"

namespace lietop {

/** @brief Seeded mt19937_64 with a fixed mapping to doubles.
 *
 *  std::uniform_real_distribution is implementation defined, so doubles are
 *  taken from the top 53 bits directly to keep samples identical across
 *  standard libraries.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Standard normal by Box-Muller.
  double normal();
  Vector uniform_vector(int n, double lo, double hi);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// count points drawn uniformly from [-half_width, half_width]^dim.
std::vector<Point> sample_probes(int dim, std::size_t count, std::uint64_t seed,
                                 double half_width = 2.0);

}  // namespace lietop
