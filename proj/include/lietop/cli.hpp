#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lietop/catalog.hpp"

namespace lietop::cli {

namespace exit_code {
constexpr int ok = 0;
constexpr int usage = 2;
constexpr int blowup = 3;
constexpr int tolerance = 4;
}  // namespace exit_code

struct RunConfig {
  std::string system = "euler-top";
  Params params;
  std::optional<Point> x0;
  std::optional<double> t1;
  double step = 1e-3;
  std::uint64_t seed = 42;
  std::size_t probes = 100;
  std::string out;
  std::string format = "csv";
};

/// Checks the system, parameters, x0 and numeric flags against the catalog;
/// throws ParamError, LookupError or DimError.
void validate(const RunConfig& cfg);

Point parse_point(const std::string& text);
std::pair<std::string, double> parse_param(const std::string& text);

int cmd_list(const RunConfig& cfg, std::ostream& out);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_euler_exact(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_kowalewski_verify(const RunConfig& cfg, std::ostream& out,
                          std::ostream& err);
int cmd_ym_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lietop::cli
