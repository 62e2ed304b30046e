#include "lietop/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "lietop/elliptic.hpp"
#include "lietop/errors.hpp"
#include "lietop/flows.hpp"
#include "lietop/kowalewski.hpp"
#include "lietop/poisson.hpp"
#include "lietop/random.hpp"

namespace lietop::cli {

namespace {

constexpr double kEulerTol = 1e-6;
constexpr double kKummerTol = 1e-6;
constexpr double kDriftTol = 1e-7;
constexpr double kCurveTol = 1e-6;

/// Writes to --out when given, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ArgError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
    os_->precision(17);
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

Point initial_point(const RunConfig& cfg) {
  if (cfg.x0) return *cfg.x0;
  return reference_initial_conditions(cfg.system, cfg.params).front();
}

double end_time(const RunConfig& cfg, double fallback) {
  return cfg.t1 ? *cfg.t1 : fallback;
}

Integrator integrator(const RunConfig& cfg) {
  Integrator integ;
  integ.step = cfg.step;
  return integ;
}

int fail(std::ostream& err, const std::string& criterion, double value,
         double tol) {
  err << "FAIL " << criterion << ": " << value << " > " << tol << '\n';
  return exit_code::tolerance;
}

void require_system(const RunConfig& cfg, const std::string& name) {
  if (cfg.system != name)
    throw ParamError("this command only supports --system " + name);
}

}  // namespace

Point parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ArgError("bad number '" + item + "' in --x0");
    }
    if (used != item.size() || !std::isfinite(x))
      throw ArgError("bad number '" + item + "' in --x0");
    v.push_back(x);
  }
  if (v.empty()) throw ArgError("--x0 is empty");
  return Eigen::Map<Point>(v.data(), static_cast<long>(v.size()));
}

std::pair<std::string, double> parse_param(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ArgError("--param expects name=value, got '" + text + "'");
  std::size_t used = 0;
  const std::string value = text.substr(eq + 1);
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ArgError("bad value in --param '" + text + "'");
  }
  if (used != value.size()) throw ArgError("bad value in --param '" + text + "'");
  return {text.substr(0, eq), v};
}

void validate(const RunConfig& cfg) {
  const auto& spec = lookup(cfg.system);
  const auto sys = spec.builder(resolve_params(spec, cfg.params));
  if (cfg.x0) {
    check_point(*cfg.x0, sys.dim(), "--x0");
    if (!cfg.x0->allFinite()) throw ArgError("--x0 must be finite");
  }
  if (cfg.t1 && !(*cfg.t1 >= 0 && std::isfinite(*cfg.t1)))
    throw ArgError("--t1 must be finite and non-negative");
  integrator(cfg).validate();
  if (cfg.probes == 0) throw ArgError("--probes must be positive");
  if (cfg.format != "csv" && cfg.format != "json")
    throw ArgError("--format must be csv or json");
}

int cmd_list(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    out << registry_json().dump(2) << '\n';
    return exit_code::ok;
  }
  for (const auto& s : registry()) {
    out << s.name << "  dim=" << s.dim << " n=" << s.n << " k=" << s.k;
    if (!s.parameters.empty()) {
      out << "  params:";
      for (const auto& p : s.parameters) out << ' ' << p.name << '=' << p.default_value;
    }
    out << '\n';
  }
  return exit_code::ok;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  validate(cfg);
  const auto sys = get(cfg.system, cfg.params);
  const auto fields = sys.conserved();
  std::vector<ScalarField> fs;
  for (const auto& f : fields) fs.push_back(f.field);
  const Trajectory tr = trace(hamiltonian_vector_field(sys), initial_point(cfg),
                              end_time(cfg, 10.0), integrator(cfg), fs);
  Sink sink(cfg.out, out);
  auto& os = sink.stream();
  std::vector<std::string> cols{"t"};
  for (int i = 0; i < sys.dim(); ++i) cols.push_back("x" + std::to_string(i + 1));
  for (const auto& f : fields) cols.push_back(f.name);
  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t s = 0; s < tr.size(); ++s) {
      nlohmann::json row{tr.times[s]};
      for (int i = 0; i < sys.dim(); ++i) row.push_back(tr.states[s][i]);
      for (const auto& log : tr.invariant_log) row.push_back(log[s]);
      rows.push_back(row);
    }
    os << nlohmann::json{{"columns", cols}, {"rows", rows}}.dump() << '\n';
    return exit_code::ok;
  }
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (std::size_t s = 0; s < tr.size(); ++s) {
    os << tr.times[s];
    for (int i = 0; i < sys.dim(); ++i) os << ',' << tr.states[s][i];
    for (const auto& log : tr.invariant_log) os << ',' << log[s];
    os << '\n';
  }
  return exit_code::ok;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  const auto sys = get(cfg.system, cfg.params);
  AuditOptions opts;
  opts.seed = cfg.seed;
  if (cfg.system == "kowalewski") opts.involution_tol = 1e-6;
  const auto probes = sample_probes(sys.dim(), cfg.probes, cfg.seed);
  const AuditReport r = audit(sys, probes, opts);
  Sink sink(cfg.out, out);
  sink.stream() << to_json(r).dump(2) << '\n';
  const std::pair<const char*, bool> checks[] = {
      {"skew", r.skew_ok},
      {"jacobi", r.jacobi_ok},
      {"casimirs", r.casimirs_ok},
      {"involution", r.involution_ok},
      {"independence", r.independence_ok}};
  for (const auto& [name, ok] : checks)
    if (!ok) {
      err << "FAIL " << name << " (verdict " << r.verdict << ")\n";
      return exit_code::tolerance;
    }
  return exit_code::ok;
}

int cmd_euler_exact(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_system(cfg, "euler-top");
  validate(cfg);
  const auto sys = get(cfg.system, cfg.params);
  const auto spec = resolve_params(lookup(cfg.system), cfg.params);
  const Eigen::Vector3d lambda(spec.at("lambda1"), spec.at("lambda2"),
                               spec.at("lambda3"));
  const Point x0 = initial_point(cfg);
  const auto cf = EulerTopClosedForm::from_state(lambda, x0);
  const Trajectory tr = trace(hamiltonian_vector_field(sys), x0,
                              end_time(cfg, 5.0), integrator(cfg));
  Sink sink(cfg.out, out);
  auto& os = sink.stream();
  os << "t,m1_exact,m2_exact,m3_exact,m1_rk4,m2_rk4,m3_rk4,max_abs_diff\n";
  double worst = 0;
  for (std::size_t s = 0; s < tr.size(); ++s) {
    const Eigen::Vector3d e = cf(tr.times[s]);
    const double d = (e - tr.states[s]).cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
    os << tr.times[s] << ',' << e[0] << ',' << e[1] << ',' << e[2] << ','
       << tr.states[s][0] << ',' << tr.states[s][1] << ',' << tr.states[s][2]
       << ',' << d << '\n';
  }
  if (worst > kEulerTol) return fail(err, "closed form vs rk4", worst, kEulerTol);
  return exit_code::ok;
}

int cmd_kowalewski_verify(const RunConfig& cfg, std::ostream& out,
                          std::ostream& err) {
  RunConfig c = cfg;
  c.system = "kowalewski";
  validate(c);
  const auto sys = get(c.system, c.params);
  const Trajectory tr = trace(hamiltonian_vector_field(sys), initial_point(c),
                              end_time(c, 10.0), integrator(c));
  const auto rows = verify_trajectory(tr);
  Sink sink(c.out, out);
  write_csv(sink.stream(), rows);
  double r1 = 0, r2 = 0, drift = 0;
  for (const auto& r : rows) {
    r1 = std::max(r1, r.r1);
    r2 = std::max(r2, r.r2);
    for (double d : r.drift) drift = std::max(drift, d);
  }
  if (r1 > kKummerTol) return fail(err, "kummer r1", r1, kKummerTol);
  if (r2 > kKummerTol) return fail(err, "kummer r2", r2, kKummerTol);
  if (drift > kDriftTol) return fail(err, "integral drift", drift, kDriftTol);
  return exit_code::ok;
}

int cmd_ym_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunConfig c = cfg;
  c.system = "yang-mills";
  validate(c);
  const auto sys = get(c.system, c.params);
  const Point x0 = initial_point(c);
  const Trajectory tr = trace(hamiltonian_vector_field(sys), x0,
                              end_time(c, 10.0), integrator(c));
  const double c1 = sys.integrals()[0].field(x0);
  const double c2 = sys.integrals()[1].field(x0);
  const auto res = ym_curve_residuals(tr, c1, c2);
  Sink sink(c.out, out);
  auto& os = sink.stream();
  os << "t,z,w,residual\n";
  double worst = 0;
  for (std::size_t s = 0; s < tr.size(); ++s) {
    const auto& x = tr.states[s];
    os << tr.times[s] << ',' << x[0] * x[0] + x[1] * x[1] << ','
       << x[0] * x[2] + x[1] * x[3] << ',' << res[s] << '\n';
    worst = std::max(worst, res[s]);
  }
  if (worst > kCurveTol) return fail(err, "curve residual", worst, kCurveTol);
  return exit_code::ok;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Poisson structures, integrable tops and their checks", "lietop"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::string> params;
  std::string x0;
  double t1 = -1;

  auto add_common = [&](CLI::App* sub, bool with_system) {
    if (with_system) sub->add_option("--system", cfg.system, "catalog system name");
    sub->add_option("--param", params, "parameter override name=value")
        ->allow_extra_args(false);
    sub->add_option("--x0", x0, "initial point v,v,...");
    sub->add_option("--t1", t1, "end time");
    sub->add_option("--step", cfg.step, "RK4 step");
    sub->add_option("--seed", cfg.seed, "probe RNG seed");
    sub->add_option("--probes", cfg.probes, "number of audit probes");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json");
  };

  auto* list = app.add_subcommand("list", "list catalog systems");
  list->add_option("--format", cfg.format, "text or json");
  auto* simulate = app.add_subcommand("simulate", "integrate a system, CSV of states and integrals");
  add_common(simulate, true);
  auto* check = app.add_subcommand("check", "Liouville audit at random probes");
  add_common(check, true);
  auto* euler = app.add_subcommand("euler-exact", "closed-form Euler top vs RK4");
  add_common(euler, true);
  auto* kow = app.add_subcommand("kowalewski-verify", "Kummer residuals along a Kowalewski trajectory");
  add_common(kow, false);
  auto* ym = app.add_subcommand("ym-curve", "Yang-Mills curve residual along a trajectory");
  add_common(ym, false);

  std::vector<const char*> argv{"lietop"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return exit_code::usage;
  }

  try {
    for (const auto& p : params) {
      const auto [k, v] = parse_param(p);
      cfg.params[k] = v;
    }
    if (!x0.empty()) cfg.x0 = parse_point(x0);
    if (t1 >= 0) cfg.t1 = t1;
    else if (t1 != -1) throw ArgError("--t1 must be non-negative");

    if (list->parsed()) {
      if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "text")
        throw ArgError("--format must be text or json");
      return cmd_list(cfg, out);
    }
    if (simulate->parsed()) return cmd_simulate(cfg, out, err);
    if (check->parsed()) return cmd_check(cfg, out, err);
    if (euler->parsed()) return cmd_euler_exact(cfg, out, err);
    if (kow->parsed()) return cmd_kowalewski_verify(cfg, out, err);
    if (ym->parsed()) return cmd_ym_curve(cfg, out, err);
  } catch (const BlowupError& e) {
    err << "blowup: " << e.what() << " (last good time " << e.time() << ")\n";
    return exit_code::blowup;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
  return exit_code::usage;
}

}  // namespace lietop::cli
