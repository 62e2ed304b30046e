#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "lietop/cli.hpp"

using namespace lietop;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return int(i);
    return -1;
  }
  double range(int c) const {
    double lo = rows.front()[c], hi = lo;
    for (auto& r : rows) {
      lo = std::min(lo, r[c]);
      hi = std::max(hi, r[c]);
    }
    return hi - lo;
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  t.header = split(line);
  while (std::getline(is, line)) {
    std::vector<double> row;
    for (auto& s : split(line)) row.push_back(std::stod(s));
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace

TEST_CASE("list") {
  Result r = run({"list"});
  CHECK(r.code == 0);
  for (const char* name : {"euler-top", "kowalewski", "yang-mills"})
    CHECK(r.out.find(name) != std::string::npos);

  Result j = run({"list", "--format", "json"});
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed.is_array());
  CHECK(parsed.size() == 8);

  CHECK(run({"list", "--bogus"}).code == cli::exit_code::usage);
  CHECK(run({}).code == cli::exit_code::usage);
  CHECK(run({"frobnicate"}).code == cli::exit_code::usage);
}

TEST_CASE("simulate") {
  Result r = run({"simulate", "--system", "euler-top", "--t1", "10"});
  REQUIRE(r.code == 0);
  Table t = parse_csv(r.out);
  CHECK(t.header == std::vector<std::string>{"t", "x1", "x2", "x3", "H1", "H2"});
  CHECK(t.rows.size() == 10001);
  CHECK(t.range(t.column("H1")) < 1e-8);

  Result z = run({"simulate", "--system", "euler-top", "--x0", "0.3,-0.2,1.5", "--t1", "0"});
  REQUIRE(z.code == 0);
  Table tz = parse_csv(z.out);
  REQUIRE(tz.rows.size() == 1);
  CHECK(tz.rows[0][0] == 0.0);
  CHECK(tz.rows[0][1] == 0.3);
  CHECK(tz.rows[0][2] == -0.2);
  CHECK(tz.rows[0][3] == 1.5);

  Result k = run({"simulate", "--system", "kowalewski", "--t1", "2"});
  REQUIRE(k.code == 0);
  Table tk = parse_csv(k.out);
  CHECK(tk.header.size() == 1 + 6 + 4);
  for (int c = 7; c < 11; ++c) CHECK(tk.range(c) < 1e-7);

  CHECK(run({"simulate", "--system", "euler-top", "--x0", "1,2"}).code == cli::exit_code::usage);
  CHECK(run({"simulate", "--system", "nope"}).code == cli::exit_code::usage);
  CHECK(run({"simulate", "--param", "zz=1"}).code == cli::exit_code::usage);
  CHECK(run({"simulate", "--step", "-1"}).code == cli::exit_code::usage);
}

TEST_CASE("blowup exit code") {
  Result r = run({"simulate", "--system", "canonical", "--param", "b=-1", "--x0",
                  "2,0,0,0,0,0", "--t1", "10"});
  CHECK(r.code == cli::exit_code::blowup);
  CHECK(r.err.find("last good time") != std::string::npos);
}

TEST_CASE("check") {
  Result r = run({"check", "--system", "euler-top", "--probes", "20"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "liouville-integrable-at-probes");

  Result h = run({"check", "--system", "henon-heiles", "--probes", "20"});
  CHECK(h.code == 0);
  CHECK(nlohmann::json::parse(h.out)["verdict"] == "no-verdict");
}

TEST_CASE("closed-form and residual commands") {
  Result e = run({"euler-exact"});
  REQUIRE(e.code == 0);
  Table t = parse_csv(e.out);
  CHECK(t.rows.back()[0] == 5.0);
  const int c = t.column("max_abs_diff");
  REQUIRE(c >= 0);
  for (auto& row : t.rows) CHECK(row[c] < 1e-6);

  Result k = run({"kowalewski-verify", "--t1", "1"});
  REQUIRE(k.code == 0);
  Table tk = parse_csv(k.out);
  CHECK(tk.header.front() == "t");
  for (auto& row : tk.rows) {
    CHECK(row[tk.column("r1")] < 1e-6);
    CHECK(row[tk.column("r2")] < 1e-6);
  }

  Result y = run({"ym-curve", "--t1", "2"});
  REQUIRE(y.code == 0);
  Table ty = parse_csv(y.out);
  for (auto& row : ty.rows) CHECK(row[ty.column("residual")] < 1e-6);
}

TEST_CASE("repeated runs are byte-identical") {
  std::vector<std::string> args{"check", "--system", "kowalewski", "--seed", "7",
                                "--probes", "15"};
  CHECK(run(args).out == run(args).out);
  std::vector<std::string> sim{"simulate", "--system", "clebsch", "--t1", "1"};
  CHECK(run(sim).out == run(sim).out);
}
