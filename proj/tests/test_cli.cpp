#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using flatarc_cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("flatarc_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d / name;
}

}  // namespace

TEST_CASE("usage and malformed input exit 64") {
  auto r = call({});
  CHECK(r.code == 64);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(call({"frobnicate"}).code == 64);
  CHECK(call({"delta", "--w", "rat:1/2"}).code == 64);
  CHECK(call({"delta", "--w", "rat:1/2", "--x", "abc"}).code == 64);
  CHECK(call({"construct", "--w", "rat:1/3", "--ell", "r^x", "--r", "1e6", "--out", "x"}).code == 64);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("delta prints value and minimizer") {
  auto r = call({"delta", "--w", "rat:1/2", "--x", "1/10"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/5 q=2\n");
}

TEST_CASE("farey count modes agree") {
  auto a = call({"farey", "count", "--a", "0", "--q", "1", "--M", "10", "--z", "10", "--mode", "enumerate"});
  auto b = call({"farey", "count", "--a", "0", "--q", "1", "--M", "10", "--z", "10", "--mode", "sieve"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("a,q,M,z,count_strict,count_closed,bound,satisfied\n") != std::string::npos);
  CHECK(a.out.find("\n0,1,10,10,31,33,") != std::string::npos);
}

TEST_CASE("length expressions") {
  CHECK(flatarc_cli::eval_length("r^0.5", 1e6) == doctest::Approx(1000));
  CHECK(flatarc_cli::eval_length("2*r^(1/3)", 1e6) == doctest::Approx(200));
  CHECK(flatarc_cli::eval_length("3r^0.5", 1e4) == doctest::Approx(300));
  CHECK(flatarc_cli::eval_length("5e5", 1e9) == doctest::Approx(5e5));
  CHECK_THROWS(flatarc_cli::eval_length("bogus", 1));
  CHECK_THROWS(flatarc_cli::eval_length("", 1));
}

TEST_CASE("construct, verify and render") {
  auto curve = scratch("c.txt"), svg = scratch("c.svg"), again = scratch("c2.txt"), rendered = scratch("r.svg");
  auto r = call({"construct", "--regime", "rational", "--w", "rat:1/3", "--ell", "5e5", "--r", "1e9", "--out",
                 curve.string(), "--svg", svg.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"type\":\"rationale\"") != std::string::npos);
  CHECK(r.out.find("\"satisfied\":true,\"segments\"") != std::string::npos);
  CHECK(fs::exists(curve));
  CHECK(slurp(svg).rfind("<svg", 0) == 0);

  // Same inputs, same bytes.
  auto r2 = call({"construct", "--regime", "rational", "--w", "rat:1/3", "--ell", "5e5", "--r", "1e9", "--out",
                  again.string()});
  CHECK(r2.out == r.out);
  CHECK(slurp(curve) == slurp(again));

  auto v = call({"verify", "--curve", curve.string()});
  CHECK(v.code == 0);
  CHECK(v.out.find("\"consistent\":true") != std::string::npos);
  auto vc = call({"verify", "--curve", curve.string(), "--format", "csv"});
  CHECK(vc.out.find("\nw,ell,r,local_bound,") != std::string::npos);

  CHECK(call({"render", "--curve", curve.string(), "--out", rendered.string()}).code == 0);
  CHECK(slurp(rendered).rfind("<svg", 0) == 0);
  fs::remove_all(curve.parent_path());
}

TEST_CASE("exit codes for library failures") {
  auto out = scratch("x.txt");
  auto h = call({"construct", "--regime", "irrational", "--w", "rat:1/3", "--ell", "100", "--r", "1e6", "--out",
                 out.string()});
  CHECK(h.code == 1);
  CHECK(h.err.find("ell > irr_ell r^(1/3)") != std::string::npos);
  CHECK(!fs::exists(out));

  auto p = call({"delta", "--w", "dec:0.3333@5", "--x", "1/100000000"});
  CHECK(p.code == 2);
  CHECK(p.err.find("more certified digits") != std::string::npos);

  auto io = call({"construct", "--w", "rat:1/3", "--ell", "50", "--r", "1e6", "--out", "/nonexistent/dir/c.txt"});
  CHECK(io.code == 74);
  CHECK(call({"verify", "--curve", "/nonexistent/c.txt"}).code == 74);
  fs::remove_all(out.parent_path());
}

TEST_CASE("profile from the environment") {
  auto prof = scratch("p.json"), curve = scratch("c.txt");
  {
    std::ofstream f(prof);
    f << R"({"inherit": "desk", "K4": 7})";
  }
  ::setenv("FLATARC_PROFILE", prof.c_str(), 1);
  auto r = call({"construct", "--w", "rat:1/3", "--ell", "50", "--r", "1e6", "--out", curve.string()});
  ::unsetenv("FLATARC_PROFILE");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"K4\":7") != std::string::npos);
  auto d = call({"construct", "--w", "rat:1/3", "--ell", "50", "--r", "1e6", "--out", curve.string()});
  CHECK(d.out.find("\"K4\":8") != std::string::npos);
  auto named = call({"construct", "--w", "rat:1/3", "--ell", "50", "--r", "1e6", "--profile", "paper", "--out",
                     curve.string()});
  CHECK(named.out.find("\"name\":\"paper\"") != std::string::npos);
  fs::remove_all(prof.parent_path());
}

TEST_CASE("scan output") {
  auto r = call({"scan", "--w", "quad:(-1+1*sqrt(5))/2", "--alpha", "0.5", "--r-min", "1e3", "--r-max", "1e12",
                 "--points", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# ", 0) == 0);
  CHECK(r.out.find("\nr,exponent,branch,running_max,running_min\n") != std::string::npos);
  CHECK(call({"scan", "--w", "rat:1/2", "--alpha", "0.9", "--r-min", "10", "--r-max", "100", "--points", "2"}).code ==
        64);
}

TEST_CASE("installed binary") {
  std::string bin = FLATARC_CLI_PATH;
  auto out = scratch("delta.txt");
  int st = std::system((bin + " delta --w rat:1/2 --x 1/10 > " + out.string()).c_str());
  REQUIRE(WIFEXITED(st));
  CHECK(WEXITSTATUS(st) == 0);
  CHECK(slurp(out) == "1/5 q=2\n");
  st = std::system((bin + " > /dev/null 2>&1").c_str());
  REQUIRE(WIFEXITED(st));
  CHECK(WEXITSTATUS(st) == 64);
  fs::remove_all(out.parent_path());
}
