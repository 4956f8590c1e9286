#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef HECKELAB_CLI_PATH
#define HECKELAB_CLI_PATH "heckelab"
#endif

namespace {

struct RunResult {
  int exit_code = 0;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string last_line(const std::string& text) {
  size_t end = text.find_last_not_of('\n');
  if (end == std::string::npos) return "";
  size_t start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1,
                     end - (start == std::string::npos ? 0 : start + 1) + 1);
}

RunResult run_cli(const std::string& args) {
  std::string out_path = "cli_test_stdout.tmp";
  std::string err_path = "cli_test_stderr.tmp";
  std::string cmd = std::string(HECKELAB_CLI_PATH) + " " + args + " > " + out_path + " 2> " +
                    err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("cli: delta emits both ranges") {
  RunResult r = run_cli("delta");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["spec_version"] == "1");
  REQUIRE(j["delta"].size() == 2);
  CHECK(j["delta"][0]["value"].get<double>() == doctest::Approx(0.0669873).epsilon(1e-5));
  CHECK(j["delta"][0]["argmin"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(j["delta"][1]["value"].get<double>() == doctest::Approx(0.0555556).epsilon(1e-5));
}

TEST_CASE("cli: rho csv contains the spec row") {
  RunResult r = run_cli("rho --poly x^3-2 --pmax 100");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("p,rho\n") == 0);
  CHECK(r.out.find("\n5,1\n") != std::string::npos);
}

TEST_CASE("cli: counterexample is a hard zero") {
  RunResult r = run_cli("counterexample --xmax 1000");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["sum"].get<double>() == 0.0);
  CHECK(j["pseudo_lower_bound"].get<double>() > 0.0);
}

TEST_CASE("cli: byte-identical reruns") {
  std::string args = "corr-sum --form cm-gaussian --poly x^2+1 --xmax 3000";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  RunResult c = run_cli("prime-sum --form trivial-quadratic:-4 --kind S --xmax 20000");
  RunResult d = run_cli("prime-sum --form trivial-quadratic:-4 --kind S --xmax 20000");
  CHECK(c.out == d.out);
  // worker count must not change the payload either
  RunResult e = run_cli("--threads 1 chebotarev --poly x^3-2 --xmax 2000");
  RunResult f = run_cli("--threads 2 chebotarev --poly x^3-2 --xmax 2000");
  CHECK(e.out == f.out);
}

TEST_CASE("cli: validation failures exit 1 with machine-readable JSON") {
  RunResult r = run_cli("rho --poly 7 --pmax 100");
  CHECK(r.exit_code == 1);
  auto j = nlohmann::json::parse(last_line(r.err));
  CHECK(j["error"]["kind"] == "DegreeZero");

  RunResult r2 = run_cli("prime-sum --form level1:15 --kind S --xmax 100");
  CHECK(r2.exit_code == 1);

  // the reducibility warning precedes the error JSON on stderr
  RunResult r3 = run_cli("corr-sum --form level1:12 --poly x^9+1 --xmax 100000000");
  CHECK(r3.exit_code == 2);  // capacity
  CHECK(r3.err.find("warning:") != std::string::npos);
  auto j3 = nlohmann::json::parse(last_line(r3.err));
  CHECK(j3["error"]["kind"] == "CapacityExceeded");
}

TEST_CASE("cli: output file plus metadata sidecar") {
  std::string payload_path = "cli_payload_test.csv";
  RunResult r = run_cli("-o " + payload_path + " rho --poly x^2+1 --pmax 50");
  REQUIRE(r.exit_code == 0);
  std::string payload = slurp(payload_path);
  CHECK(payload.find("p,rho\n") == 0);
  auto meta = nlohmann::json::parse(slurp(payload_path + ".meta.json"));
  CHECK(meta["spec_version"] == "1");
  CHECK(meta["subcommand"] == "rho");
  CHECK(meta.contains("timestamp_unix"));
  std::remove(payload_path.c_str());
  std::remove((payload_path + ".meta.json").c_str());
}

TEST_CASE("cli: eigen cache roundtrip through the cache dir") {
  RunResult gen = run_cli("--cache-dir . eigen-gen --form cm-gaussian --nmax 4000");
  REQUIRE(gen.exit_code == 0);
  auto j = nlohmann::json::parse(gen.out);
  std::string file = j["file"].get<std::string>();
  // a corr-sum that needs lambda at big primes still works via closed form,
  // and prime-sum picks the cache up
  RunResult ps = run_cli("--cache-dir . prime-sum --form cm-gaussian --kind S --xmax 4000");
  CHECK(ps.exit_code == 0);
  std::remove(file.c_str());
}
