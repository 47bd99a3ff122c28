#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(QCYC_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = std::string("/tmp/qcyc_cli_") + name;
  std::ofstream f(path);
  f << body;
  return path;
}

}  // namespace

TEST_CASE("validate accepts builtin refs and groupoid files") {
  RunResult r = run("validate builtin:pair2 --format text");
  CHECK(r.status == 0);
  CHECK(r.out.find("4 arrows") != std::string::npos);

  std::string path = write_temp("z2.json", R"({
    "units": ["x"],
    "arrows": [{"id": "s", "src": "x", "tgt": "x"}],
    "mul": [["s", "s", "x"]],
    "inv": {"s": "s"}
  })");
  CHECK(run("validate " + path).status == 0);
}

TEST_CASE("validate rejects malformed input") {
  std::string path = write_temp("bad.json", R"({
    "units": ["x"],
    "arrows": [{"id": "s", "src": "x", "tgt": "x"}],
    "mul": [["s", "s", "nope"]],
    "inv": {"s": "s"}
  })");
  CHECK(run("validate " + path).status != 0);
  std::string garbled = write_temp("garbled.json", "{ not json");
  CHECK(run("validate " + garbled).status != 0);
}

TEST_CASE("hp reports the quasifree ranks") {
  RunResult r = run("hp --groupoid builtin:pair2");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"even\": 1") != std::string::npos);
  CHECK(r.out.find("\"odd\": 0") != std::string::npos);
}

TEST_CASE("hp without a certificate exits with status 2") {
  CHECK(run("hp --groupoid builtin:z2 --target dual").status == 2);
  CHECK(run("hp --groupoid builtin:z2 --target dual --level 3").status == 0);
}

TEST_CASE("check suites run and report success") {
  RunResult r = run("check --groupoid builtin:z2 --suite paramixed --max-degree 4");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"passed\": true") != std::string::npos);
  CHECK(run("check --groupoid builtin:flip --suite comodule --seed 7").status == 0);
}

TEST_CASE("the dimension guard trips with exit status 2") {
  RunResult r = run(
      "check --groupoid builtin:z2z3 --algebra kg --suite paramixed --guard-dim 10");
  CHECK(r.status == 2);
}

TEST_CASE("greenjulg reports the orbit breakdown") {
  RunResult r = run("greenjulg --groupoid builtin:z2z3");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"equal\": true") != std::string::npos);
}

TEST_CASE("output is deterministic across runs") {
  std::string args = "hp --groupoid builtin:z2 --source trivial --target kg";
  RunResult a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}
