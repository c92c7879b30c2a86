#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

std::string cli_path() {
  if (const char* env = std::getenv("OPFLAB_CLI_BIN")) return env;
  return "./opflab";
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& tag) {
  std::string out_file = ".cli-test-" + tag + ".out";
  std::string cmd = "\"" + cli_path() + "\" " + args + " > " + out_file + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(out_file.c_str());
  return {code, ss.str()};
}

}  // namespace

TEST_CASE("k-values prints the achievable list") {
  auto r = run("k-values --d 2 --limit 14", "kv");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "3,7,8,10,11,12,14\n");
}

TEST_CASE("dim prints the closed-form dimension") {
  auto r = run("dim --j 2 --d 3", "dim");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "27\n");
  auto rj = run("dim --j 1 --d 9 --format json", "dimjson");
  CHECK(rj.exit_code == 0);
  CHECK(rj.out.find("\"dim\": \"80\"") != std::string::npos);
}

TEST_CASE("certify-lt reports the quantum control with exit 0") {
  auto r = run("certify-lt --j 1 --da 3 --db 3", "quantum");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"multiplicity\": \"0\"") != std::string::npos);
  CHECK(r.out.find("\"holistic\": false") != std::string::npos);
  CHECK(r.out.find("\"method\": \"direct\"") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("dim", "noargs").exit_code == 2);
  CHECK(run("nonsense", "unknown").exit_code == 2);
  CHECK(run("toy mub --d 4", "notprime").exit_code == 2);
  CHECK(run("toy mub --d 6", "notprime6").exit_code == 2);
}

TEST_CASE("toy mub reports the canonical measurement") {
  auto r = run("toy mub --d 3", "mub3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"effects\": 12") != std::string::npos);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("toy verify emits a deterministic report and honors the negative control") {
  auto a = run("toy verify --da 2 --db 2 --trials 20 --seed 7", "verify1");
  auto b = run("toy verify --da 2 --db 2 --trials 20 --seed 7", "verify2");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);  // byte-identical artifacts for identical argv + seed
  CHECK(a.out.find("\"all_pass\": true") != std::string::npos);

  auto c = run("toy verify --da 2 --db 2 --trials 10 --seed 7 --negative-control", "verifyneg");
  CHECK(c.exit_code == 1);
  CHECK(c.out.find("\"all_pass\": false") != std::string::npos);
}

TEST_CASE("toy figure writes the CSV schema deterministically") {
  auto a = run("toy figure --samples 200 --seed 5", "fig1");
  auto b = run("toy figure --samples 200 --seed 5", "fig2");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("kind,x,y\n", 0) == 0);
  CHECK(a.out.find("\nreduced,") != std::string::npos);
}

TEST_CASE("toy witness confirms the purification violation") {
  auto r = run("toy witness", "witness");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"ensemble_size\": 2") != std::string::npos);
  CHECK(r.out.find("\"reduced_member\": false") != std::string::npos);
  CHECK(r.out.find("\"purification_violated\": true") != std::string::npos);
}

TEST_CASE("toy reduce reports an image member") {
  auto r = run("toy reduce --da 2 --db 2 --seed 11", "reduce");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"reduced_member\": true") != std::string::npos);
}

TEST_CASE("cache admin round trip") {
  auto cleared = run("cache --action clear --n 9", "cclear");
  CHECK(cleared.exit_code == 0);
  auto empty = run("cache --action stat --n 9", "cstat0");
  CHECK(empty.out.find("\"entries\": 0") != std::string::npos);
  auto warm = run("cache --action warm --n 9", "cwarm");
  CHECK(warm.exit_code == 0);
  auto stat = run("cache --action stat --n 9", "cstat1");
  CHECK(stat.out.find("\"entries\": 0") == std::string::npos);
  auto bad = run("cache --action warm --n 10", "cbad");
  CHECK(bad.exit_code == 1);
}
