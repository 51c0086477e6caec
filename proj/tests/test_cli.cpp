#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class CliFixture {
public:
  CliFixture() {
    dir_ = fs::temp_directory_path() / ("btn_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~CliFixture() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  RunResult run(const std::string& args) const {
    fs::path out = dir_ / "stdout.txt";
    std::string cmd = std::string(BTN_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    return r;
  }

private:
  fs::path dir_;
};

} // namespace

TEST_CASE("gen-build-verify pipeline runs clean") {
  CliFixture cli;
  std::string vectors = cli.path("vectors.txt").string();
  std::string codec = cli.path("codec.txt").string();

  CHECK(cli.run("gen --n 64 --D 16 --seed 7 --out " + vectors).exit_code == 0);
  CHECK(cli.run("build --in " + vectors + " --mode perfect --B 4 --out " + codec).exit_code == 0);

  RunResult verify = cli.run("verify --in " + codec + " --vectors " + vectors);
  CHECK(verify.exit_code == 0);
  CHECK(verify.out.find("avg 0/1 bound 0/1 ok 1\n") != std::string::npos);
}

TEST_CASE("gen is reproducible and build leaves inputs untouched") {
  CliFixture cli;
  std::string a = cli.path("a.txt").string();
  std::string b = cli.path("b.txt").string();
  REQUIRE(cli.run("gen --n 20 --D 8 --seed 11 --out " + a).exit_code == 0);
  REQUIRE(cli.run("gen --n 20 --D 8 --seed 11 --out " + b).exit_code == 0);
  CHECK(slurp(a) == slurp(b));

  std::string before = slurp(a);
  REQUIRE(cli.run("build --in " + a + " --mode approx --B 4 --out " +
                  cli.path("c.txt").string())
              .exit_code == 0);
  CHECK(slurp(a) == before);
}

TEST_CASE("approx build rejects B=2 with a usage error") {
  CliFixture cli;
  std::string vectors = cli.path("vectors.txt").string();
  REQUIRE(cli.run("gen --n 16 --D 6 --seed 1 --out " + vectors).exit_code == 0);
  RunResult r = cli.run("build --in " + vectors + " --mode approx --B 2 --out " +
                        cli.path("c.txt").string());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("B") != std::string::npos);
}

TEST_CASE("bounds prints the report") {
  CliFixture cli;
  RunResult r = cli.run("bounds --n 16 --D 13 --d 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("lower_bound") != std::string::npos);
  CHECK(r.out.find("= 4\n") != std::string::npos);
}

TEST_CASE("export round-trips manifests byte-identically") {
  CliFixture cli;
  std::string vectors = cli.path("vectors.txt").string();
  std::string codec = cli.path("codec.txt").string();
  std::string copy = cli.path("copy.txt").string();
  REQUIRE(cli.run("gen --n 24 --D 9 --seed 5 --out " + vectors).exit_code == 0);
  REQUIRE(cli.run("build --in " + vectors + " --mode approx --B 3 --out " + codec).exit_code ==
          0);
  REQUIRE(cli.run("export --in " + codec + " --out " + copy).exit_code == 0);
  CHECK(slurp(codec) == slurp(copy));
}

TEST_CASE("eval decodes a code and traces layers") {
  CliFixture cli;
  std::string vectors = cli.path("vectors.txt").string();
  std::string codec = cli.path("codec.txt").string();
  REQUIRE(cli.run("gen --n 8 --D 5 --seed 2 --out " + vectors).exit_code == 0);
  REQUIRE(cli.run("build --in " + vectors + " --mode perfect --B 2 --out " + codec).exit_code ==
          0);

  std::string first = slurp(vectors).substr(0, 5);
  RunResult decode = cli.run("eval --in " + codec + " 000");
  CHECK(decode.exit_code == 0);
  CHECK(decode.out == first + "\n");

  RunResult loop = cli.run("eval --in " + codec + " " + first);
  CHECK(loop.exit_code == 0);
  CHECK(loop.out.find(first + "\n") != std::string::npos);

  RunResult traced = cli.run("eval --in " + codec + " 000 --trace");
  CHECK(traced.exit_code == 0);
  CHECK(traced.out.find("decoder ") != std::string::npos);

  CHECK(cli.run("eval --in " + codec + " 0000").exit_code == 2);
}

TEST_CASE("adversarial gen feeds the approx pipeline") {
  CliFixture cli;
  std::string vectors = cli.path("vectors.txt").string();
  std::string codec = cli.path("codec.txt").string();
  REQUIRE(cli.run("gen --n 12 --D 4 --seed 0 --adversarial 011 --out " + vectors).exit_code ==
          0);
  REQUIRE(cli.run("build --in " + vectors + " --mode approx --B 3 --out " + codec).exit_code ==
          0);
  RunResult verify = cli.run("verify --in " + codec + " --vectors " + vectors);
  CHECK(verify.exit_code == 0);
  CHECK(verify.out.find("avg 0/1") != std::string::npos);
}

TEST_CASE("verify exits 1 when the bound is violated") {
  // The all-011 instance drives the uncorrected decoder's average error to
  // D/3, beyond its bound.
  CliFixture cli;
  std::string vectors = cli.path("vectors.txt").string();
  std::string codec = cli.path("codec.txt").string();
  REQUIRE(cli.run("gen --n 12 --D 6 --seed 0 --adversarial 011 --out " + vectors).exit_code ==
          0);
  REQUIRE(cli.run("build --in " + vectors + " --mode approx-uncorrected --B 3 --out " + codec)
              .exit_code == 0);
  RunResult verify = cli.run("verify --in " + codec + " --vectors " + vectors);
  CHECK(verify.exit_code == 1);
  CHECK(verify.out.find("ok 0\n") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CliFixture cli;
  CHECK(cli.run("verify --in missing.txt --vectors missing.txt").exit_code == 2);
  CHECK(cli.run("gen --n 5 --D 2 --seed 1 --out " + cli.path("x.txt").string()).exit_code == 2);
  CHECK(cli.run("nonsense").exit_code != 0);
}
