#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(LFCALC_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(const std::string& name) {
  return std::string(LF_CORPUS_DIR) + "/" + name + ".json";
}

std::string last_line(const std::string& s) {
  std::istringstream in(s);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return last;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("functional equation verb passes at the pinned depth") {
  RunResult r = run("fgl-verify --p 2 --n 1 --degree 50");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "functional equation: pass"));
  CHECK(contains(r.out, "options:"));
  CHECK(contains(r.out, "degree=50"));
  CHECK(contains(r.out, "log=hazewinkel"));  // defaults are echoed
}

TEST_CASE("negative control logarithm exits with the mathematical code") {
  RunResult r = run("fgl-verify --p 2 --n 1 --log honda");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "FAIL"));
  CHECK(contains(r.out, "degree 2"));
}

TEST_CASE("genus prints the bare value") {
  RunResult r = run("genus --p 3 --n 1 --m 2");
  CHECK(r.exit_code == 0);
  CHECK(last_line(r.out) == "-1/8");
}

TEST_CASE("rank prints the bare count") {
  RunResult r = run("hkr-rank --field " + corpus("q3") + " --group " + corpus("s3"));
  CHECK(r.exit_code == 0);
  CHECK(last_line(r.out) == "2");
}

TEST_CASE("torsion counts through the pinned example") {
  RunResult r = run("torsion --p 2 --n 1 --r 2");
  CHECK(r.exit_code == 0);
  CHECK(last_line(r.out) == "4");
}

TEST_CASE("missing required flags are usage errors") {
  CHECK(run("fgl-verify").exit_code == 2);
  CHECK(run("no-such-verb").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("fgl-verify --p 2 --n 1 --log nonsense").exit_code == 2);
}

TEST_CASE("missing input files are operational errors") {
  RunResult r = run("hkr-rank --field /definitely/absent.json --group " + corpus("s3"));
  CHECK(r.exit_code == 2);
  CHECK(contains(r.out, "MissingCorpus"));
}

TEST_CASE("corrupted cayley table is a mathematical failure") {
  RunResult r = run("group-info --group " + std::string(LF_TEST_DATA_DIR) + "/bad_q8.json");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "NotAssociative"));
}

TEST_CASE("non-p-typical law is reported with its own error class") {
  RunResult r = run("fgl-araki --p 3 --n 1 --law multiplicative");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "NotPTypical"));
}

TEST_CASE("json outputs are byte deterministic") {
  for (const std::string& args :
       {std::string("fgl-law --p 2 --n 1 --format json"),
        std::string("fgl-log --p 3 --n 1 --degree 12 --format json"),
        "hkr-scheme --field " + corpus("q2f2") + " --group " + corpus("z2") +
            " --refine frobenius --format json",
        "hkr-classes --field " + corpus("q2") + " --group " + corpus("q8") +
            " --format json",
        "lt-construct --field " + corpus("q2") + " --format json"}) {
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    CHECK(a.out.back() == '\n');
  }
}

TEST_CASE("json reports carry the resolved option set") {
  RunResult r = run("fgl-verify --p 2 --n 1 --format json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "\"options\""));
  CHECK(contains(r.out, "\"degree\": 20"));
  CHECK(contains(r.out, "\"log\": \"hazewinkel\""));
  CHECK(contains(r.out, "\"pass\": true"));
}

TEST_CASE("output flag writes the payload to a file") {
  std::string path = "/tmp/lf_cli_out_test.json";
  std::remove(path.c_str());
  RunResult r = run("genus --p 2 --n 1 --m 3 --format json --output " + path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(contains(ss.str(), "\"value\""));
  std::remove(path.c_str());
}

TEST_CASE("endomorphism verb covers rational and number-field parameters") {
  CHECK(run("fgl-endo --p 2 --n 1 --a 2 --b 3").exit_code == 0);
  CHECK(run("fgl-endo --p 2 --n 2 --a x --b 2").exit_code == 0);
  // non-integral rational parameter violates integrality: mathematical error
  RunResult r = run("fgl-endo --p 2 --n 1 --a 1/2");
  CHECK(r.exit_code == 1);
  // x without a default modulus for this (p, n)
  CHECK(run("fgl-endo --p 5 --n 2 --a x").exit_code == 2);
}

TEST_CASE("lubin-tate verb validates its reports") {
  RunResult r = run("lt-construct --field " + corpus("q2e2") + " --degree 12");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "lubin_tate_defining: pass"));
  CHECK(contains(r.out, "lubin_tate_pi_series: pass"));
  RunResult c = run("lt-construct --field " + corpus("q3") + " --uniformizer cyclotomic");
  CHECK(c.exit_code == 0);
  // cyclotomic needs Q_p itself
  CHECK(run("lt-construct --field " + corpus("q2f2") + " --uniformizer cyclotomic")
            .exit_code == 2);
}

TEST_CASE("hkr-check verbs run end to end") {
  CHECK(run("hkr-check --check product --field " + corpus("q3") + " --group " + corpus("z3") +
            " --group2 " + corpus("z3"))
            .exit_code == 0);
  CHECK(run("hkr-check --check cyclic --field " + corpus("q2e2") + " --nu 2").exit_code == 0);
  CHECK(run("hkr-check --check equivariance --field " + corpus("q2") + " --group " +
            corpus("s3"))
            .exit_code == 0);
  CHECK(run("hkr-check --check equivariance --field " + corpus("q2") + " --group " +
            corpus("s3") + " --images 1/2,0")
            .exit_code == 0);
  // an image that is no homomorphism
  RunResult r = run("hkr-check --check equivariance --field " + corpus("q2") + " --group " +
                    corpus("s3") + " --images 1/3,0");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.out, "NotACharacter"));
}

TEST_CASE("suite filter selects by tag and rejects empty selections") {
  RunResult r = run("suite --only fgl");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "functional_equation"));
  CHECK(!contains(r.out, "lubin_tate"));
  CHECK(run("suite --only zzz").exit_code == 2);
}

TEST_CASE("scheme verb reports the refinement it used") {
  RunResult r = run("hkr-scheme --field " + corpus("q2f2") + " --group " + corpus("z2") +
                    " --refine frobenius");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "refinement frobenius"));
  CHECK(contains(r.out, "acting order 6"));
}
