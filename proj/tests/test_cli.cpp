#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

int run(const std::string& args) {
  std::string cmd = std::string(MPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("verify --suite nonsense") == 2);
}

TEST_CASE("census runs clean") { CHECK(run("census") == 0); }

TEST_CASE("sweep validates config") {
  spit("/tmp/mpec_bad.json", R"({"mode":"fixed","i":[1],"trials":0})");
  CHECK(run("sweep --config /tmp/mpec_bad.json") == 2);
}

TEST_CASE("a seeded sweep is byte-stable across reruns and workers") {
  spit("/tmp/mpec_cfg.json",
       R"({"mode":"fixed","i":[1],"trials":10,"seed":42,"decoder":"mpec"})");
  CHECK(run("sweep --config /tmp/mpec_cfg.json --out /tmp/mpec_a.csv") == 0);
  CHECK(run("sweep --config /tmp/mpec_cfg.json --out /tmp/mpec_b.csv") == 0);
  CHECK(run("sweep --config /tmp/mpec_cfg.json --workers 3 --out /tmp/mpec_c.csv") == 0);
  std::string a = slurp("/tmp/mpec_a.csv");
  CHECK(a == slurp("/tmp/mpec_b.csv"));
  CHECK(a == slurp("/tmp/mpec_c.csv"));
  // header + one data row
  CHECK(std::count(a.begin(), a.end(), '\n') == 2);
}

TEST_CASE("verify golden suite exits clean") {
  CHECK(run("verify --suite golden") == 0);
}

TEST_CASE("curve consumes sweep output and rejects sparse tables") {
  std::string csv = "mode,decoder,p_or_i,trials,failures,rate,sigma\n";
  for (int i = 0; i <= 12; ++i)
    csv += "fixed,mpec," + std::to_string(i) + ",100,0,0,0\n";
  spit("/tmp/mpec_rt.csv", csv);
  CHECK(run("curve --rtable /tmp/mpec_rt.csv --out /tmp/mpec_curve.csv") == 0);
  std::string curve = slurp("/tmp/mpec_curve.csv");
  std::istringstream lines(curve);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    // all-zero table: p2 and both band edges must be zero
    size_t c1 = line.find(',');
    size_t c2 = line.find(',', c1 + 1);
    std::string rest = line.substr(c2 + 1);
    CHECK(rest == "0,0,0");
  }

  std::string sparse = "mode,decoder,p_or_i,trials,failures,rate,sigma\n";
  sparse += "fixed,mpec,4,100,0,0,0\n";
  spit("/tmp/mpec_sparse.csv", sparse);
  CHECK(run("curve --rtable /tmp/mpec_sparse.csv --out /tmp/mpec_c2.csv") == 2);
}
