#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const fs::path kTmp = fs::path("cli_test_tmp");

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  fs::create_directories(kTmp);
  fs::path outf = kTmp / "stdout.txt";
  fs::path errf = kTmp / "stderr.txt";
  std::string cmd = std::string(QDYN_CLI_PATH) + " " + args + " > " + outf.string() + " 2> " +
                    errf.string();
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(outf);
  r.err = slurp(errf);
  return r;
}

double num(const json& decimal_string) {
  return std::strtod(decimal_string.get<std::string>().c_str(), nullptr);
}

} // namespace

TEST_CASE("exit codes: usage errors are 2, numeric errors are 1") {
  CHECK(run_cli("").code == 2);                       // no subcommand
  CHECK(run_cli("frobnicate").code == 2);             // unknown subcommand
  CHECK(run_cli("misiurewicz --bogus 1").code == 2);  // unknown flag
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("skinning-table --n 3..2").code == 2); // empty range
  CHECK(run_cli("misiurewicz --k 2 --p 1 --seed -1.9 --precision-bits 52").code == 2);

  // missing required flags
  CHECK(run_cli("misiurewicz --k 2 --p 1").code == 2);

  // a degenerate Misiurewicz system is a numeric failure, not a usage one
  RunResult degenerate = run_cli("misiurewicz --k 1 --p 2 --seed 0.1,0.9");
  CHECK(degenerate.code == 1);
  CHECK(degenerate.err.find("DegenerateSolution") != std::string::npos);
}

TEST_CASE("misiurewicz: prints the worked constants") {
  RunResult r = run_cli("misiurewicz --k 2 --p 1 --seed -1.9");
  CHECK(r.code == 0);
  CHECK(r.out.find("c = -2.0000") != std::string::npos);
  CHECK(r.out.find("mu = 4.0000") != std::string::npos);
  CHECK(r.out.find("nu = -2.6666") != std::string::npos); // -8/3 signed
  CHECK(r.out.find("k=2 p=1 m=2") != std::string::npos);
}

TEST_CASE("misiurewicz: JSON record structure and values") {
  fs::create_directories(kTmp);
  fs::path out = kTmp / "mis.json";
  RunResult r = run_cli("misiurewicz --k 2 --p 1 --seed -1.9 --out " + out.string() +
                        " --format json");
  REQUIRE(r.code == 0);
  json rec = json::parse(slurp(out));
  REQUIRE(rec.contains("inputs"));
  REQUIRE(rec.contains("outputs"));
  REQUIRE(rec.contains("meta"));
  CHECK(rec["meta"]["tool"] == "qdyn");
  CHECK(rec["meta"]["precisionBits"] == 128);
  CHECK(rec["meta"]["digits"] == 39); // ceil(128 * 0.3010)

  // all numeric payloads are decimal strings, never binary floats
  REQUIRE(rec["outputs"]["c"]["re"].is_string());
  REQUIRE(rec["outputs"]["nu"]["re"].is_string());
  CHECK(std::fabs(num(rec["outputs"]["c"]["re"]) + 2.0) < 1e-15);
  CHECK(std::fabs(num(rec["outputs"]["mu"]["re"]) - 4.0) < 1e-15);
  CHECK(std::fabs(num(rec["outputs"]["nu"]["re"]) + 8.0 / 3.0) < 1e-12);
  CHECK(std::fabs(num(rec["outputs"]["nu"]["im"])) < 1e-15);

  // the embedded record reloads through the library (exact field present)
  REQUIRE(rec["outputs"].contains("record"));
  CHECK(rec["outputs"]["record"]["k"] == 2);
}

TEST_CASE("nu: central-difference gap is reported and small") {
  fs::path out = kTmp / "nu.json";
  RunResult r = run_cli("nu --k 2 --p 2 --seed 0.1,1.1 --out " + out.string() +
                        " --format json");
  REQUIRE(r.code == 0);
  json rec = json::parse(slurp(out));
  CHECK(std::fabs(num(rec["outputs"]["nu"]["re"]) - 0.8) < 1e-12);
  CHECK(std::fabs(num(rec["outputs"]["nu"]["im"]) - 1.6) < 1e-12);
  CHECK(num(rec["outputs"]["gap"]) < 1e-6);
}

TEST_CASE("byte-identical reruns") {
  fs::path a = kTmp / "rerun_a.json";
  fs::path b = kTmp / "rerun_b.json";
  REQUIRE(run_cli("misiurewicz --k 2 --p 2 --seed 0.1,1.1 --out " + a.string() +
                  " --format json").code == 0);
  REQUIRE(run_cli("misiurewicz --k 2 --p 2 --seed 0.1,1.1 --out " + b.string() +
                  " --format json").code == 0);
  CHECK(slurp(a) == slurp(b));

  fs::path ca = kTmp / "rerun_a.csv";
  fs::path cb = kTmp / "rerun_b.csv";
  REQUIRE(run_cli("backward --k 2 --p 1 --seed -1.9 --n 12 --out " + ca.string() +
                  " --format csv").code == 0);
  REQUIRE(run_cli("backward --k 2 --p 1 --seed -1.9 --n 12 --out " + cb.string() +
                  " --format csv").code == 0);
  std::string csv = slurp(ca);
  CHECK(csv == slurp(cb));

  // CSV contract: header row, comma-separated, LF endings only
  CHECK(csv.rfind("j,q_re,q_im,s_re,s_im\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("precision floors are refused with the module rule named") {
  RunResult r = run_cli("backward --k 2 --p 1 --seed -1.9 --n 40 --precision-bits 128");
  CHECK(r.code == 1);
  CHECK(r.err.find("PrecisionTooLow") != std::string::npos);
  CHECK(r.err.find("2*N*log2|mu| + 64") != std::string::npos);

  RunResult s = run_cli("skinning-limit --n-max 14 --precision-bits 96");
  CHECK(s.code == 1);
  CHECK(s.err.find("PrecisionTooLow") != std::string::npos);
  CHECK(s.err.find("4*n_max + 64") != std::string::npos);

  // entry n = 9 needs ceil(2*9*log2 4) + 96 = 132 bits; entries 1..8 fit in 128
  RunResult t = run_cli("surgery --k 2 --p 1 --seed -1.9 --n-from 1 --n-to 9 "
                        "--precision-bits 128");
  CHECK(t.code == 1);
  CHECK(t.err.find("PrecisionTooLow") != std::string::npos);
  CHECK(t.err.find("2*n*log2|mu| + 96") != std::string::npos);
}

TEST_CASE("skinning-table: csv matches the quoted fixed points") {
  fs::path out = kTmp / "table.csv";
  RunResult r = run_cli("skinning-table --n 3..9 --out " + out.string() + " --format csv");
  REQUIRE(r.code == 0);
  std::istringstream csv(slurp(out));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "n,v,c");
  const double expected[7] = {-1.32472, -1.39313, -1.40905, -1.41293,
                              -1.41389, -1.41413, -1.41419};
  for (int i = 0; i < 7; ++i) {
    REQUIRE(std::getline(csv, line));
    std::istringstream row(line);
    std::string n_str, v_str, c_str;
    REQUIRE(std::getline(row, n_str, ','));
    REQUIRE(std::getline(row, v_str, ','));
    REQUIRE(std::getline(row, c_str, ','));
    CHECK(n_str == std::to_string(3 + i));
    double v = std::strtod(v_str.c_str(), nullptr);
    CHECK(std::fabs(v - expected[i]) <= 5e-6);
    double c = std::strtod(c_str.c_str(), nullptr);
    CHECK(std::fabs(c + v * v) <= 1e-12);
  }
}

TEST_CASE("limit-x: reproduces 3 pi^2 / 32 at c = -2") {
  fs::path out = kTmp / "lx.json";
  RunResult r = run_cli("limit-x --k 2 --p 1 --seed -1.9 --n 20 --precision-bits 192 --out " +
                        out.string() + " --format json");
  REQUIRE(r.code == 0);
  json rec = json::parse(slurp(out));
  double x = num(rec["outputs"]["x"]["re"]);
  double target = 3.0 * 9.869604401089358 / 32.0; // 3 pi^2 / 32
  CHECK(std::fabs(x - target) < 1e-8);
  CHECK(std::fabs(num(rec["outputs"]["x"]["im"])) < 1e-12);
  CHECK(num(rec["outputs"]["error"]) < 1e-6);
}

TEST_CASE("surgery: entries, x estimate, and the t-sequence json") {
  fs::path out = kTmp / "sur.json";
  RunResult r = run_cli("surgery --k 2 --p 1 --seed -1.9 --n-from 1 --n-to 8 "
                        "--precision-bits 192 --out " + out.string() + " --format json");
  REQUIRE(r.code == 0);
  json rec = json::parse(slurp(out));
  REQUIRE(rec["outputs"]["entries"].size() == 8);
  double t_re = num(rec["outputs"]["x_estimate"]["re"]);
  // t_n = (c_n + 2) 4^n -> 3 pi^2 / 32
  CHECK(std::fabs(t_re - 3.0 * 9.869604401089358 / 32.0) < 1e-3);
  // the last entry approaches c = -2 from inside
  const json& last = rec["outputs"]["entries"].back();
  CHECK(std::fabs(num(last["c"]["re"]) + 2.0) < 1e-3);
}

TEST_CASE("tan-lei: degenerate range emits only the cross distance") {
  fs::path out = kTmp / "tl.json";
  RunResult r = run_cli("tan-lei --k 2 --p 1 --seed -1.9 --n-range 4..4 --depth 11 "
                        "--h 0.005 --out " + out.string() + " --format json");
  REQUIRE(r.code == 0);
  json rec = json::parse(slurp(out));
  CHECK(rec["outputs"]["seriesJ"].empty());
  CHECK(rec["outputs"]["seriesM"].empty());
  REQUIRE(rec["outputs"]["cross"].is_number());
  CHECK(rec["outputs"]["cross"].get<double>() > 0.0);
  CHECK(rec["outputs"]["juliaCount"].get<long>() == 2 * 2048);
}

TEST_CASE("render: PGM output in both encodings") {
  fs::path ascii = kTmp / "img_ascii.pgm";
  RunResult r1 = run_cli("render --center -0.5,0 --radius 1.5 --px 32 --max-iter 50 --out " +
                         ascii.string());
  REQUIRE(r1.code == 0);
  std::string p2 = slurp(ascii);
  CHECK(p2.rfind("P2\n", 0) == 0);
  CHECK(p2.find("32 32") != std::string::npos);
  CHECK(p2.find('\r') == std::string::npos);

  fs::path bin = kTmp / "img_bin.pgm";
  RunResult r2 = run_cli("render --center -0.5,0 --radius 1.5 --px 32 --max-iter 50 --binary "
                         "--out " + bin.string());
  REQUIRE(r2.code == 0);
  CHECK(slurp(bin).rfind("P5\n", 0) == 0);

  // byte-identical rerun for images as well
  fs::path again = kTmp / "img_again.pgm";
  REQUIRE(run_cli("render --center -0.5,0 --radius 1.5 --px 32 --max-iter 50 --out " +
                  again.string()).code == 0);
  CHECK(slurp(ascii) == slurp(again));
}
