#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "walks/io.hpp"
#include "walks/laurent.hpp"

using namespace walks;

namespace {

std::string cli_binary() {
  const char* env = std::getenv("WALKS_BIN");
  return env ? env : "./walks";
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = cli_binary() + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  RunResult r;
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int st = pclose(p);
  r.code = (st >= 0 && WIFEXITED(st)) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("counts csv round trip") {
  std::vector<Rat> counts = {Rat(1), Rat(7), ratio(50, 3), Rat(-2)};
  std::string csv = counts_csv(counts);
  CHECK(csv == "n,count\n0,1\n1,7\n2,50/3\n3,-2\n");
  std::istringstream in(csv);
  CHECK(parse_counts_csv(in) == counts);
}

TEST_CASE("counts csv parser variants") {
  // comments, header, n-column
  std::istringstream a("# produced by a tool\nn,count\n0,1\n1,2\n2,5\n");
  CHECK(parse_counts_csv(a) == std::vector<Rat>{Rat(1), Rat(2), Rat(5)});

  // bare values, no header
  std::istringstream b("1\n2\n5\n14\n");
  CHECK(parse_counts_csv(b) == std::vector<Rat>{Rat(1), Rat(2), Rat(5), Rat(14)});

  // rationals allowed
  std::istringstream c("0,1/3\n1,-2/3\n");
  CHECK(parse_counts_csv(c) == std::vector<Rat>{ratio(1, 3), ratio(-2, 3)});

  std::istringstream gap("0,1\n2,5\n");
  CHECK_THROWS_AS(parse_counts_csv(gap), io_error);
  std::istringstream wide("0,1,2\n");
  CHECK_THROWS_AS(parse_counts_csv(wide), io_error);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_counts_csv(empty), io_error);
  std::istringstream junk("0,abc\n");
  CHECK_THROWS_AS(parse_counts_csv(junk), io_error);
}

TEST_CASE("descale divides by the start scale") {
  std::vector<Int> raw = {Int(3), Int(7), Int(50)};
  std::vector<Rat> out = descale(raw, 3);
  CHECK(out == std::vector<Rat>{Rat(1), ratio(7, 3), ratio(50, 3)});
}

TEST_CASE("series json") {
  SQ s(2);
  s.c = {Rat(1), ratio(-2, 3), Rat(0)};
  CHECK(series_json(s) == "[\"1\",\"-2/3\",\"0\"]");

  SLX l(1);
  l.c[0] = LX(Rat(1));
  l.c[1].add_term(ratio(1, 2), -2);
  l.c[1].add_term(Rat(3), 1);
  std::string js = series_json(l);
  CHECK(js.find("\"i\":-2") != std::string::npos);
  CHECK(js.find("\"c\":\"1/2\"") != std::string::npos);
  CHECK(js.find("\"c\":\"3\"") != std::string::npos);
}

TEST_CASE("start distribution parsing") {
  StartDistribution d = parse_start("0,0");
  CHECK(d.scale == 1);
  REQUIRE(d.entries.size() == 1);
  CHECK(d.entries[0] == std::make_tuple(0, 0, 1L));

  // weighted: (2,1,1)/3 at three points
  StartDistribution w = parse_start("0,0:2/3; -2,0:1/3; 0,-2:1/3");
  CHECK(w.scale == 3);
  REQUIRE(w.entries.size() == 3);
  CHECK(w.entries[0] == std::make_tuple(0, 0, 2L));
  CHECK(w.entries[1] == std::make_tuple(-2, 0, 1L));
  CHECK(w.entries[2] == std::make_tuple(0, -2, 1L));

  // negative weights are allowed (signed distributions)
  StartDistribution n = parse_start("1,2:-1/2");
  CHECK(n.scale == 2);
  CHECK(n.entries[0] == std::make_tuple(1, 2, -1L));

  CHECK_THROWS_AS(parse_start(""), io_error);
  CHECK_THROWS_AS(parse_start("1"), io_error);
  CHECK_THROWS_AS(parse_start("1,2:3:4"), io_error);
  CHECK_THROWS_AS(parse_start("a,b"), io_error);
}

TEST_CASE("point parsing") {
  CHECK(parse_point("-1,0") == std::make_pair(-1, 0));
  CHECK(parse_point(" 3 , -4 ") == std::make_pair(3, -4));
  CHECK_THROWS_AS(parse_point("3"), io_error);
  CHECK_THROWS_AS(parse_point("3,4,5"), io_error);
}

// ---- end-to-end runs of the built binary ------------------------------------

TEST_CASE("cli: enumerate fixed endpoint") {
  RunResult r = run_cli("enumerate --model king --region three-quadrant --end -1,0 --n 5");
  CHECK(r.code == 0);
  CHECK(r.out == "# walks 1.0\nn,count\n0,0\n1,1\n2,2\n3,17\n4,80\n5,536\n");
}

TEST_CASE("cli: enumerate totals") {
  RunResult r = run_cli("enumerate --model king --region three-quadrant --total --n 2");
  CHECK(r.code == 0);
  CHECK(r.out == "# walks 1.0\nn,count\n0,1\n1,7\n2,50\n");
}

TEST_CASE("cli: modular reconstruction matches exact counting") {
  std::string args = "enumerate --model king --region three-quadrant --total --n 18";
  RunResult exact = run_cli(args);
  RunResult mod = run_cli(args + " --primes 2");
  CHECK(exact.code == 0);
  CHECK(mod.code == 0);
  CHECK(exact.out == mod.out);
}

TEST_CASE("cli: runs are byte-identical") {
  std::string args = "enumerate --model king --region quadrant --total --n 10 --format json";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"version\":\"1.0\"") != std::string::npos);
}

TEST_CASE("cli: verify reflection exits zero") {
  RunResult r = run_cli("verify --identity reflection --model king --start 0,0 --n 10");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("cli: closed-form expansion") {
  RunResult r = run_cli("closed-form --name m00 --order 5");
  CHECK(r.code == 0);
  CHECK(r.out == "# walks 1.0\nn,count\n0,0\n1,1\n2,2\n3,17\n4,80\n5,536\n");
}

TEST_CASE("cli: guess on a catalan csv") {
  {
    std::ofstream f("catalan_cli_test.csv");
    Int c[30];
    c[0] = 1;
    for (int k = 1; k < 30; ++k) {
      c[k] = 0;
      for (int i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
    }
    f << "n,count\n";
    for (int k = 0; k < 30; ++k) f << k << "," << c[k].get_str() << "\n";
  }
  RunResult r = run_cli("guess --input catalan_cli_test.csv --dF 2 --dt 1 --prime 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"terms\":[") != std::string::npos);

  // a non-algebraic sequence exits 1
  {
    std::ofstream f("factorial_cli_test.csv");
    Int v(1);
    f << "n,count\n";
    for (int k = 0; k < 40; ++k) {
      f << k << "," << v.get_str() << "\n";
      v *= (k + 1);
    }
  }
  RunResult bad = run_cli("guess --input factorial_cli_test.csv --dF 2 --dt 2 --prime 0");
  CHECK(bad.code == 1);
  std::remove("catalan_cli_test.csv");
  std::remove("factorial_cli_test.csv");
}

TEST_CASE("cli: asymptotics table") {
  RunResult r = run_cli("asymptotics --series total --n 300");
  CHECK(r.code == 0);
  CHECK(r.out.find("# walks 1.0\nquantity,predicted,empirical,spread\n") == 0);
  CHECK(r.out.find("growth,8") != std::string::npos);
  CHECK(r.out.find("exponent,-1/3,") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli("enumerate --model king --total").code == 2);          // missing --n
  CHECK(run_cli("frobnicate").code == 2);                              // unknown subcommand
  CHECK(run_cli("enumerate --model nosuch --total --n 3").code == 2);  // unknown model
  CHECK(run_cli("enumerate --model king --region nowhere --total --n 3").code == 2);
  CHECK(run_cli("closed-form --name nosuch --order 3").code == 2);
}
