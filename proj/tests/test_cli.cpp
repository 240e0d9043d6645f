#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "mlineq/cli.hpp"

using mlineq::cli::run;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) result.push_back(line);
  return result;
}

int count_commas(const std::string& line) {
  int n = 0;
  for (char c : line) n += (c == ',');
  return n;
}

}  // namespace

TEST_CASE("eval ml prints the closed-form value") {
  const auto r = invoke({"eval", "ml", "--alpha", "2", "--x", "4"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == mlineq::csv_header);
  CHECK(rows[1].find("eval_ml,2,") == 0);
  CHECK(rows[1].find("3.76219569108363") != std::string::npos);  // cosh 2
}

TEST_CASE("csv rows keep the fixed column count even when fields are empty") {
  const auto r = invoke({"eval", "ml", "--alpha", "1", "--x", "1"});
  for (const auto& line : lines(r.out)) {
    CHECK(count_commas(line) == 11);
  }
}

TEST_CASE("verify identity reports a near-zero residual") {
  const auto r =
      invoke({"verify", "identity", "--alpha", "0.5", "--k", "3", "--lambda",
              "0.5"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].find("identity,0.5,3,0.5,") == 0);
  CHECK(rows[1].find(",holds,") != std::string::npos);
}

TEST_CASE("verify integrals agrees for the closed forms") {
  const auto r = invoke({"verify", "integrals", "--alpha", "2.5,4.2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 5);  // header + 2 alphas x 2 integrals
}

TEST_CASE("verify asympt flags a defect beyond the small-lambda budget") {
  const auto ok = invoke({"verify", "asympt", "--alpha", "2.5", "--k", "1"});
  CHECK(ok.code == 0);
  // k = 20 leaves a first-order remainder far above 0.05 at lambda = 1e-3
  const auto big = invoke({"verify", "asympt", "--alpha", "2.5", "--k", "20"});
  CHECK(big.code == 1);
  bool saw_fail = false;
  for (const auto& line : lines(big.out)) {
    if (line.find("asympt_final") == 0 &&
        line.find(",fails,") != std::string::npos) {
      saw_fail = true;
    }
  }
  CHECK(saw_fail);
}

TEST_CASE("scan cnc2 over a small grid holds everywhere") {
  const auto r = invoke({"scan", "cnc2", "--alpha", "2.4", "--k", "1:10",
                         "--lambda", "0.1:1:0.1"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1 + 10 * 10);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].find(",holds,") != std::string::npos);
  }
}

TEST_CASE("scan records per-point domain errors without aborting") {
  const auto r = invoke({"scan", "cnc1", "--alpha", "0.5,1.0", "--k", "1",
                         "--lambda", "0.5"});
  CHECK(r.code == 2);  // errors present, no fails
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].find(",holds") != std::string::npos);
  CHECK(rows[2].find(",error,") != std::string::npos);
}

TEST_CASE("exit code 3 when only inconclusive results remain") {
  const auto r =
      invoke({"scan", "ml1", "--alpha", "1", "--x", "1", "--y", "1"});
  CHECK(r.code == 3);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({"eval", "ml", "--alpha", "2"}).code == 2);        // missing --x
  CHECK(invoke({"eval", "ml", "--alpha", "abc", "--x", "1"}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
  CHECK(invoke({"eval", "ml", "--alpha", "2", "--x", "1", "--bogus"}).code ==
        2);
  CHECK(invoke({"eval", "phi", "--alpha", "1.5", "--x", "1"}).code == 2);
  CHECK(invoke({"verify", "identity", "--alpha", "0.5", "--lambda",
                "0.2:0.1:0.1"}).code == 2);  // stop below start
  const auto err = invoke({"eval", "phi", "--alpha", "1.5", "--x", "1"});
  CHECK(!err.err.empty());
  CHECK(err.out.empty());
}

TEST_CASE("help is printed on request") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Usage") != std::string::npos);
}

TEST_CASE("range syntax variants") {
  using mlineq::cli::detail::parse_int_values;
  using mlineq::cli::detail::parse_values;
  CHECK(parse_values("0.7") == std::vector<double>{0.7});
  CHECK(parse_int_values("1:3") == std::vector<int>({1, 2, 3}));
  CHECK(parse_values("0.1,0.01,0.001") ==
        std::vector<double>({0.1, 0.01, 0.001}));
  const auto grid = parse_values("0.05:1:0.05");
  REQUIRE(grid.size() == 20);
  CHECK(grid.front() == 0.05);
  CHECK(grid.back() == 1.0);
  CHECK_THROWS_AS(parse_values("1:0.5:0.1"), std::domain_error);
  CHECK_THROWS_AS(parse_values("1:2:-1"), std::domain_error);
  CHECK_THROWS_AS(parse_int_values("1.5"), std::domain_error);
}

TEST_CASE("jsonl format carries the full schema per line") {
  const auto r = invoke({"--format", "jsonl", "eval", "ml", "--alpha", "2",
                         "--x", "4"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1);
  const auto j = nlohmann::json::parse(rows[0]);
  CHECK(j["check_id"] == "eval_ml");
  CHECK(j["alpha"] == 2.0);
  CHECK(j["verdict"] == "holds");
  CHECK(j.contains("lambda"));
  CHECK(j["lambda"].is_null());
  CHECK(j.contains("margin"));
}

TEST_CASE("identical invocations produce byte-identical output") {
  const std::vector<std::string> args{"mc",       "represent", "--alpha",
                                      "0.5",      "--x",       "1",
                                      "--n",      "20000",     "--seed",
                                      "42"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  auto jobs_args = args;
  jobs_args.push_back("--jobs");
  jobs_args.push_back("4");
  const auto c = invoke(jobs_args);
  CHECK(a.out == c.out);
}

TEST_CASE("scan output is independent of the worker count") {
  const std::vector<std::string> base{"scan",     "nc",  "--alpha",
                                      "0.3:0.9:0.2", "--k", "1:5",
                                      "--lambda", "0.25:1:0.25"};
  auto jobs = base;
  jobs.push_back("--jobs");
  jobs.push_back("3");
  CHECK(invoke(base).out == invoke(jobs).out);
}

TEST_CASE("mc laplace over the default grid passes the z-test") {
  const auto r = invoke({"mc", "laplace", "--n", "50000"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1 + 12);
}

TEST_CASE("mc dominance emits a single summary row") {
  const auto r = invoke({"mc", "dominance", "--alpha", "0.5", "--x", "1",
                         "--y", "1", "--n", "50000"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].find("mc_dominance,0.5,") == 0);
}

TEST_CASE("--out writes the report to a file") {
  const std::string path = "cli_out_test.csv";
  std::remove(path.c_str());
  const auto r = invoke({"--out", path, "eval", "ml", "--alpha", "1", "--x",
                         "2"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream file(path);
  REQUIRE(file.good());
  std::string header;
  std::getline(file, header);
  CHECK(header == mlineq::csv_header);
  file.close();
  std::remove(path.c_str());
}

TEST_CASE("scan section56 cosine-sum kind stays exact") {
  const auto r = invoke({"scan", "section56", "--kind", "cosine-sum",
                         "--alpha", "2.5,4.2", "--lambda", "0.1:1:0.1"});
  CHECK(r.code == 0);
  for (std::size_t i = 1; i < lines(r.out).size(); ++i) {
    CHECK(lines(r.out)[i].find(",holds,") != std::string::npos);
  }
}

TEST_CASE("scan logshape handles the alpha = 4 counterexample route") {
  const auto r =
      invoke({"scan", "logshape", "--alpha", "4", "--x", "2,4"});
  CHECK(r.code == 0);
  bool saw_signchange = false;
  for (const auto& line : lines(r.out)) {
    if (line.find("logshape_signchange") == 0) {
      saw_signchange = true;
      CHECK(line.find(",holds,") != std::string::npos);
    }
  }
  CHECK(saw_signchange);
}

TEST_CASE("env var sets the default quadrature tolerance") {
  setenv("MLINEQ_QUAD_TOL", "1e-6", 1);
  const auto relaxed = invoke({"eval", "phi", "--alpha", "0.5", "--x", "1"});
  unsetenv("MLINEQ_QUAD_TOL");
  CHECK(relaxed.code == 0);
  setenv("MLINEQ_QUAD_TOL", "not-a-number", 1);
  const auto bad = invoke({"eval", "phi", "--alpha", "0.5", "--x", "1"});
  unsetenv("MLINEQ_QUAD_TOL");
  CHECK(bad.code == 2);
}
