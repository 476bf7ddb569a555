#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lineagedist/cli.hpp"

using namespace lineagedist;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("pmf: structure and repeatability") {
  const std::vector<std::string> args = {"pmf", "--r", "0.4", "--theta", "0.1",
                                         "--method", "exact", "--n", "1..10"};
  const CliRun a = run(args);
  REQUIRE(a.exit_code == 0);
  const auto rows = lines(a.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == "n,method,value");
  CHECK(rows[1].rfind("1,exact,", 0) == 0);
  const CliRun b = run(args);
  CHECK(a.out == b.out);  // byte-identical
}

TEST_CASE("pmf/cdf round trip") {
  const CliRun pmf = run({"pmf", "--r", "0.4", "--theta", "0.1", "--method",
                          "exact", "--n", "1..200"});
  const CliRun cdfv = run({"cdf", "--r", "0.4", "--theta", "0.1", "--method",
                           "exact", "--n", "200"});
  REQUIRE(pmf.exit_code == 0);
  REQUIRE(cdfv.exit_code == 0);
  double sum = 0.0;
  for (const auto& row : lines(pmf.out)) {
    const auto last = row.find_last_of(',');
    if (row.rfind("n,", 0) == 0) continue;
    sum += std::stod(row.substr(last + 1));
  }
  const auto cdf_rows = lines(cdfv.out);
  const double cdf200 =
      std::stod(cdf_rows[1].substr(cdf_rows[1].find_last_of(',') + 1));
  // cdf is self-normalized; the exact total is 1 to quadrature tolerance
  CHECK(std::abs(sum - cdf200) < 1e-9);
}

TEST_CASE("method selector") {
  const CliRun all = run({"cdf", "--r", "0.1", "--theta", "0.4", "--method",
                          "all", "--n", "10,50,100"});
  REQUIRE(all.exit_code == 0);
  const auto rows = lines(all.out);
  REQUIRE(rows.size() == 10);  // header + 3 methods x 3 sizes
  CHECK(rows[1].find(",exact,") != std::string::npos);
  CHECK(rows[4].find(",second-order,") != std::string::npos);
  CHECK(rows[7].find(",asymptotic,") != std::string::npos);
  CHECK(run({"pmf", "--r", "0.4", "--theta", "0.1", "--method", "bogus",
             "--n", "1"})
            .exit_code == 2);
}

TEST_CASE("parameter forms are mutually exclusive") {
  CHECK(run({"pmf", "--n", "1"}).exit_code == 2);
  CHECK(run({"pmf", "--r", "0.4", "--theta", "0.1", "--lambda", "1",
             "--mu", "0.1", "--rho", "0.36", "--n", "1"})
            .exit_code == 2);
  CHECK(run({"pmf", "--r", "0.4", "--n", "1"}).exit_code == 2);
  CHECK(run({"pmf", "--lambda", "1", "--mu", "0.1", "--rho", "0.36", "--n",
             "1..3"})
            .exit_code == 0);
  CHECK(run({}).exit_code == 2);
}

TEST_CASE("quantile rows and overflow exit") {
  const CliRun q = run({"quantile", "--r", "0.4", "--theta", "0.01",
                        "--method", "exact", "--p", "0.05,0.01"});
  REQUIRE(q.exit_code == 0);
  const auto rows = lines(q.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "p,method,n_star");
  CHECK(rows[1] == "0.05,exact,1340");
  // the matching reference-table cell is mentioned alongside
  CHECK(q.err.find("1743") != std::string::npos);
  const CliRun overflow = run({"quantile", "--r", "0.1", "--theta", "0.01",
                               "--method", "exact", "--p", "0.01"});
  CHECK(overflow.exit_code == 3);
}

TEST_CASE("table commands emit the full comparison grids") {
  const CliRun t1 = run({"table1"});
  REQUIRE(t1.exit_code == 0);
  const auto rows1 = lines(t1.out);
  REQUIRE(rows1.size() == 127);
  CHECK(rows1[0] == "r,theta,n,dist,computed,paper_value,diff");
  CHECK(rows1[1].rfind("0.4,0.01,10,E,", 0) == 0);
  CHECK(rows1[1].find(",0.58,") != std::string::npos);

  const CliRun t2 = run({"table2"});
  REQUIRE(t2.exit_code == 0);
  const auto rows2 = lines(t2.out);
  REQUIRE(rows2.size() == 37);
  int overflow_cells = 0;
  for (const auto& row : rows2) {
    if (row.find("overflow_gt_int64max") != std::string::npos) {
      ++overflow_cells;
    }
  }
  CHECK(overflow_cells == 9);  // every method at r=0.1, p=0.01
}

TEST_CASE("figures write six per-panel files") {
  const std::string prefix = "/tmp/lineagedist_test_";
  const CliRun f = run({"figures", "--output", prefix});
  REQUIRE(f.exit_code == 0);
  for (const std::string name :
       {"fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig2c"}) {
    std::ifstream is(prefix + name + ".csv");
    REQUIRE(is.good());
    std::string header, first;
    std::getline(is, header);
    std::getline(is, first);
    CHECK(header == "n,exact,second_order,asymptotic");
    CHECK(first.rfind("1,", 0) == 0);
    std::remove((prefix + name + ".csv").c_str());
  }
}

TEST_CASE("simulate: seed contract, determinism, compare") {
  CHECK(run({"simulate", "--r", "0.4", "--theta", "0.1", "--replicates",
             "100"})
            .exit_code == 2);  // no seed
  const std::vector<std::string> args = {
      "simulate", "--r", "0.4", "--theta", "0.1", "--replicates", "20000",
      "--seed", "42", "--cap", "10000", "--compare"};
  const CliRun a = run(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out.rfind("n,count\n", 0) == 0);
  CHECK(a.err.find("tvd_pooled=") != std::string::npos);
  const CliRun b = run(args);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}

TEST_CASE("fit consumes simulate output") {
  const std::string hist_path = "/tmp/lineagedist_test_sizes.csv";
  const CliRun sim = run({"simulate", "--r", "0.4", "--theta", "0.1",
                          "--replicates", "20000", "--seed", "4242", "--cap",
                          "100000", "--output", hist_path});
  REQUIRE(sim.exit_code == 0);
  // expand the histogram into one row per lineage
  std::ifstream is(hist_path);
  std::string line;
  std::getline(is, line);  // header
  const std::string sizes_path = "/tmp/lineagedist_test_expanded.csv";
  std::ofstream os(sizes_path);
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    const long long n = std::stoll(line.substr(0, comma));
    const long long c = std::stoll(line.substr(comma + 1));
    for (long long i = 0; i < c; ++i) os << n << '\n';
  }
  os.close();
  const CliRun fit = run({"fit", "--input", sizes_path});
  REQUIRE(fit.exit_code == 0);
  CHECK(fit.out.find("r_hat=") != std::string::npos);
  CHECK(fit.out.find("theta_hat=") != std::string::npos);
  const double r_hat =
      std::stod(fit.out.substr(fit.out.find("r_hat=") + 6));
  CHECK(r_hat > 0.25);
  CHECK(r_hat < 0.6);
  std::remove(hist_path.c_str());
  std::remove(sizes_path.c_str());
  CHECK(run({"fit", "--input", "/nonexistent/file.csv"}).exit_code == 2);
}

TEST_CASE("finite clade age flows through pmf") {
  const CliRun ft = run({"pmf", "--r", "0.4", "--theta", "0.1", "--method",
                         "exact-quad", "--tau", "5.5", "--n", "1..3"});
  REQUIRE(ft.exit_code == 0);
  CHECK(lines(ft.out).size() == 4);
  CHECK(run({"pmf", "--r", "0.4", "--theta", "0.1", "--method", "exact",
             "--tau", "5.5", "--n", "1"})
            .exit_code == 2);
}
