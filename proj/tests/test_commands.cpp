#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nssbell/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace nssbell;

namespace {

struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    FAIL("missing column " << name);
    return -1;
  }
  double at(std::size_t row, const std::string& name) const {
    return std::stod(rows.at(row).at(col(name)));
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Csv parse(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("#", 0) == 0) {
      csv.comments.push_back(line);
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

template <class F>
Csv run(const RunConfig& c, F write) {
  std::ostringstream os;
  write(c, os);
  return parse(os.str());
}

int exit_code(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("chsh-scan columns and closed-form rows") {
  RunConfig c;
  c.phi_steps = 4;  // 0, pi/6, pi/3, pi/2
  c.trials = 200;
  const Csv csv = run(c, write_chsh_scan);
  CHECK(csv.header == std::vector<std::string>{"phi", "s_formula", "s_physical_exact",
                                               "s_physical_twirled", "s_logical_twirled",
                                               "s_logical_mc", "mc_stderr", "reject_rate"});
  REQUIRE(csv.rows.size() == 4);
  CHECK(csv.at(0, "s_formula") == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(csv.at(2, "phi") == doctest::Approx(std::numbers::pi / 3).epsilon(1e-14));
  CHECK(csv.at(2, "s_formula") == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(csv.at(2, "s_logical_twirled") == doctest::Approx(2.5).epsilon(1e-10));
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    CHECK(std::abs(csv.at(r, "s_physical_twirled")) < 1e-10);
    CHECK(csv.at(r, "reject_rate") < 1e-12);
  }
}

TEST_CASE("CSV metadata block records version, config and seed") {
  RunConfig c;
  c.seed = 987654321;
  c.workers = 2;
  c.phi_steps = 2;
  c.trials = 10;
  const Csv csv = run(c, write_chsh_scan);
  REQUIRE(csv.comments.size() >= 4);
  CHECK(csv.comments[0] == std::string("# tool=") + kToolVersion);
  CHECK(csv.comments[1] == "# command=chsh-scan");
  CHECK(csv.comments[2] == "# seed=987654321");
  CHECK(csv.comments[3] == "# workers=2");
  CHECK(csv.comments[4].find("channel=independent") != std::string::npos);
}

TEST_CASE("chsh-scan output is byte-identical for identical config") {
  RunConfig c;
  c.phi_steps = 5;
  c.trials = 300;
  c.workers = 2;
  std::ostringstream a, b;
  write_chsh_scan(c, a);
  write_chsh_scan(c, b);
  CHECK(a.str() == b.str());
  c.seed = 2;
  std::ostringstream d;
  write_chsh_scan(c, d);
  CHECK(a.str() != d.str());
}

TEST_CASE("twirl-converge rows") {
  RunConfig c;
  c.sample_counts = {1, 100, 10000};
  c.repeats = 20;
  const Csv csv = run(c, write_twirl_converge);
  CHECK(csv.header == std::vector<std::string>{"samples", "median_trace_distance", "p05", "p95"});
  REQUIRE(csv.rows.size() == 4);
  CHECK(csv.at(0, "samples") == 0.0);
  CHECK(csv.at(0, "median_trace_distance") == 0.0);
  CHECK(csv.at(1, "samples") == 1.0);
  CHECK(csv.at(3, "median_trace_distance") <= csv.at(2, "median_trace_distance"));
  CHECK(csv.at(3, "median_trace_distance") <= 0.05);
  for (std::size_t r = 1; r < 4; ++r) {
    CHECK(csv.at(r, "p05") <= csv.at(r, "median_trace_distance"));
    CHECK(csv.at(r, "median_trace_distance") <= csv.at(r, "p95"));
  }
}

TEST_CASE("orthogonality rows") {
  RunConfig c;
  c.samples = 100000;
  const Csv csv = run(c, write_orthogonality);
  REQUIRE(csv.rows.size() == 12);
  CHECK(csv.at(0, "j") == 0.5);
  CHECK(csv.at(0, "expected") == 0.5);
  CHECK(std::abs(csv.at(0, "mean_re") - 0.5) <= 4 * csv.at(0, "stderr_re"));
}

TEST_CASE("biref rows") {
  RunConfig c;
  c.mu_steps = 5;
  const Csv csv = run(c, write_biref);
  REQUIRE(csv.rows.size() == 5);
  CHECK(csv.at(4, "mu") == 1.0);
  CHECK(csv.at(4, "delta_phi") == 0.0);
  CHECK(csv.at(0, "delta_phi") < 0.0);
  CHECK(csv.at(0, "k2") == 1.0);
  c.biref.lambda = -1.0;
  std::ostringstream os;
  CHECK_THROWS(write_biref(c, os));
}

TEST_CASE("tetrad-check rows") {
  RunConfig c;
  c.radii = {3.0, 4.0, 10.0, 100.0};
  const Csv csv = run(c, write_tetrad_check);
  REQUIRE(csv.rows.size() == 4);
  for (const auto& row : csv.rows) CHECK(row.back() == "pass");
  c.metric = "minkowski";
  const Csv flat = run(c, write_tetrad_check);
  CHECK(flat.at(0, "orthonormality") == 0.0);
  c.metric = "kerr";
  std::ostringstream os;
  CHECK_THROWS_AS(write_tetrad_check(c, os), std::invalid_argument);
  c.metric = "schwarzschild";
  c.radii = {1.5};
  CHECK_THROWS_AS(write_tetrad_check(c, os), DomainError);
}

TEST_CASE("unwritable output is a fault") {
  RunConfig c;
  c.out = "/nonexistent-dir/x.csv";
  c.phi_steps = 2;
  CHECK_THROWS_AS(cmd_biref(c), OutputError);
}

TEST_CASE("channel names") {
  CHECK(parse_channel("none") == Channel::none);
  CHECK(parse_channel("shared") == Channel::shared);
  CHECK(to_string(Channel::independent) == "independent");
  CHECK_THROWS_AS(parse_channel("bogus"), std::invalid_argument);
}

TEST_CASE("CLI exit codes") {
  const std::string cli = NSSBELL_CLI;
  const auto tmp = std::filesystem::temp_directory_path() / "nssbell_cli_test.csv";
  CHECK(exit_code(cli + " biref --out " + tmp.string()) == 0);
  CHECK(std::filesystem::file_size(tmp) > 0);
  CHECK(exit_code(cli + " chsh-scan") == 1);                       // missing --out
  CHECK(exit_code(cli + " bogus --out x") == 1);                   // unknown command
  CHECK(exit_code(cli + " chsh-scan --out x --channel foo") == 1); // bad choice
  CHECK(exit_code(cli + " biref --out /nonexistent-dir/x.csv") == 2);
  CHECK(exit_code(cli + " tetrad-check --radii 1 --out " + tmp.string()) == 2);
  std::filesystem::remove(tmp);
}
