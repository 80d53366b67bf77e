#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conicwalk/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = conicwalk::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("conicwalk_test_" + name);
}

}  // namespace

TEST_CASE("constants with oracle verification") {
  const auto errata = scratch("errata.json");
  const auto r = run({"constants", "--p", "7", "--a", "1", "--b", "1", "--verify-oracle", "--errata", errata.string()});
  CHECK(r.code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 1 + 7 * 7 * 7);
  CHECK(lines[0] == "i,j,k,num,den,N_i,N_j");
  CHECK(r.out.rfind("# conicwalk constants", 0) == 0);
  std::ifstream in(errata);
  const auto doc = nlohmann::json::parse(in);
  REQUIRE(doc.is_array());
  CHECK(doc[0].contains("paper_value"));
  CHECK(doc[0].contains("oracle_value"));
}

TEST_CASE("bad field order") {
  const auto r = run({"constants", "--p", "4"});
  CHECK(r.code == 1);
  CHECK(r.err.find("q must be an odd prime power") != std::string::npos);
  CHECK(run({"constants", "--q", "15"}).code == 1);
  CHECK(run({"constants", "--p", "7", "--a", "1", "--b", "3"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("unsplit diagnostic reports the hermitian failure") {
  const auto r = run({"constants", "--p", "13", "--a", "1", "--b", "1", "--diagnostic-unsplit", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.err.find("axiom hermitian: FAIL") != std::string::npos);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["axioms"]["all_passed"] == false);
}

TEST_CASE("axioms, kernel, stationary") {
  CHECK(run({"axioms", "--p", "13"}).code == 0);
  CHECK(run({"axioms", "--p", "13", "--source", "as-stated"}).code == 2);
  const auto k = run({"kernel", "--q", "9", "--format", "json"});
  CHECK(k.code == 0);
  CHECK(nlohmann::json::parse(k.out)["kernel"]["matrix"].size() == 10);
  CHECK(run({"stationary", "--p", "13", "--s", "iso"}).code == 0);
  CHECK(run({"stationary", "--p", "7", "--s", "0"}).code == 1);
}

TEST_CASE("mixing and minorization") {
  const auto m = run({"mixing", "--p", "7", "--eps", "0.1839397", "--format", "json"});
  CHECK(m.code == 0);
  const auto doc = nlohmann::json::parse(m.out);
  CHECK(doc["report"]["tau_bound"] == 96);
  CHECK(doc["report"]["tau"] == 4);
  CHECK(run({"mixing", "--p", "13", "--boost", "0.001", "--decay", "30"}).code == 0);
  const auto mz = run({"minorize", "--p", "13", "--steps", "6"});
  CHECK(mz.code == 0);
  CHECK(mz.out.find("1/39") != std::string::npos);
  CHECK(run({"minorize", "--p", "5"}).code == 0);
}

TEST_CASE("couple and circles") {
  const auto c = run({"couple", "--p", "7", "--trials", "2000", "--seed", "42", "--format", "json"});
  CHECK(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["stats"]["trials"] == 2000);
  CHECK(run({"couple", "--p", "7", "--trials", "2000", "--seed", "42"}).out ==
        run({"couple", "--p", "7", "--trials", "2000", "--seed", "42"}).out);
  const auto circles = run({"circles", "--p", "13", "--class", "iso"});
  CHECK(circles.code == 0);
  CHECK(data_lines(circles.out).size() == 25);
}

TEST_CASE("scan writes one row per admissible q") {
  const auto out = scratch("scan.csv");
  const auto r = run({"scan", "--qmin", "7", "--qmax", "61", "--out", out.string()});
  CHECK(r.code == 0);
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto lines = data_lines(buf.str());
  // 7 9 11 13 17 19 23 25 27 29 31 37 41 43 47 49 53 59 61
  CHECK(lines.size() == 1 + 19);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::vector<std::string> cells;
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 8);
    CHECK(std::stoll(cells[3]) <= std::stoll(cells[4]));
  }
  CHECK(buf.str().find("# max_tau_over_q=") != std::string::npos);
}
