#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthoclone/cli.hpp"

using orthoclone::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Csv {
  std::map<std::string, std::string> meta;  // from '# key=value' lines
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
  }
  [[nodiscard]] double num(std::size_t row, const std::string& name) const {
    return std::stod(rows.at(row).at(column(name)));
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      csv.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
    } else if (csv.header.empty()) {
      csv.header = split(line);
    } else {
      csv.rows.push_back(split(line));
      REQUIRE(csv.rows.back().size() == csv.header.size());
    }
  }
  return csv;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(orthoclone::cli::csv_number(5.0 / 6.0) == "0.833333333333");
  CHECK(orthoclone::cli::csv_number(1.0) == "1");
  CHECK(orthoclone::cli::json_number(0.1 + 0.2) == 0.3);
}

TEST_CASE("scan flips sign between six and seven clones") {
  const auto r = invoke({"scan", "--m-min", "2", "--m-max", "8"});
  REQUIRE(r.code == 0);
  const Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 7);
  CHECK(csv.header == std::vector<std::string>{"M", "f_perp", "f_parallel", "advantage"});
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const int M = std::stoi(csv.rows[i][0]);
    const double adv = csv.num(i, "advantage");
    if (M < 6) CHECK(adv < 0.0);
    if (M == 6) CHECK(std::abs(adv) < 1e-12);
    if (M > 6) CHECK(adv > 0.0);
  }
}

TEST_CASE("scan edge cases") {
  const auto one = invoke({"scan", "--m-min", "1", "--m-max", "1"});
  REQUIRE(one.code == 0);
  const Csv csv = parse_csv(one.out);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.num(0, "f_perp") == 1.0);
  CHECK(csv.rows[0][csv.column("f_parallel")].empty());
  CHECK(csv.rows[0][csv.column("advantage")].empty());

  const auto big = invoke({"scan", "--m-min", "1000000", "--m-max", "1000000"});
  REQUIRE(big.code == 0);
  CHECK(std::abs(parse_csv(big.out).num(0, "f_perp") - 0.788675) < 1e-6);

  CHECK(invoke({"scan", "--m-min", "5", "--m-max", "3"}).code == 2);
  CHECK(invoke({"scan", "--m-min", "0", "--m-max", "3"}).code == 2);
  CHECK(invoke({"scan", "--m-min", "1", "--m-max", "2000000"}).code == 2);
  const auto bad = invoke({"scan", "--m-min", "5", "--m-max", "3"});
  CHECK(bad.out.empty());
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("CSV output round-trips") {
  const auto r = invoke({"scan", "--m-min", "2", "--m-max", "60"});
  const Csv csv = parse_csv(r.out);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double recomputed = csv.num(i, "f_perp") - csv.num(i, "f_parallel");
    // Each printed value carries 12 significant digits.
    CHECK(std::abs(recomputed - csv.num(i, "advantage")) < 2e-12);
  }
  const auto c = invoke({"crossover", "--n", "3", "--m-max", "40"});
  const Csv cc = parse_csv(c.out);
  for (std::size_t i = 0; i < cc.rows.size(); ++i) {
    const double recomputed = cc.num(i, "f_perp_general") - cc.num(i, "f_parallel");
    CHECK(std::abs(recomputed - cc.num(i, "advantage")) < 2e-12);
  }
}

TEST_CASE("JSON output parses and agrees with CSV") {
  const auto j = invoke({"scan", "--m-min", "1", "--m-max", "9", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  REQUIRE(doc["rows"].size() == 9);
  CHECK(doc["rows"][0]["f_parallel"].is_null());
  const Csv csv = parse_csv(invoke({"scan", "--m-min", "1", "--m-max", "9"}).out);
  for (std::size_t i = 1; i < 9; ++i) {
    CHECK(std::abs(doc["rows"][i]["f_perp"].get<double>() - csv.num(i, "f_perp")) < 1e-12);
    CHECK(doc["rows"][i]["M"].get<int>() == static_cast<int>(i + 1));
  }
}

TEST_CASE("optimize") {
  const auto six = invoke({"optimize", "--m", "6"});
  REQUIRE(six.code == 0);
  const Csv csv = parse_csv(six.out);
  CHECK(std::abs(csv.num(0, "fidelity") - 0.833333) < 1e-6);
  CHECK(std::abs(csv.num(0, "fidelity") - 5.0 / 6.0) < 1e-8);
  CHECK(csv.rows[0][csv.column("converged")] == "true");

  const auto two = invoke({"optimize", "--m", "2", "--tol", "1e-12", "--format", "json"});
  REQUIRE(two.code == 0);
  const auto doc = nlohmann::json::parse(two.out);
  CHECK(doc["duality_gap"].get<double>() < 1e-7);
  CHECK(doc["converged"].get<bool>());

  CHECK(invoke({"optimize", "--m", "0"}).code == 2);
  CHECK(invoke({"optimize", "--m", "31"}).code == 2);
  CHECK(invoke({"optimize", "--m", "2", "--tol", "-1"}).code == 2);

  const auto stuck = invoke({"optimize", "--m", "5", "--max-iter", "2"});
  CHECK(stuck.code == 3);
  const Csv last = parse_csv(stuck.out);
  REQUIRE(last.rows.size() == 1);
  CHECK(last.num(0, "fidelity") > 0.5);
  CHECK(last.rows[0][last.column("converged")] == "false");
  CHECK_FALSE(stuck.err.empty());
}

TEST_CASE("certificate") {
  const auto two = invoke({"certificate", "--m", "2"});
  REQUIRE(two.code == 0);
  const Csv csv = parse_csv(two.out);
  CHECK(std::abs(csv.num(0, "mu2") / csv.num(0, "mu1") - 4.0) < 1e-10);
  CHECK(csv.rows[0][csv.column("psd")] == "true");
  for (int M = 1; M <= 12; ++M) {
    const auto doc =
        nlohmann::json::parse(invoke({"certificate", "--m", std::to_string(M), "--format", "json"}).out);
    CHECK(doc["trace"].get<double>() == doc["f_perp"].get<double>());
    CHECK(doc["lambda"].size() == 4);
  }
  const Csv six = parse_csv(invoke({"certificate", "--m", "6"}).out);
  CHECK(std::abs(six.num(0, "mu1") - 1.0 / 18.0) < 1e-11);
  CHECK(invoke({"certificate", "--m", "0"}).code == 2);
}

TEST_CASE("pdc") {
  const auto two = invoke({"pdc", "--m", "2", "--y-min", "0", "--y-max", "0.5", "--steps", "501"});
  REQUIRE(two.code == 0);
  const Csv csv = parse_csv(two.out);
  CHECK(csv.rows.size() == 501);
  CHECK(std::abs(std::stod(csv.meta.at("grid_best_y")) - 0.18350) < 1e-3);
  CHECK(std::abs(std::stod(csv.meta.at("y_opt")) - 0.183503419072) < 1e-11);
  std::size_t best = 0;
  for (std::size_t i = 1; i < csv.rows.size(); ++i)
    if (csv.num(i, "fidelity") > csv.num(best, "fidelity")) best = i;
  CHECK(std::abs(csv.num(best, "y") - 0.18350) < 1e-3);

  const Csv one = parse_csv(invoke({"pdc", "--m", "1"}).out);
  CHECK(std::stod(one.meta.at("y_opt")) == 0.0);
  const auto six = nlohmann::json::parse(invoke({"pdc", "--m", "6", "--format", "json"}).out);
  CHECK(six["y_opt"].get<double>() == 1.0);

  CHECK(invoke({"pdc", "--m", "2", "--y-min", "0.5", "--y-max", "0.1"}).code == 2);
  CHECK(invoke({"pdc", "--m", "2", "--y-min", "-1", "--y-max", "0.1"}).code == 2);
  CHECK(invoke({"pdc", "--m", "0"}).code == 2);
}

TEST_CASE("crossover") {
  const auto one = invoke({"crossover", "--n", "1"});
  REQUIRE(one.code == 0);
  const Csv csv = parse_csv(one.out);
  CHECK(csv.meta.at("strict_crossover") == "7");
  CHECK(csv.meta.at("equality") == "6");

  const auto none = invoke({"crossover", "--n", "1", "--m-max", "5"});
  CHECK(none.code == 0);
  CHECK(parse_csv(none.out).meta.at("strict_crossover") == "none");
  const auto none_json =
      nlohmann::json::parse(invoke({"crossover", "--n", "1", "--m-max", "5", "--format", "json"}).out);
  CHECK(none_json["strict_crossover"] == "none");

  const auto four = nlohmann::json::parse(invoke({"crossover", "--n", "4", "--format", "json"}).out);
  CHECK(four["strict_crossover"].is_number_integer());

  CHECK(invoke({"crossover", "--n", "0"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"scan", "--format", "xml"}).code == 2);
  CHECK(invoke({"optimize", "--m", "two"}).code == 2);
  const auto help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("scan") != std::string::npos);
}
