#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "rectlab/cli.hpp"
#include "rectlab/io.hpp"

using namespace rectlab;
using io::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(RECTLAB_TEST_DATA) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("width of a chain") {
  const auto r = run({"width", "--family", data("chain.json")});
  REQUIRE(r.code == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["width"] == 1);
  CHECK(doc["is_chain"] == true);
  CHECK(doc["dilworth_certified"] == true);
}

TEST_CASE("width with projection and property (C)") {
  const auto r = run({"width", "--family", data("incomparable3.json"), "--plane", "1", "2", "--property-c", "--kmax",
                      "8"});
  REQUIRE(r.code == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["width"] == 3);
  CHECK(doc["projection"]["width"] == 3);
  CHECK(doc["property_c"]["required_k"] == 2);
  const auto fail = run({"width", "--family", data("incomparable3.json"), "--plane", "1", "1"});
  CHECK(fail.code == cli::kExitError);
}

TEST_CASE("hat construction from a chain of three") {
  const auto r = run({"construct", "hat", "--chain", data("chain3.json")});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["rects"].size() == 6);
}

TEST_CASE("soria and hyperbolic constructions") {
  const auto s = run({"construct", "soria", "--family", data("incomparable3.json")});
  REQUIRE(s.code == 0);
  const auto doc = Json::parse(s.out);
  CHECK(doc["chain"]["chain"].size() == 2);
  for (const auto& c : doc["certificates"]) CHECK(c["match"] == true);
  const auto h = run({"construct", "hyperbolic", "--n", "2", "--k", "1", "--alpha", "1/2^1"});
  REQUIRE(h.code == 0);
  CHECK(Json::parse(h.out)["rects"].size() == 2);
}

TEST_CASE("maximal function on the command line") {
  for (const bool brute : {false, true}) {
    std::vector<std::string> args{"maximal", "--family", data("half.json"), "--function", data("step.json")};
    if (brute) args.push_back("--brute-force");
    const auto r = run(args);
    REQUIRE(r.code == 0);
    const auto values = Json::parse(r.out)["values"];
    CHECK(values == Json::parse(R"(["1/2^0", "1/2^0", "1/2^1", "1/2^1"])"));
  }
}

TEST_CASE("prop-stokn harness on lemma1, n = 2") {
  const auto r = run({"verify", "prop-stokn", "--construction", "lemma1", "--n", "2", "--kmax", "5", "--phi", "p:1",
                      "--C", "2"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "k,|Θ|,|Y|,minM,lhs,rhs_lo,rhs_hi,ratio_lo,ratio_hi,verdict");
  double prev = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> cells;
    std::istringstream in(rows[i]);
    for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 10);
    CHECK(cells[9] == "pass");
    const double lo = std::stod(cells[7]);
    CHECK(lo > prev);
    prev = std::stod(cells[8]);
  }
  CHECK(r.err.find("claimed_c,measured_c") != std::string::npos);

  const auto json = run({"verify", "prop-stokn", "--construction", "lemma1", "--n", "2", "--kmax", "5", "--format",
                         "json"});
  CHECK(json.code == 0);
  const auto doc = Json::parse(json.out);
  CHECK(doc["status"] == "pass");
  CHECK(doc["constants"].size() == 5);
  CHECK(doc.contains("convention"));
}

TEST_CASE("identical runs give identical bytes") {
  const std::vector<std::string> args{"construct", "lemma1", "--n", "2", "--k", "3"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("oracle recomputes a stored bundle") {
  const auto path = (std::filesystem::temp_directory_path() / "rectlab_cli_bundle.json").string();
  REQUIRE(run({"construct", "lemma1", "--n", "2", "--k", "2", "-o", path}).code == 0);
  const auto ok = run({"oracle", "--bundle", path});
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["status"] == "pass");

  auto doc = io::read_json_file(path);
  doc["measured"]["min_maximal"] = "1/2^3";
  io::write_json_file(path, doc);
  const auto bad = run({"oracle", "--bundle", path});
  CHECK(bad.code == cli::kExitCheckFailed);
  CHECK(Json::parse(bad.out)["differences"].contains("min_maximal"));
  std::filesystem::remove(path);
}

TEST_CASE("errors produce a failure report") {
  CHECK(run({"frobnicate"}).code == cli::kExitError);
  CHECK(run({"width", "--family", data("chain.json"), "--bogus"}).code == cli::kExitError);
  const auto missing = run({"width", "--family", "/nonexistent.json"});
  CHECK(missing.code == cli::kExitError);
  CHECK(Json::parse(missing.err)["status"] == "error");
  const auto cap = run({"--max-cells", "1024", "construct", "lemma1", "--n", "3", "--k", "3"});
  CHECK(cap.code == cli::kExitError);
  CHECK(Json::parse(cap.err)["kind"] == "cap_exceeded");
  const auto phi = run({"verify", "prop-stokn", "--construction", "lemma1", "--n", "2", "--kmax", "2", "--phi", "d:1"});
  CHECK(phi.code == cli::kExitError);
}

TEST_CASE("width sweep of hyperbolic generators") {
  const auto r = run({"sweep", "--quantity", "width", "--n", "2", "--kmin", "1", "--kmax", "6", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["verdict"] == "growing");
  CHECK(doc["widths"].size() == 6);
}
