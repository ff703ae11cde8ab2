#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "nilsson/cli/cli.hpp"
#include "nilsson/exactnum/json_io.hpp"

using nilsson::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = nilsson::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nilsson-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

json read(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

void write(const std::string& path, const json& j) {
  std::ofstream f(path);
  f << j.dump();
}

std::string data_file(const std::string& name) { return std::string(NILSSON_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("cli examples") {
  auto g = run({"gamma-series", "--gamma", "1/2", "--order", "2"});
  REQUIRE(g.code == 0);
  CHECK(g.doc().at("coefficients") == json::array({"1", "-1/8", "1/128"}));
  CHECK(g.doc().at("meta").at("version").is_string());

  auto e = run({"eval-multisum", "--term", "apery-like", "--n", "0..1"});
  REQUIRE(e.code == 0);
  CHECK(e.doc().at("values") == json::array({"1", "11"}));
  CHECK(e.doc().at("meta").at("window") == "0..1");

  auto u = run({"gamma-series", "--gamma", "1/2", "--bogus"});
  CHECK(u.code == 1);
  CHECK(u.err.find("--bogus") != std::string::npos);
  CHECK(u.err.find("Usage") != std::string::npos);
  CHECK(u.out.empty());
}

TEST_CASE("cli exit codes and error messages") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  auto missing = run({"diagnose", "--values", "/nonexistent/values.json"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  auto range = run({"eval-multisum", "--term", "tet6j", "--n", "5..2"});
  CHECK(range.code == 1);
  CHECK(range.err.find("--n") != std::string::npos);
  auto gamma = run({"gamma-series", "--gamma", "x/2"});
  CHECK(gamma.code == 1);
  auto beta = run({"beta-integral", "--gamma", "5", "--beta", "0", "--n", "3", "--quad"});
  CHECK(beta.code == 1);
  CHECK(beta.err.find("gamma") != std::string::npos);
  auto prec = run({"eval-multisum", "--term", "tet6j", "--n", "0..3", "--precision", "8"});
  CHECK(prec.code == 1);
}

TEST_CASE("cli beta-integral closed form against quadrature") {
  auto r = run({"beta-integral", "--gamma", "1/3", "--beta", "2", "--n", "7", "--quad"});
  REQUIRE(r.code == 0);
  auto j = r.doc();
  CHECK(j.at("quadrature").at("relative_difference").get<double>() < 1e-10);
  auto pi = run({"beta-integral", "--gamma", "1/2", "--beta", "0", "--n", "0"});
  CHECK(std::stod(pi.doc().at("value").get<std::string>()) == doctest::Approx(M_PI).epsilon(1e-15));
}

TEST_CASE("analyze-recurrence output checks against unrolled data") {
  TempDir dir;
  auto a = run({"analyze-recurrence", data_file("two-three.recurrence.json"), "--order", "4", "--out",
                dir / "expansion.json", "--unroll", "0..200", "--values-out", dir / "values.json"});
  REQUIRE(a.code == 0);
  auto report = a.doc();
  CHECK(report.at("solutions").size() == 2);
  CHECK(report.at("characteristic_polynomial") == "x^2 - 5*x + 6");
  auto values = read(dir / "values.json");
  CHECK(values.at("values")[3] == "35");  // 2^3 + 3^3
  auto c = run({"check", "--values", dir / "values.json", "--expansion", dir / "expansion.json", "--cuts",
                "0,0;1,0;2,0", "--window", "20:200"});
  REQUIRE(c.code == 0);
  CHECK(c.doc().at("status") == "PASS");

  // A wrong dominant rate fails the first cut.
  auto e = read(dir / "expansion.json");
  e["lambdas"][0] = "5/2";
  write(dir / "wrong.json", e);
  auto w = run({"check", "--values", dir / "values.json", "--expansion", dir / "wrong.json", "--cuts", "0,0",
                "--window", "20:200"});
  REQUIRE(w.code == 0);
  CHECK(w.doc().at("status") == "FAIL");
}

TEST_CASE("6j pipeline: eval-multisum, fit, check") {
  TempDir dir;
  REQUIRE(run({"eval-multisum", "--term", "tet6j", "--n", "0..600", "--out", dir / "values.json"}).code == 0);
  json model = json::parse(R"({"branches": [
      {"lambda": {"minpoly": [2, 0, 1], "coords": [["329", "729"], ["-460", "729"]], "root": 1}, "alpha": "3/2", "terms": 6},
      {"lambda": {"minpoly": [2, 0, 1], "coords": [["329", "729"], ["460", "729"]], "root": 1}, "alpha": "3/2", "terms": 6}]})");
  write(dir / "model.json", model);
  auto f = run({"fit", "--values", dir / "values.json", "--model", dir / "model.json", "--window", "150:300",
                "--precision", "256", "--out", dir / "expansion.json"});
  REQUIRE(f.code == 0);
  auto expansion = read(dir / "expansion.json");
  CHECK(expansion.at("terms").size() == 2);
  CHECK(expansion.at("meta").at("window") == "150:300");
  CHECK(expansion.at("fit").at("stability_digits").get<double>() > 2);

  auto c = run({"check", "--values", dir / "values.json", "--expansion", dir / "expansion.json", "--cuts",
                "3/2,0;5/2,0", "--window", "200:600"});
  REQUIRE(c.code == 0);
  CHECK(c.doc().at("status") == "PASS");

  auto d = run({"diagnose", "--values", dir / "values.json", "--window", "100:300"});
  REQUIRE(d.code == 0);
  CHECK(std::fabs(d.doc().at("growth").at("r").get<double>() - 1) < 1e-2);
  CHECK(d.doc().at("gfunction").contains("denom_C"));

  // Too many unknowns for the precision: numerical failure.
  json big = model;
  big["branches"][0]["terms"] = 40;
  big["branches"][1]["terms"] = 40;
  write(dir / "big.json", big);
  auto bad = run({"fit", "--values", dir / "values.json", "--model", dir / "big.json", "--window", "150:300",
                  "--precision", "64"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("numerical") != std::string::npos);
}

TEST_CASE("cli output is deterministic") {
  std::vector<std::string> args = {"eval-multisum", "--term", "tet6j", "--n", "0..40"};
  CHECK(run(args).out == run(args).out);
  std::vector<std::string> an = {"analyze-recurrence", data_file("tet6j.recurrence.json"), "--order", "6"};
  auto first = run(an);
  REQUIRE(first.code == 0);
  CHECK(first.out == run(an).out);
  CHECK(first.doc().contains("embeddings"));
}
