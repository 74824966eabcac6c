#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "stieltjes/cli.hpp"
#include "stieltjes/json_io.hpp"

using namespace stieltjes;

namespace {

std::string data(const std::string& name) { return std::string(STIELTJES_TEST_DATA) + "/" + name; }

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

json parsed(const Result& r) { return parse_json_text(r.out, "stdout"); }

Mat matrix_at(const json& j) { return matrix_from_json(j, "test"); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "stieltjes_kit_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

const Mat kB = (Mat(2, 2) << 3.0, 1.0, 1.0, 2.0).finished();

}  // namespace

TEST_CASE("certify accepts the constant-plus-pole example") {
  const Result r = run({"certify", "--kind", "s", "--input", data("constant_plus_pole.json")});
  CHECK(r.code == cli::kExitPass);
  const json j = parsed(r);
  CHECK(j["certificate"]["verdict"] == "pass");
  CHECK(j["certificate"]["grid"]["seed"] == 42);
  CHECK(j["certificate"]["conditions"].size() == 6);
}

TEST_CASE("certify reports a class failure with a witness") {
  const Result r = run({"certify", "--kind", "sinf", "--input", data("constant_plus_pole.json")});
  CHECK(r.code == cli::kExitFail);
  const json j = parsed(r);
  CHECK(j["certificate"]["verdict"] == "fail");
  bool found = false;
  for (const auto& c : j["certificate"]["conditions"])
    if (c["name"] == "gap_nsd") {
      found = true;
      CHECK(c["margin"].get<double>() < -1e-6);
      CHECK(c["witness_z"].size() == 2);
    }
  CHECK(found);
}

TEST_CASE("moments of a point mass at zero") {
  const Result r = run({"moments", "--m", "2", "--input", data("dirac_alpha.json")});
  CHECK(r.code == cli::kExitPass);
  const json m = parsed(r)["result"]["moments"];
  REQUIRE(m.size() == 3);
  CHECK(matrix_at(m[0]) == kB);
  CHECK(matrix_at(m[1]) == Mat::Zero(2, 2));
  CHECK(matrix_at(m[2]) == Mat::Zero(2, 2));
}

TEST_CASE("params recovers the mass of a single pole") {
  const Result r = run({"params", "--class", "s0", "--input", data("bsimple.json")});
  CHECK(r.code == cli::kExitPass);
  for (const auto& e : parsed(r)["params"]["estimates"]) {
    if (e["name"] != "mass") continue;
    CHECK(opnorm(matrix_at(e["estimate"]["value"]) - kB) <= 1e-8);
    CHECK(e["estimate"]["error_bound"].get<double>() <= 1e-8);
  }
  const Result bad = run({"params", "--class", "s0", "--input", data("constant_plus_pole.json")});
  CHECK(bad.code == cli::kExitFail);

  const Result mode = run({"params", "--mode", "y_scaled", "--input", data("bsimple.json")});
  CHECK(mode.code == cli::kExitPass);
  CHECK(opnorm(matrix_at(parsed(mode)["estimate"]["value"]) - kB) <= 1e-8);
}

TEST_CASE("malformed input exits 1 with a location") {
  const Result r = run({"certify", "--kind", "s", "--input", data("malformed.json")});
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("line") != std::string::npos);

  const auto path = scratch("missing_gamma.json");
  std::ofstream(path) << R"({"kind": "stieltjes_pair", "alpha": 0, "mu": {"q": 1, "atoms": []}})";
  const Result m = run({"certify", "--kind", "s", "--input", path.string()});
  CHECK(m.code == cli::kExitError);
  CHECK(m.err.find("gamma") != std::string::npos);

  CHECK(run({"certify", "--kind", "s", "--input", data("nope.json")}).code == cli::kExitError);
  CHECK(run({"certify", "--kind", "s", "--tol", "0.5", "--input", data("constant_plus_pole.json")}).code == cli::kExitError);
  CHECK(run({"frobnicate"}).code == cli::kExitError);
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  const std::vector<std::string> args = {"report", "--input", data("constant_plus_pole.json")};
  ::setenv("STIELTJES_KIT_THREADS", "1", 1);
  const Result a = run(args);
  ::setenv("STIELTJES_KIT_THREADS", "4", 1);
  const Result b = run(args);
  const Result c = run(args);
  ::unsetenv("STIELTJES_KIT_THREADS");
  CHECK(a.code == cli::kExitPass);
  CHECK(a.out == b.out);
  CHECK(b.out == c.out);
  const json j = parsed(a);
  CHECK(j["verdict"] == "pass");
}

TEST_CASE("convert round trips reproduce the input") {
  const json original = to_json(load_representation(data("constant_plus_pole.json")));
  for (const char* via : {"kk_pair", "nevanlinna"}) {
    const auto mid = scratch(std::string("via_") + via + ".json");
    REQUIRE(run({"convert", "--to", via, "--input", data("constant_plus_pole.json"), "--out", mid.string()}).code == 0);
    const Result back = run({"convert", "--to", "stieltjes_pair", "--alpha", "0", "--input", mid.string()});
    REQUIRE(back.code == 0);
    CHECK(parsed(back).dump() == original.dump());
  }
  CHECK(run({"convert", "--to", "s0", "--input", data("constant_plus_pole.json")}).code == cli::kExitError);
}

TEST_CASE("eval and transform dumps") {
  const Result e = run({"eval", "--input", data("constant_plus_pole.json")});
  CHECK(e.code == 0);
  CHECK(parsed(e)["points"].size() == 160);

  const Result d = run({"transform", "--op", "dual", "--beta", "0", "--input", data("constant_plus_pole.json")});
  CHECK(d.code == 0);
  CHECK(parsed(d)["kind"] == "t_pair");
  CHECK(run({"transform", "--op", "dual", "--input", data("constant_plus_pole.json")}).code == cli::kExitError);

  const Result p = run({"transform", "--op", "pinv_map", "--input", data("bsimple.json")});
  CHECK(p.code == 0);
  // F = B/(alpha - z) maps to the constant B^{-1}.
  const Mat inv = kB.inverse();
  for (const auto& pt : parsed(p)["points"]) CHECK(opnorm(matrix_at(pt["F"]) - inv) < 1e-12);

  const Result t = run({"transform", "--op", "transpose", "--input", data("constant_plus_pole.json")});
  CHECK(t.code == 0);
  const Result cs = run({"transform", "--op", "direct_sum", "--input", data("constant_plus_pole.json"),
                         "--input", data("constant_plus_pole.json")});
  CHECK(cs.code == 0);
  CHECK(parsed(cs)["gamma"].size() == 4);
}

TEST_CASE("representations survive a JSON round trip exactly") {
  gen::Gen g(101);
  for (int k = 0; k < 60; ++k) {
    Representation r;
    switch (k % 6) {
      case 0: r = g.pair(); break;
      case 1: r = g.s0(); break;
      case 2: r = g.sinf(); break;
      case 3: r = g.tpair(); break;
      case 4: r = g.t0(); break;
      default: r = g.tinf(); break;
    }
    const json j = to_json(r);
    const Representation back = representation_from_json(parse_json_text(j.dump(), "text"));
    CHECK(to_json(back).dump() == j.dump());
    CHECK(eval(back, cplx(-3.0, 0.5)) == eval(r, cplx(-3.0, 0.5)));
  }
}
