// Copyright 2026 The qmarg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qmarg/cli.hpp"
#include "qmarg/json_io.hpp"
#include "qmarg/numerics.hpp"

using namespace qmarg;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("qmarg_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const Json& j) const {
    const auto p = path_ / name;
    std::ofstream(p) << j.dump();
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

DensityMatrix diag_density(std::vector<double> v) {
  const std::size_t d = v.size();
  return validate_density(ComplexMatrix::diagonal(v), {d});
}

}  // namespace

TEST_CASE("matrix JSON round trip") {
  SeededStream s(1);
  const auto rho = random_fixed_spectrum(random_spectrum(4, s), s, {2, 2});
  const auto j = Json::parse(to_json(rho).dump());
  CHECK(j["dims"] == Json::array({2, 2}));
  const auto back = density_from_json(j);
  CHECK(back.dims() == rho.dims());
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) <= 1e-12);

  const auto rounded = density_from_json(round_floats(to_json(rho)));
  CHECK(max_abs_diff(rounded.matrix(), rho.matrix()) <= 1e-11);
}

TEST_CASE("matrix JSON input checks") {
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"re": [[1, 0], [0]]})")), DimensionError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"im": [[0]]})")), Error);
  const auto m = matrix_from_json(Json::parse(R"({"re": [[0.5, 0], [0, 0.5]]})"));
  CHECK(m.dim() == 2);
  CHECK_THROWS_AS(density_from_json(Json::parse(R"({"re": [[1.5, 0], [0, -0.5]]})")), InvalidDensity);
}

TEST_CASE("spectrum, permutation, EPS and table JSON") {
  const Spectrum l({0.5, 0.3, 0.2});
  CHECK(spectrum_from_json(to_json(l)) == l);
  CHECK(spectrum_from_json(Json::parse("[0.2, 0.5, 0.3]")) == l);

  PermutationCombination c;
  c.terms = {{0.25, {1, 0, 2}}, {0.75, {0, 1, 2}}};
  const auto c2 = permutation_combination_from_json(Json::parse(to_json(c).dump()));
  REQUIRE(c2.terms.size() == 2);
  CHECK(c2.terms[0].perm == c.terms[0].perm);
  CHECK(c2.terms[1].weight == 0.75);

  const EpsAmplitudes e(4, {{0b0000, 0.5}, {0b0110, Complex(0.0, 0.5)}, {0b1010, 0.5}, {0b1100, -0.5}});
  const auto ej = to_json(e);
  CHECK(ej["amps"][1]["x"] == "0110");
  const auto e2 = eps_from_json(Json::parse(ej.dump()));
  CHECK(e2.amps() == e.amps());

  const JointDistribution p(2, 2, {0.1, 0.2, 0.3, 0.4});
  CHECK(joint_from_json(to_json(p)).flat() == p.flat());
}

TEST_CASE("region JSON") {
  const auto j = region_json(Spectrum({0.7, 0.2, 0.1, 0.0}));
  CHECK(j["vertices"]["B"][0].get<double>() == doctest::Approx(0.3));
  CHECK(j["polygon"].size() == 8);
}

TEST_CASE("rounding to significant digits") {
  const auto j = round_floats(Json{{"x", 0.1 + 0.2}, {"y", Json::array({1.0 / 3.0, 2})}, {"z", -0.0}});
  CHECK(j.dump() == R"({"x":0.3,"y":[0.333333333333,2],"z":0.0})");
}

TEST_CASE("cli: counterexample") {
  const auto r = run_cli({"check", "two-qubit", "--la", "0.4", "--lb", "0.5", "--spectrum", "0.3,0.3,0.3,0.1"});
  CHECK(r.code == cli::kExitIncompatible);
  const auto j = r.json();
  CHECK(j["compatible"] == false);
  REQUIRE(j["violations"].size() == 1);
  CHECK(j["violations"][0]["index"] == 4);
  CHECK(j["violations"][0]["name"] == "difference");
}

TEST_CASE("cli: region") {
  const auto r = run_cli({"region", "--spectrum", "0.7,0.2,0.1,0"});
  CHECK(r.code == 0);
  const auto v = r.json()["vertices"];
  CHECK(v["O"] == Json::array({0.5, 0.5}));
  CHECK(v["A"] == Json::array({0.5, 0.3}));
  CHECK(v["B"] == Json::array({0.3, 0.1}));
  CHECK(v["C"] == Json::array({0.2, 0.1}));
  CHECK(v["D"] == Json::array({0.15, 0.15}));
  CHECK(run_cli({"region", "--spectrum", "0.7,0.3"}).code == cli::kExitError);
}

TEST_CASE("cli: qubit checks and witnesses") {
  CHECK(run_cli({"check", "qubits", "--margins", "0.25,0.25,0.25"}).code == 0);
  CHECK(run_cli({"check", "qubits", "--margins", "[0.25, 0.25, 0.25]"}).code == 0);
  const auto bad = run_cli({"check", "qubits", "--margins", "0.4,0.1,0.1"});
  CHECK(bad.code == 1);
  CHECK(bad.json()["violations"][0]["qubit"] == 0);

  const auto w = run_cli({"witness", "qubits", "--margins", "0.3,0.2,0.15"});
  CHECK(w.code == 0);
  const auto j = w.json();
  CHECK(j["state"]["dims"].size() == 3);
  CHECK(j["report"]["marginal_residual"].get<double>() <= 1e-8);
  CHECK(run_cli({"witness", "qubits", "--margins", "0.4,0.1,0.1"}).code == 1);
}

TEST_CASE("cli: witness qubits from local matrices") {
  TempDir dir;
  SeededStream s(2);
  std::vector<std::string> args{"witness", "qubits", "--locals"};
  for (double x : {0.2, 0.3, 0.4}) {
    const auto rho = conjugate(diag_density({1 - x, x}), random_haar_unitary(2, s));
    args.push_back(dir.write("q" + std::to_string(args.size()) + ".json", to_json(rho)));
  }
  const auto r = run_cli(args);
  CHECK(r.code == 0);
  CHECK(r.json()["report"]["marginal_residual"].get<double>() <= 1e-8);
}

TEST_CASE("cli: two-qubit witness") {
  const auto r = run_cli({"witness", "two-qubit", "--la", "0.3", "--lb", "0.2", "--spectrum", "0.7,0.2,0.1,0"});
  CHECK(r.code == 0);
  const auto j = r.json();
  CHECK(j["report"]["spectrum_residual"].get<double>() <= 1e-8);
  CHECK(j["report"]["marginal_residual"].get<double>() <= 1e-8);
  const auto rho = density_from_json(j["state"]);
  CHECK(rho.dims() == std::vector<std::size_t>{2, 2});
  CHECK(run_cli({"witness", "two-qubit", "--la", "0.4", "--lb", "0.5", "--spectrum", "0.3,0.3,0.3,0.1"}).code == 1);
}

TEST_CASE("cli: conv, tripartite, pure-224 and separable") {
  TempDir dir;
  const auto a = dir.write("a.json", to_json(diag_density({0.6, 0.4})));
  const auto b = dir.write("b.json", to_json(diag_density({0.5, 0.5})));
  const auto c = dir.write("c.json", to_json(diag_density({0.3, 0.3, 0.3, 0.1})));

  const auto conv = run_cli({"check", "conv", "--spec-a", "0.6,0.4", "--spec-b", "0.5,0.5", "--lambda", "0.3,0.3,0.3,0.1"});
  CHECK(conv.code == 0);
  CHECK(conv.json()["table"].size() == 2);
  CHECK(run_cli({"check", "conv", "--spec-a", "1,0", "--spec-b", "1,0", "--lambda", "0.5,0.5,0,0"}).code == 1);

  const auto tri = run_cli({"check", "tripartite", "--rho-a", a, "--rho-b", b, "--rho-c", c});
  CHECK(tri.code == 0);
  CHECK(tri.json()["conditions"].size() == 3);

  const auto pure = run_cli({"check", "pure-224", "--rho-a", a, "--rho-b", b, "--rho-c", c});
  CHECK(pure.code == 1);
  CHECK(pure.json()["violations"][0]["name"] == "difference");
  CHECK(run_cli({"witness", "pure-224", "--rho-a", a, "--rho-b", b, "--rho-c", c}).code == 1);

  const auto sep = run_cli({"witness", "separable", "--rho-a", a, "--rho-b", b, "--lambda", "0.3,0.3,0.3,0.1"});
  CHECK(sep.code == 0);
  CHECK(sep.json()["report"]["marginal_residual"].get<double>() <= 1e-8);

  const auto mixed = dir.write("m.json", to_json(diag_density({0.5, 0.5})));
  const auto flat = dir.write("f.json", to_json(diag_density({0.25, 0.25, 0.25, 0.25})));
  const auto w = run_cli({"witness", "pure-224", "--rho-a", mixed, "--rho-b", mixed, "--rho-c", flat});
  CHECK(w.code == 0);
  CHECK(w.json()["state"]["dims"] == Json::array({2, 2, 4}));
}

TEST_CASE("cli: errors go to stderr as JSON with exit 2") {
  const auto missing = run_cli({"check", "tripartite", "--rho-a", "/nonexistent.json", "--rho-b", "x", "--rho-c", "y"});
  CHECK(missing.code == cli::kExitError);
  CHECK(missing.out.empty());
  CHECK(Json::parse(missing.err).contains("error"));

  const auto bad_number = run_cli({"check", "qubits", "--margins", "0.2,abc"});
  CHECK(bad_number.code == 2);
  CHECK(Json::parse(bad_number.err)["error"]["kind"] == "input");

  const auto usage = run_cli({"check"});
  CHECK(usage.code == 2);
  CHECK(Json::parse(usage.err)["error"]["kind"] == "usage");

  TempDir dir;
  const auto bad = dir.write("bad.json", Json{{"re", Json::array({Json::array({1.5, 0}), Json::array({0, -0.5})})}});
  const auto r = run_cli({"check", "tripartite", "--rho-a", bad, "--rho-b", bad, "--rho-c", bad});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.err)["error"]["kind"] == "invalid-density");

  CHECK(run_cli({"--tol", "-1", "check", "qubits", "--margins", "0.1,0.1"}).code == 2);
  CHECK(run_cli({"check", "two-qubit", "--la", "0.7", "--lb", "0.5", "--spectrum", "0.3,0.3,0.3,0.1"}).code == 2);
}

TEST_CASE("cli: tolerance flag") {
  CHECK(run_cli({"check", "qubits", "--margins", "0.30000001,0.1,0.2"}).code == 1);
  CHECK(run_cli({"--tol", "1e-6", "check", "qubits", "--margins", "0.30000001,0.1,0.2"}).code == 0);
}

TEST_CASE("cli: output file") {
  TempDir dir;
  const auto path = dir.file("region.json");
  const auto r = run_cli({"--output", path, "region", "--spectrum", "0.7,0.2,0.1,0"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(Json::parse(in)["vertices"]["D"] == Json::array({0.15, 0.15}));
}

TEST_CASE("cli: oracle suites are reproducible") {
  const auto a = run_cli({"--seed", "7", "oracle", "info", "--n", "2", "--restarts", "3"});
  const auto b = run_cli({"--seed", "7", "oracle", "info", "--n", "2", "--restarts", "3"});
  CHECK(a.out == b.out);
  CHECK(a.json()["cases"].size() == 2);
  const auto sup = run_cli({"--seed", "3", "oracle", "supf", "--n", "2", "--restarts", "3"});
  CHECK(sup.json()["cases"].size() == 2);
  const auto sample = run_cli({"oracle", "sample", "--n", "200", "--qubits", "4"});
  CHECK(sample.code == 0);
  CHECK(sample.json()["qubit_violations"] == 0);
  CHECK(sample.json()["two_qubit_violations"] == 0);
}

TEST_CASE("cli: help") {
  const auto r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("check") != std::string::npos);
}
