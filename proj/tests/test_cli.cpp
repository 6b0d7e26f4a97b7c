#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "latproj/commands.hpp"
#include "latproj/errors.hpp"

using namespace latproj;
using namespace latproj::cli;

namespace {

const std::string data_dir = LATPROJ_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "latproj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string instance(const char* name) { return data_dir + "/" + name + ".json"; }

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("vector literals") {
  const Vector v = parse_vector_literal("1,-2.5,3e-1");
  REQUIRE(v.size() == 3);
  CHECK(v[1] == -2.5);
  CHECK(v[2] == 0.3);
  CHECK_THROWS_AS(parse_vector_literal(""), InputError);
  CHECK_THROWS_AS(parse_vector_literal("1,,2"), InputError);
  CHECK_THROWS_AS(parse_vector_literal("1,x"), InputError);
  CHECK_THROWS_AS(parse_vector_literal("1,nan"), InputError);
}

TEST_CASE("project") {
  Run r = invoke({"project", "--instance", instance("euclid2"), "--vector", "1,-2"});
  CHECK(r.code == kSuccess);
  CHECK(has(r.out, "point = (1, 0)"));
  CHECK(has(r.out, "certificate = true"));

  r = invoke({"project", "--instance", instance("gram_offdiag"), "--vector", "1,-1", "--method", "dykstra"});
  CHECK(r.code == kSuccess);
  CHECK(has(r.out, "point = (0.5, 0)"));

  r = invoke({"project", "--instance", instance("gram_offdiag"), "--vector", "1,-1"});
  CHECK(r.code == kSuccess);
  CHECK(has(r.out, "certificate = false"));

  r = invoke({"project", "--instance", instance("euclid2"), "--vector", "1,2,3"});
  CHECK(r.code == kInvalidInput);
  CHECK_FALSE(r.err.empty());

  r = invoke({"project", "--instance", instance("gram_offdiag"), "--vector", "1,-1", "--method",
              "dykstra", "--tol", "1e-15", "--max-iter", "1"});
  CHECK(r.code == kNumericalFailure);
  CHECK(has(r.err, "last iterate"));

  CHECK(invoke({"project", "--instance", instance("malformed"), "--vector", "1,0"}).code == kInvalidInput);
  CHECK(invoke({"project", "--instance", instance("ill_conditioned"), "--vector", "1,0"}).code ==
        kNumericalFailure);
  CHECK(invoke({"project", "--instance", instance("euclid2"), "--vector", "1,0", "--method", "x"}).code ==
        kInvalidInput);
}

TEST_CASE("verify") {
  Run r = invoke({"verify", "--instance", instance("euclid2"), "--suite", "classify", "--trials", "2000",
                  "--seed", "7"});
  CHECK(r.code == kSuccess);
  CHECK(has(r.out, "CONSISTENT (lattice side)"));

  r = invoke({"verify", "--instance", instance("gram_offdiag"), "--suite", "lattice-norm", "--trials", "100",
              "--seed", "7"});
  CHECK(r.code == kViolations);
  CHECK(has(r.out, "first witness at trial 0"));

  r = invoke({"verify", "--instance", instance("gram_offdiag"), "--suite", "lattice-norm", "--trials", "100",
              "--seed", "7", "--expect-fail"});
  CHECK(r.code == kSuccess);

  r = invoke({"verify", "--instance", instance("euclid2"), "--suite", "positive-pairs", "--trials", "10000",
              "--seed", "7"});
  CHECK(r.code == kSuccess);

  CHECK(invoke({"verify", "--instance", instance("euclid2"), "--suite", "bogus"}).code == kInvalidInput);
  CHECK(invoke({"verify", "--instance", instance("euclid2")}).code == kInvalidInput);
}

TEST_CASE("verify writes the report file") {
  const auto path = std::filesystem::temp_directory_path() / "latproj_cli_report.json";
  std::filesystem::remove(path);
  const Run r = invoke({"verify", "--instance", instance("obtuse_pairs"), "--suite", "positive-pairs",
                        "--trials", "300", "--seed", "5", "--out", path.string()});
  CHECK(r.code == kViolations);
  std::ifstream in(path);
  REQUIRE(in.good());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(has(text, "\"verdict\": \"fail\""));
  CHECK(has(text, "\"trial\": 0"));
  std::filesystem::remove(path);
}

TEST_CASE("demo") {
  Run r = invoke({"demo", "cauchy", "--n-max", "8"});
  CHECK(r.code == kSuccess);
  CHECK(has(r.out, "n,m,measured_D2,exact_D2,abs_error"));
  CHECK(has(r.out, "\n8,16,"));

  r = invoke({"demo", "cauchy", "--rule", "gauss-legendre", "--quadrature-nodes", "512", "--n-max", "4"});
  CHECK(r.code == kSuccess);

  r = invoke({"demo", "weighted-eval", "--terms", "4"});
  CHECK(r.code == kSuccess);
  CHECK(has(r.out, "4,1.875,1.875,"));

  CHECK(invoke({"demo", "cauchy", "--n-max", "0"}).code == kInvalidInput);
  CHECK(invoke({"demo", "nope"}).code == kInvalidInput);
  CHECK(invoke({"demo", "weighted-eval", "--terms", "0"}).code == kInvalidInput);
}

TEST_CASE("usage") {
  CHECK(invoke({}).code == kInvalidInput);
  CHECK(invoke({"--help"}).code == kSuccess);
}
