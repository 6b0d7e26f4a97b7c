#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "latproj/inner_space.hpp"

namespace latproj::cli {

enum ExitCode : int {
  kSuccess = 0,
  kViolations = 1,       ///< suite failed (inverted by --expect-fail)
  kInvalidInput = 2,
  kNumericalFailure = 3  ///< non-convergence, conditioning, inconclusive suite
};

struct ProjectOptions {
  std::string instance;
  std::string vector;
  std::string method = "closed-form";
  double tol = 1e-10;
  int max_iter = 100000;
};

struct VerifyOptions {
  std::string instance;
  std::string suite;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  double sample_radius = 10.0;
  std::string method = "dykstra";
  std::string out;
  bool expect_fail = false;
};

struct DemoOptions {
  std::string name;
  int n_max = 64;
  int quadrature_nodes = 4096;
  std::string rule = "simpson";
  int terms = 16;
};

/// "1,-2.5,3e-1" -> (1, -2.5, 0.3). Throws InputError on anything else.
Vector parse_vector_literal(std::string_view text);

int cmd_project(const ProjectOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_demo(const DemoOptions& options, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latproj::cli
