#include "latproj/commands.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latproj/cone_projection.hpp"
#include "latproj/format.hpp"
#include "latproj/function_spaces.hpp"
#include "latproj/instance_file.hpp"
#include "latproj/property_harness.hpp"

namespace latproj::cli {

using nlohmann::json;

namespace {

std::string tuple(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += format_number(v[i]);
  }
  return s + ")";
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(round_significant(v[i]));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Maps library exceptions onto the exit-code contract.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << "; last iterate " << tuple(e.last_iterate()) << '\n';
    return kNumericalFailure;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int verdict_code(bool passed, bool expect_fail) {
  if (expect_fail) return passed ? kViolations : kSuccess;
  return passed ? kSuccess : kViolations;
}

int demo_cauchy(const DemoOptions& options, std::ostream& out) {
  if (options.n_max < 1) throw InputError("--n-max must be at least 1");
  if (options.quadrature_nodes < 3) throw InputError("--quadrature-nodes must be at least 3");
  QuadratureRule rule;
  if (options.rule == "simpson") {
    rule = QuadratureRule::composite_simpson;
  } else if (options.rule == "gauss-legendre") {
    rule = QuadratureRule::gauss_legendre;
  } else {
    throw InputError("unknown quadrature rule '" + options.rule + "'");
  }
  const QuadratureGrid grid = QuadratureGrid::make(rule, options.quadrature_nodes);
  const double threshold = std::max(1e-6, 10.0 / grid.size());

  bool ok = true;
  out << "n,m,measured_D2,exact_D2,abs_error\n";
  for (long n = 1; n <= options.n_max; n *= 2) {
    const int m = static_cast<int>(2 * n);
    const double measured = std::pow(cauchy_distance(grid, static_cast<int>(n), m), 2);
    const double exact = cauchy_distance_squared_exact(static_cast<int>(n), m);
    const double error = std::abs(measured - exact);
    ok = ok && error <= threshold;
    out << n << ',' << m << ',' << format_number(measured) << ',' << format_number(exact) << ','
        << format_number(error) << '\n';
  }
  return ok ? kSuccess : kViolations;
}

int demo_weighted_eval(const DemoOptions& options, std::ostream& out) {
  if (options.terms < 1 || options.terms > kMaxDimension) {
    throw InputError("--terms must be in [1, " + std::to_string(kMaxDimension) + "]");
  }
  const int terms = options.terms;
  const EvalNodeSpace nodes(terms);
  const OrderedSpace space = build_eval_space(terms);

  const Vector ones = Vector::Ones(terms);
  const double measured = space.inner(ones, ones);
  const double exact = 2.0 - std::ldexp(1.0, 1 - terms);
  const double error = std::abs(measured - exact);

  // Piecewise polynomials and one smooth function, all changing sign on [0, 1].
  const std::vector<std::function<double(double)>> samples = {
      [](double t) { return t - 0.5; },
      [](double t) { return 10.0 * (t - 0.3) * (t - 0.7); },
      [](double t) { return t < 0.4 ? -t : 2.0 * t * t - 0.5; },
      [](double t) { return std::sin(6.0 * M_PI * t); },
  };
  double gap = 0.0;
  for (const auto& f : samples) {
    const Vector x = nodes.sample(f).values;
    const Vector clipped = project_closed_form(space, x).point;
    if (clipped != x.cwiseMax(0.0)) throw InternalError("positive part is not pointwise clipping");
    const Vector iterative = project_dykstra(space, x).point;
    gap = std::max(gap, space.norm(clipped - iterative));
  }

  out << "terms,inner_one_one,exact,abs_error,projection_gap\n";
  out << terms << ',' << format_number(measured) << ',' << format_number(exact) << ','
      << format_number(error) << ',' << format_number(gap) << '\n';
  const bool ok = format_number(measured) == format_number(exact) && gap <= 1e-8;
  return ok ? kSuccess : kViolations;
}

}  // namespace

Vector parse_vector_literal(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string_view piece =
        trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    double value = 0.0;
    const char* first = piece.data();
    const char* last = piece.data() + piece.size();
    if (!piece.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (piece.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
      throw InputError("invalid vector literal '" + std::string(text) +
                       "': expected comma-separated decimals");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

int cmd_project(const ProjectOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProjectionMethod method = parse_method(options.method);
    const OrderedSpace space = make_ordered_space(read_instance(options.instance));
    const Vector x = parse_vector_literal(options.vector);
    space.space().check_dimension(x);

    const ProjectionResult result = project(space, x, method, {options.tol, options.max_iter});
    const ProjectionCertificate cert = certificate_check(space, x, result.point, 10.0 * options.tol);

    json doc;
    doc["point"] = vector_json(result.point);
    doc["method"] = to_string(result.method);
    doc["iterations"] = result.iterations;
    doc["residual"] = round_significant(result.residual);
    doc["certificate"] = {
        {"orthogonality_defect", round_significant(cert.orthogonality_defect)},
        {"worst_generator_angle", round_significant(cert.worst_generator_angle)},
        {"verdict", cert.verdict}};

    out << "point = " << tuple(result.point) << '\n';
    out << "certificate = " << (cert.verdict ? "true" : "false") << '\n';
    out << doc.dump(2) << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const bool classify = options.suite == "classify";
    const ProjectionMethod projector = parse_method(options.method);
    if (options.trials < 1) throw InputError("--trials must be at least 1");
    if (!(options.tol > 0.0)) throw InputError("--tol must be positive");
    if (!(options.sample_radius > 0.0)) throw InputError("--radius must be positive");
    static const std::vector<std::string> known = {
        "lattice-norm", "isotone",          "subadditive", "positive-pairs", "identities",
        "moreau",       "oracle-agreement", "certificate", "classify"};
    if (std::find(known.begin(), known.end(), options.suite) == known.end()) {
      throw InputError("unknown suite '" + options.suite + "'");
    }

    const OrderedSpace space = make_ordered_space(read_instance(options.instance));
    TrialConfig cfg;
    cfg.trials = options.trials;
    cfg.seed = options.seed;
    cfg.tol = options.tol;
    cfg.sample_radius = options.sample_radius;

    std::string document;
    int code = kSuccess;
    if (classify) {
      const Classification result = classify_instance(space, cfg);
      document = to_json(result);
      const bool consistent = result.outcome == Consistency::consistent;
      out << "classify: " << (consistent ? "CONSISTENT" : "INCONSISTENT") << " (" << result.side()
          << " side)\n";
      for (const Report& r : result.reports) {
        out << "  " << r.suite << ": " << to_string(r.verdict) << " (" << r.violations << "/"
            << r.trials_run << " violations)\n";
      }
      code = verdict_code(consistent, options.expect_fail);
    } else {
      const Report report = run_suite(options.suite, space, cfg, projector);
      document = to_json(report);
      out << report.suite << ": " << to_string(report.verdict) << " (" << report.violations << "/"
          << report.trials_run << " violations";
      if (report.first_witness) out << ", first witness at trial " << report.first_witness->trial;
      out << ")\n";
      if (report.verdict == Verdict::inconclusive) {
        code = kNumericalFailure;
      } else {
        code = verdict_code(report.verdict == Verdict::pass, options.expect_fail);
      }
    }

    if (options.out.empty()) {
      out << document << '\n';
    } else {
      std::ofstream file(options.out);
      if (!file) throw InputError("cannot write report to '" + options.out + "'");
      file << document << '\n';
    }
    return code;
  });
}

int cmd_demo(const DemoOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.name == "cauchy") return demo_cauchy(options, out);
    if (options.name == "weighted-eval") return demo_weighted_eval(options, out);
    throw InputError("unknown demo '" + options.name + "' (expected cauchy or weighted-eval)");
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric projection onto lattice cones and property suites"};
  app.name("latproj");
  app.require_subcommand(1);

  ProjectOptions project;
  auto* project_cmd = app.add_subcommand("project", "Project a vector onto the positive cone");
  project_cmd->add_option("--instance", project.instance, "Instance JSON file")->required();
  project_cmd->add_option("--vector", project.vector, "Comma-separated coordinates")->required();
  project_cmd->add_option("--method", project.method, "closed-form or dykstra")
      ->capture_default_str();
  project_cmd->add_option("--tol", project.tol, "Dykstra tolerance")->capture_default_str();
  project_cmd->add_option("--max-iter", project.max_iter, "Dykstra cycle budget")
      ->capture_default_str();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite on an instance");
  verify_cmd->add_option("--instance", verify.instance, "Instance JSON file")->required();
  verify_cmd
      ->add_option("--suite", verify.suite,
                   "lattice-norm, isotone, subadditive, positive-pairs, identities, moreau, "
                   "oracle-agreement, certificate or classify")
      ->required();
  verify_cmd->add_option("--trials", verify.trials)->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol)->capture_default_str();
  verify_cmd->add_option("--radius", verify.sample_radius, "Sampling box half-width")
      ->capture_default_str();
  verify_cmd->add_option("--method", verify.method, "Projector for isotone/subadditive")
      ->capture_default_str();
  verify_cmd->add_option("--out", verify.out, "Write the JSON report here");
  verify_cmd->add_flag("--expect-fail", verify.expect_fail,
                       "Refutation mode: exit 0 when the suite fails");

  DemoOptions demo;
  auto* demo_cmd = app.add_subcommand("demo", "Function-space demonstrations (CSV)");
  demo_cmd->add_option("name", demo.name, "cauchy or weighted-eval")->required();
  demo_cmd->add_option("--n-max", demo.n_max)->capture_default_str();
  demo_cmd->add_option("--quadrature-nodes", demo.quadrature_nodes)->capture_default_str();
  demo_cmd->add_option("--rule", demo.rule, "simpson or gauss-legendre")->capture_default_str();
  demo_cmd->add_option("--terms", demo.terms)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  if (project_cmd->parsed()) return cmd_project(project, out, err);
  if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
  return cmd_demo(demo, out, err);
}

}  // namespace latproj::cli
