#include "latproj/property_harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include <json.hpp>

#include "latproj/format.hpp"
#include "latproj/instance_file.hpp"

namespace latproj {

using nlohmann::json;

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

using Rng = std::mt19937_64;

enum class TrialStatus { ok, violation, inconclusive };

struct TrialOutcome {
  TrialStatus status = TrialStatus::ok;
  Witness witness;
};

using TrialFn = std::function<TrialOutcome(std::size_t trial, Rng& rng)>;

// Each trial gets its own generator, so results do not depend on scheduling.
Rng trial_rng(std::uint64_t seed, std::size_t trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return Rng(seq);
}

struct Tally {
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  std::optional<Witness> first;
  std::exception_ptr error;
  std::size_t error_trial = std::numeric_limits<std::size_t>::max();
};

Report run_trials(std::string_view suite, const OrderedSpace& ospace, const TrialConfig& cfg,
                  const TrialFn& fn) {
  if (cfg.trials < 1) throw PreconditionError("trials must be at least 1");
  if (!(cfg.tol > 0.0)) throw PreconditionError("tol must be positive");
  if (!(cfg.sample_radius > 0.0)) throw PreconditionError("sample_radius must be positive");

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers =
      static_cast<unsigned>(std::min<std::size_t>(hw, (cfg.trials + 255) / 256));
  std::vector<Tally> tallies(workers);

  auto work = [&](unsigned w) {
    Tally& tally = tallies[w];
    for (std::size_t trial = w; trial < cfg.trials; trial += workers) {
      try {
        Rng rng = trial_rng(cfg.seed, trial);
        TrialOutcome outcome = fn(trial, rng);
        if (outcome.status == TrialStatus::violation) {
          ++tally.violations;
          if (!tally.first) {
            outcome.witness.trial = trial;
            tally.first = std::move(outcome.witness);
          }
        } else if (outcome.status == TrialStatus::inconclusive) {
          ++tally.inconclusive;
        }
      } catch (...) {
        tally.error = std::current_exception();
        tally.error_trial = trial;
        return;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  Report report;
  report.suite = std::string(suite);
  report.instance_digest = instance_digest(ospace);
  report.trials_run = cfg.trials;
  report.seed = cfg.seed;
  report.tol = cfg.tol;
  const Tally* failed = nullptr;
  for (const Tally& tally : tallies) {
    if (tally.error && (!failed || tally.error_trial < failed->error_trial)) failed = &tally;
    report.violations += tally.violations;
    report.inconclusive += tally.inconclusive;
    if (tally.first && (!report.first_witness || tally.first->trial < report.first_witness->trial)) {
      report.first_witness = tally.first;
    }
  }
  if (failed) std::rethrow_exception(failed->error);

  if (report.violations > 0) {
    report.verdict = Verdict::fail;
  } else if (report.inconclusive > 0) {
    report.verdict = Verdict::inconclusive;
  } else {
    report.verdict = Verdict::pass;
  }
  return report;
}

Vector random_box(Rng& rng, int dim, double radius) {
  std::uniform_real_distribution<double> coord(-radius, radius);
  Vector x(dim);
  for (int i = 0; i < dim; ++i) x[i] = coord(rng);
  return x;
}

Vector random_cone_coordinates(Rng& rng, int dim, double radius) {
  std::uniform_real_distribution<double> coord(0.0, radius);
  Vector c(dim);
  for (int i = 0; i < dim; ++i) c[i] = coord(rng);
  return c;
}

double coordinate_size(const OrderBasis& order, const Vector& x) {
  return order.coordinates(x).cwiseAbs().maxCoeff();
}

TrialOutcome violation(std::map<std::string, Vector> inputs, double defect) {
  return {TrialStatus::violation, Witness{std::move(inputs), defect, 0}};
}

TrialOutcome inconclusive() { return {TrialStatus::inconclusive, {}}; }

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(round_significant(v[i]));
  return out;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

json report_json(const Report& report) {
  json doc;
  doc["suite"] = report.suite;
  doc["instance_digest"] = report.instance_digest;
  doc["trials_run"] = report.trials_run;
  doc["violations"] = report.violations;
  doc["inconclusive"] = report.inconclusive;
  doc["seed"] = report.seed;
  doc["tol"] = round_significant(report.tol);
  doc["verdict"] = to_string(report.verdict);
  if (report.first_witness) {
    json inputs = json::object();
    for (const auto& [name, value] : report.first_witness->inputs) inputs[name] = vector_json(value);
    doc["first_witness"] = {{"inputs", inputs},
                            {"defect", round_significant(report.first_witness->defect)},
                            {"trial", report.first_witness->trial}};
  } else {
    doc["first_witness"] = nullptr;
  }
  return doc;
}

}  // namespace

std::string to_json(const Report& report) { return report_json(report).dump(2); }

Report report_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    Report report;
    report.suite = doc.at("suite").get<std::string>();
    report.instance_digest = doc.at("instance_digest").get<std::string>();
    report.trials_run = doc.at("trials_run").get<std::size_t>();
    report.violations = doc.at("violations").get<std::size_t>();
    report.inconclusive = doc.value("inconclusive", std::size_t{0});
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.tol = doc.at("tol").get<double>();
    const auto verdict = doc.at("verdict").get<std::string>();
    if (verdict == "pass") {
      report.verdict = Verdict::pass;
    } else if (verdict == "fail") {
      report.verdict = Verdict::fail;
    } else if (verdict == "inconclusive") {
      report.verdict = Verdict::inconclusive;
    } else {
      throw InputError("report field 'verdict': unknown value '" + verdict + "'");
    }
    const json& witness = doc.at("first_witness");
    if (!witness.is_null()) {
      Witness w;
      for (const auto& [name, value] : witness.at("inputs").items()) {
        w.inputs[name] = vector_from_json(value);
      }
      w.defect = witness.at("defect").get<double>();
      w.trial = witness.at("trial").get<std::size_t>();
      report.first_witness = std::move(w);
    }
    return report;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

Report canonical(const Report& report) {
  Report out = report;
  out.tol = round_significant(out.tol);
  if (out.first_witness) {
    out.first_witness->defect = round_significant(out.first_witness->defect);
    for (auto& [name, value] : out.first_witness->inputs) {
      value = value.unaryExpr([](double x) { return round_significant(x); }).eval();
    }
  }
  return out;
}

LatticeNormCheck is_lattice_norm_exact(const OrderedSpace& ospace) {
  const Matrix& inv = ospace.order().inverse();
  LatticeNormCheck check;
  check.order_gram = inv.transpose() * ospace.space().gram() * inv;
  const Matrix& m = check.order_gram;
  const int n = ospace.dim();

  const double largest_diagonal = m.diagonal().maxCoeff();
  double worst = -1.0;
  int wi = 0;
  int wj = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (std::abs(m(i, j)) > worst) {
        worst = std::abs(m(i, j));
        wi = i;
        wj = j;
      }
    }
  }
  worst = std::max(worst, 0.0);
  check.off_diagonal_ratio = largest_diagonal > 0.0 ? worst / largest_diagonal
                                                    : std::numeric_limits<double>::infinity();
  check.is_lattice = m.diagonal().minCoeff() > 0.0 && check.off_diagonal_ratio <= 1e-10;

  if (n >= 2) {
    LatticeNormWitness w;
    w.i = wi;
    w.j = wj;
    w.u = ospace.order().from_coordinates(Vector::Unit(n, wi) + Vector::Unit(n, wj));
    w.v = ospace.order().from_coordinates(Vector::Unit(n, wi) - Vector::Unit(n, wj));
    w.u_norm = ospace.norm(w.u);
    w.v_norm = ospace.norm(w.v);
    check.witness = std::move(w);
  }
  return check;
}

Report check_lattice_norm_sampled(const OrderedSpace& ospace, const TrialConfig& cfg) {
  const OrderBasis& order = ospace.order();
  const int n = ospace.dim();

  // Sign-flip pair: |x| = |y| with the larger-norm member as x.
  Vector flip_x = order.generator(0);
  Vector flip_y = -flip_x;
  if (const auto exact = is_lattice_norm_exact(ospace); exact.witness) {
    const bool u_larger = exact.witness->u_norm >= exact.witness->v_norm;
    flip_x = u_larger ? exact.witness->u : exact.witness->v;
    flip_y = u_larger ? exact.witness->v : exact.witness->u;
  }

  return run_trials(kSuiteLatticeNorm, ospace, cfg, [&](std::size_t trial, Rng& rng) {
    Vector x;
    Vector y;
    if (trial == 0) {
      x = flip_x;
      y = flip_y;
    } else {
      const Vector cy = random_box(rng, n, cfg.sample_radius);
      const Vector ratio = random_box(rng, n, 1.0);
      y = order.from_coordinates(cy);
      x = order.from_coordinates(ratio.cwiseProduct(cy));
    }
    const double slack = cfg.tol * (1.0 + coordinate_size(order, y));
    if (!leq(order, abs(order, x), abs(order, y), slack)) {
      throw InternalError("lattice-norm sampler produced |x| > |y|");
    }
    const double nx = ospace.norm(x);
    const double ny = ospace.norm(y);
    if (nx > ny + cfg.tol * (1.0 + ny)) return violation({{"x", x}, {"y", y}}, nx - ny);
    return TrialOutcome{};
  });
}

Report check_isotone(const OrderedSpace& ospace, ProjectionMethod projector,
                     const TrialConfig& cfg) {
  const OrderBasis& order = ospace.order();
  const int n = ospace.dim();
  return run_trials(kSuiteIsotone, ospace, cfg, [&](std::size_t, Rng& rng) {
    const Vector x = random_box(rng, n, cfg.sample_radius);
    const Vector y = x + order.from_coordinates(random_cone_coordinates(rng, n, cfg.sample_radius));
    try {
      const Vector px = project(ospace, x, projector, cfg.dykstra).point;
      const Vector py = project(ospace, y, projector, cfg.dykstra).point;
      const double excess = order_excess(order, px, py);
      const double slack =
          cfg.tol * (1.0 + std::max(coordinate_size(order, x), coordinate_size(order, y)));
      if (excess > slack) return violation({{"x", x}, {"y", y}}, excess);
    } catch (const NonConvergenceError&) {
      return inconclusive();
    }
    return TrialOutcome{};
  });
}

Report check_subadditive(const OrderedSpace& ospace, ProjectionMethod projector,
                         const TrialConfig& cfg) {
  const OrderBasis& order = ospace.order();
  const int n = ospace.dim();
  return run_trials(kSuiteSubadditive, ospace, cfg, [&](std::size_t, Rng& rng) {
    const Vector x = random_box(rng, n, cfg.sample_radius);
    const Vector y = random_box(rng, n, cfg.sample_radius);
    try {
      const Vector pxy = project(ospace, x + y, projector, cfg.dykstra).point;
      const Vector px = project(ospace, x, projector, cfg.dykstra).point;
      const Vector py = project(ospace, y, projector, cfg.dykstra).point;
      const double excess = order_excess(order, pxy, px + py);
      const double slack =
          cfg.tol * (1.0 + coordinate_size(order, x) + coordinate_size(order, y));
      if (excess > slack) return violation({{"x", x}, {"y", y}}, excess);
    } catch (const NonConvergenceError&) {
      return inconclusive();
    }
    return TrialOutcome{};
  });
}

Report check_positive_pairs(const OrderedSpace& ospace, const TrialConfig& cfg) {
  const OrderBasis& order = ospace.order();
  const int n = ospace.dim();

  int gi = 0;
  int gj = 0;
  double lowest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      const double value = ospace.inner(order.generator(i), order.generator(j));
      if (value < lowest) {
        lowest = value;
        gi = i;
        gj = j;
      }
    }
  }

  return run_trials(kSuitePositivePairs, ospace, cfg, [&](std::size_t trial, Rng& rng) {
    Vector x;
    Vector y;
    if (trial == 0) {
      x = order.generator(gi);
      y = order.generator(gj);
    } else {
      x = order.from_coordinates(random_cone_coordinates(rng, n, cfg.sample_radius));
      y = order.from_coordinates(random_cone_coordinates(rng, n, cfg.sample_radius));
    }
    const double value = ospace.inner(x, y);
    if (value < -cfg.tol * (1.0 + ospace.norm(x) * ospace.norm(y))) {
      return violation({{"x", x}, {"y", y}}, value);
    }
    return TrialOutcome{};
  });
}

Report check_identities(const OrderedSpace& ospace, const TrialConfig& cfg) {
  const OrderBasis& order = ospace.order();
  const int n = ospace.dim();
  return run_trials(kSuiteIdentities, ospace, cfg, [&](std::size_t, Rng& rng) {
    const Vector x = random_box(rng, n, cfg.sample_radius);
    const double size = ospace.norm(x);
    const double orth = ospace.inner(pos_part(order, x), neg_part(order, x));
    if (std::abs(orth) > cfg.tol * (1.0 + size * size)) return violation({{"x", x}}, orth);
    const double pythagoras = ospace.norm(abs(order, x)) - size;
    if (std::abs(pythagoras) > cfg.tol * (1.0 + size)) return violation({{"x", x}}, pythagoras);
    return TrialOutcome{};
  });
}

Report check_moreau(const OrderedSpace& ospace, const TrialConfig& cfg) {
  const int n = ospace.dim();
  const Matrix& generators = ospace.unit_generators();
  return run_trials(kSuiteMoreau, ospace, cfg, [&](std::size_t, Rng& rng) {
    const Vector x = random_box(rng, n, cfg.sample_radius);
    ProjectionResult projection;
    try {
      projection = project_dykstra(ospace, x, cfg.dykstra);
    } catch (const NonConvergenceError&) {
      return inconclusive();
    }
    const Vector& p = projection.point;
    const Vector q = x - p;
    const double size = ospace.norm(x);
    const double orth = ospace.inner(p, q);
    if (std::abs(orth) > cfg.tol * (1.0 + size * size)) return violation({{"x", x}}, orth);
    for (int i = 0; i < n; ++i) {
      const double angle = ospace.inner(q, generators.col(i));
      if (angle > cfg.tol * (1.0 + size)) return violation({{"x", x}}, angle);
    }
    return TrialOutcome{};
  });
}

Report check_oracle_agreement(const OrderedSpace& ospace, const TrialConfig& cfg) {
  const int n = ospace.dim();
  return run_trials(kSuiteOracleAgreement, ospace, cfg, [&](std::size_t, Rng& rng) {
    const Vector x = random_box(rng, n, cfg.sample_radius);
    try {
      const Vector closed = project_closed_form(ospace, x).point;
      const Vector iterative = project_dykstra(ospace, x, cfg.dykstra).point;
      const double gap = ospace.norm(closed - iterative);
      if (gap > cfg.tol * (1.0 + ospace.norm(x))) return violation({{"x", x}}, gap);
    } catch (const NonConvergenceError&) {
      return inconclusive();
    }
    return TrialOutcome{};
  });
}

Report check_positive_part_certificate(const OrderedSpace& ospace, const TrialConfig& cfg) {
  const int n = ospace.dim();
  return run_trials(kSuiteCertificate, ospace, cfg, [&](std::size_t, Rng& rng) {
    const Vector x = random_box(rng, n, cfg.sample_radius);
    const Vector p = pos_part(ospace.order(), x);
    const ProjectionCertificate cert = certificate_check(ospace, x, p, cfg.tol);
    if (!cert.verdict) {
      const bool orthogonality_failed =
          std::abs(cert.orthogonality_defect) > cert.defect_limit;
      return violation({{"x", x}},
                       orthogonality_failed ? cert.orthogonality_defect
                                            : cert.worst_generator_angle);
    }
    return TrialOutcome{};
  });
}

Report run_suite(std::string_view suite, const OrderedSpace& ospace, const TrialConfig& cfg,
                 ProjectionMethod projector) {
  if (suite == kSuiteLatticeNorm) return check_lattice_norm_sampled(ospace, cfg);
  if (suite == kSuiteIsotone) return check_isotone(ospace, projector, cfg);
  if (suite == kSuiteSubadditive) return check_subadditive(ospace, projector, cfg);
  if (suite == kSuitePositivePairs) return check_positive_pairs(ospace, cfg);
  if (suite == kSuiteIdentities) return check_identities(ospace, cfg);
  if (suite == kSuiteMoreau) return check_moreau(ospace, cfg);
  if (suite == kSuiteOracleAgreement) return check_oracle_agreement(ospace, cfg);
  if (suite == kSuiteCertificate) return check_positive_part_certificate(ospace, cfg);
  throw InputError("unknown suite '" + std::string(suite) + "'");
}

const Report* Classification::find(std::string_view suite) const {
  for (const Report& r : reports) {
    if (r.suite == suite) return &r;
  }
  return nullptr;
}

Classification classify_instance(const OrderedSpace& ospace, const TrialConfig& cfg) {
  Classification result;
  result.exact = is_lattice_norm_exact(ospace);
  result.reports.push_back(check_lattice_norm_sampled(ospace, cfg));
  result.reports.push_back(check_isotone(ospace, ProjectionMethod::dykstra, cfg));
  result.reports.push_back(check_subadditive(ospace, ProjectionMethod::dykstra, cfg));
  result.reports.push_back(check_positive_pairs(ospace, cfg));
  result.reports.push_back(check_oracle_agreement(ospace, cfg));

  const auto verdict_of = [&](std::string_view suite) { return result.find(suite)->verdict; };
  bool consistent = false;
  if (result.exact.is_lattice) {
    consistent = std::all_of(result.reports.begin(), result.reports.end(),
                             [](const Report& r) { return r.verdict == Verdict::pass; });
  } else {
    consistent = verdict_of(kSuiteLatticeNorm) == Verdict::fail ||
                 verdict_of(kSuiteOracleAgreement) == Verdict::fail;
  }
  result.outcome = consistent ? Consistency::consistent : Consistency::inconsistent;
  return result;
}

std::string to_json(const Classification& classification) {
  json doc;
  doc["suite"] = "classify";
  doc["outcome"] =
      classification.outcome == Consistency::consistent ? "CONSISTENT" : "INCONSISTENT";
  doc["side"] = classification.side();
  doc["lattice_exact"] = classification.exact.is_lattice;
  doc["off_diagonal_ratio"] = round_significant(classification.exact.off_diagonal_ratio);
  if (classification.exact.witness) {
    const LatticeNormWitness& w = *classification.exact.witness;
    doc["exact_witness"] = {{"u", vector_json(w.u)},
                            {"v", vector_json(w.v)},
                            {"u_norm", round_significant(w.u_norm)},
                            {"v_norm", round_significant(w.v_norm)}};
  } else {
    doc["exact_witness"] = nullptr;
  }
  json reports = json::array();
  for (const Report& r : classification.reports) reports.push_back(report_json(r));
  doc["reports"] = std::move(reports);
  return doc.dump(2);
}

}  // namespace latproj
