#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latproj/cone_projection.hpp"

namespace latproj {

struct TrialConfig {
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  double sample_radius = 10.0;  ///< coordinates are drawn uniformly from [-r, r]
  DykstraOptions dykstra{};
};

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict verdict);

struct Witness {
  std::map<std::string, Vector> inputs;
  double defect = 0.0;
  std::size_t trial = 0;

  bool operator==(const Witness&) const = default;
};

/// Outcome of one seeded suite run on one instance.
///
/// verdict is fail iff violations > 0, and then first_witness holds the violating
/// trial with the smallest index. Trials whose projector did not converge are
/// counted as inconclusive; with no violations they make the verdict inconclusive.
struct Report {
  std::string suite;
  std::string instance_digest;
  std::size_t trials_run = 0;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  std::optional<Witness> first_witness;
  std::uint64_t seed = 0;
  double tol = 0.0;
  Verdict verdict = Verdict::pass;

  bool operator==(const Report&) const = default;
};

/// Sorted keys, numbers rounded to 12 significant digits.
std::string to_json(const Report& report);
Report report_from_json(std::string_view text);
/// The value to_json(report) re-parses to: every real rounded to 12 significant digits.
Report canonical(const Report& report);

/// Pair u = B^{-1}(e_i + e_j), v = B^{-1}(e_i - e_j). |u| = |v| in the order, so a
/// lattice norm must give ||u|| = ||v||.
struct LatticeNormWitness {
  int i = 0;
  int j = 0;
  Vector u;
  Vector v;
  double u_norm = 0.0;
  double v_norm = 0.0;
};

struct LatticeNormCheck {
  bool is_lattice = false;
  /// B^{-T} G B^{-1}: the Gram form in order coordinates.
  Matrix order_gram;
  /// Largest |off-diagonal| of order_gram relative to its largest diagonal entry.
  double off_diagonal_ratio = 0.0;
  /// The pair built on the largest off-diagonal entry (absent in dimension 1).
  std::optional<LatticeNormWitness> witness;
};

/// Exact criterion: the norm is a lattice norm iff B^{-T} G B^{-1} is diagonal
/// (off-diagonal entries within 1e-10 of the largest diagonal entry).
LatticeNormCheck is_lattice_norm_exact(const OrderedSpace& ospace);

/// Suite names accepted by run_suite.
inline constexpr std::string_view kSuiteLatticeNorm = "lattice-norm";
inline constexpr std::string_view kSuiteIsotone = "isotone";
inline constexpr std::string_view kSuiteSubadditive = "subadditive";
inline constexpr std::string_view kSuitePositivePairs = "positive-pairs";
inline constexpr std::string_view kSuiteIdentities = "identities";
inline constexpr std::string_view kSuiteMoreau = "moreau";
inline constexpr std::string_view kSuiteOracleAgreement = "oracle-agreement";
inline constexpr std::string_view kSuiteCertificate = "certificate";

/// Refutation search for |x| <= |y| with ||x|| > ||y|| + tol (1 + ||y||).
/// Trial 0 is the deterministic sign-flip pair of is_lattice_norm_exact.
Report check_lattice_norm_sampled(const OrderedSpace& ospace, const TrialConfig& cfg);

/// x <= y  =>  P(x) <= P(y), with y = x + (random cone element).
Report check_isotone(const OrderedSpace& ospace, ProjectionMethod projector,
                     const TrialConfig& cfg);

/// P(x + y) <= P(x) + P(y).
Report check_subadditive(const OrderedSpace& ospace, ProjectionMethod projector,
                         const TrialConfig& cfg);

/// <x, y> >= -tol (1 + ||x|| ||y||) for cone elements x, y.
/// Trial 0 is the generator pair with the most negative inner product.
Report check_positive_pairs(const OrderedSpace& ospace, const TrialConfig& cfg);

/// <x+, x-> = 0 and || |x| || = ||x||.
Report check_identities(const OrderedSpace& ospace, const TrialConfig& cfg);

/// Dykstra projection p and q = x - p: <p, q> = 0 and q in the polar cone.
Report check_moreau(const OrderedSpace& ospace, const TrialConfig& cfg);

/// ||closed_form(x) - dykstra(x)||_G <= tol (1 + ||x||).
Report check_oracle_agreement(const OrderedSpace& ospace, const TrialConfig& cfg);

/// certificate_check(x, pos_part(x), tol) holds.
Report check_positive_part_certificate(const OrderedSpace& ospace, const TrialConfig& cfg);

/// Dispatch by suite name (isotone/subadditive use `projector`). Throws InputError
/// for an unknown name or for "classify", which has its own entry point.
Report run_suite(std::string_view suite, const OrderedSpace& ospace, const TrialConfig& cfg,
                 ProjectionMethod projector = ProjectionMethod::dykstra);

enum class Consistency { consistent, inconsistent };

struct Classification {
  LatticeNormCheck exact;
  std::vector<Report> reports;
  Consistency outcome = Consistency::inconsistent;

  const char* side() const { return exact.is_lattice ? "lattice" : "non-lattice"; }
  const Report* find(std::string_view suite) const;
};

/// Cross-checks the exact lattice-norm criterion against the sampled suites.
///
/// Lattice side: consistent iff every suite passes (lattice-norm, isotone and
/// subadditive with Dykstra, positive-pairs, oracle-agreement). Non-lattice side:
/// consistent iff the sampled lattice-norm suite or oracle agreement fails.
Classification classify_instance(const OrderedSpace& ospace, const TrialConfig& cfg);

std::string to_json(const Classification& classification);

}  // namespace latproj
