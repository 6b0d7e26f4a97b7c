#include <doctest.h>

#include "latproj/errors.hpp"
#include "latproj/instance_file.hpp"
#include "latproj/property_harness.hpp"
#include "random_instances.hpp"

using namespace latproj;
using latproj::testing::Rng;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

OrderedSpace orthant(const Matrix& gram) {
  return OrderedSpace(InnerProductSpace(gram), OrderBasis::coordinate(static_cast<int>(gram.rows())));
}

TrialConfig config(std::size_t trials, std::uint64_t seed, double tol = 1e-7) {
  TrialConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.tol = tol;
  return cfg;
}

}  // namespace

TEST_CASE("exact criterion examples") {
  Vector w(3);
  w << 1, 2, 5;
  CHECK(is_lattice_norm_exact(orthant(w.asDiagonal().toDenseMatrix())).is_lattice);

  const LatticeNormCheck c = is_lattice_norm_exact(orthant(mat2(2, 1, 1, 2)));
  CHECK_FALSE(c.is_lattice);
  REQUIRE(c.witness.has_value());
  const auto& wit = *c.witness;
  // |u| = |v| = (1,1) but the norms differ: 6 vs 2.
  CHECK(wit.u_norm * wit.u_norm == doctest::Approx(6.0));
  CHECK(wit.v_norm * wit.v_norm == doctest::Approx(2.0));
  CHECK(std::abs(wit.u[0]) == 1.0);
  CHECK(std::abs(wit.v[1]) == 1.0);

  const LatticeNormCheck one = is_lattice_norm_exact(orthant(Matrix::Constant(1, 1, 3.0)));
  CHECK(one.is_lattice);
  CHECK_FALSE(one.witness.has_value());
}

TEST_CASE("exact criterion recovers D from G = B^T D B") {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    const int dim = 2 + t % 6;
    const Matrix b = testing::random_order_basis(rng, dim);
    const Vector d = testing::random_diagonal(rng, dim);
    const Matrix g = b.transpose() * d.asDiagonal() * b;
    const OrderedSpace os(InnerProductSpace(0.5 * (g + g.transpose())), OrderBasis(b));
    const LatticeNormCheck c = is_lattice_norm_exact(os);
    CHECK(c.is_lattice);
    CHECK((c.order_gram - Matrix(d.asDiagonal())).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("lattice-norm sampling") {
  Rng rng(3);
  CHECK(check_lattice_norm_sampled(testing::random_lattice_instance(rng, 4), config(2000, 1)).verdict ==
        Verdict::pass);
  CHECK(check_lattice_norm_sampled(orthant(Matrix::Constant(1, 1, 7.0)), config(2000, 1)).verdict ==
        Verdict::pass);

  const Report r = check_lattice_norm_sampled(orthant(mat2(2, 1, 1, 2)), config(100, 7));
  CHECK(r.verdict == Verdict::fail);
  REQUIRE(r.first_witness.has_value());
  CHECK(r.first_witness->trial < 100);
  CHECK(r.violations > 0);
}

TEST_CASE("isotone and subadditive") {
  Rng rng(12);
  const OrderedSpace lat = testing::random_lattice_instance(rng, 3);
  const auto e = orthant(Matrix::Identity(3, 3));
  for (auto method : {ProjectionMethod::closed_form, ProjectionMethod::dykstra}) {
    CHECK(check_isotone(lat, method, config(1000, 2)).verdict == Verdict::pass);
    CHECK(check_subadditive(lat, method, config(1000, 2)).verdict == Verdict::pass);
    CHECK(check_isotone(e, method, config(1000, 2)).verdict == Verdict::pass);
    CHECK(check_subadditive(e, method, config(1000, 2)).verdict == Verdict::pass);
  }
}

TEST_CASE("positive pairs") {
  const auto d = orthant(Vector::LinSpaced(2, 1, 2).asDiagonal().toDenseMatrix());
  CHECK(check_positive_pairs(d, config(1000, 5, 1e-9)).verdict == Verdict::pass);

  const auto obtuse = orthant(mat2(1, -0.9, -0.9, 1));
  const Report r = check_positive_pairs(obtuse, config(1000, 5));
  CHECK(r.verdict == Verdict::fail);
  REQUIRE(r.first_witness.has_value());
  CHECK(r.first_witness->trial == 0);
  CHECK(r.first_witness->defect == doctest::Approx(-0.9));
  CHECK(r.first_witness->inputs.at("x") == Vector::Unit(2, 0));
  CHECK(r.first_witness->inputs.at("y") == Vector::Unit(2, 1));
  CHECK_FALSE(is_lattice_norm_exact(obtuse).is_lattice);
}

TEST_CASE("identities, moreau, oracle agreement, certificate on lattice instances") {
  Rng rng(21);
  for (int t = 0; t < 5; ++t) {
    const OrderedSpace os = testing::random_lattice_instance(rng, 2 + t);
    const TrialConfig cfg = config(1000, 30 + t);
    CHECK(check_identities(os, cfg).verdict == Verdict::pass);
    CHECK(check_moreau(os, cfg).verdict == Verdict::pass);
    CHECK(check_oracle_agreement(os, cfg).verdict == Verdict::pass);
    CHECK(check_positive_part_certificate(os, cfg).verdict == Verdict::pass);
  }
}

TEST_CASE("non-lattice instances break the closed form") {
  const auto s = orthant(mat2(2, 1, 1, 2));
  CHECK(check_oracle_agreement(s, config(500, 1)).verdict == Verdict::fail);
  CHECK(check_positive_part_certificate(s, config(500, 1)).verdict == Verdict::fail);
  CHECK(check_identities(s, config(500, 1)).verdict == Verdict::fail);
  // Dykstra is valid for any Gram form.
  CHECK(check_moreau(s, config(500, 1)).verdict == Verdict::pass);
}

TEST_CASE("classification") {
  const Classification e = classify_instance(orthant(Matrix::Identity(2, 2)), config(2000, 7));
  CHECK(e.outcome == Consistency::consistent);
  CHECK(std::string(e.side()) == "lattice");

  const Classification g = classify_instance(orthant(mat2(2, 1, 1, 2)), config(2000, 7));
  CHECK(g.outcome == Consistency::consistent);
  CHECK(std::string(g.side()) == "non-lattice");
  REQUIRE(g.find(kSuiteOracleAgreement) != nullptr);
  CHECK(g.find(kSuiteOracleAgreement)->verdict == Verdict::fail);

  Rng rng(1);
  const Classification r = classify_instance(testing::random_lattice_instance(rng, 5), config(2000, 7));
  CHECK(r.outcome == Consistency::consistent);
  CHECK(std::string(r.side()) == "lattice");
  CHECK(to_json(r).find("\"outcome\"") != std::string::npos);
}

TEST_CASE("reports are deterministic and carry the instance digest") {
  Rng rng(2);
  const OrderedSpace os = testing::random_non_lattice_instance(rng, 4, false);
  for (std::string_view suite : {kSuiteLatticeNorm, kSuiteIsotone, kSuiteSubadditive, kSuitePositivePairs,
                                 kSuiteIdentities, kSuiteMoreau, kSuiteOracleAgreement, kSuiteCertificate}) {
    const Report a = run_suite(suite, os, config(500, 99));
    const Report b = run_suite(suite, os, config(500, 99));
    CHECK(a == b);
    CHECK(a.suite == suite);
    CHECK(a.trials_run == 500);
    CHECK(a.instance_digest == instance_digest(os));
    CHECK((a.verdict == Verdict::fail) == (a.violations > 0));
    CHECK(a.first_witness.has_value() == (a.violations > 0));
  }
  CHECK_THROWS_AS(run_suite("classify", os, config(10, 1)), InputError);
  CHECK_THROWS_AS(run_suite("nope", os, config(10, 1)), InputError);
}

TEST_CASE("report JSON round trip") {
  const Report r = check_lattice_norm_sampled(orthant(mat2(2, 1, 1, 2)), config(200, 7));
  REQUIRE(r.first_witness.has_value());
  const std::string text = to_json(r);
  CHECK(report_from_json(text) == canonical(r));
  CHECK(to_json(report_from_json(text)) == text);

  const Report pass = check_identities(orthant(Matrix::Identity(2, 2)), config(50, 1));
  CHECK(report_from_json(to_json(pass)) == canonical(pass));
  CHECK_THROWS_AS(report_from_json("{\"suite\": 3}"), InputError);
}
