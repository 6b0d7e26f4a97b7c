#include <doctest.h>

#include <cmath>
#include <random>

#include "latproj/errors.hpp"
#include "latproj/inner_space.hpp"
#include "random_instances.hpp"

using namespace latproj;
using latproj::testing::Rng;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Plain symmetric elimination without pivoting; returns the pivots.
std::vector<double> ldl_pivots(Matrix a) {
  std::vector<double> pivots;
  const auto n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    pivots.push_back(a(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return pivots;
}

Matrix random_spd(Rng& rng, int dim) {
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = testing::uniform(rng, -1.0, 1.0);
  Matrix g = a.transpose() * a + 0.5 * Matrix::Identity(dim, dim);
  return 0.5 * (g + g.transpose());
}

}  // namespace

TEST_CASE("validate_space accepts the identity") {
  const SpaceValidation v = validate_space(2, Matrix::Identity(2, 2));
  CHECK(v.accepted());
  CHECK(v.condition_estimate == doctest::Approx(1.0));
}

TEST_CASE("validate_space accepts [[2,1],[1,2]]; pivots 2 and 3/2") {
  const Matrix g = mat2(2, 1, 1, 2);
  CHECK(validate_space(2, g).accepted());
  const auto pivots = ldl_pivots(g);
  CHECK(pivots[0] == doctest::Approx(2.0));
  CHECK(pivots[1] == doctest::Approx(1.5));
  // The factor the space holds reproduces G.
  const InnerProductSpace s(g);
  CHECK(s.inner(vec({1, 0}), vec({1, 0})) == doctest::Approx(2.0));
}

TEST_CASE("indefinite form is rejected with a witness") {
  const SpaceValidation v = validate_space(2, mat2(1, 2, 2, 1));
  REQUIRE_FALSE(v.accepted());
  CHECK(v.defect == SpaceDefect::indefinite);
  REQUIRE(v.witness.has_value());
  CHECK((*v.witness)[0] == doctest::Approx(1.0));
  CHECK((*v.witness)[1] == doctest::Approx(-1.0));
  CHECK(v.witness_form == doctest::Approx(-2.0));
  // Direct quadratic form.
  const Vector w = *v.witness;
  CHECK(w.dot(mat2(1, 2, 2, 1) * w) <= 0.0);
  CHECK_THROWS_AS(InnerProductSpace(mat2(1, 2, 2, 1)), InputError);
}

TEST_CASE("other rejections") {
  CHECK(validate_space(2, mat2(1, 0.5, 0, 1)).defect == SpaceDefect::asymmetric);
  CHECK(validate_space(2, mat2(1, 0, 0, std::nan(""))).defect == SpaceDefect::non_finite);
  CHECK(validate_space(2, mat2(1, 0.999999999, 0.999999999, 1)).defect ==
        SpaceDefect::ill_conditioned);
  // Diagonal scaling alone is not ill-conditioning.
  CHECK(validate_space(2, mat2(1, 0, 0, 1e-10)).accepted());
  CHECK(validate_space(2, mat2(1, 0, 0, 0)).defect == SpaceDefect::indefinite);
  CHECK_THROWS_AS(validate_space(3, Matrix::Identity(2, 2)), DimensionError);
  CHECK_THROWS_AS(validate_space(2, Matrix::Identity(2, 3)), DimensionError);
  CHECK_THROWS_AS(InnerProductSpace(mat2(1, 0.999999999, 0.999999999, 1)), ConditioningError);
}

TEST_CASE("tiny asymmetry is symmetrized") {
  const SpaceValidation v = validate_space(2, mat2(2, 1 + 1e-14, 1, 2));
  CHECK(v.accepted());
  CHECK(v.symmetrization_change == doctest::Approx(0.5e-14).epsilon(1e-3));
}

TEST_CASE("inner and norm examples") {
  const auto e = InnerProductSpace::euclidean(2);
  CHECK(inner(e, vec({1, 2}), vec({3, -1})) == 1.0);
  CHECK(norm(e, vec({3, 4})) == 5.0);
  CHECK(norm(e, Vector::Zero(2)) == 0.0);

  const InnerProductSpace d(Vector(vec({1, 2})).asDiagonal().toDenseMatrix());
  CHECK(inner(d, vec({1, 1}), vec({1, 1})) == 3.0);

  const InnerProductSpace g(mat2(2, 1, 1, 2));
  CHECK(inner(g, vec({1, 0}), vec({0, 1})) == 1.0);
  CHECK(norm(g, vec({1, -1})) == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm(g, Vector::Zero(2)) == 0.0);

  CHECK_THROWS_AS(g.inner(vec({1, 2, 3}), vec({1, 2})), DimensionError);
  CHECK_THROWS_AS(g.norm(vec({1})), DimensionError);
}

TEST_CASE("representer solves G r = f") {
  const InnerProductSpace g(mat2(2, 1, 1, 2));
  const Vector r = g.representer(vec({1, 0}));
  CHECK(r[0] == doctest::Approx(2.0 / 3.0));
  CHECK(r[1] == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("property: inner product axioms on random forms") {
  Rng rng(20261017);
  for (int t = 0; t < 200; ++t) {
    const int dim = 1 + t % 7;
    const InnerProductSpace s(random_spd(rng, dim));
    const Vector x = testing::random_vector(rng, dim, 5.0);
    const Vector y = testing::random_vector(rng, dim, 5.0);
    const double a = testing::uniform(rng, -3.0, 3.0);

    CHECK(s.inner(x, y) == s.inner(y, x));
    CHECK(s.inner(x, x) > 0.0);
    CHECK(std::abs(s.inner(x, y)) <= s.norm(x) * s.norm(y) * (1 + 1e-12));
    CHECK(s.norm(a * x) == doctest::Approx(std::abs(a) * s.norm(x)));
    const double lhs = std::pow(s.norm(x + y), 2) + std::pow(s.norm(x - y), 2);
    const double rhs = 2 * std::pow(s.norm(x), 2) + 2 * std::pow(s.norm(y), 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(s.norm(x + y) <= s.norm(x) + s.norm(y) + 1e-12);
  }
}
