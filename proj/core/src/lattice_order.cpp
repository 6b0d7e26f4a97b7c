#include "latproj/lattice_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "latproj/errors.hpp"

namespace latproj {

namespace {

double one_norm(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

OrderBasis::OrderBasis(const Matrix& basis) : basis_(basis) {
  const auto n = basis.rows();
  if (n < 1 || n > kMaxDimension || basis.cols() != n) {
    throw DimensionError("order basis must be square with dimension in [1, " +
                         std::to_string(kMaxDimension) + "], got " + std::to_string(basis.rows()) +
                         "x" + std::to_string(basis.cols()));
  }
  if (!basis.allFinite()) throw InputError("order basis has non-finite entries");

  coordinate_ = basis.isIdentity(0.0);
  if (coordinate_) {
    inverse_ = basis;
    return;
  }

  const Eigen::PartialPivLU<Matrix> lu(basis);
  inverse_ = lu.inverse();
  if (!inverse_.allFinite() || lu.determinant() == 0.0) {
    throw InputError("order basis is singular");
  }
  condition_ = one_norm(basis_) * one_norm(inverse_);
  if (condition_ > kMaxConditionEstimate) {
    throw ConditioningError(
        "order basis condition estimate " + std::to_string(condition_) + " exceeds limit",
        condition_);
  }
  const double residual =
      (basis_ * inverse_ - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    throw ConditioningError("order basis inverse residual " + std::to_string(residual) +
                                " exceeds 1e-8",
                            condition_);
  }
}

OrderBasis OrderBasis::coordinate(int dim) { return OrderBasis(Matrix::Identity(dim, dim)); }

void OrderBasis::check_dimension(const Vector& x) const {
  if (x.size() != basis_.rows()) {
    throw DimensionError("vector of length " + std::to_string(x.size()) +
                         " for an order of dimension " + std::to_string(basis_.rows()));
  }
}

Vector OrderBasis::coordinates(const Vector& x) const {
  check_dimension(x);
  if (coordinate_) return x;
  return basis_ * x;
}

Vector OrderBasis::from_coordinates(const Vector& c) const {
  check_dimension(c);
  if (coordinate_) return c;
  return inverse_ * c;
}

OrderedSpace::OrderedSpace(InnerProductSpace space, OrderBasis order)
    : space_(std::move(space)), order_(std::move(order)) {
  if (space_.dim() != order_.dim()) {
    throw DimensionError("space dimension " + std::to_string(space_.dim()) +
                         " differs from order dimension " + std::to_string(order_.dim()));
  }
  const int n = dim();
  facet_normals_.resize(n, n);
  facet_normal_sq_.resize(n);
  unit_generators_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const Vector row = order_.basis().row(i).transpose();
    facet_normals_.col(i) = space_.representer(row);
    facet_normal_sq_[i] = row.dot(facet_normals_.col(i));
    const Vector g = order_.generator(i);
    unit_generators_.col(i) = g / space_.norm(g);
  }
}

bool leq(const OrderBasis& order, const Vector& x, const Vector& y, double tol) {
  order.check_dimension(x);
  order.check_dimension(y);
  const Vector c = order.coordinates(y - x);
  return (c.array() >= -tol).all();
}

bool in_cone(const OrderBasis& order, const Vector& x, double tol) {
  const Vector c = order.coordinates(x);
  return (c.array() >= -tol).all();
}

double order_excess(const OrderBasis& order, const Vector& x, const Vector& y) {
  order.check_dimension(x);
  order.check_dimension(y);
  const Vector c = order.coordinates(x - y);
  return std::max(0.0, c.maxCoeff());
}

Vector pos_part(const OrderBasis& order, const Vector& x) {
  return order.from_coordinates(order.coordinates(x).cwiseMax(0.0));
}

Vector neg_part(const OrderBasis& order, const Vector& x) { return pos_part(order, -x); }

Vector abs(const OrderBasis& order, const Vector& x) {
  return pos_part(order, x) + neg_part(order, x);
}

Vector sup(const OrderBasis& order, const Vector& x, const Vector& y) {
  order.check_dimension(x);
  return x + pos_part(order, y - x);
}

Vector inf(const OrderBasis& order, const Vector& x, const Vector& y) {
  return -sup(order, -x, -y);
}

bool disjoint(const OrderBasis& order, const Vector& x, const Vector& y, double tol) {
  const Vector meet = inf(order, abs(order, x), abs(order, y));
  const Vector gap = abs(order, x + y) - abs(order, x - y);
  const double meet_size = order.coordinates(meet).cwiseAbs().maxCoeff();
  // In order coordinates ||a+b| - |a-b|| = 2 min(|a|, |b|) componentwise.
  const double gap_size = 0.5 * order.coordinates(gap).cwiseAbs().maxCoeff();

  const double scale = 1.0 + order.coordinates(x).cwiseAbs().maxCoeff() +
                       order.coordinates(y).cwiseAbs().maxCoeff();
  const double rounding =
      64.0 * std::numeric_limits<double>::epsilon() * order.condition_estimate() * scale;
  if (std::abs(gap_size - meet_size) > 10.0 * tol + rounding) {
    throw InternalError("disjointness criteria disagree: |x|^|y| = " + std::to_string(meet_size) +
                        ", (|x+y| - |x-y|)/2 = " + std::to_string(gap_size));
  }
  return meet_size <= tol;
}

}  // namespace latproj
