#pragma once

#include <vector>

#include "latproj/inner_space.hpp"

namespace latproj {

/// An invertible matrix B defining the simplicial cone K = {x : Bx >= 0}.
///
/// B x are the "order coordinates" of x. The order x <= y means B(y - x) >= 0,
/// and every lattice operation is the componentwise one in order coordinates.
/// B^{-1} is computed once by LU with partial pivoting.
class OrderBasis {
 public:
  explicit OrderBasis(const Matrix& basis);

  static OrderBasis coordinate(int dim);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& inverse() const { return inverse_; }
  /// ||B||_1 ||B^{-1}||_1
  double condition_estimate() const { return condition_; }
  bool is_coordinate() const { return coordinate_; }

  Vector coordinates(const Vector& x) const;
  Vector from_coordinates(const Vector& c) const;

  /// The i-th extreme ray of K, column i of B^{-1}.
  Vector generator(int i) const { return inverse_.col(i); }

  void check_dimension(const Vector& x) const;

 private:
  Matrix basis_;
  Matrix inverse_;
  double condition_ = 1.0;
  bool coordinate_ = false;
};

/// An inner-product space together with a lattice order on the same coordinates.
///
/// Also caches the data the projection routines need: the G-representers
/// n_i = G^{-1} b_i of the facet functionals v -> (Bv)_i and the generators.
class OrderedSpace {
 public:
  OrderedSpace(InnerProductSpace space, OrderBasis order);

  int dim() const { return space_.dim(); }
  const InnerProductSpace& space() const { return space_; }
  const OrderBasis& order() const { return order_; }

  double inner(const Vector& x, const Vector& y) const { return space_.inner(x, y); }
  double norm(const Vector& x) const { return space_.norm(x); }

  /// Column i is G^{-1} B^T e_i.
  const Matrix& facet_normals() const { return facet_normals_; }
  /// Entry i is <n_i, n_i>_G = b_i^T G^{-1} b_i.
  const Vector& facet_normal_sq() const { return facet_normal_sq_; }
  /// Column i is generator i scaled to unit G-norm.
  const Matrix& unit_generators() const { return unit_generators_; }

 private:
  InnerProductSpace space_;
  OrderBasis order_;
  Matrix facet_normals_;
  Vector facet_normal_sq_;
  Matrix unit_generators_;
};

/// x <= y, i.e. every coordinate of B(y - x) is >= -tol.
bool leq(const OrderBasis& order, const Vector& x, const Vector& y, double tol = 0.0);
/// 0 <= x.
bool in_cone(const OrderBasis& order, const Vector& x, double tol = 0.0);

Vector pos_part(const OrderBasis& order, const Vector& x);
Vector neg_part(const OrderBasis& order, const Vector& x);
Vector abs(const OrderBasis& order, const Vector& x);
Vector sup(const OrderBasis& order, const Vector& x, const Vector& y);
Vector inf(const OrderBasis& order, const Vector& x, const Vector& y);

/// |x| ^ |y| = 0 within tol (max-norm in order coordinates).
///
/// Also evaluates |x + y| = |x - y|, which is equivalent; throws InternalError
/// if the two criteria disagree by more than 10 tol plus rounding slack.
bool disjoint(const OrderBasis& order, const Vector& x, const Vector& y, double tol);

/// Largest coordinate violation max_i (B(x - y))_i, clamped below at 0. Zero iff x <= y.
double order_excess(const OrderBasis& order, const Vector& x, const Vector& y);

}  // namespace latproj
