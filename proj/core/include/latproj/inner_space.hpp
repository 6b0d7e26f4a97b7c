#pragma once

#include <optional>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace latproj {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Largest accepted condition estimate for Gram forms and order bases.
inline constexpr double kMaxConditionEstimate = 1e8;

/// Entries of G and G^T may differ by at most this much (relative to max |G_ij|, floor 1).
inline constexpr double kSymmetryTolerance = 1e-12;

/// Dense storage cap. Everything here is O(dim^2) memory and O(dim^3) setup.
inline constexpr int kMaxDimension = 1024;

enum class SpaceDefect { none, non_finite, asymmetric, indefinite, ill_conditioned };

const char* to_string(SpaceDefect defect);

struct SpaceValidation {
  SpaceDefect defect = SpaceDefect::none;
  std::string message;
  /// Largest |G_ij - G_ji| / 2 removed by symmetrization.
  double symmetrization_change = 0.0;
  /// Condition number of the Jacobi-scaled form D^{-1/2} G D^{-1/2}, D = diag(G).
  double condition_estimate = 0.0;
  /// For `indefinite`: a vector v with <v,v> <= 0, scaled to max |v_i| = 1.
  std::optional<Vector> witness;
  double witness_form = 0.0;

  bool accepted() const { return defect == SpaceDefect::none; }
};

/// Checks that `gram` defines an inner product on R^dim.
///
/// Throws DimensionError when `gram` is not dim x dim (or dim is out of range).
/// Every other failure is reported in the returned value, never thrown.
SpaceValidation validate_space(int dim, const Matrix& gram);

/// A finite-dimensional real inner-product space <x,y> = x^T G y.
///
/// The stored Gram matrix is the symmetrized input. Construction runs
/// validate_space and throws on rejection: ConditioningError for an
/// ill-conditioned form, InputError for everything else.
class InnerProductSpace {
 public:
  explicit InnerProductSpace(const Matrix& gram);

  static InnerProductSpace euclidean(int dim);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Matrix& gram() const { return gram_; }
  double condition_estimate() const { return condition_; }

  /// x^T G y, evaluated so that inner(x, y) == inner(y, x) bit for bit.
  double inner(const Vector& x, const Vector& y) const;
  double norm(const Vector& x) const;

  /// The Riesz representer of the functional v -> f^T v, i.e. G^{-1} f.
  Vector representer(const Vector& functional) const;

  /// Throws DimensionError unless x has length dim().
  void check_dimension(const Vector& x) const;

 private:
  Matrix gram_;
  Eigen::LLT<Matrix> factor_;
  double condition_ = 1.0;
};

inline double inner(const InnerProductSpace& space, const Vector& x, const Vector& y) {
  return space.inner(x, y);
}

inline double norm(const InnerProductSpace& space, const Vector& x) { return space.norm(x); }

/// Throws InputError if any entry is NaN or infinite.
void require_finite(const Vector& x, const char* what);

}  // namespace latproj
