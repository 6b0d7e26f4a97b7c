#include "latproj/inner_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "latproj/errors.hpp"

namespace latproj {

namespace {

// Scale so the largest-magnitude entry is 1 and the first significant entry is positive.
Vector normalize_witness(Vector v) {
  const double peak = v.cwiseAbs().maxCoeff();
  if (peak == 0.0) return v;
  v /= peak;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return v;
}

}  // namespace

const char* to_string(SpaceDefect defect) {
  switch (defect) {
    case SpaceDefect::none: return "none";
    case SpaceDefect::non_finite: return "non_finite";
    case SpaceDefect::asymmetric: return "asymmetric";
    case SpaceDefect::indefinite: return "indefinite";
    case SpaceDefect::ill_conditioned: return "ill_conditioned";
  }
  return "unknown";
}

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

SpaceValidation validate_space(int dim, const Matrix& gram) {
  if (dim < 1 || dim > kMaxDimension) {
    throw DimensionError("dimension " + std::to_string(dim) + " outside [1, " +
                         std::to_string(kMaxDimension) + "]");
  }
  if (gram.rows() != dim || gram.cols() != dim) {
    std::ostringstream msg;
    msg << "gram is " << gram.rows() << "x" << gram.cols() << ", expected " << dim << "x" << dim;
    throw DimensionError(msg.str());
  }

  SpaceValidation result;
  if (!gram.allFinite()) {
    result.defect = SpaceDefect::non_finite;
    result.message = "gram has non-finite entries";
    return result;
  }

  const Matrix sym = 0.5 * (gram + gram.transpose());
  result.symmetrization_change = (gram - sym).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  if (result.symmetrization_change > kSymmetryTolerance * scale) {
    result.defect = SpaceDefect::asymmetric;
    result.message = "gram is not symmetric (max |G_ij - G_ji| / 2 = " +
                     std::to_string(result.symmetrization_change) + ")";
    return result;
  }

  for (int i = 0; i < dim; ++i) {
    if (sym(i, i) <= 0.0) {
      result.defect = SpaceDefect::indefinite;
      result.message = "diagonal entry " + std::to_string(i) + " is not positive";
      result.witness = Vector::Unit(dim, i);
      result.witness_form = sym(i, i);
      return result;
    }
  }

  const Vector inv_sqrt_diag = sym.diagonal().cwiseSqrt().cwiseInverse();
  const Matrix scaled = inv_sqrt_diag.asDiagonal() * sym * inv_sqrt_diag.asDiagonal();
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(scaled);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo <= 0.0) {
    Vector v = inv_sqrt_diag.asDiagonal() * eig.eigenvectors().col(0);
    v = normalize_witness(std::move(v));
    result.defect = SpaceDefect::indefinite;
    result.message = "gram is not positive definite";
    result.witness_form = v.dot(sym * v);
    result.witness = std::move(v);
    return result;
  }

  result.condition_estimate = hi / lo;
  if (result.condition_estimate > kMaxConditionEstimate) {
    result.defect = SpaceDefect::ill_conditioned;
    result.message = "gram condition estimate " + std::to_string(result.condition_estimate) +
                     " exceeds limit";
    return result;
  }

  const Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    result.defect = SpaceDefect::indefinite;
    result.message = "Cholesky factorization failed";
    Vector v = normalize_witness(inv_sqrt_diag.asDiagonal() * eig.eigenvectors().col(0));
    result.witness_form = v.dot(sym * v);
    result.witness = std::move(v);
  }
  return result;
}

InnerProductSpace::InnerProductSpace(const Matrix& gram) {
  const auto dim = static_cast<int>(gram.rows());
  const SpaceValidation check = validate_space(dim, gram);
  if (check.defect == SpaceDefect::ill_conditioned) {
    throw ConditioningError(check.message, check.condition_estimate);
  }
  if (!check.accepted()) throw InputError(check.message);

  gram_ = 0.5 * (gram + gram.transpose());
  factor_.compute(gram_);
  condition_ = check.condition_estimate;
}

InnerProductSpace InnerProductSpace::euclidean(int dim) {
  return InnerProductSpace(Matrix::Identity(dim, dim));
}

void InnerProductSpace::check_dimension(const Vector& x) const {
  if (x.size() != gram_.rows()) {
    throw DimensionError("vector of length " + std::to_string(x.size()) +
                         " in a space of dimension " + std::to_string(gram_.rows()));
  }
}

double InnerProductSpace::inner(const Vector& x, const Vector& y) const {
  check_dimension(x);
  check_dimension(y);
  const Eigen::Index n = gram_.rows();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    sum += gram_(j, j) * (x[j] * y[j]);
    for (Eigen::Index i = 0; i < j; ++i) {
      // x_i y_j + x_j y_i is invariant under swapping x and y.
      sum += gram_(i, j) * (x[i] * y[j] + x[j] * y[i]);
    }
  }
  return sum;
}

double InnerProductSpace::norm(const Vector& x) const {
  return std::sqrt(std::max(0.0, inner(x, x)));
}

Vector InnerProductSpace::representer(const Vector& functional) const {
  check_dimension(functional);
  return factor_.solve(functional);
}

}  // namespace latproj
