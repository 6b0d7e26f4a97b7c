#include "latproj/cone_projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace latproj {

const char* to_string(ProjectionMethod method) {
  switch (method) {
    case ProjectionMethod::closed_form: return "closed_form";
    case ProjectionMethod::dykstra: return "dykstra";
  }
  return "unknown";
}

ProjectionMethod parse_method(const std::string& name) {
  if (name == "closed_form" || name == "closed-form") return ProjectionMethod::closed_form;
  if (name == "dykstra") return ProjectionMethod::dykstra;
  throw InputError("unknown projection method '" + name + "'");
}

NonConvergenceError::NonConvergenceError(Vector last_iterate, double residual, int iterations)
    : NumericalError([&] {
        std::ostringstream msg;
        msg << "Dykstra did not converge in " << iterations << " cycles (residual " << residual
            << ")";
        return msg.str();
      }()),
      last_iterate_(std::move(last_iterate)),
      residual_(residual),
      iterations_(iterations) {}

ProjectionResult project_closed_form(const OrderedSpace& ospace, const Vector& x) {
  ospace.space().check_dimension(x);
  require_finite(x, "vector");
  return {pos_part(ospace.order(), x), ProjectionMethod::closed_form, 0, 0.0};
}

ProjectionResult project_dykstra(const OrderedSpace& ospace, const Vector& x,
                                 const DykstraOptions& options) {
  if (!(options.tol > 0.0)) throw PreconditionError("Dykstra tolerance must be positive");
  if (options.max_iter < 1) throw PreconditionError("Dykstra max_iter must be at least 1");
  ospace.space().check_dimension(x);
  require_finite(x, "vector");

  const int n = ospace.dim();
  if (x.isZero(0.0)) return {Vector::Zero(n), ProjectionMethod::dykstra, 0, 0.0};

  const Matrix& basis = ospace.order().basis();
  const Matrix& normals = ospace.facet_normals();
  const Vector& normal_sq = ospace.facet_normal_sq();
  const bool coordinate = ospace.order().is_coordinate();

  // The Dykstra increment for facet i is always a nonpositive multiple t_i of n_i.
  Vector v = x;
  Vector multipliers = Vector::Zero(n);
  double residual = 0.0;
  for (int cycle = 1; cycle <= options.max_iter; ++cycle) {
    const Vector start = v;
    for (int i = 0; i < n; ++i) {
      const double level = coordinate ? v[i] : basis.row(i).dot(v);
      const double updated = std::min(0.0, level / normal_sq[i] + multipliers[i]);
      const double step = multipliers[i] - updated;
      if (step != 0.0) v += step * normals.col(i);
      multipliers[i] = updated;
    }
    residual = ospace.norm(v - start);
    if (residual <= options.tol) return {v, ProjectionMethod::dykstra, cycle, residual};
  }
  throw NonConvergenceError(v, residual, options.max_iter);
}

ProjectionResult project(const OrderedSpace& ospace, const Vector& x, ProjectionMethod method,
                         const DykstraOptions& options) {
  if (method == ProjectionMethod::closed_form) return project_closed_form(ospace, x);
  return project_dykstra(ospace, x, options);
}

ProjectionCertificate certificate_check(const OrderedSpace& ospace, const Vector& x,
                                        const Vector& p, double tol) {
  ospace.space().check_dimension(x);
  ospace.space().check_dimension(p);
  if (!(tol > 0.0)) throw PreconditionError("certificate tolerance must be positive");

  const OrderBasis& order = ospace.order();
  const double coordinate_scale = order.coordinates(x).cwiseAbs().maxCoeff();
  if (!in_cone(order, p, tol * (1.0 + coordinate_scale))) {
    throw PreconditionError("candidate projection is not in the cone");
  }

  const double size = ospace.norm(x);
  const Vector residual = x - p;
  ProjectionCertificate cert;
  cert.orthogonality_defect = ospace.inner(residual, p);
  const Matrix& generators = ospace.unit_generators();
  cert.worst_generator_angle = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < ospace.dim(); ++i) {
    const double angle = ospace.inner(residual, generators.col(i));
    if (angle > cert.worst_generator_angle) {
      cert.worst_generator_angle = angle;
      cert.worst_generator = i;
    }
  }
  cert.defect_limit = tol * (1.0 + size * size);
  cert.angle_limit = tol * (1.0 + size);
  cert.verdict = std::abs(cert.orthogonality_defect) <= cert.defect_limit &&
                 cert.worst_generator_angle <= cert.angle_limit;
  return cert;
}

MoreauDecomposition moreau_decompose(const OrderedSpace& ospace, const Vector& x, double tol,
                                     const DykstraOptions& options) {
  MoreauDecomposition parts;
  parts.projection = project_dykstra(ospace, x, options);
  parts.cone_part = parts.projection.point;
  parts.polar_part = x - parts.cone_part;
  parts.orthogonality = ospace.inner(parts.cone_part, parts.polar_part);
  const Matrix& generators = ospace.unit_generators();
  parts.worst_polar_angle = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < ospace.dim(); ++i) {
    parts.worst_polar_angle =
        std::max(parts.worst_polar_angle, ospace.inner(parts.polar_part, generators.col(i)));
  }

  const double size = ospace.norm(x);
  if (std::abs(parts.orthogonality) > tol * (1.0 + size * size)) {
    throw NumericalError("Moreau parts are not orthogonal: <p,q> = " +
                         std::to_string(parts.orthogonality));
  }
  if (parts.worst_polar_angle > tol * (1.0 + size)) {
    throw NumericalError("Moreau polar part leaves the polar cone: max <q,g> = " +
                         std::to_string(parts.worst_polar_angle));
  }
  return parts;
}

std::vector<Vector> polar_generators(const OrderedSpace& ospace) {
  std::vector<Vector> result;
  result.reserve(ospace.dim());
  for (int i = 0; i < ospace.dim(); ++i) result.emplace_back(-ospace.facet_normals().col(i));
  return result;
}

}  // namespace latproj
