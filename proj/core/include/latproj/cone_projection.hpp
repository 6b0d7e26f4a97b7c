#pragma once

#include <string>
#include <vector>

#include "latproj/errors.hpp"
#include "latproj/lattice_order.hpp"

namespace latproj {

enum class ProjectionMethod { closed_form, dykstra };

const char* to_string(ProjectionMethod method);
/// Accepts "closed_form"/"closed-form" and "dykstra"; throws InputError otherwise.
ProjectionMethod parse_method(const std::string& name);

struct ProjectionResult {
  Vector point;
  ProjectionMethod method = ProjectionMethod::closed_form;
  int iterations = 0;     ///< full Dykstra cycles; 0 for closed_form
  double residual = 0.0;  ///< G-norm change over the last cycle; 0 for closed_form
};

struct DykstraOptions {
  double tol = 1e-10;
  int max_iter = 100000;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(Vector last_iterate, double residual, int iterations);

  const Vector& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Vector last_iterate_;
  double residual_;
  int iterations_;
};

/// The positive part x+, which is the metric projection onto the cone exactly
/// when the norm is a lattice norm for this order. Always returns pos_part.
ProjectionResult project_closed_form(const OrderedSpace& ospace, const Vector& x);

/// Metric projection onto {v : Bv >= 0} in the G-inner product by Dykstra's
/// cyclic scheme over the dim facet halfspaces. Valid for any Gram form.
///
/// Stops once a full cycle moves the iterate by at most `tol` in G-norm and
/// throws NonConvergenceError after `max_iter` cycles.
ProjectionResult project_dykstra(const OrderedSpace& ospace, const Vector& x,
                                 const DykstraOptions& options = {});

ProjectionResult project(const OrderedSpace& ospace, const Vector& x, ProjectionMethod method,
                         const DykstraOptions& options = {});

/// Variational evidence that p is the projection of x:
///   <x - p, p> = 0  and  <x - p, g> <= 0 for every generator g of the cone.
///
/// Generators are taken at unit G-norm. Both conditions are homogeneous in x, so
/// the slack is scaled: |defect| <= tol (1 + ||x||^2), angle <= tol (1 + ||x||).
struct ProjectionCertificate {
  double orthogonality_defect = 0.0;
  double worst_generator_angle = 0.0;
  int worst_generator = 0;
  double defect_limit = 0.0;
  double angle_limit = 0.0;
  bool verdict = false;
};

/// Throws PreconditionError unless p lies in the cone within tol (1 + ||Bx||_inf).
ProjectionCertificate certificate_check(const OrderedSpace& ospace, const Vector& x,
                                        const Vector& p, double tol);

struct MoreauDecomposition {
  Vector cone_part;   ///< P_K(x)
  Vector polar_part;  ///< x - P_K(x), lies in the G-polar cone
  double orthogonality = 0.0;  ///< <cone_part, polar_part>_G
  double worst_polar_angle = 0.0;  ///< max_i <polar_part, g_i>_G over unit generators
  ProjectionResult projection;
};

/// x = P_K(x) + P_{K°}(x) with the two parts G-orthogonal.
///
/// Throws NumericalError when the computed parts violate orthogonality or polar
/// membership beyond tol (scaled as in certificate_check).
MoreauDecomposition moreau_decompose(const OrderedSpace& ospace, const Vector& x,
                                     double tol = 1e-8, const DykstraOptions& options = {});

/// The extreme rays -G^{-1} B^T e_i of the G-polar cone.
std::vector<Vector> polar_generators(const OrderedSpace& ospace);

}  // namespace latproj
