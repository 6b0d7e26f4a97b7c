#include "latproj/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include <gsl/gsl_integration.h>

#include "latproj/errors.hpp"

namespace latproj {

const char* to_string(QuadratureRule rule) {
  switch (rule) {
    case QuadratureRule::composite_simpson: return "composite_simpson";
    case QuadratureRule::gauss_legendre: return "gauss_legendre";
  }
  return "unknown";
}

QuadratureGrid::QuadratureGrid(Vector nodes, Vector weights, QuadratureRule rule)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), rule_(rule) {
  for (Eigen::Index i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) throw InternalError("quadrature nodes not increasing");
  }
  if (std::abs(weights_.sum() - 2.0) > 1e-9) throw InternalError("quadrature weights do not sum to 2");
}

QuadratureGrid QuadratureGrid::composite_simpson(int nodes) {
  if (nodes < 3) throw PreconditionError("composite Simpson needs at least 3 nodes");
  if (nodes % 2 == 0) ++nodes;
  const int panels = (nodes - 1) / 2;
  const double h = 1.0 / panels;  // node spacing: 2 / (nodes - 1)
  Vector r(nodes);
  Vector w(nodes);
  for (int i = 0; i < nodes; ++i) {
    // Symmetric about 0 and exact at the endpoints.
    r[i] = (2.0 * i - (nodes - 1)) / (nodes - 1);
    const double c = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[i] = c * h / 3.0;
  }
  return QuadratureGrid(std::move(r), std::move(w), QuadratureRule::composite_simpson);
}

QuadratureGrid QuadratureGrid::gauss_legendre(int nodes) {
  if (nodes < 1) throw PreconditionError("Gauss-Legendre needs at least 1 node");
  const std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(nodes)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw NumericalError("Gauss-Legendre table allocation failed");
  Vector r(nodes);
  Vector w(nodes);
  for (int i = 0; i < nodes; ++i) {
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &r[i], &w[i],
                                  table.get());
  }
  return QuadratureGrid(std::move(r), std::move(w), QuadratureRule::gauss_legendre);
}

QuadratureGrid QuadratureGrid::make(QuadratureRule rule, int nodes) {
  return rule == QuadratureRule::composite_simpson ? composite_simpson(nodes)
                                                   : gauss_legendre(nodes);
}

SampledFunction sample(const QuadratureGrid& grid, const std::function<double(double)>& f) {
  return {grid.nodes().unaryExpr(f)};
}

double grid_inner(const QuadratureGrid& grid, const SampledFunction& f, const SampledFunction& g) {
  if (f.values.size() != grid.size() || g.values.size() != grid.size()) {
    throw DimensionError("sampled function does not match the grid");
  }
  return (grid.weights().array() * f.values.array() * g.values.array()).sum();
}

double grid_norm(const QuadratureGrid& grid, const SampledFunction& f) {
  return std::sqrt(grid_inner(grid, f, f));
}

OrderedSpace build_l2_space(const QuadratureGrid& grid) {
  if (grid.size() > kMaxDimension) {
    throw DimensionError("grid with " + std::to_string(grid.size()) +
                         " nodes exceeds the dense dimension limit");
  }
  Matrix gram = grid.weights().asDiagonal();
  return OrderedSpace(InnerProductSpace(gram), OrderBasis::coordinate(grid.size()));
}

SampledFunction cauchy_element(const QuadratureGrid& grid, int n) {
  if (n < 1) throw PreconditionError("Cauchy sequence index must be at least 1");
  return sample(grid, [n](double r) { return std::max(0.0, std::min(1.0, n * r)); });
}

double cauchy_distance(const QuadratureGrid& grid, int n, int m) {
  if (n < 1 || m <= n) throw PreconditionError("cauchy_distance needs 1 <= n < m");
  const SampledFunction diff{cauchy_element(grid, m).values - cauchy_element(grid, n).values};
  return grid_norm(grid, diff);
}

double cauchy_distance_squared_exact(int n, int m) {
  const double dn = n;
  const double dm = m;
  const double gap = dm - dn;
  return gap * gap / (3.0 * dm * dm * dm) + gap * gap * gap / (3.0 * dn * dm * dm * dm);
}

double cauchy_sup_gap(const QuadratureGrid& grid, int n, int m) {
  return (cauchy_element(grid, m).values - cauchy_element(grid, n).values).cwiseAbs().maxCoeff();
}

EvalNodeSpace::EvalNodeSpace(int terms) {
  if (terms < 1 || terms > 1074) {
    throw PreconditionError("terms must be in [1, 1074], got " + std::to_string(terms));
  }
  nodes_.resize(terms);
  weights_.resize(terms);
  for (int k = 0; k < terms; ++k) {
    nodes_[k] = 0.5 * (std::cos(static_cast<double>(k)) + 1.0);
    weights_[k] = std::ldexp(1.0, -k);
  }
  std::vector<double> sorted(nodes_.begin(), nodes_.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] <= 1e-12) {
      throw InputError("evaluation nodes coincide within 1e-12");
    }
  }
}

SampledFunction EvalNodeSpace::sample(const std::function<double(double)>& f) const {
  return {nodes_.unaryExpr(f)};
}

double EvalNodeSpace::inner(const SampledFunction& f, const SampledFunction& g) const {
  if (f.values.size() != nodes_.size() || g.values.size() != nodes_.size()) {
    throw DimensionError("sampled function does not match the evaluation nodes");
  }
  return (weights_.array() * f.values.array() * g.values.array()).sum();
}

OrderedSpace build_eval_space(int terms) {
  const EvalNodeSpace nodes(terms);
  if (terms > kMaxDimension) {
    throw DimensionError("eval space with " + std::to_string(terms) +
                         " terms exceeds the dense dimension limit");
  }
  Matrix gram = nodes.weights().asDiagonal();
  return OrderedSpace(InnerProductSpace(gram), OrderBasis::coordinate(terms));
}

}  // namespace latproj
