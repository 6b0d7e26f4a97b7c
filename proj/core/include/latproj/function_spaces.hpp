#pragma once

#include <functional>

#include "latproj/lattice_order.hpp"

namespace latproj {

enum class QuadratureRule { composite_simpson, gauss_legendre };

const char* to_string(QuadratureRule rule);

/// Nodes and weights of a quadrature rule on [-1, 1].
class QuadratureGrid {
 public:
  /// Composite Simpson; an even `nodes` is rounded up to the next odd count.
  static QuadratureGrid composite_simpson(int nodes);
  static QuadratureGrid gauss_legendre(int nodes);
  static QuadratureGrid make(QuadratureRule rule, int nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const Vector& nodes() const { return nodes_; }
  const Vector& weights() const { return weights_; }
  QuadratureRule rule() const { return rule_; }

 private:
  QuadratureGrid(Vector nodes, Vector weights, QuadratureRule rule);

  Vector nodes_;
  Vector weights_;
  QuadratureRule rule_;
};

/// A continuous function represented by its values at the grid nodes.
struct SampledFunction {
  Vector values;
};

SampledFunction sample(const QuadratureGrid& grid, const std::function<double(double)>& f);

/// sum_i w_i f_i g_i, the quadrature form of the integral of f g over [-1, 1].
double grid_inner(const QuadratureGrid& grid, const SampledFunction& f, const SampledFunction& g);
double grid_norm(const QuadratureGrid& grid, const SampledFunction& f);

/// G = diag(weights) with the pointwise (coordinate) order. Dense, so the grid
/// may have at most kMaxDimension nodes; use grid_inner for larger grids.
OrderedSpace build_l2_space(const QuadratureGrid& grid);

/// x_n(r) = max(0, min(1, n r)) at the grid nodes.
SampledFunction cauchy_element(const QuadratureGrid& grid, int n);

/// Grid norm of x_m - x_n, for 1 <= n < m.
double cauchy_distance(const QuadratureGrid& grid, int n, int m);

/// (m - n)^2 / (3 m^3) + (m - n)^3 / (3 n m^3), the exact squared L2 distance.
double cauchy_distance_squared_exact(int n, int m);

/// max_i |x_n(r_i) - x_m(r_i)| over the grid nodes.
double cauchy_sup_gap(const QuadratureGrid& grid, int n, int m);

/// Point evaluations at t_k = (cos k + 1) / 2, k = 0..N-1, weighted by 2^-k.
class EvalNodeSpace {
 public:
  /// Throws PreconditionError for terms < 1 or terms > 1074 (2^-k underflows),
  /// InputError if two nodes coincide within 1e-12.
  explicit EvalNodeSpace(int terms);

  int terms() const { return static_cast<int>(nodes_.size()); }
  const Vector& nodes() const { return nodes_; }
  const Vector& weights() const { return weights_; }

  SampledFunction sample(const std::function<double(double)>& f) const;
  /// sum_k 2^-k f(t_k) g(t_k)
  double inner(const SampledFunction& f, const SampledFunction& g) const;

 private:
  Vector nodes_;
  Vector weights_;
};

/// G = diag(2^-k) over the N node values with the pointwise order.
OrderedSpace build_eval_space(int terms);

}  // namespace latproj
