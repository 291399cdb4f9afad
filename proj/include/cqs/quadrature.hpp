#pragma once

#include <vector>

namespace cqs
{

enum class QuadratureKind
{
  legendre,  ///< weight 1 on [-1, 1]
  laguerre,  ///< weight e^{-x} on [0, inf)
};

/// Gaussian quadrature rule. Nodes are strictly increasing.
///
/// For the Laguerre rule `scaled_weights[i] = weights[i] * exp(nodes[i])`, which
/// is what a caller needs when the integrand already carries its own
/// exponential decay. For the Legendre rule both weight vectors coincide.
struct QuadratureRule
{
  QuadratureKind kind;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  std::size_t size() const { return nodes.size(); }
};

/// Nodes from the Golub-Welsch eigenproblem, polished by Newton iteration on
/// the three-term recurrence; weights from the derivative formula.
QuadratureRule make_quadrature(QuadratureKind kind, int n);

/// Gauss-Legendre nodes/weights mapped to [a, b].
struct Panel
{
  std::vector<double> x;
  std::vector<double> w;
};
Panel gauss_legendre_panel(const QuadratureRule &rule, double a, double b);

}  // namespace cqs
