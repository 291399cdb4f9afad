#include "cqs/contour.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cqs/error.hpp"
#include "cqs/quadrature.hpp"

namespace cqs
{

namespace
{

constexpr double bound_pole_margin = 0.05;
constexpr int bound_pole_count = 60;

// Largest admissible arg jump between neighbouring momenta.
constexpr double branch_jump_limit = pi / 4.0;

cplx derivative(const ContourSpec &spec, double p)
{
  if (spec.kind == ContourKind::rotated_line)
  {
    return std::exp(I * spec.phi);
  }
  const double den = 1.0 + p * p;
  return 1.0 + I * spec.D * (p * p - spec.E * p - 1.0) / (den * den);
}

cplx point(const ContourSpec &spec, double p)
{
  return spec.kind == ContourKind::rotated_line ? c1_point(p, spec.E, spec.phi)
                                                : c2_point(p, spec.E, spec.D);
}

Sheet sheet_of(cplx k) { return k.imag() > 0.0 ? Sheet::physical : Sheet::unphysical; }

cplx continue_root(cplx candidate, cplx previous)
{
  const double jump_plus = std::abs(std::arg(candidate / previous));
  const double jump_minus = std::abs(std::arg(-candidate / previous));
  const cplx chosen = jump_plus <= jump_minus ? candidate : -candidate;
  if (std::min(jump_plus, jump_minus) > branch_jump_limit)
  {
    std::ostringstream msg;
    msg << "track_branches: square-root branch jumps by "
        << std::min(jump_plus, jump_minus) << " rad between neighbouring nodes; contour too coarse";
    throw DomainError(msg.str());
  }
  return chosen;
}

}  // namespace

void ContourSpec::validate() const
{
  if (!(E > 0.0))
  {
    throw ConfigError("contour: total energy E must be positive");
  }
  if (kind == ContourKind::rotated_line && !(phi > -pi && phi < 0.0))
  {
    throw ConfigError("contour: rotation angle phi must lie in (-pi, 0)");
  }
  if (kind == ContourKind::rational_deformation && !(D > 0.0))
  {
    throw ConfigError("contour: deformation D must be positive");
  }
  if (!(extent > E) || !(scale > 0.0))
  {
    throw ConfigError("contour: extent must exceed E and scale must be positive");
  }
  if (panels < 1 || nodes_per_panel < 1)
  {
    throw ConfigError("contour: panels and nodes_per_panel must be positive");
  }
}

std::string ContourSpec::canonical() const
{
  char buf[256];
  if (kind == ContourKind::rotated_line)
  {
    std::snprintf(buf, sizeof buf, "c1 E=%.17g phi=%.17g extent=%.17g scale=%.17g panels=%d nodes=%d",
                  E, phi, extent, scale, panels, nodes_per_panel);
  }
  else
  {
    std::snprintf(buf, sizeof buf, "c2 E=%.17g D=%.17g extent=%.17g scale=%.17g panels=%d nodes=%d",
                  E, D, extent, scale, panels, nodes_per_panel);
  }
  return buf;
}

cplx c1_point(double s, double E, double phi) { return 0.5 * E + s * std::exp(I * phi); }

cplx c2_point(double t, double E, double D) { return t + I * D * (0.5 * E - t) / (1.0 + t * t); }

std::vector<std::pair<BranchTrackedMomentum, BranchTrackedMomentum>>
track_branches(const std::vector<cplx> &energies, double E)
{
  const std::size_t n = energies.size();
  std::vector<std::pair<BranchTrackedMomentum, BranchTrackedMomentum>> out(n);
  if (n == 0)
  {
    return out;
  }
  cplx prev = std::sqrt(2.0 * energies.front());
  if (prev.imag() < 0.0)
  {
    prev = -prev;
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    const cplx k = i == 0 ? prev : continue_root(std::sqrt(2.0 * energies[i]), prev);
    out[i].first = {k, sheet_of(k)};
    prev = k;
  }
  prev = std::sqrt(2.0 * (E - energies.back()));
  if (prev.imag() < 0.0)
  {
    prev = -prev;
  }
  for (std::size_t j = n; j-- > 0;)
  {
    const cplx k = j == n - 1 ? prev : continue_root(std::sqrt(2.0 * (E - energies[j])), prev);
    out[j].second = {k, sheet_of(k)};
    prev = k;
  }
  return out;
}

std::vector<ContourNode> discretize(const ContourSpec &spec)
{
  spec.validate();
  const QuadratureRule rule = make_quadrature(QuadratureKind::legendre, spec.nodes_per_panel);
  const double xmax = std::asinh(spec.extent / spec.scale);
  const double width = 2.0 * xmax / spec.panels;

  std::vector<ContourNode> nodes;
  nodes.reserve(static_cast<std::size_t>(spec.panels) * rule.size());
  std::vector<cplx> energies;
  energies.reserve(nodes.capacity());
  for (int p = 0; p < spec.panels; ++p)
  {
    const Panel panel = gauss_legendre_panel(rule, -xmax + p * width, -xmax + (p + 1) * width);
    for (std::size_t i = 0; i < panel.x.size(); ++i)
    {
      ContourNode node;
      node.param = spec.scale * std::sinh(panel.x[i]);
      const double dparam = spec.scale * std::cosh(panel.x[i]) * panel.w[i];
      node.energy = point(spec, node.param);
      // The path runs from +inf to -inf, opposite to increasing param.
      node.weight = -dparam * derivative(spec, node.param) / (2.0 * pi * I);
      nodes.push_back(node);
      energies.push_back(node.energy);
    }
  }

  for (const cplx e : energies)
  {
    for (int n = 1; n <= bound_pole_count; ++n)
    {
      const double pole = -2.0 / (n * n);
      const double d = std::min(std::abs(e - pole), std::abs(e - (spec.E - pole)));
      if (d < bound_pole_margin)
      {
        std::ostringstream msg;
        msg << "discretize: contour node " << e << " passes within " << d
            << " of a bound-state pole; increase D or rotate further";
        throw DomainError(msg.str());
      }
    }
  }

  const auto roots = track_branches(energies, spec.E);
  for (std::size_t i = 0; i < nodes.size(); ++i)
  {
    nodes[i].k1 = roots[i].first;
    nodes[i].k2 = roots[i].second;
  }
  return nodes;
}

}  // namespace cqs
