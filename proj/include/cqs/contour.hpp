#pragma once

#include <string>
#include <vector>

#include "cqs/types.hpp"

namespace cqs
{

enum class ContourKind
{
  rotated_line,          ///< C1: E/2 + s e^{i phi}
  rational_deformation,  ///< C2: t + i D (E/2 - t) / (1 + t^2)
};

/// The path parameter (s for C1, t for C2) runs from +inf to -inf. It is sampled
/// through param = scale * sinh(x) with uniform Gauss-Legendre panels in x on
/// [-asinh(extent/scale), +asinh(extent/scale)], which resolves the region near
/// the real-axis crossing at unit density and reaches |param| = extent with a
/// few dozen panels.
struct ContourSpec
{
  ContourKind kind = ContourKind::rotated_line;
  double E = 0.735;
  double phi = -pi / 3.0;  ///< C1 rotation angle, -pi < phi < 0
  double D = 0.85;         ///< C2 deformation strength, D > 0
  double extent = 1e12;    ///< truncation |param| <= extent; the neglected tail is O(1/extent)
  double scale = 1.0;
  int panels = 256;
  int nodes_per_panel = 16;

  void validate() const;

  /// Canonical text form; two specs with the same text build the same nodes.
  std::string canonical() const;
};

enum class Sheet
{
  physical,
  unphysical,
};

struct BranchTrackedMomentum
{
  cplx value;
  Sheet sheet;
};

struct ContourNode
{
  double param;
  cplx energy;
  cplx weight;  ///< includes d(energy)/d(param), the traversal sign and 1/(2 pi i)
  BranchTrackedMomentum k1;  ///< sqrt(2 energy)
  BranchTrackedMomentum k2;  ///< sqrt(2 (E - energy))
};

cplx c1_point(double s, double E, double phi);
cplx c2_point(double t, double E, double D);

/// k1 = sqrt(2 e) anchored at the first node (param -> -inf end) with Im k1 > 0,
/// k2 = sqrt(2 (E - e)) anchored at the last node (param -> +inf end) with Im k2 > 0;
/// each continued along the sequence by choosing the sign nearest the neighbour.
/// Nodes must be ordered by increasing param.
std::vector<std::pair<BranchTrackedMomentum, BranchTrackedMomentum>>
track_branches(const std::vector<cplx> &energies, double E);

/// Nodes ordered by increasing param. Throws DomainError if a node comes within
/// 0.05 of a hydrogenic bound-state pole of either factor (Z = 2).
std::vector<ContourNode> discretize(const ContourSpec &spec);

}  // namespace cqs
