#include "cqs/phase.hpp"

#include <cmath>

#include "cqs/error.hpp"

namespace cqs
{

PhaseField::PhaseField(double E, bool enabled) : E_(E), enabled_(enabled)
{
  if (!(E > 0.0))
  {
    throw DomainError("PhaseField: energy must be positive");
  }
}

PhaseDerivatives PhaseField::at(double r1, double r2) const
{
  PhaseDerivatives d;
  const double rho = std::hypot(r1, r2);
  if (!enabled_ || rho == 0.0)
  {
    return d;
  }
  const double s = std::sqrt(2.0 * E_);
  // W = g(rho) h(r>), g = -rho L / s, L = ln(2 s (1 + rho)), h = 1 / (1 + r>).
  const double L = std::log(2.0 * s * (1.0 + rho));
  const double g = -rho * L / s;
  const double g1 = -(L + rho / (1.0 + rho)) / s;
  const double g2 = -(1.0 / (1.0 + rho) + 1.0 / ((1.0 + rho) * (1.0 + rho))) / s;

  const bool first_larger = r1 >= r2;
  const double ra = first_larger ? r1 : r2;  // r>
  const double rb = first_larger ? r2 : r1;
  const double h = 1.0 / (1.0 + ra);
  const double h1 = -h * h;
  const double h2 = 2.0 * h * h * h;
  const double ca = ra / rho;
  const double cb = rb / rho;
  const double rho3 = rho * rho * rho;

  const double wa = g1 * ca * h + g * h1;
  const double wb = g1 * cb * h;
  const double waa = g2 * ca * ca * h + g1 * (rb * rb / rho3) * h + 2.0 * g1 * ca * h1 + g * h2;
  const double wbb = g2 * cb * cb * h + g1 * (ra * ra / rho3) * h;

  d.W = g * h;
  d.W1 = first_larger ? wa : wb;
  d.W2 = first_larger ? wb : wa;
  d.W11 = first_larger ? waa : wbb;
  d.W22 = first_larger ? wbb : waa;
  return d;
}

}  // namespace cqs
