#pragma once

namespace cqs
{

struct PhaseDerivatives
{
  double W = 0.0;
  double W1 = 0.0;   ///< dW/dr1
  double W2 = 0.0;   ///< dW/dr2
  double W11 = 0.0;  ///< d2W/dr1^2
  double W22 = 0.0;  ///< d2W/dr2^2
};

/// Interelectronic Coulomb phase
///   W(r1, r2) = -(rho / sqrt(2E)) ln(2 sqrt(2E)(1 + rho)) / (1 + r>)
/// with analytic partial derivatives on either side of the diagonal. The
/// derivatives jump across r1 = r2; on the diagonal itself r1 is taken as r>.
/// A disabled field is identically zero (used for the W = 0 degeneracy check).
class PhaseField
{
public:
  explicit PhaseField(double E, bool enabled = true);

  bool enabled() const { return enabled_; }
  double energy() const { return E_; }
  PhaseDerivatives at(double r1, double r2) const;

private:
  double E_;
  bool enabled_;
};

}  // namespace cqs
