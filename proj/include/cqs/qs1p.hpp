#pragma once

#include <vector>

#include "cqs/jmatrix.hpp"

namespace cqs
{

/// Smallest m >= 1 with -m < Re(l + i beta).
int parts_count(int l, cplx beta);

struct QsIntegralOptions
{
  int nodes_per_panel = 16;
  int min_panels = 4;
  int max_doublings = 6;
  double rel_tol = 1e-8;
  /// Integrations by parts beyond the minimum parts_count. Two extra steps make
  /// the remaining integrand C^2 at z = 1 so Gauss-Legendre converges quickly.
  int extra_parts = 2;
  /// Overrides the number of integrations by parts (total m, >= parts_count) when > 0.
  int force_parts = 0;
  /// qs_eval_all sums the Laguerre expansion directly when |omega| is below this;
  /// there the ladder would recover the series tail by a cancellation that loses
  /// a factor |omega|^{-n}.
  double direct_below_omega = 0.9;
  /// Relative size of the last kept tail term in the direct sum.
  double direct_tail_tol = 1e-17;
  /// When min(Im k, b) r exceeds this, Q_0 is below e^{-x} of its scale and the
  /// ladder starts from Q_0 = 0 instead of evaluating the integral.
  double negligible_exponent = 40.0;
  /// Q_0 is taken from the asymptotic series when b r exceeds negligible_exponent
  /// (the e^{-br} remainder is then invisible) and the series' smallest term is
  /// below this.
  double asymptotic_tol = 1e-15;
  /// Above this |k^2/2| the part of Q_0 local in r is tried by its 1/energy
  /// expansion (accepted when that settles below asymptotic_tol).
  double local_energy = 50.0;
};

/// Q_n^{l(+)}(k, r) from its integral representation over z in [0, 1],
///   -[(n+1)_{2l+1}]^{-1/2} (2br)^{l+1} (2/(b-ik)) int (1-z)^{l+i beta} (1-wz)^{l-i beta}
///   (1-z-wz)^n e^{(z(b+ik)-b) r} L_n^{2l+1}(2br (1-z)(1-wz)/(1-z-wz)) dz,
/// regularized at z = 1 by repeated integration by parts (boundary terms at z = 0
/// kept, derivatives by jet arithmetic). Throws ConvergenceError if panel doubling
/// does not settle to rel_tol.
cplx qs_eval_integral(const LaguerreBasisSpec &spec, int n, const Kinematics &kin, double r,
                      const QsIntegralOptions &opt = {});

/// sum_{m < M} psi_m(r) G_{mn}(k).
cplx qs_eval_expansion(const LaguerreBasisSpec &spec, int n, const Kinematics &kin, double r, int M);

/// -(2/k) S_n e^{i(kr - beta ln(2kr) - pi l/2 + sigma_l)}, written through the
/// analytic combination S e^{i sigma} = s~ e^{-pi beta/2} w^{-i beta} Gamma(l+1+i beta)
/// so it continues into complex k.
cplx qs_asymptotic(const LaguerreBasisSpec &spec, int n, const Kinematics &kin, double r);

/// Outgoing Coulomb asymptotic series
///   sum_j (-l + i beta)_j (l + 1 + i beta)_j / j! (2ikr)^{-j},
/// the factor turning qs_asymptotic into the full large-r form. Summed up to its
/// smallest term; `smallest` receives that term's modulus.
cplx coulomb_outgoing_series(int l, cplx beta, cplx kr, double *smallest = nullptr);

/// Q_0 .. Q_{count-1} at (k, r) from a single integral-representation evaluation of
/// Q_0 and the separable structure of the Green's matrix:
///   Q_n = -(2/k)[c~_n sum_{m<=n} psi_m s~_m - s~_n sum_{m<=n} psi_m c~_m] + (s~_n/s~_0) Q_0.
/// For |omega| < opt.direct_below_omega (Im k well above zero) the tail
/// sum_{m>n} psi_m c~_m converges geometrically and is summed directly instead.
std::vector<cplx> qs_eval_all(const LaguerreBasisSpec &spec, int count, const Kinematics &kin,
                              double r, const QsIntegralOptions &opt = {});

/// Same, with the coefficients already computed (count entries) and the basis
/// values psi_0..psi_{count-1}(r) supplied by the caller.
std::vector<cplx> qs_ladder(const JMatrixCoefficients &co, const Kinematics &kin,
                            const double *psi, cplx q0, int count);

}  // namespace cqs
