#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqs/config.hpp"

namespace cqs
{

struct CriterionResult
{
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// max_{n, m < count} | int psi_n psi_m / r dr - delta_nm |, by a Gauss-Laguerre rule
/// in x = 2br that is exact for these integrands.
double orthogonality_error(const LaguerreBasisSpec &spec, int count);

/// int psi_m (E - h^l) psi_n dr by quadrature (kinetic term in the symmetric
/// first-derivative form), independent of the closed-form tridiagonal matrix.
Eigen::MatrixXcd hamiltonian_by_quadrature(const LaguerreBasisSpec &spec, cplx energy, int rows, int cols,
                                           double Z = 2.0);

/// max |T G - I| with T (N x N+1) from hamiltonian_by_quadrature and G ((N+1) x N).
double resolvent_identity_error(const LaguerreBasisSpec &spec, cplx k);

/// Five branch-tracked momenta k1 taken from a C2 contour near t = -3, -1, 0.2, 0.6, 2.
std::vector<cplx> sample_contour_momenta(double E, double D);

/// Runs the acceptance criteria. Expensive shared pieces (the tensor for the
/// largest basis, the solutions) are built on first use and reused.
class AcceptanceRun
{
public:
  /// `cache_dir` empty: build tensors in memory only.
  explicit AcceptanceRun(RunConfig config, std::string cache_dir = {});
  ~AcceptanceRun();

  CriterionResult orthogonality();
  CriterionResult resolvent_identity();
  CriterionResult representation_agreement();
  CriterionResult asymptotic_collapse();
  CriterionResult plain_amplitudes();
  CriterionResult modified_amplitudes();
  CriterionResult behavioral_contrast();
  CriterionResult effective_potential_decay();
  CriterionResult degeneracy();

  std::vector<CriterionResult> all();

private:
  struct State;
  std::unique_ptr<State> state_;
};

}  // namespace cqs
