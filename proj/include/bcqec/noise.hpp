#pragma once
#include "bcqec/core_linalg.hpp"

namespace bcqec {

// Channel order is fixed: dephasing -> depolarizing -> amplitude damping.
struct NoiseParams {
  double gamma_deph = 1.0;
  double p_depol = 0.15;
  double gamma_ad = 0.1;

  // ZNE hook: multiply all three parameters by lambda (p and gamma_ad clamped
  // below their invertibility limits).
  NoiseParams scaled(double lambda) const {
    NoiseParams s;
    s.gamma_deph = gamma_deph * lambda;
    s.p_depol = std::min(p_depol * lambda, 0.999);
    s.gamma_ad = std::min(gamma_ad * lambda, 0.999);
    return s;
  }
};

// rho_ij <- exp(-gamma |E_i - E_j|) rho_ij, diagonal untouched.
DensityMatrix apply_dephasing(const DensityMatrix& rho, double gamma,
                              const EnergySpectrum& spec);
// rho <- (1-p) rho + (p/d) I
DensityMatrix apply_depolarizing(const DensityMatrix& rho, double p);
// Single-step cascade |k> -> |k-1>: K_0 = diag((1-g)^(k/2)), jump probability
// 1-(1-g)^k from level k. Coherences scale as (1-g)^((j+k)/2); trace conserved.
DensityMatrix apply_amplitude_damping(const DensityMatrix& rho, double gamma_ad);

DensityMatrix apply_combined(const DensityMatrix& rho, const NoiseParams& np,
                             const EnergySpectrum& spec);

}  // namespace bcqec
