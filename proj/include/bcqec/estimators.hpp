#pragma once
#include <functional>
#include <vector>

#include "bcqec/noise.hpp"

namespace bcqec {

enum class Strategy { Naive, CoherenceMax, ChannelInversion, Iterative, MultiCopy, Hybrid };
const char* strategy_name(Strategy s);

struct EstimatorSpec {
  Strategy kind = Strategy::Naive;
  NoiseParams assumed_noise;   // required by ChannelInversion / Hybrid
  bool has_noise = false;
  int copies = 1;
  double damping_alpha = 0.5;  // iterative
  int max_iter = 20;
  double conv_tol = 1e-4;
  double hybrid_w = 0.5;
  double eps0 = 0.05;          // per-copy fluctuation scale (multi-copy model)
};

// Project only when needed; valid inputs pass through unchanged.
DensityMatrix maybe_project(const Mat& x, double tol = 1e-10);

DensityMatrix estimate_naive(const DensityMatrix& noisy);

// Diagonal preserved; off-diagonals restored to sqrt(p_i p_j) e^{i phi_ij},
// phi_ij = arg(rho_ij) when |rho_ij| > rel_tol * max|rho|, else 0.
DensityMatrix estimate_coherence_max(const DensityMatrix& noisy,
                                     double rel_tol = 1e-12);

// Exact channel inverses (outputs may be non-PSD; Mat-level).
Mat invert_dephasing(const Mat& m, double gamma, const EnergySpectrum& spec);
Mat invert_depolarizing(const Mat& m, double p);
// Coherences divided by (1-g)^((j+k)/2); populations by back-substitution from
// the top level (clamped to [0,1] as a numerical guard). Ill-conditioned for
// large d * gamma: amplification grows as (1-g)^(-k).
Mat invert_amplitude_damping(const Mat& m, double gamma_ad);

// Reverse application order: AD^-1, then depol^-1, then dephasing^-1; PSD
// projection whenever the result leaves the cone. bias_flag is set when
// p >= 1 - 1/d forces projection.
DensityMatrix estimate_channel_inversion(const DensityMatrix& noisy,
                                         const NoiseParams& assumed,
                                         const EnergySpectrum& spec,
                                         bool* bias_flag = nullptr);

using RecoverFn = std::function<DensityMatrix(const DensityMatrix& est)>;

// Damped refinement from the coherence-max start; stops on estimation-fidelity
// change < conv_tol (fidelity to the previous iterate: the target is blind).
DensityMatrix estimate_iterative(const DensityMatrix& noisy,
                                 const RecoverFn& recover, double alpha = 0.5,
                                 int max_iter = 20, double conv_tol = 1e-4,
                                 bool* converged = nullptr, int* iters = nullptr);

// Element-wise average, then coherence maximization.
DensityMatrix estimate_multicopy(const std::vector<DensityMatrix>& copies,
                                 double rel_tol = 1e-12);

// w * inversion + (1-w) * coherence max, projected if needed.
DensityMatrix estimate_hybrid(const DensityMatrix& noisy,
                              const NoiseParams& assumed, double w,
                              const EnergySpectrum& spec);

// Per-copy statistical fluctuation model: Hermitian traceless Gaussian
// perturbation of trace-norm scale eps0, PSD-projected.
DensityMatrix perturb_copy(const DensityMatrix& rho, double eps0, Rng& rng);

}  // namespace bcqec
