#pragma once
#include "bcqec/estimators.hpp"

namespace bcqec {

// Linear extrapolation of each matrix element to lambda -> 0 over the scaled
// channel family E_lambda (all three noise parameters multiplied by lambda),
// then PSD projection. Default scale points {1, 2, 3}.
DensityMatrix zne_recover(const DensityMatrix& target, const NoiseParams& np,
                          const EnergySpectrum& spec,
                          const std::vector<double>& scale_points = {1, 2, 3});

// PEC is mathematically equivalent to channel inversion at this level.
DensityMatrix pec_recover(const DensityMatrix& noisy, const NoiseParams& np,
                          const EnergySpectrum& spec);

// rho^m / Tr rho^m, m = 2 default (two virtual copies).
DensityMatrix vd_recover(const DensityMatrix& noisy, int m = 2);

struct TomoBoundRow {
  double n;
  double tomographic;  // c d^2 / n
  double statistical;  // c' n^(-1/2)
};

// Reference curves anchored so both equal anchor_infidelity at n_range.front().
std::vector<TomoBoundRow> tomo_bound_curves(const std::vector<double>& n_range,
                                            int d, double anchor_infidelity);

// Linear-inversion tomography baseline: multi-copy average + PSD projection
// WITHOUT coherence maximization.
DensityMatrix linear_inversion_baseline(const std::vector<DensityMatrix>& copies);

}  // namespace bcqec
