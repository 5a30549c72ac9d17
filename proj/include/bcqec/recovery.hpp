#pragma once
#include <string>
#include <vector>

#include "bcqec/estimators.hpp"

namespace bcqec {

struct RecoveryRecord {
  double f_noisy = 0, f_est = 0, f_rec = 0, f_oracle = 0;
  double trace_dist = 0;       // D(rec, target)
  double coherence_ratio = 0;  // C_l1(rec) / C_l1(target)
  bool mode_ok = true;
  bool full_rank_warn = false;
  std::string strategy;
  int dim = 0;
  std::string noise_label;
  std::uint64_t seed = 0;
};

// Pi(est) under mode inclusion; otherwise the estimate's off-diagonals whose
// gap lies outside the noisy lattice are zeroed before projection (shared-mode
// restriction).
DensityMatrix recover(const DensityMatrix& noisy, const DensityMatrix& est,
                      const EnergySpectrum& spec, bool* mode_ok = nullptr);

RecoveryRecord oracle_recover(const DensityMatrix& noisy,
                              const DensityMatrix& target,
                              const EnergySpectrum& spec);

// F_rec >= 1 - 2 ||est - target||_1 (trace norm unnormalized), slack -1e-9.
bool verify_bound(double f_rec, const DensityMatrix& est,
                  const DensityMatrix& target);

struct LinFitSummary {
  double slope = 0, intercept = 0, r = 0, r_squared = 0;
  bool degenerate = false;  // e.g. all points coincide (oracle-only subset)
};

// Least-squares F_rec = a F_est + b over a batch of (f_est, f_rec) pairs.
LinFitSummary empirical_lipschitz(const std::vector<std::pair<double, double>>& pts);

// One full evaluation of a strategy on (target, noisy).
RecoveryRecord evaluate_strategy(const DensityMatrix& target,
                                 const DensityMatrix& noisy,
                                 const DensityMatrix& est,
                                 const EnergySpectrum& spec,
                                 const std::string& label);

}  // namespace bcqec
