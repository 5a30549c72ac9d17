#pragma once
#include <functional>
#include <string>
#include <vector>

#include "bcqec/core_linalg.hpp"

namespace bcqec {

// |psi> = sum_i |i>/sqrt(d)
DensityMatrix maximally_coherent(int d);

// exp(-i H t)|+++> for the open 3-site chain H = J sum (XX + YY + ZZ); d = 8.
// |+++> is an XX eigenstate and YY+ZZ annihilates |++>, so the evolution is a
// global phase and the density matrix is t-independent; kept as the exact
// exponential for regression against the dense-expm oracle.
DensityMatrix heisenberg_evolved(double t, double j_coupling);

// amplitudes proportional to (T_0(x), ..., T_3(x)); d = 4.
DensityMatrix chebyshev_state(int degree, double x);

// |psi> = sum_k c_k e^{i theta_k} |k> / norm
DensityMatrix phase_superposition(int d,
                                  const std::function<double(int)>& weight,
                                  const std::function<double(int)>& phase);

// d = 16 proxy: textbook phase-estimation amplitude profile for eigenphase phi.
DensityMatrix qpe_proxy(int d = 16, double phi = 0.3);
// d = 64 proxy: discrete-Gaussian weights c_k ~ exp(-(k-d/2)^2 / (2 sigma^2)),
// sigma = d/8, quadratic phase profile.
DensityMatrix regev_proxy(int d = 64);

struct LabeledTarget {
  std::string label;
  int dim;
  DensityMatrix state;
};

// The four algorithm proxies at d in {4, 8, 16, 64}; deterministic.
std::vector<LabeledTarget> target_suite();

}  // namespace bcqec
