#pragma once
#include <array>
#include <string>
#include <vector>

#include "bcqec/estimators.hpp"

namespace bcqec {

struct Hamiltonian2Q {
  // coefficients of I, Z0, Z1, Z0Z1, X0X1, Y0Y1, in Hartree
  std::array<double, 6> g;
  Mat matrix() const;  // 4x4 Hermitian
  double ground_energy() const;
};

// Reads the bundled coefficient file; pass "" for the default location.
Hamiltonian2Q load_h2_hamiltonian(const std::string& path = "");

// RY(t0) (x) RY(t1), CNOT(0 -> 1), RY(t2) (x) RY(t3) applied to |00>; pure.
DensityMatrix ansatz_state(const std::array<double, 4>& theta);

enum class VqeScenario { Noiseless, Noisy, BlindCoM, BlindChInv };
const char* vqe_scenario_name(VqeScenario s);

struct VqeResult {
  VqeScenario scenario;
  std::vector<double> energy_trace;  // best-so-far energy per evaluation
  std::array<double, 4> theta;
  double energy;
  double error;      // |energy - exact ground energy|
  bool converged;    // false when every restart exhausted its budget
  int evaluations;
};

// Derivative-free simplex search; per evaluation the ansatz state passes
// through the noise channel (except Noiseless) and the blind correction
// (blind scenarios) before E = Tr(H rho). Restarts use seeds
// mix_seed(seed, restart).
VqeResult run_vqe(const Hamiltonian2Q& h, VqeScenario scenario,
                  const NoiseParams& noise = {0.5, 0.1, 0.05},
                  int budget = 200, int restarts = 3, std::uint64_t seed = 7);

}  // namespace bcqec
