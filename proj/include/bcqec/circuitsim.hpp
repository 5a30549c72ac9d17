#pragma once
#include <string>
#include <vector>

#include "bcqec/core_linalg.hpp"
#include "bcqec/rng.hpp"

namespace bcqec {

// Small dense-unitary circuit layer for n <= 3 qubits; qubit 0 is the most
// significant bit of the basis index.
struct Gate {
  enum Kind { H, X, RY, RZ, CNOT };
  Kind kind;
  int q0;
  int q1 = -1;       // CNOT target
  double angle = 0;  // RY / RZ
};

struct Circuit {
  int n_qubits;
  std::vector<Gate> gates;
};

Circuit ghz_circuit(int n_qubits);
// RY(pi/2) on q0, CNOT(0,1), X on q0 -> (|01> + |10>)/sqrt(2)
Circuit wlike_circuit();
// layers x (RY per qubit, RZ per qubit, CNOT chain), angles uniform [0, 2pi)
Circuit random_circuit(int n_qubits, int layers, Rng& rng);

Mat gate_unitary(const Gate& g, int n_qubits);

enum class GateNoiseMode { Local, Global };

struct CircuitRun {
  DensityMatrix ideal;
  DensityMatrix noisy;
};

// Applies each gate, then depolarizing with probability p_gate on the gate's
// support qubits (Local) or on the full register (Global).
CircuitRun run_noisy(const Circuit& c, double p_gate,
                     GateNoiseMode mode = GateNoiseMode::Local);

// From Tr(rho_noisy rho_ideal) = (1 - p) + p/d for a pure ideal state.
double estimate_p_eff(const DensityMatrix& noisy, const DensityMatrix& ideal);

struct SanityRow {
  std::string label;
  int n_qubits;
  int gate_count;
  double f_noisy;
  double f_cm;   // blind coherence-max recovery
  double f_ci;   // depolarizing inversion at the estimated p_eff
  double p_eff;
  std::string winner;  // "CM" or "CI"
};

// Five fixed circuits: GHZ 2q, GHZ 3q, W-like 2q, random 2q, random 3q.
std::vector<SanityRow> sanity_suite(double p_gate = 0.1,
                                    GateNoiseMode mode = GateNoiseMode::Local,
                                    std::uint64_t rand2q_seed = 17,
                                    std::uint64_t rand3q_seed = 17);

}  // namespace bcqec
