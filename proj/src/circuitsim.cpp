#include "bcqec/circuitsim.hpp"

#include <cmath>
#include <stdexcept>

#include "bcqec/estimators.hpp"

namespace bcqec {

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat lift(const Mat& u2, int q, int n) {
  Mat out = Mat::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    const Mat& blk = (k == n - 1 - q) ? u2 : Mat::Identity(2, 2);
    Mat next(out.rows() * 2, out.cols() * 2);
    next.block(0, 0, out.rows(), out.cols()) = blk(0, 0) * out;
    next.block(0, out.cols(), out.rows(), out.cols()) = blk(0, 1) * out;
    next.block(out.rows(), 0, out.rows(), out.cols()) = blk(1, 0) * out;
    next.block(out.rows(), out.cols(), out.rows(), out.cols()) = blk(1, 1) * out;
    out = next;
  }
  return out;
}

int bit_of(int s, int q, int n) { return (s >> (n - 1 - q)) & 1; }

// (1-p) rho + p (I_q / d_q) (x) Tr_q rho over the listed qubits
Mat depol_on_support(const Mat& rho, double p, const std::vector<int>& qubits,
                     int n) {
  const int d = static_cast<int>(rho.rows());
  int support_mask = 0;
  for (int q : qubits) support_mask |= 1 << (n - 1 - q);
  const int dq = 1 << static_cast<int>(qubits.size());
  Mat mixed = Mat::Zero(d, d);
  // entry (a,b) of the re-tensored reduced state: requires a,b equal on the
  // support; sums rho over the support diagonal
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if ((a & support_mask) != (b & support_mask)) continue;
      Cx acc(0, 0);
      for (int s = 0; s < dq; ++s) {
        // scatter s into the support bit positions
        int sup = 0, si = 0;
        for (int k = 0; k < n; ++k) {
          int pos = 1 << (n - 1 - k);
          if (support_mask & pos) {
            if ((s >> (static_cast<int>(qubits.size()) - 1 - si)) & 1) sup |= pos;
            ++si;
          }
        }
        int a2 = (a & ~support_mask) | sup;
        int b2 = (b & ~support_mask) | sup;
        acc += rho(a2, b2);
      }
      mixed(a, b) = acc / static_cast<double>(dq);
    }
  }
  return (1.0 - p) * rho + p * mixed;
}

}  // namespace

Circuit ghz_circuit(int n_qubits) {
  if (n_qubits < 2 || n_qubits > 3)
    throw std::invalid_argument("ghz_circuit: 2 or 3 qubits");
  Circuit c{n_qubits, {}};
  c.gates.push_back({Gate::H, 0});
  for (int q = 0; q + 1 < n_qubits; ++q)
    c.gates.push_back({Gate::CNOT, q, q + 1});
  return c;
}

Circuit wlike_circuit() {
  Circuit c{2, {}};
  c.gates.push_back({Gate::RY, 0, -1, 2.0 * std::acos(1.0 / std::sqrt(2.0))});
  c.gates.push_back({Gate::CNOT, 0, 1});
  c.gates.push_back({Gate::X, 0});
  return c;
}

Circuit random_circuit(int n_qubits, int layers, Rng& rng) {
  Circuit c{n_qubits, {}};
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n_qubits; ++q)
      c.gates.push_back({Gate::RY, q, -1, rng.uniform(0.0, 2.0 * kPi)});
    for (int q = 0; q < n_qubits; ++q)
      c.gates.push_back({Gate::RZ, q, -1, rng.uniform(0.0, 2.0 * kPi)});
    for (int q = 0; q + 1 < n_qubits; ++q)
      c.gates.push_back({Gate::CNOT, q, q + 1});
  }
  return c;
}

Mat gate_unitary(const Gate& g, int n) {
  const int d = 1 << n;
  switch (g.kind) {
    case Gate::H: {
      Mat u(2, 2);
      double s = 1.0 / std::sqrt(2.0);
      u << s, s, s, -s;
      return lift(u, g.q0, n);
    }
    case Gate::X: {
      Mat u(2, 2);
      u << 0, 1, 1, 0;
      return lift(u, g.q0, n);
    }
    case Gate::RY: {
      Mat u(2, 2);
      double ch = std::cos(g.angle / 2), sh = std::sin(g.angle / 2);
      u << ch, -sh, sh, ch;
      return lift(u, g.q0, n);
    }
    case Gate::RZ: {
      Mat u = Mat::Zero(2, 2);
      u(0, 0) = std::exp(Cx(0, -g.angle / 2));
      u(1, 1) = std::exp(Cx(0, g.angle / 2));
      return lift(u, g.q0, n);
    }
    case Gate::CNOT: {
      Mat u = Mat::Zero(d, d);
      for (int b = 0; b < d; ++b) {
        int b2 = b;
        if (bit_of(b, g.q0, n)) b2 ^= 1 << (n - 1 - g.q1);
        u(b2, b) = 1.0;
      }
      return u;
    }
  }
  throw std::logic_error("gate_unitary: unknown gate");
}

CircuitRun run_noisy(const Circuit& c, double p_gate, GateNoiseMode mode) {
  const int n = c.n_qubits;
  const int d = 1 << n;
  Mat rho = Mat::Zero(d, d);
  rho(0, 0) = 1.0;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d);
  psi(0) = 1.0;
  for (const Gate& g : c.gates) {
    Mat u = gate_unitary(g, n);
    rho = u * rho * u.adjoint();
    psi = u * psi;
    if (p_gate > 0.0) {
      if (mode == GateNoiseMode::Global) {
        rho = (1.0 - p_gate) * rho +
              (p_gate / d) * rho.trace() * Mat::Identity(d, d);
      } else {
        std::vector<int> support{g.q0};
        if (g.kind == Gate::CNOT) support.push_back(g.q1);
        rho = depol_on_support(rho, p_gate, support, n);
      }
    }
  }
  CircuitRun out;
  out.ideal = DensityMatrix{psi * psi.adjoint()};
  out.noisy = DensityMatrix{hermitize(rho)};
  return out;
}

double estimate_p_eff(const DensityMatrix& noisy, const DensityMatrix& ideal) {
  const int d = noisy.dim();
  double overlap = (noisy.m * ideal.m).trace().real();
  double p = (1.0 - overlap) / (1.0 - 1.0 / d);
  return std::clamp(p, 0.0, 1.0);
}

std::vector<SanityRow> sanity_suite(double p_gate, GateNoiseMode mode,
                                    std::uint64_t rand2q_seed,
                                    std::uint64_t rand3q_seed) {
  struct Entry {
    std::string label;
    Circuit circ;
  };
  std::vector<Entry> entries;
  entries.push_back({"ghz_2q", ghz_circuit(2)});
  entries.push_back({"ghz_3q", ghz_circuit(3)});
  entries.push_back({"w_like_2q", wlike_circuit()});
  {
    Rng r2(mix_seed(rand2q_seed, 0));
    entries.push_back({"random_2q", random_circuit(2, 2, r2)});
    Rng r3(mix_seed(rand3q_seed, 0));
    entries.push_back({"random_3q", random_circuit(3, 2, r3)});
  }
  std::vector<SanityRow> rows;
  for (const Entry& e : entries) {
    CircuitRun run = run_noisy(e.circ, p_gate, mode);
    const int d = 1 << e.circ.n_qubits;
    SanityRow row;
    row.label = e.label;
    row.n_qubits = e.circ.n_qubits;
    row.gate_count = static_cast<int>(e.circ.gates.size());
    row.f_noisy = fidelity(run.noisy, run.ideal);
    row.p_eff = estimate_p_eff(run.noisy, run.ideal);
    DensityMatrix cm = estimate_coherence_max(run.noisy);
    row.f_cm = fidelity(cm, run.ideal);
    double p_inv = std::min(row.p_eff, 1.0 - 1.0 / d - 1e-6);
    DensityMatrix ci = maybe_project(invert_depolarizing(run.noisy.m, p_inv));
    row.f_ci = fidelity(ci, run.ideal);
    row.winner = row.f_ci > row.f_cm ? "CI" : "CM";
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bcqec
