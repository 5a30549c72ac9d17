#include "bcqec/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#ifndef BCQEC_DATA_DIR
#define BCQEC_DATA_DIR "data"
#endif

namespace bcqec {

Mat Hamiltonian2Q::matrix() const {
  Mat i2 = Mat::Identity(2, 2);
  Mat x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
  z << 1, 0, 0, -1;
  auto kron = [](const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  return g[0] * Mat::Identity(4, 4) + g[1] * kron(z, i2) + g[2] * kron(i2, z) +
         g[3] * kron(z, z) + g[4] * kron(x, x) + g[5] * kron(y, y);
}

double Hamiltonian2Q::ground_energy() const {
  Eigen::SelfAdjointEigenSolver<Mat> es(matrix());
  return es.eigenvalues()(0);
}

Hamiltonian2Q load_h2_hamiltonian(const std::string& path) {
  std::string p = path.empty()
                      ? std::string(BCQEC_DATA_DIR) + "/h2_hamiltonian.txt"
                      : path;
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open hamiltonian file: " + p);
  std::map<std::string, double> terms;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string name;
    double val;
    if (ls >> name >> val) terms[name] = val;
  }
  const char* order[6] = {"I", "Z0", "Z1", "Z0Z1", "X0X1", "Y0Y1"};
  Hamiltonian2Q h{};
  for (int k = 0; k < 6; ++k) {
    auto it = terms.find(order[k]);
    if (it == terms.end())
      throw std::runtime_error(std::string("hamiltonian file missing term ") +
                               order[k]);
    h.g[k] = it->second;
  }
  return h;
}

DensityMatrix ansatz_state(const std::array<double, 4>& theta) {
  auto ry = [](double t) {
    Mat u(2, 2);
    double c = std::cos(t / 2), s = std::sin(t / 2);
    u << c, -s, s, c;
    return u;
  };
  auto kron2 = [](const Mat& a, const Mat& b) {
    Mat out(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block(i * 2, j * 2, 2, 2) = a(i, j) * b;
    return out;
  };
  Mat cnot = Mat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = 1.0;
  v = kron2(ry(theta[0]), ry(theta[1])) * v;
  v = cnot * v;
  v = kron2(ry(theta[2]), ry(theta[3])) * v;
  return DensityMatrix{v * v.adjoint()};
}

const char* vqe_scenario_name(VqeScenario s) {
  switch (s) {
    case VqeScenario::Noiseless: return "noiseless";
    case VqeScenario::Noisy: return "noisy";
    case VqeScenario::BlindCoM: return "blind_com";
    case VqeScenario::BlindChInv: return "blind_chinv";
  }
  return "?";
}

namespace {

struct NmOutcome {
  std::array<double, 4> x;
  double f;
  bool converged;
  int evals;
};

// standard Nelder-Mead (reflection 1, expansion 2, contraction 0.5,
// shrink 0.5) over 4 parameters
NmOutcome nelder_mead(const std::function<double(const std::array<double, 4>&)>& fn,
                      std::array<double, 4> x0, int budget,
                      std::vector<double>* trace) {
  constexpr int kN = 4;
  int evals = 0;
  double best_seen = std::numeric_limits<double>::infinity();
  auto eval = [&](const std::array<double, 4>& x) {
    double v = fn(x);
    ++evals;
    best_seen = std::min(best_seen, v);
    if (trace) trace->push_back(best_seen);
    return v;
  };
  std::vector<std::pair<double, std::array<double, 4>>> simplex;
  simplex.push_back({eval(x0), x0});
  for (int k = 0; k < kN; ++k) {
    auto x = x0;
    x[k] += 0.25;
    simplex.push_back({eval(x), x});
  }
  bool converged = false;
  while (evals < budget) {
    std::sort(simplex.begin(), simplex.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (simplex.back().first - simplex.front().first < 1e-9) {
      converged = true;
      break;
    }
    std::array<double, 4> centroid{};
    for (int i = 0; i < kN; ++i)
      for (int k = 0; k < kN; ++k) centroid[k] += simplex[i].second[k] / kN;
    auto blend = [&](double coef) {
      std::array<double, 4> x;
      for (int k = 0; k < kN; ++k)
        x[k] = centroid[k] + coef * (centroid[k] - simplex.back().second[k]);
      return x;
    };
    auto xr = blend(1.0);
    double fr = eval(xr);
    if (fr < simplex.front().first) {
      auto xe = blend(2.0);
      double fe = eval(xe);
      simplex.back() = fe < fr ? std::make_pair(fe, xe) : std::make_pair(fr, xr);
    } else if (fr < simplex[kN - 1].first) {
      simplex.back() = {fr, xr};
    } else {
      auto xc = blend(fr < simplex.back().first ? 0.5 : -0.5);
      double fc = eval(xc);
      if (fc < std::min(fr, simplex.back().first)) {
        simplex.back() = {fc, xc};
      } else {  // shrink toward the best vertex
        for (int i = 1; i <= kN; ++i) {
          for (int k = 0; k < kN; ++k)
            simplex[i].second[k] = 0.5 * (simplex[i].second[k] +
                                          simplex[0].second[k]);
          simplex[i].first = eval(simplex[i].second);
          if (evals >= budget) break;
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return {simplex.front().second, simplex.front().first, converged, evals};
}

}  // namespace

VqeResult run_vqe(const Hamiltonian2Q& h, VqeScenario scenario,
                  const NoiseParams& noise, int budget, int restarts,
                  std::uint64_t seed) {
  Mat hm = h.matrix();
  EnergySpectrum spec = EnergySpectrum::uniform(4);
  auto energy = [&](const std::array<double, 4>& theta) {
    DensityMatrix rho = ansatz_state(theta);
    if (scenario != VqeScenario::Noiseless)
      rho = apply_combined(rho, noise, spec);
    if (scenario == VqeScenario::BlindCoM)
      rho = estimate_coherence_max(rho);
    else if (scenario == VqeScenario::BlindChInv)
      rho = estimate_channel_inversion(rho, noise, spec);
    Cx e = (hm * rho.m).trace();
    if (std::abs(e.imag()) > 1e-10)
      throw std::runtime_error("vqe: complex energy");
    return e.real();
  };
  VqeResult out;
  out.scenario = scenario;
  out.energy = std::numeric_limits<double>::infinity();
  out.converged = false;
  out.evaluations = 0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    std::array<double, 4> x0;
    for (auto& v : x0) v = rng.uniform(-0.5, 0.5);
    std::vector<double> trace;
    NmOutcome nm = nelder_mead(energy, x0, budget, &trace);
    out.evaluations += nm.evals;
    out.converged = out.converged || nm.converged;
    if (nm.f < out.energy) {
      out.energy = nm.f;
      out.theta = nm.x;
      out.energy_trace = std::move(trace);
    }
  }
  out.error = std::abs(out.energy - h.ground_energy());
  return out;
}

}  // namespace bcqec
