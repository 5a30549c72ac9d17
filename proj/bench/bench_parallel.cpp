// Times the Haar dimension sweep with the serial reference path (workers = 1)
// against the OpenMP pool, and verifies the outputs agree bitwise.
#include <chrono>
#include <cstdio>

#include "bcqec/bench.hpp"
#include "bcqec/noise.hpp"
#include "bcqec/recovery.hpp"

using namespace bcqec;

namespace {

std::vector<double> sweep(int workers, std::uint64_t seed) {
  const std::vector<int> dims = {2, 4, 8, 16, 32, 64, 128};
  const int n_states = 20;
  NoiseParams np;  // defaults
  int n_tasks = static_cast<int>(dims.size()) * n_states;
  return parallel_map<double>(n_tasks, workers, [&](int ti) {
    int d = dims[static_cast<size_t>(ti / n_states)];
    EnergySpectrum spec = EnergySpectrum::uniform(d);
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(ti)));
    DensityMatrix target = haar_random_pure(d, rng);
    DensityMatrix noisy = apply_combined(target, np, spec);
    DensityMatrix est = estimate_coherence_max(noisy);
    return fidelity(recover(noisy, est, spec), target);
  });
}

double time_once(int workers, std::vector<double>* out) {
  auto t0 = std::chrono::steady_clock::now();
  *out = sweep(workers, 42);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  std::vector<double> serial, parallel;
  double ts = time_once(1, &serial);
  double tp = time_once(0, &parallel);
  bool equal = serial == parallel;
  std::printf("serial reference: %.3f s\n", ts);
  std::printf("openmp pool:      %.3f s  (speedup %.2fx)\n", tp, ts / tp);
  std::printf("outputs bitwise equal: %s\n", equal ? "yes" : "NO");
  return equal ? 0 : 1;
}
