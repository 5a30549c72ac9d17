#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcqec/recovery.hpp"

using namespace bcqec;

namespace {
DensityMatrix max_coherent(int d) {
  return DensityMatrix{Mat::Constant(d, d, Cx(1.0 / d, 0.0))};
}
}  // namespace

TEST_CASE("the noisy state is an exact fixed point of naive recovery") {
  NoiseParams np{1.0, 0.15, 0.1};
  for (int d : {2, 8, 64}) {
    EnergySpectrum spec = EnergySpectrum::uniform(d);
    Rng rng(mix_seed(20, static_cast<std::uint64_t>(d)));
    DensityMatrix target = haar_random_pure(d, rng);
    DensityMatrix noisy = apply_combined(target, np, spec);
    DensityMatrix rec = recover(noisy, noisy, spec);
    CHECK((rec.m - noisy.m).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("oracle recovery reaches the target when modes are included") {
  NoiseParams np{1.0, 0.15, 0.1};
  EnergySpectrum spec = EnergySpectrum::uniform(8);
  Rng rng(mix_seed(21, 0));
  DensityMatrix target = haar_random_pure(8, rng);
  DensityMatrix noisy = apply_combined(target, np, spec);
  RecoveryRecord r = oracle_recover(noisy, target, spec);
  CHECK(r.f_rec == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.f_est == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.mode_ok);
  CHECK(r.strategy == "oracle");
}

TEST_CASE("off-lattice coherences are dropped when modes are not included") {
  EnergySpectrum spec = EnergySpectrum::uniform(4);
  // noisy state carries only gap-2 coherence (generator 2)
  Mat n = Mat::Identity(4, 4) * 0.25;
  n(0, 2) = n(2, 0) = 0.1;
  DensityMatrix noisy{n};
  // estimate with gap-1 coherence: 1Z is not inside 2Z
  Mat e = Mat::Identity(4, 4) * 0.25;
  e(0, 1) = e(1, 0) = 0.1;
  e(0, 2) = e(2, 0) = 0.05;
  bool mode_ok = true;
  DensityMatrix rec = recover(noisy, DensityMatrix{e}, spec, &mode_ok);
  CHECK_FALSE(mode_ok);
  CHECK(std::abs(rec.m(0, 1)) <= 1e-9);   // off-lattice gap dropped
  CHECK(std::abs(rec.m(0, 2)) > 1e-3);    // shared mode kept
}

TEST_CASE("recovery bound holds on random pairs") {
  NoiseParams np{2.0, 0.3, 0.2};
  EnergySpectrum spec = EnergySpectrum::uniform(8);
  Rng rng(mix_seed(22, 0));
  for (int rep = 0; rep < 25; ++rep) {
    DensityMatrix target = haar_random_pure(8, rng);
    DensityMatrix noisy = apply_combined(target, np, spec);
    DensityMatrix est = estimate_coherence_max(noisy);
    DensityMatrix rec = recover(noisy, est, spec);
    CHECK(verify_bound(fidelity(rec, target), est, target));
  }
}

TEST_CASE("empirical lipschitz fit recovers a synthetic line") {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= 10; ++i) {
    double x = 0.3 + 0.05 * i;
    pts.push_back({x, 0.98 * x + 0.01});
  }
  LinFitSummary f = empirical_lipschitz(pts);
  CHECK_FALSE(f.degenerate);
  CHECK(f.slope == doctest::Approx(0.98).epsilon(1e-9));
  CHECK(f.intercept == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(f.r == doctest::Approx(1.0).epsilon(1e-9));

  LinFitSummary g = empirical_lipschitz({{1.0, 1.0}, {1.0, 1.0}});
  CHECK(g.degenerate);
}

TEST_CASE("evaluate_strategy populates a consistent record") {
  NoiseParams np{1.0, 0.15, 0.1};
  EnergySpectrum spec = EnergySpectrum::uniform(4);
  DensityMatrix target = max_coherent(4);
  DensityMatrix noisy = apply_combined(target, np, spec);
  DensityMatrix est = estimate_coherence_max(noisy);
  RecoveryRecord r = evaluate_strategy(target, noisy, est, spec, "coherence_max");
  CHECK(r.dim == 4);
  CHECK(r.strategy == "coherence_max");
  CHECK(r.f_noisy == doctest::Approx(fidelity(noisy, target)).epsilon(1e-12));
  CHECK(r.f_rec >= r.f_noisy - 1e-12);
  CHECK(r.trace_dist >= 0.0);
  CHECK(r.coherence_ratio > 0.0);
  CHECK(r.f_oracle == doctest::Approx(1.0).epsilon(1e-7));
}
