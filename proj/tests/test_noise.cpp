#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcqec/noise.hpp"

using namespace bcqec;

namespace {
DensityMatrix max_coherent(int d) {
  return DensityMatrix{Mat::Constant(d, d, Cx(1.0 / d, 0.0))};
}
}  // namespace

TEST_CASE("dephasing damps off-diagonals by exp(-gamma gap)") {
  EnergySpectrum spec = EnergySpectrum::uniform(2);
  double gamma = 0.8;
  DensityMatrix out = apply_dephasing(max_coherent(2), gamma, spec);
  CHECK(out.m(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(out.m(0, 1)) ==
        doctest::Approx(0.5 * std::exp(-0.8)).epsilon(1e-12));

  // d = 4: gap-3 element damped as exp(-3 gamma)
  EnergySpectrum s4 = EnergySpectrum::uniform(4);
  DensityMatrix o4 = apply_dephasing(max_coherent(4), 0.5, s4);
  CHECK(std::abs(o4.m(0, 3)) ==
        doctest::Approx(0.25 * std::exp(-1.5)).epsilon(1e-12));
}

TEST_CASE("depolarizing mixes toward identity") {
  Mat z0 = Mat::Zero(2, 2);
  z0(0, 0) = 1.0;
  DensityMatrix out = apply_depolarizing(DensityMatrix{z0}, 0.3);
  CHECK(out.m(0, 0).real() == doctest::Approx(0.85).epsilon(1e-14));
  CHECK(out.m(1, 1).real() == doctest::Approx(0.15).epsilon(1e-14));
  // F vs the pure input is 1 - p/2 = 0.85
  CHECK(fidelity(out, DensityMatrix{z0}) ==
        doctest::Approx(0.85).epsilon(1e-10));
}

TEST_CASE("amplitude damping qubit matches the Kraus channel") {
  double g = 0.5;
  DensityMatrix out = apply_amplitude_damping(max_coherent(2), g);
  CHECK(out.m(0, 0).real() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(out.m(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(out.m(0, 1)) ==
        doctest::Approx(0.5 * std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("amplitude damping coherence scaling at d = 4") {
  double g = 0.3;
  DensityMatrix out = apply_amplitude_damping(max_coherent(4), g);
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k)
      CHECK(std::abs(out.m(j, k)) ==
            doctest::Approx(0.25 * std::pow(1.0 - g, 0.5 * (j + k)))
                .epsilon(1e-12));
}

TEST_CASE("all channels preserve trace and positivity") {
  Rng rng(mix_seed(1, 1));
  EnergySpectrum spec = EnergySpectrum::uniform(8);
  NoiseParams np{1.3, 0.4, 0.6};
  for (int rep = 0; rep < 20; ++rep) {
    DensityMatrix rho = haar_random_pure(8, rng);
    DensityMatrix out = apply_combined(rho, np, spec);
    CHECK(out.m.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
    Eigen::SelfAdjointEigenSolver<Mat> es(out.m, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("combined channel applies dephasing, depolarizing, damping in order") {
  EnergySpectrum spec = EnergySpectrum::uniform(4);
  Rng rng(mix_seed(2, 0));
  DensityMatrix rho = haar_random_pure(4, rng);
  NoiseParams np{0.7, 0.2, 0.15};
  DensityMatrix manual = apply_amplitude_damping(
      apply_depolarizing(apply_dephasing(rho, np.gamma_deph, spec), np.p_depol),
      np.gamma_ad);
  DensityMatrix combined = apply_combined(rho, np, spec);
  CHECK((manual.m - combined.m).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("scaled parameters clamp below invertibility limits") {
  NoiseParams np{1.0, 0.5, 0.4};
  NoiseParams s = np.scaled(3.0);
  CHECK(s.gamma_deph == doctest::Approx(3.0));
  CHECK(s.p_depol == doctest::Approx(0.999));
  CHECK(s.gamma_ad == doctest::Approx(0.999));
  NoiseParams s1 = np.scaled(1.0);
  CHECK(s1.p_depol == doctest::Approx(0.5));
}
