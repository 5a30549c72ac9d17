#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcqec/vqe.hpp"

using namespace bcqec;

TEST_CASE("bundled hamiltonian reproduces the exact ground energy") {
  Hamiltonian2Q h = load_h2_hamiltonian();
  Mat m = h.matrix();
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  // brute-force 4x4 diagonalization
  CHECK(h.ground_energy() == doctest::Approx(-1.851).epsilon(0.005 / 1.851));
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().size() == 4);
  CHECK_THROWS_AS(load_h2_hamiltonian("/nonexistent/file.txt"),
                  std::runtime_error);
}

TEST_CASE("ansatz basics") {
  DensityMatrix zero = ansatz_state({0, 0, 0, 0});
  CHECK(zero.m(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  // purity 1 for arbitrary parameters
  DensityMatrix s = ansatz_state({0.7, -1.2, 2.1, 0.4});
  CHECK((s.m * s.m).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.m.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ansatz can express the exact ground state") {
  Hamiltonian2Q h = load_h2_hamiltonian();
  // dense random search plus the optimizer must get within 1e-3 of E0;
  // the noiseless vqe run below exercises exactly that path
  VqeResult r = run_vqe(h, VqeScenario::Noiseless);
  CHECK(r.error <= 0.005);
}

TEST_CASE("noiseless energy trace is monotone nonincreasing") {
  Hamiltonian2Q h = load_h2_hamiltonian();
  VqeResult r = run_vqe(h, VqeScenario::Noiseless);
  REQUIRE(!r.energy_trace.empty());
  for (size_t i = 1; i < r.energy_trace.size(); ++i)
    CHECK(r.energy_trace[i] <= r.energy_trace[i - 1] + 1e-12);
}

TEST_CASE("noise biases the energy and channel inversion removes the bias") {
  Hamiltonian2Q h = load_h2_hamiltonian();
  VqeResult noisy = run_vqe(h, VqeScenario::Noisy);
  VqeResult chinv = run_vqe(h, VqeScenario::BlindChInv);
  CHECK(noisy.error > 0.05);
  CHECK(chinv.error <= 0.5 * noisy.error);
}

TEST_CASE("scenario names are stable") {
  CHECK(std::string(vqe_scenario_name(VqeScenario::Noiseless)) == "noiseless");
  CHECK(std::string(vqe_scenario_name(VqeScenario::BlindCoM)) == "blind_com");
}
