#pragma once
#include <Eigen/Dense>
#include <stdexcept>
#include <string>

#include "bcqec/rng.hpp"

namespace bcqec {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// d x d complex Hermitian, unit-trace, PSD state carrier.
struct DensityMatrix {
  Mat m;
  int dim() const { return static_cast<int>(m.rows()); }
};

struct EnergySpectrum {
  Eigen::VectorXd levels;  // nondecreasing; default E_i = i
  static EnergySpectrum uniform(int d) {
    EnergySpectrum s;
    s.levels = Eigen::VectorXd::LinSpaced(d, 0.0, d - 1.0);
    return s;
  }
  double gap(int i, int j) const { return std::abs(levels(i) - levels(j)); }
};

// Integer lattice g*Z generated by the gaps carrying coherence; g = 0 for
// diagonal states.
struct ModeLattice {
  int generator = 0;
  bool empty() const { return generator == 0; }
};

inline Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

struct StateCheck {
  bool hermitian, unit_trace, psd;
  double min_eig;
  bool ok() const { return hermitian && unit_trace && psd; }
};
StateCheck check_state(const Mat& m, double tol = 1e-10);

// Throws std::invalid_argument when the matrix is not a valid state.
DensityMatrix make_state(const Mat& m, double tol = 1e-10);

// (Tr sqrt(sqrt(a) b sqrt(a)))^2, symmetric within 1e-9.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
// 0.5 * ||a - b||_1
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
// sum_{i != j} |rho_ij|
double l1_coherence(const DensityMatrix& rho);
// unnormalized trace norm of a Hermitian difference
double trace_norm(const Mat& h);

// Pi(X) = X_+ / Tr X_+. Throws on Tr X_+ = 0.
DensityMatrix psd_project(const Mat& x);

ModeLattice mode_lattice(const DensityMatrix& rho, const EnergySpectrum& spec,
                         double rel_tol = 1e-12);
bool mode_included(const ModeLattice& target, const ModeLattice& noisy);

DensityMatrix haar_random_pure(int d, Rng& rng);
DensityMatrix werner_state(double v, const DensityMatrix& psi, int d);

// Full-rank warning per the recovery theorem's hypothesis (never an error).
inline bool full_rank_warning(const DensityMatrix& rho, double tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(rho.m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() < tol;
}

}  // namespace bcqec
