#include "bcqec/core_linalg.hpp"

#include <numeric>

namespace bcqec {

StateCheck check_state(const Mat& m, double tol) {
  StateCheck c{};
  c.hermitian = (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
  c.unit_trace = std::abs(m.trace().real() - 1.0) <= tol &&
                 std::abs(m.trace().imag()) <= tol;
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m), Eigen::EigenvaluesOnly);
  c.min_eig = es.eigenvalues().minCoeff();
  c.psd = c.min_eig >= -tol;
  return c;
}

DensityMatrix make_state(const Mat& m, double tol) {
  StateCheck c = check_state(m, tol);
  if (!c.ok()) {
    throw std::invalid_argument("not a valid density matrix (hermitian=" +
                                std::to_string(c.hermitian) +
                                " trace=" + std::to_string(c.unit_trace) +
                                " min_eig=" + std::to_string(c.min_eig) + ")");
  }
  return DensityMatrix{hermitize(m)};
}

static Mat matrix_sqrt_psd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(a));
  Eigen::VectorXd w = es.eigenvalues();
  for (int i = 0; i < w.size(); ++i) w(i) = w(i) > 1e-12 ? std::sqrt(w(i)) : 0.0;
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  Mat sq = matrix_sqrt_psd(a.m);
  Mat inner = hermitize(sq * b.m * sq);
  Eigen::SelfAdjointEigenSolver<Mat> es(inner, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double w = es.eigenvalues()(i);
    if (w > 0.0) s += std::sqrt(w);
  }
  double f = s * s;
  return f < 0.0 ? 0.0 : (f > 1.0 ? std::min(f, 1.0 + 1e-9) : f);
}

double trace_norm(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(a.m - b.m);
}

double l1_coherence(const DensityMatrix& rho) {
  double s = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) s += std::abs(rho.m(i, j));
  return s;
}

DensityMatrix psd_project(const Mat& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(x));
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  double tr = w.sum();
  if (tr <= 0.0)
    throw std::domain_error("psd_project: degenerate input, Tr X_+ = 0");
  w /= tr;
  Mat out = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix{hermitize(out)};
}

ModeLattice mode_lattice(const DensityMatrix& rho, const EnergySpectrum& spec,
                         double rel_tol) {
  const int d = rho.dim();
  for (int i = 0; i < d; ++i) {
    double li = spec.levels(i);
    if (std::abs(li - std::round(li)) > 1e-9)
      throw std::invalid_argument("mode_lattice: non-integer spectrum unsupported");
  }
  double mx = rho.m.cwiseAbs().maxCoeff();
  double thr = rel_tol * mx;
  long long g = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(rho.m(i, j)) > thr) {
        long long gap = std::llround(spec.gap(i, j));
        g = std::gcd(g, gap);
      }
  return ModeLattice{static_cast<int>(g)};
}

bool mode_included(const ModeLattice& target, const ModeLattice& noisy) {
  if (target.generator == 0) return true;  // empty mode set
  if (noisy.generator == 0) return false;
  return target.generator % noisy.generator == 0;
}

DensityMatrix haar_random_pure(int d, Rng& rng) {
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v(i) = Cx(rng.gaussian(), rng.gaussian());
  v.normalize();
  return DensityMatrix{v * v.adjoint()};
}

DensityMatrix werner_state(double v, const DensityMatrix& psi, int d) {
  Mat out = v * psi.m + (1.0 - v) / d * Mat::Identity(d, d);
  return DensityMatrix{hermitize(out)};
}

}  // namespace bcqec
