#include "bcqec/targets.hpp"

#include <cmath>

namespace bcqec {

namespace {
DensityMatrix pure_from(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd u = v / v.norm();
  return DensityMatrix{u * u.adjoint()};
}
}  // namespace

DensityMatrix maximally_coherent(int d) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(d, Cx(1.0, 0.0));
  return pure_from(v);
}

DensityMatrix heisenberg_evolved(double t, double j_coupling) {
  const int d = 8;
  auto bit = [](int s, int q) { return (s >> (2 - q)) & 1; };
  Mat h = Mat::Zero(d, d);
  // pair terms on (0,1) and (1,2): XX + YY flips, ZZ diagonal
  for (int s = 0; s < d; ++s) {
    for (int q = 0; q + 1 < 3; ++q) {
      int b0 = bit(s, q), b1 = bit(s, q + 1);
      h(s, s) += j_coupling * (b0 == b1 ? 1.0 : -1.0);  // ZZ
      if (b0 != b1) {  // (XX+YY)|01> = 2|10>
        int s2 = s ^ (1 << (2 - q)) ^ (1 << (2 - q - 1));
        h(s2, s) += 2.0 * j_coupling;
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(d, Cx(1.0, 0.0));
  plus /= plus.norm();
  Eigen::VectorXcd coeff = es.eigenvectors().adjoint() * plus;
  for (int k = 0; k < d; ++k)
    coeff(k) *= std::exp(Cx(0.0, -es.eigenvalues()(k) * t));
  return pure_from(es.eigenvectors() * coeff);
}

DensityMatrix chebyshev_state(int degree, double x) {
  const int d = degree + 1;
  Eigen::VectorXcd v(d);
  double t0 = 1.0, t1 = x;
  for (int k = 0; k < d; ++k) {
    double tk = k == 0 ? t0 : (k == 1 ? t1 : 0.0);
    if (k >= 2) {
      tk = 2.0 * x * t1 - t0;
      t0 = t1;
      t1 = tk;
    }
    v(k) = Cx(tk, 0.0);
  }
  if (v.norm() < 1e-14)
    throw std::domain_error("chebyshev_state: zero amplitude vector");
  return pure_from(v);
}

DensityMatrix phase_superposition(int d,
                                  const std::function<double(int)>& weight,
                                  const std::function<double(int)>& phase) {
  Eigen::VectorXcd v(d);
  for (int k = 0; k < d; ++k)
    v(k) = weight(k) * std::exp(Cx(0.0, phase(k)));
  return pure_from(v);
}

DensityMatrix qpe_proxy(int d, double phi) {
  // amplitude of outcome k after an exact QPE round on eigenphase phi
  Eigen::VectorXcd v(d);
  const double pi = 3.14159265358979323846;
  for (int k = 0; k < d; ++k) {
    double delta = phi - static_cast<double>(k) / d;
    Cx acc(0.0, 0.0);
    for (int j = 0; j < d; ++j) acc += std::exp(Cx(0.0, 2.0 * pi * j * delta));
    v(k) = acc / static_cast<double>(d);
  }
  return pure_from(v);
}

DensityMatrix regev_proxy(int d) {
  double sigma = d / 8.0;
  return phase_superposition(
      d,
      [d, sigma](int k) {
        double z = (k - d / 2.0) / sigma;
        return std::exp(-0.5 * z * z);
      },
      [d](int k) {
        const double pi = 3.14159265358979323846;
        return pi * k * k / static_cast<double>(d);
      });
}

std::vector<LabeledTarget> target_suite() {
  std::vector<LabeledTarget> out;
  out.push_back({"qkan_chebyshev", 4, chebyshev_state(3, 0.6)});
  out.push_back({"qdrift_heisenberg", 8, heisenberg_evolved(1.0, 1.0)});
  out.push_back({"qpe_hubbard", 16, qpe_proxy(16, 0.3)});
  out.push_back({"regev_gaussian", 64, regev_proxy(64)});
  return out;
}

}  // namespace bcqec
