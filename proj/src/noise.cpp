#include "bcqec/noise.hpp"

namespace bcqec {

DensityMatrix apply_dephasing(const DensityMatrix& rho, double gamma,
                              const EnergySpectrum& spec) {
  if (gamma < 0.0) throw std::invalid_argument("dephasing: gamma < 0");
  const int d = rho.dim();
  Mat out = rho.m;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) out(i, j) *= std::exp(-gamma * spec.gap(i, j));
  return DensityMatrix{out};
}

DensityMatrix apply_depolarizing(const DensityMatrix& rho, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p out of range");
  const int d = rho.dim();
  Mat out = (1.0 - p) * rho.m + (p / d) * Mat::Identity(d, d);
  return DensityMatrix{out};
}

DensityMatrix apply_amplitude_damping(const DensityMatrix& rho, double g) {
  if (g < 0.0 || g >= 1.0)
    throw std::invalid_argument("amplitude damping: gamma outside [0,1)");
  const int d = rho.dim();
  Eigen::VectorXd f(d), jump(d);
  for (int k = 0; k < d; ++k) {
    f(k) = std::pow(1.0 - g, 0.5 * k);
    jump(k) = 1.0 - std::pow(1.0 - g, k);
  }
  Mat out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = f(i) * f(j) * rho.m(i, j);
  for (int k = 0; k + 1 < d; ++k)
    out(k, k) += jump(k + 1) * rho.m(k + 1, k + 1).real();
  return DensityMatrix{hermitize(out)};
}

DensityMatrix apply_combined(const DensityMatrix& rho, const NoiseParams& np,
                             const EnergySpectrum& spec) {
  DensityMatrix x = rho;
  if (np.gamma_deph > 0.0) x = apply_dephasing(x, np.gamma_deph, spec);
  if (np.p_depol > 0.0) x = apply_depolarizing(x, np.p_depol);
  if (np.gamma_ad > 0.0) x = apply_amplitude_damping(x, np.gamma_ad);
  return x;
}

}  // namespace bcqec
