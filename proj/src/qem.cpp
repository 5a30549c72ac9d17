#include "bcqec/qem.hpp"

namespace bcqec {

DensityMatrix zne_recover(const DensityMatrix& target, const NoiseParams& np,
                          const EnergySpectrum& spec,
                          const std::vector<double>& scale_points) {
  if (scale_points.size() < 2)
    throw std::invalid_argument("zne: need >= 2 scale points");
  const int d = target.dim();
  // least-squares line a + b*lambda per element, evaluated at lambda = 0
  const auto k = static_cast<double>(scale_points.size());
  double sl = 0, sll = 0;
  for (double l : scale_points) { sl += l; sll += l * l; }
  double det = k * sll - sl * sl;
  Mat acc_y = Mat::Zero(d, d), acc_ly = Mat::Zero(d, d);
  for (double l : scale_points) {
    Mat noisy = apply_combined(target, np.scaled(l), spec).m;
    acc_y += noisy;
    acc_ly += l * noisy;
  }
  Mat intercept = (sll * acc_y - sl * acc_ly) / det;
  return psd_project(intercept);
}

DensityMatrix pec_recover(const DensityMatrix& noisy, const NoiseParams& np,
                          const EnergySpectrum& spec) {
  return estimate_channel_inversion(noisy, np, spec);
}

DensityMatrix vd_recover(const DensityMatrix& noisy, int m) {
  if (m < 1) throw std::invalid_argument("vd: m >= 1 required");
  Mat p = noisy.m;
  for (int i = 1; i < m; ++i) p = p * noisy.m;
  double tr = p.trace().real();
  if (tr <= 0) throw std::domain_error("vd: non-positive trace of rho^m");
  return DensityMatrix{hermitize(p / tr)};
}

std::vector<TomoBoundRow> tomo_bound_curves(const std::vector<double>& n_range,
                                            int d, double anchor_infidelity) {
  if (n_range.empty()) throw std::invalid_argument("tomo_bound_curves: empty");
  double n0 = n_range.front();
  double c = anchor_infidelity * n0 / (static_cast<double>(d) * d);
  double cp = anchor_infidelity * std::sqrt(n0);
  std::vector<TomoBoundRow> rows;
  rows.reserve(n_range.size());
  for (double n : n_range)
    rows.push_back({n, c * d * d / n, cp / std::sqrt(n)});
  return rows;
}

DensityMatrix linear_inversion_baseline(const std::vector<DensityMatrix>& copies) {
  if (copies.empty()) throw std::invalid_argument("linear inversion: no copies");
  Mat avg = Mat::Zero(copies[0].dim(), copies[0].dim());
  for (const auto& c : copies) avg += c.m;
  avg /= static_cast<double>(copies.size());
  return psd_project(avg);
}

}  // namespace bcqec
