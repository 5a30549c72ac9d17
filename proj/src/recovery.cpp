#include "bcqec/recovery.hpp"

namespace bcqec {

DensityMatrix recover(const DensityMatrix& noisy, const DensityMatrix& est,
                      const EnergySpectrum& spec, bool* mode_ok) {
  if (noisy.dim() != est.dim())
    throw std::invalid_argument("recover: dimension mismatch");
  ModeLattice lt = mode_lattice(est, spec);
  ModeLattice ln = mode_lattice(noisy, spec);
  bool ok = mode_included(lt, ln);
  if (mode_ok) *mode_ok = ok;
  // maybe_project: an already-valid estimate passes through bit-unchanged, so
  // the naive estimate is an exact fixed point of the recovery map.
  if (ok) return maybe_project(est.m);
  // restrict amplification to the shared modes
  const int d = est.dim();
  Mat x = est.m;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      long long gap = std::llround(spec.gap(i, j));
      bool shared = ln.generator != 0 && gap % ln.generator == 0;
      if (!shared) x(i, j) = 0.0;
    }
  return psd_project(x);
}

RecoveryRecord oracle_recover(const DensityMatrix& noisy,
                              const DensityMatrix& target,
                              const EnergySpectrum& spec) {
  RecoveryRecord r = evaluate_strategy(target, noisy, target, spec, "oracle");
  r.f_oracle = r.f_rec;
  return r;
}

bool verify_bound(double f_rec, const DensityMatrix& est,
                  const DensityMatrix& target) {
  double l1 = trace_norm(est.m - target.m);
  return f_rec >= 1.0 - 2.0 * l1 - 1e-9;
}

LinFitSummary empirical_lipschitz(
    const std::vector<std::pair<double, double>>& pts) {
  LinFitSummary s;
  const auto n = static_cast<double>(pts.size());
  if (pts.size() < 2) {
    s.degenerate = true;
    return s;
  }
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
  }
  double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
  if (vx <= 1e-14 || vy <= 1e-14) {
    s.degenerate = true;  // all points effectively coincide on an axis
    s.slope = 0;
    s.intercept = sy / n;
    s.r = 0;
    return s;
  }
  s.slope = cxy / vx;
  s.intercept = (sy - s.slope * sx) / n;
  s.r = cxy / std::sqrt(vx * vy);
  s.r_squared = s.r * s.r;
  return s;
}

RecoveryRecord evaluate_strategy(const DensityMatrix& target,
                                 const DensityMatrix& noisy,
                                 const DensityMatrix& est,
                                 const EnergySpectrum& spec,
                                 const std::string& label) {
  RecoveryRecord r;
  r.dim = target.dim();
  r.strategy = label;
  r.full_rank_warn = full_rank_warning(noisy);
  r.f_noisy = fidelity(noisy, target);
  r.f_est = fidelity(est, target);
  DensityMatrix rec = recover(noisy, est, spec, &r.mode_ok);
  r.f_rec = fidelity(rec, target);
  r.trace_dist = trace_distance(rec, target);
  double ct = l1_coherence(target);
  r.coherence_ratio = ct > 1e-15 ? l1_coherence(rec) / ct : 0.0;
  r.f_oracle = fidelity(recover(noisy, target, spec), target);
  return r;
}

}  // namespace bcqec
