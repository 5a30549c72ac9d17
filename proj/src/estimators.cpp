#include "bcqec/estimators.hpp"

namespace bcqec {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Naive: return "naive";
    case Strategy::CoherenceMax: return "coherence_max";
    case Strategy::ChannelInversion: return "channel_inversion";
    case Strategy::Iterative: return "iterative";
    case Strategy::MultiCopy: return "multicopy";
    case Strategy::Hybrid: return "hybrid";
  }
  return "?";
}

DensityMatrix maybe_project(const Mat& x, double tol) {
  Mat h = hermitize(x);
  StateCheck c = check_state(h, tol);
  if (c.ok()) return DensityMatrix{h};
  return psd_project(h);
}

DensityMatrix estimate_naive(const DensityMatrix& noisy) { return noisy; }

DensityMatrix estimate_coherence_max(const DensityMatrix& noisy, double rel_tol) {
  const int d = noisy.dim();
  Eigen::VectorXd pops(d);
  for (int i = 0; i < d; ++i) pops(i) = std::max(0.0, noisy.m(i, i).real());
  double thr = rel_tol * noisy.m.cwiseAbs().maxCoeff();
  Mat est(d, d);
  for (int i = 0; i < d; ++i) {
    est(i, i) = pops(i);
    for (int j = i + 1; j < d; ++j) {
      double mag = std::sqrt(pops(i) * pops(j));
      Cx v = noisy.m(i, j);
      Cx phase = std::abs(v) > thr ? v / std::abs(v) : Cx(1.0, 0.0);
      est(i, j) = mag * phase;
      est(j, i) = std::conj(est(i, j));
    }
  }
  return maybe_project(est);
}

Mat invert_dephasing(const Mat& m, double gamma, const EnergySpectrum& spec) {
  const int d = static_cast<int>(m.rows());
  Mat out = m;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) out(i, j) *= std::exp(gamma * spec.gap(i, j));
  return out;
}

Mat invert_depolarizing(const Mat& m, double p) {
  const int d = static_cast<int>(m.rows());
  return (m - (p / d) * Mat::Identity(d, d)) / (1.0 - p);
}

Mat invert_amplitude_damping(const Mat& m, double g) {
  const int d = static_cast<int>(m.rows());
  Mat out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out(i, j) = m(i, j) / std::pow(1.0 - g, 0.5 * (i + j));
  Eigen::VectorXd x(d);
  for (int k = d - 1; k >= 0; --k) {
    double v = m(k, k).real();
    if (k + 1 < d) v -= (1.0 - std::pow(1.0 - g, k + 1)) * x(k + 1);
    x(k) = std::clamp(v / std::pow(1.0 - g, k), 0.0, 1.0);
  }
  for (int k = 0; k < d; ++k) out(k, k) = x(k);
  return out;
}

DensityMatrix estimate_channel_inversion(const DensityMatrix& noisy,
                                         const NoiseParams& assumed,
                                         const EnergySpectrum& spec,
                                         bool* bias_flag) {
  const int d = noisy.dim();
  if (assumed.p_depol >= 1.0)
    throw std::invalid_argument("channel inversion: p >= 1 not invertible");
  Mat x = noisy.m;
  if (assumed.gamma_ad > 0.0) x = invert_amplitude_damping(x, assumed.gamma_ad);
  if (assumed.p_depol > 0.0) x = invert_depolarizing(x, assumed.p_depol);
  if (assumed.gamma_deph > 0.0) x = invert_dephasing(x, assumed.gamma_deph, spec);
  if (bias_flag) *bias_flag = assumed.p_depol >= 1.0 - 1.0 / d;
  return maybe_project(x);
}

DensityMatrix estimate_iterative(const DensityMatrix& noisy,
                                 const RecoverFn& recover, double alpha,
                                 int max_iter, double conv_tol, bool* converged,
                                 int* iters) {
  DensityMatrix est = estimate_coherence_max(noisy);
  if (converged) *converged = true;
  if (iters) *iters = 0;
  if (alpha <= 0.0) return est;  // degenerate: no update applied
  double f_prev = -1.0;
  for (int k = 1; k <= max_iter; ++k) {
    DensityMatrix rec = recover(est);
    Mat mixed = alpha * rec.m + (1.0 - alpha) * est.m;
    DensityMatrix next = maybe_project(mixed);
    double f = fidelity(next, est);
    est = next;
    if (iters) *iters = k;
    if (f_prev >= 0.0 && std::abs(f - f_prev) < conv_tol) return est;
    // first step: compare against fidelity(est^1, est^0) on the next round
    f_prev = f;
    if (std::abs(1.0 - f) < conv_tol) return est;
  }
  if (converged) *converged = false;  // budget exhausted, return last iterate
  return est;
}

DensityMatrix estimate_multicopy(const std::vector<DensityMatrix>& copies,
                                 double rel_tol) {
  if (copies.empty()) throw std::invalid_argument("multicopy: no copies");
  Mat avg = Mat::Zero(copies[0].dim(), copies[0].dim());
  for (const auto& c : copies) avg += c.m;
  avg /= static_cast<double>(copies.size());
  return estimate_coherence_max(maybe_project(avg), rel_tol);
}

DensityMatrix estimate_hybrid(const DensityMatrix& noisy,
                              const NoiseParams& assumed, double w,
                              const EnergySpectrum& spec) {
  DensityMatrix inv = estimate_channel_inversion(noisy, assumed, spec);
  DensityMatrix cm = estimate_coherence_max(noisy);
  return maybe_project(w * inv.m + (1.0 - w) * cm.m);
}

DensityMatrix perturb_copy(const DensityMatrix& rho, double eps0, Rng& rng) {
  const int d = rho.dim();
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Cx(rng.gaussian(), rng.gaussian());
  Mat h = hermitize(g);
  h -= (h.trace() / static_cast<double>(d)) * Mat::Identity(d, d);
  double tn = trace_norm(h);
  if (tn <= 0.0) return rho;
  return psd_project(rho.m + (eps0 / tn) * h);
}

}  // namespace bcqec
